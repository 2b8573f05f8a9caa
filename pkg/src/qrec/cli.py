"""Command line front end.

Exit codes: 0 success (or accepted word), 1 verification failure (or
rejected word), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from . import verify as verify_mod
from .monoid import AlphabetError, Recogniser, base_alphabet, syntactic_monoid
from .quantify import (
    DiamondRecogniser,
    MatrixRecogniser,
    accepting_for_l0,
    marking_transducer,
    quantify,
)
from .semiring import SemiringError, from_spec

DEFAULT_SEED = 0


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _load_recogniser(path: str) -> Recogniser:
    obj = io.load(path)
    if isinstance(obj, dict) and "delta" in obj:
        return syntactic_monoid(io.dfa_from_json(obj))
    r = io.any_recogniser_from_json(obj)
    if not isinstance(r, Recogniser):
        raise io.FormatError("expected a plain recogniser (or a DFA)")
    return r


def cmd_synmon(args) -> int:
    rec = syntactic_monoid(io.dfa_from_json(io.load(args.dfa)))
    out = io.recogniser_to_json(rec)
    out["size"] = rec.monoid.size
    _emit(io.dumps(out), args.output)
    return 0


def cmd_quantify(args) -> int:
    rec = _load_recogniser(args.recogniser)
    s = from_spec(args.semiring)
    base_alphabet(rec.alphabet)
    if not 0 <= args.k < s.n:
        raise SemiringError(f"k = {args.k} is not an element of {s.label()}")
    if args.via == "matrix":
        t = marking_transducer(base_alphabet(rec.alphabet), s)
        out = io.matrix_to_json(MatrixRecogniser(t, rec.morphism, (0, 1), rec.accepting, args.k))
    else:
        d = quantify(rec, s, args.k)
        if args.l0:
            d = d.with_accepting(accepting_for_l0(rec.accepting))
        out = io.diamond_to_json(d)
    _emit(io.dumps(out), args.output)
    return 0


def cmd_member(args) -> int:
    r = io.any_recogniser_from_json(io.load(args.recogniser))
    if isinstance(r, DiamondRecogniser):
        w = io.parse_word(args.word, r.alphabet)
        img = r.image(w)
        ok = r.accepts(w)
        image = io.element_to_json(img)
    elif isinstance(r, MatrixRecogniser):
        w = io.parse_word(args.word, tuple(r.transducer.letters))
        ok = r.accepts(w)
        image = [[list(x.coeffs) for x in row] for row in r.image(w)]
    else:
        w = io.parse_word(args.word, r.alphabet)
        img = r.morphism.eval(w)
        ok = img in r.accepting
        image = img
    print(f"{'accept' if ok else 'reject'} {io.fmt_word(w)}")
    print(io.dumps({"word": io.fmt_word(w), "accepted": ok, "image": image}))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    reports = verify_mod.run(args.suite, args.seed, args.max_len, args.guard)
    failed = sum(r["failed"] for r in reports)
    doc = {"seed": args.seed, "max_len": args.max_len, "guard": args.guard, "reports": reports, "failed": failed}
    _emit(io.dumps(doc), args.output)
    for r in reports:
        status = "ok" if r["failed"] == 0 else "FAIL"
        print(f"{r['suite']}: {status} ({r['checked']} checked, {r['failed']} failed)", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qrec", description="Recognisers for semiring-quantified languages.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synmon", help="syntactic monoid of a DFA")
    sp.add_argument("dfa")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_synmon)

    sp = sub.add_parser("quantify", help="recogniser for Q_k(L)")
    sp.add_argument("--recogniser", "-r", required=True, help="recogniser or DFA over a marked alphabet")
    sp.add_argument("--semiring", "-s", required=True, help="bool2 or zq:Q")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--via", choices=("diamond", "matrix"), default="diamond")
    sp.add_argument("--l0", action="store_true", help="accept on the unmarked language instead")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_quantify)

    sp = sub.add_parser("member", help="test a word")
    sp.add_argument("--recogniser", "-r", required=True)
    sp.add_argument("--word", "-w", required=True)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", choices=verify_mod.SUITES + ("all",), default="all")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--max-len", type=int, default=8)
    sp.add_argument("--guard", type=int, default=4096, help="enumeration bound for image-level checks")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.FormatError, AlphabetError, SemiringError, ValueError) as e:
        print(f"qrec: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
