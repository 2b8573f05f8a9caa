"""JSON formats for DFAs, recognisers, diamond recognisers and transducers.

Letters of a marked alphabet are written ``"a"`` for ``(a, 0)`` and ``"a'"``
for ``(a, 1)``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from . import semiring as sr
from .monoid import AlphabetError, Dfa, FiniteMonoid, MonoidMorphism, Recogniser
from .quantify import (
    DiamondElement,
    DiamondMonoid,
    DiamondRecogniser,
    ExplicitAccept,
    L0Accept,
    MatrixRecogniser,
    MatrixTransducer,
    QkAccept,
)
from .semimodule import WordSeries


class FormatError(ValueError):
    pass


def load(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- letters and words ------------------------------------------------------------


def fmt_letter(a) -> str:
    if isinstance(a, tuple) and len(a) == 2 and a[1] in (0, 1):
        return f"{a[0]}'" if a[1] else str(a[0])
    return str(a)


def parse_alphabet(names: list[str]) -> tuple:
    """Plain strings, or a marked alphabet if any name carries a trailing ``'``."""
    if not all(isinstance(x, str) and x for x in names):
        raise FormatError("alphabet must be a list of non-empty strings")
    if len(set(names)) != len(names):
        raise FormatError("alphabet has repeated letters")
    if any(x.endswith("'") for x in names):
        return tuple((x[:-1], 1) if x.endswith("'") else (x, 0) for x in names)
    return tuple(names)


def parse_letter(name: str, alphabet: tuple):
    for a in alphabet:
        if fmt_letter(a) == name:
            return a
    raise AlphabetError(f"unknown letter {name!r}")


def parse_word(text: str, alphabet: tuple) -> tuple:
    """Split ``text`` into letters.

    Tokens may be separated by spaces or commas; otherwise single-character
    letter names (optionally primed) are read one at a time.
    """
    text = text.strip()
    if not text:
        return ()
    if re.search(r"[\s,]", text):
        tokens = [t for t in re.split(r"[\s,]+", text) if t]
    else:
        tokens = re.findall(r".'?", text)
    return tuple(parse_letter(t, alphabet) for t in tokens)


def fmt_word(w) -> str:
    return "".join(fmt_letter(a) for a in w) if w else "ε"


# -- DFAs and recognisers ------------------------------------------------------------


def dfa_from_json(obj) -> Dfa:
    try:
        alphabet = parse_alphabet(list(obj["alphabet"]))
        return Dfa(int(obj["states"]), alphabet, obj["delta"], int(obj.get("initial", 0)), obj.get("accepting", []))
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed DFA: {e}") from None
    except ValueError as e:
        raise FormatError(f"malformed DFA: {e}") from None


def dfa_to_json(d: Dfa) -> dict:
    return {
        "states": d.states,
        "alphabet": [fmt_letter(a) for a in d.alphabet],
        "delta": [list(r) for r in d.delta],
        "initial": d.initial,
        "accepting": sorted(d.accepting),
    }


def monoid_to_json(m: FiniteMonoid) -> dict:
    out = {"size": m.size, "mul": [list(r) for r in m.mul], "identity": m.identity}
    if m.words is not None:
        out["words"] = [[fmt_letter(a) for a in w] for w in m.words]
    return out


def monoid_from_json(obj) -> FiniteMonoid:
    try:
        words = obj.get("words")
        mon = FiniteMonoid(int(obj["size"]), obj["mul"], int(obj.get("identity", 0)))
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed monoid: {e}") from None
    if words is not None:
        mon = FiniteMonoid(mon.size, mon.mul, mon.identity, words=tuple(tuple(w) for w in words))
    return mon


def recogniser_to_json(r: Recogniser) -> dict:
    return {
        "kind": "recogniser",
        "monoid": monoid_to_json(r.monoid),
        "alphabet": [fmt_letter(a) for a in r.alphabet],
        "letters": {fmt_letter(a): r.morphism.letter_image[a] for a in r.alphabet},
        "accepting": sorted(r.accepting),
    }


def recogniser_from_json(obj) -> Recogniser:
    try:
        mon = monoid_from_json(obj["monoid"])
        letters = obj["letters"]
        alphabet = parse_alphabet(list(obj.get("alphabet", letters.keys())))
        imgs = {a: int(letters[fmt_letter(a)]) for a in alphabet}
        return Recogniser(MonoidMorphism(alphabet, mon, imgs), frozenset(obj.get("accepting", [])))
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed recogniser: {e}") from None
    except ValueError as e:
        raise FormatError(f"malformed recogniser: {e}") from None


# -- diamond recognisers ------------------------------------------------------------------


def accept_to_json(acc):
    return None if acc is None else acc.to_json()


def accept_from_json(obj, dm: DiamondMonoid):
    if obj is None:
        return None
    if isinstance(obj, dict):
        kind = obj.get("kind")
        if kind == "qk":
            return QkAccept(frozenset(obj["P"]), int(obj["k"]))
        if kind == "l0":
            return L0Accept(frozenset(obj["P"]))
        raise FormatError(f"unknown accepting-set kind {kind!r}")
    if isinstance(obj, list):
        return ExplicitAccept(frozenset(dm.element(e["f"], e["m"]) for e in obj))
    raise FormatError("accepting set must be a list or a symbolic object")


def diamond_to_json(d: DiamondRecogniser) -> dict:
    return {
        "kind": "diamond",
        "semiring": sr.to_json(d.monoid.semiring),
        "monoid": monoid_to_json(d.monoid.base),
        "alphabet": [fmt_letter(a) for a in d.alphabet],
        "letters": {fmt_letter(a): {"f": list(d.letter_image[a].f.coeffs), "m": d.letter_image[a].m} for a in d.alphabet},
        "accepting": accept_to_json(d.accepting),
    }


def diamond_from_json(obj) -> DiamondRecogniser:
    try:
        s = sr.from_json(obj["semiring"])
        dm = DiamondMonoid(monoid_from_json(obj["monoid"]), s)
        alphabet = parse_alphabet(list(obj.get("alphabet", obj["letters"].keys())))
        imgs = {}
        for a in alphabet:
            e = obj["letters"][fmt_letter(a)]
            imgs[a] = dm.element(e["f"], e["m"])
        return DiamondRecogniser(dm, alphabet, imgs, accept_from_json(obj.get("accepting"), dm))
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed diamond recogniser: {e}") from None
    except ValueError as e:
        raise FormatError(f"malformed diamond recogniser: {e}") from None


def element_to_json(e: DiamondElement) -> dict:
    return {"f": list(e.f.coeffs), "m": e.m}


# -- transducers and matrix recognisers ------------------------------------------------


def _series_to_json(x: WordSeries) -> list:
    return [[[fmt_letter(a) for a in w], c] for w, c in x.terms]


def _series_from_json(obj, s, out_alphabet) -> WordSeries:
    return WordSeries.of(s, {tuple(parse_letter(t, out_alphabet) for t in w): int(c) for w, c in obj})


def transducer_to_json(t: MatrixTransducer) -> dict:
    return {
        "n": t.n,
        "initial": t.initial,
        "final": t.final,
        "letters": {fmt_letter(a): [[_series_to_json(x) for x in row] for row in A] for a, A in t.letters.items()},
    }


def transducer_from_json(obj, s, in_alphabet: tuple, out_alphabet: tuple) -> MatrixTransducer:
    n = int(obj["n"])
    letters = {}
    for a in in_alphabet:
        rows = obj["letters"][fmt_letter(a)]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise FormatError(f"matrix for {fmt_letter(a)!r} is not {n}x{n}")
        letters[a] = tuple(tuple(_series_from_json(x, s, out_alphabet) for x in row) for row in rows)
    return MatrixTransducer(n, s, letters, int(obj.get("initial", 0)), int(obj.get("final", n - 1)))


def matrix_to_json(r: MatrixRecogniser) -> dict:
    phi = r.phi
    return {
        "kind": "matrix",
        "semiring": sr.to_json(r.transducer.semiring),
        "alphabet": [fmt_letter(a) for a in r.transducer.letters],
        "phi": recogniser_to_json(Recogniser(phi, frozenset(r.P))),
        "transducer": transducer_to_json(r.transducer),
        "accept": {"entry": list(r.entry), "P": sorted(r.P), "k": r.k},
    }


def matrix_from_json(obj) -> MatrixRecogniser:
    try:
        s = sr.from_json(obj["semiring"])
        phi = recogniser_from_json(obj["phi"])
        in_alphabet = parse_alphabet(list(obj["alphabet"]))
        t = transducer_from_json(obj["transducer"], s, in_alphabet, phi.alphabet)
        acc = obj["accept"]
        return MatrixRecogniser(t, phi.morphism, tuple(acc["entry"]), frozenset(acc["P"]), int(acc["k"]))
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed matrix recogniser: {e}") from None


def any_recogniser_from_json(obj):
    kind = obj.get("kind", "recogniser") if isinstance(obj, dict) else None
    if kind == "diamond":
        return diamond_from_json(obj)
    if kind == "matrix":
        return matrix_from_json(obj)
    if kind == "recogniser":
        return recogniser_from_json(obj)
    raise FormatError(f"unknown recogniser kind {kind!r}")
