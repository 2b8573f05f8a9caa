"""Verification suites driven by ``qrec verify``.

Every suite returns a JSON-ready dict with ``checked``, ``failures`` and
``skipped`` entries; guard violations land in ``skipped``, never in
``failures``.  All randomness comes from the ``seed`` argument.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from .duality import check_duality, check_quotient, reutenauer_check
from .langlogic import LanguageOracle, q_k_direct
from .measure import (
    act_monoid,
    act_on_point,
    act_semimodule,
    add_measures,
    all_measures,
    brute_force_measures,
    measure_of,
    point_measure,
    scale,
    violations,
)
from .monoid import (
    LEFT,
    NAMED_MONOIDS,
    RIGHT,
    FiniteMonoid,
    Recogniser,
    all_morphisms,
    check_monoid,
    cyclic_group,
    marked_alphabet,
    random_dfa,
    syntactic_monoid,
    trivial_monoid,
    u2,
    words_up_to,
)
from .quantify import (
    DiamondMonoid,
    accepting_for_qk,
    diamond,
    push_matrix,
    r_mon,
    transduction_r,
)
from .semimodule import (
    GuardError,
    SemimoduleVec,
    all_vectors,
    convolution_ops,
    convolve,
    fmap,
    mat_mul,
    mult,
    unit,
    vector_index,
    word_series_ops,
)
from .semiring import STANDARD, check_axioms, from_spec

MAX_FAILURES = 20
SUITES = ("laws", "measures", "duality", "oracle", "reutenauer")


class Report:
    def __init__(self, suite: str):
        self.suite = suite
        self.sections: dict = {}
        self.failures: list = []
        self.skipped: list = []
        self.checked = 0
        self.sampled = False

    def section(self, name: str, checked: int, failures: list, **extra):
        self.checked += checked
        self.sections[name] = {"checked": checked, "failures": len(failures), **extra}
        for f in failures:
            if len(self.failures) < MAX_FAILURES:
                self.failures.append({"section": name, **f} if isinstance(f, dict) else {"section": name, "detail": str(f)})
            else:
                self.sections[name]["truncated"] = True

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checked": self.checked,
            "failed": sum(s["failures"] for s in self.sections.values()),
            "failures": self.failures,
            "sampled": self.sampled,
            "sections": self.sections,
            "skipped": self.skipped,
        }


def enumerate_monoids(n: int) -> list[FiniteMonoid]:
    """Every monoid table on ``{0..n-1}`` with identity 0 (not up to isomorphism)."""
    if n == 1:
        return [trivial_monoid()]
    rest = range(1, n)
    out = []
    for vals in product(range(n), repeat=(n - 1) ** 2):
        tab = [list(range(n))] + [[x] + [0] * (n - 1) for x in rest]
        it = iter(vals)
        for a in rest:
            for b in rest:
                tab[a][b] = next(it)
        if all(tab[tab[a][b]][c] == tab[a][tab[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            out.append(FiniteMonoid(n, tab, 0, name=f"m{n}:{''.join(map(str, vals))}"))
    return out


def small_monoids(max_size: int = 3) -> list[FiniteMonoid]:
    return [m for n in range(1, max_size + 1) for m in enumerate_monoids(n)]


@lru_cache(maxsize=None)
def _mult_index(spec: str, n: int) -> tuple:
    """Index in ``S^X`` of ``mult`` applied to each element of ``S^(S^X)``."""
    s = from_spec(spec)
    return tuple(vector_index(mult(G, n)) for G in all_vectors(s, s.n**n))


def monad_laws(spec: str, n: int, rng: random.Random | None = None, samples: int = 0) -> tuple[list[dict], int]:
    """Unit and associativity laws of ``S_f`` on ``X = {0..n-1}``.

    Exhaustive unless ``samples`` is set, in which case the associativity law
    is checked on ``samples`` random elements of ``S_f S_f S_f X``.
    Returns the failures and the number of law instances checked.
    """
    s = from_spec(spec)
    fails, checked = [], 0
    sx = all_vectors(s, n)
    size1 = len(sx)
    unit_idx = [vector_index(unit(s, n, x)) for x in range(n)]
    for f in sx:
        if mult(unit(s, size1, vector_index(f)), n) != f:
            fails.append({"law": "mult . unit", "f": list(f.coeffs)})
        if mult(fmap(unit_idx, f, size1), n) != f:
            fails.append({"law": "mult . S(unit)", "f": list(f.coeffs)})
        checked += 2
    size2 = s.n**size1
    mult_x = _mult_index(spec, n)
    if samples:
        cands = (SemimoduleVec(s, tuple(rng.randrange(s.n) for _ in range(size2))) for _ in range(samples))
    else:
        cands = (SemimoduleVec(s, c) for c in product(range(s.n), repeat=size2))
    for F in cands:
        checked += 1
        lhs = mult(mult(F, size1), n)
        rhs = mult(fmap(mult_x, F, size1), n)
        if lhs != rhs:
            fails.append({"law": "mult . mult", "F": list(F.coeffs)})
    return fails, checked


def laws_suite(seed: int = 0) -> dict:
    rep = Report("laws")
    rng = random.Random(seed)
    fails = []
    for spec in STANDARD:
        fails += [{"semiring": spec, "violation": str(v)} for v in check_axioms(from_spec(spec))]
    rep.section("semiring_axioms", len(STANDARD), fails)

    monoids = small_monoids(3)
    dfas = [syntactic_monoid(random_dfa(rng, marked_alphabet("ab"), 4)).monoid for _ in range(5)]
    fails = [{"monoid": m.name, "violation": str(v)} for m in monoids + dfas for v in check_monoid(m)]
    rep.section("monoid_axioms", len(monoids) + len(dfas), fails, small_monoids=len(monoids))

    fails, checked = [], 0
    for spec in ("zq:2", "bool2"):
        for n in (1, 2):
            f, c = monad_laws(spec, n)
            fails, checked = fails + f, checked + c
    for spec, n in (("zq:3", 1), ("zq:4", 1), ("zq:2", 3)):
        f, c = monad_laws(spec, n, rng, samples=200)
        fails, checked = fails + f, checked + c
    rep.sampled = True
    rep.section("monad_laws", checked, fails, exhaustive="|X|<=2 over zq:2, bool2", sampled="zq:3, zq:4 |X|=1; zq:2 |X|=3")

    fails, checked = [], 0
    for spec in STANDARD:
        s = from_spec(spec)
        for m in monoids:
            vecs = all_vectors(s, m.size)
            for f, g in product(vecs, repeat=2):
                checked += 1
                if convolve(f, g, m, "left") != convolve(f, g, m, "right"):
                    fails.append({"semiring": spec, "monoid": m.name, "f": list(f.coeffs), "g": list(g.coeffs)})
    rep.section("convolution_commutes", checked, fails)

    fails, checked = [], 0
    for spec in ("zq:2", "bool2"):
        s = from_spec(spec)
        for m in monoids:
            vecs = all_vectors(s, m.size)
            one = unit(s, m.size, m.identity)
            for f in vecs:
                checked += 1
                if convolve(one, f, m) != f or convolve(f, one, m) != f:
                    fails.append({"law": "unit", "monoid": m.name, "f": list(f.coeffs)})
            for f, g, h in product(vecs, repeat=3):
                checked += 1
                if convolve(convolve(f, g, m), h, m) != convolve(f, convolve(g, h, m), m):
                    fails.append({"law": "assoc", "monoid": m.name})
    rep.section("convolution_monoid", checked, fails)

    fails, checked = [], 0
    for spec in ("bool2", "zq:2", "zq:3"):
        s = from_spec(spec)
        ops = word_series_ops(s)
        words = list(words_up_to("ab", 4))
        mats = {w: r_mon(w, s) for w in words}
        for u, v in product(words, repeat=2):
            checked += 1
            if mat_mul(mats[u], mats[v], ops) != r_mon(u + v, s):
                fails.append({"law": "r_mon morphism", "semiring": spec, "u": "".join(u), "v": "".join(v)})
        for w in words:
            checked += 1
            if mats[w][0][1] != transduction_r(w, s):
                fails.append({"law": "r_mon entry", "semiring": spec, "w": "".join(w)})
    rep.section("r_mon", checked, fails)

    fails, checked = [], 0
    for spec in ("bool2", "zq:2", "zq:3"):
        s = from_spec(spec)
        for _ in range(4):
            phi = syntactic_monoid(random_dfa(rng, marked_alphabet("ab"), 3))
            ops = convolution_ops(phi.monoid, s)
            D = diamond(phi, s)
            words = list(words_up_to("ab", 3))
            for u, v in product(words, repeat=2):
                checked += 1
                lhs = push_matrix(r_mon(u + v, s), phi.morphism, s)
                rhs = mat_mul(push_matrix(r_mon(u, s), phi.morphism, s), push_matrix(r_mon(v, s), phi.morphism, s), ops)
                if lhs != rhs:
                    fails.append({"law": "push commutes", "u": "".join(u), "v": "".join(v)})
                if D.monoid.as_matrix(D.image(u + v)) != lhs:
                    fails.append({"law": "diamond = pushed r_mon", "w": "".join(u + v)})
    rep.section("matrix_routes", checked, fails)

    fails, checked, sampled = [], 0, False
    for spec in ("bool2", "zq:2", "zq:3"):
        s = from_spec(spec)
        for m in monoids:
            dm = DiamondMonoid(m, s)
            ops = convolution_ops(m, s)
            if dm.size**2 <= 4096 * 4:
                pairs = product(dm.elements(), repeat=2)
            else:
                sampled = True
                el = dm.elements()
                pairs = ((rng.choice(el), rng.choice(el)) for _ in range(500))
            for a, b in pairs:
                checked += 1
                if dm.as_matrix(dm.mul(a, b)) != mat_mul(dm.as_matrix(a), dm.as_matrix(b), ops):
                    fails.append({"law": "diamond = matrix", "monoid": m.name, "semiring": spec})
    rep.sampled |= sampled
    rep.section("diamond_matrix", checked, fails)
    return rep.as_dict()


def measures_suite(seed: int = 0, max_points: int = 3) -> dict:
    rep = Report("measures")
    rng = random.Random(seed)
    fails, checked = [], 0
    for spec in STANDARD:
        s = from_spec(spec)
        for n in range(0, max_points + 1):
            checked += 1
            brute = set(brute_force_measures(n, s))
            integrals = [measure_of(f).values for f in all_vectors(s, n)]
            if brute != set(integrals) or len(set(integrals)) != len(integrals) or len(brute) != s.n**n:
                fails.append({"semiring": spec, "n": n, "brute": len(brute), "integrals": len(set(integrals))})
    rep.section("bijection", checked, fails)

    fails, checked = [], 0
    for spec in STANDARD:
        s = from_spec(spec)
        for m in small_monoids(3):
            n = m.size
            mus = all_measures(n, s)
            vecs = all_vectors(s, n)
            for mu in mus:
                for x in m.elements:
                    for side in (LEFT, RIGHT):
                        checked += 1
                        out = act_monoid(x, mu, side, m)
                        if violations(out):
                            fails.append({"law": "action gives measure", "monoid": m.name})
                for x, y in product(m.elements, repeat=2):
                    checked += 2
                    if act_monoid(x, act_monoid(y, mu, LEFT, m), LEFT, m) != act_monoid(m.mul[x][y], mu, LEFT, m):
                        fails.append({"law": "left action", "monoid": m.name, "m": x, "n": y})
                    if act_monoid(y, act_monoid(x, mu, RIGHT, m), RIGHT, m) != act_monoid(m.mul[x][y], mu, RIGHT, m):
                        fails.append({"law": "right action", "monoid": m.name, "m": x, "n": y})
                    checked += 1
                    if act_monoid(y, act_monoid(x, mu, LEFT, m), RIGHT, m) != act_monoid(
                        x, act_monoid(y, mu, RIGHT, m), LEFT, m
                    ):
                        fails.append({"law": "biaction", "monoid": m.name})
            nu_sample = [rng.choice(mus) for _ in range(4)]
            for f in vecs if len(vecs) <= 27 else [rng.choice(vecs) for _ in range(27)]:
                for x in m.elements:
                    checked += 1
                    if act_on_point(f, x, m) != act_semimodule(f, point_measure(n, s, x), LEFT, m):
                        fails.append({"law": "f mu_x = integral fx", "monoid": m.name, "f": list(f.coeffs), "x": x})
                for mu in nu_sample:
                    checked += 1
                    expect = mu.__class__(n, s, (s.zero,) * (1 << n))
                    for y, c in enumerate(f.coeffs):
                        expect = add_measures(expect, scale(c, act_monoid(y, mu, LEFT, m)))
                    if act_semimodule(f, mu, LEFT, m) != expect:
                        fails.append({"law": "f mu sum", "monoid": m.name})
            for mu, nu in product(nu_sample, repeat=2):
                for x in m.elements:
                    checked += 1
                    if act_monoid(x, add_measures(mu, nu), LEFT, m) != add_measures(
                        act_monoid(x, mu, LEFT, m), act_monoid(x, nu, LEFT, m)
                    ):
                        fails.append({"law": "linearity", "monoid": m.name})
    rep.section("actions", checked, fails)
    return rep.as_dict()


DUALITY_GRID = (
    ("trivial", "zq:2"),
    ("z2", "zq:2"),
    ("z2", "zq:3"),
    ("u2", "bool2"),
)

_GRID_MONOIDS = {"trivial": trivial_monoid, "z2": lambda: cyclic_group(2), "u2": u2}


def duality_suite(seed: int = 0, max_u: int = 3, max_len: int = 7, word_samples: int = 6) -> dict:
    """The preimage identities plus quotient decompositions for every
    morphism ``{a,b} x 2 -> M`` on the grid; word-level checks on a seeded
    sample of morphisms."""
    rep = Report("duality")
    rng = random.Random(seed)
    for mname, spec in DUALITY_GRID:
        mon, s = _GRID_MONOIDS[mname](), from_spec(spec)
        r = check_duality(mon, s, seed=seed)
        rep.sampled |= r["sampled"]
        rep.section(f"lambda/{mname}/{spec}", r["checked"], r["failures"])

    for mname, spec in DUALITY_GRID:
        mon, s = _GRID_MONOIDS[mname](), from_spec(spec)
        fails, checked, words_checked = [], 0, 0
        morphs = list(all_morphisms(marked_alphabet("ab"), mon))
        chosen = set(rng.sample(range(len(morphs)), min(word_samples, len(morphs))))
        us = list(words_up_to("ab", max_u))
        for idx, mor in enumerate(morphs):
            for Pmask in range(1 << mon.size):
                P = frozenset(x for x in mon.elements if Pmask >> x & 1)
                phi = Recogniser(mor, P)
                for k in s.elements:
                    word_level = idx in chosen and Pmask == (idx % (1 << mon.size))
                    for u in us:
                        for side in (LEFT, RIGHT):
                            out = check_quotient(phi, s, k, u, side, max_len if word_level else None)
                            checked += out["element_checks"]
                            words_checked += out["word_checks"]
                            fails += out["failures"]
        rep.section(f"quotients/{mname}/{spec}", checked + words_checked, fails, word_checks=words_checked)
    return rep.as_dict()


def random_marked_dfas(seed: int, count: int = 20, max_states: int = 4):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        A = ("a",) if rng.random() < 0.5 else ("a", "b")
        out.append((A, random_dfa(rng, marked_alphabet(A), max_states)))
    return out


def oracle_suite(seed: int = 0, max_len: int = 8, count: int = 20) -> dict:
    rep = Report("oracle")
    fails, checked = [], 0
    ex_fails, ex_checked = [], 0
    for i, (A, dfa) in enumerate(random_marked_dfas(seed, count)):
        phi = syntactic_monoid(dfa)
        L = LanguageOracle.from_recogniser(phi)
        words = list(words_up_to(A, max_len))
        counts = {w: None for w in words}
        for spec in STANDARD:
            s = from_spec(spec)
            D = diamond(phi, s)
            images = _images(D, words)
            for k in s.elements:
                acc = accepting_for_qk(phi.accepting, k)
                for w in words:
                    checked += 1
                    if (images[w] in acc) != q_k_direct(L, s, k, w):
                        fails.append({"dfa": i, "semiring": spec, "k": k, "w": "".join(w)})
            if spec == "bool2":
                acc = accepting_for_qk(phi.accepting, s.one)
                for w in words:
                    ex_checked += 1
                    if counts[w] is None:
                        counts[w] = sum(1 for j in range(len(w)) if _marked_in(phi, w, j))
                    if (images[w] in acc) != (counts[w] >= 1):
                        ex_fails.append({"dfa": i, "w": "".join(w)})
    rep.section("quantified_languages", checked, fails, dfas=count, max_len=max_len)
    rep.section("existential", ex_checked, ex_fails)
    return rep.as_dict()


def _marked_in(phi, w, j) -> bool:
    return phi.accepts(tuple((a, int(i == j)) for i, a in enumerate(w)))


def _images(D, words) -> dict:
    """Diamond images of ``words`` (given in shortlex order), one product per word."""
    out = {(): D.monoid.identity}
    for w in words:
        if w:
            out[w] = D.monoid.mul(out[w[:-1]], D.letter_image[w[-1]])
    return out


REUTENAUER_GRID = (
    ("trivial", "zq:2", "a"),
    ("trivial", "bool2", "ab"),
    ("z2", "zq:2", "a"),
    ("z2", "zq:2", "ab"),
    ("u1", "bool2", "ab"),
    ("u2", "bool2", "ab"),
    ("chain3", "zq:2", "a"),
)


def reutenauer_suite(seed: int = 0, guard: int = 4096) -> dict:
    rep = Report("reutenauer")
    for mname, spec, A in REUTENAUER_GRID:
        try:
            r = reutenauer_check(NAMED_MONOIDS[mname](), from_spec(spec), tuple(A), guard=guard)
        except GuardError as e:
            rep.skipped.append({"case": f"{mname}/{spec}/{A}", "reason": str(e)})
            continue
        rep.section(
            f"{mname}/{spec}/{A}",
            r["checked"],
            r["failures"],
            image_size=r["image_size"],
            atoms=r["first_atoms"],
            equal=r["equal"],
        )
    return rep.as_dict()


def run(suite: str, seed: int = 0, max_len: int = 8, guard: int = 4096) -> list[dict]:
    if suite == "all":
        names = SUITES
    elif suite in SUITES:
        names = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    out = []
    for name in names:
        if name == "laws":
            out.append(laws_suite(seed))
        elif name == "measures":
            out.append(measures_suite(seed))
        elif name == "duality":
            out.append(duality_suite(seed, max_len=min(max_len, 7)))
        elif name == "oracle":
            out.append(oracle_suite(seed, max_len))
        elif name == "reutenauer":
            out.append(reutenauer_suite(seed, guard))
    return out
