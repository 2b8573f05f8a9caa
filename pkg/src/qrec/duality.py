"""The dual side of the diamond construction, at finite scale.

The diamond space is ``(measures on M) x M``.  Its clopens are Boolean
combinations of ``[K, k] x M`` and ``(all measures) x K``; a :class:`DualSet`
keeps them as finite unions of products ``[K, k] x Y``.  The left quotient
by ``(f, m)`` acts on such sets through the formulas of
:func:`lambda11`, :func:`lambda12` and :func:`lambda2`, and
:func:`check_duality` confirms by enumeration that these are exactly the
preimages under the left action ``(mu, x) -> (m mu + integral of fx, mx)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

from .langlogic import LanguageOracle, q_k_direct
from .measure import (
    ClopenGen,
    Measure,
    act_monoid,
    act_on_point,
    add_measures,
    all_measures,
    integrate,
    measure_of,
    members,
)
from .monoid import LEFT, FiniteMonoid, Recogniser, Word, quotient_set, words_up_to
from .quantify import (
    DIAMOND_GUARD,
    DiamondElement,
    DiamondMonoid,
    QkAccept,
    all_length_preserving,
    diamond,
    diamond_direct,
    factor,
    is_length_preserving,
)
from .semimodule import GuardError, SemimoduleVec
from .semiring import Semiring

DUALITY_GUARD = 256


def _subsets(xs: tuple):
    for r in range(len(xs) + 1):
        yield from combinations(xs, r)


def lambda11(f: SemimoduleVec, m: int, K: Iterable[int], k: int, mon: FiniteMonoid) -> ClopenGen:
    """``[K, k] -> [m^{-1}K, k]``; ``f`` plays no part."""
    return ClopenGen(quotient_set(mon, m, K, LEFT), k)


def lambda12(f: SemimoduleVec, m: int, K: Iterable[int], k: int, mon: FiniteMonoid, side: str = LEFT) -> frozenset:
    """The points ``x`` whose pushforward ``fx`` has mass ``k`` on ``K``.

    Written as the union, over ``I`` within the support of ``f`` with
    ``f``-mass ``k``, of the points ``x`` with ``nx`` in ``K`` exactly for
    the ``n`` of ``I`` among the support.  ``m`` plays no part.
    ``side="right"`` uses ``xn`` in place of ``nx``.
    """
    K = frozenset(K)
    s = f.semiring
    supp = f.support()
    quot = {n: quotient_set(mon, n, K, side) for n in supp}
    everything = frozenset(mon.elements)
    out: set = set()
    for I in _subsets(supp):
        if s.sum(f[n] for n in I) != k:
            continue
        part = everything
        for n in supp:
            part = part & quot[n] if n in I else part - quot[n]
        out |= part
    return frozenset(out)


def lambda2(f: SemimoduleVec, m: int, K: Iterable[int], mon: FiniteMonoid) -> frozenset:
    return quotient_set(mon, m, K, LEFT)


@dataclass(frozen=True)
class DualSet:
    """A finite union of products ``[K, k] x Y`` in (measures) x M."""

    terms: tuple  # ((ClopenGen, frozenset), ...)

    def __contains__(self, point) -> bool:
        mu, x = point
        return any(x in Y and mu in G for G, Y in self.terms)

    def materialize(self, measures: list[Measure], n: int) -> frozenset:
        """As a set of ``(measure index, point)`` pairs."""
        return frozenset((i, x) for i, mu in enumerate(measures) for x in range(n) if (mu, x) in self)


def generator(K: Iterable[int], k: int, n: int) -> DualSet:
    """``[K, k] x M``."""
    return DualSet(((ClopenGen(K, k), frozenset(range(n))),))


def plain(K: Iterable[int]) -> DualSet:
    """``(all measures) x K``; ``[{}, 0]`` holds every measure."""
    return DualSet(((ClopenGen((), 0), frozenset(K)),))


def lambda1(f: SemimoduleVec, m: int, K: Iterable[int], k: int, mon: FiniteMonoid) -> DualSet:
    """``join over k1 + k2 = k of  lambda11[K, k1] x lambda12[K, k2]``."""
    s = f.semiring
    terms = []
    for k1, k2 in product(s.elements, repeat=2):
        if s.plus(k1, k2) != k:
            continue
        Y = lambda12(f, m, K, k2, mon)
        if Y:
            terms.append((lambda11(f, m, K, k1, mon), Y))
    return DualSet(tuple(terms))


def quotient_dual(e: DiamondElement, d: DualSet, mon: FiniteMonoid) -> DualSet:
    """Left quotient of a dual set by ``e = (f, m)``, term by term."""
    f, m = e
    out = []
    for G, Y in d.terms:
        Y2 = lambda2(f, m, Y, mon)
        if not Y2:
            continue
        for G1, Y1 in lambda1(f, m, G.K, G.k, mon).terms:
            if Y1 & Y2:
                out.append((G1, Y1 & Y2))
    return DualSet(tuple(out))


def left_action(dm: DiamondMonoid, e: DiamondElement, mu: Measure, x: int) -> tuple[Measure, int]:
    """``(f, m) . (mu, x) = (m mu + integral of fx, mx)``."""
    mon = dm.base
    return add_measures(act_monoid(e.m, mu, LEFT, mon), act_on_point(e.f, x, mon)), mon.mul[e.m][x]


# -- the exhaustive check -----------------------------------------------------------


def check_duality(
    mon: FiniteMonoid,
    s: Semiring,
    guard: int = DUALITY_GUARD,
    samples: int = 2000,
    seed: int = 0,
) -> dict:
    """Verify the four preimage identities for every (f, m), mu, x, K, k.

    Also checks that the formulas compose as a right action on dual sets:
    quotienting by ``a`` then ``b`` equals quotienting by ``ab``.  Above the
    guard, (f, m) pairs are sampled with ``seed``.
    """
    n = mon.size
    dm = DiamondMonoid(mon, s)
    sampled = s.n**n > guard
    rng = random.Random(seed)
    if sampled:
        vecs = [SemimoduleVec(s, tuple(rng.randrange(s.n) for _ in range(n))) for _ in range(min(samples, 64))]
        measures = [measure_of(v) for v in vecs]
        pairs = [DiamondElement(vecs[rng.randrange(len(vecs))], rng.randrange(n)) for _ in range(min(samples, 32))]
        Ks = sorted({rng.randrange(1 << n) for _ in range(16)})
    else:
        measures = all_measures(n, s, guard)
        pairs = dm.elements()
        Ks = range(1 << n)
    failures: list = []
    counts = {"lambda11": 0, "lambda12": 0, "lambda1": 0, "lambda2": 0, "action": 0, "quotient_action": 0}

    moved = {(m, i): act_monoid(m, mu, LEFT, mon) for m in mon.elements for i, mu in enumerate(measures)}
    pushed = {(e.f, x): act_on_point(e.f, x, mon) for e in pairs for x in range(n)}
    for e in pairs:
        f, m = e
        for Kmask in Ks:
            K = members(Kmask, n)
            for k in s.elements:
                target = ClopenGen(K, k)
                G11 = lambda11(f, m, K, k, mon)
                Y12 = lambda12(f, m, K, k, mon)
                D1 = lambda1(f, m, K, k, mon)
                for i, mu in enumerate(measures):
                    counts["lambda11"] += 1
                    if (moved[m, i] in target) != (mu in G11):
                        failures.append({"law": "lambda11", "f": f.coeffs, "m": m, "mu": i, "K": sorted(K), "k": k})
                for x in range(n):
                    counts["lambda12"] += 1
                    if (pushed[f, x] in target) != (x in Y12):
                        failures.append({"law": "lambda12", "f": f.coeffs, "m": m, "x": x, "K": sorted(K), "k": k})
                for i, mu in enumerate(measures):
                    for x in range(n):
                        counts["lambda1"] += 1
                        lhs = add_measures(moved[m, i], pushed[f, x]) in target
                        if lhs != ((mu, x) in D1):
                            failures.append(
                                {"law": "lambda1", "f": f.coeffs, "m": m, "mu": i, "x": x, "K": sorted(K), "k": k}
                            )
            Y2 = lambda2(f, m, K, mon)
            for x in range(n):
                counts["lambda2"] += 1
                if (mon.mul[m][x] in K) != (x in Y2):
                    failures.append({"law": "lambda2", "m": m, "x": x, "K": sorted(K)})

    # left action law for lambda, and the matching right action law for the quotients
    action_pairs = pairs if not sampled else pairs[:8]
    some_measures = measures if len(measures) <= 16 else measures[:16]
    for a in action_pairs:
        for b in action_pairs:
            ab = dm.mul(a, b)
            for mu in some_measures:
                for x in range(n):
                    counts["action"] += 1
                    if left_action(dm, ab, mu, x) != left_action(dm, a, *left_action(dm, b, mu, x)):
                        failures.append({"law": "action", "a": _enc(a), "b": _enc(b), "x": x})
    gens = [generator(members(K, n), k, n) for K in Ks for k in s.elements] + [plain(members(K, n)) for K in Ks]
    quot_pairs = action_pairs[:12]
    for a in quot_pairs:
        for b in quot_pairs:
            ab = dm.mul(a, b)
            for g in gens:
                counts["quotient_action"] += 1
                lhs = quotient_dual(ab, g, mon).materialize(some_measures, n)
                rhs = quotient_dual(b, quotient_dual(a, g, mon), mon).materialize(some_measures, n)
                if lhs != rhs:
                    failures.append({"law": "quotient_action", "a": _enc(a), "b": _enc(b)})
    return {
        "suite": "duality",
        "monoid": mon.name or f"monoid[{n}]",
        "semiring": s.label(),
        "checked": sum(counts.values()),
        "counts": counts,
        "sampled": sampled,
        "failures": failures,
    }


def _enc(e: DiamondElement) -> list:
    return [list(e.f.coeffs), e.m]


# -- quotients of quantified languages -----------------------------------------------


@dataclass(frozen=True)
class QuotientTerm:
    k1: int
    k2: int
    qk: ClopenGen  # the quantified part, a condition on f_w
    l0: frozenset  # the plain part, a condition on phi(w^0)


@dataclass(frozen=True)
class QuotientDecomposition:
    """``u^{-1} Q_k(L)`` (or ``Q_k(L) u^{-1}``) as a union of ``Q_k1(L') cap L''^0`` pieces."""

    u: tuple
    side: str
    k: int
    terms: tuple

    def contains_element(self, e: DiamondElement) -> bool:
        return any(e.m in t.l0 and integrate(e.f, t.qk.K) == t.qk.k for t in self.terms)

    def contains_word(self, w: Word, phi: Recogniser, s: Semiring) -> bool:
        """Evaluate the pieces as languages, straight from their definitions."""
        w = tuple(w)
        m0 = phi.morphism.eval(tuple((a, 0) for a in w))
        for t in self.terms:
            if m0 not in t.l0:
                continue
            L_prime = LanguageOracle(phi.alphabet, lambda v, K=t.qk.K: phi.morphism.eval(v) in K)
            if q_k_direct(L_prime, s, t.qk.k, w):
                return True
        return False


def quotient_qk(u: Word, phi: Recogniser, s: Semiring, k: int, side: str = LEFT) -> QuotientDecomposition:
    """Decompose the quotient of ``Q_k(L)`` by ``u``, ``L`` recognised by ``phi``.

    For a left quotient, ``f_uw = phi(u^0) f_w + f_u phi(w^0)``: the first
    summand is a condition ``[phi(u^0)^{-1}P, k1]`` on ``f_w`` and the second
    a condition on ``phi(w^0)`` alone.
    """
    u = tuple(u)
    mon, P = phi.monoid, phi.accepting
    e_u = diamond_direct(phi, s, u)
    terms = []
    for k1, k2 in product(s.elements, repeat=2):
        if s.plus(k1, k2) != k:
            continue
        Y = lambda12(e_u.f, e_u.m, P, k2, mon, side)
        if not Y:
            continue
        K1 = quotient_set(mon, e_u.m, P, side)
        terms.append(QuotientTerm(k1, k2, ClopenGen(K1, k1), Y))
    return QuotientDecomposition(u, side, k, tuple(terms))


def check_quotient(
    phi: Recogniser,
    s: Semiring,
    k: int,
    u: Word,
    side: str = LEFT,
    max_len: int | None = 7,
    guard: int = DIAMOND_GUARD,
) -> dict:
    """Compare a decomposition with the direct quotient, on all of the diamond
    monoid and on every word up to ``max_len``."""
    dec = quotient_qk(u, phi, s, k, side)
    D = diamond(phi, s)
    dm = D.monoid
    e_u = D.image(tuple(u))
    target = QkAccept(phi.accepting, k)
    out = {"element_checks": 0, "word_checks": 0, "failures": []}
    for e in dm.elements(guard):
        prod_ = dm.mul(e_u, e) if side == LEFT else dm.mul(e, e_u)
        out["element_checks"] += 1
        if dec.contains_element(e) != (prod_ in target):
            out["failures"].append({"u": list(map(str, u)), "element": _enc(e)})
    if max_len is not None:
        L = LanguageOracle.from_recogniser(phi)
        for w in words_up_to(D.alphabet, max_len):
            whole = tuple(u) + w if side == LEFT else w + tuple(u)
            out["word_checks"] += 1
            if dec.contains_word(w, phi, s) != q_k_direct(L, s, k, whole):
                out["failures"].append({"u": list(map(str, u)), "w": list(map(str, w))})
    return out


# -- Reutenauer-type comparison ------------------------------------------------------


def _joint_image(psis: list, alphabet: tuple, guard: int):
    """Image of ``w -> (psi(w))_psi`` in the product of the diamond monoids."""
    dms = [p.monoid for p in psis]
    gens = [tuple(p.letter_image[a] for p in psis) for a in alphabet]
    ident = tuple(dm.identity for dm in dms)
    index = {ident: 0}
    elems = [ident]
    queue = deque([0])

    def mul(x, y):
        return tuple(dm.mul(a, b) for dm, a, b in zip(dms, x, y))

    while queue:
        x = elems[queue.popleft()]
        for g in gens:
            y = mul(x, g)
            if y not in index:
                if len(elems) >= guard:
                    raise GuardError(f"joint image exceeds guard {guard}")
                index[y] = len(elems)
                elems.append(y)
                queue.append(index[y])
    return elems, index, gens, mul


def _atoms(sets: Iterable[int], size: int) -> list[int]:
    """Block id of every point in the Boolean algebra generated by bitmask ``sets``."""
    sets = list(sets)
    sig: dict = {}
    out = []
    for i in range(size):
        key = tuple(S >> i & 1 for S in sets)
        out.append(sig.setdefault(key, len(sig)))
    return out


def _congruence_closure(blocks: list[int], left: list[list[int]], right: list[list[int]]) -> list[int]:
    """Coarsest refinement of ``blocks`` closed under the translations given."""
    while True:
        sig: dict = {}
        new = []
        for i in range(len(blocks)):
            key = (blocks[i],) + tuple(blocks[t[i]] for t in left) + tuple(blocks[t[i]] for t in right)
            new.append(sig.setdefault(key, len(sig)))
        if len(sig) == len(set(blocks)):
            return new
        blocks = new


def _is_quotient_closed(blocks: list[int], table: list[list[int]]) -> bool:
    n = len(blocks)
    for i in range(n):
        for j in range(i + 1, n):
            if blocks[i] != blocks[j]:
                continue
            for z in range(n):
                if blocks[table[z][i]] != blocks[table[z][j]] or blocks[table[i][z]] != blocks[table[j][z]]:
                    return False
    return True


def _same_partition(a: list[int], b: list[int]) -> bool:
    fw: dict = {}
    bw: dict = {}
    for x, y in zip(a, b):
        if fw.setdefault(x, y) != y or bw.setdefault(y, x) != x:
            return False
    return True


def reutenauer_check(
    mon: FiniteMonoid,
    s: Semiring,
    alphabet: Iterable,
    guard: int = 4096,
    kinds: tuple = ("l0", "qk"),
) -> dict:
    """Compare two Boolean algebras of languages over ``alphabet``.

    First: the quotient closure of everything recognised by a length
    preserving morphism into the diamond monoid.  Second: the Boolean algebra
    (no closure) generated by the languages recognised by ``mon`` over the
    alphabet and the ``Q_k(L)`` for ``L`` recognised by ``mon`` over the
    marked alphabet.  All languages involved are recognised by the product
    of every length preserving morphism, so both algebras are computed as
    partitions of that finite image, which makes the comparison exact.

    ``kinds`` selects the generator families of the second algebra; dropping
    one is a way to watch the comparison fail.
    """
    A = tuple(alphabet)
    psis = list(all_length_preserving(mon, s, A))
    failures: list = []
    phis = []
    for psi in psis:
        if not is_length_preserving(psi):
            failures.append({"stage": "length_preserving"})
            continue
        phi = factor(psi)
        if diamond(phi, s).letter_image != psi.letter_image:
            failures.append({"stage": "factor", "images": {str(a): _enc(psi.letter_image[a]) for a in A}})
        phis.append(phi)
    elems, index, gens, mul = _joint_image(psis, A, guard)
    size = len(elems)
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    left = [[index[mul(g, x)] for x in elems] for g in gens]
    right = [[index[mul(x, g)] for x in elems] for g in gens]

    # first algebra: every subset of each diamond monoid, pulled back, then closed
    fibres = []
    for j in range(len(psis)):
        ids: dict = {}
        fibres.append([ids.setdefault(x[j], len(ids)) for x in elems])
    first = _atoms_from_labels(fibres, size)
    first = _congruence_closure(first, left, right)
    first_closed = _is_quotient_closed(first, table)

    # second algebra: the named generators only, no closure
    masks = []
    subsets = [members(K, mon.size) for K in range(1 << mon.size)]
    for j in range(len(psis)):
        comp = [x[j] for x in elems]
        for P in subsets:
            if "l0" in kinds:
                masks.append(sum(1 << i for i, e in enumerate(comp) if e.m in P))
            if "qk" not in kinds:
                continue
            for k in s.elements:
                acc = QkAccept(P, k)
                masks.append(sum(1 << i for i, e in enumerate(comp) if e in acc))
    second = _atoms(masks, size)
    second_closed = _is_quotient_closed(second, table)
    equal = _same_partition(first, second)
    if not first_closed:
        failures.append({"stage": "first algebra not a quotient fixpoint"})
    if not second_closed:
        failures.append({"stage": "second algebra not closed under quotients"})
    if not equal:
        failures.append({"stage": "algebras differ"})
    return {
        "suite": "reutenauer",
        "monoid": mon.name or f"monoid[{mon.size}]",
        "semiring": s.label(),
        "alphabet": [str(a) for a in A],
        "length_preserving": len(psis),
        "image_size": size,
        "first_atoms": len(set(first)),
        "second_atoms": len(set(second)),
        "second_generators": len(masks),
        "second_quotient_closed": second_closed,
        "equal": equal,
        "checked": len(psis) + size * size,
        "failures": failures,
    }


def _atoms_from_labels(labelings: list[list[int]], size: int) -> list[int]:
    sig: dict = {}
    return [sig.setdefault(tuple(lab[i] for lab in labelings), len(sig)) for i in range(size)]
