"""S-valued measures on the powerset of a finite set.

A measure is stored extensionally on every subset, indexed by bitmask:
``values[K]`` with bit ``x`` of ``K`` set iff ``x`` is in ``K``.  At finite
scale every finitely additive measure is the integral of its density
``x -> mu({x})``, which the tests confirm against brute force.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .monoid import LEFT, RIGHT, FiniteMonoid
from .semimodule import ENUM_GUARD, GuardError, SemimoduleVec, all_vectors, translate
from .semiring import Semiring

MAX_POINTS = 12


def mask_of(subset: Iterable[int] | int) -> int:
    if isinstance(subset, int):
        return subset
    m = 0
    for x in subset:
        m |= 1 << x
    return m


def members(mask: int, n: int) -> frozenset[int]:
    return frozenset(x for x in range(n) if mask >> x & 1)


@dataclass(frozen=True)
class Measure:
    n: int
    semiring: Semiring
    values: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_POINTS:
            raise GuardError(f"|X| = {self.n} exceeds guard {MAX_POINTS}")
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != 1 << self.n:
            raise ValueError("a measure needs one value per subset")

    def __call__(self, K) -> int:
        return self.values[mask_of(K)]

    def density(self) -> SemimoduleVec:
        return SemimoduleVec(self.semiring, tuple(self.values[1 << x] for x in range(self.n)))

    def __add__(self, other: "Measure") -> "Measure":
        return add_measures(self, other)

    def table(self) -> str:
        rows = []
        for K in range(1 << self.n):
            name = "{" + ",".join(str(x) for x in sorted(members(K, self.n))) + "}"
            rows.append(f"{name} ↦ {self.values[K]}")
        return "\n".join(rows)


def violations(mu: Measure) -> list[tuple]:
    """Failures of ``mu(0) = 0``, additivity and the modular law."""
    s, v, full = mu.semiring, mu.values, 1 << mu.n
    out = []
    if v[0] != s.zero:
        out.append(("empty", 0))
    for K in range(full):
        for L in range(full):
            if K & L == 0 and v[K | L] != s.plus(v[K], v[L]):
                out.append(("additive", K, L))
            if s.plus(v[K | L], v[K & L]) != s.plus(v[K], v[L]):
                out.append(("modular", K, L))
    return out


def is_measure(mu: Measure) -> bool:
    return not violations(mu)


def integrate(f: SemimoduleVec, Y: Iterable[int] | int = None) -> int:
    """Sum of the coefficients of ``f`` over ``Y`` (all of the base if omitted)."""
    s = f.semiring
    if Y is None:
        return s.sum(f.coeffs)
    mask = mask_of(Y)
    if mask >> f.size:
        raise ValueError("Y is not a subset of the base")
    return s.sum(c for x, c in enumerate(f.coeffs) if mask >> x & 1)


def measure_of(f: SemimoduleVec) -> Measure:
    """The measure ``Y -> integral of f over Y``."""
    n, s = f.size, f.semiring
    if n > MAX_POINTS:
        raise GuardError(f"|X| = {n} exceeds guard {MAX_POINTS}")
    vals = [s.zero] * (1 << n)
    for K in range(1, 1 << n):
        low = (K & -K).bit_length() - 1
        vals[K] = s.plus(vals[K & (K - 1)], f.coeffs[low])
    return Measure(n, s, tuple(vals))


def all_measures(n: int, s: Semiring, guard: int = ENUM_GUARD) -> list[Measure]:
    """Every S-valued measure on ``P({0..n-1})``, one per density."""
    return [measure_of(f) for f in all_vectors(s, n, guard)]


def zero_measure(n: int, s: Semiring) -> Measure:
    return Measure(n, s, (s.zero,) * (1 << n))


def point_measure(n: int, s: Semiring, x: int) -> Measure:
    """``mu_x``: 1 on sets containing ``x``, 0 elsewhere."""
    return Measure(n, s, tuple(s.one if K >> x & 1 else s.zero for K in range(1 << n)))


def _compatible(mu: Measure, nu: Measure):
    if mu.n != nu.n or mu.semiring != nu.semiring:
        raise ValueError("measures live on different spaces or semirings")


def add_measures(mu: Measure, nu: Measure) -> Measure:
    _compatible(mu, nu)
    p = mu.semiring.plus
    return Measure(mu.n, mu.semiring, tuple(p(a, b) for a, b in zip(mu.values, nu.values)))


def scale(k: int, mu: Measure) -> Measure:
    t = mu.semiring.times
    return Measure(mu.n, mu.semiring, tuple(t(k, a) for a in mu.values))


def preimage_masks(mon: FiniteMonoid, m: int, side: str = LEFT) -> list[int]:
    """For every subset ``K``: ``m^{-1}K`` (left) or ``Km^{-1}`` (right), as masks."""
    n = mon.size
    if side == LEFT:
        img = mon.mul[m]
    elif side == RIGHT:
        img = [mon.mul[y][m] for y in range(n)]
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return [sum(1 << y for y in range(n) if K >> img[y] & 1) for K in range(1 << n)]


def act_monoid(m: int, mu: Measure, side: str, mon: FiniteMonoid) -> Measure:
    """``m mu: K -> mu(m^{-1}K)`` (left) or ``mu m: K -> mu(Km^{-1})`` (right)."""
    if mu.n != mon.size:
        raise ValueError("measure space is not the monoid carrier")
    pre = preimage_masks(mon, m, side)
    return Measure(mu.n, mu.semiring, tuple(mu.values[pre[K]] for K in range(1 << mu.n)))


def act_semimodule(f: SemimoduleVec, mu: Measure, side: str, mon: FiniteMonoid) -> Measure:
    """``f mu = sum over m of f(m) * (m mu)`` (and its right-hand analogue)."""
    s = mu.semiring
    if f.semiring != s or f.size != mon.size:
        raise ValueError("f must be a vector over the monoid with the measure's semiring")
    acc = zero_measure(mu.n, s)
    for m, c in enumerate(f.coeffs):
        if c != s.zero:
            acc = add_measures(acc, scale(c, act_monoid(m, mu, side, mon)))
    return acc


def point_pushforward(f: SemimoduleVec, x: int, mon: FiniteMonoid, side: str = LEFT) -> SemimoduleVec:
    """``fx: y -> sum of f(m) over mx = y`` (left) or ``xf`` (right)."""
    return translate(mon, x, f, RIGHT if side == LEFT else LEFT)


def act_on_point(f: SemimoduleVec, x: int, mon: FiniteMonoid, side: str = LEFT) -> Measure:
    """The measure ``integral of fx``; equals ``f`` acting on ``mu_x``."""
    return measure_of(point_pushforward(f, x, mon, side))


@dataclass(frozen=True)
class ClopenGen:
    """``[K, k]``: the measures (or vectors) whose mass on ``K`` is ``k``."""

    K: frozenset
    k: int

    def __post_init__(self):
        object.__setattr__(self, "K", frozenset(self.K))

    def __contains__(self, item) -> bool:
        if isinstance(item, Measure):
            return item(self.K) == self.k
        if isinstance(item, SemimoduleVec):
            return integrate(item, self.K) == self.k
        raise TypeError(f"cannot test membership of {type(item).__name__}")


def clopen_gens(n: int, s: Semiring):
    for K in range(1 << n):
        for k in s.elements:
            yield ClopenGen(members(K, n), k)


def brute_force_measures(n: int, s: Semiring) -> list[tuple[int, ...]]:
    """Every function ``P(X) -> S`` that passes the measure axioms.

    Exhaustive over ``|S|^(2^n)`` candidates; use only for tiny inputs.
    """
    full = 1 << n
    found = []
    for vals in product(range(s.n), repeat=full):
        if vals[0] != s.zero:
            continue
        ok = True
        for K in range(full):
            for L in range(K + 1, full):
                if K & L == 0 and vals[K | L] != s.plus(vals[K], vals[L]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(vals)
    return found
