"""The free S-semimodule monad on finite sets, plus the matrix machinery.

Over a finite base ``X = {0..n-1}`` an element of ``S_f X`` is a total
coefficient vector.  Over the free monoid ``(A x 2)*`` the base is infinite,
so those elements are kept sparse in :class:`WordSeries`.

``S_f S_f X`` needs an explicit base: the vectors of ``S^X`` are enumerated
in mixed radix order (first coordinate most significant), see
:func:`all_vectors` and :func:`vector_index`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, NamedTuple, Sequence

from .monoid import LEFT, RIGHT, FiniteMonoid
from .semiring import Semiring

ENUM_GUARD = 4096


class GuardError(RuntimeError):
    """An enumeration would exceed its configured bound."""


@dataclass(frozen=True)
class SemimoduleVec:
    semiring: Semiring
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def size(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, x: int) -> int:
        return self.coeffs[x]

    def __add__(self, other: "SemimoduleVec") -> "SemimoduleVec":
        _same(self, other)
        p = self.semiring.plus
        return SemimoduleVec(self.semiring, tuple(p(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> "SemimoduleVec":
        t = self.semiring.times
        return SemimoduleVec(self.semiring, tuple(t(k, a) for a in self.coeffs))

    def support(self) -> tuple[int, ...]:
        z = self.semiring.zero
        return tuple(x for x, c in enumerate(self.coeffs) if c != z)

    def is_zero(self) -> bool:
        return not self.support()

    def format(self, label: Callable[[int], str] = str) -> str:
        terms = [f"{c}·{label(x)}" for x, c in enumerate(self.coeffs) if c != self.semiring.zero]
        return " + ".join(terms) if terms else "0"

    __str__ = format


def _same(f: SemimoduleVec, g: SemimoduleVec):
    if f.semiring != g.semiring:
        raise ValueError("semiring mismatch")
    if f.size != g.size:
        raise ValueError("base mismatch")


def zero_vec(s: Semiring, n: int) -> SemimoduleVec:
    return SemimoduleVec(s, (s.zero,) * n)


def unit(s: Semiring, n: int, x: int) -> SemimoduleVec:
    """The characteristic vector of ``x`` in ``S_f {0..n-1}``."""
    if not 0 <= x < n:
        raise IndexError(f"{x} not in base of size {n}")
    return SemimoduleVec(s, tuple(s.one if y == x else s.zero for y in range(n)))


def fmap(psi: Callable[[int], int] | Sequence[int], f: SemimoduleVec, target_size: int) -> SemimoduleVec:
    """Push ``f`` forward along ``psi``: ``y -> sum of f(x) over psi(x) = y``."""
    s = f.semiring
    get = psi.__getitem__ if isinstance(psi, (list, tuple)) else psi
    out = [s.zero] * target_size
    for x, c in enumerate(f.coeffs):
        y = get(x)
        out[y] = s.plus(out[y], c)
    return SemimoduleVec(s, tuple(out))


def vectors_count(s: Semiring, n: int) -> int:
    return s.n**n


def all_vectors(s: Semiring, n: int, guard: int = ENUM_GUARD) -> list[SemimoduleVec]:
    if vectors_count(s, n) > guard:
        raise GuardError(f"|S|^|X| = {s.n}^{n} exceeds guard {guard}")
    return [SemimoduleVec(s, c) for c in product(range(s.n), repeat=n)]


def vector_index(f: SemimoduleVec) -> int:
    i = 0
    for c in f.coeffs:
        i = i * f.semiring.n + c
    return i


def mult(F: SemimoduleVec, n: int, guard: int = ENUM_GUARD) -> SemimoduleVec:
    """Flatten ``F`` in ``S_f S_f X`` (``|X| = n``) to ``S_f X``."""
    s = F.semiring
    base = all_vectors(s, n, guard)
    if F.size != len(base):
        raise ValueError(f"F must range over all {len(base)} vectors of S^{n}")
    out = [s.zero] * n
    for coeff, g in zip(F.coeffs, base):
        if coeff == s.zero:
            continue
        for x in range(n):
            out[x] = s.plus(out[x], s.times(coeff, g.coeffs[x]))
    return SemimoduleVec(s, tuple(out))


# -- S_f M for a finite monoid M -----------------------------------------------


def translate(m: FiniteMonoid, x: int, f: SemimoduleVec, side: str = LEFT) -> SemimoduleVec:
    """``x f`` (left, pushforward along ``y -> xy``) or ``f x`` (right)."""
    if side == LEFT:
        return fmap(m.mul[x], f, m.size)
    if side == RIGHT:
        return fmap([m.mul[y][x] for y in m.elements], f, m.size)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def convolve(f: SemimoduleVec, g: SemimoduleVec, m: FiniteMonoid, variant: str = "left") -> SemimoduleVec:
    """Product in ``S_f M``.

    ``variant="left"`` sums ``f(a) g(b)`` over ``ab = x``; ``"right"`` sums
    ``g(b) f(a)`` with the factors of ``S`` in the opposite order.  The two
    agree because ``S`` is commutative.
    """
    _same(f, g)
    if f.size != m.size:
        raise ValueError("vector base is not the monoid carrier")
    s = f.semiring
    out = [s.zero] * m.size
    for a, fa in enumerate(f.coeffs):
        if fa == s.zero:
            continue
        row = m.mul[a]
        for b, gb in enumerate(g.coeffs):
            if gb == s.zero:
                continue
            t = s.times(fa, gb) if variant == "left" else s.times(gb, fa)
            out[row[b]] = s.plus(out[row[b]], t)
    return SemimoduleVec(s, tuple(out))


# -- sparse S_f over a free monoid ----------------------------------------------


@dataclass(frozen=True)
class WordSeries:
    """Finitely supported ``(word -> S)``; zero coefficients are never stored."""

    semiring: Semiring
    terms: tuple  # sorted ((word, coeff), ...)

    @classmethod
    def of(cls, s: Semiring, mapping: dict) -> "WordSeries":
        return cls(s, tuple(sorted(((tuple(w), c) for w, c in mapping.items() if c != s.zero), key=_word_key)))

    @classmethod
    def single(cls, s: Semiring, word, coeff: int | None = None) -> "WordSeries":
        return cls.of(s, {tuple(word): s.one if coeff is None else coeff})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "WordSeries") -> "WordSeries":
        s = self.semiring
        d = self.as_dict()
        for w, c in other.terms:
            d[w] = s.plus(d.get(w, s.zero), c)
        return WordSeries.of(s, d)

    def __mul__(self, other: "WordSeries") -> "WordSeries":
        s = self.semiring
        d: dict = {}
        for u, a in self.terms:
            for v, b in other.terms:
                w = u + v
                d[w] = s.plus(d.get(w, s.zero), s.times(a, b))
        return WordSeries.of(s, d)

    def support(self) -> tuple:
        return tuple(w for w, _ in self.terms)

    def push(self, phi, n: int) -> SemimoduleVec:
        """Image in ``S_f M`` under a morphism ``phi`` into an ``n``-element monoid."""
        s = self.semiring
        out = [s.zero] * n
        for w, c in self.terms:
            y = phi.eval(w)
            out[y] = s.plus(out[y], c)
        return SemimoduleVec(s, tuple(out))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}·{_fmt_word(w)}" for w, c in self.terms)


def _word_key(item):
    w = item[0]
    return (len(w), tuple(map(repr, w)))


def _fmt_word(w) -> str:
    if not w:
        return "ε"
    return "".join(f"{a[0]}'" if isinstance(a, tuple) and a[1] == 1 else str(a[0] if isinstance(a, tuple) else a) for a in w)


# -- matrices ----------------------------------------------------------------


class EntryOps(NamedTuple):
    """Operations of the entry structure of a matrix."""

    zero: object
    one: object
    add: Callable
    mul: Callable


def semiring_ops(s: Semiring) -> EntryOps:
    return EntryOps(s.zero, s.one, s.plus, s.times)


def convolution_ops(m: FiniteMonoid, s: Semiring) -> EntryOps:
    return EntryOps(
        zero_vec(s, m.size),
        unit(s, m.size, m.identity),
        lambda f, g: f + g,
        lambda f, g: convolve(f, g, m),
    )


def word_series_ops(s: Semiring) -> EntryOps:
    return EntryOps(WordSeries(s, ()), WordSeries.single(s, ()), lambda f, g: f + g, lambda f, g: f * g)


Matrix = tuple  # tuple of row tuples


def mat_identity(n: int, ops: EntryOps) -> Matrix:
    return tuple(tuple(ops.one if i == j else ops.zero for j in range(n)) for i in range(n))


def mat_mul(A: Matrix, B: Matrix, ops: EntryOps) -> Matrix:
    n, k = len(A), len(B)
    if any(len(r) != k for r in A):
        raise ValueError("dimension mismatch")
    p = len(B[0]) if k else 0
    if any(len(r) != p for r in B):
        raise ValueError("ragged matrix")
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = ops.zero
            for t in range(k):
                acc = ops.add(acc, ops.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_map(fn: Callable, A: Matrix) -> Matrix:
    return tuple(tuple(fn(x) for x in row) for row in A)


def is_upper_triangular(A: Matrix, zero) -> bool:
    return all(A[i][j] == zero for i in range(len(A)) for j in range(i))


@dataclass(frozen=True)
class MatrixSemiring:
    """``n x n`` matrices over an entry structure."""

    n: int
    ops: EntryOps

    def identity(self) -> Matrix:
        return mat_identity(self.n, self.ops)

    def zero(self) -> Matrix:
        return tuple(tuple(self.ops.zero for _ in range(self.n)) for _ in range(self.n))

    def mul(self, A: Matrix, B: Matrix) -> Matrix:
        return mat_mul(A, B, self.ops)

    def add(self, A: Matrix, B: Matrix) -> Matrix:
        return tuple(tuple(self.ops.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
