"""Recognisers for quantified languages.

Given ``phi: (A x 2)* -> M`` recognising ``L`` through ``P``, the diamond
monoid ``S_f(M) x M`` multiplies like upper triangular matrices

    [[m, f], [0, m]] . [[n, g], [0, n]] = [[mn, m g + f n], [0, mn]]

and ``w -> (f_w, phi(w^0))`` with ``f_w = sum_i 1 * phi(w marked at i)`` is a
monoid morphism.  ``Q_k(L)`` is the preimage of ``{(f, m) : mass of f on P
is k}``.

The same language is also reachable the long way round: the two-state
marking transducer gives a morphism into 2x2 matrices over sparse series on
``(A x 2)*``, and pushing the entries forward along ``phi`` lands in 2x2
matrices over ``S_f(M)``.  :class:`MatrixRecogniser` follows that route.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, NamedTuple

from .langlogic import lift0, mark
from .measure import integrate
from .monoid import (
    AlphabetError,
    FiniteMonoid,
    MonoidMorphism,
    Recogniser,
    Word,
    base_alphabet,
    marked_alphabet,
)
from .semimodule import (
    EntryOps,
    GuardError,
    Matrix,
    SemimoduleVec,
    WordSeries,
    convolution_ops,
    mat_identity,
    mat_map,
    mat_mul,
    unit,
    word_series_ops,
    zero_vec,
)
from .semiring import Semiring

DIAMOND_GUARD = 65536


class DiamondElement(NamedTuple):
    f: SemimoduleVec
    m: int


@dataclass(frozen=True)
class DiamondMonoid:
    base: FiniteMonoid
    semiring: Semiring

    @property
    def size(self) -> int:
        return self.semiring.n ** self.base.size * self.base.size

    @property
    def identity(self) -> DiamondElement:
        return DiamondElement(zero_vec(self.semiring, self.base.size), self.base.identity)

    def element(self, coeffs: Iterable[int], m: int) -> DiamondElement:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.base.size or not 0 <= m < self.base.size:
            raise ValueError("element does not fit this diamond monoid")
        if any(not 0 <= c < self.semiring.n for c in coeffs):
            raise ValueError("coefficient is not a semiring element")
        return DiamondElement(SemimoduleVec(self.semiring, coeffs), m)

    def mul(self, a: DiamondElement, b: DiamondElement) -> DiamondElement:
        s, tab = self.semiring, self.base.mul
        plus, z = s.add, s.zero
        out = [z] * self.base.size
        row = tab[a.m]
        for y, c in enumerate(b.f.coeffs):
            if c != z:
                x = row[y]
                out[x] = plus[out[x]][c]
        n = b.m
        for y, c in enumerate(a.f.coeffs):
            if c != z:
                x = tab[y][n]
                out[x] = plus[out[x]][c]
        return DiamondElement(SemimoduleVec(s, tuple(out)), tab[a.m][n])

    def product(self, xs: Iterable[DiamondElement]) -> DiamondElement:
        acc = self.identity
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def elements(self, guard: int = DIAMOND_GUARD) -> list[DiamondElement]:
        """All of ``S_f(M) x M``, ordered by (coefficient vector, base element)."""
        if self.size > guard:
            raise GuardError(f"diamond monoid has {self.size} elements, guard is {guard}")
        s, n = self.semiring, self.base.size
        return [
            DiamondElement(SemimoduleVec(s, c), m)
            for c in product(range(s.n), repeat=n)
            for m in range(n)
        ]

    def as_matrix(self, e: DiamondElement) -> Matrix:
        s, n = self.semiring, self.base.size
        d = unit(s, n, e.m)
        return ((d, e.f), (zero_vec(s, n), d))

    def from_matrix(self, A: Matrix) -> DiamondElement:
        (d, f), (z, d2) = A
        if d != d2 or not z.is_zero() or len(d.support()) != 1 or d[d.support()[0]] != self.semiring.one:
            raise ValueError("matrix is not in the image of the diamond monoid")
        return DiamondElement(f, d.support()[0])

    def matrix_ops(self) -> EntryOps:
        return convolution_ops(self.base, self.semiring)

    def format(self, e: DiamondElement) -> str:
        return f"({e.f.format(self.base.label)}, {self.base.label(e.m)})"


# -- accepting sets -----------------------------------------------------------


@dataclass(frozen=True)
class QkAccept:
    """``{(f, m) : integral of f over P equals k}``."""

    P: frozenset
    k: int

    def __post_init__(self):
        object.__setattr__(self, "P", frozenset(self.P))

    def __contains__(self, e: DiamondElement) -> bool:
        return integrate(e.f, self.P) == self.k

    def to_json(self) -> dict:
        return {"kind": "qk", "P": sorted(self.P), "k": self.k}


@dataclass(frozen=True)
class L0Accept:
    """``{(f, m) : m in P}``."""

    P: frozenset

    def __post_init__(self):
        object.__setattr__(self, "P", frozenset(self.P))

    def __contains__(self, e: DiamondElement) -> bool:
        return e.m in self.P

    def to_json(self) -> dict:
        return {"kind": "l0", "P": sorted(self.P)}


@dataclass(frozen=True)
class ExplicitAccept:
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))

    def __contains__(self, e: DiamondElement) -> bool:
        return e in self.elements

    def to_json(self) -> list:
        return [{"f": list(e.f.coeffs), "m": e.m} for e in sorted(self.elements, key=_elem_key)]


def _elem_key(e: DiamondElement):
    return (e.f.coeffs, e.m)


def accepting_for_qk(P: Iterable[int], k: int) -> QkAccept:
    return QkAccept(frozenset(P), k)


def accepting_for_l0(P: Iterable[int]) -> L0Accept:
    return L0Accept(frozenset(P))


def materialize(acc, dm: DiamondMonoid, guard: int = DIAMOND_GUARD) -> frozenset:
    return frozenset(e for e in dm.elements(guard) if e in acc)


# -- the marking transduction --------------------------------------------------


def transduction_r(w: Word, s: Semiring) -> WordSeries:
    """``sum over positions i of 1 * (w marked at i)``."""
    return WordSeries.of(s, {mark(w, i): s.one for i in range(1, len(w) + 1)})


@dataclass(frozen=True)
class MatrixTransducer:
    """An ``n``-state S-transducer given by one ``n x n`` matrix of series per letter.

    The realised transduction sends ``w`` to the ``(initial, final)`` entry
    of the product of the letter matrices.
    """

    n: int
    semiring: Semiring
    letters: dict = field(hash=False)
    initial: int = 0
    final: int = 1

    def ops(self) -> EntryOps:
        return word_series_ops(self.semiring)

    def matrix(self, w: Word) -> Matrix:
        ops = self.ops()
        acc = mat_identity(self.n, ops)
        for a in w:
            try:
                acc = mat_mul(acc, self.letters[a], ops)
            except KeyError:
                raise AlphabetError(f"unknown letter {a!r}") from None
        return acc

    def transduce(self, w: Word) -> WordSeries:
        return self.matrix(w)[self.initial][self.final]


def marking_transducer(alphabet: Iterable, s: Semiring) -> MatrixTransducer:
    """Two states; ``a|a`` loops on both, ``a|a'`` moves from 1 to 2, all weights 1."""
    one = lambda w: WordSeries.single(s, w)  # noqa: E731
    zero = WordSeries(s, ())
    letters = {a: ((one([(a, 0)]), one([(a, 1)])), (zero, one([(a, 0)]))) for a in alphabet}
    return MatrixTransducer(2, s, letters, 0, 1)


def r_mon(w: Word, s: Semiring) -> Matrix:
    """The marking transducer's matrix for ``w`` (a monoid morphism ``A* -> M_2``)."""
    return marking_transducer(sorted(set(w), key=repr), s).matrix(w)


def push_matrix(A: Matrix, phi: MonoidMorphism, s: Semiring) -> Matrix:
    """Apply ``S_f phi`` entrywise."""
    n = phi.target.size
    return mat_map(lambda e: e.push(phi, n), A)


@dataclass(frozen=True)
class MatrixRecogniser:
    """``w -> M_n(S_f phi)(R(w))`` with acceptance on one entry: mass on ``P`` is ``k``."""

    transducer: MatrixTransducer
    phi: MonoidMorphism
    entry: tuple
    P: frozenset
    k: int

    def __post_init__(self):
        object.__setattr__(self, "P", frozenset(self.P))

    def letter_matrices(self) -> dict:
        return {a: push_matrix(A, self.phi, self.transducer.semiring) for a, A in self.transducer.letters.items()}

    def image(self, w: Word) -> Matrix:
        ops = convolution_ops(self.phi.target, self.transducer.semiring)
        mats = self.letter_matrices()
        acc = mat_identity(self.transducer.n, ops)
        for a in w:
            if a not in mats:
                raise AlphabetError(f"unknown letter {a!r}")
            acc = mat_mul(acc, mats[a], ops)
        return acc

    def accepts(self, w: Word) -> bool:
        i, j = self.entry
        return integrate(self.image(w)[i][j], self.P) == self.k


# -- the diamond recogniser -----------------------------------------------------


@dataclass(frozen=True)
class DiamondRecogniser:
    monoid: DiamondMonoid
    alphabet: tuple
    letter_image: dict = field(hash=False)
    accepting: object = None

    def image(self, w: Word) -> DiamondElement:
        dm, img = self.monoid, self.letter_image
        acc = dm.identity
        for a in w:
            try:
                acc = dm.mul(acc, img[a])
            except KeyError:
                raise AlphabetError(f"unknown letter {a!r}") from None
        return acc

    __call__ = image

    def accepts(self, w: Word) -> bool:
        if self.accepting is None:
            raise ValueError("recogniser has no accepting set")
        return self.image(w) in self.accepting

    def with_accepting(self, acc) -> "DiamondRecogniser":
        return DiamondRecogniser(self.monoid, self.alphabet, self.letter_image, acc)


def _as_morphism(phi) -> MonoidMorphism:
    return phi.morphism if isinstance(phi, Recogniser) else phi


def diamond(phi: Recogniser | MonoidMorphism, s: Semiring) -> DiamondRecogniser:
    """Send each ``a`` in ``A`` to ``(chi of phi(a,1), phi(a,0))``.

    ``phi`` must be over a marked alphabet ``A x 2``.  The accepting set is
    left empty; see :func:`quantify`.
    """
    mor = _as_morphism(phi)
    A = base_alphabet(mor.alphabet)
    M = mor.target
    dm = DiamondMonoid(M, s)
    imgs = {a: DiamondElement(unit(s, M.size, mor.letter_image[(a, 1)]), mor.letter_image[(a, 0)]) for a in A}
    return DiamondRecogniser(dm, A, imgs, None)


def quantify(phi: Recogniser, s: Semiring, k: int) -> DiamondRecogniser:
    """Recogniser of ``Q_k(L)`` where ``L`` is the language of ``phi``."""
    if not 0 <= k < s.n:
        raise ValueError(f"{k} is not an element of {s.label()}")
    return diamond(phi, s).with_accepting(accepting_for_qk(phi.accepting, k))


def f_word(phi, s: Semiring, w: Word) -> SemimoduleVec:
    """``f_w`` computed position by position from the markings of ``w``."""
    mor = _as_morphism(phi)
    n = mor.target.size
    acc = zero_vec(s, n)
    for i in range(1, len(w) + 1):
        acc = acc + unit(s, n, mor.eval(mark(w, i)))
    return acc


def diamond_direct(phi, s: Semiring, w: Word) -> DiamondElement:
    return DiamondElement(f_word(phi, s, w), _as_morphism(phi).eval(lift0(w)))


# -- length preserving morphisms ---------------------------------------------------


def characteristic_point(f: SemimoduleVec) -> int | None:
    """``m`` if ``f`` is the characteristic function of ``{m}``, else ``None``."""
    supp = f.support()
    if len(supp) == 1 and f[supp[0]] == f.semiring.one:
        return supp[0]
    return None


def is_length_preserving(psi: DiamondRecogniser) -> bool:
    return all(characteristic_point(psi.letter_image[a].f) is not None for a in psi.alphabet)


def factor(psi: DiamondRecogniser) -> MonoidMorphism:
    """The ``phi`` over ``A x 2`` with ``diamond(phi)`` equal to ``psi``."""
    imgs = {}
    for a in psi.alphabet:
        e = psi.letter_image[a]
        m_a = characteristic_point(e.f)
        if m_a is None:
            raise ValueError(f"letter {a!r} has first component {e.f}, not a characteristic function")
        imgs[(a, 0)] = e.m
        imgs[(a, 1)] = m_a
    return MonoidMorphism(marked_alphabet(psi.alphabet), psi.monoid.base, imgs)


def all_length_preserving(M: FiniteMonoid, s: Semiring, alphabet: Iterable):
    """Every length preserving diamond recogniser over ``alphabet`` (no accepting set)."""
    A = tuple(alphabet)
    dm = DiamondMonoid(M, s)
    choices = [(mk, m) for mk in M.elements for m in M.elements]
    for pick in product(choices, repeat=len(A)):
        imgs = {a: DiamondElement(unit(s, M.size, mk), m) for a, (mk, m) in zip(A, pick)}
        yield DiamondRecogniser(dm, A, imgs, None)


def random_length_preserving(rng: random.Random, M: FiniteMonoid, s: Semiring, alphabet: Iterable) -> DiamondRecogniser:
    A = tuple(alphabet)
    dm = DiamondMonoid(M, s)
    imgs = {a: DiamondElement(unit(s, M.size, rng.randrange(M.size)), rng.randrange(M.size)) for a in A}
    return DiamondRecogniser(dm, A, imgs, None)
