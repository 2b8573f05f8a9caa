"""Finite monoids, morphisms out of free monoids, DFAs and syntactic monoids.

A finite monoid stands in for a Boolean space with an internal monoid: with
a finite carrier the topology is discrete, so every subset is clopen and a
recogniser is just a monoid morphism plus an accepting subset.

Words are sequences of letters.  Letters are any hashable values; letters of
a marked alphabet are pairs ``(a, 0)`` (plain) and ``(a, 1)`` (marked).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Hashable, Iterable, Sequence

from .semiring import Violation

Letter = Hashable
Word = Sequence[Letter]

LEFT = "left"
RIGHT = "right"


class AlphabetError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMonoid:
    size: int
    mul: tuple[tuple[int, ...], ...]
    identity: int = 0
    # optional shortest representative word per element, for printing
    words: tuple | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        if len(self.mul) != self.size or any(len(r) != self.size for r in self.mul):
            raise ValueError(f"multiplication table must be {self.size}x{self.size}")

    @property
    def elements(self) -> range:
        return range(self.size)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def product(self, xs: Iterable[int]) -> int:
        return reduce(self.op, xs, self.identity)

    def label(self, x: int) -> str:
        if self.words is not None:
            w = self.words[x]
            return "".join(map(str, w)) if w else "1"
        return str(x)


def check_monoid(m: FiniteMonoid) -> list[Violation]:
    out = []
    n, t, e = m.size, m.mul, m.identity
    if not 0 <= e < n:
        return [Violation("structure", "identity is not an element", (e,))]
    for a, b in product(range(n), repeat=2):
        if not 0 <= t[a][b] < n:
            out.append(Violation("structure", "entry out of range", (a, b)))
    if out:
        return out
    for a in range(n):
        if t[e][a] != a or t[a][e] != a:
            out.append(Violation("axiom", "identity law", (a,)))
    for a, b, c in product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            out.append(Violation("axiom", "associativity", (a, b, c)))
    return out


def quotient_set(m: FiniteMonoid, x: int, P: Iterable[int], side: str = LEFT) -> frozenset[int]:
    """``x^{-1}P = {y : xy in P}`` (left) or ``Px^{-1} = {y : yx in P}`` (right)."""
    P = frozenset(P)
    if side == LEFT:
        return frozenset(y for y in m.elements if m.mul[x][y] in P)
    if side == RIGHT:
        return frozenset(y for y in m.elements if m.mul[y][x] in P)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


# -- named small monoids -----------------------------------------------------


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(1, ((0,),), 0, name="trivial")


def cyclic_group(n: int) -> FiniteMonoid:
    """Additive group of integers modulo ``n``."""
    return FiniteMonoid(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, name=f"z{n}")


def u1() -> FiniteMonoid:
    """``{1, 0}`` with a zero."""
    return FiniteMonoid(2, ((0, 1), (1, 1)), 0, name="u1")


def u2() -> FiniteMonoid:
    """``{1, e, f}`` where ``xy = y`` for ``x, y`` in ``{e, f}`` (not commutative)."""
    return FiniteMonoid(3, ((0, 1, 2), (1, 1, 2), (2, 1, 2)), 0, name="u2")


def u1_with_unit_group() -> FiniteMonoid:
    """``{1, z, 0}`` with ``z*z = z`` and zero ``0``: the chain 1 > z > 0."""
    return FiniteMonoid(3, ((0, 1, 2), (1, 1, 2), (2, 2, 2)), 0, name="chain3")


NAMED_MONOIDS = {
    "trivial": trivial_monoid,
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "u1": u1,
    "u2": u2,
    "chain3": u1_with_unit_group,
}


# -- morphisms and recognisers -----------------------------------------------


@dataclass(frozen=True)
class MonoidMorphism:
    """Morphism ``A* -> target`` fixed by the images of the letters."""

    alphabet: tuple
    target: FiniteMonoid
    letter_image: dict

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        missing = [a for a in self.alphabet if a not in self.letter_image]
        if missing:
            raise AlphabetError(f"no image for letters {missing}")
        for a in self.alphabet:
            if not 0 <= self.letter_image[a] < self.target.size:
                raise ValueError(f"image of {a!r} is not an element")

    def __hash__(self):
        return hash((self.alphabet, tuple(self.letter_image[a] for a in self.alphabet)))

    def eval(self, word: Word) -> int:
        mul, x = self.target.mul, self.target.identity
        img = self.letter_image
        for a in word:
            try:
                x = mul[x][img[a]]
            except KeyError:
                raise AlphabetError(f"unknown letter {a!r}") from None
        return x

    __call__ = eval


@dataclass(frozen=True)
class Recogniser:
    morphism: MonoidMorphism
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))

    @property
    def monoid(self) -> FiniteMonoid:
        return self.morphism.target

    @property
    def alphabet(self) -> tuple:
        return self.morphism.alphabet

    def accepts(self, word: Word) -> bool:
        return self.morphism.eval(word) in self.accepting

    def __iter__(self):
        # unpack as (monoid, morphism, accepting)
        return iter((self.monoid, self.morphism, self.accepting))


def marked_alphabet(alphabet: Iterable[Letter]) -> tuple:
    return tuple((a, b) for a in alphabet for b in (0, 1))


def base_alphabet(marked: Iterable) -> tuple:
    """Recover ``A`` from ``A x 2``; raises unless the shape is exact."""
    marked = tuple(marked)
    base = []
    for letter in marked:
        if not (isinstance(letter, tuple) and len(letter) == 2 and letter[1] in (0, 1)):
            raise AlphabetError(f"{letter!r} is not a marked-alphabet letter")
        if letter[0] not in base:
            base.append(letter[0])
    if set(marked) != set(marked_alphabet(base)) or len(marked) != 2 * len(base):
        raise AlphabetError("alphabet is not of the form A x 2")
    return tuple(base)


# -- DFAs -------------------------------------------------------------------


@dataclass(frozen=True)
class Dfa:
    states: int
    alphabet: tuple
    delta: tuple[tuple[int, ...], ...]  # delta[state][letter index]
    initial: int = 0
    accepting: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(r) for r in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if self.states < 1:
            raise ValueError("a DFA needs at least one state")
        if len(self.delta) != self.states or any(len(r) != len(self.alphabet) for r in self.delta):
            raise ValueError("transition table must be total on states x alphabet")
        if any(not 0 <= q < self.states for r in self.delta for q in r):
            raise ValueError("transition target out of range")
        if not 0 <= self.initial < self.states or any(not 0 <= q < self.states for q in self.accepting):
            raise ValueError("initial/accepting state out of range")

    def letter_index(self, a: Letter) -> int:
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise AlphabetError(f"unknown letter {a!r}") from None

    def run(self, word: Word, state: int | None = None) -> int:
        q = self.initial if state is None else state
        for a in word:
            q = self.delta[q][self.letter_index(a)]
        return q

    def accepts(self, word: Word) -> bool:
        return self.run(word) in self.accepting

    def minimize(self) -> "Dfa":
        """Trim unreachable states, then merge equivalent ones (Moore refinement)."""
        k = len(self.alphabet)
        order = [self.initial]
        seen = {self.initial}
        for q in order:
            for i in range(k):
                r = self.delta[q][i]
                if r not in seen:
                    seen.add(r)
                    order.append(r)
        block = {q: int(q in self.accepting) for q in order}
        while True:
            sig = {q: (block[q],) + tuple(block[self.delta[q][i]] for i in range(k)) for q in order}
            ids: dict = {}
            new = {q: ids.setdefault(sig[q], len(ids)) for q in order}
            stable = len(ids) == len(set(block.values()))
            block = new
            if stable:
                break
        # renumber in order of first reachability so the initial state is 0
        renum: dict = {}
        for q in order:
            renum.setdefault(block[q], len(renum))
        n = len(renum)
        delta = [None] * n
        for q in order:
            delta[renum[block[q]]] = tuple(renum[block[self.delta[q][i]]] for i in range(k))
        acc = {renum[block[q]] for q in order if q in self.accepting}
        return Dfa(n, self.alphabet, tuple(delta), 0, frozenset(acc))


def transition_monoid(d: Dfa) -> Recogniser:
    """Transition monoid of ``d`` with its canonical morphism.

    Elements are numbered in shortlex order of their first representative
    (alphabet order as given); element 0 is the identity.
    """
    n, k = d.states, len(d.alphabet)
    gens = [tuple(d.delta[q][i] for q in range(n)) for i in range(k)]
    ident = tuple(range(n))
    index = {ident: 0}
    elems = [ident]
    words: list = [()]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        t = elems[i]
        for j, g in enumerate(gens):
            u = tuple(g[t[q]] for q in range(n))
            if u not in index:
                index[u] = len(elems)
                elems.append(u)
                words.append(words[i] + (d.alphabet[j],))
                queue.append(index[u])
    size = len(elems)
    # x * y: first apply x, then y
    mul = tuple(tuple(index[tuple(y[x[q]] for q in range(n))] for y in elems) for x in elems)
    mon = FiniteMonoid(size, mul, 0, words=tuple(words))
    letters = {a: index[gens[j]] for j, a in enumerate(d.alphabet)}
    acc = frozenset(i for i, t in enumerate(elems) if t[d.initial] in d.accepting)
    return Recogniser(MonoidMorphism(d.alphabet, mon, letters), acc)


def syntactic_monoid(d: Dfa) -> Recogniser:
    """The syntactic monoid of ``L(d)``: the transition monoid of the minimal DFA."""
    return transition_monoid(d.minimize())


def random_dfa(rng: random.Random, alphabet: Sequence, max_states: int = 4) -> Dfa:
    n = rng.randint(1, max_states)
    delta = tuple(tuple(rng.randrange(n) for _ in alphabet) for _ in range(n))
    acc = frozenset(q for q in range(n) if rng.random() < 0.5)
    return Dfa(n, tuple(alphabet), delta, 0, acc)


def words_up_to(alphabet: Sequence, max_len: int):
    """All words of length ``<= max_len`` in shortlex order, as tuples."""
    for length in range(max_len + 1):
        yield from product(alphabet, repeat=length)


def all_morphisms(alphabet: Sequence, target: FiniteMonoid):
    """Every morphism ``alphabet* -> target``."""
    alphabet = tuple(alphabet)
    for imgs in product(target.elements, repeat=len(alphabet)):
        yield MonoidMorphism(alphabet, target, dict(zip(alphabet, imgs)))
