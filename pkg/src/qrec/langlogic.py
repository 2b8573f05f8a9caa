"""Direct semantics of marked words and semiring quantifiers.

Nothing here goes through the diamond construction; membership in the
quantified language is decided by counting witnesses one marking at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .monoid import AlphabetError, Recogniser, Word, marked_alphabet
from .semiring import Semiring


def mark(w: Word, i: int) -> tuple:
    """``w`` over ``A x 2`` with position ``i`` (1-based) marked."""
    if not 1 <= i <= len(w):
        raise IndexError(f"position {i} out of range for a word of length {len(w)}")
    return tuple((a, 1 if j == i else 0) for j, a in enumerate(w, 1))


def lift0(w: Word) -> tuple:
    return tuple((a, 0) for a in w)


@dataclass(frozen=True)
class LanguageOracle:
    alphabet: tuple
    member: Callable[[tuple], bool]

    @classmethod
    def from_recogniser(cls, r: Recogniser) -> "LanguageOracle":
        return cls(r.alphabet, lambda w: r.accepts(w))

    @classmethod
    def from_predicate(cls, alphabet: Sequence, pred: Callable[[tuple], bool]) -> "LanguageOracle":
        return cls(tuple(alphabet), pred)

    def __contains__(self, w) -> bool:
        w = tuple(w)
        if any(a not in self.alphabet for a in w):
            raise AlphabetError(f"word {w!r} is not over the oracle alphabet")
        return bool(self.member(w))


def witness_count(L: LanguageOracle, w: Word) -> int:
    return sum(1 for i in range(1, len(w) + 1) if mark(w, i) in L)


def q_k_direct(L: LanguageOracle, s: Semiring, k: int, w: Word) -> bool:
    """Whether ``w`` lies in the quantified language ``Q_k(L)``."""
    return s.multiple(witness_count(L, w)) == k


def marked_letter_is(a, base_alphabet: Sequence) -> LanguageOracle:
    """Words with exactly one marked position, and that position carries ``a``."""
    def pred(w):
        marks = [x for x, b in w if b == 1]
        return len(marks) == 1 and marks[0] == a

    return LanguageOracle(marked_alphabet(base_alphabet), pred)
