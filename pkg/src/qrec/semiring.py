"""Finite commutative semirings given by operation tables.

Elements are dense integer ids ``0..n-1``.  A :class:`Semiring` is checked
exhaustively when it is built; construct with ``validate=False`` to obtain a
possibly broken table for inspection with :func:`check_axioms`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Iterable


class SemiringError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """A failed law.  ``kind`` is ``"structure"`` or ``"axiom"``."""

    kind: str
    law: str
    witness: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.law} at {self.witness}"


@dataclass(frozen=True)
class Semiring:
    n: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    name: str = field(default="", compare=False)
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "add", tuple(tuple(r) for r in self.add))
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        if self.validate:
            bad = check_axioms(self)
            if bad:
                raise SemiringError(f"not a finite commutative semiring: {bad[0]}")

    @property
    def elements(self) -> range:
        return range(self.n)

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def sum(self, xs: Iterable[int]) -> int:
        return reduce(self.plus, xs, self.zero)

    def prod(self, xs: Iterable[int]) -> int:
        return reduce(self.times, xs, self.one)

    def multiple(self, m: int) -> int:
        """``1 + 1 + ... + 1`` (m times); the empty sum is ``0``."""
        acc = self.zero
        for _ in range(m):
            acc = self.add[acc][self.one]
        return acc

    def label(self) -> str:
        return self.name or f"semiring[{self.n}]"


def check_axioms(s: Semiring) -> list[Violation]:
    """Every failed semiring law of ``s``, found by full enumeration.

    Malformed tables yield only ``structure`` violations, since the laws are
    meaningless on them.
    """
    n = s.n
    out: list[Violation] = []
    if not isinstance(n, int) or n < 1:
        return [Violation("structure", "carrier must be non-empty", (n,))]
    for tname, table in (("add", s.add), ("mul", s.mul)):
        if len(table) != n or any(len(row) != n for row in table):
            out.append(Violation("structure", f"{tname} table is not {n}x{n}"))
            continue
        for a, b in product(range(n), repeat=2):
            v = table[a][b]
            if not isinstance(v, int) or not 0 <= v < n:
                out.append(Violation("structure", f"{tname} entry out of range", (a, b, v)))
    for cname, c in (("zero", s.zero), ("one", s.one)):
        if not isinstance(c, int) or not 0 <= c < n:
            out.append(Violation("structure", f"{cname} is not an element", (c,)))
    if out:
        return out

    add, mul, z, o = s.add, s.mul, s.zero, s.one
    for op, table, unit in (("+", add, z), ("*", mul, o)):
        for a in range(n):
            if table[unit][a] != a or table[a][unit] != a:
                out.append(Violation("axiom", f"unit of {op}", (a,)))
        for a, b in product(range(n), repeat=2):
            if table[a][b] != table[b][a]:
                out.append(Violation("axiom", f"commutativity of {op}", (a, b)))
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                out.append(Violation("axiom", f"associativity of {op}", (a, b, c)))
    for a in range(n):
        if mul[z][a] != z or mul[a][z] != z:
            out.append(Violation("axiom", "zero annihilates", (a,)))
    for a, b, c in product(range(n), repeat=3):
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            out.append(Violation("axiom", "left distributivity", (a, b, c)))
        if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
            out.append(Violation("axiom", "right distributivity", (a, b, c)))
    return out


def make_zq(q: int) -> Semiring:
    """The ring of integers modulo ``q``."""
    if not isinstance(q, int) or q < 1:
        raise SemiringError(f"modulus must be a positive integer, got {q!r}")
    r = range(q)
    return Semiring(
        q,
        tuple(tuple((a + b) % q for b in r) for a in r),
        tuple(tuple((a * b) % q for b in r) for a in r),
        0,
        1 % q,
        name=f"zq:{q}",
    )


def make_bool2() -> Semiring:
    """The Boolean semiring ``({0,1}, or, and)``."""
    return Semiring(2, ((0, 1), (1, 1)), ((0, 0), (0, 1)), 0, 1, name="bool2")


def from_spec(spec: str) -> Semiring:
    """Parse a named shorthand: ``"bool2"`` or ``"zq:Q"``."""
    spec = spec.strip()
    if spec == "bool2":
        return make_bool2()
    if spec.startswith("zq:"):
        try:
            q = int(spec[3:])
        except ValueError:
            raise SemiringError(f"bad modulus in {spec!r}") from None
        return make_zq(q)
    raise SemiringError(f"unknown semiring shorthand {spec!r}")


def to_json(s: Semiring) -> dict:
    return {
        "n": s.n,
        "add": [list(r) for r in s.add],
        "mul": [list(r) for r in s.mul],
        "zero": s.zero,
        "one": s.one,
    }


def from_json(obj) -> Semiring:
    """Accept either a shorthand string or the table object."""
    if isinstance(obj, str):
        return from_spec(obj)
    try:
        return Semiring(obj["n"], obj["add"], obj["mul"], obj["zero"], obj["one"])
    except (KeyError, TypeError) as e:
        raise SemiringError(f"malformed semiring object: {e}") from None


STANDARD = ("bool2", "zq:2", "zq:3", "zq:4")
