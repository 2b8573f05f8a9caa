import pytest

from qrec.monoid import Dfa, syntactic_monoid


def even_a_dfa() -> Dfa:
    return Dfa(2, ("a", "b"), [[1, 0], [0, 1]], 0, [0])


def ab_star_dfa() -> Dfa:
    return Dfa(3, ("a", "b"), [[1, 2], [2, 0], [2, 2]], 0, [0])


def marked_a_dfa() -> Dfa:
    """Exactly one marked position, and it carries ``a``."""
    A = (("a", 0), ("b", 0), ("a", 1), ("b", 1))
    return Dfa(3, A, [[0, 0, 1, 2], [1, 1, 2, 2], [2, 2, 2, 2]], 0, [1])


@pytest.fixture
def marked_a():
    return syntactic_monoid(marked_a_dfa())


@pytest.fixture
def ab_star():
    return syntactic_monoid(ab_star_dfa())
