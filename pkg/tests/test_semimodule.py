import pytest
from hypothesis import given, settings, strategies as st

from qrec.monoid import MonoidMorphism, cyclic_group, u2
from qrec.semimodule import (
    GuardError,
    MatrixSemiring,
    SemimoduleVec,
    WordSeries,
    all_vectors,
    convolve,
    fmap,
    mult,
    semiring_ops,
    translate,
    unit,
    vector_index,
    zero_vec,
)
from qrec.semiring import STANDARD, from_spec, make_bool2, make_zq

Z2, Z3, B = make_zq(2), make_zq(3), make_bool2()


def vec(s, *c):
    return SemimoduleVec(s, c)


def test_unit():
    assert unit(Z2, 2, 0) == vec(Z2, 1, 0)
    assert unit(Z2, 1, 0) == vec(Z2, 1)
    assert unit(B, 2, 1) == vec(B, 0, 1)


def test_fmap_identity_and_collapse():
    f = vec(Z3, 2, 1)
    assert fmap([0, 1], f, 2) == f
    assert fmap([0, 0], vec(Z2, 1, 1), 1) == vec(Z2, 0)
    assert fmap([0, 0], vec(B, 1, 1), 1) == vec(B, 1)


def test_mult_left_unit():
    f = vec(Z3, 2, 1)
    F = unit(Z3, 9, vector_index(f))
    assert mult(F, 2) == f


def test_mult_one_point_z3():
    # F gives weight 2 to the vector (2)
    F = vec(Z3, 0, 0, 2)
    assert mult(F, 1) == vec(Z3, 1)


def test_enumeration_order():
    vs = all_vectors(Z2, 2)
    assert [v.coeffs for v in vs] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(vector_index(v) == i for i, v in enumerate(vs))


def test_guard():
    with pytest.raises(GuardError):
        all_vectors(Z3, 9)


def test_convolve_units():
    m = u2()
    for a in m.elements:
        for b in m.elements:
            assert convolve(unit(B, 3, a), unit(B, 3, b), m) == unit(B, 3, m.mul[a][b])


def double_sum(f, g, m):
    s = f.semiring
    out = [s.zero] * m.size
    for a in m.elements:
        for b in m.elements:
            out[m.mul[a][b]] = s.plus(out[m.mul[a][b]], s.times(f[a], g[b]))
    return SemimoduleVec(s, tuple(out))


def test_convolve_z2_example():
    m = cyclic_group(2)
    f, g = vec(Z2, 1, 1), vec(Z2, 1, 0)
    assert convolve(f, g, m) == vec(Z2, 1, 1)
    assert convolve(f, g, m) == double_sum(f, g, m)
    assert convolve(f, g, m, "right") == convolve(f, g, m)


def test_translate():
    m = u2()
    f = vec(Z3, 1, 2, 0)
    assert translate(m, 0, f) == f
    assert translate(m, 2, f) == vec(Z3, 0, 2, 1)
    # y * 2 = 2 for every y, and 1 + 2 = 0
    assert translate(m, 2, f, "right") == vec(Z3, 0, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(STANDARD), st.data())
def test_convolve_matches_double_sum(spec, data):
    s, m = from_spec(spec), u2()
    coeffs = st.tuples(*[st.integers(0, s.n - 1)] * 3)
    f = SemimoduleVec(s, data.draw(coeffs))
    g = SemimoduleVec(s, data.draw(coeffs))
    assert convolve(f, g, m) == double_sum(f, g, m)
    assert convolve(f, g, m, "right") == convolve(f, g, m)


@given(st.sampled_from(STANDARD), st.data())
def test_module_laws(spec, data):
    s = from_spec(spec)
    el = st.integers(0, s.n - 1)
    f = SemimoduleVec(s, data.draw(st.tuples(el, el)))
    g = SemimoduleVec(s, data.draw(st.tuples(el, el)))
    k = data.draw(el)
    assert (f + g).scale(k) == f.scale(k) + g.scale(k)
    assert f + zero_vec(s, 2) == f
    assert f.scale(s.one) == f


def test_word_series():
    x = WordSeries.of(Z2, {("a",): 1, ("b",): 1})
    y = WordSeries.single(Z2, ("a",))
    assert (x + y).as_dict() == {("b",): 1}
    assert (x * y).as_dict() == {("a", "a"): 1, ("b", "a"): 1}
    # pushing along a -> 1, b -> 0 in Z2
    phi = MonoidMorphism(("a", "b"), cyclic_group(2), {"a": 1, "b": 0})
    assert x.push(phi, 2) == vec(Z2, 1, 1)


def test_matrix_semiring():
    M = MatrixSemiring(2, semiring_ops(Z3))
    A = ((1, 2), (0, 1))
    assert M.mul(M.identity(), A) == A
    assert M.mul(A, A) == ((1, 1), (0, 1))
    assert M.add(A, M.zero()) == A
