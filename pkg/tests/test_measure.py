import pytest
from hypothesis import given, settings, strategies as st

from qrec.measure import (
    ClopenGen,
    Measure,
    act_monoid,
    act_on_point,
    act_semimodule,
    all_measures,
    brute_force_measures,
    integrate,
    is_measure,
    measure_of,
    point_measure,
    scale,
    violations,
    zero_measure,
)
from qrec.monoid import LEFT, RIGHT, NAMED_MONOIDS, cyclic_group, u2
from qrec.semimodule import SemimoduleVec, unit
from qrec.semiring import STANDARD, from_spec, make_zq

Z2, Z3 = make_zq(2), make_zq(3)


def vec(s, *c):
    return SemimoduleVec(s, c)


def test_integrate():
    f = vec(Z3, 1, 2)
    assert integrate(f, ()) == 0
    assert integrate(f, {0, 1}) == 0
    assert integrate(unit(Z3, 2, 1), {1}) == 1
    assert integrate(unit(Z3, 2, 1), {0}) == 0


def test_measure_of_example():
    mu = measure_of(vec(Z3, 1, 2))
    assert (mu({0}), mu({1}), mu({0, 1}), mu(())) == (1, 2, 0, 0)
    assert measure_of(vec(Z3, 0, 0)) == zero_measure(2, Z3)


@pytest.mark.parametrize("n, spec, count", [(1, "zq:2", 2), (2, "zq:2", 4), (2, "zq:3", 9)])
def test_measure_counts(n, spec, count):
    s = from_spec(spec)
    found = brute_force_measures(n, s)
    assert len(found) == count
    assert sorted(found) == sorted(mu.values for mu in all_measures(n, s))


@pytest.mark.parametrize("spec", ["zq:2", "zq:3", "bool2"])
def test_integration_is_injective(spec):
    s = from_spec(spec)
    ms = all_measures(3, s)
    assert len(set(ms)) == s.n**3
    assert all(is_measure(mu) for mu in ms)
    assert all(mu.density() == measure_of(mu.density()).density() for mu in ms)


def test_non_additive_function_flagged():
    bad = Measure(2, Z2, (0, 1, 1, 1))
    assert violations(bad)
    assert not is_measure(bad)


def test_zero_and_scale():
    mu = measure_of(vec(Z3, 2, 1))
    assert mu + zero_measure(2, Z3) == mu
    assert scale(0, mu) == zero_measure(2, Z3)


def test_act_monoid_identity():
    mu = measure_of(vec(Z3, 1, 2, 0))
    assert act_monoid(0, mu, LEFT, u2()) == mu


def test_act_monoid_translation_example():
    mu = measure_of(vec(Z3, 1, 2))
    assert act_monoid(1, mu, LEFT, cyclic_group(2)) == measure_of(vec(Z3, 2, 1))


def test_act_semimodule_units():
    m = u2()
    mu = measure_of(vec(Z3, 1, 2, 2))
    assert act_semimodule(unit(Z3, 3, 0), mu, LEFT, m) == mu
    for x in m.elements:
        for side in (LEFT, RIGHT):
            assert act_semimodule(unit(Z3, 3, x), mu, side, m) == act_monoid(x, mu, side, m)


def test_act_on_point_unit():
    m = u2()
    for a in m.elements:
        for x in m.elements:
            assert act_on_point(unit(Z3, 3, a), x, m) == point_measure(3, Z3, m.mul[a][x])


def test_act_on_point_fibre_collapse():
    # in u2, m * 1 = 1 for m in {1, 2}: all mass lands on 1
    f = vec(Z3, 0, 2, 2)
    assert act_on_point(f, 1, u2()) == measure_of(vec(Z3, 0, 1, 0))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(STANDARD), st.sampled_from(sorted(NAMED_MONOIDS)), st.data())
def test_action_on_point_measure(spec, name, data):
    s, m = from_spec(spec), NAMED_MONOIDS[name]()
    el = st.integers(0, s.n - 1)
    f = SemimoduleVec(s, data.draw(st.tuples(*[el] * m.size)))
    x = data.draw(st.integers(0, m.size - 1))
    side = data.draw(st.sampled_from((LEFT, RIGHT)))
    assert act_semimodule(f, point_measure(m.size, s, x), side, m) == act_on_point(f, x, m, side)


def test_clopen_generator_membership():
    g = ClopenGen({0, 1}, 0)
    assert measure_of(vec(Z3, 1, 2)) in g
    assert vec(Z3, 1, 2) in g
    assert vec(Z3, 1, 1) not in g
    with pytest.raises(TypeError):
        3 in g
