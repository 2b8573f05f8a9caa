import pytest

from qrec.duality import (
    check_duality,
    check_quotient,
    generator,
    lambda1,
    lambda12,
    left_action,
    quotient_dual,
    quotient_qk,
    reutenauer_check,
)
from qrec.langlogic import LanguageOracle, q_k_direct
from qrec.measure import all_measures
from qrec.monoid import LEFT, RIGHT, NAMED_MONOIDS, cyclic_group, trivial_monoid, u2, words_up_to
from qrec.quantify import DiamondMonoid, diamond_direct
from qrec.semimodule import SemimoduleVec, zero_vec
from qrec.semiring import from_spec, make_bool2, make_zq

Z2, Z3, B = make_zq(2), make_zq(3), make_bool2()


def test_identity_element_acts_trivially():
    m = u2()
    d = lambda1(zero_vec(Z3, 3), 0, {1, 2}, 2, m)
    assert len(d.terms) == 1
    G, Y = d.terms[0]
    assert (G.K, G.k, Y) == ({1, 2}, 2, {0, 1, 2})


def test_lambda12_is_the_preimage():
    """x is in lambda12 exactly when fx puts mass k on K."""
    m = u2()
    for coeffs in [(1, 2, 0), (0, 1, 1), (2, 2, 2)]:
        f = SemimoduleVec(Z3, coeffs)
        for K in [{0}, {1}, {1, 2}]:
            for k in Z3.elements:
                direct = {
                    x for x in m.elements
                    if Z3.sum(f[n] for n in m.elements if m.mul[n][x] in K) == k
                }
                assert lambda12(f, 0, K, k, m) == direct


def test_lambda12_complement_within_support():
    # f supported on {1} in Z2 acting on Z2: the point x lands in K via n = 1
    m = cyclic_group(2)
    f = SemimoduleVec(Z2, (0, 1))
    assert lambda12(f, 0, {0}, 1, m) == {1}
    assert lambda12(f, 0, {0}, 0, m) == {0}


def test_quotient_dual_matches_action():
    m = cyclic_group(2)
    dm = DiamondMonoid(m, Z3)
    ms = all_measures(2, Z3)
    d = generator({1}, 2, 2)
    for e in dm.elements():
        q = quotient_dual(e, d, m)
        for mu in ms:
            for x in m.elements:
                assert ((mu, x) in q) == (left_action(dm, e, mu, x) in d)


@pytest.mark.parametrize(
    "mon, spec, checked, counts",
    [
        (trivial_monoid(), "zq:2", 76, {"lambda11": 16, "lambda12": 8, "lambda1": 16, "lambda2": 4, "action": 8, "quotient_action": 24}),
        (cyclic_group(2), "zq:2", 2240, {"lambda11": 256, "lambda12": 128, "lambda1": 512, "lambda2": 64, "action": 512, "quotient_action": 768}),
        (cyclic_group(2), "zq:3", 14544, {"lambda11": 1944, "lambda12": 432, "lambda1": 3888, "lambda2": 144, "action": 5832, "quotient_action": 2304}),
        (u2(), "bool2", 31296, {"lambda11": 3072, "lambda12": 1152, "lambda1": 9216, "lambda2": 576, "action": 13824, "quotient_action": 3456}),
    ],
    ids=["trivial-z2", "z2-z2", "z2-z3", "u2-bool2"],
)
def test_check_duality_grid(mon, spec, checked, counts):
    r = check_duality(mon, from_spec(spec))
    assert r["failures"] == []
    assert not r["sampled"]
    assert r["checked"] == checked
    assert r["counts"] == counts


def test_quotient_by_empty_word(marked_a):
    dec = quotient_qk((), marked_a, Z3, 2)
    assert len(dec.terms) == 1
    t = dec.terms[0]
    assert (t.k1, t.k2) == (2, 0)
    assert t.qk.K == marked_a.accepting
    assert t.l0 == frozenset(marked_a.monoid.elements)


@pytest.mark.parametrize("side", [LEFT, RIGHT])
@pytest.mark.parametrize("spec", ["bool2", "zq:2", "zq:3"])
def test_quotient_decomposition(marked_a, side, spec):
    s = from_spec(spec)
    for u in words_up_to("ab", 2):
        for k in s.elements:
            r = check_quotient(marked_a, s, k, u, side, max_len=5)
            assert r["failures"] == []


def test_quotient_pieces_as_languages(marked_a):
    """Count of a's in u·w is 2 mod 3 iff the pieces say so."""
    L = LanguageOracle.from_recogniser(marked_a)
    dec = quotient_qk("aab", marked_a, Z3, 2)
    for w in words_up_to("ab", 5):
        expected = q_k_direct(L, Z3, 2, ("a", "a", "b") + w)
        assert dec.contains_word(w, marked_a, Z3) == expected
        assert dec.contains_element(diamond_direct(marked_a, Z3, w)) == expected


@pytest.mark.parametrize(
    "name, spec, A, image_size, lp",
    [
        ("trivial", "zq:2", "a", 2, 1),
        ("z2", "zq:2", "a", 2, 4),
        ("u1", "bool2", "ab", 9, 16),
        ("u2", "bool2", "ab", 19, 81),
    ],
)
def test_reutenauer(name, spec, A, image_size, lp):
    r = reutenauer_check(NAMED_MONOIDS[name](), from_spec(spec), tuple(A))
    assert r["equal"] and r["failures"] == []
    assert r["second_quotient_closed"]
    assert r["image_size"] == image_size
    assert r["length_preserving"] == lp
    assert r["first_atoms"] == r["second_atoms"] == image_size


@pytest.mark.parametrize("name, spec, A", [("u2", "bool2", "ab"), ("u1", "bool2", "ab"), ("trivial", "zq:2", "a")])
def test_reutenauer_fails_without_quantifiers(name, spec, A):
    r = reutenauer_check(NAMED_MONOIDS[name](), from_spec(spec), tuple(A), kinds=("l0",))
    assert not r["equal"]
