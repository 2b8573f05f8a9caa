"""Exit criteria.  Each test prints one PASS/FAIL line, tolerance zero mismatches."""

import random

import pytest

from qrec.duality import check_duality, reutenauer_check
from qrec.measure import all_measures, brute_force_measures
from qrec.monoid import NAMED_MONOIDS
from qrec.quantify import diamond, factor, is_length_preserving, random_length_preserving
from qrec.semiring import STANDARD, from_spec
from qrec.verify import DUALITY_GRID, _GRID_MONOIDS, duality_suite, laws_suite, oracle_suite, random_marked_dfas

pytestmark = pytest.mark.acceptance

SEED = 0


def report(capsys, n, title, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")


@pytest.fixture(scope="module")
def oracle():
    return oracle_suite(SEED, max_len=8, count=20)


def test_criterion_1_quantified_recognition(oracle, capsys):
    dfas = random_marked_dfas(SEED, 20)
    assert all(len(A) in (1, 2) and d.states <= 4 for A, d in dfas)
    sec = oracle["sections"]["quantified_languages"]
    ok = sec["failures"] == 0 and sec["dfas"] == 20 and sec["max_len"] == 8
    report(capsys, 1, "diamond + accepting_for_qk vs q_k_direct", ok, f"{sec['checked']} checks, {sec['failures']} mismatches")
    assert ok, oracle["failures"]


def test_criterion_2_existential(oracle, capsys):
    sec = oracle["sections"]["existential"]
    ok = sec["failures"] == 0 and sec["checked"] > 0
    report(capsys, 2, "bool2, k=1 vs witness_count >= 1", ok, f"{sec['checked']} checks, {sec['failures']} mismatches")
    assert ok


def test_criterion_3_measure_bijection(capsys):
    bad = []
    cases = 0
    for spec in STANDARD:
        s = from_spec(spec)
        for n in range(4):
            cases += 1
            found = sorted(brute_force_measures(n, s))
            integrals = sorted(mu.values for mu in all_measures(n, s))
            if found != integrals or len(found) != s.n**n or len(set(integrals)) != s.n**n:
                bad.append((spec, n))
    report(capsys, 3, "finitely additive measures = integrals, |S|^|X| of them", not bad, f"{cases} (S, X) cases, {len(bad)} mismatches")
    assert not bad


def test_criterion_4_duality(capsys):
    total, fails, sampled = 0, 0, False
    for mname, spec in DUALITY_GRID:
        r = check_duality(_GRID_MONOIDS[mname](), from_spec(spec), seed=SEED)
        total += r["checked"]
        fails += len(r["failures"])
        sampled |= r["sampled"]
    ok = fails == 0 and not sampled
    report(capsys, 4, "lambda/Lambda preimage identities, exhaustive", ok, f"{total} checks over {len(DUALITY_GRID)} (M, S), {fails} failures")
    assert ok


def test_criterion_5_quotient_closure(capsys):
    rep = duality_suite(SEED, max_u=3, max_len=7)
    secs = {k: v for k, v in rep["sections"].items() if k.startswith("quotients/")}
    fails = sum(v["failures"] for v in secs.values())
    words = sum(v["word_checks"] for v in secs.values())
    ok = len(secs) == len(DUALITY_GRID) and fails == 0 and words > 0
    report(capsys, 5, "quotient decompositions, |u| <= 3, words |w| <= 7", ok, f"{sum(v['checked'] for v in secs.values())} checks ({words} word-level), {fails} failures")
    assert ok, rep["failures"]


REUTENAUER_CASES = [
    ("trivial", "zq:2", "a"),
    ("z2", "zq:2", "a"),
    ("u1", "bool2", "ab"),
    ("u2", "bool2", "ab"),
    ("chain3", "zq:2", "a"),
]


def test_criterion_6_reutenauer(capsys):
    results = {}
    for name, spec, A in REUTENAUER_CASES:
        mon = NAMED_MONOIDS[name]()
        assert mon.size <= 3
        r = reutenauer_check(mon, from_spec(spec), tuple(A))
        results[(name, spec, A)] = r["equal"] and not r["failures"]
    equal = sum(results.values())
    ok = equal == len(results) and len({n for n, _, _ in results}) >= 3
    report(capsys, 6, "quotient-closed algebras coincide", ok, f"{equal}/{len(results)} (M, S, A) cases equal")
    assert ok, results


def test_criterion_7_algebraic_laws(capsys):
    rep = laws_suite(SEED)
    need = {"semiring_axioms", "monoid_axioms", "monad_laws", "convolution_commutes", "r_mon"}
    ok = need <= set(rep["sections"]) and rep["failed"] == 0
    detail = ", ".join(f"{k} {v['checked']}" for k, v in sorted(rep["sections"].items()))
    report(capsys, 7, "semiring, monoid, monad, convolution, r_mon laws", ok, f"{detail}; {rep['failed']} failures")
    assert ok, rep["failures"]


def test_criterion_8_length_preserving_factorisation(capsys):
    rng = random.Random(SEED)
    names = [n for n in sorted(NAMED_MONOIDS) if NAMED_MONOIDS[n]().size <= 3]
    bad = 0
    for _ in range(10):
        mon = NAMED_MONOIDS[rng.choice(names)]()
        s = from_spec(rng.choice(STANDARD))
        psi = random_length_preserving(rng, mon, s, rng.choice(["a", "ab"]))
        again = diamond(factor(psi), s)
        if not is_length_preserving(psi) or again.letter_image != psi.letter_image or again.monoid != psi.monoid:
            bad += 1
    report(capsys, 8, "factor then diamond reproduces letter images", bad == 0, f"10 recognisers, {bad} mismatches")
    assert bad == 0
