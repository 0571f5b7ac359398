import random

import pytest

from chainpoly.analysis import (
    DESCENTS,
    LATTICE,
    OMEGA,
    Budget,
    BudgetExceededError,
    cross_verify,
    is_symmetric,
    is_unimodal,
    random_graded_poset,
    random_natural_labeling,
    random_poset,
    run_selftest,
    verify_gasharov,
    verify_kirillov,
)
from chainpoly.ehrhart import IntPolynomial
from chainpoly.poset import (
    Labeling,
    Poset,
    antichain,
    chain_poset,
    is_natural,
    natural_labeling,
    rank_function,
    zigzag_poset,
)
from chainpoly.pp import w_tilde_polynomial

from oracles import euler_numbers_andre


@pytest.mark.parametrize(
    "seq, expected",
    [
        ((1, 3, 1), (True, 1)),
        ((1, 0, 2), (False, None)),
        ((1, 3, 1, 0, 0), (True, 1)),
        ((1, 1, 0, 0), (True, 0)),
        ((2, 2, 2), (True, 0)),
        ((0, 1, 0, 1), (False, None)),
        ((), (True, None)),
    ],
)
def test_is_unimodal(seq, expected):
    assert is_unimodal(seq) == expected


def test_is_symmetric():
    assert is_symmetric(IntPolynomial((1, 1, 0, 0)))
    assert is_symmetric((1, 3, 1, 0, 0))
    assert not is_symmetric((1, 2, 0))
    assert is_symmetric((0, 0))


def test_cross_verify_examples():
    r = cross_verify(zigzag_poset(3))
    assert r.identities_ok and r.delta.coeffs == (1, 1, 0, 0) and r.unimodal
    assert set(r.deltas) == {LATTICE, OMEGA, DESCENTS}
    r = cross_verify(antichain(1))
    assert r.delta.coeffs == (1, 0) and r.identities_ok
    r = cross_verify(zigzag_poset(4))
    assert r.delta.coeffs == (1, 3, 1, 0, 0) and r.unimodal and r.peak == 1


def test_cross_verify_budget():
    P = antichain(7)
    with pytest.raises(BudgetExceededError) as info:
        cross_verify(P)
    assert {m for m, _ in info.value.overruns} == {LATTICE}
    r = cross_verify(P, on_budget="skip")
    assert LATTICE in r.skipped and r.identities_ok
    tight = Budget(max_extensions=10)
    with pytest.raises(BudgetExceededError) as info:
        cross_verify(antichain(4), budget=tight)
    assert [m for m, _ in info.value.overruns] == [DESCENTS]


def test_cross_verify_random_posets(rng):
    for _ in range(200):
        P = random_poset(rng, 5)
        r = cross_verify(P)
        assert r.identities_ok and r.nonnegative and r.delta0_is_one and r.passed


def test_verify_kirillov_small():
    reports = verify_kirillov(4)
    assert [r.delta.effective() for r in reports] == [(1,), (1,), (1, 1), (1, 3, 1)]
    assert all(r.passed and not r.skipped for r in reports)
    assert verify_kirillov(1)[0].delta.effective() == (1,)


def test_verify_kirillov_coefficient_sums():
    sums = [sum(r.delta) for r in verify_kirillov(8)]
    assert sums == euler_numbers_andre(8)[1:]


def test_verify_kirillov_reports_skips():
    reports = verify_kirillov(7, budget=Budget(max_extensions=20), n_min=6)
    assert DESCENTS in reports[0].skipped and DESCENTS in reports[1].skipped
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("n", range(1, 21))
def test_fast_zigzag_delta_unimodal(n):
    r = cross_verify(zigzag_poset(n), methods=(OMEGA,), asserts_unimodal=True)
    assert r.unimodal and r.nonnegative and r.delta0_is_one and r.passed


def test_symmetry_is_reported_not_asserted():
    P = Poset(3, frozenset({(0, 1)}))  # 2-chain plus a point
    r = cross_verify(P)
    assert r.passed
    assert "symmetric" in r.to_dict()


def test_gasharov_examples():
    Z6 = zigzag_poset(6)
    g = verify_gasharov(Z6, natural_labeling(Z6))
    assert g.hypotheses_hold and g.unimodal and sum(g.w) == 61 and g.passed
    g = verify_gasharov(chain_poset(3), natural_labeling(chain_poset(3)))
    assert g.hypotheses_hold and g.w.coeffs[0] == 1 and sum(g.w) == 1 and g.passed
    g = verify_gasharov(zigzag_poset(1), Labeling((1,)))
    assert g.failed_hypotheses == ["1 <= rank <= 2"] and g.unimodal and g.passed


def test_gasharov_names_failed_hypotheses():
    P = Poset(4, frozenset({(0, 1), (1, 2), (3, 2)}))
    g = verify_gasharov(P, Labeling((4, 3, 2, 1)))
    assert "graded" in g.failed_hypotheses and "natural labeling" in g.failed_hypotheses
    assert g.passed  # verdict not asserted


def test_random_graded_posets(rng):
    for _ in range(100):
        P = random_graded_poset(rng, 6)
        assert 1 <= rank_function(P).rank <= 2
        w = random_natural_labeling(rng, P)
        assert is_natural(P, w)
        g = verify_gasharov(P, w)
        assert g.hypotheses_hold and g.unimodal


def test_natural_labeling_choice_is_immaterial(rng):
    for _ in range(30):
        P = random_poset(rng, 5)
        expected = w_tilde_polynomial(P).poly
        from chainpoly.pp import w_polynomial_descents

        assert w_polynomial_descents(P, random_natural_labeling(rng, P)).poly == expected


def test_selftest_is_deterministic():
    a = run_selftest(7, 10, 5)
    b = run_selftest(7, 10, 5)
    assert a.passed and a.items == b.items


def test_selftest_reports_first_failure(monkeypatch):
    import chainpoly.analysis as analysis

    real = analysis.count_order_preserving
    monkeypatch.setattr(analysis, "count_order_preserving", lambda P, m, brute=False: real(P, m, brute) + (m == 3))
    result = run_selftest(1, 5, 4)
    assert not result.passed
    assert result.failure is result.items[-1]
    assert result.failure["poset"].splitlines()[0].isdigit()
