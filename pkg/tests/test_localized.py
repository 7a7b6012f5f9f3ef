import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diamond7.errors import DomainError, NoRepresentation, NonIntegralEvaluation, UnderdeterminedInput
from diamond7.eta import build_L1, named
from diamond7.localized import (TRACKED_SLOTS, SVector, XYElement, evaluate, membership_report,
                                represent, represent_mod, s_vector, valuation7, z_power)
from diamond7.profiles import EPSILON, pi, pi_hat, theta
from diamond7.qseries import QSeries, mul
from oracles import pi_ref, theta_ref


def test_profile_examples():
    assert theta(1, 0, 4) == 0
    assert theta(0, 0, 2) == 0
    assert pi(1, 1, 1, 0, 3) == 3
    with pytest.raises(DomainError):
        theta(1, 0, 0)
    with pytest.raises(DomainError):
        pi(1, 0, 0, 1, 0)
    with pytest.raises(DomainError):
        theta(2, 0, 1)


def test_theta_against_reference():
    for a in (0, 1):
        for b in (0, 1):
            for m in range(1 - b, 501):
                assert theta(a, b, m) == theta_ref(a, b, m), (a, b, m)


def test_pi_against_reference():
    for a in (0, 1):
        for b in (0, 1):
            for g in (0, 1):
                for m in range(1 - b, 501):
                    for r in range(1 - g, 501):
                        assert pi(a, b, g, m, r) == pi_ref(a, b, g, m, r), (a, b, g, m, r)


def test_theta_nondecreasing():
    for a in (0, 1):
        for b in (0, 1):
            vals = [theta(a, b, m) for m in range(1 - b, 300)]
            assert all(u <= v for u, v in zip(vals, vals[1:]))


def test_pi_hat_lower_bound_small_grid():
    for (a, b, g) in EPSILON:
        for m in range(4, 80):
            for r in range(1 - g, 80):
                assert pi(a, b, g, m, r) >= pi_hat(a, b, g, m, r)


# -- evaluate -----------------------------------------------------------------

def test_evaluate_examples():
    e = XYElement.from_s(0, 0, {(0, 1): 1})
    assert evaluate(e, 10) == named("x", 10)
    assert evaluate(XYElement(3, {}), 12).coeffs == (0,) * 12
    rl = XYElement.from_s(0, 1, {(0, 1): 7, (0, 2): 21, (0, 3): 7, (1, 0): 42, (1, 1): 35})
    assert rl.coeffs == {(0, 1): 1, (0, 2): 3, (0, 3): 1, (1, 0): 6, (1, 1): 5}
    assert evaluate(rl, 300).coeffs == tuple(7 * v for v in named("rL", 300).coeffs)


def test_evaluate_denominator():
    e = XYElement(0, {(0, 1): Fraction(1, 7)})
    with pytest.raises(NonIntegralEvaluation):
        evaluate(e, 10)
    f = evaluate(e, 10, allow_rational=True)
    assert f.coeffs[1] == Fraction(1, 7)


def test_evaluate_with_denominator_power():
    e = XYElement(2, {(0, 1): 1, (1, 0): 1})
    f = evaluate(e, 40)
    x, y = named("x", 40), named("y", 40)
    assert f == mul(x + y, z_power(-2, 40))


# -- represent ----------------------------------------------------------------

def test_represent_L1(l1_rep):
    c = l1_rep.coeffs
    assert l1_rep.nu == 3 and l1_rep.parity == 1
    assert c[(0, 1)] == Fraction(320013737, 7)
    assert c[(1, 0)] == Fraction(-320013688, 7)
    assert c[(0, 4)] == 4505536916704
    assert c[(0, 15)] == 2773078757450186752
    assert max(m for _, m in c) == 15


def test_represent_basis_element():
    x3 = mul(mul(named("x", 60), named("x", 60)), named("x", 60))
    e = represent(x3, 0, 3, guard=25)
    assert e.coeffs == {(0, 3): 1}


def test_represent_failures():
    f = QSeries([1] * 60)                # 1/(1-q) has a pole at q = 1
    with pytest.raises(NoRepresentation):
        represent(f, 0, 10)
    with pytest.raises(UnderdeterminedInput):
        represent(named("x", 20), 0, 10)


def test_membership_L1(l1_rep):
    ok, deficits = membership_report(l1_rep, 1)
    assert ok and deficits == []
    ok0, deficits0 = membership_report(l1_rep, 0)
    assert not ok0


def test_membership_deficit_gap():
    e = XYElement(0, {(0, 1): Fraction(1, 49)})
    ok, deficits = membership_report(e, 0)
    assert not ok
    assert deficits == [{"beta": 0, "m": 1, "valuation": -2, "theta": 0, "gap": 2}]


def test_s_vector(l1_rep):
    assert tuple(s_vector(l1_rep)) == (29, 45, 1, 47, 42, 20, 40, 32, 0)
    assert tuple(s_vector(XYElement(3, {}, 1))) == (0,) * 9
    assert tuple(s_vector(l1_rep.scaled(49))) == (0,) * 9
    assert l1_rep.s[(0, 1)] == 320013737
    with pytest.raises(ValueError):
        SVector((1, 2))


def test_xyelement_json_round_trip(l1_rep):
    text = l1_rep.dumps()
    obj = json.loads(text)
    assert obj["nu"] == 3 and obj["parity"] == 1
    t0 = next(t for t in obj["terms"] if (t["beta"], t["m"]) == (0, 1))
    assert t0 == {"beta": 0, "m": 1, "s": "320013737", "theta": -1}
    assert XYElement.from_json(text) == l1_rep


def test_valuation7():
    assert valuation7(Fraction(49, 3)) == 2
    assert valuation7(Fraction(5, 343)) == -3
    assert valuation7(0) is None


def test_represent_mod_agrees_with_exact(l1_rep):
    K, T = 8, 200
    L1 = build_L1(T).series
    # theta = -1 slots need a nonnegative weight: solve for 7 * L1 with weight 1
    F = mul(z_power(3, T, 7 ** K), QSeries([7 * v for v in L1.coeffs], modulus=7 ** K))
    rep = represent_mod(F, 1, K, weight=1, nu=3)
    exact = l1_rep.s
    for slot in TRACKED_SLOTS:
        p = rep.precision(slot)
        assert p >= 2
        assert (rep.s[slot] - exact.get(slot, 0)) % 7 ** p == 0
    assert tuple(rep.s_vector()) == tuple(s_vector(l1_rep))


# -- properties -----------------------------------------------------------------

slots = [(b, m) for b in (0, 1) for m in range(0, 7) if m >= 1 - b]


@st.composite
def elements(draw, parity=None):
    nu = draw(st.integers(0, 12))
    support = draw(st.lists(st.sampled_from(slots), min_size=1, max_size=6, unique=True))
    coeffs = {s: draw(st.integers(-10 ** 6, 10 ** 6).filter(bool)) for s in support}
    return XYElement(nu, coeffs, parity)


@given(elements())
def test_represent_inverts_evaluate(e):
    D = 8
    T = 2 * D + 2 + 25
    f = evaluate(e, T)
    assert represent(f, e.nu, D) == XYElement(e.nu, e.coeffs)


@given(elements())
def test_evaluate_inverts_represent(e):
    D = 8
    T = 2 * D + 2 + 25
    f = evaluate(e, T)
    g = evaluate(represent(f, e.nu, D), T)
    assert g == f


@given(st.lists(st.integers(0, 48), min_size=5, max_size=5))
def test_integrality_forces_rl_shape(vals):
    # only the five theta = -1 slots of V^(1): evaluation is an integer
    # series exactly when the mod-7 shape of 7 r_L holds
    s = dict(zip(((0, 1), (0, 2), (0, 3), (1, 0), (1, 1)), vals))
    e = XYElement.from_s(0, 1, s)
    f = evaluate(e, 40, allow_rational=True)
    a = vals[0]
    shape = ((vals[1] - 3 * a) % 7 == 0 and (vals[2] - a) % 7 == 0
             and (vals[3] - 6 * a) % 7 == 0 and (vals[4] - 5 * a) % 7 == 0)
    assert f.is_integral() == shape
