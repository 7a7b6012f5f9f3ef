import json

import pytest

from diamond7.errors import InsufficientTruncation, NegativeValuation
from diamond7.eta import (SPECS, EtaQuotientSpec, build_L1, build_ladder, catalog, d_k,
                          eta_laurent, lambda_index, ladder_budget, ladder_step,
                          named, progression_offset)
from diamond7.qseries import dilate, is_divisible, mul, valuation
from oracles import d2_series, euler_product


def test_z_against_product_oracle():
    z = named("z", 60)
    assert z.coeffs[:2] == (1, 7)
    assert list(z.coeffs) == euler_product([(1, -7), (2, 7), (7, 1), (14, -1)], 60)


def test_y0_and_A_against_product_oracle():
    assert list(named("y0", 60).coeffs) == euler_product([(1, -8), (2, 4), (7, 8), (14, -4)], 60)
    A = named("A", 120)
    assert valuation(A) == 6
    assert list(A.coeffs) == euler_product([(1, -7), (2, 2), (49, 7), (98, -2)], 120, qpow=6)


def test_congruences_of_z_and_y0():
    assert is_divisible(named("y0", 200) - 1, 8)
    assert is_divisible(named("z", 200) - 1, 7)


def test_x_y_leading_terms():
    assert named("x", 10).coeffs[:2] == (0, 1)
    assert named("y", 10).coeffs[:2] == (0, 1)


def test_rL_integral_to_500():
    r = named("rL", 500)
    assert r.is_integral() and r.trunc == 500
    # against the definition
    x, y = named("x", 500), named("y", 500)
    num = x + 3 * mul(x, x) + mul(mul(x, x), x) + 6 * y + 5 * mul(x, y)
    assert all(v % 7 == 0 for v in num.coeffs)
    assert tuple(v // 7 for v in num.coeffs) == r.coeffs


def test_modular_named_agree_with_exact():
    for key in ("x", "y", "rL", "A"):
        exact = named(key, 150)
        red = named(key, 150, modulus=7 ** 4)
        assert red.coeffs == tuple(v % 7 ** 4 for v in exact.coeffs)


def test_D2_and_d_k():
    assert named("D", 3).coeffs == (1, 7, 33)
    assert d_k(2, 300) == d2_series(300)
    assert d_k(3, 100) == euler_product([(2, 3), (1, -10)], 100)


def test_m_has_negative_order():
    with pytest.raises(NegativeValuation):
        named("m", 20)
    shift, body = eta_laurent(SPECS["m"], 20)
    assert shift == -4 and body.coeffs[0] == 1
    with pytest.raises(KeyError):
        named("nope", 5)


def test_eta_orders():
    assert SPECS["z"].eta_order() == 0
    assert SPECS["y0"].eta_order() == 0
    assert SPECS["A"].eta_order() == 6
    assert SPECS["m"].eta_order() == -4
    for key in ("z", "y0", "A", "m"):
        assert SPECS[key].is_eta_quotient()
        assert SPECS[key].eta_order().denominator == 1


def test_spec_validation():
    with pytest.raises(ValueError):
        EtaQuotientSpec(0, ((1, 2), (1, 3)))
    with pytest.raises(ValueError):
        EtaQuotientSpec(0, ((0, 2),))


def test_lambda_index():
    assert lambda_index(1) == 1
    assert lambda_index(2) == 43
    assert lambda_index(3) == 43
    assert lambda_index(4) == 2101
    for a in range(1, 12):
        lam = lambda_index(a)
        assert (8 * lam) % 7 ** a == 1 and 0 < lam < 7 ** a
        if a % 2 == 0:
            assert lam == lambda_index(a + 1) == (1 + 7 ** (a + 1)) // 8
        else:
            assert lam == (1 + 7 ** a) // 8
    assert (6 * lambda_index(3, k=3)) % 343 == 1
    with pytest.raises(ValueError):
        lambda_index(0)


def test_L1_first_terms():
    L1 = build_L1(100).series
    assert L1.coeffs[0] == 0 and L1.coeffs[1] == 7
    assert L1.is_integral()


def test_L1_routes_agree_to_300():
    st = build_L1(300, check=True)
    assert st.series.trunc >= 300 and st.parity == 1


def test_L1_definition_from_d2():
    # L1 * D2(q^7) = sum d2(7n + 1) q^(n+1)
    N = 80
    d = d2_series(7 * N)
    L1 = build_L1(N).series
    lhs = mul(L1, dilate(named("D", -(-N // 7)), 7)).coeffs[:N - 1]
    rhs = [0] + [d[7 * n + 1] for n in range(N - 2)]
    assert list(lhs) == rhs


def test_ladder_step_reads_off_d2():
    # L2 * D2(q) = sum d2(49 n + 43) q^(n+1)
    N = 12
    L2 = ladder_step(build_L1(7 * N + 10)).series.truncate(N)
    d = d2_series(49 * N + 43)
    lhs = mul(L2, named("D", N)).coeffs
    rhs = [0] + [d[49 * n + 43] for n in range(N - 1)]
    assert list(lhs) == rhs
    assert all(v % 7 == 0 for v in L2.coeffs)


def test_ladder_parity_and_budget():
    states = build_ladder(3, 10)
    assert [s.parity for s in states] == [1, 0, 1]
    assert [s.alpha for s in states] == [1, 2, 3]
    assert all(s.trunc >= 10 for s in states)
    b = ladder_budget(3, 10)
    assert b["L1_order"] == 490 and b["A_order"] == 3430
    with pytest.raises(InsufficientTruncation):
        ladder_step(build_L1(20), N=10)


def test_ladder_mod_matches_exact():
    exact = build_ladder(3, 8)
    red = build_ladder(3, 8, modulus=7 ** 4)
    for e, r in zip(exact, red):
        assert r.series.coeffs[:8] == tuple(v % 7 ** 4 for v in e.series.coeffs[:8])


def test_progression_offsets():
    assert progression_offset(1) == 6
    # n = 7^alpha m - c_alpha runs over the progression of lambda_alpha
    for a in range(1, 8):
        assert (-progression_offset(a)) % 7 ** a == lambda_index(a)


def test_catalog_json():
    cat = catalog(20)
    json.dumps(cat)
    assert cat["A"]["valuation"] == 6
    assert cat["m"]["q_shift"] == -4
    assert cat["x"]["coefficients"][1] == "1"
    assert set(cat) >= {"z", "y0", "A", "D2", "D3", "m", "x", "y", "rL"}
