from fractions import Fraction

import pytest

from diamond7.errors import CongruenceFailure
from diamond7.htable import (CONGRUENCE_RANGES, HTable, congruence_cases, direct_cell,
                             fundamental_images, fundamental_recurrence_residual,
                             principal_part_check, standard_tables, verify_h_congruences)
from diamond7.modeq import load_modular_equation_data
from diamond7.profiles import pi


def test_grid_complete_and_integral(tables):
    h1, h0 = tables
    for t in (h1, h0):
        cells = [(b, m, n) for b in (0, 1) for n in range(1, 15) for m in range(1 - b, 15)]
        assert all(c in t.support for c in cells)
        assert all(isinstance(v, int) for v in t.entries.values())
        # finite support in r, and no constant term
        assert all(r >= -1 for r in t.support.values())
        assert not any(g == 0 and r == 0 for (_, g, _, _, r) in t.entries)


def test_nu_is_exact(tables):
    h1, h0 = tables
    assert all(h1.nu_exact.values())
    assert all(h0.nu_exact.values())


@pytest.mark.parametrize("parity,beta,m,n", [(1, 0, 2, 3), (1, 1, 0, 5), (1, 0, 4, 1),
                                             (0, 0, 1, 2), (0, 1, 3, 1), (0, 1, 0, 4)])
def test_cells_match_direct_q_series(tables, parity, beta, m, n):
    t = tables[0] if parity == 1 else tables[1]
    raw = direct_cell(parity, beta, m, n)
    top = t.support[(beta, m, n)]
    for g in (0, 1):
        for r in range(1 - g, top + 1):
            want = Fraction(t.h(beta, g, m, n, r)) * Fraction(7) ** pi(parity, beta, g, m, r)
            assert raw.get((g, r), 0) == want
    assert all(r <= top for (_, r) in raw)


def test_extra_cells_for_composition(tables):
    h0 = tables[1]
    for g in (0, 1):
        for r in range(1 - g, 8):
            assert (g, r, 21) in h0.support


def test_standard_tables_cached(tables):
    assert standard_tables() is tables


def test_congruences(tables):
    for t in tables:
        rep = verify_h_congruences(t)
        assert rep["passed"] and rep["checked_mod49"] > 0 and rep["checked_mod7"] > 0


def test_congruence_ranges_listed():
    assert CONGRUENCE_RANGES[(1, 0, 0)][1][0] == range(5, 6)
    cases = set(congruence_cases(1))
    assert (0, 0, 1, 1) in cases and (0, 0, 5, 1) in cases and (0, 0, 5, 2) not in cases
    assert (1, 1, 14, 14) in cases


def test_perturbed_table_fails(tables):
    h1 = tables[0]
    bad = h1.perturbed((0, 0, 1, 1, 1), 7)
    with pytest.raises(CongruenceFailure) as exc:
        verify_h_congruences(bad)
    w = exc.value.witness
    assert (w["modulus"], w["beta"], w["gamma"], w["m"], w["n"], w["r"]) == (49, 0, 0, 1, 1, 1)
    rep = verify_h_congruences(h1.perturbed((1, 1, 3, 4, 2), 1), raise_on_failure=False)
    assert not rep["passed"] and {f["modulus"] for f in rep["failures"]} == {7, 49}
    # the original is untouched
    assert verify_h_congruences(h1)["passed"]


def test_json_round_trip(tables):
    h1 = tables[0]
    obj = h1.to_json()
    assert len(obj["sha256"]) == 64
    assert all(isinstance(e[5], str) for e in obj["entries"])
    back = HTable.from_json(obj)
    assert back.entries == h1.entries and back.support == h1.support
    obj["entries"][0][5] = str(int(obj["entries"][0][5]) + 1)
    with pytest.raises(ValueError):
        HTable.from_json(obj)


@pytest.mark.parametrize("parity,beta,n", [(1, 0, 3), (1, 1, -2), (0, 0, 0), (0, 1, 5)])
def test_fundamental_recurrence(tables, parity, beta, n):
    assert fundamental_recurrence_residual(parity, beta, n)


def test_fundamental_recurrence_detects_bad_data(tables):
    bad = load_modular_equation_data().mutated("b", 4, 3, 1)
    assert not fundamental_recurrence_residual(1, 0, 3, bad)


@pytest.mark.parametrize("parity,beta,k", [(1, 0, -1), (1, 1, 3), (0, 0, -6), (0, 1, 7)])
def test_principal_part(parity, beta, k):
    rep = principal_part_check(parity, beta, k, depth=10)
    assert rep["passed"] and rep["pole_order"] in (180, 296)


def test_principal_part_detects_wrong_image(monkeypatch):
    FI = fundamental_images(1)
    P, Q = FI.G(0, -2)
    monkeypatch.setitem(FI._G, (0, -2), (P[:-1] + [P[-1] + 1], Q))
    rep = principal_part_check(1, 0, -2, depth=5)
    assert not rep["passed"] and rep["first_mismatch"] is not None
    with pytest.raises(ValueError):
        principal_part_check(1, 0, 8)
