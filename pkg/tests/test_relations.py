import pytest

from diamond7.errors import DomainError, MissingDeviant, UnexpectedDeviant
from diamond7.localized import XYElement
from diamond7.relations import (PAIRS, REFERENCE_DEVIANTS, _image, expand_ranges, failure_set,
                                growth_certificate, slack, verify_phi_superadditivity,
                                verify_pi_hat_bound, verify_profile_inequalities,
                                verify_shift_floor_inequality, verify_stability_samples)
from oracles import f9, pi_ref, theta_ref

# V1->V0 failure sets over the box, recomputed below from the oracle profiles
LITERAL = {
    (0, 0): {(1, 1), (1, 2), (1, 5), (2, 1), (2, 2), (2, 4), (2, 5), (3, 1), (3, 2), (3, 4),
             (3, 5), (3, 8), (4, 1), (5, 1)},
    (0, 1): {(1, 0), (2, 0), (3, 0)},
    (1, 0): {(0, 1), (0, 2), (0, 4), (0, 5), (0, 8), (0, 9), (0, 10), (1, 1), (1, 2), (1, 4),
             (1, 5), (1, 8), (1, 9), (1, 10), (2, 1), (3, 1)},
    (1, 1): {(0, 0), (0, 2), (0, 6), (1, 0), (1, 2), (1, 6)},
}


def slack_ref(kind, b, g, m, r):
    if kind == "V0->V1":
        return pi_ref(0, b, g, m, r) + theta_ref(0, b, m) - theta_ref(1, g, r)
    return pi_ref(1, b, g, m, r) + theta_ref(1, b, m) - theta_ref(0, g, r) - 1


def test_slack_matches_oracle():
    for kind in ("V0->V1", "V1->V0"):
        for b, g in PAIRS:
            for m in range(1 - b, 70):
                for r in range(1 - g, 70):
                    assert slack(kind, b, g, m, r) == slack_ref(kind, b, g, m, r)


def test_v1_to_v0_deviant_at_m3_r2():
    # listed as a deviant cell, but the inequality is tight there (slack 0);
    # kept red, see the deviant-list entry in the decisions ledger
    assert (3, 2) in expand_ranges(REFERENCE_DEVIANTS[(1, 0)])
    assert slack("V1->V0", 1, 0, 3, 2) == 0
    assert (3, 2) in failure_set("V1->V0", 40)[(1, 0)]


def test_examples():
    assert slack("V1->V0", 0, 0, 4, 3) >= 0
    with pytest.raises(DomainError):
        verify_profile_inequalities("V0->V1", 20)
    with pytest.raises(DomainError):
        slack("sideways", 0, 0, 1, 1)


def test_v0_to_v1_clean_over_200():
    assert not any(failure_set("V0->V1", 200).values())
    rep, fails = verify_profile_inequalities("V0->V1", 60)
    assert rep["passed"] and rep["growth"]["passed"]


def test_v1_to_v0_literal_sets():
    fails = failure_set("V1->V0", 60)
    assert fails == LITERAL
    # independent recount with the oracle profiles
    for b, g in PAIRS:
        got = {(m, r) for m in range(1 - b, 61) for r in range(1 - g, 61)
               if slack_ref("V1->V0", b, g, m, r) < 0}
        assert got == LITERAL[(b, g)]


def test_relation_to_reference_lists():
    ref = {k: expand_ranges(v) for k, v in REFERENCE_DEVIANTS.items()}
    assert LITERAL[(0, 1)] == ref[(0, 1)]
    # the (0,0) and (1,0) lists are supersets of the literal failures
    assert LITERAL[(0, 0)] < ref[(0, 0)]
    assert LITERAL[(1, 0)] < ref[(1, 0)]
    # (1,1): the r = 0 column fails although the list starts at r = 1
    assert LITERAL[(1, 1)] - ref[(1, 1)] == {(0, 0), (1, 0)}


def test_strict_mode_reports_both_directions():
    with pytest.raises(UnexpectedDeviant):
        verify_profile_inequalities("V1->V0", 60)
    rep, _ = verify_profile_inequalities("V1->V0", 60, expected=LITERAL)
    assert rep["passed"]
    more = dict(LITERAL)
    more[(0, 0)] = LITERAL[(0, 0)] | {(4, 3)}
    with pytest.raises(MissingDeviant):
        verify_profile_inequalities("V1->V0", 60, expected=more)
    rep, _ = verify_profile_inequalities("V1->V0", 60, strict=False)
    assert rep["unexpected"] == {"11": [(0, 0), (1, 0)]}
    assert not rep["passed"]


@pytest.mark.parametrize("kind", ["V0->V1", "V1->V0"])
def test_growth_certificate(kind):
    cert = growth_certificate(kind, 60)
    assert cert["passed"]
    for entry in cert["pairs"].values():
        assert entry["m"]["min_increment"] >= 0 and entry["r"]["min_increment"] >= 0
        assert len(entry["m"]["tail_increment"]) == 1
        assert entry["m"]["strict"]


def test_growth_certificate_beyond_box():
    # spot check the claim directly far outside the box
    for kind in ("V0->V1", "V1->V0"):
        for b, g in PAIRS:
            for m, r in [(61, 5), (5, 61), (400, 400), (1000, 3), (3, 1000), (700, 90)]:
                assert slack(kind, b, g, m, r) >= 0


def test_floor_inequalities():
    assert verify_phi_superadditivity(300)["passed"]
    assert verify_shift_floor_inequality(60)["passed"]
    assert verify_pi_hat_bound(60)["passed"]


def test_phi_superadditivity_direct():
    for r in range(41):
        for l in range(41):
            for M in range(41):
                assert f9(7 * r + M) + f9(7 * l + 17) >= f9(7 * (r + l) + M + 9)


def test_shift_floor_inequality_direct():
    for eps in (-27, -23, -13, -9, -2, 0, 12, 16):
        for r in range(0, 25):
            for l in range(0, 25):
                for m in range(0, 25):
                    for j in range(14):
                        mp = m + j - 14
                        lhs = f9(7 * r - mp + eps) + f9(7 * l + j - 6)
                        assert lhs >= f9(7 * (r + l) - m + eps)


@pytest.mark.parametrize("parity", [0, 1])
def test_stability_samples(parity):
    rep = verify_stability_samples(parity, trials=4, seed=1)
    assert rep["passed"] and rep["trials"] == 4
    with pytest.raises(DomainError):
        verify_stability_samples(parity, trials=0)


def test_zero_element_has_zero_image():
    assert _image(XYElement(3, {}, 0), 0).is_zero()
    assert _image(XYElement(3, {}, 1), 1).is_zero()
