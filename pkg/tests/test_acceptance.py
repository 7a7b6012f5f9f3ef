"""Acceptance criteria, one PASS/FAIL line each, printed past the capture."""

import time
from fractions import Fraction


from diamond7.crossval import cross_validate_successor
from diamond7.htable import verify_h_congruences
from diamond7.ideal import GENERATORS, is_zero_ideal, stability_check, verify_psi
from diamond7.localized import s_vector
from diamond7.modeq import (load_modular_equation_data, verify_modeq_x, verify_modeq_z,
                            verify_recurrence_data, verify_substitution, w_hat_poly, phi)
from diamond7.pipeline import check_congruence
from diamond7.relations import (PAIRS, REFERENCE_DEVIANTS, expand_ranges, failure_set,
                                growth_certificate)
from oracles import dk_fast


def _line(capsys, n, title, verdict):
    with capsys.disabled():
        print("\nCRITERION %d %-44s %s" % (n, title, verdict))


def report(capsys, n, title, body):
    try:
        body()
    except BaseException:
        _line(capsys, n, title, "FAIL")
        raise
    _line(capsys, n, title, "PASS")


def test_criterion_1_brute_force_congruence(capsys):
    def body():
        t0 = time.perf_counter()
        rep = check_congruence(2, 4, 1500)
        elapsed = time.perf_counter() - t0
        rows = {r["alpha"]: r for r in rep["progressions"]}
        assert rows[2]["passed"] and rows[3]["passed"]
        assert rows[2]["checked"] > 0 and rows[3]["checked"] > 0
        assert rep["order"] >= 2102 and rows[4]["passed"] and rows[4]["first"] == 2101
        d = dk_fast(2102)
        assert all(d[n] % 7 == 0 for n in range(1500) if (8 * n - 1) % 49 == 0)
        assert d[2101] % 49 == 0
        assert elapsed < 60
    report(capsys, 1, "brute-force congruence", body)


def test_criterion_2_l1_coefficients(l1_rep, capsys):
    def body():
        c = l1_rep.coeffs
        assert str(c[(0, 1)]) == "320013737/7"
        assert str(c[(0, 4)]) == "4505536916704"
        assert str(c[(1, 0)]) == "-320013688/7"
        assert str(c[(0, 15)]) == "2773078757450186752"
        assert l1_rep.nu == 3
    report(capsys, 2, "L1 representation coefficients", body)


def test_criterion_3_modular_equations(capsys):
    def body():
        data = load_modular_equation_data()
        assert verify_modeq_z(2000, data)
        assert verify_modeq_x(2000, data)
        assert verify_substitution(data)
    report(capsys, 3, "modular equations and substitution", body)


def test_criterion_4_s_vector_and_first_relation(l1_rep, capsys):
    def body():
        s = tuple(s_vector(l1_rep))
        assert s == (29, 45, 1, 47, 42, 20, 40, 32, 0)
        # recompute the residues straight from the exact coefficients
        for v, (b, m) in zip(s, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 0), (1, 1), (1, 2), (1, 3)]):
            exact = Fraction(l1_rep.s.get((b, m), 0))
            assert exact.denominator == 1 and exact.numerator % 49 == v
        assert sum(a * b for a, b in zip(GENERATORS[0], s)) == 7154 == 146 * 49
        assert is_zero_ideal(s)
    report(capsys, 4, "s-vector of L1 and I(1) = 0", body)


def test_criterion_5_h_congruences(tables, capsys):
    def body():
        for t in tables:
            rep = verify_h_congruences(t, raise_on_failure=False)
            assert rep["passed"] and rep["checked_mod49"] > 0
        data = load_modular_equation_data()
        assert verify_recurrence_data(data)["passed"]
        # column sums recomputed from the w_hat polynomials
        vh = {}
        for k in range(1, 15):
            vh[k] = [c // 7 ** phi(l) if not (l == 0 and k in (7, 14)) else 0
                     for l, c in enumerate(w_hat_poly(data, k))]
        L = max(len(v) for v in vh.values())
        get = lambda k, l: vh[k][l] if l < len(vh[k]) else 0
        for l in range(L):
            assert sum(get(k, l) for k in range(1, 15) if k not in (7, 14)) % 7 == 0
            if l:
                assert (get(7, l) + get(14, l)) % 7 == 0
        assert w_hat_poly(data, 7)[0] == 25398809 and 25398809 % 49 == 2
    report(capsys, 5, "h-table congruences and recurrence data", body)


def test_criterion_6_deviant_sets(capsys):
    def body():
        assert not any(failure_set("V0->V1", 200).values())
        assert growth_certificate("V0->V1", 60)["passed"]
        assert growth_certificate("V1->V0", 60)["passed"]
        fails = failure_set("V1->V0", 60)
        for pair in PAIRS:
            want = expand_ranges(REFERENCE_DEVIANTS[pair])
            assert fails[pair] == want, (pair, sorted(fails[pair] ^ want))
    report(capsys, 6, "deviant-set equality", body)


def test_criterion_7_ideal_stability(tables, capsys):
    def body():
        h1, h0 = tables
        st = stability_check(h1, h0)
        target = tuple(46 * (a - b) % 49 for a, b in zip(GENERATORS[0], GENERATORS[1]))
        assert tuple(st["images"]["p1"]) == target
        for name, cert in st["certificates"].items():
            back = tuple(sum(c * g[j] for c, g in zip(cert["combination"], GENERATORS)) % 49
                         for j in range(9))
            assert back == tuple(st["images"][name])
        cv = cross_validate_successor(h1, h0)
        assert cv["stage2"]["predicted"] == cv["stage2"]["series"]
        assert cv["stage2"]["precision"] == [2] * 9
    report(capsys, 7, "ideal stability and cross-validation", body)


def test_criterion_8_property_suites(capsys):
    import test_localized as tl
    import test_qseries as tq

    def body():
        for fn in (tq.test_mul_commutative, tq.test_mul_associative, tq.test_distributive,
                   tq.test_u_operator_linear, tq.test_u_operator_pulls_out_dilated_factor,
                   tl.test_represent_inverts_evaluate, tl.test_evaluate_inverts_represent):
            fn()
        assert verify_psi(50)["passed"]
    report(capsys, 8, "property suites", body)
