from itertools import product

from hypothesis import given, strategies as st

from diamond7.zmod import howell_form, in_span, smith_solve, span_certificate, valuation_p

P, K = 3, 2
N = P ** K


def brute_span(gens):
    n = len(gens[0])
    out = set()
    for c in product(range(N), repeat=len(gens)):
        out.add(tuple(sum(ci * g[j] for ci, g in zip(c, gens)) % N for j in range(n)))
    return out


vec = st.lists(st.integers(0, N - 1), min_size=3, max_size=3)
mats = st.lists(vec, min_size=1, max_size=3)


def test_valuation_p():
    assert valuation_p(0, 7, 2) == 2
    assert valuation_p(14, 7, 2) == 1
    assert valuation_p(3, 7, 2) == 0
    assert valuation_p(-7, 7, 2) == 1


def test_mod49_sample():
    # 7 * e1 lies in the span of (7, 0) and (0, 1); e1 itself does not
    gens = [[7, 0], [0, 1]]
    assert in_span([14, 3], gens, 7, 2)
    assert not in_span([1, 0], gens, 7, 2)
    c = span_certificate([14, 3], gens, 7, 2)
    assert [(c[0] * 7) % 49, c[1] % 49] == [14, 3]


@given(mats, vec)
def test_span_membership_matches_enumeration(gens, target):
    span = brute_span(gens)
    c = span_certificate(target, gens, P, K)
    assert (c is not None) == (tuple(target) in span)
    if c is not None:
        back = [sum(ci * g[j] for ci, g in zip(c, gens)) % N for j in range(3)]
        assert back == target


@given(mats)
def test_howell_rows_generate_same_span(gens):
    H, C = howell_form(gens, P, K)
    assert (brute_span(H) if H else {(0, 0, 0)}) == brute_span(gens)
    for h, c in zip(H, C):
        assert h == [sum(ci * g[j] for ci, g in zip(c, gens)) % N for j in range(3)]


@given(mats, vec)
def test_smith_solve(rows, b):
    A = [list(r) for r in rows]
    b = b[: len(A)]
    sol = smith_solve(A, b, P, K)
    ncols = 3
    solutions = [s for s in product(range(N), repeat=ncols)
                 if all(sum(a * x for a, x in zip(r, s)) % N == bi for r, bi in zip(A, b))]
    if sol is None:
        assert not solutions
        return
    assert all(sum(a * x for a, x in zip(r, sol.s)) % N == bi for r, bi in zip(A, b))
    for g in sol.generators:
        assert all(sum(a * x for a, x in zip(r, g)) % N == 0 for r in A)
    # the generators account for the whole solution set
    reach = {tuple(v) for v in brute_span(sol.generators)} if sol.generators else {(0,) * ncols}
    got = {tuple((x + d) % N for x, d in zip(sol.s, v)) for v in reach}
    assert got == set(solutions)
