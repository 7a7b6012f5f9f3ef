"""Linear algebra over Z/p^K.

Z/p^K is not a field, so plain Gaussian elimination is unsound.  Two
tools are provided:

* :func:`howell_form` computes a canonical generating set of a row span
  (pivots are powers of p, entries above a pivot are reduced, and the
  closure rows p^(K-v) * row are folded back in).  Span membership is a
  single reduction pass against it.
* :func:`smith_solve` solves A s = b by full-pivot elimination with
  unimodular column transforms, and also returns generators of the
  solution ambiguity.
"""

from dataclasses import dataclass

__all__ = ["valuation_p", "howell_form", "span_certificate", "in_span",
           "smith_solve", "SmithSolution"]


def valuation_p(a, p, K):
    """p-adic valuation of a residue mod p^K (K for zero)."""
    a %= p ** K
    if a == 0:
        return K
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def howell_form(rows, p, K):
    """Howell form of the row span of ``rows`` over Z/p^K.

    Returns (H, C): H is the list of Howell rows and C[i] the coefficients
    expressing H[i] in terms of the input rows.
    """
    N = p ** K
    g = len(rows)
    n = len(rows[0]) if rows else 0
    work = [([x % N for x in r], [int(i == j) for j in range(g)]) for i, r in enumerate(rows)]
    out = []
    for col in range(n):
        best = None
        for idx, (r, _) in enumerate(work):
            if r[col] % N:
                v = valuation_p(r[col], p, K)
                if best is None or v < best[0]:
                    best = (v, idx)
        if best is None:
            continue
        v, idx = best
        r, c = work.pop(idx)
        u = pow(r[col] // p ** v, -1, N)
        r = [x * u % N for x in r]
        c = [x * u % N for x in c]
        pv = p ** v
        new = []
        for r2, c2 in work:
            f = r2[col] // pv
            if f:
                r2 = [(a - f * b) % N for a, b in zip(r2, r)]
                c2 = [(a - f * b) % N for a, b in zip(c2, c)]
            new.append((r2, c2))
        if v:
            s = p ** (K - v)
            new.append(([x * s % N for x in r], [x * s % N for x in c]))
        work = [(r2, c2) for r2, c2 in new if any(r2)]
        # reduce rows already placed above this pivot
        for i, (r0, c0, col0, v0) in enumerate(out):
            f = r0[col] // pv
            if f:
                r0 = [(a - f * b) % N for a, b in zip(r0, r)]
                c0 = [(a - f * b) % N for a, b in zip(c0, c)]
                out[i] = (r0, c0, col0, v0)
        out.append((r, c, col, v))
    return [o[0] for o in out], [o[1] for o in out]


def span_certificate(target, generators, p, K):
    """Coefficients c with sum c_i g_i == target (mod p^K), or None."""
    N = p ** K
    H, C = howell_form(generators, p, K)
    t = [x % N for x in target]
    coef = [0] * len(generators)
    for h, c in zip(H, C):
        col = next(j for j, x in enumerate(h) if x)
        pv = h[col]
        if t[col] % pv:
            return None
        f = t[col] // pv
        t = [(a - f * b) % N for a, b in zip(t, h)]
        coef = [(a + f * b) % N for a, b in zip(coef, c)]
    if any(t):
        return None
    # re-expand as a self-check
    back = [sum(ci * g[j] for ci, g in zip(coef, generators)) % N for j in range(len(target))]
    assert back == [x % N for x in target]
    return coef


def in_span(target, generators, p, K):
    return span_certificate(target, generators, p, K) is not None


@dataclass
class SmithSolution:
    s: list            # one solution, residues mod p^K
    generators: list   # the solution set is s + span(generators)
    valuations: list   # pivot valuations
    rank: int


def smith_solve(A, b, p, K):
    """Solve A s = b over Z/p^K.  Returns a SmithSolution or None."""
    M = p ** K
    A = [[x % M for x in r] for r in A]
    b = [x % M for x in b]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]
    vals = []
    i = 0
    while i < min(nr, nc):
        best = None
        for r in range(i, nr):
            row = A[r]
            for c in range(i, nc):
                if row[c]:
                    vv = valuation_p(row[c], p, K)
                    if best is None or vv < best[0]:
                        best = (vv, r, c)
                        if vv == 0:
                            break
            if best and best[0] == 0:
                break
        if best is None:
            break
        v, r, c = best
        A[i], A[r] = A[r], A[i]
        b[i], b[r] = b[r], b[i]
        if c != i:
            for row in A:
                row[i], row[c] = row[c], row[i]
            for row in V:
                row[i], row[c] = row[c], row[i]
        pv = p ** v
        u = pow(A[i][i] // pv, -1, M)
        A[i] = [x * u % M for x in A[i]]
        b[i] = b[i] * u % M
        piv = A[i]
        for r2 in range(nr):
            if r2 != i and A[r2][i]:
                f = A[r2][i] // pv
                A[r2] = [(x - f * y) % M for x, y in zip(A[r2], piv)]
                b[r2] = (b[r2] - f * b[i]) % M
        for c2 in range(i + 1, nc):
            if piv[c2]:
                f = piv[c2] // pv
                for row in A:
                    row[c2] = (row[c2] - f * row[i]) % M
                for row in V:
                    row[c2] = (row[c2] - f * row[i]) % M
        vals.append(v)
        i += 1
    rank = i
    if any(b[r] % M for r in range(rank, nr)):
        return None
    t = [0] * nc
    gens = []
    for j in range(rank):
        pv = p ** vals[j]
        if b[j] % pv:
            return None
        t[j] = (b[j] // pv) % M
        if vals[j]:
            gens.append([V[r][j] * p ** (K - vals[j]) % M for r in range(nc)])
    for j in range(rank, nc):
        gens.append([V[r][j] % M for r in range(nc)])
    s = [sum(V[r][j] * t[j] for j in range(nc)) % M for r in range(nc)]
    return SmithSolution(s, gens, vals, rank)
