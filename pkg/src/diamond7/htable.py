"""U-images of basis monomials: the arrays h^(a)_{beta gamma}(m, n, r).

For parity a, kappa = 0 (a = 1) or 3 (a = 0), and

    U^(a)( y^b x^m / (1+7x)^n ) = (1+7x)^-(7n+kappa)
        * sum_{gamma, r} h(b, gamma, m, n, r) 7^pi(b, gamma, m, r) y^gamma x^r.

Rather than represent every cell as its own q-series, each cell is
reduced to the fundamental images

    G_k = z^(kappa + 7 max(0, -k)) U^(a)(y^b z^k),

which are represented once.  Since x = (z - 1)/7,

    z^(7n+kappa) U(y^b x^m z^-n)
        = 7^-m sum_j C(m,j) (-1)^(m-j) z^(7 min(n,j)) G_(j-n),

an exact polynomial identity in x (z = 1 + 7x).
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import _kernel
from .errors import NonIntegralH, NoRepresentation
from .eta import SPECS, EtaQuotientSpec, eta_series, named
from .localized import DEFAULT_GUARD, represent, z_power
from .modeq import binom_poly
from .profiles import pi
from .qseries import QSeries, dilate, linear_combine, mul, power, u_operator

__all__ = ["KAPPA", "FundamentalImages", "fundamental_images", "cell_raw",
           "HTable", "add_cell", "compute_h_table", "direct_cell", "CONGRUENCE_RANGES",
           "verify_h_congruences", "fundamental_recurrence_residual", "standard_tables",
           "principal_part_check"]

KAPPA = {1: 0, 0: 3}


def _nu(parity, k):
    return KAPPA[parity] + 7 * max(0, -k)


def _degree_guess(parity, beta, k):
    return _nu(parity, k) + 7 * max(0, k) + 12


class FundamentalImages:
    """Cache of the represented images G_k for one parity."""

    def __init__(self, parity, guard=DEFAULT_GUARD):
        self.parity = parity
        self.guard = guard
        self._G = {}
        self._q = {}

    def _source(self, beta, k, N):
        """y^beta z^k (times A for parity 0) to order N."""
        f = z_power(k, N)
        if beta:
            f = mul(f, named("y", N))
        if self.parity == 0:
            f = mul(f, named("A", N))
        return f

    def G(self, beta, k):
        key = (beta, k)
        if key in self._G:
            return self._G[key]
        D = _degree_guess(self.parity, beta, k)
        while True:
            T = 2 * D + 2 + self.guard
            image = u_operator(self._source(beta, k, 7 * T), 7).truncate(T)
            try:
                rep = represent(image, _nu(self.parity, k), D, self.guard)
                break
            except NoRepresentation:
                D += 24
        P = [0] * (D + 1)
        Q = [0] * (D + 1)
        for (b, m), v in rep.coeffs.items():
            (Q if b else P)[m] = Fraction(v)
        self._G[key] = (_trim(P), _trim(Q))
        return self._G[key]

    def precompute(self, betas, ks):
        for b in betas:
            for k in ks:
                self.G(b, k)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


_IMAGES = {}


def fundamental_images(parity):
    if parity not in _IMAGES:
        _IMAGES[parity] = FundamentalImages(parity)
    return _IMAGES[parity]


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def cell_raw(parity, beta, m, n):
    """Raw numerator coefficients {(gamma, r): value} of
    z^(7n+kappa) U^(parity)(y^beta x^m z^-n)."""
    FI = fundamental_images(parity)
    acc = {0: [], 1: []}
    for j in range(m + 1):
        c = comb(m, j) * (-1) ** (m - j)
        P, Q = FI.G(beta, j - n)
        zp = binom_poly(7, 7 * min(n, j))
        for g, poly in ((0, P), (1, Q)):
            t = _pmul(poly, zp)
            a = acc[g]
            if len(a) < len(t):
                a.extend([0] * (len(t) - len(a)))
            for i, v in enumerate(t):
                if v:
                    a[i] += c * v
    den = 7 ** m
    out = {}
    for g in (0, 1):
        for r, v in enumerate(acc[g]):
            if v:
                out[(g, r)] = Fraction(v) / den
    return out


def _nu_exact(raw):
    # numerator not divisible by z = 1 + 7x, i.e. not both parts vanish at x = -1/7
    val = {0: Fraction(0), 1: Fraction(0)}
    for (g, r), v in raw.items():
        val[g] += v * Fraction(-1, 7) ** r
    return val[0] != 0 or val[1] != 0


@dataclass
class HTable:
    parity: int
    entries: dict = field(default_factory=dict)    # (b, g, m, n, r) -> int
    support: dict = field(default_factory=dict)    # (b, m, n) -> max r (or -1)
    nu_exact: dict = field(default_factory=dict)   # (b, m, n) -> bool
    m_max: int = 0
    n_max: int = 0

    def h(self, b, g, m, n, r):
        if (b, m, n) not in self.support:
            raise KeyError("cell (%d,%d,%d) not computed" % (b, m, n))
        return self.entries.get((b, g, m, n, r), 0)

    def cells(self):
        return sorted(self.support)

    def to_json(self):
        ent = [[b, g, m, n, r, str(v)] for (b, g, m, n, r), v in sorted(self.entries.items())]
        sup = [[b, m, n, s] for (b, m, n), s in sorted(self.support.items())]
        body = {"parity": self.parity, "m_max": self.m_max, "n_max": self.n_max,
                "entries": ent, "support": sup}
        digest = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
        body["sha256"] = digest
        return body

    @classmethod
    def from_json(cls, obj):
        body = dict(obj)
        digest = body.pop("sha256", None)
        if digest is not None:
            check = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
            if check != digest:
                raise ValueError("HTable content hash mismatch")
        t = cls(body["parity"], m_max=body["m_max"], n_max=body["n_max"])
        for b, g, m, n, r, v in body["entries"]:
            t.entries[(b, g, m, n, r)] = int(v)
        for b, m, n, s in body["support"]:
            t.support[(b, m, n)] = s
        return t

    def perturbed(self, key, delta):
        """Copy with the single entry ``key = (b, g, m, n, r)`` moved by delta."""
        ent = dict(self.entries)
        ent[key] = ent.get(key, 0) + delta
        return HTable(self.parity, ent, dict(self.support), dict(self.nu_exact),
                      self.m_max, self.n_max)


def add_cell(table, beta, m, n):
    raw = cell_raw(table.parity, beta, m, n)
    if raw.get((0, 0)):
        raise NonIntegralH("constant term in U-image of (%d,%d,%d)" % (beta, m, n))
    top = -1
    for (g, r), v in raw.items():
        w = Fraction(7) ** pi(table.parity, beta, g, m, r)
        h = v / w
        if h.denominator != 1:
            raise NonIntegralH("h(%d,%d,%d,%d,%d) = %s is not an integer"
                               % (beta, g, m, n, r, h))
        table.entries[(beta, g, m, n, r)] = h.numerator
        top = max(top, r)
    table.support[(beta, m, n)] = top
    table.nu_exact[(beta, m, n)] = _nu_exact(raw)


def compute_h_table(parity, m_max=14, n_max=14, n_min=1, extra_cells=()):
    """All cells beta in {0,1}, 1-beta <= m <= m_max, n_min <= n <= n_max."""
    t = HTable(parity, m_max=m_max, n_max=n_max)
    for beta in (0, 1):
        for n in range(n_min, n_max + 1):
            for m in range(1 - beta, m_max + 1):
                add_cell(t, beta, m, n)
    for beta, m, n in extra_cells:
        add_cell(t, beta, m, n)
    return t


def direct_cell(parity, beta, m, n, guard=DEFAULT_GUARD, maxdeg=None):
    """The same cell computed straight from q-series (independent check)."""
    kappa = KAPPA[parity]
    nu = 7 * n + kappa
    D = maxdeg if maxdeg is not None else nu + m + 20
    while True:
        T = 2 * D + 2 + guard
        N = 7 * T
        f = z_power(-n, N)
        if m:
            f = mul(f, QSeries(_kernel.power(list(named("x", N).coeffs), m, N)))
        if beta:
            f = mul(f, named("y", N))
        if parity == 0:
            f = mul(f, named("A", N))
        image = u_operator(f, 7).truncate(T)
        try:
            rep = represent(image, nu, D, guard)
            break
        except NoRepresentation:
            if maxdeg is not None:
                raise
            D += 24
    return {k: Fraction(v) for k, v in rep.coeffs.items()}


# ---------------------------------------------------------------------------
# congruences in n

# (parity, beta, gamma) -> list of (m range, r range) with the mod-49 n -> n+7 law
CONGRUENCE_RANGES = {
    (1, 0, 0): [(range(1, 5), range(1, 15)), (range(5, 6), range(1, 2))],
    (1, 0, 1): [(range(1, 5), range(1, 15))],
    (1, 1, 0): [(range(0, 3), range(1, 15)), (range(3, 4), range(1, 2))],
    (1, 1, 1): [(range(1, 15), range(1, 15))],
    (0, 0, 0): [(range(1, 15), range(1, 15))],
    (0, 0, 1): [(range(1, 15), range(1, 15))],
    (0, 1, 0): [(range(1, 15), range(1, 15))],
    (0, 1, 1): [(range(1, 15), range(1, 15))],
}


def congruence_cases(parity):
    for (p, b, g), blocks in CONGRUENCE_RANGES.items():
        if p != parity:
            continue
        for ms, rs in blocks:
            for m in ms:
                for r in rs:
                    yield b, g, m, r


def verify_h_congruences(table, raise_on_failure=True):
    """h(m,n,r) == h(m,n+7,r) mod 49 for 1 <= n <= 7, and
    h(m,n,r) == h(m,n+1,r) mod 7 for 1 <= n < n_max, on the listed ranges."""
    from .errors import CongruenceFailure
    failures = []
    checked49 = checked7 = 0
    n_max = table.n_max or max(n for (_, _, n) in table.support)
    m_max = table.m_max or max(m for (_, m, _) in table.support)
    for b, g, m, r in congruence_cases(table.parity):
        if m > m_max:   # smaller tables check the ranges they cover
            continue
        for n in range(1, 8):
            if n + 7 > n_max:
                break
            a, c = table.h(b, g, m, n, r), table.h(b, g, m, n + 7, r)
            checked49 += 1
            if (a - c) % 49:
                failures.append({"modulus": 49, "beta": b, "gamma": g, "m": m, "n": n, "r": r,
                                 "h_n": str(a), "h_n7": str(c)})
        for n in range(1, n_max):
            a, c = table.h(b, g, m, n, r), table.h(b, g, m, n + 1, r)
            checked7 += 1
            if (a - c) % 7:
                failures.append({"modulus": 7, "beta": b, "gamma": g, "m": m, "n": n, "r": r,
                                 "h_n": str(a), "h_n1": str(c)})
    if failures and raise_on_failure:
        raise CongruenceFailure("%d congruence failures" % len(failures), failures[0])
    return {"parity": table.parity, "checked_mod49": checked49, "checked_mod7": checked7,
            "failures": failures, "passed": not failures}


def fundamental_recurrence_residual(parity, beta, n, data=None):
    """Check U(y^b z^n) = -sum_{k<14} b_k(z) U(y^b z^(k+n-14)) on the
    represented images; returns True when the polynomial identity holds."""
    from .modeq import load_modular_equation_data, poly_compose_linear
    data = data or load_modular_equation_data()
    FI = fundamental_images(parity)
    ks = [n] + [k + n - 14 for k in range(14)]
    V = max(_nu(parity, k) for k in ks)
    total = {0: [], 1: []}

    def add(poly_pair, scale_poly, extra):
        zp = binom_poly(7, extra)
        for g, poly in zip((0, 1), poly_pair):
            t = _pmul(_pmul(poly, zp), scale_poly)
            acc = total[g]
            if len(acc) < len(t):
                acc.extend([0] * (len(t) - len(acc)))
            for i, v in enumerate(t):
                acc[i] += v

    add(FI.G(beta, n), [1], V - _nu(parity, n))
    for k in range(14):
        kk = k + n - 14
        bk = poly_compose_linear(list(data.b[k]), 1, 7)
        add(FI.G(beta, kk), bk, V - _nu(parity, kk))
    return all(v == 0 for v in total[0]) and all(v == 0 for v in total[1])


_STANDARD = {}


def standard_tables(m_max=14, n_max=14):
    """(H1, H0) on the default grid; H0 also carries the n = 21 cells used
    by the successor composition.  Cached per process."""
    key = (m_max, n_max)
    if key not in _STANDARD:
        h1 = compute_h_table(1, m_max, n_max)
        extra = [(g, r, 21) for g in (0, 1) for r in range(1 - g, 8)]
        h0 = compute_h_table(0, m_max, n_max, extra_cells=extra)
        _STANDARD[key] = (h1, h0)
    return _STANDARD[key]


def _poly_in_x(coeffs, x, N):
    acc = QSeries([0], trunc=N)
    for c in reversed(coeffs):
        acc = linear_combine([(1, mul(acc, x)), (c, QSeries([1], trunc=N))])
    return acc


def principal_part_check(parity, beta, k, depth=30):
    """Compare U_7(m(7 tau)^e S) with m^e f as Laurent series in q.

    S = A^(1-parity) y^beta z^k and f is the represented image of S.  For
    k < 0, e = 45; for 0 <= k <= 7, e = 74 and both sides carry the extra
    factor z^-71 (z(7 tau)^-71 inside U).  m has a pole of order 4 at
    infinity, so both sides start at q^(-4e); the principal part, the
    constant and ``depth`` further coefficients are compared.  This
    checks the expansions only; the cusp bookkeeping that turns such a
    comparison into a proof is not reproduced.
    """
    if not -6 <= k <= 7:
        raise ValueError("k must lie in -6..7")
    e, zs = (45, 0) if k < 0 else (74, -71)
    shift = -4 * e
    T = -shift + 1 + depth
    N = 7 * T
    Be = power(eta_series(EtaQuotientSpec(0, SPECS["m"].factors), T), e)
    inner = dilate(Be, 7)
    if zs:
        inner = mul(inner, dilate(z_power(zs, T), 7))
    src = fundamental_images(parity)._source(beta, k, N)
    lhs = u_operator(mul(inner, src), 7).truncate(T)
    P, Q = fundamental_images(parity).G(beta, k)
    x = named("x", T)
    f = linear_combine([(1, _poly_in_x(P, x, T)),
                        (1, mul(named("y", T), _poly_in_x(Q, x, T)))])
    f = mul(f, z_power(zs - _nu(parity, k), T))
    rhs = mul(Be, f).truncate(T)
    bad = next((i for i in range(T) if lhs.coeffs[i] != rhs.coeffs[i]), None)
    return {"parity": parity, "beta": beta, "k": k, "multiplier_power": e,
            "pole_order": -shift, "compared": T, "first_mismatch":
            None if bad is None else bad + shift, "passed": bad is None}
