"""The localized ring (1+7x)^(-nu) (Z[x] + y Z[x]) and representations in it.

An element is stored by its raw coefficients c_beta(m), the coefficient of
y^beta x^m in the numerator.  With a parity attached, the profile
normalized values are s_beta(m) = c_beta(m) / 7^theta(parity, beta, m).

:func:`represent` is the inverse problem.  Multiply f by z^nu and expand
the product in powers of x (x = q + O(q^2), so this is a triangular
change of variables).  Writing y = e(x) as an x-adic series, the
numerator P + yQ must satisfy

    F_x = P + e * Q,

and since deg P <= D, the x-adic coefficients of degree D+1 .. 2D+1 give
a square Toeplitz system for Q alone.  The solution is checked against
every remaining known coefficient.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint

from . import _kernel
from .errors import (NoRepresentation, NonIntegralEvaluation,
                     UnderdeterminedInput)
from .eta import named
from .profiles import theta
from .qseries import QSeries
from .zmod import smith_solve

__all__ = [
    "XYElement", "SVector", "TRACKED_SLOTS", "represent", "evaluate",
    "membership_report", "s_vector", "valuation7", "x_adic", "basis",
    "represent_mod", "TruncatedRepresentation", "z_power",
]

# the nine tracked slots, in order: s0(1..5), s1(0..3)
TRACKED_SLOTS = ((0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 0), (1, 1), (1, 2), (1, 3))

DEFAULT_GUARD = 25


def valuation7(v):
    """7-adic valuation of an exact rational (None for zero)."""
    if v == 0:
        return None
    v = Fraction(v)
    n, d = v.numerator, v.denominator
    k = 0
    while n % 7 == 0:
        n //= 7
        k += 1
    while d % 7 == 0:
        d //= 7
        k -= 1
    return k


def _lcm(a, b):
    return a // gcd(a, b) * b


def _frac_str(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else "%d/%d" % (v.numerator, v.denominator)


def _parse_frac(s):
    return Fraction(s)


@dataclass(frozen=True)
class XYElement:
    """(1+7x)^(-nu) * sum c_beta(m) y^beta x^m."""

    nu: int
    coeffs: dict = field(default_factory=dict)
    parity: object = None

    def __post_init__(self):
        clean = {}
        for (b, m), v in self.coeffs.items():
            if b not in (0, 1) or m < 0:
                raise ValueError("bad slot %r" % ((b, m),))
            v = Fraction(v)
            if v:
                clean[(b, m)] = v.numerator if v.denominator == 1 else v
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_s(cls, nu, parity, s):
        """Build from profile-normalized values s_beta(m)."""
        c = {}
        for (b, m), v in s.items():
            c[(b, m)] = Fraction(v) * Fraction(7) ** theta(parity, b, m)
        return cls(nu, c, parity)

    def theta(self, b, m):
        return theta(self.parity, b, m)

    @property
    def s(self):
        if self.parity is None:
            raise ValueError("element has no parity; s is undefined")
        out = {}
        for (b, m), v in self.coeffs.items():
            if m < 1 - b:
                raise ValueError("constant term present; not in the profile basis")
            w = Fraction(v) / Fraction(7) ** theta(self.parity, b, m)
            out[(b, m)] = w.numerator if w.denominator == 1 else w
        return out

    def maxdeg(self):
        return max((m for _, m in self.coeffs), default=0)

    def is_zero(self):
        return not self.coeffs

    def scaled(self, c):
        return XYElement(self.nu, {k: v * c for k, v in self.coeffs.items()}, self.parity)

    def to_json(self):
        terms = []
        for (b, m) in sorted(self.coeffs):
            v = self.coeffs[(b, m)]
            if self.parity is not None and m >= 1 - b:
                th = theta(self.parity, b, m)
                sv = Fraction(v) / Fraction(7) ** th
                terms.append({"beta": b, "m": m, "s": _frac_str(sv), "theta": th})
            else:
                terms.append({"beta": b, "m": m, "s": _frac_str(v), "theta": 0})
        return {"nu": self.nu, "parity": self.parity, "terms": terms}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        c = {}
        for t in obj["terms"]:
            c[(t["beta"], t["m"])] = _parse_frac(t["s"]) * Fraction(7) ** t["theta"]
        return cls(obj["nu"], c, obj.get("parity"))


@dataclass(frozen=True)
class SVector:
    """The nine tracked residues mod 49."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) % 49 for v in self.values)
        if len(vals) != 9:
            raise ValueError("an s-vector has nine entries")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return 9


def _mod49(v):
    v = Fraction(v)
    if v.denominator % 7 == 0:
        raise ValueError("value %s is not 7-integral" % v)
    return v.numerator * pow(v.denominator, -1, 49) % 49


def s_vector(e):
    """Tracked residues (s0(1),...,s0(5),s1(0),...,s1(3)) mod 49."""
    if e.is_zero():
        return SVector((0,) * 9)
    s = e.s
    return SVector(tuple(_mod49(s.get(slot, 0)) for slot in TRACKED_SLOTS))


# ---------------------------------------------------------------------------
# basis data

class _Basis:
    """x powers and y in x-adic form, to length T, optionally mod M."""

    def __init__(self, T, modulus=None):
        self.T = T
        self.modulus = modulus
        self.x = list(named("x", T, modulus=modulus).coeffs)
        xp = [[1] + [0] * (T - 1)]
        for _ in range(1, T):
            xp.append(_kernel.mul(xp[-1], self.x, T, modulus))
        self.xpow = xp
        y = list(named("y", T, modulus=modulus).coeffs)
        self.e = self.x_adic(y)

    def x_adic(self, F):
        """Coefficients of F written as a power series in x."""
        M = self.modulus
        T = self.T
        F = list(F[:T]) + [0] * (T - len(F[:T]))
        out = [0] * T
        xp = self.xpow
        for k in range(T):
            c = F[k] if M is None else F[k] % M
            if c:
                out[k] = c
                row = xp[k]
                if M is None:
                    for j in range(k + 1, T):
                        if row[j]:
                            F[j] -= c * row[j]
                else:
                    for j in range(k + 1, T):
                        if row[j]:
                            F[j] = (F[j] - c * row[j]) % M
        return out


_BASES = {}


def basis(T, modulus=None):
    """Shared basis data of length at least T (cached)."""
    for (t, m), b in _BASES.items():
        if m == modulus and t >= T:
            return b if t == T else _Sliced(b, T)
    b = _Basis(T, modulus)
    _BASES[(T, modulus)] = b
    return b


class _Sliced:
    def __init__(self, b, T):
        self.T = T
        self.modulus = b.modulus
        self.x = b.x[:T]
        self.xpow = b.xpow  # rows may be longer than T; loops stop at T
        self.e = b.e[:T]

    x_adic = _Basis.x_adic


def x_adic(f, T=None):
    """x-adic coefficients of an integer series (length T)."""
    T = f.trunc if T is None else T
    return basis(T, f.modulus).x_adic(list(f.coeffs))


_ZPOW = {}


def z_power(nu, N, modulus=None):
    """(1+7x)^nu = z^nu to order N, nu any integer (cached)."""
    key = (nu, modulus)
    hit = _ZPOW.get(key)
    if hit is not None and hit.trunc >= N:
        return hit.truncate(N)
    z = named("z", N, modulus=modulus)
    f = QSeries(_kernel.power(list(z.coeffs), nu, N, modulus), modulus=modulus)
    _ZPOW[key] = f
    return f


# ---------------------------------------------------------------------------
# exact representation

@lru_cache(maxsize=16)
def _toeplitz_inverse(D, T):
    e = basis(T).e
    rows = [[e[k - m] if k >= m else 0 for m in range(D + 1)] for k in range(D + 1, 2 * D + 2)]
    mat = flint.fmpq_mat(flint.fmpz_mat(rows))
    return mat.inv()


def _solve_y_part(Fx, D, T):
    e = basis(T).e
    rhs = flint.fmpq_mat(D + 1, 1, [Fx[k] for k in range(D + 1, 2 * D + 2)])
    try:
        sol = _toeplitz_inverse(D, 2 * D + 2) * rhs
        return [Fraction(int(sol[i, 0].p), int(sol[i, 0].q)) for i in range(D + 1)]
    except ZeroDivisionError:
        pass
    # singular leading block: reduce the full overdetermined system
    rows = [[e[k - m] if k >= m else 0 for m in range(D + 1)] + [Fx[k]]
            for k in range(D + 1, T)]
    R, rank = flint.fmpq_mat(flint.fmpz_mat(rows)).rref()
    if rank < D + 1:
        raise UnderdeterminedInput("y-part is not determined by %d coefficients" % T)
    out = []
    for i in range(D + 1):
        v = R[i, D + 1]
        out.append(Fraction(int(v.p), int(v.q)))
    return out


def _integer_parts(f):
    d = 1
    for v in f.coeffs:
        if isinstance(v, Fraction):
            d = _lcm(d, v.denominator)
    return [int(v * d) for v in f.coeffs], d


def represent(f, nu, maxdeg=None, guard=DEFAULT_GUARD, parity=None):
    """Exact representation of f as (1+7x)^(-nu) (P(x) + y Q(x)).

    Needs f to order at least 2*maxdeg + 2 + guard.  Every coefficient of
    F = z^nu f below the truncation is matched, so the result is exact
    whenever it is returned.
    """
    T = f.trunc
    if maxdeg is None:
        maxdeg = (T - 2 - guard) // 2
    D = maxdeg
    if D < 0 or T < 2 * D + 2 + guard:
        raise UnderdeterminedInput("need %d coefficients for maxdeg %d with guard %d, have %d"
                                   % (2 * D + 2 + guard, D, guard, T))
    num, den = _integer_parts(f)
    F = _kernel.mul(num, list(z_power(nu, T).coeffs), T)
    Fx = basis(T).x_adic(F)
    b = _solve_y_part(Fx, D, T)
    L = 1
    for v in b:
        L = _lcm(L, v.denominator)
    bi = [int(v * L) for v in b]
    eb = _kernel.mul(basis(T).e, bi, T)
    for k in range(D + 1, T):
        if eb[k] != L * Fx[k]:
            raise NoRepresentation("residual at x^%d (nu=%d, maxdeg=%d)" % (k, nu, D))
    coeffs = {}
    for k in range(D + 1):
        a = Fraction(L * Fx[k] - eb[k], L * den)
        if a:
            coeffs[(0, k)] = a
        if b[k]:
            coeffs[(1, k)] = b[k] / den
    return XYElement(nu, coeffs, parity)


def evaluate(e, N, allow_rational=False):
    """q-expansion of an element to order N."""
    if e.is_zero():
        return QSeries((), trunc=N)
    D = e.maxdeg()
    den = 1
    for v in e.coeffs.values():
        v = Fraction(v)
        den = _lcm(den, v.denominator)
    x = list(named("x", N).coeffs)
    cols = {0: [0] * (D + 1), 1: [0] * (D + 1)}
    for (b, m), v in e.coeffs.items():
        cols[b][m] = int(Fraction(v) * den)

    def horner(cs):
        acc = [0] * N
        for c in reversed(cs):
            acc = _kernel.mul(acc, x, N)
            acc[0] += c
        return acc

    P = horner(cols[0])
    Q = horner(cols[1])
    y = list(named("y", N).coeffs)
    num = [p + w for p, w in zip(P, _kernel.mul(Q, y, N))]
    num = _kernel.mul(num, list(z_power(-e.nu, N).coeffs), N)
    if den != 1:
        bad = [v for v in num if v % den]
        if bad:
            if not allow_rational:
                raise NonIntegralEvaluation("evaluation has denominator dividing %d" % den)
            return QSeries([Fraction(v, den) for v in num])
        num = [v // den for v in num]
    return QSeries(num)


def membership_report(e, parity):
    """(member, deficits): deficits lists slots whose valuation is below theta."""
    deficits = []
    for (b, m), v in sorted(e.coeffs.items()):
        if m < 1 - b:
            deficits.append({"beta": b, "m": m, "valuation": valuation7(v),
                             "theta": None, "gap": None, "reason": "constant term"})
            continue
        th = theta(parity, b, m)
        val = valuation7(v)
        if val < th:
            deficits.append({"beta": b, "m": m, "valuation": val, "theta": th, "gap": th - val})
    return (not deficits), deficits


# ---------------------------------------------------------------------------
# representation modulo a power of 7

@dataclass
class TruncatedRepresentation:
    """Profile values s known modulo 7^(K - theta - weight) per slot."""

    nu: int
    parity: int
    weight: int
    K: int
    slots: list
    s: dict
    ambiguity: list

    def precision(self, slot):
        """Largest j such that s[slot] is pinned down mod 7^j."""
        b, m = slot
        j = self.K - theta(self.parity, b, m) - self.weight
        idx = self.slots.index(slot)
        for g in self.ambiguity:
            v = g[idx] % 7 ** self.K
            if v:
                k = 0
                while v % 7 == 0:
                    v //= 7
                    k += 1
                j = min(j, k)
        return j

    def s_vector(self):
        for slot in TRACKED_SLOTS:
            if self.precision(slot) < 2:
                raise UnderdeterminedInput("slot %r is not determined mod 49" % (slot,))
        return SVector(tuple(self.s[slot] % 49 for slot in TRACKED_SLOTS))


def represent_mod(F, parity, K, weight=0, nu=None):
    """Solve z^nu f == 7^weight sum s 7^theta y^b x^m (mod 7^K).

    ``F`` is the series z^nu f, reduced mod 7^K (or exact).  Slots whose
    weight theta + weight reaches K contribute nothing mod 7^K and are
    left out.  Returns a :class:`TruncatedRepresentation`, or raises
    NoRepresentation when the congruence system is inconsistent.
    """
    M = 7 ** K
    T = F.trunc
    B = basis(T, M)
    Fx = B.x_adic([v % M for v in F.coeffs])
    slots = []
    for b in (0, 1):
        for m in range(1 - b, T):
            w = theta(parity, b, m) + weight
            if w < 0:
                raise ValueError("slot (%d,%d) has negative weight %d" % (b, m, w))
            if w < K:
                slots.append((b, m))
    A = []
    for k in range(T):
        row = []
        for (b, m) in slots:
            w = 7 ** (theta(parity, b, m) + weight)
            if b == 0:
                row.append(w if m == k else 0)
            else:
                row.append(w * B.e[k - m] % M if k >= m else 0)
        A.append(row)
    sol = smith_solve(A, Fx, 7, K)
    if sol is None:
        raise NoRepresentation("no solution mod 7^%d" % K)
    s = {slot: v for slot, v in zip(slots, sol.s)}
    return TruncatedRepresentation(nu, parity, weight, K, slots, s, sol.generators)
