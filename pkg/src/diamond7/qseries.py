"""Exact truncated power series in q.

A :class:`QSeries` stores the coefficients of ``q^0 .. q^(N-1)`` densely
together with the truncation order ``N``.  Coefficients at exponents
``>= N`` are *unknown*, not zero, and every operation reports the
largest truncation its inputs actually justify.

Coefficients are Python ints, or :class:`fractions.Fraction` when a
series has a genuine denominator.  A series may also carry a modulus, in
which case its coefficients are residues in ``[0, modulus)``.

>>> f = euler_factor(1, 1, 6)
>>> f.coeffs
(1, -1, -1, 0, 0, 1)
>>> u_operator(QSeries({14: 1, 8: -3, 3: 5}, 15), 7).coeffs
(0, 0, 1)
"""

from fractions import Fraction
from math import gcd, inf

from . import _kernel
from .errors import NonUnitConstantTerm, RationalCoefficients

__all__ = [
    "QSeries", "euler_factor", "mul", "linear_combine", "invert", "dilate",
    "u_operator", "reduce_mod", "is_divisible", "valuation", "monomial",
    "power",
]


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _lcm(a, b):
    return a // gcd(a, b) * b


class QSeries:
    """Immutable truncated series ``sum c_k q^k + O(q^trunc)``."""

    __slots__ = ("_c", "_modulus")

    def __init__(self, coeffs=(), trunc=None, modulus=None):
        if isinstance(coeffs, dict):
            if trunc is None:
                raise ValueError("sparse input needs an explicit trunc")
            c = [0] * trunc
            for k, v in coeffs.items():
                if k < 0:
                    raise ValueError("negative exponent %d" % k)
                if k < trunc:
                    c[k] += v
        else:
            c = list(coeffs)
            if trunc is not None:
                c = (c + [0] * (trunc - len(c)))[:trunc]
        if modulus is not None:
            if modulus < 2:
                raise ValueError("modulus must be at least 2")
            if any(isinstance(v, Fraction) and v.denominator != 1 for v in c):
                raise RationalCoefficients("cannot reduce a rational series")
            c = [int(v) % modulus for v in c]
        else:
            c = [_norm(v) for v in c]
        self._c = tuple(c)
        self._modulus = modulus

    # basic data -------------------------------------------------------
    @property
    def coeffs(self):
        return self._c

    @property
    def trunc(self):
        return len(self._c)

    @property
    def modulus(self):
        return self._modulus

    def is_integral(self):
        return not any(isinstance(v, Fraction) for v in self._c)

    def denominator(self):
        d = 1
        for v in self._c:
            if isinstance(v, Fraction):
                d = _lcm(d, v.denominator)
        return d

    def __getitem__(self, k):
        if isinstance(k, slice):
            return self._c[k]
        if k < 0:
            raise IndexError("negative exponent")
        if k >= len(self._c):
            raise IndexError("coefficient %d is beyond the truncation %d" % (k, len(self._c)))
        return self._c[k]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def to_dict(self):
        return {k: v for k, v in enumerate(self._c) if v}

    def valuation(self):
        return valuation(self)

    def truncate(self, N):
        if N > self.trunc:
            raise ValueError("cannot extend a truncation from %d to %d" % (self.trunc, N))
        return QSeries(self._c[:N], modulus=self._modulus)

    def shift(self, k):
        """Multiply by q^k (k >= 0)."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        return QSeries((0,) * k + self._c, modulus=self._modulus)

    # arithmetic -------------------------------------------------------
    def _common_mod(self, other):
        a, b = self._modulus, getattr(other, "_modulus", None)
        if a is None:
            return b
        if b is None:
            return a
        return gcd(a, b)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries([other], trunc=self.trunc)
        return linear_combine([(1, self), (1, other)])

    __radd__ = __add__

    def __neg__(self):
        return linear_combine([(-1, self)])

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries([other], trunc=self.trunc)
        return linear_combine([(1, self), (-1, other)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        return linear_combine([(other, self)])

    __rmul__ = __mul__

    def __pow__(self, e):
        return power(self, e)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._c == other._c and self._modulus == other._modulus

    def __hash__(self):
        return hash((self._c, self._modulus))

    def __repr__(self):
        terms = []
        for k, v in enumerate(self._c):
            if v and len(terms) < 8:
                terms.append("%s*q^%d" % (v, k) if k else str(v))
        body = " + ".join(terms) if terms else "0"
        tail = " + O(q^%d)" % self.trunc
        mod = "" if self._modulus is None else " (mod %d)" % self._modulus
        return "QSeries(%s%s%s)" % (body, tail, mod)


def monomial(k, N, coeff=1):
    """coeff * q^k + O(q^N)."""
    return QSeries({k: coeff}, N)


def valuation(f):
    """Least exponent with a nonzero coefficient, or ``math.inf``."""
    for k, v in enumerate(f.coeffs):
        if v:
            return k
    return inf


def _int_parts(f):
    d = f.denominator()
    if d == 1:
        return list(f.coeffs), 1
    return [int(v * d) for v in f.coeffs], d


def mul(f, g):
    """Exact product; truncation min(N1 + v2, N2 + v1)."""
    v1 = valuation(f)
    v2 = valuation(g)
    n1, n2 = f.trunc, g.trunc
    v1 = n1 if v1 is inf else v1
    v2 = n2 if v2 is inf else v2
    N = min(n1 + v2, n2 + v1)
    mod = f._common_mod(g)
    a, da = _int_parts(f)
    b, db = _int_parts(g)
    # shift out valuations so the kernel sees short operands
    a = a[v1:]
    b = b[v2:]
    width = N - v1 - v2
    if width <= 0:
        return QSeries((), trunc=N, modulus=mod)
    prod = _kernel.mul(a, b, width, mod)
    coeffs = [0] * (v1 + v2) + prod
    den = da * db
    if den != 1:
        coeffs = [Fraction(c, den) for c in coeffs]
    return QSeries(coeffs, trunc=N, modulus=mod)


def linear_combine(terms):
    """Sum of scalar * series; truncation is the minimum over the inputs."""
    terms = list(terms)
    if not terms:
        raise ValueError("linear_combine needs at least one term")
    N = min(s.trunc for _, s in terms)
    mod = None
    for _, s in terms:
        if s.modulus is not None:
            mod = s.modulus if mod is None else gcd(mod, s.modulus)
    out = [0] * N
    for c, s in terms:
        if c == 0:
            continue
        sc = s.coeffs
        for k in range(N):
            v = sc[k]
            if v:
                out[k] += c * v
    return QSeries(out, trunc=N, modulus=mod)


def power(f, e):
    """f**e; negative powers need a unit constant term."""
    if e < 0:
        return power(invert(f), -e)
    if e == 0:
        return QSeries([1], trunc=f.trunc, modulus=f.modulus)
    v = valuation(f)
    if v is inf or v > 0 or not f.is_integral():
        result = QSeries([1], trunc=f.trunc, modulus=f.modulus)
        base = f
        while e:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return result
    return QSeries(_kernel.power(list(f.coeffs), e, f.trunc, f.modulus),
                   modulus=f.modulus)


def invert(f):
    """Multiplicative inverse to the same truncation."""
    N = f.trunc
    if N == 0:
        return f
    c0 = f.coeffs[0]
    if f.modulus is not None:
        if gcd(c0, f.modulus) != 1:
            raise NonUnitConstantTerm("constant term %d is not a unit mod %d" % (c0, f.modulus))
        return QSeries(_kernel.inverse(list(f.coeffs), N, f.modulus), modulus=f.modulus)
    if f.is_integral():
        if c0 not in (1, -1):
            raise NonUnitConstantTerm("constant term %s is not a unit in Z" % c0)
        return QSeries(_kernel.inverse(list(f.coeffs), N), modulus=None)
    if c0 == 0:
        raise NonUnitConstantTerm("constant term is zero")
    # rational coefficients: plain recurrence over Q
    c = f.coeffs
    g = [Fraction(1) / c0]
    for n in range(1, N):
        s = sum(c[k] * g[n - k] for k in range(1, n + 1) if c[k])
        g.append(-s / c0)
    return QSeries(g)


def euler_factor(a, e, N, modulus=None):
    """(q^a; q^a)_inf ** e to order N.

    The pentagonal expansion of (q;q)_inf is raised to the power e and
    then dilated by a.  Exact powers use the Miller recurrence, which is
    cheap because the pentagonal series is sparse; modular powers use a
    Newton reciprocal and binary powering, since the recurrence divides.
    """
    if a < 1 or N < 1:
        raise ValueError("need a >= 1 and N >= 1")
    return QSeries(_kernel.euler_power(a, e, N, modulus), modulus=modulus)


def dilate(f, m):
    """q -> q^m; truncation becomes m*N."""
    if m < 1:
        raise ValueError("dilation factor must be positive")
    if m == 1:
        return f
    out = [0] * (m * f.trunc)
    out[::m] = f.coeffs
    return QSeries(out, modulus=f.modulus)


def u_operator(f, ell):
    """U_ell: sum a(ell*m) q^m, truncation ceil(N/ell)."""
    if ell < 1:
        raise ValueError("ell must be positive")
    return QSeries(f.coeffs[::ell], modulus=f.modulus)


def reduce_mod(f, M):
    if not f.is_integral():
        raise RationalCoefficients("reduce_mod needs integer coefficients")
    return QSeries(f.coeffs, modulus=M)


def is_divisible(f, M):
    if not f.is_integral():
        raise RationalCoefficients("is_divisible needs integer coefficients")
    return all(v % M == 0 for v in f.coeffs)
