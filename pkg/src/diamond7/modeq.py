"""The degree-14 modular equations for z and x, and the polynomial data
derived from them.

The relation for z reads

    sum_{k=0}^{14} b_k(z(7 tau)) z^k = 0,       b_14 = 1,

and substituting z = 1 + 7x (in both places) and dividing by 7^14 gives
the monic relation in x with coefficients a_j(x(7 tau)).  The shipped
coefficient table is checksummed at load time.
"""

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from math import comb
from pathlib import Path

from .errors import ChecksumMismatch, DataShapeFailure, IdentityFailure
from .eta import named
from .qseries import QSeries, dilate, linear_combine, mul

__all__ = [
    "ModularEquationData", "load_modular_equation_data", "APPENDIX_SHA256",
    "verify_modeq_z", "verify_modeq_x", "verify_substitution",
    "verify_recurrence_data", "poly_mul", "poly_compose_linear", "phi",
    "w_poly", "w_hat_poly",
]

APPENDIX_SHA256 = "94f5de688db2cada84b56926095eecb503c6134c0a8743879c2a6916d061daa1"

DEFAULT_IDENTITY_BOUND = 2000


# small exact polynomial helpers (coefficient lists, lowest degree first)

def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def binom_poly(c, n):
    """(1 + c x)^n for n >= 0."""
    return [comb(n, i) * c ** i for i in range(n + 1)]


def poly_compose_linear(p, c0, c1):
    """p(c0 + c1 x)."""
    out = [0]
    power = [1]
    for coef in p:
        if coef:
            out = poly_add(out, [coef * v for v in power])
        power = poly_mul(power, [c0, c1])
    return poly_trim(out)


@dataclass(frozen=True)
class ModularEquationData:
    b: tuple   # b[k] = coefficients of b_k(Z), Z = z(7 tau)
    a: tuple   # a[j] = coefficients of a_j(X), X = x(7 tau)
    sha256: str

    def mutated(self, which, k, i, delta):
        """Copy with one coefficient changed (for sanity checks)."""
        rows = [list(r) for r in getattr(self, which)]
        rows[k][i] += delta
        kw = {"b": self.b, "a": self.a, "sha256": "mutated"}
        kw[which] = tuple(tuple(r) for r in rows)
        return ModularEquationData(**kw)


def _data_path(data_dir=None):
    if data_dir is not None:
        return Path(data_dir) / "appendix.json"
    return Path(str(resources.files("diamond7") / "data" / "appendix.json"))


def load_modular_equation_data(data_dir=None, verify_checksum=True):
    raw = _data_path(data_dir).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if verify_checksum and digest != APPENDIX_SHA256:
        raise ChecksumMismatch("appendix.json checksum %s does not match %s"
                               % (digest, APPENDIX_SHA256))
    obj = json.loads(raw)
    b = tuple(tuple(int(c) for c in p) for p in obj["b"])
    a = tuple(tuple(int(c) for c in p) for p in obj["a"])
    if len(b) != 15 or len(a) != 15:
        raise DataShapeFailure("expected 15 b and 15 a polynomials")
    return ModularEquationData(b, a, digest)


def _relation(coeff_polys, small, big_inner, N):
    """sum_k P_k(big) small^k to order N, by Horner in small."""
    deg = max(len(p) for p in coeff_polys)
    big = dilate(big_inner, 7).truncate(N)
    bigpow = [QSeries([1], trunc=N)]
    for _ in range(1, deg):
        bigpow.append(mul(bigpow[-1], big))
    acc = None
    for p in reversed(coeff_polys):
        term = linear_combine([(c, bigpow[i]) for i, c in enumerate(p) if c] or [(0, bigpow[0])])
        acc = term if acc is None else linear_combine([(1, mul(acc, small)), (1, term)])
    return acc


def _first_nonzero(f):
    return next((i for i, v in enumerate(f.coeffs) if v), None)


def verify_modeq_z(N=DEFAULT_IDENTITY_BOUND, data=None):
    data = data or load_modular_equation_data()
    z = named("z", N)
    lhs = _relation(data.b, z, named("z", -(-N // 7)), N)
    bad = _first_nonzero(lhs)
    if bad is not None:
        raise IdentityFailure("z-relation fails at q^%d" % bad, bad)
    return True


def verify_modeq_x(N=DEFAULT_IDENTITY_BOUND, data=None):
    data = data or load_modular_equation_data()
    x = named("x", N)
    lhs = _relation(data.a, x, named("x", -(-N // 7)), N)
    bad = _first_nonzero(lhs)
    if bad is not None:
        raise IdentityFailure("x-relation fails at q^%d" % bad, bad)
    return True


def verify_substitution(data=None):
    """a_j(X) == [x^j] sum_k b_k(1+7X) (1+7x)^k / 7^14, exactly.

    Also checks b_0 = Z^14, b_14 = 1 and a_14 = 1.
    """
    data = data or load_modular_equation_data()
    if poly_trim(data.b[0]) != [0] * 14 + [1]:
        raise DataShapeFailure("b_0 is not Z^14", ("b", 0))
    if poly_trim(data.b[14]) != [1] or poly_trim(data.a[14]) != [1]:
        raise DataShapeFailure("b_14 or a_14 is not 1", ("b/a", 14))
    shifted = [poly_compose_linear(p, 1, 7) for p in data.b]
    for j in range(15):
        acc = [0]
        for k in range(j, 15):
            acc = poly_add(acc, [comb(k, j) * 7 ** j * c for c in shifted[k]])
        acc = poly_trim(acc)
        den = 7 ** 14
        if any(c % den for c in acc):
            raise DataShapeFailure("coefficient of x^%d is not divisible by 7^14" % j, ("a", j))
        got = [c // den for c in acc]
        if got != poly_trim(data.a[j]):
            i = next(i for i in range(max(len(got), len(data.a[j])))
                     if (got[i] if i < len(got) else 0) != (data.a[j][i] if i < len(data.a[j]) else 0))
            raise DataShapeFailure("a_%d differs at X^%d" % (j, i), ("a", j, i))
    return True


def phi(l):
    return (7 * l + 17) // 9


def _b_in_x(data, k):
    """b_k(1+7x) (1+7x)^(7(k-2)), a polynomial in x."""
    p = poly_compose_linear(data.b[k], 1, 7)
    e = 7 * (k - 2)
    if e >= 0:
        return poly_mul(p, binom_poly(7, e))
    # divide by (1+7x)^(-e): b_k(z) carries z^(-e) as a factor
    zpoly = list(data.b[k])
    low = next(i for i, c in enumerate(zpoly) if c)
    if low < -e:
        raise DataShapeFailure("b_%d(z) is not divisible by z^%d" % (k, -e), ("b", k))
    reduced = zpoly[-e:]
    return poly_compose_linear(reduced, 1, 7)


def w_hat_poly(data, k):
    return poly_trim([-c for c in _b_in_x(data, k)])


def w_poly(data, j, k):
    return poly_trim(poly_mul(list(data.a[j]), _b_in_x(data, k)))


def _v7(n):
    if n == 0:
        return None
    k = 0
    while n % 7 == 0:
        n //= 7
        k += 1
    return k


def verify_recurrence_data(data=None):
    """Checks on the polynomials w(j,k) and w_hat(k) used by the n- and
    m-recursions.  Returns a report dict; raises DataShapeFailure on the
    first violated shape."""
    data = data or load_modular_equation_data()
    report = {"w": {}, "w_hat": {}}
    # (i) w(j,k) = sum v(j,k,l) 7^floor((7l+j-6)/9) x^l
    for j in range(14):
        for k in range(1, 15):
            w = w_poly(data, j, k)
            for l, c in enumerate(w):
                e = (7 * l + j - 6) // 9
                if e > 0 and c % 7 ** e:
                    raise DataShapeFailure("w(%d,%d) coefficient of x^%d has valuation %s < %d"
                                           % (j, k, l, _v7(c), e), (j, k, l))
            nz = [l for l, c in enumerate(w) if c]
            report["w"]["%d,%d" % (j, k)] = {"L": max(nz) if nz else None,
                                             "lowest": min(nz) if nz else None}
    # (ii) w_hat shapes
    vhat = {}
    for k in range(1, 15):
        wh = w_hat_poly(data, k)
        vs = []
        for l, c in enumerate(wh):
            if l == 0 and k in (7, 14):
                vs.append(None)
                continue
            if c % 7 ** phi(l):
                raise DataShapeFailure("w_hat(%d) coefficient of x^%d not divisible by 7^%d"
                                       % (k, l, phi(l)), (k, l))
            vs.append(c // 7 ** phi(l))
        vhat[k] = vs
        report["w_hat"][str(k)] = {"degree": len(wh) - 1, "constant": str(wh[0] if wh else 0)}
    c7 = w_hat_poly(data, 7)[0]
    c14 = w_hat_poly(data, 14)[0]
    if c7 != 25398809:
        raise DataShapeFailure("w_hat(7) constant is %d" % c7, (7, 0))
    if c14 != -1:
        raise DataShapeFailure("w_hat(14) constant is %d" % c14, (14, 0))
    Lmax = max(len(v) for v in vhat.values())

    def vh(k, l):
        v = vhat[k]
        return v[l] if l < len(v) and v[l] is not None else 0

    # (iii) column sums over k != 7, 14
    for l in range(Lmax):
        s = sum(vh(k, l) for k in range(1, 15) if k not in (7, 14))
        if s % 7:
            raise DataShapeFailure("sum of v_hat(k,%d) over k != 7,14 is %d mod 7" % (l, s % 7), ("iii", l))
    # (iv)
    for l in range(1, Lmax):
        if (vh(7, l) + vh(14, l)) % 7:
            raise DataShapeFailure("v_hat(7,%d) + v_hat(14,%d) is not 0 mod 7" % (l, l), ("iv", l))
    # (v)
    if c7 % 49 != 2:
        raise DataShapeFailure("25398809 mod 49 is %d" % (c7 % 49), ("v",))
    report["w_hat_max_degree"] = Lmax - 1
    report["c7_mod_49"] = c7 % 49
    report["passed"] = True
    return report
