"""Dense integer power-series kernels.

Every routine works on plain lists of Python ints, truncated at a given
length ``n``.  When ``modulus`` is given the results are reduced to
``[0, modulus)``.  Multiplication uses Kronecker substitution: both
operands are packed into a single big integer, multiplied by GMP, and
unpacked again.  This keeps the arithmetic exact while pushing the heavy
lifting into C.
"""

import gmpy2

__all__ = ["mul", "inverse", "power", "euler_base", "euler_power"]


def _pack_signed(c, k):
    nb = k // 8
    half = 1 << (k - 1)
    raw = b"".join((x + half).to_bytes(nb, "little") for x in c)
    off = int.from_bytes(half.to_bytes(nb, "little") * len(c), "little")
    return int.from_bytes(raw, "little") - off


def _pack_unsigned(c, k):
    nb = k // 8
    return int.from_bytes(b"".join(x.to_bytes(nb, "little") for x in c), "little")


def _unpack_signed(P, n, k):
    nb = k // 8
    half = 1 << (k - 1)
    off = int.from_bytes(half.to_bytes(nb, "little") * n, "little")
    Q = (P + off) & ((1 << (k * n)) - 1)
    raw = Q.to_bytes(nb * n, "little")
    frm = int.from_bytes
    return [frm(raw[i * nb:(i + 1) * nb], "little") - half for i in range(n)]


def _unpack_unsigned(P, n, k):
    nb = k // 8
    Q = P & ((1 << (k * n)) - 1)
    raw = Q.to_bytes(nb * n, "little")
    frm = int.from_bytes
    return [frm(raw[i * nb:(i + 1) * nb], "little") for i in range(n)]


def _trim(c):
    i = len(c)
    while i and not c[i - 1]:
        i -= 1
    return c[:i]


def _slot_bits(bits):
    return (bits + 7) // 8 * 8


def mul(a, b, n, modulus=None):
    """Product of two coefficient lists, truncated to length ``n``."""
    if modulus is not None:
        a = [x % modulus for x in a[:n]]
        b = [x % modulus for x in b[:n]]
    a = _trim(list(a[:n]))
    b = _trim(list(b[:n]))
    if not a or not b:
        return [0] * n
    m = min(n, len(a) + len(b) - 1)
    if len(a) < 8 or len(b) < 8:
        out = [0] * m
        if len(a) > len(b):
            a, b = b, a
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b[:m - i]):
                    out[i + j] += ai * bj
    else:
        if modulus is None:
            ma = max(abs(x) for x in a)
            mb = max(abs(x) for x in b)
            k = _slot_bits(ma.bit_length() + mb.bit_length()
                           + min(len(a), len(b)).bit_length() + 2)
            P = gmpy2.mpz(_pack_signed(a, k)) * gmpy2.mpz(_pack_signed(b, k))
            out = _unpack_signed(int(P), m, k)
        else:
            k = _slot_bits(2 * (modulus - 1).bit_length()
                           + min(len(a), len(b)).bit_length() + 1)
            P = gmpy2.mpz(_pack_unsigned(a, k)) * gmpy2.mpz(_pack_unsigned(b, k))
            out = _unpack_unsigned(int(P), m, k)
    if modulus is not None:
        out = [x % modulus for x in out]
    return out + [0] * (n - m)


def inverse(a, n, modulus=None):
    """Reciprocal of a series whose constant term is a unit.

    Newton iteration g <- g(2 - a g); the caller checks the unit condition.
    """
    if modulus is None:
        g0 = a[0]  # +-1
    else:
        g0 = pow(a[0], -1, modulus)
    g = [g0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = mul(a[:prec], g, prec, modulus)
        e = [-x for x in e]
        e[0] += 2
        g = mul(g, e, prec, modulus)
    return (g + [0] * n)[:n]


def power(a, e, n, modulus=None):
    """a**e truncated to length n; negative e requires a unit constant term."""
    if e < 0:
        a = inverse(a, n, modulus)
        e = -e
    result = [1] + [0] * (n - 1)
    if modulus is not None:
        result[0] %= modulus
    base = list(a[:n]) + [0] * (n - len(a[:n]))
    while e:
        if e & 1:
            result = mul(result, base, n, modulus)
        e >>= 1
        if e:
            base = mul(base, base, n, modulus)
    return result


def euler_base(n):
    """(q;q)_inf to length n from the pentagonal number theorem."""
    out = [0] * n
    k = 0
    while True:
        p1 = k * (3 * k - 1) // 2
        p2 = k * (3 * k + 1) // 2
        if p1 >= n and p2 >= n:
            break
        sign = -1 if k % 2 else 1
        if p1 < n:
            out[p1] += sign
        if k and p2 < n:
            out[p2] += sign
        k += 1
    return out


def _miller_power(f, e, n):
    # n g_n = sum_k ((e+1)k - n) f_k g_{n-k}; fast when f is sparse
    g = [0] * n
    g[0] = 1
    nz = [(k, f[k]) for k in range(1, n) if f[k]]
    for m in range(1, n):
        s = 0
        for k, fk in nz:
            if k > m:
                break
            s += ((e + 1) * k - m) * fk * g[m - k]
        g[m] = s // m
    return g


def euler_power(scale, e, n, modulus=None):
    """(q^scale; q^scale)_inf ** e to length n."""
    if n <= 0:
        return []
    inner = -(-n // scale)
    if modulus is None:
        f = _miller_power(euler_base(inner), e, inner)
    else:
        f = power(euler_base(inner), e, inner, modulus)
    out = [0] * n
    out[::scale] = f[:len(out[::scale])]
    return out

