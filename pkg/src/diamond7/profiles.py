"""Valuation profiles theta and pi.

``theta(parity, beta, m)`` is the guaranteed 7-adic valuation of the
coefficient of ``y^beta x^m`` for elements of V^(parity).
``pi(parity, beta, gamma, m, r)`` is the valuation gained by the U-image
of ``y^beta x^m`` at the slot ``y^gamma x^r``.

Indices satisfy m >= 1 - beta and r >= 1 - gamma.
"""

from .errors import DomainError

__all__ = ["theta", "pi", "pi_hat", "EPSILON", "check_domain"]


def _fl(a):
    return a // 9


def check_domain(beta, m):
    if beta not in (0, 1):
        raise DomainError("beta must be 0 or 1, got %r" % (beta,))
    if m < 1 - beta:
        raise DomainError("index %d below the lower bound %d for beta=%d" % (m, 1 - beta, beta))


def theta(parity, beta, m):
    check_domain(beta, m)
    if parity == 1:
        if beta == 0:
            return -1 if m <= 3 else _fl(7 * m - 28)
        return -1 if m <= 1 else _fl(7 * m - 14)
    if parity == 0:
        if beta == 0:
            return 0 if m <= 2 else _fl(7 * m - 16)
        return 0 if m <= 1 else _fl(7 * m - 5)
    raise DomainError("parity must be 0 or 1")


def _pi1(beta, gamma, m, r):
    if (beta, gamma) == (0, 0):
        if 1 <= m <= 3 and r >= 9:
            return _fl(7 * r + 2)
        return max(0, _fl(7 * r - m))
    if (beta, gamma) == (0, 1):
        return max(0, _fl(7 * r - m + 16))
    if (beta, gamma) == (1, 0):
        if m <= 1 and r >= 11:
            return _fl(7 * r + 2)
        if m == 0 and 1 <= r <= 10:
            return _fl(7 * r - 3)
        return max(0, _fl(7 * r - m - 2))
    if m <= 1 and r >= 7:
        return _fl(7 * r + 4) + 1
    if m == 0:
        return _fl(7 * r + 2) + 1
    return max(0, _fl(7 * r - m + 3) + 1)


def _pi0(beta, gamma, m, r):
    if (beta, gamma) == (0, 0):
        if r <= 3:
            return -1
        return max(0, _fl(7 * r - m + 4) - 3)
    if (beta, gamma) == (0, 1):
        if r <= 1:
            return -1
        # the tabulated generic branch starts at r = 4; it is used from r = 2
        return max(0, _fl(7 * r - m) - 1)
    if (beta, gamma) == (1, 0):
        if r <= 3:
            return -1
        if m == 0:
            return max(0, _fl(7 * r - 1) - 3)
        return max(0, _fl(7 * r - m) - 3)
    if r <= 1:
        return -1
    if m == 0:
        return max(0, _fl(7 * r + 4) - 2)
    return max(0, _fl(7 * r - m + 5) - 2)


def pi(parity, beta, gamma, m, r):
    check_domain(beta, m)
    check_domain(gamma, r)
    if parity == 1:
        return _pi1(beta, gamma, m, r)
    if parity == 0:
        return _pi0(beta, gamma, m, r)
    raise DomainError("parity must be 0 or 1")


# generic-branch offsets: pi = max(0, floor((7r - m + eps)/9)) for large m
EPSILON = {
    (1, 0, 0): 0, (1, 0, 1): 16, (1, 1, 0): -2, (1, 1, 1): 12,
    (0, 0, 0): -23, (0, 0, 1): -9, (0, 1, 0): -27, (0, 1, 1): -13,
}


def pi_hat(parity, beta, gamma, m, r):
    return _fl(7 * r - m + EPSILON[(parity, beta, gamma)])
