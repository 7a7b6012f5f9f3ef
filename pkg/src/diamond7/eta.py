"""Named modular objects and the generating-function ladder.

All objects are eta quotients (optionally times a power of q) built from
:func:`diamond7.qseries.euler_factor`.  The ladder is

    L_1 = U_7(A),   L_{a+1} = U_7(L_a)       for a odd,
                    L_{a+1} = U_7(A * L_a)   for a even,

with A = q^6 D_2(q) / D_2(q^49).  ``L_a * D_2(q^7)`` (a odd) and
``L_a * D_2(q)`` (a even) list the values d_2(7^a n + lambda_a).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (CrossCheckMismatch, InsufficientTruncation,
                     IntegralityViolation, NegativeValuation)
from .qseries import (QSeries, dilate, euler_factor, invert, is_divisible,
                      linear_combine, mul, u_operator)

__all__ = [
    "EtaQuotientSpec", "SPECS", "eta_series", "named", "d_k", "D_series",
    "lambda_index", "LadderState", "build_L1", "ladder_step", "ladder_budget",
    "build_ladder", "A_offset", "progression_offset", "catalog",
]


@dataclass(frozen=True)
class EtaQuotientSpec:
    """q^qpow * prod (q^delta; q^delta)_inf ** e_delta."""

    qpow: int
    factors: tuple

    def __post_init__(self):
        deltas = [d for d, _ in self.factors]
        if len(set(deltas)) != len(deltas):
            raise ValueError("repeated scale in %r" % (self.factors,))
        if any(d < 1 for d in deltas):
            raise ValueError("scales must be positive")

    def eta_order(self):
        """sum delta*e/24, the q-order of the matching product of eta functions."""
        return Fraction(sum(d * e for d, e in self.factors), 24)

    def is_eta_quotient(self):
        """True when the q-prefactor is exactly the eta normalisation."""
        return self.eta_order() == self.qpow

    def to_json(self):
        return {"qpow": self.qpow, "factors": [[d, e] for d, e in self.factors]}


def _D_spec(k):
    return EtaQuotientSpec(0, ((2, k), (1, -(3 * k + 1))))


def A_offset(k=2):
    """q-power in A_k = q^c D_k(q)/D_k(q^49); c = 2(k+1)."""
    return 2 * (k + 1)


def _A_spec(k=2):
    return EtaQuotientSpec(A_offset(k), ((1, -(3 * k + 1)), (2, k),
                                         (49, 3 * k + 1), (98, -k)))


SPECS = {
    "z": EtaQuotientSpec(0, ((1, -7), (2, 7), (7, 1), (14, -1))),
    "y0": EtaQuotientSpec(0, ((1, -8), (2, 4), (7, 8), (14, -4))),
    "A": _A_spec(2),
    "m": EtaQuotientSpec(-4, ((1, -1), (2, 5), (7, 7), (14, -11))),
    "D2": _D_spec(2),
    "D3": _D_spec(3),
}

_ALIASES = {"𝒜": "A", "𝔪": "m", "y₀": "y0", "r_L": "rL", "rl": "rL"}


def eta_series(spec, N, modulus=None):
    """Expansion of an eta quotient to order N."""
    if N < 1:
        raise ValueError("N must be positive")
    if spec.qpow < 0:
        raise NegativeValuation("q^%d prefactor has no power-series expansion"
                                % spec.qpow)
    inner = N - spec.qpow
    if inner <= 0:
        return QSeries((), trunc=N, modulus=modulus)
    acc = None
    for d, e in spec.factors:
        f = euler_factor(d, e, inner, modulus)
        acc = f if acc is None else mul(acc, f)
    if acc is None:
        acc = QSeries([1], trunc=inner, modulus=modulus)
    return acc.shift(spec.qpow)


def eta_laurent(spec, N, modulus=None):
    """(shift, f) with the object equal to q^shift * f; f known to order N."""
    body = EtaQuotientSpec(0, spec.factors)
    return spec.qpow, eta_series(body, N, modulus)


def D_series(k, N, modulus=None):
    """D_k(q) = (q^2;q^2)^k / (q;q)^(3k+1)."""
    return eta_series(_D_spec(k), N, modulus)


def d_k(k, N):
    """List of d_k(0..N-1)."""
    return list(D_series(k, N).coeffs)


def _exact_div(f, c, what):
    if not is_divisible(f, c):
        bad = next(i for i, v in enumerate(f.coeffs) if v % c)
        raise IntegralityViolation("%s: coefficient %d not divisible by %d" % (what, bad, c))
    return QSeries([v // c for v in f.coeffs])


def named(name, N, k=None, modulus=None):
    """Named series: 'D' (with k), 'A', 'z', 'x', 'y0', 'y', 'rL'.

    'm' has a q^-4 prefactor and raises NegativeValuation; use
    :func:`eta_laurent` for it.  With a modulus M the result is reduced
    mod M; divisions by 7 and 8 are carried out on lifts mod 7M or 8M.
    """
    name = _ALIASES.get(name, name)
    if name == "D":
        return D_series(2 if k is None else k, N, modulus)
    if name in ("z", "y0", "A", "m"):
        spec = _A_spec(k) if (name == "A" and k is not None) else SPECS[name]
        return eta_series(spec, N, modulus)
    if name == "x":
        if modulus is None:
            z = named("z", N)
            return _exact_div(z - 1, 7, "x")
        z = named("z", N, modulus=7 * modulus)
        return QSeries([(v - (i == 0)) // 7 for i, v in enumerate(z.coeffs)], modulus=modulus)
    if name == "y":
        if modulus is None:
            return _exact_div(named("y0", N) - 1, 8, "y")
        y0 = named("y0", N, modulus=8 * modulus)
        return QSeries([(v - (i == 0)) // 8 for i, v in enumerate(y0.coeffs)], modulus=modulus)
    if name == "rL":
        inner = None if modulus is None else 7 * modulus
        x = named("x", N, modulus=inner)
        y = named("y", N, modulus=inner)
        x2 = mul(x, x)
        num = linear_combine([(1, x), (3, x2), (1, mul(x2, x)), (6, y), (5, mul(x, y))])
        if modulus is None:
            return _exact_div(num, 7, "r_L")
        return QSeries([v // 7 for v in num.coeffs], modulus=modulus)
    raise KeyError("unknown named object %r" % (name,))


# ---------------------------------------------------------------------------
# ladder

def lambda_index(alpha, k=2):
    """Least positive inverse of 8 (k=2) or 6 (k=3) modulo 7^alpha."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    unit = 24 // (k + 1)
    return pow(unit, -1, 7 ** alpha)


def progression_offset(alpha, k=2):
    """c_alpha with L_alpha * D(q^7 or q) = sum d(7^alpha m - c_alpha) q^m."""
    c = A_offset(k)
    ca = c
    for a in range(2, alpha + 1):
        if a % 2 == 1:
            ca += 7 ** (a - 1) * c
    return ca


@dataclass(frozen=True)
class LadderState:
    alpha: int
    series: QSeries = field(repr=False)
    k: int = 2

    @property
    def parity(self):
        return self.alpha % 2

    @property
    def trunc(self):
        return self.series.trunc


def ladder_budget(alpha, N):
    """Orders of A and L_1 needed to deliver L_alpha to order N."""
    l1 = 7 ** (alpha - 1) * N
    return {"alpha": alpha, "N": N, "L1_order": l1, "A_order": 7 * l1}


def build_L1(N, k=2, modulus=None, check=True):
    """L_1 to order N, computed two ways and compared.

    (a) sum d(7n + 1) q^(n+1) times 1/D(q^7), read off D directly.
    (b) U_7 of the full product A.
    """
    c = A_offset(k)
    A = named("A", 7 * N, k=k, modulus=modulus)
    via_A = u_operator(A, 7)
    if not check:
        return LadderState(1, via_A, k)
    D = D_series(k, 7 * N, modulus)
    sub = {}
    for m in range(1, N):
        n = 7 * m - c
        if n >= 0:
            sub[m] = D.coeffs[n]
    gen = QSeries(sub, N, modulus=modulus)
    pref = invert(dilate(D_series(k, -(-N // 7), modulus), 7)).truncate(N)
    via_d = mul(gen, pref)
    n_cmp = min(via_d.trunc, via_A.trunc)
    if via_d.coeffs[:n_cmp] != via_A.coeffs[:n_cmp]:
        bad = next(i for i in range(n_cmp) if via_d.coeffs[i] != via_A.coeffs[i])
        raise CrossCheckMismatch("L_1 routes disagree at q^%d" % bad)
    return LadderState(1, via_A, k)


def ladder_step(state, N=None, A=None):
    """L_(alpha+1) = U_7(L_alpha) or U_7(A * L_alpha) by parity."""
    f = state.series
    if state.parity == 1:
        out = u_operator(f, 7)
    else:
        if A is None:
            A = named("A", f.trunc, k=state.k, modulus=f.modulus)
        out = u_operator(mul(A, f), 7)
    if N is not None:
        if out.trunc < N:
            raise InsufficientTruncation("L_%d known to order %d < %d"
                                         % (state.alpha + 1, out.trunc, N))
        out = out.truncate(N)
    return LadderState(state.alpha + 1, out, state.k)


def build_ladder(alpha_max, N, k=2, modulus=None):
    """[L_1, ..., L_alpha_max], each known to order >= N."""
    budget = ladder_budget(alpha_max, N)
    A = named("A", budget["A_order"], k=k, modulus=modulus)
    states = [LadderState(1, u_operator(A, 7), k)]
    for _ in range(1, alpha_max):
        st = states[-1]
        states.append(ladder_step(st, A=A.truncate(st.trunc) if st.parity == 0 else None))
    return states


def catalog(N=20):
    """JSON-ready description of the named objects."""
    out = {}
    for key in ("z", "y0", "A", "D2", "D3"):
        spec = SPECS[key]
        f = eta_series(spec, N)
        out[key] = {"spec": spec.to_json(), "eta_order": str(spec.eta_order()),
                    "is_eta_quotient": spec.is_eta_quotient(),
                    "coefficients": [str(v) for v in f.coeffs[:20]],
                    "valuation": next((i for i, v in enumerate(f.coeffs) if v), None)}
    shift, body = eta_laurent(SPECS["m"], N)
    out["m"] = {"spec": SPECS["m"].to_json(), "eta_order": str(SPECS["m"].eta_order()),
                "is_eta_quotient": SPECS["m"].is_eta_quotient(),
                "q_shift": shift, "coefficients": [str(v) for v in body.coeffs[:20]],
                "valuation": shift}
    for key in ("x", "y", "rL"):
        f = named(key, N)
        out[key] = {"definition": {"x": "(z-1)/7", "y": "(y0-1)/8",
                                   "rL": "(x+3x^2+x^3+6y+5xy)/7"}[key],
                    "coefficients": [str(v) for v in f.coeffs[:20]],
                    "valuation": next((i for i, v in enumerate(f.coeffs) if v), None)}
    return out
