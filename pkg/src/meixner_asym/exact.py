"""Extended-precision reference evaluation of Meixner polynomials.

Everything here is oracle-grade: values come from the terminating
hypergeometric sum evaluated in mpmath, with precision doubled until two
successive evaluations agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .scaled import ScaledComplex
from .special import PrecisionConfig, mp_context

__all__ = [
    "MeixnerParams",
    "OracleValue",
    "OracleError",
    "OrthogonalityCheck",
    "to_mp",
    "meixner_sum",
    "meixner_rational",
    "meixner_eval",
    "monic_eval",
    "weight",
    "gamma_n_sq",
    "orthogonality_residual",
]


class OracleError(RuntimeError):
    """Precision escalation hit its cap without two evaluations agreeing."""


@dataclass(frozen=True)
class MeixnerParams:
    """Parameters ``(c, beta, n)`` restricted to ``0 < c < 1``, ``1 <= beta < 2``."""

    c: float
    beta: float
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not 0 < self.c < 1:
            raise ValueError(f"c must lie in (0, 1), got {self.c!r}")
        if not 1 <= self.beta < 2:
            raise ValueError(f"beta must lie in [1, 2), got {self.beta!r}")


@dataclass(frozen=True)
class OracleValue:
    value: mpmath.mpc
    achieved_rel_err: float
    bits_used: int

    def to_scaled(self) -> ScaledComplex:
        if self.value == 0:
            return ScaledComplex.zero()
        ctx = mp_context(self.bits_used)
        return ScaledComplex.from_polar(float(ctx.log(abs(self.value))), float(ctx.arg(self.value)))

    def __complex__(self) -> complex:
        return complex(self.value)


def to_mp(ctx: mpmath.MPContext, x):
    """Convert ints, floats, Fractions, complex numbers and strings exactly."""
    if isinstance(x, Rational) and not isinstance(x, int):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, complex):
        return ctx.mpc(x.real, x.imag)
    if isinstance(x, str):
        return ctx.mpmathify(x)
    return ctx.convert(x)


def meixner_sum(ctx: mpmath.MPContext, n: int, beta, c, z):
    """``m_n(z; beta, c) = (beta)_n 2F1(-n, -z; beta; 1 - 1/c)`` in ``ctx``."""
    beta = to_mp(ctx, beta)
    c = to_mp(ctx, c)
    z = to_mp(ctx, z)
    ratio = 1 - 1 / c
    term = ctx.mpf(1)
    total = ctx.mpf(1)
    for k in range(n):
        term = term * (k - n) * (k - z) / ((beta + k) * (k + 1)) * ratio
        total += term
    return ctx.rf(beta, n) * total


def meixner_rational(n: int, beta, c, x) -> Fraction:
    """Exact ``m_n(x; beta, c)`` for rational inputs."""
    beta, c, x = Fraction(beta), Fraction(c), Fraction(x)
    ratio = 1 - 1 / c
    term = total = Fraction(1)
    poch = Fraction(1)
    for k in range(n):
        term = term * (k - n) * (k - x) / ((beta + k) * (k + 1)) * ratio
        total += term
        poch *= beta + k
    return poch * total


def _escalate(evaluate, prec: PrecisionConfig) -> OracleValue:
    bits = prec.bits
    previous = evaluate(bits)
    while bits < prec.max_bits:
        bits *= 2
        current = evaluate(bits)
        if current == 0 and previous == 0:
            return OracleValue(current, 0.0, bits)
        scale = abs(current)
        rel = float(abs(current - previous) / scale) if scale != 0 else math.inf
        if rel <= prec.agree_rel:
            return OracleValue(current, rel, bits)
        previous = current
    raise OracleError(f"oracle did not converge below {prec.max_bits} bits")


def meixner_eval(p: MeixnerParams, z, prec: PrecisionConfig | None = None) -> OracleValue:
    """``m_n(z; beta, c)`` to the agreement tolerance of ``prec``."""
    prec = prec or PrecisionConfig()

    def evaluate(bits):
        ctx = mp_context(bits)
        return ctx.mpc(meixner_sum(ctx, p.n, p.beta, p.c, z))

    return _escalate(evaluate, prec)


def monic_eval(p: MeixnerParams, z, prec: PrecisionConfig | None = None) -> OracleValue:
    """Monic ``pi_n(z) = (1 - 1/c)**(-n) m_n(z; beta, c)``."""
    prec = prec or PrecisionConfig()

    def evaluate(bits):
        ctx = mp_context(bits)
        c = to_mp(ctx, p.c)
        return ctx.mpc(meixner_sum(ctx, p.n, p.beta, c, z) / (1 - 1 / c) ** p.n)

    return _escalate(evaluate, prec)


def weight(k, p: MeixnerParams, bits: int = 1024):
    """``w(k) = Gamma(k + beta) / Gamma(k + 1) * c**k``."""
    ctx = mp_context(bits)
    k = to_mp(ctx, k)
    beta, c = to_mp(ctx, p.beta), to_mp(ctx, p.c)
    for arg in (k + beta, k + 1):
        if arg <= 0 and ctx.isint(arg):
            raise ValueError(f"weight has a pole at k={k}")
    return ctx.gamma(k + beta) / ctx.gamma(k + 1) * c**k


def gamma_n_sq(p: MeixnerParams, bits: int = 1024):
    """Squared normalisation ``(1-c)^(2n+beta) c^(-n) / (Gamma(n+beta) Gamma(n+1))``."""
    ctx = mp_context(bits)
    beta, c = to_mp(ctx, p.beta), to_mp(ctx, p.c)
    n = p.n
    return (1 - c) ** (2 * n + beta) * c ** (-n) / (ctx.gamma(n + beta) * ctx.factorial(n))


@dataclass(frozen=True)
class OrthogonalityCheck:
    residual: mpmath.mpf
    tail_bound: mpmath.mpf
    rounding: mpmath.mpf

    @property
    def within(self) -> bool:
        return self.residual <= self.tail_bound + self.rounding


def _abs_coeff_poly(ctx, n, beta, c):
    # coefficients of the monic polynomial in powers of x, taken in absolute value
    beta, c = to_mp(ctx, beta), to_mp(ctx, c)
    ratio = 1 - 1 / c
    coeffs = [ctx.mpf(0)] * (n + 1)
    # (-x)_k = prod_{j<k} (j - x) expanded incrementally
    falling = [ctx.mpf(1)]
    term = ctx.mpf(1)
    for k in range(n + 1):
        for j, a in enumerate(falling):
            coeffs[j] += term * a
        term = term * (k - n) / ((beta + k) * (k + 1)) * ratio
        nxt = [ctx.mpf(0)] * (len(falling) + 1)
        for j, a in enumerate(falling):
            nxt[j] += k * a
            nxt[j + 1] -= a
        falling = nxt
    scale = ctx.rf(beta, n) / ratio**n
    return [abs(a * scale) for a in coeffs]


def orthogonality_residual(n: int, p_idx: int, params: MeixnerParams, K: int, bits: int = 1024) -> OrthogonalityCheck:
    """Truncated discrete orthogonality sum against ``delta_{np} / gamma_n^2``.

    The discarded tail ``k > K`` is bounded by dominating ``|pi_n(k)|`` with
    its absolute-coefficient polynomial and summing a geometric series whose
    ratio is the supremum of the term ratios for ``k > K``.
    """
    if K < 50:
        raise ValueError("K must be at least 50")
    ctx = mp_context(bits)
    beta, c = to_mp(ctx, params.beta), to_mp(ctx, params.c)
    pn = MeixnerParams(params.c, params.beta, n)
    norm = 1 / (1 - 1 / c)

    total = ctx.mpf(0)
    magnitude = ctx.mpf(0)
    w = ctx.gamma(beta)  # w(0)
    for k in range(K + 1):
        a = meixner_sum(ctx, n, beta, c, k) * norm**n
        b = meixner_sum(ctx, p_idx, beta, c, k) * norm**p_idx
        t = a * b * w
        total += t
        magnitude += abs(t)
        w = w * c * (k + beta) / (k + 1)

    target = 1 / gamma_n_sq(pn, bits) if n == p_idx else ctx.mpf(0)
    residual = abs(total - target)

    An = _abs_coeff_poly(ctx, n, beta, c)
    Ap = _abs_coeff_poly(ctx, p_idx, beta, c)
    k1 = K + 1
    bound_term = ctx.polyval(An[::-1], k1) * ctx.polyval(Ap[::-1], k1) * w
    rho = ((ctx.mpf(k1 + 1) / k1) ** (n + p_idx)) * c * (k1 + beta) / (k1 + 1)
    if rho >= 1:
        tail = ctx.inf
    else:
        tail = bound_term / (1 - rho)
    rounding = (magnitude + abs(target)) * ctx.ldexp(1, -bits + 10)
    return OrthogonalityCheck(residual, tail, rounding)
