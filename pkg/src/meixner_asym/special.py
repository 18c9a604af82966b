"""Numeric kernel: branch-aware powers, complex log-gamma and Airy functions.

The double-precision routines here are the evaluation path of the asymptotic
formulas.  Extended-precision variants go through a per-call
:class:`mpmath.MPContext`, so precision is never ambient global state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .scaled import ScaledComplex

__all__ = [
    "CutSpec",
    "PRINCIPAL",
    "PrecisionConfig",
    "AiryCoeffTable",
    "AiryQuartet",
    "mp_context",
    "branch_arg",
    "branch_log",
    "branch_pow",
    "log1p_complex",
    "log_gamma",
    "log_gamma_remainder",
    "airy_coeffs",
    "airy_quartet",
    "airy_scaled",
    "airy_log",
    "AIRY_SWITCH_RADIUS",
    "AIRY_MAX_TERMS",
]

PI = math.pi
TWO_PI = 2.0 * math.pi
HALF_LOG_2PI = 0.5 * math.log(TWO_PI)
LOG_PI = math.log(math.pi)
OMEGA = cmath.exp(2j * PI / 3)
OMEGA2 = cmath.exp(-2j * PI / 3)

# |z| <= AIRY_SWITCH_RADIUS uses the Maclaurin series (summed with guard bits),
# beyond it the asymptotic expansion with sector rotation.
AIRY_SWITCH_RADIUS = 12.0
AIRY_MAX_TERMS = 12


class PoleError(ValueError):
    """Argument sits on a pole of the Gamma function."""


@dataclass(frozen=True)
class CutSpec:
    """Branch selection for ``arg``: values are taken in ``(lower, lower + 2*pi]``."""

    lower: float = -PI

    @classmethod
    def arg_range(cls, lower: float) -> "CutSpec":
        return cls(float(lower))


PRINCIPAL = CutSpec()


@dataclass(frozen=True)
class PrecisionConfig:
    """Precision policy shared by the oracle and the kernels.

    ``bits`` is the starting oracle precision; the oracle doubles it until two
    successive evaluations agree to ``agree_rel`` or ``max_bits`` is exceeded.
    """

    bits: int = 1024
    max_bits: int = 16384
    agree_rel: float = 1e-20
    asym_bits: int = 53
    tail_tol: float = 1e-30

    def __post_init__(self):
        if self.bits < 128:
            raise ValueError("oracle precision must be at least 128 bits")
        if self.max_bits < self.bits:
            raise ValueError("max_bits must be >= bits")


def mp_context(bits: int) -> mpmath.MPContext:
    """A fresh mpmath context at ``bits`` of working precision."""
    ctx = mpmath.MPContext()
    ctx.prec = int(bits)
    return ctx


# ---------------------------------------------------------------------------
# elementary functions with explicit branches


def branch_arg(z: complex, cut: CutSpec = PRINCIPAL) -> float:
    """``arg z`` reduced into the half-open window selected by ``cut``."""
    theta = cmath.phase(z)
    lo = cut.lower
    while theta <= lo:
        theta += TWO_PI
    while theta > lo + TWO_PI:
        theta -= TWO_PI
    return theta


def branch_log(z: complex, cut: CutSpec = PRINCIPAL) -> complex:
    z = complex(z)
    if z == 0:
        raise ValueError("log of zero")
    return complex(math.log(abs(z)), branch_arg(z, cut))


def branch_pow(z: complex, alpha: float, cut: CutSpec = PRINCIPAL) -> complex:
    """``exp(alpha * (log|z| + i arg z))`` with ``arg z`` on the chosen branch."""
    z = complex(z)
    if z == 0:
        if alpha > 0:
            return 0j
        raise ValueError("zero raised to a non-positive power")
    return cmath.exp(alpha * branch_log(z, cut))


def log1p_complex(x: complex) -> complex:
    """``log(1 + x)`` accurate for small ``|x|``."""
    x = complex(x)
    if abs(x) < 1e-3:
        # alternating series; |x|**8 / 8 < 1e-25
        total = 0j
        power = x
        for k in range(1, 9):
            total += power / k if k % 2 else -power / k
            power *= x
        return total
    return cmath.log(1.0 + x)


# ---------------------------------------------------------------------------
# log-gamma

# B_{2k} / (2k (2k-1)), k = 1..10
_STIRLING = tuple(
    float(Fraction(b) / (2 * k * (2 * k - 1)))
    for k, b in enumerate(
        (
            Fraction(1, 6),
            Fraction(-1, 30),
            Fraction(1, 42),
            Fraction(-1, 30),
            Fraction(5, 66),
            Fraction(-691, 2730),
            Fraction(7, 6),
            Fraction(-3617, 510),
            Fraction(43867, 798),
            Fraction(-174611, 330),
        ),
        start=1,
    )
)

_STIRLING_SHIFT = 12.0


def _stirling_tail(w: complex) -> complex:
    inv = 1.0 / w
    inv2 = inv * inv
    total = 0j
    for coeff in reversed(_STIRLING):
        total = total * inv2 + coeff
    return total * inv


def _is_pole(w: complex) -> bool:
    return w.imag == 0 and w.real <= 0 and w.real == math.floor(w.real)


def _log_gamma_right(w: complex) -> complex:
    # upward recurrence to Re w >= 12, then Stirling
    shift = 0j
    while w.real < _STIRLING_SHIFT:
        shift += cmath.log(w)
        w += 1.0
    main = (w - 0.5) * cmath.log(w) - w + HALF_LOG_2PI
    return main + _stirling_tail(w) - shift


def _log_sin_pi_upper(w: complex) -> complex:
    # log sin(pi w) continued analytically through Im w >= 0
    q = cmath.exp(2j * PI * w)
    return -math.log(2.0) + 0.5j * PI - 1j * PI * w + log1p_complex(-q)


def log_gamma(w: complex, bits: int | None = None) -> complex:
    """Principal branch of ``log Gamma(w)``.

    ``bits=None`` runs the double-precision path; otherwise the value is
    computed with mpmath at the requested precision.  Points on the negative
    real axis take the limit from above.
    """
    if bits is not None:
        ctx = mp_context(bits)
        try:
            return ctx.loggamma(ctx.mpc(w))
        except ValueError as exc:
            raise PoleError(f"Gamma has a pole at {w!r}") from exc
    w = complex(w)
    if _is_pole(w):
        raise PoleError(f"Gamma has a pole at {w!r}")
    if w.imag == 0 and w.real > 0:
        return complex(math.lgamma(w.real))
    if w.real >= 0:
        return _log_gamma_right(w)
    if w.imag < 0:
        return log_gamma(w.conjugate()).conjugate()
    return LOG_PI - _log_gamma_right(1.0 - w) - _log_sin_pi_upper(w)


def log_gamma_remainder(w: complex) -> complex:
    """``log Gamma(w) - [(w - 1/2) log w - w + log(2 pi)/2]`` for ``Re w > 0``.

    Evaluated without forming the large Stirling main part, so quantities like
    ``log Gamma(w + h) - log Gamma(w)`` stay accurate at ``|w| ~ 10**6``.
    """
    w = complex(w)
    if w.real <= 0:
        raise ValueError("log_gamma_remainder needs Re w > 0")
    acc = 0j
    while abs(w) < _STIRLING_SHIFT:
        acc += (w + 0.5) * (cmath.log(w + 1.0) - cmath.log(w)) - 1.0
        w += 1.0
    return acc + _stirling_tail(w)


# ---------------------------------------------------------------------------
# Airy functions


@dataclass(frozen=True)
class AiryCoeffTable:
    """Coefficients of the large-argument Airy expansions (``u_0 = v_0 = 1``)."""

    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]

    @property
    def s_max(self) -> int:
        return len(self.u) - 1


@lru_cache(maxsize=None)
def airy_coeffs(s_max: int = AIRY_MAX_TERMS) -> AiryCoeffTable:
    """Exact rational ``u_s, v_s`` for ``s = 0..s_max``.

    ``u_s = Gamma(3s+1/2) / (54**s s! Gamma(s+1/2))`` via its term ratio, and
    ``v_s = -(6s+1)/(6s-1) u_s``.
    """
    if not 0 <= s_max <= 30:
        raise ValueError("s_max must lie in [0, 30]")
    u = [Fraction(1)]
    for s in range(1, s_max + 1):
        u.append(u[-1] * Fraction((6 * s - 5) * (6 * s - 3) * (6 * s - 1), 216 * s * (2 * s - 1)))
    v = [-Fraction(6 * s + 1, 6 * s - 1) * us for s, us in enumerate(u)]
    return AiryCoeffTable(tuple(u), tuple(v))


_U = tuple(float(x) for x in airy_coeffs(AIRY_MAX_TERMS).u)
_V = tuple(float(x) for x in airy_coeffs(AIRY_MAX_TERMS).v)
_INV_2SQRTPI = 0.5 / math.sqrt(PI)


@dataclass(frozen=True)
class AiryQuartet:
    ai: complex
    aip: complex
    bi: complex
    bip: complex

    def __iter__(self):
        return iter((self.ai, self.aip, self.bi, self.bip))


# An exponent-factored value m * exp(e); ``e`` is complex.
_Factored = tuple[complex, complex]


def _fsum(terms: list[_Factored]) -> _Factored:
    terms = [t for t in terms if t[0] != 0]
    if not terms:
        return (0j, 0j)
    lead = max(terms, key=lambda t: t[1].real + math.log(abs(t[0])))[1]
    total = 0j
    for m, e in terms:
        total += m * cmath.exp(e - lead)
    return (total, lead)


def _asym_series(zeta: complex) -> tuple[complex, complex]:
    """Optimally truncated sums for Ai and Ai' (at most AIRY_MAX_TERMS terms)."""
    inv = -1.0 / zeta
    su = sv = 0j
    pw = 1.0 + 0j
    prev = math.inf
    for s in range(AIRY_MAX_TERMS + 1):
        tu = _U[s] * pw
        size = abs(tu)
        if s > 0 and size > prev:
            break
        su += tu
        sv += _V[s] * pw
        prev = size
        pw *= inv
    return su, sv


def _ai_direct(w: complex) -> tuple[_Factored, _Factored]:
    # asymptotic expansion of Ai, Ai' for |arg w| <= 2 pi / 3
    lw = cmath.log(w)
    zeta = (2.0 / 3.0) * cmath.exp(1.5 * lw)
    su, sv = _asym_series(zeta)
    ai = (_INV_2SQRTPI * cmath.exp(-0.25 * lw) * su, -zeta)
    aip = (-_INV_2SQRTPI * cmath.exp(0.25 * lw) * sv, -zeta)
    return ai, aip


def _ai_large(w: complex) -> tuple[_Factored, _Factored]:
    if abs(cmath.phase(w)) <= 2.0 * PI / 3.0 + 1e-12:
        return _ai_direct(w)
    # Ai(w) = -omega Ai(omega w) - omega^2 Ai(omega^2 w); both rotated
    # arguments fall inside |arg| <= 2 pi / 3.
    (a1, d1), (a2, d2) = _ai_direct(OMEGA * w), _ai_direct(OMEGA2 * w)
    ai = _fsum([(-OMEGA * a1[0], a1[1]), (-OMEGA2 * a2[0], a2[1])])
    aip = _fsum([(-OMEGA2 * d1[0], d1[1]), (-OMEGA * d2[0], d2[1])])
    return ai, aip


def _maclaurin(z: complex) -> tuple[complex, complex, complex, complex]:
    zeta_abs = (2.0 / 3.0) * abs(z) ** 1.5
    # the largest partial terms exceed the result by up to exp(2 |zeta|)
    guard = int(2.0 * zeta_abs / math.log(2.0)) + 40
    ctx = mp_context(53 + guard)
    zz = ctx.mpc(z)
    z3 = zz**3
    eps = ctx.ldexp(1, -(53 + guard))
    f = fp = g = gp = ctx.mpc(0)
    a = ctx.mpc(1)  # z**(3k) / prod
    b = ctx.mpc(zz)  # z**(3k+1) / prod
    k = 0
    biggest = ctx.mpf(1)
    while True:
        f += a
        g += b
        if zz != 0:
            fp += 3 * k * a / zz
            gp += (3 * k + 1) * b / zz
        size = max(abs(a), abs(b))
        biggest = max(biggest, size)
        k += 1
        if size < eps * biggest and k > 2:
            break
        a = a * z3 / ((3 * k - 1) * (3 * k))
        b = b * z3 / ((3 * k) * (3 * k + 1))
    if zz == 0:
        gp = ctx.mpc(1)
    c1 = 1 / (ctx.cbrt(9) * ctx.gamma(ctx.mpf(2) / 3))
    c2 = 1 / (ctx.cbrt(3) * ctx.gamma(ctx.mpf(1) / 3))
    s3 = ctx.sqrt(3)
    ai = c1 * f - c2 * g
    aip = c1 * fp - c2 * gp
    bi = s3 * (c1 * f + c2 * g)
    bip = s3 * (c1 * fp + c2 * gp)
    return complex(ai), complex(aip), complex(bi), complex(bip)


def _airy_factored(z: complex) -> tuple[_Factored, _Factored, _Factored, _Factored]:
    z = complex(z)
    if abs(z) <= AIRY_SWITCH_RADIUS:
        ai, aip, bi, bip = _maclaurin(z)
        return (ai, 0j), (aip, 0j), (bi, 0j), (bip, 0j)
    ai, aip = _ai_large(z)
    # Bi(z) = e^{i pi/6} Ai(omega z) + e^{-i pi/6} Ai(omega^2 z)
    (p, dp), (q, dq) = _ai_large(OMEGA * z), _ai_large(OMEGA2 * z)
    ep, em = cmath.exp(1j * PI / 6), cmath.exp(-1j * PI / 6)
    bi = _fsum([(ep * p[0], p[1]), (em * q[0], q[1])])
    bip = _fsum([(ep * OMEGA * dp[0], dp[1]), (em * OMEGA2 * dq[0], dq[1])])
    return ai, aip, bi, bip


def _to_scaled(v: _Factored) -> ScaledComplex:
    m, e = v
    if m == 0:
        return ScaledComplex.zero()
    return ScaledComplex.from_polar(math.log(abs(m)) + e.real, cmath.phase(m) + e.imag)


def airy_log(z: complex) -> tuple[ScaledComplex, ScaledComplex, ScaledComplex, ScaledComplex]:
    """Ai, Ai', Bi, Bi' at ``z`` as :class:`ScaledComplex`; never overflows."""
    return tuple(_to_scaled(v) for v in _airy_factored(z))


def airy_quartet(z: complex, bits: int | None = None) -> AiryQuartet:
    """``(Ai, Ai', Bi, Bi')`` at complex ``z``.

    The default double-precision path uses the Maclaurin series for
    ``|z| <= 12`` and the asymptotic expansions with sector rotation beyond.
    With ``bits`` set the values come from mpmath at that precision.
    """
    if bits is not None:
        ctx = mp_context(bits)
        zz = ctx.mpc(z)
        return AiryQuartet(
            ctx.airyai(zz), ctx.airyai(zz, derivative=1), ctx.airybi(zz), ctx.airybi(zz, derivative=1)
        )
    vals = []
    for m, e in _airy_factored(z):
        vals.append(m * cmath.exp(e) if m != 0 else 0j)
    return AiryQuartet(*vals)


def airy_scaled(z: complex, side: int | None = None) -> AiryQuartet:
    """``(Ai e^{zeta}, Ai' e^{zeta}, Bi e^{-zeta}, Bi' e^{-zeta})``, ``zeta = 2/3 z^{3/2}``.

    On the negative real axis ``side`` (+1 above, -1 below) picks the branch
    of ``z^{3/2}``.  The Ai pair is bounded for ``|arg z| < pi``; the Bi pair
    is bounded for ``|arg z| <= pi/3`` and on the negative axis, and grows
    like ``exp(-2 Re zeta)`` elsewhere.
    """
    z = complex(z)
    if z.imag == 0 and z.real < 0:
        if side is None:
            raise ValueError("z lies on the cut arg z = pi; pass side=+1 or side=-1")
        arg = PI if side > 0 else -PI
    else:
        arg = cmath.phase(z)
    zeta = (2.0 / 3.0) * abs(z) ** 1.5 * cmath.exp(1.5j * arg)
    out = []
    for k, (m, e) in enumerate(_airy_factored(z)):
        shift = zeta if k < 2 else -zeta
        out.append(m * cmath.exp(e + shift) if m != 0 else 0j)
    return AiryQuartet(*out)
