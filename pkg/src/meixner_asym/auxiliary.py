"""Auxiliary functions entering the Meixner asymptotics.

Turning points, the phase functions ``phi`` / ``phi_tilde``, the Airy
arguments built from them, and the Gamma-ratio factors ``D`` and ``W``.

Points lying exactly on a branch cut need ``side=+1`` (limit from above, or
from the right for the imaginary axis) or ``side=-1``.  One-sided limits are
taken by evaluating at a relative offset of ``SIDE_OFFSET`` off the cut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .scaled import ScaledComplex
from .special import log1p_complex, log_gamma, log_gamma_remainder

__all__ = [
    "TurningPoints",
    "BranchError",
    "turning_points",
    "phi",
    "phi_tilde",
    "phi_prime",
    "airy_args",
    "log_airy_args",
    "theta",
    "v_linear",
    "l_constant",
    "default_delta",
    "log_D",
    "D_factor",
    "log_W",
    "W_factor",
    "SIDE_OFFSET",
]

SIDE_OFFSET = 1e-15
_ARG_TOL = 1e-9


class BranchError(ValueError):
    """A point sits on a branch cut and no side was supplied."""


@dataclass(frozen=True)
class TurningPoints:
    a: float
    b: float

    def __post_init__(self):
        if not 0 < self.a < 1 < self.b:
            raise ValueError(f"turning points must satisfy 0 < a < 1 < b, got {self.a}, {self.b}")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def turning_points(c) -> TurningPoints:
    """``a = (1 - sqrt c) / (1 + sqrt c)`` and ``b = 1 / a``.

    A rational ``c`` with a rational square root gives exact Fractions.
    """
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c!r}")
    if isinstance(c, Fraction):
        root = _rational_sqrt(c)
        if root is not None:
            return TurningPoints((1 - root) / (1 + root), (1 + root) / (1 - root))
    sc = math.sqrt(c)
    return TurningPoints((1 - sc) / (1 + sc), (1 + sc) / (1 - sc))


def _on_side(z: complex, side: int | None, on_cut: bool, what: str) -> complex:
    if not on_cut:
        return z
    if side not in (1, -1):
        raise BranchError(f"{what}: z={z!r} lies on a branch cut; pass side=+1 or side=-1")
    return complex(z.real, side * SIDE_OFFSET * max(1.0, abs(z.real)))


def _sqrt_ratio_log(p: complex, q: complex) -> complex:
    return cmath.log((p + q) / (p - q))


def phi(z: complex, tp: TurningPoints, side: int | None = None) -> complex:
    """Phase function vanishing at ``b``; analytic off ``(-inf, b]``."""
    z = complex(z)
    a, b = float(tp.a), float(tp.b)
    z = _on_side(z, side, z.imag == 0 and z.real <= b, "phi")
    ra, rb = cmath.sqrt(z - a), cmath.sqrt(z - b)
    # b z - 1 = b (z - a) and a z - 1 = a (z - b) since a b = 1; writing them
    # this way keeps the zeros exactly at a and b in floating point
    first = _sqrt_ratio_log(math.sqrt(b) * ra, math.sqrt(a) * rb)
    return z * first - _sqrt_ratio_log(ra, rb)


def phi_prime(z: complex, tp: TurningPoints, side: int | None = None) -> complex:
    z = complex(z)
    a, b = float(tp.a), float(tp.b)
    z = _on_side(z, side, z.imag == 0 and z.real <= b, "phi_prime")
    return _sqrt_ratio_log(math.sqrt(b) * cmath.sqrt(z - a), math.sqrt(a) * cmath.sqrt(z - b))


def phi_tilde(z: complex, tp: TurningPoints, side: int | None = None) -> complex:
    """Phase function vanishing at ``a``; analytic off ``(-inf, 0] U [a, inf)``."""
    z = complex(z)
    a, b = float(tp.a), float(tp.b)
    z = _on_side(z, side, z.imag == 0 and (z.real <= 0 or z.real >= a), "phi_tilde")
    rb, ra = cmath.sqrt(b - z), cmath.sqrt(a - z)
    first = _sqrt_ratio_log(math.sqrt(a) * rb, math.sqrt(b) * ra)
    return z * first - _sqrt_ratio_log(rb, ra)


def _half_plane(z: complex, side: int | None) -> int:
    if z.imag > 0:
        return 1
    if z.imag < 0:
        return -1
    return side if side in (1, -1) else 0


def _continued_arg(w: complex, sign: int, lo_cut: float) -> float:
    # Lift the principal argument so it varies continuously through the
    # half plane ``sign``: for sign=+1 arguments below ``-lo_cut`` move up by
    # 2 pi, for sign=-1 arguments above ``lo_cut`` move down.
    theta = cmath.phase(w)
    if sign > 0 and theta < -lo_cut:
        theta += 2 * math.pi
    elif sign < 0 and theta > lo_cut:
        theta -= 2 * math.pi
    return theta


def log_airy_args(z: complex, n: int, tp: TurningPoints, side: int | None = None,
                  which: str = "both") -> tuple[complex | None, complex | None]:
    """Logarithms of ``F`` and ``F_tilde`` with their arguments continued.

    ``F = (3/2 n phi)^(2/3)`` takes ``arg phi`` in ``(-3pi/2, 3pi/2]`` so that
    ``F`` is analytic near ``b``; likewise ``F_tilde = (-3/2 n phi_tilde)^(2/3)``
    near ``a``.  ``None`` marks a function undefined at ``z``.
    """
    z = complex(z)
    a, b = float(tp.a), float(tp.b)
    sign = _half_plane(z, side)
    log_scale = math.log(1.5 * n)
    log_F = log_Ft = None
    if which in ("both", "F"):
        if z.imag == 0 and z.real > b:
            ph = phi(z, tp)
            log_F = (2.0 / 3.0) * (log_scale + math.log(ph.real)) if ph.real > 0 else complex(-math.inf, 0)
        else:
            if sign == 0:
                raise BranchError(f"F: z={z!r} lies on the cut (-inf, b]; pass a side")
            ph = phi(z, tp, side)
            arg = _continued_arg(ph, sign, math.pi / 4)
            log_F = (2.0 / 3.0) * complex(log_scale + math.log(abs(ph)), arg)
    if which in ("both", "F_tilde"):
        if z.imag == 0 and 0 < z.real < a:
            pt = phi_tilde(z, tp)
            log_Ft = (2.0 / 3.0) * (log_scale + math.log(-pt.real)) if pt.real < 0 else complex(-math.inf, 0)
        elif sign == 0:
            raise BranchError(f"F_tilde: z={z!r} lies on a cut; pass a side")
        else:
            pt = phi_tilde(z, tp, side)
            arg = _continued_arg(-pt, -sign, math.pi / 4)
            log_Ft = (2.0 / 3.0) * complex(log_scale + math.log(abs(pt)), arg)
    return log_F, log_Ft


def _check_arg_ranges(z: complex, tp: TurningPoints, delta: float, sign: int,
                      log_F: complex | None, log_Ft: complex | None) -> None:
    a, b = float(tp.a), float(tp.b)
    in_band = a < z.real < b and abs(z.imag) <= delta
    for name, lg in (("F", log_F), ("F_tilde", log_Ft)):
        if lg is None:
            continue
        arg = complex(lg).imag
        if in_band and sign != 0:
            # F: +-arg in (pi/3, pi]; F_tilde: -+arg in (pi/3, pi]
            s = sign if name == "F" else -sign
            ok = math.pi / 3 - _ARG_TOL < s * arg <= math.pi + _ARG_TOL
        else:
            ok = abs(arg) < math.pi + _ARG_TOL
        if not ok:
            raise AssertionError(f"arg {name}({z!r}) = {arg} outside its admissible range")


def airy_args(z: complex, n: int, tp: TurningPoints, side: int | None = None,
              delta: float | None = None) -> tuple[complex | None, complex | None]:
    """``(F, F_tilde)`` at ``z``; either is ``None`` where undefined.

    The admissible argument ranges of both values are checked on every call.
    """
    z = complex(z)
    try:
        log_F, _ = log_airy_args(z, n, tp, side, which="F")
    except BranchError:
        if side is not None:
            raise
        log_F = None
    log_Ft = None
    if 0 < z.real < 1 or not (z.imag == 0 and (z.real <= 0 or z.real >= tp.a)):
        try:
            _, log_Ft = log_airy_args(z, n, tp, side, which="F_tilde")
        except BranchError:
            if side is not None:
                raise
    if log_F is None and log_Ft is None:
        raise BranchError(f"neither F nor F_tilde is defined at z={z!r} without a side")
    if delta is None:
        delta = default_delta(tp)
    _check_arg_ranges(z, tp, delta, _half_plane(z, side), log_F, log_Ft)
    F = cmath.exp(log_F) if log_F is not None else None
    Ft = cmath.exp(log_Ft) if log_Ft is not None else None
    return F, Ft


def default_delta(tp: TurningPoints) -> float:
    """Half-height of the rectangle: ``min(0.1, a/2)``."""
    return min(0.1, float(tp.a) / 2)


def theta(z: complex, n: int, beta: float) -> complex:
    return n * math.pi * complex(z) - beta * math.pi / 2


def v_linear(z: complex, c: float) -> complex:
    return -complex(z) * math.log(c)


def l_constant(tp: TurningPoints) -> float:
    return 2 * math.log((float(tp.b) - float(tp.a)) / 4) - 2


def log_D(z: complex, n: int, beta: float, side: int | None = None) -> complex:
    """``log D(z)`` without forming the large Stirling main parts."""
    z = complex(z)
    if z.real == 0:
        if side not in (1, -1):
            raise BranchError("D: z lies on the imaginary axis; pass side=+1 (right) or -1 (left)")
        right = side > 0
    else:
        right = z.real > 0
    if n == 0:
        raise ValueError("D needs n >= 1")
    if right:
        w = n * z
        h = 1 - beta / 2
        return -h + (w + h - 0.5) * log1p_complex(h / w) + log_gamma_remainder(w + h)
    u = -n * z
    k = beta / 2
    return -(u + k - 0.5) * log1p_complex(k / u) + k - log_gamma_remainder(u + k)


def D_factor(z: complex, n: int, beta: float, side: int | None = None) -> ScaledComplex:
    """Gamma-ratio factor that cancels the jump across the imaginary axis."""
    return ScaledComplex.from_log(log_D(z, n, beta, side))


def log_W(z: complex, n: int, beta: float) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real <= 0:
        raise BranchError("W is not defined on the negative real axis")
    w = n * z
    k, h = beta / 2, 1 - beta / 2
    if w.real > 0:
        return ((w + k - 0.5) * log1p_complex(k / w) - (w + h - 0.5) * log1p_complex(h / w)
                + (h - k) + log_gamma_remainder(w + k) - log_gamma_remainder(w + h))
    return (1 - beta) * cmath.log(w) + log_gamma(w + k) - log_gamma(w + h)


def W_factor(z: complex, n: int, beta: float) -> complex:
    """``(nz)^(1-beta) Gamma(nz + beta/2) / Gamma(nz + 1 - beta/2)``."""
    return cmath.exp(log_W(z, n, beta))
