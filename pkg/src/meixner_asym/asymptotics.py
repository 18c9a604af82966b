"""Global large-n approximations of monic Meixner polynomials.

Two formulas cover the plane: one inside the rectangle
``0 < Re z < 1, |Im z| < delta`` and one outside it.  Both approximate
``pi_n(n z - beta/2)`` and are assembled in log space, so no factor like
``n**n`` or ``exp(n v / 2)`` is ever formed as a float.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .auxiliary import (
    BranchError,
    TurningPoints,
    default_delta,
    l_constant,
    log_airy_args,
    log_D,
    log_W,
    phi,
    phi_tilde,
    theta,
    turning_points,
    v_linear,
)
from .exact import MeixnerParams
from .scaled import ScaledComplex
from .special import OMEGA, OMEGA2, airy_log

__all__ = [
    "RegionKind",
    "RegionTag",
    "Formula",
    "AuxValues",
    "AsymptoticResult",
    "SingularPointError",
    "classify_region",
    "asym_outside",
    "asym_inside",
    "pi_n_asym",
    "BOUNDARY_TOL",
    "NUDGE",
    "SINGULAR_RADIUS",
]

BOUNDARY_TOL = 1e-9
NUDGE = 1e-10
SINGULAR_RADIUS = 1e-6
_HALF_LOG_PI = 0.5 * math.log(math.pi)


class SingularPointError(ValueError):
    """``z`` is (numerically) one of the singular points ``0, a, b``."""


class RegionKind(str, enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


class Formula(str, enum.Enum):
    OUTSIDE = "outside"
    INSIDE = "inside"


@dataclass(frozen=True)
class RegionTag:
    kind: RegionKind
    delta: float


@dataclass(frozen=True)
class AuxValues:
    phi: complex | None = None
    phi_tilde: complex | None = None
    F: complex | None = None
    F_tilde: complex | None = None
    theta: complex | None = None
    v: complex | None = None
    l: float | None = None
    D: ScaledComplex | None = None
    W: complex | None = None


@dataclass(frozen=True)
class AsymptoticResult:
    value: ScaledComplex
    formula: Formula
    region: RegionTag
    aux: AuxValues = field(default_factory=AuxValues)
    z_eval: complex | None = None
    side: int | None = None

    def __complex__(self) -> complex:
        return complex(self.value)


def _rect_distance(z: complex, delta: float) -> tuple[float, bool]:
    """Distance from ``z`` to the rectangle boundary and whether ``z`` is inside."""
    x, y = z.real, z.imag
    inside = 0 < x < 1 and abs(y) < delta
    if inside:
        return min(x, 1 - x, delta - abs(y)), True
    dx = max(0.0 - x, 0.0, x - 1.0)
    dy = max(abs(y) - delta, 0.0)
    return math.hypot(dx, dy), False


def classify_region(z: complex, delta: float) -> RegionTag:
    """Tag ``z`` as inside/outside the rectangle, or on its boundary (1e-9)."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    dist, inside = _rect_distance(complex(z), delta)
    if dist <= BOUNDARY_TOL:
        return RegionTag(RegionKind.BOUNDARY, delta)
    return RegionTag(RegionKind.INSIDE if inside else RegionKind.OUTSIDE, delta)


def _check_singular(z: complex, tp: TurningPoints, radius: float = SINGULAR_RADIUS) -> None:
    for name, pt in (("0", 0.0), ("a", float(tp.a)), ("b", float(tp.b))):
        if abs(z - pt) < radius:
            raise SingularPointError(f"z={z!r} is within {radius:g} of the singular point {name}")


def _side_for(z: complex, side: int | None) -> int | None:
    if z.imag != 0:
        return None
    return 1 if side is None else side


def _log_pow(log_base: complex, alpha: float) -> ScaledComplex:
    return ScaledComplex.from_log(alpha * log_base)


def _nudged_log(w: complex, s: int | None) -> complex:
    # principal log, with the negative real axis resolved by side ``s``
    if w.imag == 0 and w.real < 0:
        if s is None:
            raise BranchError(f"{w!r} lies on a principal cut; pass a side")
        return complex(math.log(-w.real), math.pi if s > 0 else -math.pi)
    return cmath.log(w)


def asym_outside(z: complex, p: MeixnerParams, side: int | None = None,
                 tp: TurningPoints | None = None, d_side: int | None = None) -> AsymptoticResult:
    """Approximation of ``pi_n(n z - beta/2)`` valid outside the rectangle.

    Real ``z <= b`` lies on a cut of the phase function; ``side`` chooses the
    limit from above (+1, default) or below (-1).  ``d_side`` resolves the
    imaginary axis for the ``D`` factor (default: right).
    """
    z = complex(z)
    tp = tp or turning_points(p.c)
    _check_singular(z, tp)
    n, beta = p.n, p.beta
    if n == 0:
        return AsymptoticResult(ScaledComplex.from_complex(1), Formula.OUTSIDE,
                                RegionTag(RegionKind.OUTSIDE, default_delta(tp)), z_eval=z)
    a, b = float(tp.a), float(tp.b)
    s = _side_for(z, side) if z.real <= b else None
    zs = z if s is None else complex(z.real, 0.0)

    log_F, _ = log_airy_args(zs, n, tp, s, which="F")
    F = cmath.exp(log_F)
    Ai, Aip, _, _ = airy_log(F)

    if z.real == 0 and d_side is None:
        d_side = 1
    lD = log_D(z, n, beta, d_side)
    v = v_linear(z, p.c)
    l = l_constant(tp)

    log_za = _nudged_log(z - a, s)
    log_zb = _nudged_log(z - b, s)
    log_z = _nudged_log(z, s)
    r, t = cmath.exp(0.5 * log_za), cmath.exp(0.5 * log_zb)
    P = ScaledComplex.from_log(beta * cmath.log((r + t) / 2))
    M = ScaledComplex.from_log(beta * cmath.log((r - t) / 2))
    denom = _log_pow(log_z, (beta - 1) / 2) * _log_pow(log_za, 0.25) * _log_pow(log_zb, 0.25)

    term1 = (P + M) / denom * _log_pow(log_F, 0.25) * Ai
    term2 = (P - M) / denom * _log_pow(log_F, -0.25) * Aip
    brace = term1 - term2

    log_pre = n * math.log(n) + _HALF_LOG_PI + lD + n * v / 2 + n * l / 2
    value = ScaledComplex.from_log(log_pre) * brace
    aux = AuxValues(phi=phi(zs, tp, s), F=F, theta=theta(z, n, beta), v=v, l=l,
                    D=ScaledComplex.from_log(lD),
                    W=_safe_W(z, n, beta))
    return AsymptoticResult(value, Formula.OUTSIDE, RegionTag(RegionKind.OUTSIDE, default_delta(tp)),
                            aux, z_eval=z, side=s)


def _safe_W(z, n, beta):
    try:
        return cmath.exp(log_W(z, n, beta))
    except (BranchError, ValueError, OverflowError):
        return None


def asym_inside(z: complex, p: MeixnerParams, side: int | None = None,
                tp: TurningPoints | None = None) -> AsymptoticResult:
    """Approximation of ``pi_n(n z - beta/2)`` valid inside the rectangle.

    The combinations ``cos(theta) Ai - sin(theta) Bi`` are formed as
    ``-e^{i theta} w^2 Ai(w^2 F~) - e^{-i theta} w Ai(w F~)`` (``w`` the cube
    root of unity) with every factor in log space.
    """
    z = complex(z)
    tp = tp or turning_points(p.c)
    _check_singular(z, tp)
    n, beta = p.n, p.beta
    if n == 0:
        return AsymptoticResult(ScaledComplex.from_complex(1), Formula.INSIDE,
                                RegionTag(RegionKind.INSIDE, default_delta(tp)), z_eval=z)
    a, b = float(tp.a), float(tp.b)
    on_cut = z.imag == 0 and (z.real >= a or z.real <= 0)
    s = _side_for(z, side) if on_cut else None
    zs = z if s is None else complex(z.real, 0.0)

    _, log_Ft = log_airy_args(zs, n, tp, s, which="F_tilde")
    Ft = cmath.exp(log_Ft)
    ai1, aip1, _, _ = airy_log(OMEGA * Ft)
    ai2, aip2, _, _ = airy_log(OMEGA2 * Ft)

    th = theta(z, n, beta)
    e_plus = ScaledComplex.from_log(1j * th)
    e_minus = ScaledComplex.from_log(-1j * th)
    w1 = ScaledComplex.from_complex(OMEGA)
    w2 = ScaledComplex.from_complex(OMEGA2)
    # cos(th) Ai(F~) - sin(th) Bi(F~) and its derivative twin
    combo = -(e_plus * w2 * ai2) - e_minus * w1 * ai1
    combo_p = -(e_plus * w1 * aip2) - e_minus * w2 * aip1

    if z.real == 0:
        raise SingularPointError("the inside formula needs Re z > 0")
    lD = log_D(z, n, beta)
    v = v_linear(z, p.c)
    l = l_constant(tp)

    log_bz = _nudged_log(b - z, None if s is None else -s)
    log_az = _nudged_log(a - z, None if s is None else -s)
    log_z = _nudged_log(z, s)
    r, t = cmath.exp(0.5 * log_bz), cmath.exp(0.5 * log_az)
    P = ScaledComplex.from_log(beta * cmath.log((r + t) / 2))
    M = ScaledComplex.from_log(beta * cmath.log((r - t) / 2))
    denom = _log_pow(log_z, (beta - 1) / 2) * _log_pow(log_bz, 0.25) * _log_pow(log_az, 0.25)

    term1 = (P + M) / denom * _log_pow(log_Ft, 0.25) * combo
    term2 = (P - M) / denom * _log_pow(log_Ft, -0.25) * combo_p
    brace = term1 + term2

    log_pre = complex(n * math.log(n), n * math.pi) + _HALF_LOG_PI + lD + n * v / 2 + n * l / 2
    value = ScaledComplex.from_log(log_pre) * brace
    aux = AuxValues(phi_tilde=phi_tilde(zs, tp, s), F_tilde=Ft, theta=th, v=v, l=l,
                    D=ScaledComplex.from_log(lD), W=_safe_W(z, n, beta))
    return AsymptoticResult(value, Formula.INSIDE, RegionTag(RegionKind.INSIDE, default_delta(tp)),
                            aux, z_eval=z, side=s)


def _interior_direction(z: complex, delta: float) -> complex:
    # unit step from the nearest rectangle edge toward the rectangle interior
    x, y = z.real, z.imag
    candidates = [
        (abs(x - 0.0) + max(abs(y) - delta, 0.0), 1.0 + 0j),
        (abs(x - 1.0) + max(abs(y) - delta, 0.0), -1.0 + 0j),
        (abs(y - delta) + max(-x, x - 1, 0.0), -1j),
        (abs(y + delta) + max(-x, x - 1, 0.0), 1j),
    ]
    return min(candidates, key=lambda c: c[0])[1]


def pi_n_asym(z: complex, p: MeixnerParams, delta: float | None = None, side: int | None = None,
              prefer: str = "inside") -> AsymptoticResult:
    """Dispatch to the inside/outside formula according to the region of ``z``.

    Boundary points are moved ``NUDGE`` into the region named by ``prefer``;
    the moved point is reported as ``z_eval``.
    """
    z = complex(z)
    tp = turning_points(p.c)
    _check_singular(z, tp)
    delta = default_delta(tp) if delta is None else delta
    tag = classify_region(z, delta)
    if tag.kind is RegionKind.BOUNDARY:
        if prefer not in ("inside", "outside"):
            raise ValueError("prefer must be 'inside' or 'outside'")
        step = _interior_direction(z, delta)
        if prefer == "outside":
            step = -step
        z_eval = z + NUDGE * step
        use_inside = prefer == "inside"
    else:
        z_eval = z
        use_inside = tag.kind is RegionKind.INSIDE
    if use_inside:
        res = asym_inside(z_eval, p, side, tp)
    else:
        res = asym_outside(z_eval, p, side, tp)
    return AsymptoticResult(res.value, res.formula, tag, res.aux, z_eval=z_eval, side=res.side)
