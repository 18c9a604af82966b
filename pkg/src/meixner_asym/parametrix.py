"""Numerical checks of the outer and Airy parametrices.

Nothing here is on the evaluation path of the asymptotic formulas; these
are the matrix building blocks whose jump relations and large-``z``
behaviour the formulas rest on, made checkable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .auxiliary import SIDE_OFFSET, BranchError, TurningPoints, log_airy_args, log_D
from .scaled import ScaledComplex
from .special import OMEGA, OMEGA2, airy_log

__all__ = [
    "Matrix2C",
    "IDENTITY",
    "SIGMA1",
    "SIGMA3",
    "N_matrix",
    "A_matrix",
    "A_large_z_residual",
    "A_sector_check",
    "N_jump_residual",
    "A_jump_residual",
    "composite_jump_residual",
    "D_jump_residual",
]


@dataclass(frozen=True)
class Matrix2C:
    a11: complex
    a12: complex
    a21: complex
    a22: complex

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"Matrix2C entry {name} is not finite: {v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def diag(cls, d1: complex, d2: complex) -> "Matrix2C":
        return cls(d1, 0, 0, d2)

    def __matmul__(self, o: "Matrix2C") -> "Matrix2C":
        return Matrix2C(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )

    def __sub__(self, o: "Matrix2C") -> "Matrix2C":
        return Matrix2C(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)

    def scale(self, s: complex) -> "Matrix2C":
        return Matrix2C(s * self.a11, s * self.a12, s * self.a21, s * self.a22)

    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    def max_abs(self) -> float:
        return max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))

    def rows(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return (self.a11, self.a12), (self.a21, self.a22)


IDENTITY = Matrix2C(1, 0, 0, 1)
SIGMA1 = Matrix2C(0, 1, 1, 0)
SIGMA3 = Matrix2C(1, 0, 0, -1)
_LIMIT = Matrix2C(1, -1j, -1j, 1)


def _cpow(z: complex, alpha: float) -> complex:
    return cmath.exp(alpha * cmath.log(z)) if z != 0 else 0j


def N_matrix(z: complex, tp: TurningPoints, beta: float, side: int | None = None) -> Matrix2C:
    """Outer parametrix with principal branches; analytic off ``[a, b]``.

    On ``[a, b]`` itself ``side`` picks the limit from above (+1) or below (-1).
    """
    z = complex(z)
    a, b = float(tp.a), float(tp.b)
    if z.imag == 0 and a <= z.real <= b:
        if side not in (1, -1):
            raise BranchError(f"N: z={z!r} lies on [a, b]; pass side=+1 or side=-1")
        z = complex(z.real, side * SIDE_OFFSET * max(1.0, abs(z.real)))
    s, t = cmath.sqrt(z - a), cmath.sqrt(z - b)
    q = _cpow(z - a, 0.25) * _cpow(z - b, 0.25)
    up, dn = (s + t) / 2, (s - t) / 2
    e1 = _cpow(z - 1, (1 - beta) / 2)
    e2 = _cpow(z - 1, (beta - 1) / 2)
    return Matrix2C(
        e1 * _cpow(up, beta) / q,
        -1j * e2 * _cpow(dn, beta) / q,
        1j * e1 * _cpow(dn, 2 - beta) / q,
        e2 * _cpow(up, 2 - beta) / q,
    )


def _half(z: complex, side: int | None) -> int:
    if z.imag > 0:
        return 1
    if z.imag < 0:
        return -1
    if side not in (1, -1):
        raise BranchError(f"A: z={z!r} is real; pass side=+1 or side=-1")
    return side


def _a_scaled(z: complex, sign: int) -> list[ScaledComplex]:
    # entries of A in the rotated form, each as a ScaledComplex
    ai, aip, _, _ = airy_log(z)
    if sign > 0:
        r_ai, r_aip, _, _ = airy_log(OMEGA2 * z)
        return [ai, OMEGA2 * r_ai, 1j * aip, 1j * OMEGA * r_aip]
    r_ai, r_aip, _, _ = airy_log(OMEGA * z)
    return [ai, -OMEGA * r_ai, 1j * aip, -1j * OMEGA2 * r_aip]


def A_matrix(z: complex, side: int | None = None) -> Matrix2C:
    """Airy parametrix; ``side`` selects the half plane for real ``z``."""
    z = complex(z)
    e = _a_scaled(z, _half(z, side))
    return Matrix2C(*(complex(x) for x in e))


def _times_lower(e: list[ScaledComplex], sign: int) -> list[ScaledComplex]:
    # right-multiply by [[1, 0], [sign, 1]]
    return [e[0] + sign * e[1], e[1], e[2] + sign * e[3], e[3]]


def _normalised(z: complex, e: list[ScaledComplex]) -> Matrix2C:
    # 2 sqrt(pi) z^{sigma3/4} E e^{(2/3) z^{3/2} sigma3}
    zeta = ScaledComplex.from_log(1.5 * cmath.log(z)) * (2.0 / 3.0)
    zc = complex(zeta)
    q = ScaledComplex.from_log(0.25 * cmath.log(z))
    k = 2 * math.sqrt(math.pi)
    ep, em = ScaledComplex.from_log(zc), ScaledComplex.from_log(-zc)
    return Matrix2C(
        complex(e[0] * q * ep * k),
        complex(e[1] * q * em * k),
        complex(e[2] / q * ep * k),
        complex(e[3] / q * em * k),
    )


def A_large_z_residual(z: complex) -> float:
    """Max-entry distance between the normalised ``A(z)`` and its large-``z`` limit."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0:
        raise BranchError("large-z check needs z off the negative axis")
    m = _normalised(z, _a_scaled(z, 1 if z.imag >= 0 else -1))
    return (m - _LIMIT).max_abs()


def A_sector_check(z: complex, sign: int) -> float:
    """Residual of the large-``z`` form of ``A(z) [[1, 0], [sign, 1]]``.

    Valid for ``pi/3 < |arg z| <= pi``; ``sign`` is +1 in the upper half plane
    and -1 in the lower one.
    """
    z = complex(z)
    arg = cmath.phase(z)
    if not math.pi / 3 < abs(arg) <= math.pi:
        raise ValueError(f"arg z = {arg} is outside the sector pi/3 < |arg z| <= pi")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    half = 1 if arg > 0 else -1
    if z.imag == 0:
        half = sign
    if sign != half:
        raise ValueError("sign must match the half plane of z")
    e = _times_lower(_a_scaled(z, half), sign)
    return (_normalised(z, e) - _LIMIT).max_abs()


def N_jump_residual(x: float, tp: TurningPoints, beta: float, eps: float = 1e-8) -> float:
    """``|N_+ - N_- J_N|`` at ``x in (a, b)`` using ``x +- i eps``."""
    np_ = N_matrix(complex(x, eps), tp, beta)
    nm = N_matrix(complex(x, -eps), tp, beta)
    d = abs(x - 1)
    jump = Matrix2C(0, -(d ** (beta - 1)), d ** (1 - beta), 0)
    return (np_ - nm @ jump).max_abs()


def A_jump_residual(x: float) -> float:
    """``|A_+ - A_- [[1, -1], [0, 1]]|`` on the real line (relative to ``|A|``)."""
    ap = A_matrix(x, side=1)
    am = A_matrix(x, side=-1)
    r = (ap - am @ Matrix2C(1, -1, 0, 1)).max_abs()
    return r / max(ap.max_abs(), 1e-300)


def _composite(z: complex, n: int, tp: TurningPoints, beta: float) -> Matrix2C:
    log_F, _ = log_airy_args(z, n, tp, which="F")
    g = Matrix2C.diag(cmath.exp(log_F / 4), cmath.exp(-log_F / 4))
    e = Matrix2C.diag(_cpow(z - 1, (beta - 1) / 2), _cpow(z - 1, (1 - beta) / 2))
    return N_matrix(z, tp, beta) @ e @ Matrix2C(1, 1j, 1j, 1) @ g


def composite_jump_residual(x: float, n: int, tp: TurningPoints, beta: float, eps: float = 1e-8) -> float:
    """Relative mismatch of the jump-free combination across ``x in (1, b)``."""
    up = _composite(complex(x, eps), n, tp, beta)
    dn = _composite(complex(x, -eps), n, tp, beta)
    return (up - dn).max_abs() / up.max_abs()


def D_jump_residual(y: float, n: int, beta: float, eps: float = 1e-6) -> float:
    """``|D_-^{-1} D_+ - (1 - e^{+-2 i pi (n z - beta/2)})|`` at ``z = i y``.

    ``D_+`` is the limit from the left of the imaginary axis, ``D_-`` from the
    right; the sign in the exponent follows the sign of ``y``.
    """
    if y == 0:
        raise ValueError("the jump is taken away from the origin")
    z = complex(0, y)
    ratio = cmath.exp(log_D(z - eps, n, beta) - log_D(z + eps, n, beta))
    sgn = 1 if y > 0 else -1
    expected = 1 - cmath.exp(sgn * 2j * math.pi * (n * z - beta / 2))
    return abs(ratio - expected) / abs(expected)
