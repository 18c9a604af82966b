"""Overflow-safe complex numbers stored as (log-magnitude, phase)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

_TWO_PI = 2.0 * math.pi


def wrap_phase(phase: float) -> float:
    """Reduce an angle into (-pi, pi], sending -pi to +pi."""
    if -math.pi < phase <= math.pi:
        return float(phase)
    wrapped = math.remainder(phase, _TWO_PI)
    if wrapped <= -math.pi:
        wrapped += _TWO_PI
    return wrapped


@dataclass(frozen=True)
class ScaledComplex:
    """A complex number ``exp(log_mag) * exp(1j * phase)``.

    Products and quotients are exact additions in log space, so factors such
    as ``n**n`` or ``exp(n * v / 2)`` never materialise as floats.
    """

    log_mag: float = -math.inf
    phase: float = 0.0
    is_zero: bool = True

    def __post_init__(self):
        if self.is_zero:
            object.__setattr__(self, "log_mag", -math.inf)
            object.__setattr__(self, "phase", 0.0)
        else:
            if math.isnan(self.log_mag) or math.isnan(self.phase):
                raise ValueError("ScaledComplex components must not be NaN")
            object.__setattr__(self, "log_mag", float(self.log_mag))
            object.__setattr__(self, "phase", wrap_phase(self.phase))

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> "ScaledComplex":
        return cls()

    @classmethod
    def from_polar(cls, log_mag: float, phase: float) -> "ScaledComplex":
        if log_mag == -math.inf:
            return cls()
        return cls(log_mag, phase, False)

    @classmethod
    def from_complex(cls, value: complex) -> "ScaledComplex":
        value = complex(value)
        if value == 0:
            return cls()
        return cls(math.log(abs(value)), cmath.phase(value), False)

    @classmethod
    def from_log(cls, log_value: complex) -> "ScaledComplex":
        """The number ``exp(log_value)``."""
        log_value = complex(log_value)
        return cls(log_value.real, log_value.imag, False)

    @classmethod
    def coerce(cls, value) -> "ScaledComplex":
        if isinstance(value, ScaledComplex):
            return value
        return cls.from_complex(value)

    # conversion -------------------------------------------------------

    def log(self) -> complex:
        """Principal logarithm ``log_mag + 1j*phase``."""
        if self.is_zero:
            raise ValueError("log of zero")
        return complex(self.log_mag, self.phase)

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_mag), self.phase)

    def to_complex(self) -> complex:
        """Plain complex value; raises OverflowError when not representable."""
        return complex(self)

    def __abs__(self) -> float:
        return 0.0 if self.is_zero else math.exp(self.log_mag)

    # arithmetic -------------------------------------------------------

    def __mul__(self, other) -> "ScaledComplex":
        other = ScaledComplex.coerce(other)
        if self.is_zero or other.is_zero:
            return ScaledComplex()
        return ScaledComplex(self.log_mag + other.log_mag, self.phase + other.phase, False)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        other = ScaledComplex.coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a zero ScaledComplex")
        if self.is_zero:
            return ScaledComplex()
        return ScaledComplex(self.log_mag - other.log_mag, self.phase - other.phase, False)

    def __rtruediv__(self, other) -> "ScaledComplex":
        return ScaledComplex.coerce(other) / self

    def __neg__(self) -> "ScaledComplex":
        if self.is_zero:
            return self
        return ScaledComplex(self.log_mag, self.phase + math.pi, False)

    def __add__(self, other) -> "ScaledComplex":
        other = ScaledComplex.coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.log_mag >= other.log_mag else (other, self)
        ratio = cmath.rect(math.exp(small.log_mag - big.log_mag), small.phase - big.phase)
        total = 1.0 + ratio
        if total == 0:
            return ScaledComplex()
        return ScaledComplex(big.log_mag + math.log(abs(total)), big.phase + cmath.phase(total), False)

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledComplex":
        return self + (-ScaledComplex.coerce(other))

    def __rsub__(self, other) -> "ScaledComplex":
        return ScaledComplex.coerce(other) - self

    def __pow__(self, exponent: float) -> "ScaledComplex":
        """Real power on the stored (principal) phase."""
        if self.is_zero:
            if exponent > 0:
                return self
            raise ZeroDivisionError("non-positive power of zero")
        return ScaledComplex(self.log_mag * exponent, self.phase * exponent, False)

    def conjugate(self) -> "ScaledComplex":
        if self.is_zero:
            return self
        return ScaledComplex(self.log_mag, -self.phase, False)

    def relative_distance(self, other) -> float:
        """``|self - other| / |other|`` evaluated without leaving log space."""
        other = ScaledComplex.coerce(other)
        if other.is_zero:
            return 0.0 if self.is_zero else math.inf
        if self.is_zero:
            return 1.0
        ratio = cmath.rect(math.exp(self.log_mag - other.log_mag), self.phase - other.phase)
        return abs(ratio - 1.0)

    def __repr__(self) -> str:
        if self.is_zero:
            return "ScaledComplex(0)"
        return f"ScaledComplex(log_mag={self.log_mag!r}, phase={self.phase!r})"
