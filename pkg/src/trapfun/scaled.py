"""Split significand/decimal-exponent representation.

Results like 1.615e+44 are printed by the convergence tables in split form
(significand against a x10^k column header), and scaled evaluations can leave
the double range entirely, so the split form is the library's carrier for
"value" wherever a table or the CLI is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

LN10 = math.log(10.0)


@dataclass(frozen=True)
class ScaledReal:
    """A value significand * 10**exp10 with |significand| in [1, 10) or 0.

    The significand is negative for negative values (the CLI serializes every
    result in split form, including odd functions like erf); operations whose
    contracts promise a nonnegative result keep significand in [1, 10) or 0.
    """

    significand: float
    exp10: int

    def __post_init__(self):
        if not math.isfinite(self.significand):
            raise DomainError("significand must be finite")
        if self.significand != 0.0 and not 1.0 <= abs(self.significand) < 10.0:
            raise DomainError(f"significand {self.significand!r} outside [1,10)")

    @classmethod
    def from_float(cls, value: float) -> "ScaledReal":
        if value == 0.0:
            return cls(0.0, 0)
        if not math.isfinite(value):
            raise DomainError(f"cannot represent {value!r}")
        e = math.floor(math.log10(abs(value)))
        sig = value / 10.0 ** e
        # log10 rounding can land one decade off
        while abs(sig) >= 10.0:
            sig /= 10.0
            e += 1
        while abs(sig) < 1.0:
            sig *= 10.0
            e -= 1
        return cls(sig, e)

    @classmethod
    def from_ln(cls, ln_magnitude: float, negative: bool = False) -> "ScaledReal":
        """Build from a natural-log magnitude, for values outside double range.

        Significand accuracy degrades like |ln_magnitude| * eps, so this path
        is only used when from_float cannot represent the value.
        """
        if not math.isfinite(ln_magnitude):
            raise DomainError("ln magnitude must be finite")
        l10 = ln_magnitude / LN10
        e = math.floor(l10)
        sig = 10.0 ** (l10 - e)
        while sig >= 10.0:
            sig /= 10.0
            e += 1
        while sig < 1.0:
            sig *= 10.0
            e -= 1
        return cls(-sig if negative else sig, int(e))

    def to_float(self) -> float:
        """Plain float value; raises OverflowError outside double range."""
        return self.significand * 10.0 ** self.exp10

    __float__ = to_float

    def __mul__(self, other):
        if isinstance(other, ScaledReal):
            return ScaledReal.from_float(self.significand * other.significand).shift(
                self.exp10 + other.exp10
            )
        if isinstance(other, (int, float)):
            return ScaledReal.from_float(self.significand * float(other)).shift(self.exp10)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ScaledReal):
            if other.significand == 0.0:
                raise ZeroDivisionError("division by zero ScaledReal")
            return ScaledReal.from_float(self.significand / other.significand).shift(
                self.exp10 - other.exp10
            )
        if isinstance(other, (int, float)):
            return ScaledReal.from_float(self.significand / float(other)).shift(self.exp10)
        return NotImplemented

    def shift(self, delta_exp: int) -> "ScaledReal":
        if self.significand == 0.0:
            return self
        return ScaledReal(self.significand, self.exp10 + delta_exp)

    def __repr__(self):
        return f"ScaledReal({self.significand!r}e{self.exp10:+d})"


def as_scaled(value) -> ScaledReal:
    if isinstance(value, ScaledReal):
        return value
    if isinstance(value, complex):
        value = value.real
    return ScaledReal.from_float(float(value))


def rel_diff(a, b) -> float:
    """Relative difference |a-b| / max(|a|,|b|), tolerant of mixed types.

    ScaledReal operands are compared in split form so values beyond double
    range still produce a meaningful number.
    """
    if isinstance(a, ScaledReal) or isinstance(b, ScaledReal):
        sa, sb = as_scaled(a), as_scaled(b)
        if sa.significand == 0.0 and sb.significand == 0.0:
            return 0.0
        if sa.significand == 0.0 or sb.significand == 0.0:
            return 1.0
        de = sa.exp10 - sb.exp10
        if abs(de) > 30:
            return 1.0
        va = sa.significand * 10.0 ** de
        vb = sb.significand
        return abs(va - vb) / max(abs(va), abs(vb))
    if isinstance(a, complex) or isinstance(b, complex):
        a, b = complex(a), complex(b)
        denom = max(abs(a), abs(b))
        if denom == 0.0:
            return 0.0
        d = abs(a - b) / denom
        return d if math.isfinite(d) else math.inf
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        return math.inf
    denom = max(abs(a), abs(b))
    if denom == 0.0:
        return 0.0
    return abs(a - b) / denom
