"""The hyperbolic inverse-Laplace contour and its real-axis crossing points.

The contour y(u) = c + 1 - cosh(u) + i sinh(u) runs from deep in the third
quadrant up through y = c on the positive or negative real axis and out into
the second quadrant.  With c at the integrand's constant-phase point the
trapezoidal rule converges geometrically along it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ContourSample:
    """Contour point and derivative at parameter u."""

    u: float
    y: complex
    dy_du: complex


class BranchKind(Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class BranchSelector:
    """Which side of the pole at y = 0 the contour crosses the real axis.

    LOWER (c > 0) yields the lower incomplete ratio P; UPPER (-x < c < 0)
    passes between the branch point at -x and the pole and yields P - 1.
    """

    kind: BranchKind
    c: float

    def __post_init__(self):
        if self.kind is BranchKind.LOWER and not self.c > 0:
            raise DomainError(f"lower branch requires c > 0, got {self.c!r}")
        if self.kind is BranchKind.UPPER and not self.c < 0:
            raise DomainError(f"upper branch requires c < 0, got {self.c!r}")

    def validate_for(self, x: float) -> None:
        if self.kind is BranchKind.UPPER and not -x < self.c < 0:
            raise DomainError(f"upper branch needs -x < c < 0, got c={self.c!r}, x={x!r}")


def _check_sx(s: float, x: float) -> None:
    if not (isinstance(s, (int, float)) and math.isfinite(s) and s > 0):
        raise DomainError(f"s must be a positive real, got {s!r}")
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise DomainError(f"x must be a positive real, got {x!r}")


def crossing_point_lower(s: float, x: float) -> float:
    """Constant-phase crossing for the lower branch.

    c = [(s + 1 - x) + sqrt((s + 1 - x)^2 + 4x)] / 2, strictly positive for
    all s, x > 0 and tending to s + 1 as x -> 0.
    """
    _check_sx(s, x)
    d = s + 1.0 - x
    return 0.5 * (d + math.sqrt(d * d + 4.0 * x))


def crossing_point_upper(s: float, x: float) -> float:
    """Constant-phase crossing for the upper branch.

    The same quadratic that fixes the lower crossing has a second, negative
    root c = [(s + 1 - x) - sqrt((s + 1 - x)^2 + 4x)] / 2 = -x / c_lower.
    Since c_lower > 1 for every s, x > 0 the root lies strictly inside the
    admissible interval (-x, 0).
    """
    _check_sx(s, x)
    d = s + 1.0 - x
    root = math.sqrt(d * d + 4.0 * x)
    # -x / c_lower is the numerically stable form when the subtraction cancels
    c = -2.0 * x / (d + root)
    if c <= -x:
        # c_lower rounded to 1 (possible only for denormal-scale s)
        c = -x * (1.0 - 1e-12)
    return c


def select_branch(kind: BranchKind, s: float, x: float) -> BranchSelector:
    if kind is BranchKind.LOWER:
        return BranchSelector(kind, crossing_point_lower(s, x))
    return BranchSelector(kind, crossing_point_upper(s, x))


def sample(c: float, u: float) -> ContourSample:
    """Contour point y(u) = c + 1 - cosh u + i sinh u and its derivative.

    Never raises: past |u| ~ 710 the hyperbolics leave double range and the
    sample saturates to signed infinities.
    """
    try:
        ch = math.cosh(u)
        sh = math.sinh(u)
    except OverflowError:
        ch = math.inf
        sh = math.copysign(math.inf, u)
    return ContourSample(u=u, y=complex(c + 1.0 - ch, sh), dy_du=complex(-sh, ch))


def strip_half_width(c_unit: float) -> float:
    """Analyticity strip half-width of the upper-branch integrand in u.

    For the unit contour crossing at c in (-1, 0) the pole (y = 0) and branch
    point (y = -1) pull singular preimages onto the imaginary u-axis at
    cos w + sin w = 1 + c and 2 + c respectively; the nearer one limits how
    large the mesh may be.  Capped at pi/4 where no on-axis preimage exists.
    """
    d = math.pi / 4.0
    for target in (1.0 + c_unit, 2.0 + c_unit):
        if abs(target) <= SQRT2:
            w = abs(math.asin(target / SQRT2) - math.pi / 4.0)
            if w > 0.0:
                d = min(d, w)
    return d
