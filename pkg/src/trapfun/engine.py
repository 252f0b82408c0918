"""Trapezoidal summation over the integer lattice, with mesh refinement.

The core approximation is ``integral f over R ~ h * sum_n f(n h)``, summed
outward from n = 0 with each tail truncated once its terms stop mattering.
For analytic integrands that decay at infinity the error falls geometrically
as h shrinks, so a mesh-halving driver doubles the correct digits (or better)
per level until double precision saturates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, List, NamedTuple, Optional, Union

from .errors import DomainError, NonFiniteTerm, TermCapExceeded
from .scaled import ScaledReal, rel_diff

# A tail stops once `consecutive_small` successive terms fall below
# trunc_tol**TAIL_MARGIN_POWER * |sum|.  The extra half power is the margin
# that keeps the discarded tail far below trunc_tol even when many terms sit
# just under the cut; with the 1e-16 default it stops tails at 1e-24 * |sum|.
TAIL_MARGIN_POWER = 1.5

DEFAULT_AGREE_TOL = 1e-15


@dataclass(frozen=True)
class MeshSpec:
    """Control knobs for one lattice sum.

    h is the mesh spacing; trunc_tol the fractional truncation threshold
    (terms are discarded only when they are trunc_tol**1.5 of the running
    sum, see TAIL_MARGIN_POWER); max_terms_per_side caps each tail;
    consecutive_small is how many successive sub-threshold terms end a tail,
    guarding against integrands that dip through zero.
    """

    h: float
    trunc_tol: float = 1e-16
    max_terms_per_side: int = 100000
    consecutive_small: int = 2

    def __post_init__(self):
        if not (isinstance(self.h, (int, float)) and math.isfinite(self.h) and self.h > 0):
            raise DomainError(f"mesh size h must be a positive real, got {self.h!r}")
        if not 0.0 < self.trunc_tol < 1.0:
            raise DomainError(f"trunc_tol must lie in (0, 1), got {self.trunc_tol!r}")
        if self.max_terms_per_side < 1:
            raise DomainError("max_terms_per_side must be >= 1")
        if self.consecutive_small < 1:
            raise DomainError("consecutive_small must be >= 1")

    def with_h(self, h: float) -> "MeshSpec":
        return replace(self, h=h)

    @property
    def tail_threshold_factor(self) -> float:
        return self.trunc_tol ** TAIL_MARGIN_POWER


@dataclass(frozen=True)
class TrapSum:
    """Result of one truncated lattice sum."""

    value: complex
    terms_used: int
    truncated_left: bool
    truncated_right: bool


class Level(NamedTuple):
    h: float
    value: Union[complex, ScaledReal]
    terms_used: int


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-level record of a mesh-halving run; one table column's worth."""

    levels: List[Level]
    converged: bool
    final_value: Union[complex, ScaledReal]
    relative_change: float


def _check_finite(z: complex, u: float) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteTerm(f"integrand returned {z!r} at u={u!r}")
    return z


def sum_trapezoid(f: Callable[[float], complex], mesh: MeshSpec) -> TrapSum:
    """h * sum of f over the lattice {n h}, expanding outward from n = 0.

    Evaluation order is deterministic: n = 0, then +1, -1, +2, -2, ...
    Each direction stops independently once `mesh.consecutive_small`
    successive terms satisfy |h f(nh)| < tail_factor * max(|sum|, trunc_tol).
    Accumulation is compensated (Kahan) in that fixed order, so repeat calls
    are bit-identical.
    """
    h = mesh.h
    tol = mesh.trunc_tol
    tail = mesh.tail_threshold_factor
    cap = mesh.max_terms_per_side
    ksmall = mesh.consecutive_small

    total = h * _check_finite(complex(f(0.0)), 0.0)
    comp = 0j
    terms = 1
    n_right = 0
    n_left = 0
    small_right = 0
    small_left = 0

    while small_right < ksmall or small_left < ksmall:
        if small_right < ksmall:
            n_right += 1
            if n_right > cap:
                raise TermCapExceeded(
                    f"right tail exceeded {cap} terms at h={h!r} without truncating"
                )
            u = n_right * h
            term = h * _check_finite(complex(f(u)), u)
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
            terms += 1
            if abs(term) < tail * max(abs(total), tol):
                small_right += 1
            else:
                small_right = 0
        if small_left < ksmall:
            n_left += 1
            if n_left > cap:
                raise TermCapExceeded(
                    f"left tail exceeded {cap} terms at h={h!r} without truncating"
                )
            u = -n_left * h
            term = h * _check_finite(complex(f(u)), u)
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
            terms += 1
            if abs(term) < tail * max(abs(total), tol):
                small_left += 1
            else:
                small_left = 0

    return TrapSum(value=total, terms_used=terms, truncated_left=True, truncated_right=True)


def _cached(f):
    memo = {}

    def wrapper(u):
        v = memo.get(u)
        if v is None:
            v = f(u)
            memo[u] = v
        return v

    return wrapper


def refine(
    f: Optional[Callable[[float], complex]] = None,
    h0: float = 1.0,
    max_levels: int = 8,
    agree_tol: float = DEFAULT_AGREE_TOL,
    mesh: Optional[MeshSpec] = None,
    *,
    sum_fn: Optional[Callable[[float], TrapSum]] = None,
    cache: bool = False,
) -> ConvergenceReport:
    """Run sum_trapezoid at h0, h0/2, h0/4, ... until two successive levels
    agree to `agree_tol` relative (converged) or max_levels is exhausted.

    Either an integrand `f` or a prebuilt `sum_fn(h) -> TrapSum` drives the
    levels; `cache=True` memoizes integrand nodes, which is exact across
    levels because the lattice at h/2 contains the lattice at h.
    """
    if (f is None) == (sum_fn is None):
        raise DomainError("provide exactly one of f or sum_fn")
    if not (h0 > 0 and math.isfinite(h0)):
        raise DomainError(f"h0 must be positive, got {h0!r}")
    if max_levels < 2:
        raise DomainError("max_levels must be >= 2")

    if sum_fn is None:
        base = mesh if mesh is not None else MeshSpec(h=h0)
        g = _cached(f) if cache else f

        def sum_fn(h):
            return sum_trapezoid(g, base.with_h(h))

    levels: List[Level] = []
    rel = math.inf
    converged = False
    h = h0
    for k in range(max_levels):
        try:
            trap = sum_fn(h)
        except (TermCapExceeded, NonFiniteTerm) as exc:
            raise type(exc)(f"level {k} (h={h!r}): {exc}") from exc
        levels.append(Level(h=h, value=trap.value, terms_used=trap.terms_used))
        if k > 0:
            rel = rel_diff(levels[-1].value, levels[-2].value)
            if rel <= agree_tol:
                converged = True
                break
        h *= 0.5

    return ConvergenceReport(
        levels=levels,
        converged=converged,
        final_value=levels[-1].value,
        relative_change=rel,
    )
