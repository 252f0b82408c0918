"""Regularized incomplete gamma functions, reciprocal Gamma, and erf.

P(s,x) comes from the inverse Laplace transform of the lower incomplete
gamma function, evaluated by the trapezoidal rule along the hyperbolic
contour crossing the real axis at the constant-phase point.  Q(s,x) uses the
branch of the contour between the branch point and the pole, which picks up
P - 1; the reciprocal Gamma is the x -> 0 limit of the same machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import backend
from .contours import crossing_point_lower, crossing_point_upper, strip_half_width
from .engine import ConvergenceReport, MeshSpec, TrapSum, refine
from .errors import AccuracyError, DomainError, PoleError

TWO_PI = 2.0 * math.pi

# Turnkey mesh policy: Tables 1-2 saturate by 1/h = 64, so point evaluations
# start at 1/16 and halve at most twice more.  Successive-level agreement is
# asked at 1e-14 because the saturated rows of the deepest table differ by
# ~1.6e-15 themselves.
DEFAULT_MESH = MeshSpec(h=1.0 / 16)
TURNKEY_LEVELS = 3
TURNKEY_AGREE = 1e-14
UPPER_LEVELS = 5
IMAG_RESIDUAL_BOUND = 1e-12


@dataclass(frozen=True)
class GammaEval:
    """A converged point evaluation with its diagnostics."""

    value: float
    terms_used: int
    imag_residual: float
    h_final: float


def _require_sx(s: float, x: float) -> None:
    if not (isinstance(s, (int, float)) and math.isfinite(s) and s > 0):
        raise DomainError(f"s must be a positive real, got {s!r}")
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise DomainError(f"x must be a positive real, got {x!r}")


def lower_p_integrand(s: float, x: float, c: Optional[float] = None) -> Callable[[float], complex]:
    """The complex integrand whose lattice sum is P(s, x), for the generic engine."""
    _require_sx(s, x)
    if c is None:
        c = crossing_point_lower(s, x)
    node = backend.kernels().pq_node

    def f(u: float) -> complex:
        g = node(s, x, c, u)
        # divide by 2 pi i: real part of the sum is P
        return complex(g.imag / TWO_PI, -g.real / TWO_PI)

    return f


def upper_q_integrand(s: float, x: float) -> Callable[[float], complex]:
    """Integrand whose lattice sum is Q(s, x) (negated upper-branch sum)."""
    _require_sx(s, x)
    c_unit = crossing_point_upper(s, x) / x
    node = backend.kernels().q_node

    def f(u: float) -> complex:
        g = node(s, x, c_unit, u)
        return complex(-g.imag / TWO_PI, g.real / TWO_PI)

    return f


def rgamma_integrand(s: float, c: Optional[float] = None) -> Callable[[float], complex]:
    if c is None:
        c = s + 1.0
    node = backend.kernels().rgamma_node

    def f(u: float) -> complex:
        g = node(s, c, u)
        return complex(g.imag / TWO_PI, -g.real / TWO_PI)

    return f


def _kernel_refine(raw_sum, h0, max_levels, agree_tol, diag_store):
    """Drive refine() over a fused kernel; stash the per-level diagnostic."""

    def sum_fn(h):
        value, diag, terms = raw_sum(h)
        diag_store[h] = diag
        return TrapSum(value=complex(value, 0.0), terms_used=terms,
                       truncated_left=True, truncated_right=True)

    return refine(h0=h0, max_levels=max_levels, agree_tol=agree_tol, sum_fn=sum_fn)


def _full_sum_eval(integrand, mesh, h0, max_levels, agree_tol):
    """Debug path: two-sided complex sum; the imaginary part is the residual."""
    report = refine(f=integrand, h0=h0, max_levels=max_levels, agree_tol=agree_tol,
                    mesh=mesh)
    final = report.levels[-1]
    return report, final.value.real, abs(final.value.imag)


def _finish(report: ConvergenceReport, value: float, residual: float) -> GammaEval:
    if residual > IMAG_RESIDUAL_BOUND * max(abs(value), 1.0):
        raise AccuracyError(
            f"imaginary residual {residual!r} exceeds bound for value {value!r}"
        )
    final = report.levels[-1]
    return GammaEval(value=value, terms_used=final.terms_used,
                     imag_residual=residual, h_final=final.h)


def p_report(s: float, x: float, mesh: Optional[MeshSpec] = None,
             max_levels: int = TURNKEY_LEVELS, agree_tol: float = TURNKEY_AGREE) -> ConvergenceReport:
    """Refinement report for P(s, x) from the fused kernel."""
    _require_sx(s, x)
    mesh = mesh or DEFAULT_MESH
    c = crossing_point_lower(s, x)
    k = backend.kernels()
    diags = {}
    report = _kernel_refine(
        lambda h: k.pq_lower_sum(s, x, c, h, mesh.trunc_tol, mesh.max_terms_per_side,
                                 mesh.consecutive_small),
        mesh.h, max_levels, agree_tol, diags)
    return report


def regularized_lower_p(s: float, x: float, mesh: Optional[MeshSpec] = None,
                        full_sum: bool = False) -> GammaEval:
    """P(s, x) = lower incomplete gamma over Gamma; lies in (0, 1).

    full_sum=True recomputes through the generic two-sided engine and reports
    the actually-discarded imaginary part as the residual (slower; used for
    diagnosis).  The default one-sided sweep is real by construction and its
    residual is the u = 0 phase-consistency measure.
    """
    _require_sx(s, x)
    mesh = mesh or DEFAULT_MESH
    c = crossing_point_lower(s, x)
    if full_sum:
        report, value, residual = _full_sum_eval(
            lower_p_integrand(s, x, c), mesh, mesh.h, TURNKEY_LEVELS, TURNKEY_AGREE)
        return _finish(report, value, residual)
    k = backend.kernels()
    diags = {}
    report = _kernel_refine(
        lambda h: k.pq_lower_sum(s, x, c, h, mesh.trunc_tol, mesh.max_terms_per_side,
                                 mesh.consecutive_small),
        mesh.h, TURNKEY_LEVELS, TURNKEY_AGREE, diags)
    final = report.levels[-1]
    return _finish(report, final.value.real, diags[final.h])


def upper_h0(s: float, x: float, h_default: float) -> float:
    """Starting mesh for the upper branch.

    The pole preimage sits ~|c/x| off the real u-axis when the unit-contour
    crossing is small, so the mesh must start below a quarter of the strip
    half-width for the sweep to converge at all.
    """
    d = strip_half_width(crossing_point_upper(s, x) / x)
    return min(h_default, d / 4.0)


def q_report(s: float, x: float, mesh: Optional[MeshSpec] = None,
             max_levels: int = UPPER_LEVELS, agree_tol: float = TURNKEY_AGREE) -> ConvergenceReport:
    _require_sx(s, x)
    mesh = mesh or DEFAULT_MESH
    c_unit = crossing_point_upper(s, x) / x
    k = backend.kernels()
    diags = {}
    return _kernel_refine(
        lambda h: k.q_upper_sum(s, x, c_unit, h, mesh.trunc_tol,
                                mesh.max_terms_per_side, mesh.consecutive_small),
        upper_h0(s, x, mesh.h), max_levels, agree_tol, diags)


def regularized_upper_q(s: float, x: float, mesh: Optional[MeshSpec] = None,
                        full_sum: bool = False) -> GammaEval:
    """Q(s, x) = 1 - P(s, x), computed independently on the upper branch."""
    _require_sx(s, x)
    mesh = mesh or DEFAULT_MESH
    h0 = upper_h0(s, x, mesh.h)
    if full_sum:
        report, value, residual = _full_sum_eval(
            upper_q_integrand(s, x), mesh, h0, UPPER_LEVELS, TURNKEY_AGREE)
        return _finish(report, value, residual)
    c_unit = crossing_point_upper(s, x) / x
    k = backend.kernels()
    diags = {}
    report = _kernel_refine(
        lambda h: k.q_upper_sum(s, x, c_unit, h, mesh.trunc_tol,
                                mesh.max_terms_per_side, mesh.consecutive_small),
        h0, UPPER_LEVELS, TURNKEY_AGREE, diags)
    final = report.levels[-1]
    return _finish(report, final.value.real, diags[final.h])


def rgamma_report(s: float, mesh: Optional[MeshSpec] = None,
                  max_levels: int = TURNKEY_LEVELS, agree_tol: float = TURNKEY_AGREE) -> ConvergenceReport:
    if not (isinstance(s, (int, float)) and math.isfinite(s) and s > -1.0):
        raise DomainError(f"reciprocal gamma needs s > -1, got {s!r}")
    mesh = mesh or DEFAULT_MESH
    c = s + 1.0
    k = backend.kernels()
    diags = {}
    return _kernel_refine(
        lambda h: k.rgamma_sum(s, c, h, mesh.trunc_tol, mesh.max_terms_per_side,
                               mesh.consecutive_small),
        mesh.h, max_levels, agree_tol, diags)


def reciprocal_gamma(s: float, mesh: Optional[MeshSpec] = None,
                     full_sum: bool = False) -> GammaEval:
    """1/Gamma(s) for s > -1; zero at s = 0 (the only pole in range)."""
    if not (isinstance(s, (int, float)) and math.isfinite(s) and s > -1.0):
        raise DomainError(f"reciprocal gamma needs s > -1, got {s!r}")
    mesh = mesh or DEFAULT_MESH
    c = s + 1.0
    if full_sum:
        report, value, residual = _full_sum_eval(
            rgamma_integrand(s, c), mesh, mesh.h, TURNKEY_LEVELS, TURNKEY_AGREE)
        return _finish(report, value, residual)
    k = backend.kernels()
    diags = {}
    report = _kernel_refine(
        lambda h: k.rgamma_sum(s, c, h, mesh.trunc_tol, mesh.max_terms_per_side,
                               mesh.consecutive_small),
        mesh.h, TURNKEY_LEVELS, TURNKEY_AGREE, diags)
    final = report.levels[-1]
    return _finish(report, final.value.real, diags[final.h])


POLE_RGAMMA_FLOOR = 1e-14


def invert_rgamma(value: float, s: float) -> float:
    """Gamma from a computed 1/Gamma, guarding the pole and overflow.

    1/Gamma vanishes only at the in-range pole s = 0, where the contour sum
    bottoms out at rounding noise; legitimate values for large s shrink
    smoothly (1/Gamma(20) ~ 8e-18), so the flat floor applies only near the
    pole, plus wherever the reciprocal leaves double range.
    """
    if value == 0.0 or (abs(value) < POLE_RGAMMA_FLOOR and abs(s) < 1e-7):
        raise PoleError(f"Gamma pole at s={s!r}: 1/Gamma = {value!r}")
    result = 1.0 / value
    if not math.isfinite(result):
        raise PoleError(f"Gamma overflows a double at s={s!r}: 1/Gamma = {value!r}")
    return result


def gamma(s: float, mesh: Optional[MeshSpec] = None) -> float:
    """Gamma(s) as the reciprocal of the contour-computed 1/Gamma."""
    return invert_rgamma(reciprocal_gamma(s, mesh).value, s)


def lower_incomplete_gamma(s: float, x: float, mesh: Optional[MeshSpec] = None) -> float:
    """gamma(s, x) = P(s, x) * Gamma(s); x = 0 is rejected, use the definition."""
    _require_sx(s, x)
    return regularized_lower_p(s, x, mesh).value * gamma(s, mesh)


def erf(x: float, mesh: Optional[MeshSpec] = None) -> float:
    """Error function via erf(|x|) = P(1/2, x^2), extended oddly."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise DomainError(f"erf needs a finite real, got {x!r}")
    if x == 0.0:
        return 0.0
    p = regularized_lower_p(0.5, x * x, mesh).value
    return p if x > 0 else -p
