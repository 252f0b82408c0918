"""Confluent hypergeometric functions and the Gauss 2F1 for real z < 1.

The Euler integral over (0,1) is mapped to the whole real line twice over by
t = (1 + tanh u)/2, u = sinh v; the endpoint singularities t^{a-1} and
(1-t)^{b-1} become double-exponential decay in v, so the trapezoidal rule
converges geometrically with no special endpoint handling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import backend
from .engine import ConvergenceReport, MeshSpec, TrapSum, refine
from .errors import DomainError, OverflowGuard
from .gamma_funcs import gamma
from .scaled import ScaledReal

DEFAULT_MESH = MeshSpec(h=1.0 / 16)
TURNKEY_LEVELS = 5
TURNKEY_AGREE = 1e-14
PLAIN_X_LIMIT = 700.0  # e^x must stay inside double range for the plain form
SCALED_X_LIMIT = 1.0e6


@dataclass(frozen=True)
class ChfParams:
    """Parameters of C(a, b; x); a, b > 0 keeps the endpoints integrable."""

    a: float
    b: float
    x: float

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive real, got {v!r}")
        if not (isinstance(self.x, (int, float)) and math.isfinite(self.x)):
            raise DomainError(f"x must be a finite real, got {self.x!r}")


def _to_scaled(acc: float, shift: float) -> ScaledReal:
    if acc == 0.0:
        return ScaledReal(0.0, 0)
    if acc < 0.0:
        # positive integrand; a negative accumulation means rounding dust
        return ScaledReal(0.0, 0)
    if shift == 0.0:
        return ScaledReal.from_float(acc)
    return ScaledReal.from_ln(shift + math.log(acc))


def _chf_sum_fn(p: ChfParams, scaled: bool, mesh: MeshSpec):
    k = backend.kernels()

    def sum_fn(h: float) -> TrapSum:
        acc, shift, terms = k.chf_sum(p.a, p.b, p.x, scaled, h, mesh.trunc_tol,
                                      mesh.max_terms_per_side, mesh.consecutive_small)
        return TrapSum(value=_to_scaled(acc, shift), terms_used=terms,
                       truncated_left=True, truncated_right=True)

    return sum_fn


def chf_report(p: ChfParams, mesh: Optional[MeshSpec] = None, scaled: bool = False,
               max_levels: int = TURNKEY_LEVELS, agree_tol: float = TURNKEY_AGREE) -> ConvergenceReport:
    """Refinement report for C(a,b;x) (or its e^-x scaled variant)."""
    mesh = mesh or DEFAULT_MESH
    limit = SCALED_X_LIMIT if scaled else PLAIN_X_LIMIT
    if abs(p.x) > limit:
        raise DomainError(f"|x| <= {limit:g} required, got {p.x!r}")
    return refine(h0=mesh.h, max_levels=max_levels, agree_tol=agree_tol,
                  sum_fn=_chf_sum_fn(p, scaled, mesh))


def chf_c(p: ChfParams, mesh: Optional[MeshSpec] = None) -> ScaledReal:
    """C(a, b; x) = integral over (0,1) of t^{a-1} (1-t)^{b-1} e^{x t}."""
    return chf_report(p, mesh).final_value


def chf_c_scaled(p: ChfParams, mesh: Optional[MeshSpec] = None) -> ScaledReal:
    """e^{-x} C(a, b; x); usable far beyond the plain form's x range."""
    return chf_report(p, mesh, scaled=True).final_value


def chf_integrand(p: ChfParams, scaled: bool = False) -> Callable[[float], float]:
    """Node function in v, for the generic engine and cross-checks."""
    node = backend.kernels().chf_node
    return lambda v: node(p.a, p.b, p.x, scaled, v)


def beta(a: float, b: float, mesh: Optional[MeshSpec] = None) -> float:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), all three contour-computed."""
    for name, v in (("a", a), ("b", b)):
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be a positive real, got {v!r}")
    return gamma(a, mesh) * gamma(b, mesh) / gamma(a + b, mesh)


def kummer_m(a: float, c: float, x: float, mesh: Optional[MeshSpec] = None) -> ScaledReal:
    """Kummer's M(a, c; x) = C(a, c-a; x) / B(a, c-a); equals 1 at x = 0."""
    if not (isinstance(a, (int, float)) and math.isfinite(a) and a > 0):
        raise DomainError(f"a must be a positive real, got {a!r}")
    if not (isinstance(c, (int, float)) and math.isfinite(c) and c > a):
        raise DomainError(f"c > a required, got c={c!r}, a={a!r}")
    p = ChfParams(a, c - a, x)
    return chf_c(p, mesh) / beta(a, c - a, mesh)


def f21_report(a: float, b: float, c: float, z: float, mesh: Optional[MeshSpec] = None,
               max_levels: int = TURNKEY_LEVELS, agree_tol: float = TURNKEY_AGREE) -> ConvergenceReport:
    _check_f21(a, b, c, z)
    mesh = mesh or DEFAULT_MESH
    k = backend.kernels()
    cb = c - b

    def sum_fn(h: float) -> TrapSum:
        acc, shift, terms = k.f21_sum(a, b, cb, z, h, mesh.trunc_tol,
                                      mesh.max_terms_per_side, mesh.consecutive_small)
        return TrapSum(value=_to_scaled(acc, shift), terms_used=terms,
                       truncated_left=True, truncated_right=True)

    return refine(h0=mesh.h, max_levels=max_levels, agree_tol=agree_tol, sum_fn=sum_fn)


def _check_f21(a: float, b: float, c: float, z: float) -> None:
    if not (isinstance(a, (int, float)) and math.isfinite(a)):
        raise DomainError(f"a must be a finite real, got {a!r}")
    if not (isinstance(b, (int, float)) and math.isfinite(b) and b > 0):
        raise DomainError(f"b must be a positive real, got {b!r}")
    if not (isinstance(c, (int, float)) and math.isfinite(c) and c > b):
        raise DomainError(f"c > b required, got c={c!r}, b={b!r}")
    if not (isinstance(z, (int, float)) and math.isfinite(z) and z < 1.0):
        raise DomainError(f"z < 1 required, got {z!r}")


def gauss_2f1(a: float, b: float, c: float, z: float,
              mesh: Optional[MeshSpec] = None) -> float:
    """2F1(a, b; c; z) for real z < 1 via the Euler integral in b and c - b."""
    report = f21_report(a, b, c, z, mesh)
    value = report.final_value / beta(b, c - b, mesh)
    try:
        return value.to_float()
    except OverflowError as exc:
        raise OverflowGuard(f"2F1({a}, {b}; {c}; {z}) overflows a double") from exc


def f21_integrand(a: float, b: float, c: float, z: float) -> Callable[[float], float]:
    _check_f21(a, b, c, z)
    node = backend.kernels().f21_node
    cb = c - b
    return lambda v: node(a, b, cb, z, v)
