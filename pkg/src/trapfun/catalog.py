"""Uniform h-indexed evaluation of every public function, for the CLI.

Each catalog entry turns a named function plus parameters into a level
function mapping mesh size h to (value, terms).  Composite quantities (beta,
Kummer M, 2F1, the unregularized gamma) combine their components at the same
h, so the refinement driver and digits-gained reporting apply to all of them
uniformly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union

from . import backend
from .contours import crossing_point_lower, crossing_point_upper
from .engine import ConvergenceReport, MeshSpec, TrapSum, refine
from .errors import DomainError
from .gamma_funcs import invert_rgamma, upper_h0
from .hypergeom import ChfParams, PLAIN_X_LIMIT, SCALED_X_LIMIT, _to_scaled
from .scaled import ScaledReal

LevelFn = Callable[[float], Tuple[Union[float, ScaledReal], int]]

GAMMA_LEVELS = 3
UPPER_LEVELS = 5
CHF_LEVELS = 5
DEFAULT_AGREE = 1e-14


@dataclass(frozen=True)
class FunctionSpec:
    name: str
    param_names: Tuple[str, ...]
    levels: int
    build: Callable[[Dict[str, float], MeshSpec], LevelFn]
    start_h: Callable[[Dict[str, float], MeshSpec], float]


def _default_h(params: Dict[str, float], mesh: MeshSpec) -> float:
    return mesh.h


def _pq_level(params, mesh):
    s, x = params["s"], params["x"]
    c = crossing_point_lower(s, x)
    k = backend.kernels()

    def level(h):
        v, _, terms = k.pq_lower_sum(s, x, c, h, mesh.trunc_tol,
                                     mesh.max_terms_per_side, mesh.consecutive_small)
        return v, terms

    return level


def _q_level(params, mesh):
    s, x = params["s"], params["x"]
    cu = crossing_point_upper(s, x) / x
    k = backend.kernels()

    def level(h):
        v, _, terms = k.q_upper_sum(s, x, cu, h, mesh.trunc_tol,
                                    mesh.max_terms_per_side, mesh.consecutive_small)
        return v, terms

    return level


def _require_rgamma_s(s):
    if not (isinstance(s, (int, float)) and math.isfinite(s) and s > -1.0):
        raise DomainError(f"s > -1 required, got {s!r}")


def _rgamma_raw(s, mesh):
    _require_rgamma_s(s)
    c = s + 1.0
    k = backend.kernels()
    return lambda h: k.rgamma_sum(s, c, h, mesh.trunc_tol,
                                  mesh.max_terms_per_side, mesh.consecutive_small)


def _rgamma_level(params, mesh):
    raw = _rgamma_raw(params["s"], mesh)

    def level(h):
        v, _, terms = raw(h)
        return v, terms

    return level


def _gamma_level(params, mesh):
    s = params["s"]
    raw = _rgamma_raw(s, mesh)

    def level(h):
        v, _, terms = raw(h)
        return invert_rgamma(v, s), terms

    return level


def _lgamma_lower_level(params, mesh):
    p_level = _pq_level(params, mesh)
    g_level = _gamma_level({"s": params["s"]}, mesh)

    def level(h):
        pv, pt = p_level(h)
        gv, gt = g_level(h)
        return pv * gv, pt + gt

    return level


def _erf_level(params, mesh):
    x = params["x"]
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise DomainError(f"erf needs a finite real, got {x!r}")
    if x == 0.0:
        return lambda h: (0.0, 1)
    sign = 1.0 if x > 0 else -1.0
    p_level = _pq_level({"s": 0.5, "x": x * x}, mesh)

    def level(h):
        v, terms = p_level(h)
        return sign * v, terms

    return level


def _erf_start_h(params, mesh):
    return mesh.h


def _beta_level_parts(a, b, mesh):
    for name, v in (("a", a), ("b", b)):
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be a positive real, got {v!r}")
    ra = _rgamma_raw(a, mesh)
    rb = _rgamma_raw(b, mesh)
    rab = _rgamma_raw(a + b, mesh)

    def level(h):
        va, _, ta = ra(h)
        vb, _, tb = rb(h)
        vab, _, tab = rab(h)
        value = vab * invert_rgamma(va, a) * invert_rgamma(vb, b)
        return value, ta + tb + tab

    return level


def _beta_level(params, mesh):
    return _beta_level_parts(params["a"], params["b"], mesh)


def _chf_level(params, mesh, scaled=False):
    p = ChfParams(params["a"], params["b"], params["x"])
    limit = SCALED_X_LIMIT if scaled else PLAIN_X_LIMIT
    if abs(p.x) > limit:
        raise DomainError(f"|x| <= {limit:g} required, got {p.x!r}")
    k = backend.kernels()

    def level(h):
        acc, shift, terms = k.chf_sum(p.a, p.b, p.x, scaled, h, mesh.trunc_tol,
                                      mesh.max_terms_per_side, mesh.consecutive_small)
        return _to_scaled(acc, shift), terms

    return level


def _kummer_level(params, mesh):
    a, c, x = params["a"], params["c"], params["x"]
    if not (isinstance(a, (int, float)) and math.isfinite(a) and a > 0):
        raise DomainError(f"a must be a positive real, got {a!r}")
    if not (isinstance(c, (int, float)) and math.isfinite(c) and c > a):
        raise DomainError(f"c > a required, got c={c!r}, a={a!r}")
    chf_level = _chf_level({"a": a, "b": c - a, "x": x}, mesh)
    b_level = _beta_level_parts(a, c - a, mesh)

    def level(h):
        cv, ct = chf_level(h)
        bv, bt = b_level(h)
        return cv / bv, ct + bt

    return level


def _f21_level(params, mesh):
    from .hypergeom import _check_f21

    a, b, c, z = params["a"], params["b"], params["c"], params["z"]
    _check_f21(a, b, c, z)
    cb = c - b
    k = backend.kernels()
    b_level = _beta_level_parts(b, cb, mesh)

    def level(h):
        acc, shift, terms = k.f21_sum(a, b, cb, z, h, mesh.trunc_tol,
                                      mesh.max_terms_per_side, mesh.consecutive_small)
        bv, bt = b_level(h)
        return (_to_scaled(acc, shift) / bv).to_float(), terms + bt

    return level


def _upper_start_h(params, mesh):
    return upper_h0(params["s"], params["x"], mesh.h)


FUNCTIONS: Dict[str, FunctionSpec] = {
    "gamma-p": FunctionSpec("gamma-p", ("s", "x"), GAMMA_LEVELS, _pq_level, _default_h),
    "gamma-q": FunctionSpec("gamma-q", ("s", "x"), UPPER_LEVELS, _q_level, _upper_start_h),
    "gamma": FunctionSpec("gamma", ("s",), GAMMA_LEVELS, _gamma_level, _default_h),
    "rgamma": FunctionSpec("rgamma", ("s",), GAMMA_LEVELS, _rgamma_level, _default_h),
    "lgamma-lower": FunctionSpec("lgamma-lower", ("s", "x"), GAMMA_LEVELS,
                                 _lgamma_lower_level, _default_h),
    "erf": FunctionSpec("erf", ("x",), GAMMA_LEVELS, _erf_level, _erf_start_h),
    "chf": FunctionSpec("chf", ("a", "b", "x"), CHF_LEVELS, _chf_level, _default_h),
    "chf-scaled": FunctionSpec("chf-scaled", ("a", "b", "x"), CHF_LEVELS,
                               lambda p, m: _chf_level(p, m, scaled=True), _default_h),
    "kummer-m": FunctionSpec("kummer-m", ("a", "c", "x"), CHF_LEVELS, _kummer_level, _default_h),
    "beta": FunctionSpec("beta", ("a", "b"), GAMMA_LEVELS, _beta_level, _default_h),
    "gauss-2f1": FunctionSpec("gauss-2f1", ("a", "b", "c", "z"), CHF_LEVELS,
                              _f21_level, _default_h),
}


def level_fn(name: str, params: Dict[str, float], mesh: Optional[MeshSpec] = None) -> LevelFn:
    mesh = mesh or MeshSpec(h=1.0 / 16)
    spec = FUNCTIONS[name]
    missing = [p for p in spec.param_names if p not in params]
    if missing:
        raise DomainError(f"{name} needs parameters {spec.param_names}, missing {missing}")
    return spec.build(params, mesh)


def evaluate(name: str, params: Dict[str, float], mesh: Optional[MeshSpec] = None,
             h0: Optional[float] = None, max_levels: Optional[int] = None,
             agree_tol: float = DEFAULT_AGREE) -> ConvergenceReport:
    """Run the refinement driver over the named function."""
    mesh = mesh or MeshSpec(h=1.0 / 16)
    spec = FUNCTIONS[name]
    fn = level_fn(name, params, mesh)
    if h0 is None:
        h0 = spec.start_h(params, mesh)
    if max_levels is None:
        max_levels = spec.levels

    def sum_fn(h):
        value, terms = fn(h)
        if isinstance(value, float):
            value = complex(value, 0.0)
        return TrapSum(value=value, terms_used=terms, truncated_left=True, truncated_right=True)

    return refine(h0=h0, max_levels=max_levels, agree_tol=agree_tol, sum_fn=sum_fn)
