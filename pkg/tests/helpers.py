"""Shared assertions for the test suite."""

import math

from trapfun.scaled import ScaledReal, as_scaled


def rel(a, b) -> float:
    """Relative difference against the reference value b."""
    if isinstance(a, ScaledReal) or isinstance(b, ScaledReal):
        sa, sb = as_scaled(a), as_scaled(b)
        if sb.significand == 0.0:
            return abs(sa.significand)
        de = sa.exp10 - sb.exp10
        if abs(de) > 30:
            return math.inf
        return abs(sa.significand * 10.0 ** de - sb.significand) / abs(sb.significand)
    if isinstance(a, complex):
        a = a.real
    if isinstance(b, complex):
        b = b.real
    b = float(b)
    if b == 0.0:
        return abs(float(a))
    return abs(float(a) - b) / abs(b)


def assert_rel(a, b, tol, label=""):
    r = rel(a, b)
    assert r <= tol, f"{label or 'value'}: got {a!r}, want {b!r} (rel {r:.3e} > {tol:g})"
