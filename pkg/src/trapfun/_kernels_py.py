"""Pure-Python lattice-sum kernels (fallback for the compiled extension).

Each kernel fuses one integrand family with the truncated trapezoidal sweep.
The gamma-contour kernels exploit conjugate symmetry: g(-u) = -conj(g(u)), so
the two-sided sum of g/(2 pi i) collapses to real arithmetic over u >= 0,
(h / 2 pi) * (Im g(0) + 2 sum_{n>=1} Im g(nh)), and the reported term count
is the full-lattice equivalent 2 n_stop + 1.

trapfun._kernels_c implements the same functions in Cython; keep the two in
lockstep (tests/test_backends.py compares them term-for-term).
"""

from __future__ import annotations

import math

from .errors import NonFiniteTerm, OverflowGuard, TermCapExceeded

TWO_PI = 2.0 * math.pi
TAIL_MARGIN_POWER = 1.5
LOG_TINY = -745.0  # below this exponent exp underflows to zero
RESCALE_AT = 600.0  # shift the exponent offset once a node exceeds this
U_HARD_LIMIT = 700.0  # cosh/sinh overflow guard; terms out here are zero


def pq_node(s: float, x: float, c: float, u: float) -> complex:
    """g(u) = e^y y^-1 (1 + y/x)^-s y'(u) on the scaled-form contour."""
    if abs(u) > U_HARD_LIMIT:
        return 0j
    ch = math.cosh(u)
    sh = math.sinh(u)
    yr = c + 1.0 - ch
    yi = sh
    # (1 + y/x)^-s as exp(-s log w), principal branch
    wr = 1.0 + yr / x
    wi = yi / x
    mag = -s * 0.5 * math.log(wr * wr + wi * wi) + yr
    if mag < LOG_TINY:
        return 0j
    ang = -s * math.atan2(wi, wr) + yi
    em = math.exp(mag)
    er = em * math.cos(ang)
    ei = em * math.sin(ang)
    y2 = yr * yr + yi * yi
    ir = yr / y2
    ii = -yi / y2
    t1r = er * ir - ei * ii
    t1i = er * ii + ei * ir
    return complex(t1r * -sh - t1i * ch, t1r * ch + t1i * -sh)


def q_node(s: float, x: float, c: float, u: float) -> complex:
    """g(u) = e^{x y} y^-1 (1 + y)^-s y'(u) on the unit (unscaled) contour."""
    if abs(u) > U_HARD_LIMIT:
        return 0j
    ch = math.cosh(u)
    sh = math.sinh(u)
    yr = c + 1.0 - ch
    yi = sh
    wr = 1.0 + yr
    wi = yi
    mag = -s * 0.5 * math.log(wr * wr + wi * wi) + x * yr
    if mag < LOG_TINY:
        return 0j
    ang = -s * math.atan2(wi, wr) + x * yi
    em = math.exp(mag)
    er = em * math.cos(ang)
    ei = em * math.sin(ang)
    y2 = yr * yr + yi * yi
    ir = yr / y2
    ii = -yi / y2
    t1r = er * ir - ei * ii
    t1i = er * ii + ei * ir
    return complex(t1r * -sh - t1i * ch, t1r * ch + t1i * -sh)


def rgamma_node(s: float, c: float, u: float) -> complex:
    """g(u) = e^y y^-s y'(u); the reciprocal-Gamma contour integrand."""
    if abs(u) > U_HARD_LIMIT:
        return 0j
    ch = math.cosh(u)
    sh = math.sinh(u)
    yr = c + 1.0 - ch
    yi = sh
    mag = yr - s * 0.5 * math.log(yr * yr + yi * yi)
    if mag < LOG_TINY:
        return 0j
    ang = yi - s * math.atan2(yi, yr)
    em = math.exp(mag)
    er = em * math.cos(ang)
    ei = em * math.sin(ang)
    return complex(er * -sh - ei * ch, er * ch + ei * -sh)


def _fold_sum(node, h, trunc_tol, max_terms, ksmall):
    """One-sided symmetric sweep shared by the three contour kernels."""
    tail = trunc_tol ** TAIL_MARGIN_POWER
    coef = h / TWO_PI
    g0 = node(0.0)
    if not (math.isfinite(g0.real) and math.isfinite(g0.imag)):
        raise NonFiniteTerm("contour integrand non-finite at u=0")
    total = coef * g0.imag
    diag = coef * abs(g0.real)
    comp = 0.0
    n = 0
    small = 0
    while small < ksmall:
        n += 1
        if n > max_terms:
            raise TermCapExceeded(f"contour sum exceeded {max_terms} terms per side at h={h!r}")
        g = node(n * h)
        if not (math.isfinite(g.real) and math.isfinite(g.imag)):
            raise NonFiniteTerm(f"contour integrand non-finite at u={n * h!r}")
        term = coef * 2.0 * g.imag
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if coef * 2.0 * abs(g) < tail * max(abs(total), trunc_tol):
            small += 1
        else:
            small = 0
    return total, diag, 2 * n + 1


def pq_lower_sum(s, x, c, h, trunc_tol=1e-16, max_terms=100000, ksmall=2):
    """P(s, x) at mesh h. Returns (value, imag_diagnostic, terms_used)."""
    return _fold_sum(lambda u: pq_node(s, x, c, u), h, trunc_tol, max_terms, ksmall)


def q_upper_sum(s, x, c_unit, h, trunc_tol=1e-16, max_terms=200000, ksmall=2):
    """Q(s, x) at mesh h via the upper branch. Returns (value, diag, terms)."""
    v, diag, terms = _fold_sum(lambda u: q_node(s, x, c_unit, u), h, trunc_tol, max_terms, ksmall)
    return -v, diag, terms


def rgamma_sum(s, c, h, trunc_tol=1e-16, max_terms=100000, ksmall=2):
    """1/Gamma(s) at mesh h. Returns (value, imag_diagnostic, terms_used)."""
    return _fold_sum(lambda u: rgamma_node(s, c, u), h, trunc_tol, max_terms, ksmall)


def chf_exponent(a: float, b: float, x: float, scaled: bool, v: float) -> float:
    """Log-magnitude of the transformed Euler integrand at node v.

    t = e^u/(e^u + e^-u) with u = sinh v maps (0,1) onto the line twice over;
    t^{a-1}(1-t)^{b-1} dt/du = 2 t^a (1-t)^b turns the endpoint singularities
    into exponential decay: exponent = (a-b)u - (a+b)log(2 cosh u) + x t,
    with x(t-1) instead of x t in scaled mode.
    """
    if abs(v) > U_HARD_LIMIT:
        return -math.inf
    u = math.sinh(v)
    if u >= 0.0:
        e2 = math.exp(-2.0 * u)
        t = 1.0 / (1.0 + e2)
        l2c = u + math.log1p(e2)
        xpart = x * (-e2 / (1.0 + e2)) if scaled else x * t
    else:
        e2 = math.exp(2.0 * u)
        t = e2 / (1.0 + e2)
        l2c = -u + math.log1p(e2)
        xpart = x * (-1.0 / (1.0 + e2)) if scaled else x * t
    return (a - b) * u - (a + b) * l2c + xpart


def chf_node(a: float, b: float, x: float, scaled: bool, v: float) -> float:
    """Integrand value 2 cosh(v) exp(E(v)); zero once E underflows."""
    e = chf_exponent(a, b, x, scaled, v)
    if e < LOG_TINY:
        return 0.0
    return 2.0 * math.cosh(v) * math.exp(e)


def f21_exponent(a: float, b: float, cb: float, z: float, v: float) -> float:
    """Exponent for the Gauss integrand t^{b-1}(1-t)^{cb-1}(1-z t)^{-a}.

    log(1 - z t) is evaluated from (1-z)e^u + e^{-u} over 2 cosh u so it
    stays accurate for z near 1 and for large |z|; requires z < 1.
    """
    if abs(v) > U_HARD_LIMIT:
        return -math.inf
    u = math.sinh(v)
    if u >= 0.0:
        e2 = math.exp(-2.0 * u)
        l2c = u + math.log1p(e2)
        lzt = math.log((1.0 - z) + e2) - math.log1p(e2)
    else:
        e2 = math.exp(2.0 * u)
        l2c = -u + math.log1p(e2)
        lzt = math.log1p((1.0 - z) * e2) - math.log1p(e2)
    return (b - cb) * u - (b + cb) * l2c - a * lzt


def f21_node(a: float, b: float, cb: float, z: float, v: float) -> float:
    e = f21_exponent(a, b, cb, z, v)
    if e < LOG_TINY:
        return 0.0
    return 2.0 * math.cosh(v) * math.exp(e)


def _exp_sweep(exponent, h, trunc_tol, max_terms, ksmall):
    """Two-sided sweep of 2 cosh(v) e^{E(v)} with a running exponent offset.

    Maintains value = acc * e^shift so scaled evaluations whose true value
    leaves the double range remain representable.  Returns (acc, shift, terms).
    """
    tail = trunc_tol ** TAIL_MARGIN_POWER
    shift = 0.0

    e0 = exponent(0.0)
    if e0 > RESCALE_AT:
        shift = e0
    acc = h * (2.0 * math.exp(e0 - shift)) if e0 - shift >= LOG_TINY else 0.0
    if not math.isfinite(acc):
        raise OverflowGuard(f"node exponent {e0!r} not representable at v=0")
    comp = 0.0
    terms = 1
    n_r = 0
    n_l = 0
    small_r = 0
    small_l = 0

    def add(term):
        nonlocal acc, comp
        y = term - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t

    while small_r < ksmall or small_l < ksmall:
        for side in (1, -1):
            if side == 1:
                if small_r >= ksmall:
                    continue
                n_r += 1
                n = n_r
                if n_r > max_terms:
                    raise TermCapExceeded(f"right tail exceeded {max_terms} terms at h={h!r}")
            else:
                if small_l >= ksmall:
                    continue
                n_l += 1
                n = -n_l
                if n_l > max_terms:
                    raise TermCapExceeded(f"left tail exceeded {max_terms} terms at h={h!r}")
            v = n * h
            e = exponent(v)
            if math.isnan(e):
                raise NonFiniteTerm(f"integrand exponent nan at v={v!r}")
            if e - shift > RESCALE_AT:
                factor = math.exp(shift - e)
                acc *= factor
                comp *= factor
                shift = e
            de = e - shift
            term = h * 2.0 * math.cosh(v) * math.exp(de) if de >= LOG_TINY else 0.0
            if not math.isfinite(term):
                raise OverflowGuard(f"node at v={v!r} overflows (exponent {e!r})")
            add(term)
            terms += 1
            # the trunc_tol floor lives in value units; shift >= 0 always
            floor = trunc_tol * math.exp(-shift)
            if abs(term) < tail * max(abs(acc), floor):
                if side == 1:
                    small_r += 1
                else:
                    small_l += 1
            else:
                if side == 1:
                    small_r = 0
                else:
                    small_l = 0
    return acc, shift, terms


def chf_sum(a, b, x, scaled, h, trunc_tol=1e-16, max_terms=100000, ksmall=2):
    """C(a,b;x) (or e^-x C in scaled mode) at mesh h -> (acc, shift, terms)."""
    return _exp_sweep(lambda v: chf_exponent(a, b, x, scaled, v), h, trunc_tol, max_terms, ksmall)


def f21_sum(a, b, cb, z, h, trunc_tol=1e-16, max_terms=100000, ksmall=2):
    """Unnormalized Gauss integral at mesh h -> (acc, shift, terms)."""
    return _exp_sweep(lambda v: f21_exponent(a, b, cb, z, v), h, trunc_tol, max_terms, ksmall)
