# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-sum kernels.

Mirror of trapfun._kernels_py, one function for one function; any change to
the truncation rule, node formulas, or sweep order must land in both modules
(tests/test_backends.py holds them together).
"""

from libc.math cimport (atan2, cos, cosh, exp, fabs, hypot, isfinite, isnan,
                        log, log1p, pow, sin, sinh, INFINITY)

from .errors import NonFiniteTerm, OverflowGuard, TermCapExceeded

DEF TWO_PI = 6.283185307179586476925286766559
DEF TAIL_MARGIN_POWER = 1.5
DEF LOG_TINY = -745.0
DEF RESCALE_AT = 600.0
DEF U_HARD_LIMIT = 700.0


cdef inline double complex _pq_node_c(double s, double x, double c, double u) noexcept nogil:
    cdef double ch, sh, yr, yi, wr, wi, mag, ang, em, er, ei, y2, ir, ii, t1r, t1i
    if fabs(u) > U_HARD_LIMIT:
        return 0
    ch = cosh(u)
    sh = sinh(u)
    yr = c + 1.0 - ch
    yi = sh
    wr = 1.0 + yr / x
    wi = yi / x
    mag = -s * 0.5 * log(wr * wr + wi * wi) + yr
    if mag < LOG_TINY:
        return 0
    ang = -s * atan2(wi, wr) + yi
    em = exp(mag)
    er = em * cos(ang)
    ei = em * sin(ang)
    y2 = yr * yr + yi * yi
    ir = yr / y2
    ii = -yi / y2
    t1r = er * ir - ei * ii
    t1i = er * ii + ei * ir
    return (t1r * -sh - t1i * ch) + 1j * (t1r * ch + t1i * -sh)


cdef inline double complex _q_node_c(double s, double x, double c, double u) noexcept nogil:
    cdef double ch, sh, yr, yi, wr, wi, mag, ang, em, er, ei, y2, ir, ii, t1r, t1i
    if fabs(u) > U_HARD_LIMIT:
        return 0
    ch = cosh(u)
    sh = sinh(u)
    yr = c + 1.0 - ch
    yi = sh
    wr = 1.0 + yr
    wi = yi
    mag = -s * 0.5 * log(wr * wr + wi * wi) + x * yr
    if mag < LOG_TINY:
        return 0
    ang = -s * atan2(wi, wr) + x * yi
    em = exp(mag)
    er = em * cos(ang)
    ei = em * sin(ang)
    y2 = yr * yr + yi * yi
    ir = yr / y2
    ii = -yi / y2
    t1r = er * ir - ei * ii
    t1i = er * ii + ei * ir
    return (t1r * -sh - t1i * ch) + 1j * (t1r * ch + t1i * -sh)


cdef inline double complex _rgamma_node_c(double s, double c, double u) noexcept nogil:
    cdef double ch, sh, yr, yi, mag, ang, em, er, ei
    if fabs(u) > U_HARD_LIMIT:
        return 0
    ch = cosh(u)
    sh = sinh(u)
    yr = c + 1.0 - ch
    yi = sh
    mag = yr - s * 0.5 * log(yr * yr + yi * yi)
    if mag < LOG_TINY:
        return 0
    ang = yi - s * atan2(yi, yr)
    em = exp(mag)
    er = em * cos(ang)
    ei = em * sin(ang)
    return (er * -sh - ei * ch) + 1j * (er * ch + ei * -sh)


def pq_node(double s, double x, double c, double u):
    """g(u) = e^y y^-1 (1 + y/x)^-s y'(u) on the scaled-form contour."""
    return complex(_pq_node_c(s, x, c, u))


def q_node(double s, double x, double c, double u):
    """g(u) = e^{x y} y^-1 (1 + y)^-s y'(u) on the unit contour."""
    return complex(_q_node_c(s, x, c, u))


def rgamma_node(double s, double c, double u):
    """g(u) = e^y y^-s y'(u); the reciprocal-Gamma contour integrand."""
    return complex(_rgamma_node_c(s, c, u))


cdef _fold(int which, double s, double x, double c, double h,
           double trunc_tol, long max_terms, int ksmall):
    cdef double tail = pow(trunc_tol, TAIL_MARGIN_POWER)
    cdef double coef = h / TWO_PI
    cdef double complex g
    cdef double total, comp, diag, term, tmag, y, t
    cdef long n = 0
    cdef int small = 0

    if which == 0:
        g = _pq_node_c(s, x, c, 0.0)
    elif which == 1:
        g = _q_node_c(s, x, c, 0.0)
    else:
        g = _rgamma_node_c(s, c, 0.0)
    if not (isfinite(g.real) and isfinite(g.imag)):
        raise NonFiniteTerm("contour integrand non-finite at u=0")
    total = coef * g.imag
    diag = coef * fabs(g.real)
    comp = 0.0

    while small < ksmall:
        n += 1
        if n > max_terms:
            raise TermCapExceeded(
                f"contour sum exceeded {max_terms} terms per side at h={h!r}")
        if which == 0:
            g = _pq_node_c(s, x, c, n * h)
        elif which == 1:
            g = _q_node_c(s, x, c, n * h)
        else:
            g = _rgamma_node_c(s, c, n * h)
        if not (isfinite(g.real) and isfinite(g.imag)):
            raise NonFiniteTerm(f"contour integrand non-finite at u={n * h!r}")
        term = coef * 2.0 * g.imag
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        tmag = coef * 2.0 * hypot(g.real, g.imag)
        if tmag < tail * max(fabs(total), trunc_tol):
            small += 1
        else:
            small = 0
    return total, diag, 2 * n + 1


def pq_lower_sum(double s, double x, double c, double h, double trunc_tol=1e-16,
                 long max_terms=100000, int ksmall=2):
    """P(s, x) at mesh h. Returns (value, imag_diagnostic, terms_used)."""
    return _fold(0, s, x, c, h, trunc_tol, max_terms, ksmall)


def q_upper_sum(double s, double x, double c_unit, double h, double trunc_tol=1e-16,
                long max_terms=200000, int ksmall=2):
    """Q(s, x) at mesh h via the upper branch. Returns (value, diag, terms)."""
    value, diag, terms = _fold(1, s, x, c_unit, h, trunc_tol, max_terms, ksmall)
    return -value, diag, terms


def rgamma_sum(double s, double c, double h, double trunc_tol=1e-16,
               long max_terms=100000, int ksmall=2):
    """1/Gamma(s) at mesh h. Returns (value, imag_diagnostic, terms_used)."""
    return _fold(2, s, 0.0, c, h, trunc_tol, max_terms, ksmall)


cdef inline double _chf_exp_c(double a, double b, double x, int scaled, double v) noexcept nogil:
    cdef double u, e2, t, l2c, xpart
    if fabs(v) > U_HARD_LIMIT:
        return -INFINITY
    u = sinh(v)
    if u >= 0.0:
        e2 = exp(-2.0 * u)
        t = 1.0 / (1.0 + e2)
        l2c = u + log1p(e2)
        xpart = x * (-e2 / (1.0 + e2)) if scaled else x * t
    else:
        e2 = exp(2.0 * u)
        t = e2 / (1.0 + e2)
        l2c = -u + log1p(e2)
        xpart = x * (-1.0 / (1.0 + e2)) if scaled else x * t
    return (a - b) * u - (a + b) * l2c + xpart


cdef inline double _f21_exp_c(double a, double b, double cb, double z, double v) noexcept nogil:
    cdef double u, e2, l2c, lzt
    if fabs(v) > U_HARD_LIMIT:
        return -INFINITY
    u = sinh(v)
    if u >= 0.0:
        e2 = exp(-2.0 * u)
        l2c = u + log1p(e2)
        lzt = log((1.0 - z) + e2) - log1p(e2)
    else:
        e2 = exp(2.0 * u)
        l2c = -u + log1p(e2)
        lzt = log1p((1.0 - z) * e2) - log1p(e2)
    return (b - cb) * u - (b + cb) * l2c - a * lzt


def chf_exponent(double a, double b, double x, scaled, double v):
    """Log-magnitude of the transformed Euler integrand at node v."""
    return _chf_exp_c(a, b, x, 1 if scaled else 0, v)


def chf_node(double a, double b, double x, scaled, double v):
    """Integrand value 2 cosh(v) exp(E(v)); zero once E underflows."""
    cdef double e = _chf_exp_c(a, b, x, 1 if scaled else 0, v)
    if e < LOG_TINY:
        return 0.0
    return 2.0 * cosh(v) * exp(e)


def f21_exponent(double a, double b, double cb, double z, double v):
    """Exponent for the Gauss integrand t^{b-1}(1-t)^{cb-1}(1-z t)^{-a}."""
    return _f21_exp_c(a, b, cb, z, v)


def f21_node(double a, double b, double cb, double z, double v):
    cdef double e = _f21_exp_c(a, b, cb, z, v)
    if e < LOG_TINY:
        return 0.0
    return 2.0 * cosh(v) * exp(e)


cdef _sweep(int which, double a, double b, double x, int scaled, double z,
            double h, double trunc_tol, long max_terms, int ksmall):
    cdef double tail = pow(trunc_tol, TAIL_MARGIN_POWER)
    cdef double shift = 0.0
    cdef double acc, comp, e0, e, de, term, factor, floor_v, v, y, t
    cdef long terms = 1, n_r = 0, n_l = 0, n
    cdef int small_r = 0, small_l = 0, side

    if which == 0:
        e0 = _chf_exp_c(a, b, x, scaled, 0.0)
    else:
        e0 = _f21_exp_c(a, b, x, z, 0.0)
    if e0 > RESCALE_AT:
        shift = e0
    acc = h * 2.0 * exp(e0 - shift) if e0 - shift >= LOG_TINY else 0.0
    if not isfinite(acc):
        raise OverflowGuard(f"node exponent {e0!r} not representable at v=0")
    comp = 0.0

    while small_r < ksmall or small_l < ksmall:
        for side in range(2):
            if side == 0:
                if small_r >= ksmall:
                    continue
                n_r += 1
                n = n_r
                if n_r > max_terms:
                    raise TermCapExceeded(
                        f"right tail exceeded {max_terms} terms at h={h!r}")
            else:
                if small_l >= ksmall:
                    continue
                n_l += 1
                n = -n_l
                if n_l > max_terms:
                    raise TermCapExceeded(
                        f"left tail exceeded {max_terms} terms at h={h!r}")
            v = n * h
            if which == 0:
                e = _chf_exp_c(a, b, x, scaled, v)
            else:
                e = _f21_exp_c(a, b, x, z, v)
            if isnan(e):
                raise NonFiniteTerm(f"integrand exponent nan at v={v!r}")
            if e - shift > RESCALE_AT:
                factor = exp(shift - e)
                acc *= factor
                comp *= factor
                shift = e
            de = e - shift
            term = h * 2.0 * cosh(v) * exp(de) if de >= LOG_TINY else 0.0
            if not isfinite(term):
                raise OverflowGuard(f"node at v={v!r} overflows (exponent {e!r})")
            y = term - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
            terms += 1
            # the trunc_tol floor lives in value units; shift >= 0 always
            floor_v = trunc_tol * exp(-shift)
            if fabs(term) < tail * max(fabs(acc), floor_v):
                if side == 0:
                    small_r += 1
                else:
                    small_l += 1
            else:
                if side == 0:
                    small_r = 0
                else:
                    small_l = 0
    return acc, shift, terms


def chf_sum(double a, double b, double x, scaled, double h, double trunc_tol=1e-16,
            long max_terms=100000, int ksmall=2):
    """C(a,b;x) (or e^-x C in scaled mode) at mesh h -> (acc, shift, terms)."""
    return _sweep(0, a, b, x, 1 if scaled else 0, 0.0, h, trunc_tol, max_terms, ksmall)


def f21_sum(double a, double b, double cb, double z, double h, double trunc_tol=1e-16,
            long max_terms=100000, int ksmall=2):
    """Unnormalized Gauss integral at mesh h -> (acc, shift, terms)."""
    return _sweep(1, a, b, cb, 0, z, h, trunc_tol, max_terms, ksmall)
