# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the autonomous quadratic core r -> a*r^2 + b*r.

Arithmetic is written with the exact same operation order as the pure-Python
fallback so both backends produce bitwise-identical orbits.
"""

from libc.math cimport fabs, log, NAN

import numpy as np

STATUS_OK = 0
STATUS_OVERFLOW = 2
STATUS_DEGENERATE = 3


def quad_orbit(double a, double b, double r0, long steps, double overflow_limit):
    """Iterate the quadratic core; returns (values, status, fail_index)."""
    out = np.empty(steps + 1, dtype=np.float64)
    cdef double[::1] buf = out
    cdef double r = r0
    cdef long k
    buf[0] = r0
    if not (fabs(r0) <= overflow_limit):
        return out[:1], STATUS_OVERFLOW, 0
    for k in range(steps):
        r = a * r * r + b * r
        buf[k + 1] = r
        if not (fabs(r) <= overflow_limit):
            return out[:k + 2], STATUS_OVERFLOW, k + 1
    return out, STATUS_OK, -1


def quad_lyapunov(double a, double b, double r0, long transient, long samples,
                  double overflow_limit):
    """Mean of log|2 a r + b| over `samples` post-transient iterates.

    Returns (estimate, status); the estimate is meaningless unless status is
    STATUS_OK.
    """
    cdef double r = r0
    cdef double acc = 0.0
    cdef double d
    cdef long k
    for k in range(transient):
        r = a * r * r + b * r
        if not (fabs(r) <= overflow_limit):
            return 0.0, STATUS_OVERFLOW
    for k in range(samples):
        d = 2.0 * a * r + b
        if d == 0.0:
            return 0.0, STATUS_DEGENERATE
        acc += log(fabs(d))
        r = a * r * r + b * r
        if not (fabs(r) <= overflow_limit):
            return 0.0, STATUS_OVERFLOW
    return acc / samples, STATUS_OK


def quad_sweep(double a, double[::1] bs, long transient, long samples,
               long lyap_samples, double overflow_limit):
    """Attractor samples plus a Lyapunov estimate for each b, starting each
    orbit at the critical point -b/(2a).

    Returns (samples[nb, samples], lyapunov[nb], escaped[nb]); escaped rows
    are filled with nan.
    """
    cdef long nb = bs.shape[0]
    samp = np.empty((nb, samples), dtype=np.float64)
    lam = np.empty(nb, dtype=np.float64)
    esc = np.zeros(nb, dtype=np.uint8)
    cdef double[:, ::1] S = samp
    cdef double[::1] L = lam
    cdef unsigned char[::1] E = esc
    cdef double b, r, acc, d
    cdef long i, k
    cdef bint bad
    for i in range(nb):
        b = bs[i]
        r = -b / (2.0 * a)
        bad = False
        for k in range(transient):
            r = a * r * r + b * r
            if not (fabs(r) <= overflow_limit):
                bad = True
                break
        if not bad:
            for k in range(samples):
                S[i, k] = r
                r = a * r * r + b * r
                if not (fabs(r) <= overflow_limit):
                    bad = True
                    break
        if not bad:
            acc = 0.0
            for k in range(lyap_samples):
                d = 2.0 * a * r + b
                if fabs(d) < 1e-300:
                    d = 1e-300
                acc += log(fabs(d))
                r = a * r * r + b * r
                if not (fabs(r) <= overflow_limit):
                    bad = True
                    break
            L[i] = acc / lyap_samples
        if bad:
            for k in range(samples):
                S[i, k] = NAN
            L[i] = NAN
            E[i] = 1
    return samp, lam, esc


def quad_pair_sep(double a, double b, double r0, double delta, long horizon,
                  double spread_threshold, double overflow_limit):
    """Track the separation of two orbits started delta apart.

    Returns (max_sep, min_sep_after_spread, status); the minimum is taken over
    the iterates strictly after the separation first exceeds the threshold and
    is nan when that never happens.
    """
    cdef double r = r0
    cdef double s = r0 + delta
    cdef double sep = fabs(s - r)
    cdef double max_sep = sep
    cdef double min_after = NAN
    cdef bint spread = sep > spread_threshold
    cdef long k
    for k in range(horizon):
        r = a * r * r + b * r
        s = a * s * s + b * s
        if not (fabs(r) <= overflow_limit and fabs(s) <= overflow_limit):
            return max_sep, min_after, STATUS_OVERFLOW
        sep = fabs(s - r)
        if spread and not (min_after <= sep):
            min_after = sep
        if sep > max_sep:
            max_sep = sep
        if not spread and sep > spread_threshold:
            spread = True
    return max_sep, min_after, STATUS_OK
