"""Pure-Python twin of the compiled quadratic-core kernels.

Kept operation-for-operation identical to _quad.pyx so that the two backends
produce bitwise-identical orbits; only speed differs.
"""

import math

import numpy as np

STATUS_OK = 0
STATUS_OVERFLOW = 2
STATUS_DEGENERATE = 3

_NAN = float("nan")


def quad_orbit(a, b, r0, steps, overflow_limit):
    out = np.empty(steps + 1, dtype=np.float64)
    r = r0
    out[0] = r0
    if not (abs(r0) <= overflow_limit):
        return out[:1], STATUS_OVERFLOW, 0
    for k in range(steps):
        r = a * r * r + b * r
        out[k + 1] = r
        if not (abs(r) <= overflow_limit):
            return out[:k + 2], STATUS_OVERFLOW, k + 1
    return out, STATUS_OK, -1


def quad_lyapunov(a, b, r0, transient, samples, overflow_limit):
    r = r0
    acc = 0.0
    for _ in range(transient):
        r = a * r * r + b * r
        if not (abs(r) <= overflow_limit):
            return 0.0, STATUS_OVERFLOW
    for _ in range(samples):
        d = 2.0 * a * r + b
        if d == 0.0:
            return 0.0, STATUS_DEGENERATE
        acc += math.log(abs(d))
        r = a * r * r + b * r
        if not (abs(r) <= overflow_limit):
            return 0.0, STATUS_OVERFLOW
    return acc / samples, STATUS_OK


def quad_sweep(a, bs, transient, samples, lyap_samples, overflow_limit):
    bs = np.asarray(bs, dtype=np.float64)
    nb = bs.shape[0]
    samp = np.empty((nb, samples), dtype=np.float64)
    lam = np.empty(nb, dtype=np.float64)
    esc = np.zeros(nb, dtype=np.uint8)
    for i in range(nb):
        b = float(bs[i])
        r = -b / (2.0 * a)
        bad = False
        for _ in range(transient):
            r = a * r * r + b * r
            if not (abs(r) <= overflow_limit):
                bad = True
                break
        if not bad:
            for k in range(samples):
                samp[i, k] = r
                r = a * r * r + b * r
                if not (abs(r) <= overflow_limit):
                    bad = True
                    break
        if not bad:
            acc = 0.0
            for _ in range(lyap_samples):
                d = 2.0 * a * r + b
                if abs(d) < 1e-300:
                    d = 1e-300
                acc += math.log(abs(d))
                r = a * r * r + b * r
                if not (abs(r) <= overflow_limit):
                    bad = True
                    break
            lam[i] = acc / lyap_samples
        if bad:
            samp[i, :] = _NAN
            lam[i] = _NAN
            esc[i] = 1
    return samp, lam, esc


def quad_pair_sep(a, b, r0, delta, horizon, spread_threshold, overflow_limit):
    r = r0
    s = r0 + delta
    sep = abs(s - r)
    max_sep = sep
    min_after = _NAN
    spread = sep > spread_threshold
    for _ in range(horizon):
        r = a * r * r + b * r
        s = a * s * s + b * s
        if not (abs(r) <= overflow_limit and abs(s) <= overflow_limit):
            return max_sep, min_after, STATUS_OVERFLOW
        sep = abs(s - r)
        if spread and not (min_after <= sep):
            min_after = sep
        if sep > max_sep:
            max_sep = sep
        if not spread and sep > spread_threshold:
            spread = True
    return max_sep, min_after, STATUS_OK
