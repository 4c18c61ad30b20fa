"""Orbit analysis: cycle detection, Lyapunov estimates, chaos proxies, the
bounded-window classifier for the quadratic-core ratio systems, and the
bifurcation sweep.

Chaos here is certified operationally, not asymptotically: an orbit is
labeled chaotic when it stays bounded, shows no period up to CYCLE_MAX_PERIOD
at CYCLE_TOL, and its core Lyapunov estimate exceeds CHAOS_LYAPUNOV.  Reports
carry the label "chaotic (operational)" through __str__ of the verdicts; the
limsup/liminf scrambled-pair behavior is approximated by finite-horizon
separation statistics.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DegenerateOrbit, InvalidParam, Overflow
from .folding import ScalarCore
from .orbits import (
    OVERFLOW,
    OVERFLOW_LIMIT,
    SINGULAR,
    CoreTrace,
    Orbit,
    iterate_core,
    iterate_system,
)
from .rational import (
    QuadraticCoreParams,
    in_window,
    make_system,
    match_affine_order1,
    match_quadratic,
    mu_max,
    quad_window,
    y_ratio_bound,
)
from .seqcoef import abs_bound, eventual_structure, value_at

__all__ = [
    "CYCLE_TOL",
    "CYCLE_MAX_PERIOD",
    "CHAOS_LYAPUNOV",
    "Y_AXIS_TOL",
    "CycleReport",
    "PairStats",
    "Behavior",
    "ClassifyReport",
    "SweepRow",
    "Orbit",
    "CoreTrace",
    "iterate_system",
    "iterate_core",
    "detect_cycle",
    "lcm_period",
    "lyapunov_core",
    "lyapunov_core_generic",
    "sensitive_pair_stat",
    "classify_rhsc",
    "label_orbit",
    "bifurcation_sweep",
    "affine_core_closed_form",
    "affine_order1_closed_form",
]

# Operational thresholds (defaults used by the classifier and CLI).
CYCLE_TOL = 1e-6
CYCLE_MAX_PERIOD = 64
CHAOS_LYAPUNOV = 0.01
Y_AXIS_TOL = 1e-3
DEFAULT_TRANSIENT = 1000


@dataclass
class CycleReport:
    period: int
    cycle_values: np.ndarray
    residual: float
    transient_used: int = 0


def detect_cycle(tail, abs_tol: float = CYCLE_TOL, max_period: int = CYCLE_MAX_PERIOD,
                 transient_used: int = 0) -> CycleReport | None:
    """Smallest q <= max_period whose last two length-q windows agree to
    abs_tol in sup norm; None when no period qualifies.

    Scanning q upward makes the reported period minimal: no divisor of it can
    also satisfy the tolerance.
    """
    arr = np.asarray(tail, dtype=float)
    if arr.shape[0] < 3 * max_period:
        raise InvalidParam(
            f"tail of length {arr.shape[0]} is too short for max_period {max_period}"
        )
    for q in range(1, max_period + 1):
        residual = float(np.max(np.abs(arr[-q:] - arr[-2 * q:-q])))
        if residual < abs_tol:
            return CycleReport(q, arr[-q:].copy(), residual, transient_used)
    return None


def lcm_period(p: int, q: int) -> int:
    """Orbit period of a period-q core solution seen through a period-p passive map."""
    if p < 1 or q < 1:
        raise InvalidParam("periods must be positive integers")
    return math.lcm(p, q)


# ---------------------------------------------------------------------------
# Lyapunov estimates

def lyapunov_core(q: QuadraticCoreParams, r0: float, transient: int = DEFAULT_TRANSIENT,
                  samples: int = 100_000) -> float:
    """Lyapunov estimate of the quadratic core from the analytic derivative
    2 a r + b, averaged over `samples` post-transient iterates."""
    if not in_window(q.a, q.b, r0):
        raise InvalidParam(f"r0={r0} lies outside the bounded window {quad_window(q.a, q.b)}")
    lam, status = _kernels.quad_lyapunov(q.a, q.b, r0, transient, samples, OVERFLOW_LIMIT)
    if status == _kernels.STATUS_DEGENERATE:
        raise DegenerateOrbit("orbit hit the critical point exactly; perturb r0 and retry")
    if status == _kernels.STATUS_OVERFLOW:
        raise Overflow("core orbit escaped during Lyapunov estimation")
    return lam


def lyapunov_core_generic(core: ScalarCore, r0: float, transient: int = DEFAULT_TRANSIENT,
                          samples: int = 10_000, deriv=None, fd_step: float = 1e-6) -> float:
    """Lyapunov estimate for any order-1 core.

    Uses the analytic derivative for recognized quadratic/affine cores (or a
    caller-supplied `deriv(n, r)`), falling back to a central finite
    difference otherwise.
    """
    if core.order != 1:
        raise InvalidParam("Lyapunov estimation needs an order-1 core")
    if deriv is None:
        quad = match_quadratic(core)
        aff = match_affine_order1(core)
        if quad is not None:
            a, b = quad
            deriv = lambda n, r: 2.0 * a * r + b
        elif aff is not None:
            slope = aff[0]
            deriv = lambda n, r: slope
        else:
            deriv = lambda n, r: (core(n, r + fd_step) - core(n, r - fd_step)) / (2.0 * fd_step)
    r = float(r0)
    n = 0
    for _ in range(transient):
        r = core(n, r)
        n += 1
        if not (abs(r) <= OVERFLOW_LIMIT):
            raise Overflow("core orbit escaped during Lyapunov estimation")
    acc = 0.0
    for _ in range(samples):
        d = deriv(n, r)
        if d == 0.0:
            raise DegenerateOrbit("derivative vanished exactly; perturb r0 and retry")
        acc += math.log(abs(d))
        r = core(n, r)
        n += 1
        if not (abs(r) <= OVERFLOW_LIMIT):
            raise Overflow("core orbit escaped during Lyapunov estimation")
    return acc / samples


# ---------------------------------------------------------------------------
# sensitive-pair statistics

@dataclass
class PairStats:
    max_sep: float
    min_sep_after_spread: float | None


def sensitive_pair_stat(core: ScalarCore, r0: float, delta: float, horizon: int,
                        spread_threshold: float = 0.1) -> PairStats:
    """Finite-horizon separation statistics for two nearby core orbits.

    max_sep is the limsup proxy; min_sep_after_spread (the smallest
    separation seen after it first exceeds `spread_threshold`) is the liminf
    proxy, None when the pair never spreads.
    """
    if core.order != 1:
        raise InvalidParam("pair statistics need an order-1 core")
    if not 0.0 < delta <= 1e-8:
        raise InvalidParam("delta must lie in (0, 1e-8]")
    quad = match_quadratic(core)
    if quad is not None:
        a, b = quad
        for r in (r0, r0 + delta):
            if not in_window(a, b, r):
                raise InvalidParam(f"r={r} lies outside the bounded window")
        max_sep, min_after, status = _kernels.quad_pair_sep(
            a, b, r0, delta, horizon, spread_threshold, OVERFLOW_LIMIT)
        if status == _kernels.STATUS_OVERFLOW:
            raise Overflow("core orbit escaped while tracking the pair")
        return PairStats(max_sep, None if math.isnan(min_after) else min_after)
    # generic path, same semantics as the kernel
    r, s = float(r0), float(r0) + delta
    sep = abs(s - r)
    max_sep = sep
    min_after = math.nan
    spread = sep > spread_threshold
    for n in range(horizon):
        r = core(n, r)
        s = core(n, s)
        if not (abs(r) <= OVERFLOW_LIMIT and abs(s) <= OVERFLOW_LIMIT):
            raise Overflow("core orbit escaped while tracking the pair")
        sep = abs(s - r)
        if spread and not (min_after <= sep):
            min_after = sep
        if sep > max_sep:
            max_sep = sep
        if not spread and sep > spread_threshold:
            spread = True
    return PairStats(max_sep, None if math.isnan(min_after) else min_after)


# ---------------------------------------------------------------------------
# behaviors and the classifier

@dataclass(frozen=True)
class Behavior:
    kind: str  # fixed_point | cycle | x_axis_limit | chaotic | unbounded | undetermined | singular
    period: int | None = None

    @staticmethod
    def cycle(q: int) -> "Behavior":
        return Behavior("fixed_point") if q == 1 else Behavior("cycle", q)

    def __str__(self) -> str:
        if self.kind == "cycle":
            return f"cycle({self.period})"
        if self.kind == "chaotic":
            return "chaotic (operational)"
        return self.kind


@dataclass
class ClassifyReport:
    window_ok: bool
    mu_max: float
    mu_mu_max: float
    y_bound: float
    predicted: Behavior
    observed: Behavior
    verdict: str  # agree | disagree | out_of_theorem_scope
    r0: float
    core_period: int | None = None
    core_lyapunov: float | None = None
    notes: list[str] = field(default_factory=list)


def label_orbit(orbit: Orbit, quad: tuple[float, float] | None = None,
                cycle_tol: float = CYCLE_TOL, max_period: int = CYCLE_MAX_PERIOD,
                y_axis_tol: float = Y_AXIS_TOL,
                chaos_threshold: float = CHAOS_LYAPUNOV) -> Behavior:
    """Observed behavior of a finite orbit, in the classifier's enumeration.

    Check order: divergence, approach to the x-axis, a cycle of the pair
    sequence, then (when the analytic core derivative is available via
    `quad`) the operational chaos test.
    """
    if orbit.status == OVERFLOW:
        return Behavior("unbounded")
    if orbit.status == SINGULAR:
        return Behavior("singular")
    pts = orbit.as_array()
    tail_len = min(max(3 * max_period, len(pts) // 2), len(pts), 4096)
    tail = pts[-tail_len:]
    if tail_len >= 3 * max_period:
        if float(np.max(np.abs(tail[:, 1]))) < y_axis_tol:
            return Behavior("x_axis_limit")
        rep = detect_cycle(tail, cycle_tol, max_period)
        if rep is not None:
            return Behavior.cycle(rep.period)
    if quad is not None:
        a, b = quad
        d = 2.0 * a * tail[:, 0] + b
        d = d[np.abs(d) > 1e-300]
        if d.size and float(np.mean(np.log(np.abs(d)))) > chaos_threshold:
            return Behavior("chaotic")
    return Behavior("undetermined")


def classify_rhsc(q: QuadraticCoreParams, init: tuple[float, float],
                  budget: int = 20_000) -> ClassifyReport:
    """Predict the orbit class of the quadratic-core ratio system from theory
    and compare with a simulated orbit.

    Prediction, for in-window starting ratios r0 = alpha_0 x0 / y0:
    alpha -> 0 gives an x-axis limit set; alpha -> p-cycle with a period-q
    core gives a cycle of period lcm(p, q); a bounded alpha with a positive
    core Lyapunov estimate and no short core period gives operational chaos.
    Off-window ratios (other than 0 and +-b/a, which the theory excludes)
    diverge.  Limits of alpha whose cycle contains 0 are refused
    ("out_of_theorem_scope").
    """
    if not 0.0 < q.b < 4.0:
        raise InvalidParam(f"classifier needs 0 < b < 4, got b={q.b}")
    x0, y0 = float(init[0]), float(init[1])
    if y0 == 0.0:
        raise InvalidParam("y0 must be nonzero")
    r0 = value_at(q.alpha, 0) * x0 / y0
    window_ok = in_window(q.a, q.b, r0)
    m1 = mu_max(q.a, q.b)
    m2 = q.a * m1 * m1 + q.b * m1
    ybound = y_ratio_bound(q.b) * abs_bound(q.alpha)
    notes: list[str] = []

    es = eventual_structure(q.alpha)
    p = es.period
    alpha_to_zero = es.limit_kind == "constant" and es.limit_values[0] == 0.0
    zero_in_cycle = p >= 2 and any(v == 0.0 for v in es.limit_values)

    excluded = r0 == 0.0 or abs(abs(r0) - abs(q.b / q.a)) <= 1e-14 * abs(q.b / q.a)

    core_period = None
    core_lyap = None
    if window_ok:
        transient = max(DEFAULT_TRANSIENT, budget // 4)
        tail = max(6 * CYCLE_MAX_PERIOD, 384)
        values, status, _ = _kernels.quad_orbit(q.a, q.b, r0, transient + tail, OVERFLOW_LIMIT)
        if status == _kernels.STATUS_OK:
            rep = detect_cycle(values[-tail:], CYCLE_TOL, CYCLE_MAX_PERIOD)
            core_period = rep.period if rep else None
            try:
                core_lyap = lyapunov_core(q, r0, transient, max(budget, 20_000))
            except DegenerateOrbit:
                core_lyap = lyapunov_core(q, r0 * (1.0 + 1e-9), transient, max(budget, 20_000))
        else:
            notes.append("core orbit escaped despite in-window r0")

    if zero_in_cycle:
        predicted = Behavior("undetermined")
        notes.append("alpha converges to a cycle containing 0; outside the classifier's scope")
    elif excluded:
        predicted = Behavior("undetermined")
        notes.append("r0 is one of the excluded starting ratios (0 or +-b/a)")
    elif not window_ok:
        predicted = Behavior("unbounded")
    elif alpha_to_zero:
        predicted = Behavior("x_axis_limit")
        if core_period is None:
            notes.append("x-motion stays aperiodic while the orbit approaches the x-axis")
    elif core_period is not None:
        predicted = Behavior.cycle(lcm_period(p, core_period))
        if q.b > 3.83:
            notes.append("b sits in the nominally chaotic range but the core "
                         "locks onto a periodic window")
    elif core_lyap is not None and core_lyap > CHAOS_LYAPUNOV:
        predicted = Behavior("chaotic")
    else:
        predicted = Behavior("undetermined")
        notes.append("core shows neither a short period nor a positive Lyapunov estimate")

    system = make_system("rhsc", a=q.a, b=q.b, alpha=q.alpha)
    orbit = iterate_system(system, (x0, y0), budget)
    observed = label_orbit(orbit, quad=(q.a, q.b))

    if zero_in_cycle or excluded:
        verdict = "out_of_theorem_scope"
    else:
        verdict = "agree" if predicted == observed else "disagree"
    return ClassifyReport(window_ok, m1, m2, ybound, predicted, observed, verdict,
                          r0, core_period, core_lyap, notes)


# ---------------------------------------------------------------------------
# bifurcation sweep

@dataclass
class SweepRow:
    b: float
    samples: np.ndarray
    lyapunov: float
    escaped: bool


def bifurcation_sweep(a: float, b_from: float, b_to: float, b_step: float,
                      transient: int, samples: int,
                      lyap_samples: int = 4000) -> list[SweepRow]:
    """Attractor samples and a Lyapunov estimate for each b on the half-open
    grid [b_from, b_to), starting each core orbit at the critical point
    -b/(2a)."""
    if a == 0.0:
        raise InvalidParam("need a != 0")
    if b_step <= 0.0 or not b_from < b_to:
        raise InvalidParam("empty parameter range")
    if not (0.0 < b_from and b_to <= 4.0 + 1e-12):
        raise InvalidParam("sweep range must lie inside (0, 4]")
    if transient < 0 or samples < 1:
        raise InvalidParam("need transient >= 0 and samples >= 1")
    count = int(round((b_to - b_from) / b_step))
    if count < 1:
        raise InvalidParam("empty parameter range")
    bs = b_from + b_step * np.arange(count, dtype=float)
    samp, lam, esc = _kernels.quad_sweep(a, bs, transient, samples, lyap_samples,
                                         OVERFLOW_LIMIT)
    return [SweepRow(float(bs[i]), samp[i], float(lam[i]), bool(esc[i]))
            for i in range(count)]


# ---------------------------------------------------------------------------
# closed-form affine cores

def affine_order1_closed_form(b: float, c: float, s0: float):
    """n -> s_n for s' = b s + c."""
    if b == 1.0:
        return lambda n: s0 + c * n
    p = c / (1.0 - b)
    amp = s0 - p

    def term(n: int) -> float:
        return amp * b**n + p

    return term


def affine_core_closed_form(a: float, b: float, c: float, s0: float, s1: float):
    """n -> s_n for s'' = a s + b s' + c, via the characteristic roots of
    z^2 = b z + a (complex arithmetic covers the oscillatory case)."""
    disc = cmath.sqrt(b * b + 4.0 * a)
    z1 = (b + disc) / 2.0
    z2 = (b - disc) / 2.0
    denom = 1.0 - a - b
    if abs(denom) > 1e-12:
        p0, p1 = c / denom, c / denom
        drift = 0.0
    else:
        # z = 1 is a characteristic root; the particular solution grows linearly
        if abs(2.0 - b) < 1e-12:
            raise InvalidParam("doubly resonant affine core (a = -1, b = 2) has no closed form here")
        drift = c / (2.0 - b)
        p0, p1 = 0.0, drift
    e0 = s0 - p0
    e1 = s1 - p1
    if abs(z1 - z2) > 1e-9:
        B = (e1 - z1 * e0) / (z2 - z1)
        A = e0 - B

        def term(n: int) -> float:
            return (A * z1**n + B * z2**n).real + drift * n + (p0 if drift == 0.0 else 0.0)

    else:
        z = z1
        if abs(z) < 1e-12:
            raise InvalidParam("degenerate affine core with zero characteristic root")
        A = e0
        B = (e1 - A * z) / z

        def term(n: int) -> float:
            return ((A + B * n) * z**n).real + drift * n + (p0 if drift == 0.0 else 0.0)

    return term
