"""Folding algebra for planar difference systems.

A planar system x' = f(n,x,y), y' = g(n,x,y) whose first component is
semi-invertible (v recoverable from (n, u, f(n,u,v))) collapses to a scalar
"core" recursion in the x-component plus a non-dynamic "passive" equation
that reconstructs y pointwise:

    s[n+2] = f(n+1, s[n+1], g(n, s[n], h(n, s[n], s[n+1])))      (core)
    y[n]   = h(n, x[n], x[n+1])                                  (passive)

with s0 = x0 and s1 = f(0, x0, y0).  The inverse construction (unfolding)
starts from f, h and a prescribed core phi and produces the g that makes
the system fold back onto phi.  Everything here is exact composition of
MapExpr trees; no numerics are involved until evaluation.
"""

import math
from dataclasses import dataclass, field

from .errors import InvalidParam, Singular
from .mapexpr import (
    Div,
    MapExpr,
    Num,
    Var,
    add_,
    affine_map,
    coeff_periods,
    evaluate,
    invert_in_v,
    mul_,
    render,
    shift_n,
    sub_,
    substitute,
    uses_var,
)
from .orbits import COMPLETED, Orbit, CoreTrace, iterate_core, iterate_system
from .seqcoef import CoeffSeq, value_at

__all__ = [
    "SystemSpec",
    "SemiInversion",
    "ScalarCore",
    "Folding",
    "ConsistencyReport",
    "semi_invert_separable",
    "semi_invert_rational",
    "fold",
    "fold_semilinear",
    "unfold_general",
    "unfold_order1",
    "unfold_skip",
    "unfold_affine",
    "reconstruct_orbit",
    "check_fold_consistency",
]


@dataclass(frozen=True)
class SystemSpec:
    """A planar system given by a pair of expression maps."""

    f: MapExpr
    g: MapExpr
    name: str = "custom"

    def step(self, n: int, x: float, y: float) -> tuple[float, float]:
        return evaluate(self.f, n, x, y), evaluate(self.g, n, x, y)


@dataclass(frozen=True)
class SemiInversion:
    """A map h(n, u, w) recovering v from (u, f(n, u, v)); w sits in the v slot.

    `period` is the least common multiple of the eventual minimal periods of
    the coefficient sequences appearing in h (1 when h is autonomous), the p
    that enters the lcm(p, q) orbit-period law.
    """

    expr: MapExpr
    period: int = field(init=False)

    def __post_init__(self):
        periods = coeff_periods(self.expr)
        object.__setattr__(self, "period", math.lcm(*periods) if periods else 1)

    def __call__(self, n: int, u: float, w: float) -> float:
        return evaluate(self.expr, n, u, w)


@dataclass(frozen=True)
class ScalarCore:
    """The scalar recursion produced by a folding.

    order 2: s[n+2] = expr(n, u=s[n], v=s[n+1]) (skip cores read u only);
    order 1: s[n+2] = expr(n, v=s[n+1]), equivalently r[k+1] = expr(k, r[k]).
    """

    order: int
    expr: MapExpr

    def __post_init__(self):
        if self.order not in (1, 2):
            raise InvalidParam(f"core order must be 1 or 2, got {self.order}")
        if self.order == 1 and uses_var(self.expr, "u"):
            raise InvalidParam("order-1 core must not reference s[n]")

    def __call__(self, n: int, s: float, t: float | None = None) -> float:
        if self.order == 1:
            return evaluate(self.expr, n, 0.0, s if t is None else t)
        return evaluate(self.expr, n, s, t)


@dataclass(frozen=True)
class Folding:
    """Core + passive pair, with the initial-value rule of the source system."""

    core: ScalarCore
    passive: SemiInversion
    f: MapExpr

    def initial_core_values(self, x0: float, y0: float) -> tuple[float, float]:
        return float(x0), evaluate(self.f, 0, x0, y0)

    def run_core(self, x0: float, y0: float, n_values: int) -> CoreTrace:
        """The s-sequence s[0..n_values-1] seeded by (x0, y0).

        Both core orders obey the same two-point recursion once seeded
        (an order-1 core simply ignores s[n]), so this always iterates
        s[k+2] = phi(k, s[k], s[k+1]).
        """
        if n_values < 2:
            raise InvalidParam("need at least the two seeded values")
        s0, s1 = self.initial_core_values(x0, y0)
        unified = self.core if self.core.order == 2 else ScalarCore(2, self.core.expr)
        return iterate_core(unified, s0, s1, n_values - 2)

    def describe(self, system: str = "") -> str:
        kind = "order 1"
        if self.core.order == 2:
            kind = "order 2, skip" if not uses_var(self.core.expr, "v") else "order 2"
        lines = []
        if system:
            lines.append(f"system: {system}")
        if self.core.order == 1:
            lhs, cexpr = "s_{n+2}", render(self.core.expr, vname="s_{n+1}")
        else:
            lhs = "s_{n+2}"
            cexpr = render(self.core.expr, uname="s_n", vname="s_{n+1}")
        lines.append(f"core ({kind}): {lhs} = {cexpr}")
        lines.append(f"passive: y_n = {render(self.passive.expr, uname='x_n', vname='x_{n+1}')}")
        lines.append(f"passive period: {self.passive.period}")
        lines.append("init: s_0 = x_0, s_1 = f(0, x_0, y_0)")
        return "\n".join(lines)


def semi_invert_separable(f1: MapExpr, f2: MapExpr, group: str) -> SemiInversion:
    """Semi-inversion of the separable map f(n,u,v) = f1(n,u) * f2(n,v).

    With f2(n, .) a bijection the inversion is global:
    additive group:        h(n,u,w) = f2^{-1}(n, w - f1(n,u))
    multiplicative group:  h(n,u,w) = f2^{-1}(n, w / f1(n,u))
    """
    if uses_var(f1, "v"):
        raise InvalidParam("f1 must depend on u only")
    if uses_var(f2, "u"):
        raise InvalidParam("f2 must depend on v only")
    inv = invert_in_v(f2)
    _check_invertible(f2, inv)
    if group == "additive":
        arg = sub_(Var("v"), f1)
    elif group == "multiplicative":
        # Division reports Singular when f1 hits 0, the group's non-unit.
        arg = Div(Var("v"), f1)
    else:
        raise InvalidParam(f"group must be 'additive' or 'multiplicative', got {group!r}")
    return SemiInversion(substitute(inv, v=arg))


def semi_invert_rational(f: MapExpr) -> SemiInversion:
    """Closed-form semi-inversion of any map linear-fractional in v."""
    inv = invert_in_v(f)
    _check_invertible(f, inv)
    return SemiInversion(inv)


def _check_invertible(f: MapExpr, inv: MapExpr) -> None:
    """Spot-check h(n, u, f(n,u,v)) = v on a few sample points."""
    ok = 0
    for n, u, v in ((0, 0.7, 1.3), (1, 1.9, 0.4), (2, -1.2, 2.3), (3, 0.5, -0.8)):
        try:
            w = evaluate(f, n, u, v)
            back = evaluate(inv, n, u, w)
        except Singular:
            continue
        if abs(back - v) <= 1e-9 * max(1.0, abs(v)):
            ok += 1
    if ok == 0:
        raise InvalidParam("map is not invertible in v on sampled points")


def fold(f: MapExpr, g: MapExpr, h: SemiInversion) -> Folding:
    """Fold the system (f, g) using the semi-inversion h of f.

    The core is the exact composition f(n+1, w, g(n, u, h(n, u, w))); it is
    declared order 1 when the composed tree provably drops its u dependence,
    order 2 otherwise (no symbolic simplification is attempted).
    """
    inner = substitute(g, v=h.expr)  # g(n, u, h(n, u, w))
    core_expr = substitute(shift_n(f, 1), u=Var("v"), v=inner)
    order = 1 if not uses_var(core_expr, "u") else 2
    return Folding(core=ScalarCore(order, core_expr), passive=h, f=f)


def fold_semilinear(a: CoeffSeq, b: CoeffSeq, c: CoeffSeq, g: MapExpr,
                    probe: int = 64) -> Folding:
    """Fold x' = a_n x + b_n y + c_n, y' = g(n, x, y).

    The core is s[n+2] = c[n+1] + a[n+1] s[n+1] + b[n+1] g(n, s[n], y[n])
    with passive y[n] = (s[n+1] - a[n] s[n] - c[n]) / b[n], which requires
    every evaluated b_n to be a unit; the first `probe` indices are checked
    up front.
    """
    for n in range(probe):
        if value_at(b, n) == 0.0:
            raise InvalidParam(f"b_n must be a unit (b_{n} = 0)")
    f = affine_map(a, b, c)
    h = semi_invert_rational(f)
    return fold(f, g, h)


def unfold_general(f: MapExpr, h: SemiInversion, phi: ScalarCore) -> MapExpr:
    """The g making (f, g) fold to a prescribed order-2 core phi:
    g(n,u,v) = h(n+1, f(n,u,v), phi(n, u, f(n,u,v)))."""
    if phi.order != 2:
        raise InvalidParam("unfold_general expects an order-2 core")
    phi_at_f = substitute(phi.expr, v=f)
    return substitute(shift_n(h.expr, 1), u=f, v=phi_at_f)


def unfold_order1(f: MapExpr, h: SemiInversion, phi: ScalarCore) -> MapExpr:
    """Unfold an order-1 core: g(n,u,v) = h(n+1, f(n,u,v), phi(n, f(n,u,v)))."""
    if phi.order != 1:
        raise InvalidParam("unfold_order1 expects an order-1 core")
    phi_at_f = substitute(phi.expr, v=f)
    return substitute(shift_n(h.expr, 1), u=f, v=phi_at_f)


def unfold_skip(f: MapExpr, h: SemiInversion, phi: ScalarCore) -> MapExpr:
    """Unfold a one-variable map applied to s[n] rather than s[n+1]:
    g(n,u,v) = h(n+1, f(n,u,v), phi(n, u)).

    The resulting system folds to s[n+2] = phi(n, s[n]), whose even- and
    odd-indexed terms separately satisfy r[k+1] = phi(k, r[k]).
    """
    if phi.order != 1:
        raise InvalidParam("unfold_skip expects an order-1 core (one-variable map)")
    phi_at_u = substitute(phi.expr, v=Var("u"))
    return substitute(shift_n(h.expr, 1), u=f, v=phi_at_u)


def unfold_affine(f: MapExpr, h: SemiInversion, a: float, b: float, c: float) -> MapExpr:
    """Unfold the affine core phi(s, t) = a s + b t + c:
    g(n,u,v) = h(n+1, f(n,u,v), a u + b f(n,u,v) + c)."""
    if abs(a) + abs(b) == 0.0:
        raise InvalidParam("need |a| + |b| > 0 for an affine core")
    phi_at_f = add_(mul_(Num(float(a)), Var("u")), mul_(Num(float(b)), f), Num(float(c)))
    return substitute(shift_n(h.expr, 1), u=f, v=phi_at_f)


def reconstruct_orbit(folding: Folding, core_solution) -> Orbit:
    """Rebuild (x, y) points from a core solution s: (s[k], h(k, s[k], s[k+1])).

    Returns an Orbit with provenance "reconstructed", truncated with status
    "singular" where h is undefined.
    """
    s = [float(v) for v in core_solution]
    if len(s) < 2:
        raise InvalidParam("core solution must have at least two values")
    h = folding.passive
    points: list[tuple[float, float]] = []
    for k in range(len(s) - 1):
        try:
            y = h(k, s[k], s[k + 1])
        except Singular as exc:
            return Orbit(points, "singular", fail_index=k, detail=str(exc),
                         provenance="reconstructed")
        points.append((s[k], y))
    return Orbit(points, COMPLETED, provenance="reconstructed")


@dataclass
class ConsistencyReport:
    passed: bool
    max_diff: float
    compared: int
    direct_status: str
    recon_status: str
    note: str = ""


def check_fold_consistency(sys, folding: Folding, init: tuple[float, float],
                           steps: int, tol: float) -> ConsistencyReport:
    """Compare the direct orbit with the core+passive reconstruction.

    Passes iff both paths produce steps+1 points and the componentwise max
    absolute difference stays below tol.
    """
    direct = iterate_system(sys, init, steps)
    try:
        trace = folding.run_core(init[0], init[1], steps + 2)
    except Singular as exc:
        trace = CoreTrace([], "singular", fail_index=0, detail=str(exc))
    recon = (reconstruct_orbit(folding, trace.values)
             if len(trace.values) >= 2 else Orbit([], "singular", fail_index=0,
                                                  provenance="reconstructed"))
    m = min(len(direct.points), len(recon.points))
    max_diff = 0.0
    for k in range(m):
        dx = abs(direct.points[k][0] - recon.points[k][0])
        dy = abs(direct.points[k][1] - recon.points[k][1])
        max_diff = max(max_diff, dx, dy)
    note = ""
    complete = True
    if direct.status != COMPLETED:
        note = f"direct orbit {direct.status} at index {direct.fail_index}"
        complete = False
    if trace.status != COMPLETED or recon.status != COMPLETED:
        where = trace.fail_index if trace.status != COMPLETED else recon.fail_index
        which = trace.status if trace.status != COMPLETED else recon.status
        note = (note + "; " if note else "") + f"reconstruction {which} at index {where}"
        complete = False
    passed = complete and m == steps + 1 and max_diff < tol
    return ConsistencyReport(passed, max_diff, m, direct.status, recon.status, note)
