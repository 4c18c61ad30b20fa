"""Forward orbits of planar systems and scalar core recursions.

Truncation convention: with status "singular" the step producing point
`fail_index` raised, so the stored points are 0 .. fail_index-1; with
"overflow" the offending point is kept, so points run 0 .. fail_index.
Non-finite values count as overflow (they only arise past divergence).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParam, Singular
from .mapexpr import evaluate

__all__ = [
    "OVERFLOW_LIMIT",
    "COMPLETED",
    "SINGULAR",
    "OVERFLOW",
    "Orbit",
    "CoreTrace",
    "iterate_system",
    "iterate_core",
]

OVERFLOW_LIMIT = 1e8

COMPLETED = "completed"
SINGULAR = "singular"
OVERFLOW = "overflow"


def _blown(x: float, limit: float) -> bool:
    return not (abs(x) <= limit)  # catches nan as well


@dataclass
class Orbit:
    points: list[tuple[float, float]]
    status: str = COMPLETED
    fail_index: int | None = None
    detail: str | None = None
    provenance: str = "direct"

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    def as_array(self) -> np.ndarray:
        return np.array(self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class CoreTrace:
    values: list[float] = field(default_factory=list)
    status: str = COMPLETED
    fail_index: int | None = None
    detail: str | None = None

    def __len__(self) -> int:
        return len(self.values)


def iterate_system(sys, init: tuple[float, float], steps: int,
                   overflow_limit: float = OVERFLOW_LIMIT) -> Orbit:
    """Iterate any object with a .step(n, x, y) -> (x', y') method.

    points[0] = init; up to `steps` further points are produced, stopping
    early with the appropriate status on Singular or overflow.
    """
    if steps < 1:
        raise InvalidParam(f"steps must be >= 1, got {steps}")
    x, y = float(init[0]), float(init[1])
    points = [(x, y)]
    if _blown(x, overflow_limit) or _blown(y, overflow_limit):
        return Orbit(points, OVERFLOW, fail_index=0)
    for k in range(steps):
        try:
            x, y = sys.step(k, x, y)
        except Singular as exc:
            return Orbit(points, SINGULAR, fail_index=k + 1, detail=str(exc))
        points.append((x, y))
        if _blown(x, overflow_limit) or _blown(y, overflow_limit):
            return Orbit(points, OVERFLOW, fail_index=k + 1)
    return Orbit(points, COMPLETED)


def iterate_core(core, s0: float, s1: float | None, steps: int,
                 overflow_limit: float = OVERFLOW_LIMIT) -> CoreTrace:
    """Run a scalar core recursion for up to `steps` applications.

    Order-2 cores need both initial values and produce
    s[k+2] = phi(k, s[k], s[k+1]).  Order-1 cores take a single value r0 = s0
    (pass s1=None) and produce r[k+1] = phi(k, r[k]).
    """
    if core.order == 2:
        if s1 is None:
            raise InvalidParam("order-2 core needs two initial values")
        values = [float(s0), float(s1)]
    else:
        if s1 is not None:
            raise InvalidParam("order-1 core takes a single initial value")
        values = [float(s0)]
    expr = core.expr
    for i, v in enumerate(values):
        if _blown(v, overflow_limit):
            return CoreTrace(values[: i + 1], OVERFLOW, i)
    for k in range(steps):
        try:
            if core.order == 2:
                nxt = evaluate(expr, k, values[k], values[k + 1])
            else:
                nxt = evaluate(expr, k, 0.0, values[k])
        except Singular as exc:
            return CoreTrace(values, SINGULAR, fail_index=len(values), detail=str(exc))
        values.append(nxt)
        if _blown(nxt, overflow_limit):
            return CoreTrace(values, OVERFLOW, fail_index=len(values) - 1)
    return CoreTrace(values, COMPLETED)
