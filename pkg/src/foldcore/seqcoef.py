"""Time-indexed real coefficient sequences.

Every nonautonomous map in this package draws its coefficients from a
CoeffSeq: a constant, a periodic cycle, a sequence converging geometrically
to a constant or cycle, or finitely many explicit overrides in front of one
of the former.  Values are defined for every index n >= 0 and instances are
immutable, so they can be shared freely across workers.
"""

import math
from dataclasses import dataclass, field
from typing import Union

from .errors import InvalidParam

__all__ = [
    "CoeffSeq",
    "Constant",
    "Periodic",
    "ConvergentToPeriodic",
    "Explicit",
    "EventualStructure",
    "value_at",
    "eventual_structure",
    "abs_bound",
    "coeff_to_obj",
    "coeff_from_obj",
]


@dataclass(frozen=True)
class Constant:
    value: float

    def value_at(self, n: int) -> float:
        return self.value


@dataclass(frozen=True)
class Periodic:
    """A cyclic sequence; the stored values always form one minimal period."""

    values: tuple[float, ...]

    def __init__(self, values):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise InvalidParam("Periodic needs at least one value")
        object.__setattr__(self, "values", _minimal_period(vals))

    @property
    def period(self) -> int:
        return len(self.values)

    def value_at(self, n: int) -> float:
        return self.values[n % len(self.values)]


def _minimal_period(vals: tuple[float, ...]) -> tuple[float, ...]:
    n = len(vals)
    for p in range(1, n):
        if n % p == 0 and all(vals[i] == vals[i % p] for i in range(n)):
            return vals[:p]
    return vals


@dataclass(frozen=True)
class ConvergentToPeriodic:
    """limit(n) plus a geometric deviation: term = limit(n) + (initial - limit(0)) * decay**n."""

    limit: Union[Constant, Periodic]
    initial: float
    decay: float

    def __post_init__(self):
        if not isinstance(self.limit, (Constant, Periodic)):
            raise InvalidParam("limit must be Constant or Periodic")
        if not 0.0 < self.decay < 1.0:
            raise InvalidParam(f"decay must lie strictly in (0, 1), got {self.decay}")

    def value_at(self, n: int) -> float:
        dev = self.initial - self.limit.value_at(0)
        return self.limit.value_at(n) + dev * self.decay**n


@dataclass(frozen=True)
class Explicit:
    """Finitely many overriding values, then the tail rule (evaluated at the same index)."""

    prefix: tuple[float, ...]
    tail: "CoeffSeq"

    def __init__(self, prefix, tail):
        object.__setattr__(self, "prefix", tuple(float(v) for v in prefix))
        object.__setattr__(self, "tail", tail)

    def value_at(self, n: int) -> float:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.tail.value_at(n)


CoeffSeq = Union[Constant, Periodic, ConvergentToPeriodic, Explicit]


def value_at(seq: CoeffSeq, n: int) -> float:
    """The n-th term of the sequence, defined for every n >= 0."""
    if n < 0:
        raise InvalidParam(f"sequence index must be >= 0, got {n}")
    return seq.value_at(n)


@dataclass(frozen=True)
class EventualStructure:
    """Asymptotic behavior class: what the sequence settles onto."""

    limit_kind: str  # "constant" | "periodic" | "none"
    period: int
    limit_values: tuple[float, ...] = field(default_factory=tuple)


def eventual_structure(seq: CoeffSeq) -> EventualStructure:
    """Report the minimal period of the sequence's limit (period 1 for constants).

    The variant set is closed under taking limits, so "none" is reserved for
    future non-convergent tails and never produced by the current variants.
    """
    if isinstance(seq, Constant):
        return EventualStructure("constant", 1, (seq.value,))
    if isinstance(seq, Periodic):
        kind = "constant" if seq.period == 1 else "periodic"
        return EventualStructure(kind, seq.period, seq.values)
    if isinstance(seq, ConvergentToPeriodic):
        return eventual_structure(seq.limit)
    if isinstance(seq, Explicit):
        return eventual_structure(seq.tail)
    raise InvalidParam(f"not a CoeffSeq: {seq!r}")


def abs_bound(seq: CoeffSeq) -> float:
    """An upper bound for sup_n |value_at(seq, n)|."""
    if isinstance(seq, Constant):
        return abs(seq.value)
    if isinstance(seq, Periodic):
        return max(abs(v) for v in seq.values)
    if isinstance(seq, ConvergentToPeriodic):
        return abs_bound(seq.limit) + abs(seq.initial - seq.limit.value_at(0))
    if isinstance(seq, Explicit):
        head = max((abs(v) for v in seq.prefix), default=0.0)
        return max(head, abs_bound(seq.tail))
    raise InvalidParam(f"not a CoeffSeq: {seq!r}")


def coeff_to_obj(seq: CoeffSeq) -> dict:
    """JSON-compatible representation, e.g. {"kind": "periodic", "values": [1, -1]}."""
    if isinstance(seq, Constant):
        return {"kind": "constant", "value": seq.value}
    if isinstance(seq, Periodic):
        return {"kind": "periodic", "values": list(seq.values)}
    if isinstance(seq, ConvergentToPeriodic):
        return {
            "kind": "convergent",
            "limit": coeff_to_obj(seq.limit),
            "initial": seq.initial,
            "decay": seq.decay,
        }
    if isinstance(seq, Explicit):
        return {"kind": "explicit", "prefix": list(seq.prefix), "tail": coeff_to_obj(seq.tail)}
    raise InvalidParam(f"not a CoeffSeq: {seq!r}")


def coeff_from_obj(obj) -> CoeffSeq:
    """Parse a sequence from its JSON form; bare numbers mean a constant and
    already-built CoeffSeq values pass through."""
    if isinstance(obj, (Constant, Periodic, ConvergentToPeriodic, Explicit)):
        return obj
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        if not math.isfinite(obj):
            raise InvalidParam(f"coefficient must be finite, got {obj}")
        return Constant(float(obj))
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidParam(f"cannot parse coefficient sequence from {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "constant":
            return Constant(float(obj["value"]))
        if kind == "periodic":
            return Periodic(obj["values"])
        if kind == "convergent":
            return ConvergentToPeriodic(
                coeff_from_obj(obj["limit"]), float(obj["initial"]), float(obj["decay"])
            )
        if kind == "explicit":
            return Explicit(obj["prefix"], coeff_from_obj(obj["tail"]))
    except KeyError as exc:
        raise InvalidParam(f"missing field {exc} in {kind!r} sequence") from exc
    raise InvalidParam(f"unknown sequence kind {kind!r}")
