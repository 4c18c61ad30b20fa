"""Exception types and shared numeric guards."""


class FoldcoreError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParam(FoldcoreError):
    """A parameter or argument violates a documented precondition."""


class Singular(FoldcoreError):
    """A map was evaluated where a denominator (effectively) vanishes."""

    def __init__(self, what: str, index: int | None = None):
        self.what = what
        self.index = index
        at = f" at n={index}" if index is not None else ""
        super().__init__(f"singular: {what}{at}")


class Overflow(FoldcoreError):
    """An iterate left the admissible magnitude range."""


class DegenerateOrbit(FoldcoreError):
    """An orbit hit a point where a required derivative is exactly zero."""


# Pole threshold for denominators.  A division is singular when the
# denominator is exactly zero, or collapses below SINGULAR_EPS while the
# numerator stays of order one (a genuine pole crossing).  Tiny/tiny ratios
# are well conditioned and must keep evaluating (e.g. y ~ alpha_n -> 0 on an
# x-axis limit set), and diverging quotients are classified by the orbit
# overflow limit rather than here.
SINGULAR_EPS = 1e-12


def is_singular_div(num: float, den: float) -> bool:
    return den == 0.0 or (abs(den) < SINGULAR_EPS and abs(num) >= 1.0)


def checked_div(num: float, den: float, what: str, index: int | None = None) -> float:
    """Divide, raising Singular on a pole crossing."""
    if is_singular_div(num, den):
        raise Singular(what, index)
    return num / den
