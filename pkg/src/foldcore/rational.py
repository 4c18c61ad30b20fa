"""The rational-system catalog and its closed-form foldings.

All catalog systems share the first equation x' = alpha_n x / y, so they all
share the passive equation y_n = alpha_n x_n / x_{n+1}; they differ in the
second equation and hence in the core:

  rh    general six-coefficient linear-fractional pair; first-order rational core
  rhsc  y' = beta'_n y/(x + B_n y) with beta'_n = alpha_{n+1}/(a alpha_n),
        B_n = b/(a alpha_n); core r' = a r^2 + b r (order 1)
  mhs   autonomous rhsc (alpha constant), displayed via beta = 1/a,
        gamma = b/(a alpha)
  rnh   y' = alpha_n alpha_{n+1} / ((a x + b) y); core s'' = a s^2 + b s on
        the skipped index (order 2, even/odd split)
  coch  autonomous rnh, beta = alpha^2/a, gamma = b/a
  lna   y' = alpha_n alpha_{n+1} x / (alpha_n b x + (a x + c) y); affine core
        s'' = a s + b s' + c (order 2)
  lah   lna with a = 0 and constant alpha, beta = alpha/b, gamma = c/(alpha b);
        core s'' = b s' + c (order 1)
  lnh   lna with b = 0 and constant alpha, beta = alpha^2/a, gamma = c/a;
        core s'' = a s + c (order 2, skip)

The quadratic core r' = a r^2 + b r is conjugate to the logistic map
t' = b t (1 - t) via t = -a r / b, which is what makes the whole family's
cycle and chaos structure explicit.
"""

from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidParam, checked_div
from .folding import Folding, ScalarCore, SemiInversion
from .mapexpr import (
    Add,
    Coeff,
    Div,
    MapExpr,
    Mul,
    Neg,
    Num,
    Pow,
    Var,
    add_,
    div_,
    mul_,
    pow_,
    sub_,
    uses_var,
)
from .seqcoef import (
    CoeffSeq,
    Constant,
    Periodic,
    coeff_from_obj,
    coeff_to_obj,
    value_at,
)

__all__ = [
    "RationalParams",
    "QuadraticCoreParams",
    "CatalogId",
    "CatalogSystem",
    "make_system",
    "system_from_obj",
    "step_rh",
    "passive_rh",
    "core_rh",
    "core_rh_expr",
    "step_catalog",
    "quadratic_core_step",
    "logistic_step",
    "logistic_conjugate",
    "quadratic_core",
    "skip_quadratic_core",
    "affine_core",
    "affine_core_order1",
    "match_quadratic",
    "match_affine_order1",
    "mu_max",
    "quad_window",
    "in_window",
    "y_ratio_bound",
]


# ---------------------------------------------------------------------------
# general six-coefficient system

@dataclass(frozen=True)
class RationalParams:
    """Coefficient sequences of the general pair
    x' = (alpha x + beta y)/(A x + y), y' = (alpha' x + beta' y)/(x + B y)."""

    alpha: CoeffSeq
    beta: CoeffSeq
    A: CoeffSeq
    alpha_p: CoeffSeq
    beta_p: CoeffSeq
    B: CoeffSeq


def step_rh(p: RationalParams, n: int, x: float, y: float) -> tuple[float, float]:
    a0 = value_at(p.alpha, n)
    b0 = value_at(p.beta, n)
    A0 = value_at(p.A, n)
    ap = value_at(p.alpha_p, n)
    bp = value_at(p.beta_p, n)
    B0 = value_at(p.B, n)
    xp = checked_div(a0 * x + b0 * y, A0 * x + y, "A_n*x + y", n)
    yp = checked_div(ap * x + bp * y, x + B0 * y, "x + B_n*y", n)
    return xp, yp


def passive_rh(p: RationalParams, n: int, x: float, x_next: float) -> float:
    """Solve the first equation for y: y = x (alpha_n - A_n x') / (x' - beta_n)."""
    a0 = value_at(p.alpha, n)
    A0 = value_at(p.A, n)
    b0 = value_at(p.beta, n)
    return checked_div(x * (a0 - A0 * x_next), x_next - b0, "x_{n+1} - beta_n", n)


def core_rh(p: RationalParams, n: int, s: float) -> float:
    """One application of the general first-order rational core.

    The core drives x_{n+2} from s = x_{n+1} alone; its coefficients mix the
    parameter values at indices n and n+1.  Degenerate parameter choices are
    not special-cased: the full rational form is evaluated and a vanishing
    denominator reports Singular.
    """
    a1 = value_at(p.alpha, n + 1)
    b1 = value_at(p.beta, n + 1)
    A1 = value_at(p.A, n + 1)
    a0 = value_at(p.alpha, n)
    b0 = value_at(p.beta, n)
    A0 = value_at(p.A, n)
    ap = value_at(p.alpha_p, n)
    bp = value_at(p.beta_p, n)
    B0 = value_at(p.B, n)
    k = A0 * B0 - 1.0
    m = b0 - a0 * B0
    w = A0 * bp - ap
    d = ap * b0 - a0 * bp
    num = a1 * k * s * s + (a1 * m + b1 * w) * s + b1 * d
    den = A1 * k * s * s + (A1 * m + w) * s + d
    return checked_div(num, den, "core denominator", n)


def core_rh_expr(p: RationalParams) -> MapExpr:
    """The same core as an expression in v = x_{n+1} (used for fold output)."""
    s = Var("v")
    a1 = Coeff("alpha", p.alpha, 1)
    b1 = Coeff("beta", p.beta, 1)
    A1 = Coeff("A", p.A, 1)
    a0 = Coeff("alpha", p.alpha)
    b0 = Coeff("beta", p.beta)
    A0 = Coeff("A", p.A)
    ap = Coeff("alpha_p", p.alpha_p)
    bp = Coeff("beta_p", p.beta_p)
    B0 = Coeff("B", p.B)
    k = sub_(mul_(A0, B0), Num(1.0))
    m = sub_(b0, mul_(a0, B0))
    w = sub_(mul_(A0, bp), ap)
    d = sub_(mul_(ap, b0), mul_(a0, bp))
    num = add_(mul_(a1, k, pow_(s, 2)), mul_(add_(mul_(a1, m), mul_(b1, w)), s), mul_(b1, d))
    den = add_(mul_(A1, k, pow_(s, 2)), mul_(add_(mul_(A1, m), w), s), d)
    return Div(num, den)


def passive_rh_expr(p: RationalParams) -> MapExpr:
    u, w = Var("u"), Var("v")
    return Div(
        mul_(u, sub_(Coeff("alpha", p.alpha), mul_(Coeff("A", p.A), w))),
        sub_(w, Coeff("beta", p.beta)),
    )


# ---------------------------------------------------------------------------
# quadratic-core family

@dataclass(frozen=True)
class QuadraticCoreParams:
    """Parameters of the quadratic core r' = a r^2 + b r driven through the
    ratio system: a != 0 and alpha_n != 0 everywhere (probed on the first
    indices).  The derived second-equation coefficients are
    beta'_n = alpha_{n+1} / (a alpha_n) and B_n = b / (a alpha_n)."""

    a: float
    b: float
    alpha: CoeffSeq = field(default_factory=lambda: Constant(1.0))

    def __post_init__(self):
        if self.a == 0.0:
            raise InvalidParam("quadratic core needs a != 0")
        for n in range(64):
            if value_at(self.alpha, n) == 0.0:
                raise InvalidParam(f"alpha_n must be nonzero (alpha_{n} = 0)")

    def beta_p(self, n: int) -> float:
        return value_at(self.alpha, n + 1) / (self.a * value_at(self.alpha, n))

    def B(self, n: int) -> float:
        return self.b / (self.a * value_at(self.alpha, n))

    def rational_params(self) -> RationalParams:
        """The general-system instantiation A = alpha' = beta = 0 plus the
        derived beta', B.  Exact only for constant or periodic alpha (the
        derived ratios stay in the closed sequence family there)."""
        zero = Constant(0.0)
        if isinstance(self.alpha, Constant):
            bp: CoeffSeq = Constant(self.beta_p(0))
            B: CoeffSeq = Constant(self.B(0))
        elif isinstance(self.alpha, Periodic):
            period = self.alpha.period
            bp = Periodic([self.beta_p(n) for n in range(period)])
            B = Periodic([self.B(n) for n in range(period)])
        else:
            raise InvalidParam("derived coefficients need constant or periodic alpha")
        return RationalParams(alpha=self.alpha, beta=zero, A=zero,
                              alpha_p=zero, beta_p=bp, B=B)


def quadratic_core_step(q: QuadraticCoreParams, r: float) -> float:
    """r -> a r^2 + b r (total; alpha plays no role in the core)."""
    return q.a * r * r + q.b * r


def logistic_step(b: float, t: float) -> float:
    return b * t * (1.0 - t)


def logistic_conjugate(q: QuadraticCoreParams, r: float) -> float:
    """The change of variables t = -a r / b carrying the quadratic core onto
    the logistic map t' = b t (1 - t)."""
    if q.b == 0.0:
        raise InvalidParam("conjugacy needs b != 0")
    return -q.a * r / q.b


def mu_max(a: float, b: float) -> float:
    """Extremal value of r -> a r^2 + b r, attained at r = -b/(2a)."""
    return -b * b / (4.0 * a)


def quad_window(a: float, b: float) -> tuple[float, float]:
    """The initial-ratio interval on which orbits stay bounded:
    (0, -b/a) for a < 0, (-b/a, 0) for a > 0."""
    lo, hi = sorted((0.0, -b / a))
    return lo, hi


def in_window(a: float, b: float, r0: float) -> bool:
    lo, hi = quad_window(a, b)
    return lo < r0 < hi


def y_ratio_bound(b: float) -> float:
    """sup x_n/x_{n+1} once confined: mu_max / mu(mu_max) = 16 / (b^2 (4 - b))."""
    return 16.0 / (b * b * (4.0 - b))


# ---------------------------------------------------------------------------
# core constructors and structural matchers

def quadratic_core(a: float, b: float) -> ScalarCore:
    v = Var("v")
    return ScalarCore(1, add_(mul_(Num(float(a)), pow_(v, 2)), mul_(Num(float(b)), v)))


def skip_quadratic_core(a: float, b: float) -> ScalarCore:
    u = Var("u")
    return ScalarCore(2, add_(mul_(Num(float(a)), pow_(u, 2)), mul_(Num(float(b)), u)))


def affine_core(a: float, b: float, c: float) -> ScalarCore:
    return ScalarCore(2, add_(mul_(Num(float(a)), Var("u")),
                              mul_(Num(float(b)), Var("v")), Num(float(c))))


def affine_core_order1(b: float, c: float) -> ScalarCore:
    return ScalarCore(1, add_(mul_(Num(float(b)), Var("v")), Num(float(c))))


def _linear_terms(expr: MapExpr, var: str) -> tuple[float, float, float] | None:
    """Decompose sum-of-monomials exprs into (quadratic, linear, constant)
    coefficients in `var`; None when the shape is anything else."""
    terms = expr.terms if isinstance(expr, Add) else (expr,)
    c2 = c1 = c0 = 0.0
    for t in terms:
        sign = 1.0
        while isinstance(t, Neg):
            sign = -sign
            t = t.arg
        coef = sign
        node = t
        if isinstance(t, Mul):
            nums = [f for f in t.factors if isinstance(f, Num)]
            rest = [f for f in t.factors if not isinstance(f, Num)]
            if len(rest) > 1:
                return None
            for f in nums:
                coef *= f.value
            node = rest[0] if rest else Num(1.0)
        if isinstance(node, Num):
            c0 += coef * node.value
        elif isinstance(node, Var) and node.name == var:
            c1 += coef
        elif (isinstance(node, Pow) and node.exponent == 2
              and isinstance(node.base, Var) and node.base.name == var):
            c2 += coef
        else:
            return None
    return c2, c1, c0


def match_quadratic(core: ScalarCore) -> tuple[float, float] | None:
    """(a, b) when the core is r' = a r^2 + b r; None otherwise."""
    var = "v" if core.order == 1 else "u"
    if core.order == 2 and uses_var(core.expr, "v"):
        return None
    parts = _linear_terms(core.expr, var)
    if parts is None or parts[2] != 0.0 or parts[0] == 0.0:
        return None
    return parts[0], parts[1]


def match_affine_order1(core: ScalarCore) -> tuple[float, float] | None:
    """(b, c) when the core is s' = b s + c; None otherwise."""
    if core.order != 1:
        return None
    parts = _linear_terms(core.expr, "v")
    if parts is None or parts[0] != 0.0:
        return None
    return parts[1], parts[2]


# ---------------------------------------------------------------------------
# catalog

class CatalogId(str, Enum):
    RH = "rh"
    RHSC = "rhsc"
    RNH = "rnh"
    MHS = "mhs"
    COCH = "coch"
    LNA = "lna"
    LAH = "lah"
    LNH = "lnh"


_AUTONOMOUS = {CatalogId.MHS, CatalogId.COCH, CatalogId.LAH, CatalogId.LNH}
_QUAD_FAMILY = {CatalogId.RHSC, CatalogId.MHS, CatalogId.RNH, CatalogId.COCH}


@dataclass(frozen=True)
class CatalogSystem:
    """A catalog entry with its parameter record; step/folding/expressions
    follow the id's displayed form."""

    id: CatalogId
    a: float | None = None
    b: float | None = None
    c: float | None = None
    alpha: CoeffSeq | None = None
    rparams: RationalParams | None = None

    # -- parameter views -----------------------------------------------------

    def _alpha_const(self) -> float:
        if not isinstance(self.alpha, Constant):
            raise InvalidParam(f"{self.id.value} needs a constant alpha")
        return self.alpha.value

    @property
    def beta(self) -> float:
        al = self._alpha_const()
        if self.id == CatalogId.MHS:
            return 1.0 / self.a
        if self.id in (CatalogId.COCH, CatalogId.LNH):
            return al * al / self.a
        if self.id == CatalogId.LAH:
            return al / self.b
        raise InvalidParam(f"{self.id.value} has no beta view")

    @property
    def gamma(self) -> float:
        al = self._alpha_const()
        if self.id == CatalogId.MHS:
            return self.b / (self.a * al)
        if self.id == CatalogId.COCH:
            return self.b / self.a
        if self.id == CatalogId.LAH:
            return self.c / (al * self.b)
        if self.id == CatalogId.LNH:
            return self.c / self.a
        raise InvalidParam(f"{self.id.value} has no gamma view")

    def quad(self) -> QuadraticCoreParams:
        if self.id not in _QUAD_FAMILY:
            raise InvalidParam(f"{self.id.value} has no quadratic core")
        return QuadraticCoreParams(self.a, self.b, self.alpha)

    # -- stepping ------------------------------------------------------------

    def step(self, n: int, x: float, y: float) -> tuple[float, float]:
        cid = self.id
        if cid == CatalogId.RH:
            return step_rh(self.rparams, n, x, y)
        a0 = value_at(self.alpha, n)
        a1 = value_at(self.alpha, n + 1)
        xp = checked_div(a0 * x, y, "y_n", n)
        if cid == CatalogId.RHSC:
            bp = a1 / (self.a * a0)
            B = self.b / (self.a * a0)
            yp = checked_div(bp * y, x + B * y, "x + B_n*y", n)
        elif cid == CatalogId.MHS:
            yp = checked_div(self.beta * y, x + self.gamma * y, "x + gamma*y", n)
        elif cid == CatalogId.RNH:
            yp = checked_div(a0 * a1, (self.a * x + self.b) * y, "(a*x + b)*y", n)
        elif cid == CatalogId.COCH:
            yp = checked_div(self.beta, (x + self.gamma) * y, "(x + gamma)*y", n)
        elif cid == CatalogId.LNA:
            yp = checked_div(a0 * a1 * x, a0 * self.b * x + (self.a * x + self.c) * y,
                             "alpha_n*b*x + (a*x + c)*y", n)
        elif cid == CatalogId.LAH:
            yp = checked_div(self.beta * x, x + self.gamma * y, "x + gamma*y", n)
        elif cid == CatalogId.LNH:
            yp = checked_div(self.beta * x, (x + self.gamma) * y, "(x + gamma)*y", n)
        else:
            raise InvalidParam(f"unknown catalog id {cid!r}")
        return xp, yp

    # -- expressions and folding ----------------------------------------------

    def f_expr(self) -> MapExpr:
        if self.id == CatalogId.RH:
            p = self.rparams
            return Div(
                add_(mul_(Coeff("alpha", p.alpha), Var("u")),
                     mul_(Coeff("beta", p.beta), Var("v"))),
                add_(mul_(Coeff("A", p.A), Var("u")), Var("v")),
            )
        return Div(mul_(Coeff("alpha", self.alpha), Var("u")), Var("v"))

    def g_expr(self) -> MapExpr:
        cid = self.id
        u, v = Var("u"), Var("v")
        if cid == CatalogId.RH:
            p = self.rparams
            return Div(
                add_(mul_(Coeff("alpha_p", p.alpha_p), u), mul_(Coeff("beta_p", p.beta_p), v)),
                add_(u, mul_(Coeff("B", p.B), v)),
            )
        al0 = Coeff("alpha", self.alpha)
        al1 = Coeff("alpha", self.alpha, 1)
        if cid == CatalogId.RHSC:
            bp = div_(al1, mul_(Num(self.a), al0))
            B = div_(Num(self.b), mul_(Num(self.a), al0))
            return Div(mul_(bp, v), add_(u, mul_(B, v)))
        if cid == CatalogId.MHS:
            return Div(mul_(Num(self.beta), v), add_(u, mul_(Num(self.gamma), v)))
        if cid == CatalogId.RNH:
            return Div(mul_(al0, al1), mul_(add_(mul_(Num(self.a), u), Num(self.b)), v))
        if cid == CatalogId.COCH:
            return Div(Num(self.beta), mul_(add_(u, Num(self.gamma)), v))
        if cid == CatalogId.LNA:
            return Div(
                mul_(al0, al1, u),
                add_(mul_(al0, Num(self.b), u), mul_(add_(mul_(Num(self.a), u), Num(self.c)), v)),
            )
        if cid == CatalogId.LAH:
            return Div(mul_(Num(self.beta), u), add_(u, mul_(Num(self.gamma), v)))
        if cid == CatalogId.LNH:
            return Div(mul_(Num(self.beta), u), mul_(add_(u, Num(self.gamma)), v))
        raise InvalidParam(f"unknown catalog id {cid!r}")

    def passive(self) -> SemiInversion:
        if self.id == CatalogId.RH:
            return SemiInversion(passive_rh_expr(self.rparams))
        return SemiInversion(Div(mul_(Coeff("alpha", self.alpha), Var("u")), Var("v")))

    def folding(self) -> Folding:
        cid = self.id
        if cid == CatalogId.RH:
            core = ScalarCore(1, core_rh_expr(self.rparams))
        elif cid in (CatalogId.RHSC, CatalogId.MHS):
            core = quadratic_core(self.a, self.b)
        elif cid in (CatalogId.RNH, CatalogId.COCH):
            core = skip_quadratic_core(self.a, self.b)
        elif cid == CatalogId.LNA:
            core = affine_core(self.a, self.b, self.c)
        elif cid == CatalogId.LAH:
            core = affine_core_order1(self.b, self.c)
        elif cid == CatalogId.LNH:
            core = affine_core(self.a, 0.0, self.c)
        else:
            raise InvalidParam(f"unknown catalog id {cid!r}")
        return Folding(core=core, passive=self.passive(), f=self.f_expr())

    # -- sampling and serialization -------------------------------------------

    def sample_inits(self, rng, count: int) -> list[tuple[float, float]]:
        """Seeded in-domain initial points appropriate for the id's bounded
        regime (used by consistency checks)."""
        cid = self.id
        out = []
        a0 = value_at(self.alpha, 0) if self.alpha is not None else None
        for _ in range(count):
            if cid in (CatalogId.RHSC, CatalogId.MHS):
                lo, hi = quad_window(self.a, self.b)
                r0 = lo + (0.08 + 0.84 * rng.uniform()) * (hi - lo)
                x0 = rng.uniform(0.5, 2.0)
                out.append((x0, a0 * x0 / r0))
            elif cid in (CatalogId.RNH, CatalogId.COCH):
                lo, hi = quad_window(self.a, self.b)
                span = hi - lo
                s0 = lo + (0.08 + 0.84 * rng.uniform()) * span
                s1 = lo + (0.08 + 0.84 * rng.uniform()) * span
                out.append((s0, a0 * s0 / s1))
            elif cid in (CatalogId.LNA, CatalogId.LAH, CatalogId.LNH):
                s_star = self._affine_fixed_value()
                s0 = s_star * rng.uniform(0.92, 1.08)
                s1 = s_star * rng.uniform(0.92, 1.08)
                out.append((s0, a0 * s0 / s1))
            else:
                out.append((rng.uniform(0.6, 1.8), rng.uniform(0.6, 1.8)))
        return out

    def _affine_fixed_value(self) -> float:
        a = 0.0 if self.id == CatalogId.LAH else self.a
        b = 0.0 if self.id == CatalogId.LNH else self.b
        denom = 1.0 - a - b
        return self.c / denom if abs(denom) > 1e-9 else 1.0

    def to_obj(self) -> dict:
        if self.id == CatalogId.RH:
            p = self.rparams
            return {"system": "rh", "params": {
                "alpha": coeff_to_obj(p.alpha), "beta": coeff_to_obj(p.beta),
                "A": coeff_to_obj(p.A), "alpha_p": coeff_to_obj(p.alpha_p),
                "beta_p": coeff_to_obj(p.beta_p), "B": coeff_to_obj(p.B)}}
        out = {"system": self.id.value, "alpha": coeff_to_obj(self.alpha)}
        for name in ("a", "b", "c"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out


def make_system(id, *, a=None, b=None, c=None, alpha=1.0, beta=None, gamma=None,
                rparams: RationalParams | None = None) -> CatalogSystem:
    """Build a catalog system; autonomous ids accept the (beta, gamma) views
    instead of (a, b, c)."""
    try:
        cid = CatalogId(id)
    except ValueError as exc:
        raise InvalidParam(f"unknown catalog id {id!r}") from exc
    if cid == CatalogId.RH:
        if rparams is None:
            raise InvalidParam("rh needs the six-coefficient parameter record")
        return CatalogSystem(cid, rparams=rparams)
    al = coeff_from_obj(alpha)
    if cid in _AUTONOMOUS and not isinstance(al, Constant):
        raise InvalidParam(f"{cid.value} is autonomous and needs a constant alpha")
    av = al.value if isinstance(al, Constant) else None
    if beta is not None or gamma is not None:
        if beta is None or gamma is None:
            raise InvalidParam("give both beta and gamma or neither")
        if cid == CatalogId.MHS:
            a = 1.0 / beta
            b = gamma * av / beta
        elif cid == CatalogId.COCH:
            a = av * av / beta
            b = gamma * a
        elif cid == CatalogId.LAH:
            b = av / beta
            c = gamma * av * b
        elif cid == CatalogId.LNH:
            a = av * av / beta
            c = gamma * a
        else:
            raise InvalidParam(f"{cid.value} takes (a, b, c) parameters, not (beta, gamma)")
    if cid in _QUAD_FAMILY:
        if a is None or b is None:
            raise InvalidParam(f"{cid.value} needs parameters a and b")
        QuadraticCoreParams(float(a), float(b), al)  # validates a != 0, alpha != 0
        return CatalogSystem(cid, a=float(a), b=float(b), alpha=al)
    if cid == CatalogId.LNA:
        if a is None or b is None or c is None:
            raise InvalidParam("lna needs parameters a, b and c")
        if abs(a) + abs(b) == 0.0:
            raise InvalidParam("lna needs |a| + |b| > 0")
        return CatalogSystem(cid, a=float(a), b=float(b), c=float(c), alpha=al)
    if cid == CatalogId.LAH:
        if b is None or c is None:
            raise InvalidParam("lah needs parameters b and c")
        if b == 0.0:
            raise InvalidParam("lah needs b != 0")
        return CatalogSystem(cid, a=0.0, b=float(b), c=float(c), alpha=al)
    if cid == CatalogId.LNH:
        if a is None or c is None:
            raise InvalidParam("lnh needs parameters a and c")
        if a == 0.0:
            raise InvalidParam("lnh needs a != 0")
        return CatalogSystem(cid, a=float(a), b=0.0, c=float(c), alpha=al)
    raise InvalidParam(f"unknown catalog id {id!r}")


def system_from_obj(obj: dict) -> CatalogSystem:
    sid = obj.get("system")
    if sid == "rh":
        p = obj.get("params", obj)
        rp = RationalParams(*(coeff_from_obj(p[k])
                              for k in ("alpha", "beta", "A", "alpha_p", "beta_p", "B")))
        return make_system("rh", rparams=rp)
    kwargs = {}
    for key in ("a", "b", "c", "beta", "gamma"):
        if key in obj and obj[key] is not None:
            kwargs[key] = float(obj[key])
    return make_system(sid, alpha=obj.get("alpha", 1.0), **kwargs)


def step_catalog(sys: CatalogSystem, n: int, x: float, y: float) -> tuple[float, float]:
    """One step of the named system at index n."""
    return sys.step(n, x, y)
