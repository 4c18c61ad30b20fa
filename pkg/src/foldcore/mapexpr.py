"""Closed expression grammar for scalar-valued maps of (n, u, v).

A MapExpr is a small algebraic tree over two state variables and
time-indexed coefficients.  The grammar is deliberately closed (no user
callables): expressions serialize to JSON, compose exactly under
substitution, and every division reports Singular instead of extrapolating
across a vanishing denominator.

Substitution and index shifting are the workhorses: folding a system and
unfolding a prescribed core are both plain compositions of these trees.
"""

from dataclasses import dataclass

from .errors import InvalidParam, Singular, is_singular_div
from .seqcoef import CoeffSeq, Constant, coeff_from_obj, coeff_to_obj, eventual_structure, value_at

__all__ = [
    "Expr",
    "MapExpr",
    "Num",
    "Coeff",
    "Var",
    "Add",
    "Mul",
    "Div",
    "Neg",
    "Pow",
    "add_",
    "sub_",
    "mul_",
    "div_",
    "neg_",
    "pow_",
    "evaluate",
    "substitute",
    "shift_n",
    "uses_var",
    "coeff_periods",
    "render",
    "expr_to_obj",
    "expr_from_obj",
    "ratio_map",
    "affine_map",
    "linear_fractional_map",
    "linear_fractional_parts",
    "invert_in_v",
    "NotLinearFractional",
]


class Expr:
    """Base node; concrete nodes are the frozen dataclasses below."""

    def __call__(self, n: int, u: float = 0.0, v: float = 0.0) -> float:
        return evaluate(self, n, u, v)

    def shift(self, k: int) -> "Expr":
        return shift_n(self, k)

    def subst(self, u: "Expr | None" = None, v: "Expr | None" = None) -> "Expr":
        return substitute(self, u=u, v=v)

    def __str__(self) -> str:
        return render(self)


MapExpr = Expr  # an Expr used as a map of (n, u, v)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Coeff(Expr):
    """A named coefficient sequence, read at index n + shift."""

    name: str
    seq: CoeffSeq
    shift_by: int = 0


@dataclass(frozen=True)
class Var(Expr):
    name: str  # "u" or "v"

    def __post_init__(self):
        if self.name not in ("u", "v"):
            raise InvalidParam(f"variable must be 'u' or 'v', got {self.name!r}")


@dataclass(frozen=True)
class Add(Expr):
    terms: tuple[Expr, ...]


@dataclass(frozen=True)
class Mul(Expr):
    factors: tuple[Expr, ...]


@dataclass(frozen=True)
class Div(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise InvalidParam("exponent must be a positive integer")


_ZERO = Num(0.0)
_ONE = Num(1.0)


def _is_zero(e: Expr) -> bool:
    return isinstance(e, Num) and e.value == 0.0


def _is_one(e: Expr) -> bool:
    return isinstance(e, Num) and e.value == 1.0


# Smart constructors: flatten and drop structural identities so generated
# expressions stay readable.  0/x is never simplified away (it would hide a
# singularity), only x/1.

def add_(*terms: Expr) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        if isinstance(t, Add):
            flat.extend(t.terms)
        elif not _is_zero(t):
            flat.append(t)
    if not flat:
        return _ZERO
    if len(flat) == 1:
        return flat[0]
    return Add(tuple(flat))


def sub_(a: Expr, b: Expr) -> Expr:
    if _is_zero(b):
        return a
    if _is_zero(a):
        return neg_(b)
    return add_(a, neg_(b))


def mul_(*factors: Expr) -> Expr:
    flat: list[Expr] = []
    for f in factors:
        if _is_zero(f):
            return _ZERO
        if isinstance(f, Mul):
            flat.extend(f.factors)
        elif not _is_one(f):
            flat.append(f)
    # pull a leading negative constant out as a Neg (sign flips are exact)
    negated = False
    if flat and isinstance(flat[0], Num) and flat[0].value < 0:
        negated = True
        flat = flat[1:] if flat[0].value == -1.0 else [Num(-flat[0].value), *flat[1:]]
    if not flat:
        out: Expr = _ONE
    elif len(flat) == 1:
        out = flat[0]
    else:
        out = Mul(tuple(flat))
    return neg_(out) if negated else out


def div_(num: Expr, den: Expr) -> Expr:
    if _is_one(den):
        return num
    return Div(num, den)


def neg_(e: Expr) -> Expr:
    if isinstance(e, Num):
        return Num(-e.value)
    if isinstance(e, Neg):
        return e.arg
    return Neg(e)


def pow_(base: Expr, exponent: int) -> Expr:
    if exponent == 1:
        return base
    return Pow(base, exponent)


def evaluate(e: Expr, n: int, u: float, v: float) -> float:
    """Evaluate at (n, u, v); raises Singular where a denominator vanishes."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Coeff):
        return value_at(e.seq, n + e.shift_by)
    if isinstance(e, Var):
        return u if e.name == "u" else v
    if isinstance(e, Add):
        return sum(evaluate(t, n, u, v) for t in e.terms)
    if isinstance(e, Mul):
        out = 1.0
        for f in e.factors:
            out *= evaluate(f, n, u, v)
        return out
    if isinstance(e, Neg):
        return -evaluate(e.arg, n, u, v)
    if isinstance(e, Pow):
        return evaluate(e.base, n, u, v) ** e.exponent
    if isinstance(e, Div):
        num = evaluate(e.num, n, u, v)
        den = evaluate(e.den, n, u, v)
        if is_singular_div(num, den):
            raise Singular(render(e.den), index=n)
        return num / den
    raise InvalidParam(f"not an expression node: {e!r}")


def substitute(e: Expr, u: Expr | None = None, v: Expr | None = None) -> Expr:
    """Simultaneously replace the u and/or v slots with sub-expressions."""
    if isinstance(e, Var):
        if e.name == "u" and u is not None:
            return u
        if e.name == "v" and v is not None:
            return v
        return e
    if isinstance(e, (Num, Coeff)):
        return e
    if isinstance(e, Add):
        return add_(*(substitute(t, u, v) for t in e.terms))
    if isinstance(e, Mul):
        return mul_(*(substitute(f, u, v) for f in e.factors))
    if isinstance(e, Div):
        return Div(substitute(e.num, u, v), substitute(e.den, u, v))
    if isinstance(e, Neg):
        return neg_(substitute(e.arg, u, v))
    if isinstance(e, Pow):
        return pow_(substitute(e.base, u, v), e.exponent)
    raise InvalidParam(f"not an expression node: {e!r}")


def shift_n(e: Expr, k: int) -> Expr:
    """Shift every coefficient reference from index n to n + k."""
    if isinstance(e, Coeff):
        return Coeff(e.name, e.seq, e.shift_by + k)
    if isinstance(e, (Num, Var)):
        return e
    if isinstance(e, Add):
        return Add(tuple(shift_n(t, k) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(tuple(shift_n(f, k) for f in e.factors))
    if isinstance(e, Div):
        return Div(shift_n(e.num, k), shift_n(e.den, k))
    if isinstance(e, Neg):
        return Neg(shift_n(e.arg, k))
    if isinstance(e, Pow):
        return Pow(shift_n(e.base, k), e.exponent)
    raise InvalidParam(f"not an expression node: {e!r}")


def uses_var(e: Expr, name: str) -> bool:
    if isinstance(e, Var):
        return e.name == name
    if isinstance(e, (Num, Coeff)):
        return False
    if isinstance(e, Add):
        return any(uses_var(t, name) for t in e.terms)
    if isinstance(e, Mul):
        return any(uses_var(f, name) for f in e.factors)
    if isinstance(e, Div):
        return uses_var(e.num, name) or uses_var(e.den, name)
    if isinstance(e, (Neg, Pow)):
        return uses_var(e.arg if isinstance(e, Neg) else e.base, name)
    raise InvalidParam(f"not an expression node: {e!r}")


def coeff_periods(e: Expr) -> list[int]:
    """Eventual minimal periods of every coefficient sequence in the tree."""
    out: list[int] = []

    def walk(node: Expr):
        if isinstance(node, Coeff):
            out.append(eventual_structure(node.seq).period)
        elif isinstance(node, Add):
            for t in node.terms:
                walk(t)
        elif isinstance(node, Mul):
            for f in node.factors:
                walk(f)
        elif isinstance(node, Div):
            walk(node.num)
            walk(node.den)
        elif isinstance(node, Neg):
            walk(node.arg)
        elif isinstance(node, Pow):
            walk(node.base)

    walk(e)
    return out


# ---------------------------------------------------------------------------
# rendering

_PREC_ADD, _PREC_MUL, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4


def render(e: Expr, uname: str = "u", vname: str = "v") -> str:
    """Infix rendering with minimal parentheses."""

    def num_str(x: float) -> str:
        return f"{x:g}"

    def go(node: Expr, ctx: int) -> str:
        if isinstance(node, Num):
            s = num_str(node.value)
            if node.value < 0 and ctx > _PREC_ADD:
                return f"({s})"
            return s
        if isinstance(node, Coeff):
            if isinstance(node.seq, Constant):
                return go(Num(node.seq.value), ctx)
            sub = "n" if node.shift_by == 0 else f"{{n+{node.shift_by}}}"
            return f"{node.name}_{sub}"
        if isinstance(node, Var):
            return uname if node.name == "u" else vname
        if isinstance(node, Add):
            parts = []
            for i, t in enumerate(node.terms):
                if i > 0 and isinstance(t, Neg):
                    parts.append(f" - {go(t.arg, _PREC_MUL)}")
                elif i > 0 and isinstance(t, Num) and t.value < 0:
                    parts.append(f" - {num_str(-t.value)}")
                else:
                    parts.append((" + " if i > 0 else "") + go(t, _PREC_ADD + 1 if i else _PREC_ADD))
            s = "".join(parts)
            return f"({s})" if ctx > _PREC_ADD else s
        if isinstance(node, Neg):
            s = f"-{go(node.arg, _PREC_MUL + 1)}"
            return f"({s})" if ctx > _PREC_MUL else s
        if isinstance(node, Mul):
            parts = [go(f, _PREC_MUL + 1) for f in node.factors]
            kept = [p for p in parts if p != "1"] or parts[-1:]
            s = "*".join(kept)
            return f"({s})" if ctx > _PREC_MUL else s
        if isinstance(node, Div):
            s = f"{go(node.num, _PREC_MUL)}/{go(node.den, _PREC_MUL + 1)}"
            return f"({s})" if ctx > _PREC_MUL else s
        if isinstance(node, Pow):
            return f"{go(node.base, _PREC_ATOM)}^{node.exponent}"
        raise InvalidParam(f"not an expression node: {node!r}")

    return go(e, _PREC_ADD)


# ---------------------------------------------------------------------------
# serialization

def expr_to_obj(e: Expr) -> dict:
    if isinstance(e, Num):
        return {"op": "num", "value": e.value}
    if isinstance(e, Coeff):
        out = {"op": "coeff", "name": e.name, "seq": coeff_to_obj(e.seq)}
        if e.shift_by:
            out["shift"] = e.shift_by
        return out
    if isinstance(e, Var):
        return {"op": "var", "name": e.name}
    if isinstance(e, Add):
        return {"op": "add", "args": [expr_to_obj(t) for t in e.terms]}
    if isinstance(e, Mul):
        return {"op": "mul", "args": [expr_to_obj(f) for f in e.factors]}
    if isinstance(e, Div):
        return {"op": "div", "num": expr_to_obj(e.num), "den": expr_to_obj(e.den)}
    if isinstance(e, Neg):
        return {"op": "neg", "arg": expr_to_obj(e.arg)}
    if isinstance(e, Pow):
        return {"op": "pow", "base": expr_to_obj(e.base), "exponent": e.exponent}
    raise InvalidParam(f"not an expression node: {e!r}")


def expr_from_obj(obj) -> Expr:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return Num(float(obj))
    if not isinstance(obj, dict) or "op" not in obj:
        raise InvalidParam(f"cannot parse expression from {obj!r}")
    op = obj["op"]
    if op == "num":
        return Num(float(obj["value"]))
    if op == "coeff":
        return Coeff(obj["name"], coeff_from_obj(obj["seq"]), int(obj.get("shift", 0)))
    if op == "var":
        return Var(obj["name"])
    if op == "add":
        return Add(tuple(expr_from_obj(a) for a in obj["args"]))
    if op == "mul":
        return Mul(tuple(expr_from_obj(a) for a in obj["args"]))
    if op == "div":
        return Div(expr_from_obj(obj["num"]), expr_from_obj(obj["den"]))
    if op == "neg":
        return Neg(expr_from_obj(obj["arg"]))
    if op == "pow":
        return Pow(expr_from_obj(obj["base"]), int(obj["exponent"]))
    raise InvalidParam(f"unknown expression op {op!r}")


# ---------------------------------------------------------------------------
# catalog atoms

def _as_coeff(name: str, c) -> Expr:
    if isinstance(c, Expr):
        return c
    if isinstance(c, (int, float)):
        return Num(float(c))
    return Coeff(name, c)


def ratio_map(alpha) -> Expr:
    """alpha_n * u / v."""
    return Div(mul_(_as_coeff("alpha", alpha), Var("u")), Var("v"))


def affine_map(a, b, c) -> Expr:
    """a_n*u + b_n*v + c_n."""
    return add_(
        mul_(_as_coeff("a", a), Var("u")),
        mul_(_as_coeff("b", b), Var("v")),
        _as_coeff("c", c),
    )


def linear_fractional_map(p, q, r, s) -> Expr:
    """(p_n*u + q_n*v) / (r_n*u + s_n*v)."""
    return Div(
        add_(mul_(_as_coeff("p", p), Var("u")), mul_(_as_coeff("q", q), Var("v"))),
        add_(mul_(_as_coeff("r", r), Var("u")), mul_(_as_coeff("s", s), Var("v"))),
    )


# ---------------------------------------------------------------------------
# linear-fractional structure in v, and closed-form inversion

class NotLinearFractional(InvalidParam):
    """The expression is not linear-fractional in the requested variable."""


_Poly = tuple[Expr, Expr]  # (c0, c1) meaning c0 + c1 * var


def _padd(p: _Poly, q: _Poly) -> _Poly:
    return add_(p[0], q[0]), add_(p[1], q[1])


def _pneg(p: _Poly) -> _Poly:
    return neg_(p[0]), neg_(p[1])


def _pmul(p: _Poly, q: _Poly) -> _Poly:
    # Degree would exceed 1 unless one factor is structurally constant.
    if _is_zero(p[1]):
        return mul_(p[0], q[0]), mul_(p[0], q[1])
    if _is_zero(q[1]):
        return mul_(p[0], q[0]), mul_(p[1], q[0])
    raise NotLinearFractional("product of two terms that both depend on the variable")


_Frac = tuple[_Poly, _Poly]  # (P, Q) meaning P(var) / Q(var)


def _fneg(a: _Frac) -> _Frac:
    return _pneg(a[0]), a[1]


def _fadd(a: _Frac, b: _Frac) -> _Frac:
    return _padd(_pmul(a[0], b[1]), _pmul(b[0], a[1])), _pmul(a[1], b[1])


def _fmul(a: _Frac, b: _Frac) -> _Frac:
    return _pmul(a[0], b[0]), _pmul(a[1], b[1])


def _fdiv(a: _Frac, b: _Frac) -> _Frac:
    return _pmul(a[0], b[1]), _pmul(a[1], b[0])


def linear_fractional_parts(e: Expr, var: str = "v") -> tuple[Expr, Expr, Expr, Expr]:
    """Decompose e as (n0 + n1*var) / (d0 + d1*var) with var-free parts.

    Raises NotLinearFractional when the tree is not Moebius in var.
    """

    def go(node: Expr) -> _Frac:
        if not uses_var(node, var):
            return (node, _ZERO), (_ONE, _ZERO)
        if isinstance(node, Var):
            return (_ZERO, _ONE), (_ONE, _ZERO)
        if isinstance(node, Neg):
            return _fneg(go(node.arg))
        if isinstance(node, Add):
            acc = go(node.terms[0])
            for t in node.terms[1:]:
                acc = _fadd(acc, go(t))
            return acc
        if isinstance(node, Mul):
            acc = go(node.factors[0])
            for f in node.factors[1:]:
                acc = _fmul(acc, go(f))
            return acc
        if isinstance(node, Div):
            return _fdiv(go(node.num), go(node.den))
        if isinstance(node, Pow):
            acc = go(node.base)
            for _ in range(node.exponent - 1):
                acc = _fmul(acc, go(node.base))
            return acc
        raise NotLinearFractional(f"unsupported node for inversion: {node!r}")

    (n0, n1), (d0, d1) = go(e)
    return n0, n1, d0, d1


def invert_in_v(e: Expr) -> Expr:
    """Solve w = e(n, u, v) for v; the result is an expression in (n, u, w)
    with w occupying the v slot.

    Requires e to be linear-fractional in v: from w = (n0 + n1*v)/(d0 + d1*v)
    the unique solution is v = (n0 - d0*w) / (d1*w - n1).
    """
    n0, n1, d0, d1 = linear_fractional_parts(e, "v")
    w = Var("v")
    if _is_zero(d1):
        # w = (n0 + n1*v)/d0  =>  v = (d0*w - n0)/n1
        if _is_zero(n1):
            raise NotLinearFractional("expression does not depend on v")
        return div_(sub_(mul_(d0, w), n0), n1)
    return div_(sub_(n0, mul_(d0, w)), sub_(mul_(d1, w), n1))
