"""Tests for the expression grammar: evaluation, composition, inversion."""

import pytest

from foldcore.errors import InvalidParam, Singular
from foldcore.mapexpr import (
    Coeff,
    Div,
    NotLinearFractional,
    Num,
    Var,
    add_,
    affine_map,
    evaluate,
    expr_from_obj,
    expr_to_obj,
    invert_in_v,
    linear_fractional_map,
    linear_fractional_parts,
    mul_,
    pow_,
    ratio_map,
    render,
    shift_n,
    sub_,
    substitute,
    uses_var,
)
from foldcore.seqcoef import Constant, Periodic


def test_ratio_atom():
    f = ratio_map(Periodic([2.0, 3.0]))
    assert f(0, 4.0, 2.0) == 4.0   # 2*4/2
    assert f(1, 4.0, 2.0) == 6.0   # 3*4/2


def test_affine_atom():
    f = affine_map(1.0, 2.0, 0.5)
    assert f(0, 3.0, 4.0) == 3.0 + 8.0 + 0.5


def test_linear_fractional_atom():
    f = linear_fractional_map(1.0, 2.0, 3.0, 4.0)
    assert f(0, 1.0, 1.0) == pytest.approx(3.0 / 7.0)


def test_division_by_exact_zero_is_singular():
    f = ratio_map(Constant(1.0))
    with pytest.raises(Singular):
        f(0, 1.0, 0.0)


def test_tiny_over_tiny_is_not_singular():
    # benign ratio of two tiny numbers keeps evaluating
    f = ratio_map(Constant(1.0))
    assert f(0, 1e-40, 2e-40) == pytest.approx(0.5)


def test_pole_with_order_one_numerator_is_singular():
    f = ratio_map(Constant(1.0))
    with pytest.raises(Singular):
        f(0, 2.0, 1e-15)


def test_substitution_is_simultaneous():
    # swapping u and v must not cascade
    e = sub_(Var("u"), Var("v"))
    swapped = substitute(e, u=Var("v"), v=Var("u"))
    assert evaluate(swapped, 0, 2.0, 5.0) == 3.0


def test_shift_moves_coefficient_index():
    seq = Periodic([10.0, 20.0])
    e = Coeff("alpha", seq)
    assert evaluate(shift_n(e, 1), 0, 0, 0) == 20.0
    assert evaluate(shift_n(e, 2), 0, 0, 0) == 10.0


def test_uses_var():
    f = ratio_map(Constant(1.0))
    assert uses_var(f, "u") and uses_var(f, "v")
    assert not uses_var(Num(3.0), "u")


def test_invert_ratio_map():
    # w = alpha*u/v  =>  v = alpha*u/w
    f = ratio_map(Constant(2.0))
    h = invert_in_v(f)
    for u, v in ((3.0, 6.0), (1.5, -0.4)):
        w = f(0, u, v)
        assert h(0, u, w) == pytest.approx(v, rel=1e-12)


def test_invert_general_linear_fractional():
    # the first catalog equation: w = (alpha*u + beta*v)/(A*u + v)
    u, v = Var("u"), Var("v")
    f = Div(add_(mul_(Num(1.5), u), mul_(Num(0.5), v)), add_(mul_(Num(0.7), u), v))
    h = invert_in_v(f)
    for uu, vv in ((1.0, 2.0), (0.3, -1.2), (2.2, 0.9)):
        w = f(0, uu, vv)
        assert h(0, uu, w) == pytest.approx(vv, rel=1e-10)


def test_invert_affine():
    f = affine_map(1.0, 2.0, 0.0)
    h = invert_in_v(f)
    assert h(0, 1.0, 5.0) == pytest.approx(2.0)


def test_not_linear_fractional():
    v = Var("v")
    with pytest.raises(NotLinearFractional):
        invert_in_v(mul_(v, v))
    with pytest.raises(NotLinearFractional):
        invert_in_v(pow_(v, 2))
    with pytest.raises(NotLinearFractional):
        invert_in_v(Num(3.0))  # no v dependence at all


def test_linear_fractional_parts_of_ratio():
    n0, n1, d0, d1 = linear_fractional_parts(ratio_map(Constant(2.0)))
    assert evaluate(n0, 0, 3.0, 0.0) == 6.0
    assert evaluate(n1, 0, 3.0, 0.0) == 0.0
    assert evaluate(d0, 0, 3.0, 0.0) == 0.0
    assert evaluate(d1, 0, 3.0, 0.0) == 1.0


def test_render_quadratic():
    v = Var("v")
    e = add_(mul_(Num(-1.0), pow_(v, 2)), mul_(Num(3.5), v))
    assert render(e, vname="s") == "-s^2 + 3.5*s"


def test_render_ratio():
    assert render(ratio_map(Periodic([1.0, -1.0])), uname="x_n", vname="x_{n+1}") \
        == "alpha_n*x_n/x_{n+1}"


def test_serialization_round_trip():
    exprs = [
        ratio_map(Periodic([1.0, -1.0])),
        affine_map(Constant(1.0), Periodic([2.0, 3.0]), 0.5),
        shift_n(ratio_map(Constant(2.0)), 1),
        add_(mul_(Num(-1.0), pow_(Var("v"), 2)), mul_(Num(3.5), Var("v"))),
    ]
    for e in exprs:
        back = expr_from_obj(expr_to_obj(e))
        assert back == e
        for n, u, v in ((0, 1.3, 2.1), (1, -0.4, 0.9)):
            assert evaluate(back, n, u, v) == evaluate(e, n, u, v)


def test_bad_variable_name_rejected():
    with pytest.raises(InvalidParam):
        Var("w")
