"""Tests for the coefficient-sequence variants."""

import numpy as np
import pytest

from foldcore.errors import InvalidParam
from foldcore.seqcoef import (
    Constant,
    ConvergentToPeriodic,
    Explicit,
    Periodic,
    abs_bound,
    coeff_from_obj,
    coeff_to_obj,
    eventual_structure,
    value_at,
)


def test_constant_value_at():
    assert value_at(Constant(2.0), 57) == 2.0


def test_periodic_sign_flip():
    # the (-1)^n coefficient of the alternating example system
    seq = Periodic([1, -1])
    assert value_at(seq, 3) == -1
    assert [value_at(seq, n) for n in range(4)] == [1, -1, 1, -1]


def test_geometric_decay():
    seq = ConvergentToPeriodic(Constant(0.0), initial=1.0, decay=0.5)
    assert value_at(seq, 3) == 0.125


def test_explicit_prefix_overrides():
    seq = Explicit([9.0, 8.0], Constant(1.0))
    assert [value_at(seq, n) for n in range(4)] == [9.0, 8.0, 1.0, 1.0]


def test_negative_index_rejected():
    with pytest.raises(InvalidParam):
        value_at(Constant(1.0), -1)


def test_eventual_structure_periodic():
    es = eventual_structure(Periodic([1, -1]))
    assert (es.limit_kind, es.period, es.limit_values) == ("periodic", 2, (1.0, -1.0))


def test_eventual_structure_convergent():
    es = eventual_structure(ConvergentToPeriodic(Constant(3.0), 5.0, 0.9))
    assert (es.limit_kind, es.period, es.limit_values) == ("constant", 1, (3.0,))


def test_eventual_structure_reduces_period():
    es = eventual_structure(Periodic([2, 2]))
    assert (es.limit_kind, es.period, es.limit_values) == ("constant", 1, (2.0,))


@pytest.mark.parametrize("values,period", [
    ([1, 2, 1, 2], 2),
    ([3, 3, 3], 1),
    ([1, 2, 3, 1, 2, 3], 3),
    ([1, 2, 3], 3),
    ([1, 2, 1, 3], 4),
])
def test_minimal_period_normalization(values, period):
    assert Periodic(values).period == period


def test_minimal_period_property_random():
    # no proper divisor of the declared period reproduces the sequence
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 13))
        seq = Periodic(rng.integers(0, 3, size=n).astype(float))
        p = seq.period
        for q in range(1, p):
            if p % q == 0:
                assert any(seq.value_at(i) != seq.value_at(i + q) for i in range(p))


def test_convergence_bound():
    # |value_at(n) - limit(n mod p)| <= |initial - limit(0)| * decay^n
    limit = Periodic([2.0, -1.0, 0.5])
    seq = ConvergentToPeriodic(limit, initial=5.0, decay=0.8)
    dev0 = abs(5.0 - limit.value_at(0))
    for n in range(201):
        gap = abs(value_at(seq, n) - limit.value_at(n % 3))
        assert gap <= dev0 * 0.8**n + 1e-15


def test_decay_range_enforced():
    with pytest.raises(InvalidParam):
        ConvergentToPeriodic(Constant(0.0), 1.0, 1.0)
    with pytest.raises(InvalidParam):
        ConvergentToPeriodic(Constant(0.0), 1.0, 0.0)


def test_empty_periodic_rejected():
    with pytest.raises(InvalidParam):
        Periodic([])


def test_abs_bound():
    assert abs_bound(Constant(-3.0)) == 3.0
    assert abs_bound(Periodic([1, -4, 2])) == 4.0
    seq = ConvergentToPeriodic(Constant(1.0), initial=3.0, decay=0.5)
    bound = abs_bound(seq)
    assert all(abs(value_at(seq, n)) <= bound for n in range(100))


@pytest.mark.parametrize("seq", [
    Constant(2.5),
    Periodic([1, -1]),
    ConvergentToPeriodic(Periodic([1.0, 2.0]), 0.5, 0.9),
    Explicit([3.0], ConvergentToPeriodic(Constant(0.0), 1.0, 0.5)),
])
def test_serialization_round_trip(seq):
    assert coeff_from_obj(coeff_to_obj(seq)) == seq


def test_bare_number_parses_as_constant():
    assert coeff_from_obj(2) == Constant(2.0)
    assert coeff_from_obj({"kind": "periodic", "values": [1, -1]}) == Periodic([1, -1])


def test_unknown_kind_rejected():
    with pytest.raises(InvalidParam):
        coeff_from_obj({"kind": "random"})
