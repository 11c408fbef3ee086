import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobpde.errors import ZeroConstantTerm
from frobpde.multiseries import (
    CSeries2,
    MultiIndex,
    analytic_transform,
    cauchy_mul,
    diff_x,
    divide_by_x,
    index_key,
    indices_up_to,
    layer,
    max_abs_diff,
    norm,
    reciprocal,
)


def series(order, table):
    return CSeries2(order, table)


@st.composite
def small_series(draw, order=5, unit=False):
    table = {}
    for Q in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1)]:
        if draw(st.booleans()):
            table[Q] = complex(
                draw(st.floats(-3, 3, allow_nan=False)),
                draw(st.floats(-3, 3, allow_nan=False)),
            )
    if unit:
        c = table.get((0, 0), 0j)
        if abs(c) < 0.25:
            table[(0, 0)] = 1.0 + c
    return CSeries2(order, table)


class TestIndices:
    def test_norm_and_key(self):
        assert norm((3, 4)) == 7
        assert index_key((2, 1)) == (3, 2)

    def test_layer_canonical(self):
        assert layer(2) == [(0, 2), (1, 1), (2, 0)]

    def test_indices_up_to(self):
        seq = list(indices_up_to(2))
        assert seq == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
        assert seq == sorted(seq, key=index_key)


class TestCSeries2:
    def test_pruning_and_truncation(self):
        f = series(2, {(0, 0): 1.0, (1, 0): 0.0, (2, 1): 5.0})
        assert MultiIndex(1, 0) not in f.coeffs
        assert (2, 1) not in f.coeffs  # beyond order 2
        assert f.get((0, 0)) == 1.0

    def test_immutable(self):
        f = CSeries2.one(3)
        with pytest.raises(AttributeError):
            f.order = 5

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            series(3, {(-1, 0): 1.0})

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            series(3, {(0, 0): float("inf")})

    def test_equality_structural(self):
        assert series(3, {(1, 1): 2.0}) == series(3, {(1, 1): 2.0, (0, 1): 0.0})
        assert series(3, {}) != series(4, {})

    def test_arithmetic(self):
        f = series(3, {(0, 0): 1.0, (1, 0): 2.0})
        g = series(3, {(1, 0): -2.0, (0, 1): 1.0})
        assert (f + g) == series(3, {(0, 0): 1.0, (0, 1): 1.0})
        assert (f - f) == CSeries2.zero(3)
        assert (-f).get((1, 0)) == -2.0
        assert f.scale(2.0).get((1, 0)) == 4.0

    def test_mul_known_product(self):
        one_minus_x = series(4, {(0, 0): 1.0, (1, 0): -1.0})
        one_plus_x = series(4, {(0, 0): 1.0, (1, 0): 1.0})
        assert cauchy_mul(one_minus_x, one_plus_x) == series(4, {(0, 0): 1.0, (2, 0): -1.0})

    def test_mul_truncates_to_min_order(self):
        f = series(2, {(1, 1): 1.0})
        g = series(5, {(1, 0): 1.0})
        assert cauchy_mul(f, g).order == 2
        assert cauchy_mul(f, g) == CSeries2.zero(2)  # (2,1) beyond order 2

    def test_transpose(self):
        f = series(3, {(2, 1): 3.0, (1, 0): 1.0})
        assert f.transpose() == series(3, {(1, 2): 3.0, (0, 1): 1.0})

    def test_evaluate(self):
        f = series(3, {(0, 0): 1.0, (1, 0): 2.0, (0, 1): 3.0, (1, 1): 4.0})
        assert f.evaluate(0.5, 0.25) == pytest.approx(1 + 1.0 + 0.75 + 0.5)

    def test_json_round_trip(self):
        f = series(4, {(0, 0): 1.0, (2, 1): 1 + 2j})
        data = f.to_json_array()
        assert data == [[0, 0, 1.0, 0.0], [2, 1, 1.0, 2.0]]
        assert CSeries2.from_json_array(data, 4) == f


class TestReciprocal:
    def test_geometric(self):
        f = series(5, {(0, 0): 1.0, (1, 0): -1.0})  # 1 - x
        inv = reciprocal(f)
        for n in range(6):
            assert inv.get((n, 0)) == pytest.approx(1.0)

    def test_zero_constant_refused(self):
        with pytest.raises(ZeroConstantTerm):
            reciprocal(series(3, {(1, 0): 1.0}))

    @given(small_series(unit=True))
    @settings(max_examples=60, deadline=None)
    def test_involution(self, f):
        assert max_abs_diff(reciprocal(reciprocal(f)), f) < 1e-9 * (
            1 + max(abs(v) for v in f.coeffs.values())
        )

    @given(small_series(unit=True))
    @settings(max_examples=60, deadline=None)
    def test_product_is_one(self, f):
        assert max_abs_diff(cauchy_mul(f, reciprocal(f)), CSeries2.one(f.order)) < 1e-9


class TestRingProperties:
    @given(small_series(), small_series())
    @settings(max_examples=60, deadline=None)
    def test_mul_commutative(self, f, g):
        # summation order differs, so allow rounding at the last ulp
        assert max_abs_diff(cauchy_mul(f, g), cauchy_mul(g, f)) < 1e-12

    @given(small_series(), small_series(), small_series())
    @settings(max_examples=60, deadline=None)
    def test_mul_associative(self, f, g, h):
        lhs = cauchy_mul(cauchy_mul(f, g), h)
        rhs = cauchy_mul(f, cauchy_mul(g, h))
        assert max_abs_diff(lhs, rhs) < 1e-7

    @given(small_series(), small_series(), small_series())
    @settings(max_examples=60, deadline=None)
    def test_distributive(self, f, g, h):
        lhs = cauchy_mul(f, g + h)
        rhs = cauchy_mul(f, g) + cauchy_mul(f, h)
        assert max_abs_diff(lhs, rhs) < 1e-9


class TestAnalyticTransforms:
    def test_sqrt_squares_back(self):
        f = series(6, {(0, 0): 4.0, (1, 0): 1.0, (0, 1): -0.5, (1, 1): 0.25})
        g = analytic_transform(f, "sqrt")
        assert g.constant_term() == pytest.approx(2.0)
        assert max_abs_diff(cauchy_mul(g, g), f) < 1e-12

    def test_sqrt_zero_constant_refused(self):
        with pytest.raises(ZeroConstantTerm):
            analytic_transform(series(3, {(1, 0): 1.0}), "sqrt")

    def test_exp_of_x(self):
        g = analytic_transform(series(6, {(1, 0): 1.0}), "exp")
        for n in range(7):
            assert g.get((n, 0)) == pytest.approx(1.0 / math.factorial(n))

    @given(small_series(), small_series())
    @settings(max_examples=40, deadline=None)
    def test_exp_additive(self, f, g):
        lhs = analytic_transform(f + g, "exp")
        rhs = cauchy_mul(analytic_transform(f, "exp"), analytic_transform(g, "exp"))
        scale = 1 + max((abs(v) for v in rhs.coeffs.values()), default=0.0)
        assert max_abs_diff(lhs, rhs) < 1e-7 * scale

    def test_antiderivative_then_diff(self):
        f = series(5, {(0, 0): 1.0, (2, 1): 3.0, (1, 0): -2.0})
        assert diff_x(analytic_transform(f, "antiderivative_x")) == series(
            5, {(0, 0): 1.0, (2, 1): 3.0, (1, 0): -2.0}
        )

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            analytic_transform(CSeries2.one(2), "log")


class TestDivideByX:
    def test_exact_shift(self):
        f = series(4, {(1, 0): 2.0, (3, 1): -1.0})
        assert divide_by_x(f) == series(4, {(0, 0): 2.0, (2, 1): -1.0})

    def test_requires_x_factor(self):
        with pytest.raises(ValueError):
            divide_by_x(series(3, {(0, 1): 1.0}))
