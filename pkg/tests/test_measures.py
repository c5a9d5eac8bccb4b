"""Weak size / weak cost / unit size measures against independent oracles."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bssim.algebra import Polynomial, RationalFunction
from bssim.errors import UsageError
from bssim.measures import (
    check_space_budget,
    height,
    unit_size,
    weak_cost_transition,
    weak_size_configuration,
    weak_size_fraction,
    weak_size_poly,
)

from conftest import (
    fractions_nm,
    nonzero_polys,
    oracle_config_weak_size,
    oracle_weak_size,
    polys,
)


def P(n, terms, m=0):
    return Polynomial(n, m, terms)


def frac(num, den=None):
    if den is None:
        den = Polynomial.const(num.n, num.m, 1)
    return RationalFunction.new(num, den)


def sum_vars(n):
    return P(n, {tuple(1 if j == i else 0 for j in range(n)): 1 for i in range(n)})


class TestHeight:
    def test_examples(self):
        assert height(0) == 0
        assert height(7) == 3  # "111"
        assert height(8) == 4  # "1000"
        assert height(-8) == 4

    @given(st.integers(-10**9, 10**9))
    def test_binary_digit_count(self, c):
        assert height(c) == len(bin(abs(c))[2:]) if c else height(c) == 0


class TestWeakSizePoly:
    def test_four_variable_sum(self):
        b = weak_size_poly(sum_vars(4), 0, 4)
        assert (b.N, b.S_bits, b.V, b.D_bits, b.R_bits) == (4, 2, 1, 1, 2)
        assert b.total == 20 == oracle_weak_size(sum_vars(4).terms, 4, 0)

    def test_offset_neutralizes_high_index(self):
        g = Polynomial.input_var(8, 0, 8)
        b = weak_size_poly(g, 0, 8)
        assert b.range_raw == 0 and b.R_bits == 0
        assert b.total == 3 == oracle_weak_size(g.terms, 8, 0)

    def test_single_monomial(self):
        g = P(2, {(2, 1): 3})
        b = weak_size_poly(g, 0, 2)
        assert (b.N, b.S_bits, b.V, b.D_bits, b.R_bits) == (1, 3, 2, 2, 1)
        assert b.total == 9 == oracle_weak_size(g.terms, 2, 0)

    def test_zero_polynomial(self):
        assert weak_size_poly(Polynomial.zero(2, 0), 0, 2).total == 0

    def test_offset_out_of_range(self):
        with pytest.raises(UsageError):
            weak_size_poly(sum_vars(2), 2, 2)

    @settings(max_examples=200)
    @given(g=polys(n=3, m=1), offset=st.integers(0, 2))
    def test_matches_oracle_and_recomputes(self, g, offset):
        b = weak_size_poly(g, offset, 3)
        assert b.total == oracle_weak_size(g.terms, 3, offset)
        assert b.total == b.N * (b.S_bits + b.V * b.R_bits + b.V * b.D_bits)
        assert (b.total == 0) == (b.N == 0)
        assert b.R_bits <= height(3 - 1)


class TestWeakSizeFraction:
    def test_componentwise_max(self):
        f = RationalFunction.new(Polynomial.input_var(2, 0, 1), sum_vars(2))
        assert weak_size_fraction(f, 0, 2) == 8
        assert weak_size_poly(f.num, 0, 2).total == 4
        assert weak_size_poly(f.den, 0, 2).total == 8

    def test_constant(self):
        f = RationalFunction.from_rational(1, 0, __import__("fractions").Fraction(5))
        assert weak_size_fraction(f, 0, 1) == 4

    def test_zero_fraction(self):
        f = RationalFunction.from_poly(Polynomial.zero(1, 0))
        assert weak_size_fraction(f, 0, 1) == 0


class TestWeakSizeConfiguration:
    def test_two_cell_example(self):
        cells = [
            (0, frac(sum_vars(2))),
            (1, frac(Polynomial.input_var(2, 0, 2))),
        ]
        measure = weak_size_configuration(cells, 2)
        assert measure.weak_size == 11
        assert measure.best_offset == 0
        assert measure.unit_size == 2
        # per-offset sums: offset 0 gives 8+3, offset 1 gives 8+4
        assert sum(weak_size_fraction(f, 1, 2) for _, f in cells) == 12

    def test_empty(self):
        measure = weak_size_configuration([], 2)
        assert measure.weak_size == 0 and measure.unit_size == 0

    def test_single_cell_equals_poly_minimum(self):
        cells = [(0, frac(sum_vars(4)))]
        assert weak_size_configuration(cells, 4).weak_size == 20

    @settings(max_examples=200)
    @given(
        fs=st.lists(fractions_nm(n=3, m=0), min_size=0, max_size=3),
        rotation=st.integers(0, 5),
    )
    def test_rotation_invariance(self, fs, rotation):
        cells = list(enumerate(fs))
        rotated = [
            (i, RationalFunction.new(f.num.rotate_inputs(rotation), f.den.rotate_inputs(rotation)))
            for i, f in cells
        ]
        assert (
            weak_size_configuration(cells, 3).weak_size
            == weak_size_configuration(rotated, 3).weak_size
        )

    @settings(max_examples=100)
    @given(fs=st.lists(fractions_nm(n=2, m=1), min_size=0, max_size=3))
    def test_min_property_and_lower_bound(self, fs):
        cells = list(enumerate(fs))
        measure = weak_size_configuration(cells, 2)
        oracle_total, oracle_offset = oracle_config_weak_size(cells, 2) if cells else (0, 0)
        assert measure.weak_size == oracle_total
        assert measure.best_offset == oracle_offset
        for offset in range(2):
            per_offset = sum(weak_size_fraction(f, offset, 2) for _, f in cells)
            assert per_offset >= measure.weak_size
        nonzero = sum(1 for _, f in cells if not f.is_zero)
        assert measure.weak_size >= 2 * nonzero


class TestWeakCost:
    def test_shift_costs_one(self):
        assert weak_cost_transition("other") == 1

    def test_square_costs_degree(self):
        f = frac(P(1, {(2,): 1}))
        assert weak_cost_transition("computation", f) == 2

    def test_coefficient_height_can_tie(self):
        f = frac(P(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1}))
        assert weak_cost_transition("computation", f) == 2

    @settings(max_examples=100)
    @given(f=fractions_nm(n=2, m=1))
    def test_weak_cost_at_least_one(self, f):
        assert weak_cost_transition("computation", f) >= 1


class TestUnitSize:
    def test_examples(self):
        assert unit_size([]) == 0
        f = frac(Polynomial.input_var(2, 0, 1))
        assert unit_size([(0, f), (1, f), (5, f)]) == 3
        zero = RationalFunction.from_poly(Polynomial.zero(2, 0))
        assert unit_size([(0, zero)]) == 1


class TestBudgets:
    def test_poly_budget(self):
        assert check_space_budget(11, 2, "poly:3,2") is True  # 11 < 12

    def test_zero_space_passes_positive_budgets(self):
        assert check_space_budget(0, 2, "log:1")
        assert check_space_budget(0, 2, "poly:1,1")
        assert check_space_budget(0, 2, "const:1")

    def test_log_budget(self):
        assert check_space_budget(11, 2, "log:5") is False  # 11 >= 5*log2(2)

    def test_log_budget_exact_boundary(self):
        # weak_space = k*log2(n) exactly must fail the strict inequality
        assert check_space_budget(6, 4, "log:3") is False
        assert check_space_budget(5, 4, "log:3") is True

    def test_log_needs_n_at_least_two(self):
        with pytest.raises(UsageError):
            check_space_budget(3, 1, "log:2")

    def test_malformed(self):
        with pytest.raises(UsageError):
            check_space_budget(3, 2, "cubic:1")
