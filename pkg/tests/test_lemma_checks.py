import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relturan.lemma_checks import (
    _window_lengths,
    check_binomial_average,
    check_binomial_fraction,
    check_locally_balanced,
    first_passing_n,
    string_violates,
    vandermonde_identity_holds,
)


class TestBinomialFraction:
    def test_hand_computed_failure(self):
        # C(6, 2) = 15 vs (1/4 - 1/16) C(16, 2) = 22.5
        rep = check_binomial_fraction(Fraction(1, 2), Fraction(1, 16), 2, Fraction(1, 8), 16)
        assert rep.lhs == 15
        assert rep.rhs == Fraction(45, 2)
        assert not rep.passed

    def test_hand_computed_success(self):
        # C(37, 2) = 666 vs (1/4 - 1/5) C(100, 2) = 247.5
        rep = check_binomial_fraction(Fraction(1, 2), Fraction(1, 5), 2, Fraction(1, 8), 100)
        assert rep.lhs == 666
        assert rep.rhs == Fraction(495, 2)
        assert rep.passed

    def test_margin_is_exact_rational(self):
        rep = check_binomial_fraction(Fraction(1, 2), Fraction(1, 5), 2, Fraction(1, 8), 100)
        assert isinstance(rep.margin, Fraction)
        assert rep.margin == rep.lhs - rep.rhs

    def test_rejects_bad_params(self):
        with pytest.raises(ValueError):
            check_binomial_fraction(Fraction(1, 2), Fraction(1, 10), 3, Fraction(3, 4), 50)

    def test_first_passing_n_is_consistent(self):
        n0 = first_passing_n(Fraction(1, 2), Fraction(1, 10), 2, 500)
        assert n0 is not None
        assert check_binomial_fraction(
            Fraction(1, 2), Fraction(1, 10), 2, Fraction(1, 40), n0
        ).passed
        if n0 > 2:
            assert not check_binomial_fraction(
                Fraction(1, 2), Fraction(1, 10), 2, Fraction(1, 40), n0 - 1
            ).passed

    def test_first_passing_n_can_miss(self):
        assert first_passing_n(Fraction(1, 2), Fraction(1, 1000), 3, 5) is None


class TestLocallyBalanced:
    def test_all_ones_violates(self):
        assert string_violates([1] * 64, eps=0.1)

    def test_alternating_is_balanced(self):
        bits = [i % 2 for i in range(64)]
        assert not string_violates(bits, eps=0.1)

    def test_reduced_range_matches_full_scan(self):
        # oracle: check every window length >= m, not only [m, 2m)
        rng = np.random.Generator(np.random.Philox(key=np.array([3, 0], dtype=np.uint64)))
        n, eps = 48, 0.18
        m, _ = _window_lengths(n)
        for _ in range(200):
            bits = rng.integers(0, 2, size=n)
            prefix = np.concatenate([[0], np.cumsum(bits)])
            full = any(
                abs(prefix[lo + length] - prefix[lo] - length / 2) >= eps * length
                for length in range(m, n + 1)
                for lo in range(n - length + 1)
            )
            assert string_violates(bits, eps) == full

    def test_exhaustive_matches_direct_count(self):
        n, eps = 10, 0.3
        rep = check_locally_balanced(n, eps, n_samples=0, seed=0, exhaustive=True)
        direct = sum(
            string_violates([(v >> (n - 1 - i)) & 1 for i in range(n)], eps)
            for v in range(1 << n)
        )
        assert rep.extra["violating"] == direct
        assert rep.samples == 1 << n

    def test_monte_carlo_report(self):
        rep = check_locally_balanced(256, eps=0.2, n_samples=500, seed=1)
        assert rep.samples == 500
        assert 0 <= rep.extra["ci_low"] <= rep.extra["ci_high"] <= 1

    def test_deterministic(self):
        a = check_locally_balanced(128, 0.15, 300, seed=7)
        b = check_locally_balanced(128, 0.15, 300, seed=7)
        assert a.lhs == b.lhs

    def test_exhaustive_cap(self):
        with pytest.raises(ValueError):
            check_locally_balanced(23, 0.1, 0, 0, exhaustive=True)


class TestBinomialAverage:
    @given(st.integers(5, 40), st.integers(0, 3), st.integers(0, 3))
    @settings(max_examples=50)
    def test_vandermonde_identity(self, n, x, y):
        if x + y + 1 <= n:
            assert vandermonde_identity_holds(n, x, y)

    def test_constant_table_passes(self):
        n = 40
        f = [Fraction(1, 2)] * n
        rep = check_binomial_average(f, n, x=1, y=1, alpha=Fraction(1, 2),
                                     eps=Fraction(1, 4), eta=Fraction(1, 10))
        assert rep.extra["premise_ok"]
        assert rep.passed
        # lhs truncates the range, so it is below alpha C(n, 3) but above
        # the (1 - eps)-discounted target
        assert rep.lhs <= Fraction(1, 2) * math.comb(n, 3)

    def test_premise_violation_detected(self):
        n = 30
        f = [Fraction(1)] * 15 + [Fraction(0)] * 15
        rep = check_binomial_average(f, n, 0, 0, Fraction(1, 2), Fraction(1, 4),
                                     Fraction(1, 10))
        assert not rep.extra["premise_ok"]

    def test_zero_table_fails(self):
        n = 20
        rep = check_binomial_average([Fraction(0)] * n, n, 0, 0, Fraction(1, 2),
                                     Fraction(1, 2), Fraction(1, 5))
        assert not rep.passed

    def test_rejects_out_of_range_values(self):
        with pytest.raises(ValueError):
            check_binomial_average([Fraction(2)] * 5, 5, 0, 0, 1, Fraction(1, 2),
                                   Fraction(1, 5))

    def test_report_serializes(self):
        rep = check_binomial_fraction(Fraction(1, 2), Fraction(1, 5), 2, Fraction(1, 8), 100)
        js = rep.to_json()
        assert js["lemma"] == "binomial-fraction"
        assert js["lhs"] == {"num": "666", "den": "1"}
