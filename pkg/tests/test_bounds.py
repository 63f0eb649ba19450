import math
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwlab.bounds import (
    REFERENCE_NR_TABLE,
    binomial_identity_sum,
    check_binomial_identity,
    check_cocircuit_chain,
    check_density_chain,
    check_forward_difference,
    check_log_inequality,
    check_loops_chain,
    density_threshold,
    gap_f,
    minimal_nr,
    nr_table,
    printed_summation,
)
from mwlab.errors import BadRange, DomainError, HypothesisUnmet, RankTooSmall
from mwlab.matroid import add_loops, graphic, uniform

from conftest import K4_EDGES


def slow_nr(r):
    # direct search from scratch, no shared helpers
    n = r
    while 2 ** (n - r) < 2 * comb(n, r):
        n += 1
    return n


class TestGap:
    @pytest.mark.parametrize("n,r,value", [(4, 1, 0), (8, 2, 8), (7, 2, -10), (5, 0, 30)])
    def test_examples(self, n, r, value):
        assert gap_f(n, r).value == value

    @pytest.mark.parametrize("n,r", [(3, 4), (3, -1)])
    def test_range(self, n, r):
        with pytest.raises(BadRange):
            gap_f(n, r)


class TestThreshold:
    @pytest.mark.parametrize("r,expected", [(4, 12), (5, 20), (6, 27), (16, 112), (17, 122), (64, 638)])
    def test_examples(self, r, expected):
        assert density_threshold(r) == expected

    def test_against_float_formula(self):
        for r in range(5, 300):
            l1 = math.log2(r)
            v = r * (l1 + math.log2(l1) + math.log2(math.log2(l1)))
            assert density_threshold(r) == math.ceil(v)

    def test_too_small(self):
        with pytest.raises(RankTooSmall):
            density_threshold(3)


class TestMinimalNr:
    @pytest.mark.parametrize("r,expected", [(1, 4), (2, 8), (6, 25)])
    def test_examples(self, r, expected):
        assert minimal_nr(r) == expected

    def test_table_against_slow_search(self):
        rows = nr_table(16)
        assert [row.oracle for row in rows] == [slow_nr(r) for r in range(1, 17)]
        assert [row.reference for row in rows] == [REFERENCE_NR_TABLE[r] for r in range(1, 17)]

    def test_known_disagreements(self):
        assert {row.r for row in nr_table(16) if not row.agrees} == {5, 13, 15, 16}

    def test_gap_stays_nonnegative_after(self):
        for r in range(1, 30):
            n = minimal_nr(r)
            assert gap_f(n - 1, r).value < 0 or n == r
            assert all(gap_f(m, r).value >= 0 for m in range(n, n + 60))


class TestForwardDifference:
    def test_example(self):
        rep = check_forward_difference(8, 2)
        assert rep.overall
        assert rep.steps[0].left == gap_f(9, 2).value - gap_f(8, 2).value == 48

    def test_r4(self):
        assert check_forward_difference(9, 4).overall

    def test_hypothesis(self):
        with pytest.raises(HypothesisUnmet):
            check_forward_difference(4, 2)

    def test_sweep(self):
        for r in range(1, 51):
            for n in range(2 * r + 1, 201):
                rep = check_forward_difference(n, r)
                assert rep.overall, (n, r)

    def test_pascal(self):
        for r in range(1, 30):
            for n in range(r, 100):
                assert gap_f(n + 1, r).value - gap_f(n, r).value == 2 ** (n - r) - 2 * comb(n, r - 1)

    @settings(max_examples=200)
    @given(st.integers(1, 50), st.integers(0, 150))
    def test_persistence(self, r, extra):
        n = max(minimal_nr(r), 2 * r + 1) + extra
        assert gap_f(n, r).value >= 0
        assert gap_f(n + 1, r).value >= 0


class TestLogInequality:
    def test_x17(self):
        c = check_log_inequality(17)
        assert c.holds
        assert c.lhs == pytest.approx(8.3025, abs=1e-4)
        assert c.rhs == pytest.approx(8.1410, abs=1e-4)

    def test_x65536(self):
        c = check_log_inequality(2 ** 16)
        assert c.lhs == 64 and c.rhs == 23 and c.holds

    def test_x4_fails(self):
        c = check_log_inequality(4)
        assert (c.lhs, c.rhs, c.holds) == (2, 4, False)

    def test_domain(self):
        with pytest.raises(DomainError):
            check_log_inequality(2)

    def test_grid(self):
        for k in range(1000):
            x = 17 * (10 ** 6 / 17) ** (k / 999)
            assert check_log_inequality(x).holds, x


class TestDensityChain:
    def test_r16(self):
        rep = check_density_chain(112, 16)
        assert rep.overall
        assert rep.step("r! >= 2^(r+1)").left == factorial(16)
        assert rep.step("2^(n0-r) >= 2C(n0,r)").right == 2 * comb(112, 16)

    def test_r6_log_steps_fail(self):
        rep = check_density_chain(27, 6)
        failed = {s.label for s in rep.steps if not s.holds}
        assert failed == {"log inequality at x=r", "r log r loglog r >= n0"}
        assert rep.step("2^(n-r) >= 2C(n,r)").holds

    def test_below_threshold(self):
        with pytest.raises(HypothesisUnmet):
            check_density_chain(25, 6)

    def test_small_rank(self):
        with pytest.raises(HypothesisUnmet):
            check_density_chain(40, 4)

    def test_factorial_fraction_step(self):
        rep = check_density_chain(30, 6)
        s = rep.step("n0^r/2^r >= 2 n0^r/r!")
        assert s.left == Fraction(27 ** 6, 64) and s.right == Fraction(2 * 27 ** 6, 720)
        assert 2 ** 6 <= factorial(5)

    def test_extension_to_larger_n(self):
        for r in range(5, 20):
            n0 = density_threshold(r)
            for n in (n0, n0 + 1, n0 + 17):
                assert check_density_chain(n, r).step("2^(n-r) >= 2C(n,r)").holds


class TestBinomialIdentity:
    def test_r4(self):
        assert check_binomial_identity(4) == (64, True)

    def test_up_to_512(self):
        for r in range(1, 513):
            lhs, ok = check_binomial_identity(r)
            assert ok and lhs == 4 ** (r - 1)

    @pytest.mark.parametrize("y", [0, 1, 2, 3, 7])
    def test_direct_sum(self, y):
        for r in range(1, 40):
            assert sum(comb(r - 1 + k, k) * y ** (r - 1 - k) for k in range(r)) == binomial_identity_sum(r, y)

    def test_printed_summation_differs(self):
        assert printed_summation(4) == 16 != binomial_identity_sum(4)

    def test_range(self):
        with pytest.raises(BadRange):
            check_binomial_identity(0)


class TestCocircuitChain:
    def test_u24(self):
        rep = check_cocircuit_chain(uniform(2, 4))
        b = rep.step("(b) T(0,2) >= 2^(n-1)")
        c = rep.step("(c) 2^(n-1) >= 2C(n,r)")
        assert (b.left, b.right, b.holds) == (8, 8, True)
        assert (c.left, c.right, c.holds) == (8, 12, False)
        assert rep.conclusion is True

    def test_u5_10(self):
        rep = check_cocircuit_chain(uniform(5, 10))
        assert rep.overall and rep.conclusion

    def test_k4_unmet(self):
        with pytest.raises(HypothesisUnmet):
            check_cocircuit_chain(graphic(4, K4_EDGES))


class TestLoopsChain:
    def test_u24_plus_loop(self):
        rep = check_loops_chain(add_loops(uniform(2, 4), 1))
        assert [(s.left, s.right, s.holds) for s in rep.steps] == [(16, 8, True), (8, 12, False), (12, 12, True)]
        assert rep.conclusion is True

    def test_u12(self):
        rep = check_loops_chain(uniform(1, 2))
        assert [s.holds for s in rep.steps] == [True, False, True]
        assert rep.conclusion is True

    def test_u23_plus_loop_counterexample(self):
        rep = check_loops_chain(add_loops(uniform(2, 3), 1))
        assert rep.conclusion is False

    def test_unmet(self):
        with pytest.raises(HypothesisUnmet):
            check_loops_chain(uniform(2, 4))
        with pytest.raises(HypothesisUnmet):
            check_loops_chain(uniform(2, 2))
