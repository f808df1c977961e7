"""Square and cube representation families: frozen targets and identities."""

import math

import pytest

from addrep.errors import DuplicatePair, IdentityBroken, NonpositiveBracket, RangeTooLarge
from addrep.special import (
    CubeChain,
    cube_chain,
    digit_count,
    primes_one_mod_four,
    primorial_targets,
    squares_lower_bound_check,
    squares_rep,
    theorem8_verify,
    vieta_step,
)

PRIMES_1MOD4 = [5, 13, 17, 29, 37, 41, 53]
Q_TARGETS = [5, 65, 1105, 32045, 1185665, 48612265, 2576450045]
EXPONENTS = [0.000000, 0.237277, 0.385169, 0.468884, 0.522973, 0.562669, 0.590335]
CHAIN_DIGITS = {1: 1, 2: 30, 3: 925, 4: 22195}


class TestPrimorialTargets:
    def test_prime_list(self):
        assert primes_one_mod_four(7) == PRIMES_1MOD4

    def test_products(self):
        for k, q in enumerate(Q_TARGETS, start=1):
            assert primorial_targets(k).q == q

    def test_k_guard(self):
        with pytest.raises(ValueError):
            primorial_targets(0)


class TestSquaresRep:
    def test_small_values(self):
        assert squares_rep(0) == 0
        assert squares_rep(1) == 0  # both squares must be positive
        assert squares_rep(2) == 1
        assert squares_rep(3) == 0
        assert squares_rep(5) == 1
        assert squares_rep(50) == 2
        assert squares_rep(1105) == 4

    def test_doubling_along_targets(self):
        for k, q in enumerate(Q_TARGETS, start=1):
            assert squares_rep(q) == 2 ** (k - 1)

    def test_budget_guard(self):
        with pytest.raises(RangeTooLarge):
            squares_rep(10**16, sqrt_budget=10**7)
        with pytest.raises(ValueError):
            squares_rep(-1)


class TestSquaresReport:
    def test_full_report(self):
        report = squares_lower_bound_check(7)
        assert report.all_exact
        assert [r.rep for r in report.rows] == [2 ** (k - 1) for k in range(1, 8)]
        assert [r.prime for r in report.rows] == PRIMES_1MOD4
        assert [r.q for r in report.rows] == Q_TARGETS

    def test_exponent_samples(self):
        rows = squares_lower_bound_check(7).rows
        for row, frozen in zip(rows, EXPONENTS):
            assert row.exponent == pytest.approx(frozen, abs=5e-7)
        tail = [r.exponent for r in rows[1:]]
        assert tail == sorted(tail)  # climbing toward log 2
        assert all(0 < e <= math.log(2) for e in tail)


class TestVietaStep:
    def test_frozen_unfolding(self):
        assert vieta_step(4, 1, 1) == (3724080624, 4470211071, 1294425279)

    def test_stays_on_curve(self):
        u, v, w = vieta_step(4, 1, 1)
        assert u**3 + v**3 == 65 * w**3  # 4^3 + 1^3 = 65

    def test_symmetric_start_rejected(self):
        with pytest.raises(NonpositiveBracket):
            vieta_step(1, 1, 1)

    def test_positivity_guard(self):
        with pytest.raises(ValueError):
            vieta_step(0, 1, 1)


class TestCubeChain:
    def test_trivial_chain(self):
        chain = cube_chain(1)
        assert chain.x == (1,) and chain.y == (1,)
        assert chain.n_target == 2

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_common_target_and_distinct_pairs(self, k):
        chain = cube_chain(k)
        assert chain.n_target == (64 ** (k - 1) + 1) * chain.w[-1] ** 3
        pairs = {frozenset((x, y)) for x, y in zip(chain.x, chain.y)}
        assert len(pairs) == k
        for x, y in zip(chain.x, chain.y):
            assert x >= 1 and y >= 1
            assert x**3 + y**3 == chain.n_target

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_report_frozen(self, k):
        report = theorem8_verify(cube_chain(k))
        assert report.digits == CHAIN_DIGITS[k]
        assert report.digits_ok and report.digits <= 2 * 100**k
        assert report.ratio_claims == ((True,) + (False,) * (k - 1))
        assert report.ratios_decreasing
        assert report.growth_claims == (True,) * (k - 1)

    def test_caps(self):
        with pytest.raises(RangeTooLarge):
            cube_chain(99)
        with pytest.raises(RangeTooLarge):
            cube_chain(3, max_k=2)
        with pytest.raises(ValueError):
            cube_chain(0)

    def test_broken_chain_raises(self):
        bad = CubeChain(1, (1,), (1,), (1,), (1,), (2,), 2)
        with pytest.raises(IdentityBroken):
            theorem8_verify(bad)

    def test_duplicate_pair_raises(self):
        dup = CubeChain(2, (1, 2), (2, 1), (1, 1), (1, 2), (2, 1), 9)
        with pytest.raises(DuplicatePair):
            theorem8_verify(dup)


class TestDigitCount:
    @pytest.mark.parametrize("n", [0, 1, 9, 10, 99, 100, 999, 10**6 - 1, 10**6, 10**6 + 1])
    def test_matches_str(self, n):
        assert digit_count(n) == len(str(n))

    def test_huge_value(self):
        n = 7 * 10**20000 + 3
        assert digit_count(n) == 20001

    def test_negative_guard(self):
        with pytest.raises(ValueError):
            digit_count(-1)
