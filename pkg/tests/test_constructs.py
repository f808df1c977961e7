"""Block-construction tests: frozen small cases plus exactness properties."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addrep.constructs import (
    BlockPlan,
    assemble,
    block,
    elementwise_distance_rows,
    lemma2_verify,
    make_plan,
    theorem3_plan,
    theorem4_plan,
    theorem4_ratios,
    theorem5_plan,
)
from addrep.errors import BlockOverlap, HypothesisViolated, NotMonotone
from addrep.seqcore import dist, is_sidon, s_max


class TestMakePlan:
    def test_unit_plan_tables(self):
        plan = make_plan([1, 1], [1, 1], [1, 1], 2)
        assert plan.T == (1, 2)
        assert plan.c == (102, 10002)

    def test_depth_truncates_tables(self):
        plan = make_plan([1, 2, 3], [1, 2, 3], [1, 1, 1], 2)
        assert plan.depth == 2 and plan.a == (1, 2)

    def test_hypothesis_guard(self):
        with pytest.raises(HypothesisViolated):
            make_plan([6], [1], [1], 1)
        with pytest.raises(HypothesisViolated):
            make_plan([1], [6], [1], 1)
        # 5 = (4*1+1)*1 sits exactly on the boundary and is allowed
        make_plan([5], [1], [1], 1)

    def test_monotonicity_guard(self):
        with pytest.raises(NotMonotone):
            make_plan([1, 1], [1, 1], [2, 1], 2)
        with pytest.raises(NotMonotone):
            make_plan([2, 1], [2, 2], [1, 1], 2)

    def test_positivity_guard(self):
        with pytest.raises(ValueError):
            make_plan([0], [1], [1], 1)

    def test_short_table_guard(self):
        with pytest.raises(ValueError):
            make_plan([1], [1, 1], [1, 1], 2)

    def test_digit_budget_warns(self):
        with pytest.warns(RuntimeWarning):
            make_plan([1], [1], [1], 1, digit_budget=3)


class TestAssembly:
    def test_unit_plan_elements(self):
        plan = make_plan([1, 1], [1, 1], [1, 1], 2)
        seq_a, seq_b = assemble(plan)
        assert seq_a.elements == (10, 90, 1000, 9000)
        assert seq_b.elements == (9, 89, 999, 8999)
        assert seq_a.horizon == 10004

    def test_two_one_block(self):
        plan = theorem3_plan(2, 1, 1, 1)
        seq_a, seq_b = assemble(plan)
        assert seq_a.elements == (10, 100, 900, 990)
        assert seq_b.elements == (9, 99, 900, 989)

    def test_block_index_guard(self):
        plan = theorem3_plan(1, 1, 1, 1)
        with pytest.raises(ValueError):
            block(plan, 2)
        with pytest.raises(ValueError):
            block(plan, 0)

    def test_depth_zero_is_empty(self):
        plan = theorem3_plan(1, 1, 1, 2)
        seq_a, seq_b = assemble(plan, 0)
        assert seq_a.elements == () and seq_b.elements == ()

    def test_overlap_detected(self):
        # hand-built tables bypass make_plan's monotonicity check; the huge
        # first-block d drives block 1 past the start of block 2
        bad = BlockPlan(a=(1, 1), b=(1, 1), d=(99, 1), T=(1, 2), c=(0, 0))
        with pytest.raises(BlockOverlap):
            assemble(bad)


class TestLemma2:
    def test_unit_plan_report(self):
        report = lemma2_verify(make_plan([1, 1], [1, 1], [1, 1], 2))
        assert report.ok
        assert len(report.rows) == 8  # four checks per block
        names = {r.name for r in report.rows}
        assert names == {"peaks_a", "peaks_b", "distance", "counting"}

    def test_peaks_and_distance_values(self):
        plan = theorem3_plan(3, 2, 1, 2)
        seq_a, seq_b = assemble(plan)
        for n in (1, 2):
            c_n, d_n = plan.c[n - 1], plan.d[n - 1]
            assert s_max(seq_a, c_n - 2 * d_n)[0] == 3
            assert s_max(seq_a, c_n + 2 * d_n)[0] == 3
            assert s_max(seq_b, c_n - 2 * d_n)[0] == 2
            assert s_max(seq_b, c_n + 2 * d_n)[0] == 2
            assert dist(seq_a, seq_b, c_n) == 1

    def test_unit_blocks_are_sidon(self):
        seq_a, seq_b = assemble(theorem3_plan(1, 1, 2, 2))
        assert is_sidon(seq_a)[0] and is_sidon(seq_b)[0]

    def test_element_gap_rows(self):
        plan = make_plan([1, 1], [1, 1], [1, 1], 2)
        seq_a, seq_b = assemble(plan)
        rows = elementwise_distance_rows(seq_a, seq_b, [1, 1, 1, 1])
        assert all(r.passed for r in rows)
        assert [r.actual for r in rows] == [1, 1, 1, 1]
        tight = elementwise_distance_rows(seq_a, seq_b, [0])
        assert not tight[0].passed


class TestTheorem4:
    def test_linear_tables_frozen_ratios(self):
        u = [1, 2, 3]
        v = [1, 2]
        plan = theorem4_plan(u, v, 1, 2)
        assert plan.a == (1, 1, 2, 2)
        assert plan.b == (1, 2, 2, 3)
        samples = theorem4_ratios(plan, 2)
        assert [(s.low, s.high) for s in samples] == [
            (1, 2),
            (1, pytest.approx(1.5)),
        ]

    def test_observed_matches_expected(self):
        plan = theorem4_plan([1, 2, 3], [1, 2], 2, 2)
        for s in theorem4_ratios(plan, 2):
            assert s.low == s.low_expected
            assert s.high == s.high_expected

    def test_table_length_guards(self):
        with pytest.raises(ValueError):
            theorem4_plan([1, 2], [1, 2], 1, 2)  # u needs pairs+1 entries
        with pytest.raises(ValueError):
            theorem4_plan([1, 2], [1], 1, 0)


class TestTheorem5:
    def test_bounded_switch(self):
        plan = theorem5_plan(1, 3, [1, 2, 3, 4], 4)
        assert plan.a == (1, 1, 1, 1)
        assert plan.b == (1, 1, 3, 3)  # b jumps once f reaches ceil(3/1)
        assert lemma2_verify(plan).ok

    def test_roles_swap_for_large_a(self):
        assert theorem5_plan(3, 1, [1, 2, 3], 3) == theorem5_plan(1, 3, [1, 2, 3], 3)

    def test_unbounded_tracks_f(self):
        plan = theorem5_plan(2, None, [1, 2, 3], 3)
        assert plan.b == (2, 4, 6)

    def test_constant_f_rejected(self):
        with pytest.raises(ValueError):
            theorem5_plan(1, 3, [2, 2, 2], 3)

    def test_decreasing_f_rejected(self):
        with pytest.raises(NotMonotone):
            theorem5_plan(1, 3, [1, 3, 2], 3)


controls = st.integers(min_value=1, max_value=3)


class TestProperties:
    @given(controls, controls, st.integers(min_value=1, max_value=2), st.integers(min_value=1, max_value=2))
    @settings(max_examples=30, deadline=None)
    def test_small_plans_verify_exactly(self, a, b, d, depth):
        if a > (4 * d + 1) * b or b > (4 * d + 1) * a:
            return
        assert lemma2_verify(theorem3_plan(a, b, d, depth)).ok

    @given(controls, st.integers(min_value=1, max_value=2))
    @settings(max_examples=20, deadline=None)
    def test_checkpoint_gaps_scale_by_powers(self, a, d):
        plan = theorem3_plan(a, a, d, 2)
        # consecutive checkpoints are separated by a factor >= 10
        assert plan.c[1] >= 10 * plan.c[0]
        seq_a, _ = assemble(plan)
        assert seq_a.elements == tuple(sorted(set(seq_a.elements)))
