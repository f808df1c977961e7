"""End-to-end acceptance checks with stated runtime budgets.

Each test exercises one headline capability at full advertised scale and
prints a single PASS/FAIL line (visible under pytest -s or on failure).
Budgets are wall-clock upper bounds, asserted after the work completes.
"""

import math
import random
import time
from contextlib import contextmanager

from addrep.constructs import assemble, lemma2_verify, theorem3_plan
from addrep.randomsets import (
    PUBLISHED_SEEDS,
    RandomModel,
    counting_deviation,
    r2_profile,
    sample,
    theorem9_verify,
)
from addrep.seqcore import IntegerSequence, is_sidon, rep_count, rep_profile, sandwich_check
from addrep.sidon import build
from addrep.special import (
    cube_chain,
    digit_count,
    squares_lower_bound_check,
    squares_rep,
    theorem8_verify,
)


@contextmanager
def budget(name: str, seconds: float):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL ({time.monotonic() - start:.1f}s)")
        raise
    elapsed = time.monotonic() - start
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.1f}s, budget {seconds:.0f}s)")
    assert elapsed < seconds, f"{name} took {elapsed:.1f}s, budget {seconds}s"


def hypothesis_ok(a: int, b: int, d: int) -> bool:
    return a <= (4 * d + 1) * b and b <= (4 * d + 1) * a


def test_1_primorial_squares_double_exactly():
    with budget("primorial-squares", 10):
        report = squares_lower_bound_check(7)
        assert report.all_exact
        for row in report.rows:
            assert row.rep == 2 ** (row.k - 1)


def test_2_cube_chains_share_one_target():
    with budget("cube-chains", 30):
        for k in range(1, 5):
            chain = cube_chain(k)
            target = (64 ** (k - 1) + 1) * chain.w[-1] ** 3
            assert chain.n_target == target
            for x, y in zip(chain.x, chain.y):
                assert x**3 + y**3 == target
            assert len({frozenset((x, y)) for x, y in zip(chain.x, chain.y)}) == k
            report = theorem8_verify(chain)  # raises on broken identities
            assert report.digits_ok
            assert digit_count(target) <= 2 * 100**k


def test_3_block_pairs_hit_prescribed_peaks():
    with budget("block-pairs", 60):
        checked = 0
        for a in range(1, 5):
            for b in range(1, 5):
                for d in (1, 2):
                    if not hypothesis_ok(a, b, d):
                        continue
                    for depth in (1, 2):
                        assert lemma2_verify(theorem3_plan(a, b, d, depth)).ok
                        checked += 1
        assert checked == 64


def test_4_sandwich_bound_never_fails():
    rng = random.Random(20260814)
    with budget("sandwich-bound", 60):
        for _ in range(1000):
            size = rng.randint(3, 25)
            ea = sorted(rng.sample(range(0, 10**4 + 1), size))
            eb = sorted(rng.sample(range(0, 10**4 + 1), size))
            a = IntegerSequence(tuple(ea), 4 * 10**4, "a")
            b = IntegerSequence(tuple(eb), 4 * 10**4, "b")
            for _ in range(20):
                assert sandwich_check(a, b, rng.randint(0, 10**4)).holds
        for pa in range(1, 5):
            for pb in range(1, 5):
                for d in (1, 2):
                    if not hypothesis_ok(pa, pb, d):
                        continue
                    plan = theorem3_plan(pa, pb, d, 2)
                    seq_a, seq_b = assemble(plan)
                    for _ in range(20):
                        assert sandwich_check(seq_a, seq_b, rng.randint(0, plan.c[-1])).holds


def test_5_sidon_pair_two_blocks():
    with budget("sidon-pair", 120):
        result = build(2)
        assert len(result.A) == len(result.B) == 222
        ok, violation = is_sidon(result.A)
        assert ok and violation is None
        assert rep_count(result.B, 10**6).count >= 10
        assert rep_count(result.B, 10**9).count >= 100
        for t, (av, bv) in enumerate(zip(result.A.elements, result.B.elements), start=1):
            assert abs(av - bv) <= t


def test_6_pinned_random_seeds_concentrate():
    with budget("random-seeds", 60):
        in_band = 0
        for seed in PUBLISHED_SEEDS:
            seq = sample(RandomModel(seed=seed, x_max=10**6))
            reports = counting_deviation(seq, [10**4, 10**5, 10**6])
            in_band += all(r.within for r in reports)
            full = theorem9_verify(seq)
            assert full.r2_tail_max <= 3
            assert full.tail_ok
        assert in_band >= 9


def test_7_oracles_agree_everywhere():
    rng = random.Random(7)
    with budget("oracle-equivalence", 60):
        for _ in range(100):
            size = rng.randint(1, 200)
            elems = tuple(sorted(rng.sample(range(0, 1000), size)))
            seq = IntegerSequence(elems, 2000, "r")
            prof = rep_profile(seq, 2000)
            for n in range(2001):
                assert prof[n] == rep_count(seq, n).count
        squares = IntegerSequence(
            tuple(k * k for k in range(1, math.isqrt(10**5) + 1)), 10**5, "squares"
        )
        prof = rep_profile(squares, 10**5)
        for n in range(10**5 + 1):
            assert prof[n] == squares_rep(n)
        for seed in (1, 2, 3):
            seq = sample(RandomModel(seed=seed, x_max=20000))
            members = set(seq.elements)
            counts, _ = r2_profile(seq, 20000)
            for n in range(2, 20001):
                doubled = 1 if n % 2 == 0 and n // 2 in members else 0
                assert counts[n] == rep_count(seq, n).count - doubled


def test_8_growth_exponents_stay_in_interval():
    with budget("growth-exponents", 60):
        rows = squares_lower_bound_check(7).rows
        samples = [(r.k, r.exponent) for r in rows if r.k >= 4]
        for k, e in samples:
            assert 0 < e <= math.log(2), f"K={k} exponent {e} outside (0, log 2]"
        trend = "increasing" if all(
            samples[i][1] < samples[i + 1][1] for i in range(len(samples) - 1)
        ) else "mixed"
        print(f"exponents K=4..7: {[round(e, 6) for _, e in samples]} trend={trend}")
