"""Paired block constructions with prescribed peak counts and distances.

A BlockPlan tabulates control sequences a(n), b(n), d(n) (monotone
nondecreasing positive integers with a <= (4d+1)b and b <= (4d+1)a at every
index).  Block n contributes 2*max(a(n), b(n)) elements to each of two sets
A and B, placed as decimal powers scaled by d(n) around 10**(n + T(n)) where
T(n) sums the running maxima.  At the checkpoints c_n = d(n)*(2 + 10**(n+T(n)))
the assembled prefixes satisfy, exactly:

    s_A(c_n - 2d(n)) = s_A(c_n + 2d(n)) = a(n)
    s_B(c_n - 2d(n)) = s_B(c_n + 2d(n)) = b(n)
    dist(A, B, c_n)  = d(n)
    |A <= c_n| = |B <= c_n| = 2*T(n)

The side whose control value attains max(a(n), b(n)) gets pure powers
d * 10**e; the other side gets the same powers nudged by -d(n)-1 plus a
slow ceiling ramp, which staircases its pair sums across the 4d+1 window
and caps its peak count at the smaller control value.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BlockOverlap, HypothesisViolated, NotMonotone
from .seqcore import IntegerSequence, counting, dist, s_max

# Plans whose checkpoint c_N needs more decimal digits than this trigger a
# warning before any big power is materialized.
DEFAULT_DIGIT_BUDGET = 10**6


@dataclass(frozen=True)
class BlockPlan:
    """Validated control tables; index n is 1-based via plan.a[n-1] etc."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    d: tuple[int, ...]
    T: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class BlockPair:
    """The 2*max(a(n), b(n)) elements each block contributes, sorted."""

    n: int
    a_elems: tuple[int, ...]
    b_elems: tuple[int, ...]


@dataclass(frozen=True)
class CheckRow:
    n: int
    name: str
    expected: object
    actual: object
    passed: bool


@dataclass(frozen=True)
class Lemma2Report:
    rows: tuple[CheckRow, ...]
    ok: bool


@dataclass(frozen=True)
class RatioSample:
    """Observed vs expected peak-count ratios at one checkpoint pair."""

    n: int
    low: Fraction
    low_expected: Fraction
    high: Fraction
    high_expected: Fraction


def make_plan(
    a_seq: Sequence[int],
    b_seq: Sequence[int],
    d_seq: Sequence[int],
    depth: int,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
) -> BlockPlan:
    """Validate control tables and precompute T(n) and the checkpoints c_n."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    for name, s in (("a", a_seq), ("b", b_seq), ("d", d_seq)):
        if len(s) < depth:
            raise ValueError(f"{name}-table is shorter than the requested depth")
    a = tuple(int(v) for v in a_seq[:depth])
    b = tuple(int(v) for v in b_seq[:depth])
    d = tuple(int(v) for v in d_seq[:depth])
    T: list[int] = []
    c: list[int] = []
    total = 0
    for n in range(1, depth + 1):
        an, bn, dn = a[n - 1], b[n - 1], d[n - 1]
        if min(an, bn, dn) < 1:
            raise ValueError(f"control values must be positive at index {n}")
        if n > 1 and (an < a[n - 2] or bn < b[n - 2] or dn < d[n - 2]):
            raise NotMonotone(n)
        if an > (4 * dn + 1) * bn or bn > (4 * dn + 1) * an:
            raise HypothesisViolated(n)
        total += max(an, bn)
        T.append(total)
        digits = n + total + len(str(dn)) + 1
        if digits > digit_budget:
            warnings.warn(
                f"checkpoint c_{n} needs about {digits} digits, over the budget {digit_budget}",
                RuntimeWarning,
                stacklevel=2,
            )
        c.append(dn * (2 + 10 ** (n + total)))
    return BlockPlan(a, b, d, tuple(T), tuple(c))


def _ramped(power_elems: list[int], d: int, count_small: int) -> list[int]:
    """Shift a pure-power half down by d+1 and add the ceiling ramp.

    The ramp ceil(i / (2*count_small)) climbs from 1 to at most 2d+1, which
    spreads the shifted copies across the 4d+1 window so no target sum
    collects more than count_small pairs.
    """
    out = []
    for i, e in enumerate(power_elems, start=1):
        out.append(e - d - 1 + -(-i // (2 * count_small)))
    return out


def block(plan: BlockPlan, n: int) -> BlockPair:
    """Materialize the elements block n contributes to A and B."""
    if not 1 <= n <= plan.depth:
        raise ValueError(f"block index {n} outside plan depth {plan.depth}")
    a_n, b_n, d_n = plan.a[n - 1], plan.b[n - 1], plan.d[n - 1]
    t_prev = plan.T[n - 2] if n >= 2 else 0
    t_n = plan.T[n - 1]
    big, small = max(a_n, b_n), min(a_n, b_n)
    top = d_n * 10 ** (n + t_n)
    lower = [d_n * 10 ** (n - 1 + i + t_prev) for i in range(1, big + 1)]
    upper = [top - d_n * 10 ** (n - 1 + i - big + t_prev) for i in range(big + 1, 2 * big + 1)]
    # lower[i] + upper[i] = top = c_n - 2*d(n) for every i, so the pure side
    # stacks exactly `big` pairs onto that single target
    pure = lower + upper[::-1]
    shifted_lower = _ramped(lower, d_n, small)
    shifted_upper = [
        top - d_n * 10 ** (n - 1 + i - big + t_prev) - d_n - 1 + -(-(i - big + small) // (2 * small))
        for i in range(big + 1, 2 * big + 1)
    ]
    ramped = shifted_lower + shifted_upper[::-1]
    if a_n >= b_n:
        a_elems, b_elems = pure, ramped
    else:
        a_elems, b_elems = ramped, pure
    return BlockPair(n, tuple(a_elems), tuple(b_elems))


def assemble(plan: BlockPlan, depth: int | None = None, label: str = "") -> tuple[IntegerSequence, IntegerSequence]:
    """Concatenate blocks 1..depth into the two certified prefixes.

    The horizon is c_depth + 2*d(depth) so every checkpoint query, including
    the upper sandwich probe, stays certified.  Consecutive blocks must stay
    strictly separated (BlockOverlap otherwise).
    """
    if depth is None:
        depth = plan.depth
    if not 0 <= depth <= plan.depth:
        raise ValueError(f"depth {depth} outside plan depth {plan.depth}")
    if depth == 0:
        empty = IntegerSequence((), 0, label)
        return empty, empty
    a_all: list[int] = []
    b_all: list[int] = []
    for n in range(1, depth + 1):
        pair = block(plan, n)
        for acc, elems in ((a_all, pair.a_elems), (b_all, pair.b_elems)):
            if acc and elems[0] <= acc[-1]:
                raise BlockOverlap(f"block {n} reaches down into block {n - 1}")
            acc.extend(elems)
    horizon = plan.c[depth - 1] + 2 * plan.d[depth - 1]
    prefix = f"{label}." if label else ""
    return (
        IntegerSequence(tuple(a_all), horizon, prefix + "A"),
        IntegerSequence(tuple(b_all), horizon, prefix + "B"),
    )


def lemma2_verify(plan: BlockPlan, depth: int | None = None) -> Lemma2Report:
    """Check the four exact checkpoint properties at every n <= depth."""
    if depth is None:
        depth = plan.depth
    seq_a, seq_b = assemble(plan, depth)
    rows: list[CheckRow] = []
    for n in range(1, depth + 1):
        c_n, d_n = plan.c[n - 1], plan.d[n - 1]
        a_n, b_n, t_n = plan.a[n - 1], plan.b[n - 1], plan.T[n - 1]
        peaks_a = (s_max(seq_a, c_n - 2 * d_n)[0], s_max(seq_a, c_n + 2 * d_n)[0])
        peaks_b = (s_max(seq_b, c_n - 2 * d_n)[0], s_max(seq_b, c_n + 2 * d_n)[0])
        rows.append(CheckRow(n, "peaks_a", (a_n, a_n), peaks_a, peaks_a == (a_n, a_n)))
        rows.append(CheckRow(n, "peaks_b", (b_n, b_n), peaks_b, peaks_b == (b_n, b_n)))
        d_obs = dist(seq_a, seq_b, c_n)
        rows.append(CheckRow(n, "distance", d_n, d_obs, d_obs == d_n))
        sizes = (counting(seq_a, c_n), counting(seq_b, c_n))
        size_ok = sizes == (2 * t_n, 2 * t_n) and 2 * t_n >= 2 * n
        rows.append(CheckRow(n, "counting", (2 * t_n, 2 * t_n), sizes, size_ok))
    return Lemma2Report(tuple(rows), all(r.passed for r in rows))


def theorem3_plan(a: int, b: int, d: int, depth: int) -> BlockPlan:
    """Constant-control plan: realizes fixed peak counts a, b at distance d."""
    return make_plan([a] * depth, [b] * depth, [d] * depth, depth)


def theorem4_plan(u_seq: Sequence[int], v_seq: Sequence[int], d: int, pairs: int) -> BlockPlan:
    """Interleaved plan whose peak-count ratio oscillates between two limits.

    Blocks 2n-1 and 2n share a(.) = v_n while b alternates u_n then u_{n+1},
    so the ratio s_B/s_A sampled at the odd checkpoints tends to lim u_n/v_n
    from below and at the even ones to lim u_{n+1}/v_n from above.  Needs
    u tabulated one entry past `pairs`.
    """
    if pairs < 1:
        raise ValueError("pairs must be positive")
    if len(u_seq) < pairs + 1 or len(v_seq) < pairs:
        raise ValueError("u needs pairs+1 entries and v needs pairs entries")
    a: list[int] = []
    b: list[int] = []
    for n in range(1, pairs + 1):
        a.extend((v_seq[n - 1], v_seq[n - 1]))
        b.extend((u_seq[n - 1], u_seq[n]))
    return make_plan(a, b, [d] * (2 * pairs), 2 * pairs)


def theorem4_ratios(plan: BlockPlan, pairs: int) -> list[RatioSample]:
    """Evaluate the interleaved ratio samples on the assembled prefixes."""
    seq_a, seq_b = assemble(plan, 2 * pairs)
    samples = []
    for n in range(1, pairs + 1):
        c1, d1 = plan.c[2 * n - 2], plan.d[2 * n - 2]
        c2, d2 = plan.c[2 * n - 1], plan.d[2 * n - 1]
        low = Fraction(s_max(seq_b, c1)[0], s_max(seq_a, c1 - 2 * d1)[0])
        high = Fraction(s_max(seq_b, c2)[0], s_max(seq_a, c2 + 2 * d2)[0])
        samples.append(
            RatioSample(
                n=n,
                low=low,
                low_expected=Fraction(plan.b[2 * n - 2], plan.a[2 * n - 2]),
                high=high,
                high_expected=Fraction(plan.b[2 * n - 1], plan.a[2 * n - 1]),
            )
        )
    return samples


def theorem5_plan(a: int, b: int | None, f_table: Sequence[int], depth: int) -> BlockPlan:
    """Plan with prescribed peak counts whose distance follows a growing f.

    b=None means unbounded: block n then targets b(n) = a * f(n).  For finite
    b the smaller count plays the a-role (roles swap silently when a > b) and
    b(n) steps from a up to b once f(n) reaches ceil(b/a).  f must be a
    monotone nondecreasing positive table that actually grows.
    """
    if a < 1:
        raise ValueError("a must be positive")
    if depth < 1:
        raise ValueError("depth must be positive")
    if len(f_table) < depth:
        raise ValueError("f-table is shorter than the requested depth")
    f = [int(v) for v in f_table[:depth]]
    if min(f) < 1:
        raise ValueError("f values must be positive")
    if any(f[i] > f[i + 1] for i in range(len(f) - 1)):
        raise NotMonotone(next(i + 2 for i in range(len(f) - 1) if f[i] > f[i + 1]))
    if f[-1] <= f[0]:
        raise ValueError("f must grow over the table; a constant f realizes nothing")
    if b is None:
        a_seq = [a] * depth
        b_seq = [a * fn for fn in f]
    else:
        if b < 1:
            raise ValueError("b must be positive")
        lo, hi = min(a, b), max(a, b)
        switch = -(-hi // lo)  # ceil(hi/lo)
        a_seq = [lo] * depth
        b_seq = [lo if fn < switch else hi for fn in f]
    return make_plan(a_seq, b_seq, f, depth)


def elementwise_distance_rows(
    seq_a: IntegerSequence, seq_b: IntegerSequence, bounds: Sequence[int]
) -> list[CheckRow]:
    """Check |a_k - b_k| <= bounds[k-1] for each tabulated k."""
    rows = []
    for k in range(1, len(bounds) + 1):
        gap = abs(seq_a.element(k) - seq_b.element(k))
        rows.append(CheckRow(k, "element_gap", bounds[k - 1], gap, gap <= bounds[k - 1]))
    return rows
