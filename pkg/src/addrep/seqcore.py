"""Exact representation-function arithmetic over certified sequence prefixes.

An IntegerSequence stores every member of a (possibly infinite) strictly
increasing set of nonnegative integers up to an explicit horizon.  Because the
prefix is complete, any count taken at a point x <= horizon is an exact fact
about the underlying set; queries past the horizon raise HorizonExceeded
instead of silently truncating.  All arithmetic in this module is integer
exact.  The only numpy code path (dense profiles) works in int64.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import AlignmentIncomplete, HorizonExceeded, RangeTooLarge

# Dense profiles allocate x+1 counters; refuse beyond this by default.
DENSE_PROFILE_LIMIT = 10**8


@dataclass(frozen=True)
class IntegerSequence:
    """Strictly increasing nonnegative integers, complete up to `horizon`."""

    elements: tuple[int, ...]
    horizon: int
    label: str = ""

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        prev = -1
        for e in self.elements:
            if e <= prev:
                raise ValueError("elements must be strictly increasing and nonnegative")
            prev = e
        if self.elements and self.elements[-1] > self.horizon:
            raise ValueError("stored elements extend past the horizon")

    @classmethod
    def from_iterable(cls, values, horizon: int | None = None, label: str = "") -> "IntegerSequence":
        """Build from any iterable; horizon defaults to the largest value."""
        elems = tuple(values)
        if horizon is None:
            horizon = elems[-1] if elems else 0
        return cls(elems, horizon, label)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        name = self.label or "seq"
        return f"IntegerSequence({name}, {len(self.elements)} elements, horizon={self.horizon})"

    def element(self, t: int) -> int:
        """1-based element access; raises AlignmentIncomplete past the prefix."""
        if t < 1:
            raise ValueError("indices are 1-based")
        if t > len(self.elements):
            raise AlignmentIncomplete(f"element {t} of {self.label or 'sequence'} is not stored")
        return self.elements[t - 1]

    def contains(self, value: int) -> bool:
        """Certified membership test; only meaningful up to the horizon."""
        if value > self.horizon:
            raise HorizonExceeded(f"membership of {value} is not certified (horizon {self.horizon})")
        i = bisect_right(self.elements, value)
        return i > 0 and self.elements[i - 1] == value


@dataclass(frozen=True)
class RepReport:
    """Representation count of n with its witness index pairs (1-based, i <= j)."""

    n: int
    count: int
    witnesses: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SandwichReport:
    """Two-sided comparison of peak counts of B against A at a checkpoint x."""

    x: int
    d_x: int
    s_a_minus: int
    s_b: int
    s_a_plus: int
    lower: Fraction
    upper: int
    holds: bool


def _check_horizon(seq: IntegerSequence, x: int) -> None:
    if x > seq.horizon:
        raise HorizonExceeded(
            f"x={x} exceeds horizon {seq.horizon} of {seq.label or 'sequence'}"
        )


def rep_count(seq: IntegerSequence, n: int) -> RepReport:
    """Count unordered pairs (i, j), i <= j, with elements summing to n.

    A doubled element (e + e = n) counts once.  Two-pointer scan over the
    stored prefix; witnesses come out ordered by increasing first index.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_horizon(seq, n)
    e = seq.elements
    lo, hi = 0, bisect_right(e, n) - 1
    witnesses = []
    while lo <= hi:
        s = e[lo] + e[hi]
        if s == n:
            witnesses.append((lo + 1, hi + 1))
            lo += 1
            hi -= 1
        elif s < n:
            lo += 1
        else:
            hi -= 1
    return RepReport(n, len(witnesses), tuple(witnesses))


def rep_profile(seq: IntegerSequence, x: int, limit: int = DENSE_PROFILE_LIMIT) -> list[int]:
    """Return [R(0), R(1), ..., R(x)] as exact integers.

    Sums are accumulated through int64 bincounts in batches, so the cost is
    proportional to the number of qualifying pairs plus x.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x > limit:
        raise RangeTooLarge(f"profile up to {x} exceeds the dense limit {limit}")
    _check_horizon(seq, x)
    cut = bisect_right(seq.elements, x)
    counts = np.zeros(x + 1, dtype=np.int64)
    if cut == 0:
        return counts.tolist()
    arr = np.array(seq.elements[:cut], dtype=np.int64)
    batch: list[np.ndarray] = []
    batched = 0
    for i in range(len(arr)):
        # elements are sorted, so the qualifying partners for arr[i] are a prefix
        j_end = int(np.searchsorted(arr, x - int(arr[i]), side="right"))
        if j_end <= i:
            continue
        batch.append(arr[i] + arr[i:j_end])
        batched += j_end - i
        if batched >= 1 << 20:
            sums = np.concatenate(batch)
            b = np.bincount(sums, minlength=x + 1)
            counts += b.astype(np.int64)
            batch, batched = [], 0
    if batch:
        sums = np.concatenate(batch)
        counts += np.bincount(sums, minlength=x + 1).astype(np.int64)
    return counts.tolist()


def s_max(seq: IntegerSequence, x: int) -> tuple[int, int]:
    """Largest representation count over 0..x, with its smallest argmax.

    Returns (0, 0) when no pair sum lands in range.  Enumerates qualifying
    pairs directly, so arbitrarily large x is fine as long as the number of
    pair sums below x is moderate.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    _check_horizon(seq, x)
    e = seq.elements
    cut = bisect_right(e, x)
    counts: dict[int, int] = {}
    for i in range(cut):
        ei = e[i]
        for j in range(i, cut):
            s = ei + e[j]
            if s > x:
                break
            counts[s] = counts.get(s, 0) + 1
    if not counts:
        return (0, 0)
    best = max(counts.values())
    arg = min(n for n, c in counts.items() if c == best)
    return (best, arg)


def counting(seq: IntegerSequence, x: int) -> int:
    """Number of elements <= x (the counting function)."""
    _check_horizon(seq, x)
    return bisect_right(seq.elements, x)


def dist(a: IntegerSequence, b: IntegerSequence, x: int) -> int:
    """Max of |a_t - b_t| over indices t with a_t <= x or b_t <= x.

    Both prefixes must be certified at x, and every qualifying index needs a
    stored counterpart in the other sequence (AlignmentIncomplete otherwise).
    Returns 0 when no index qualifies.
    """
    _check_horizon(a, x)
    _check_horizon(b, x)
    t_max = max(counting(a, x), counting(b, x))
    if t_max > min(len(a.elements), len(b.elements)):
        raise AlignmentIncomplete(
            f"index {t_max} qualifies at x={x} but both prefixes are not that long"
        )
    return max(
        (abs(a.elements[t] - b.elements[t]) for t in range(t_max)),
        default=0,
    )


def is_sidon(seq: IntegerSequence) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Exact Sidon test on the stored prefix.

    Returns (True, None), or (False, (i, j, k, l)) with the first two
    distinct index pairs (lexicographic order, 1-based) sharing a sum.
    """
    e = seq.elements
    seen: dict[int, tuple[int, int]] = {}
    for i in range(len(e)):
        for j in range(i, len(e)):
            s = e[i] + e[j]
            if s in seen:
                pi, pj = seen[s]
                return (False, (pi, pj, i + 1, j + 1))
            seen[s] = (i + 1, j + 1)
    return (True, None)


def sandwich_check(a: IntegerSequence, b: IntegerSequence, x: int) -> SandwichReport:
    """Exact two-sided bound on s_B(x) between scaled peak counts of A.

    With d = dist(a, b, x) the report certifies
        s_A(x - 2d) <= (4d+1) * s_B(x)   and   s_B(x) <= (4d+1) * s_A(x + 2d),
    compared by cross-multiplication, never by division.  The A-horizon must
    reach x + 2d.  When x < 2d the left peak count is taken as 0.
    """
    d = dist(a, b, x)
    width = 4 * d + 1
    s_b = s_max(b, x)[0]
    s_a_minus = s_max(a, x - 2 * d)[0] if x - 2 * d >= 0 else 0
    s_a_plus = s_max(a, x + 2 * d)[0]
    holds = (s_a_minus <= width * s_b) and (s_b <= width * s_a_plus)
    return SandwichReport(
        x=x,
        d_x=d,
        s_a_minus=s_a_minus,
        s_b=s_b,
        s_a_plus=s_a_plus,
        lower=Fraction(s_a_minus, width),
        upper=width * s_a_plus,
        holds=holds,
    )


def read_sequence(path, label: str | None = None) -> IntegerSequence:
    """Parse a sequence file: decimal elements one per line, '#' comments.

    An optional '#horizon N' directive before the data certifies completeness
    up to N; without it the last element is taken as the horizon.
    """
    horizon: int | None = None
    elements: list[int] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tokens = line.split()
            if tokens[0] == "#horizon":
                if elements:
                    raise ValueError(f"{path}:{lineno}: #horizon must precede the data")
                if horizon is not None:
                    raise ValueError(f"{path}:{lineno}: duplicate #horizon directive")
                if len(tokens) != 2:
                    raise ValueError(f"{path}:{lineno}: expected '#horizon N'")
                horizon = int(tokens[1])
            continue
        elements.append(int(line))
    if horizon is None:
        horizon = elements[-1] if elements else 0
    return IntegerSequence(tuple(elements), horizon, label or Path(path).stem)


def write_sequence(seq: IntegerSequence, path) -> None:
    """Write a sequence file that read_sequence round-trips exactly."""
    lines = [f"#horizon {seq.horizon}"]
    lines.extend(str(e) for e in seq.elements)
    Path(path).write_text("\n".join(lines) + "\n")
