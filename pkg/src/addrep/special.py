"""Square and cube targets with many representations.

Two explicit families:

  * products of the first K primes congruent to 1 mod 4, which have exactly
    2**(K-1) representations as an unordered sum of two positive squares;
  * Vieta-style chains on the curve x^3 + y^3 = N starting from
    (4**(k-1), 1, 1), which produce k distinct positive rational-free pairs
    of cubes summing to one integer N of at most 2*100**k digits.

Everything is exact big-integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

from .errors import DuplicatePair, IdentityBroken, NonpositiveBracket, RangeTooLarge

DEFAULT_MAX_CHAIN = 5
DEFAULT_SQRT_BUDGET = 10**7


@dataclass(frozen=True)
class PrimorialTarget:
    k: int
    primes: tuple[int, ...]
    q: int


@dataclass(frozen=True)
class SquaresSample:
    k: int
    prime: int
    q: int
    rep: int
    expected: int
    exponent: float


@dataclass(frozen=True)
class SquaresReport:
    rows: tuple[SquaresSample, ...]
    all_exact: bool


@dataclass(frozen=True)
class CubeChain:
    """k coprime-scaled points on x^3 + y^3 = N plus the raw recursion rows."""

    k: int
    u: tuple[int, ...]
    v: tuple[int, ...]
    w: tuple[int, ...]
    x: tuple[int, ...]
    y: tuple[int, ...]
    n_target: int


@dataclass(frozen=True)
class CubeChainReport:
    k: int
    digits: int
    digit_bound: int
    digits_ok: bool
    ratio_claims: tuple[bool, ...]
    ratios_decreasing: bool
    growth_claims: tuple[bool, ...]


def primes_one_mod_four(count: int) -> list[int]:
    """First `count` primes congruent to 1 mod 4, by trial division."""
    found: list[int] = []
    n = 5
    while len(found) < count:
        if n % 4 == 1:
            is_prime = True
            for p in range(3, isqrt(n) + 1, 2):
                if n % p == 0:
                    is_prime = False
                    break
            if is_prime:
                found.append(n)
        n += 2
    return found


def primorial_targets(k: int) -> PrimorialTarget:
    """Product of the first k primes = 1 mod 4 (the K-th target Q_K)."""
    if k < 1:
        raise ValueError("k must be positive")
    primes = primes_one_mod_four(k)
    q = 1
    for p in primes:
        q *= p
    return PrimorialTarget(k, tuple(primes), q)


def squares_rep(n: int, sqrt_budget: int = DEFAULT_SQRT_BUDGET) -> int:
    """Unordered representations n = i^2 + j^2 with 1 <= i <= j, exact.

    Enumerates i up to sqrt(n/2); n with isqrt(n) beyond the budget is
    refused rather than silently slow.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isqrt(n) > sqrt_budget:
        raise RangeTooLarge(f"sqrt({n}) exceeds the enumeration budget {sqrt_budget}")
    count = 0
    i = 1
    while 2 * i * i <= n:
        rest = n - i * i
        s = isqrt(rest)
        if s * s == rest and s >= 1:
            count += 1
        i += 1
    return count


def squares_lower_bound_check(k_max: int) -> SquaresReport:
    """Exact representation counts for the first k_max primorial targets.

    Each row also carries the exponent sample
        log(rep) * log(log(q)) / log(q),
    the quantity whose limsup the family pushes toward log 2.
    """
    rows = []
    ok = True
    for k in range(1, k_max + 1):
        target = primorial_targets(k)
        rep = squares_rep(target.q)
        expected = 2 ** (k - 1)
        ok = ok and rep == expected
        exponent = (
            math.log(rep) * math.log(math.log(target.q)) / math.log(target.q)
            if rep > 1
            else 0.0
        )
        rows.append(SquaresSample(k, target.primes[-1], target.q, rep, expected, exponent))
    return SquaresReport(tuple(rows), ok)


def vieta_step(u: int, v: int, w: int) -> tuple[int, int, int]:
    """One unfolding of the tangent-line recursion on u^3 + v^3 = m * w^3.

    Preserves the curve: if u^3 + v^3 = m * w^3 then the returned triple
    satisfies u'^3 + v'^3 = m * w'^3 with u', v', w' > 0, provided the
    leading bracket stays positive (NonpositiveBracket otherwise).
    """
    if min(u, v, w) < 1:
        raise ValueError("u, v, w must be positive")
    u3, v3 = u**3, v**3
    p = u3 + 2 * v3
    q = 2 * u3 + v3
    p3, q3 = p**3, q**3
    bracket_u = u3 * p3 - 2 * v3 * q3
    if bracket_u <= 0:
        raise NonpositiveBracket(f"u-bracket is {bracket_u} for (u, v, w)=({u}, {v}, {w})")
    bracket_v = 2 * u3 * p3 - v3 * q3
    if bracket_v <= 0:
        raise NonpositiveBracket(f"v-bracket is {bracket_v} for (u, v, w)=({u}, {v}, {w})")
    u2 = u * p * bracket_u
    v2 = v * q * bracket_v
    w2 = (u3 - v3) * (u3 * p3 + v3 * q3) * w
    if w2 <= 0:
        raise NonpositiveBracket(f"w-factor is nonpositive for (u, v, w)=({u}, {v}, {w})")
    if (u3 + v3) % w**3 == 0:
        m = (u3 + v3) // w**3
        if u2**3 + v2**3 != m * w2**3:
            raise IdentityBroken(0, "tangent step left the curve")
    return u2, v2, w2


def cube_chain(k: int, max_k: int = DEFAULT_MAX_CHAIN) -> CubeChain:
    """Build k distinct positive pairs of cubes with a common sum N.

    Starts at (4**(k-1), 1, 1) and unfolds the tangent recursion k-1 times;
    each triple is then rescaled by w_k / w_i so all pairs live on the single
    integer target N = (64**(k-1) + 1) * w_k^3.  Chains past max_k blow up
    doubly exponentially and are refused.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > max_k:
        raise RangeTooLarge(f"chain length {k} exceeds the cap {max_k} (digits grow like 100**k)")
    u = [4 ** (k - 1)]
    v = [1]
    w = [1]
    for _ in range(k - 1):
        nu, nv, nw = vieta_step(u[-1], v[-1], w[-1])
        u.append(nu)
        v.append(nv)
        w.append(nw)
    x = []
    y = []
    for i in range(k):
        if w[-1] % w[i] != 0:
            raise IdentityBroken(i + 1, "w-chain is not divisor-nested")
        scale = w[-1] // w[i]
        x.append(u[i] * scale)
        y.append(v[i] * scale)
    n_target = (64 ** (k - 1) + 1) * w[-1] ** 3
    return CubeChain(k, tuple(u), tuple(v), tuple(w), tuple(x), tuple(y), n_target)


def digit_count(n: int) -> int:
    """Decimal digit count without str(), safe for very large integers."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    est = int((n.bit_length() - 1) * 0.30102999566398114)
    while 10 ** (est + 1) <= n:
        est += 1
    return est + 1


def theorem8_verify(chain: CubeChain) -> CubeChainReport:
    """Assert the chain facts and report the looser growth claims.

    Raises IdentityBroken if any scaled pair misses the target and
    DuplicatePair if two pairs coincide as sets.  The digit bound, the
    claimed u_i >= 4**(k-i) * v_i domination, the strict decrease of
    u_i/v_i, and the w-growth bound w_{i+1} <= 54 * u_i^15 * w_i are
    reported, not raised on: the domination claim genuinely fails.
    """
    k = chain.k
    for i in range(k):
        if chain.x[i] ** 3 + chain.y[i] ** 3 != chain.n_target:
            raise IdentityBroken(i + 1, f"pair {i + 1} misses the common target")
    seen = set()
    for i in range(k):
        key = frozenset((chain.x[i], chain.y[i]))
        if key in seen:
            raise DuplicatePair(f"pair {i + 1} repeats an earlier representation")
        seen.add(key)
    digits = digit_count(chain.n_target)
    bound = 2 * 100**k
    ratio_claims = tuple(
        chain.u[i] >= 4 ** (k - (i + 1)) * chain.v[i] for i in range(k)
    )
    # u_i/v_i strictly decreasing, compared exactly by cross-multiplication
    decreasing = all(
        chain.u[i + 1] * chain.v[i] < chain.u[i] * chain.v[i + 1] for i in range(k - 1)
    )
    growth_claims = tuple(
        chain.w[i + 1] <= 54 * chain.u[i] ** 15 * chain.w[i] for i in range(k - 1)
    )
    return CubeChainReport(
        k=k,
        digits=digits,
        digit_bound=bound,
        digits_ok=digits <= bound,
        ratio_claims=ratio_claims,
        ratios_decreasing=decreasing,
        growth_claims=growth_claims,
    )
