"""Segmented sieving of the Mobius and Liouville functions.

Values are produced in blocks: each block [start, start + count) is
sieved on its own with the primes up to sqrt(start + count - 1), so
blocks are natural units of caching and parallel work.  A per-prime
pass divides marked entries and flips signs; whatever remains larger
than 1 afterwards is a single prime factor above the block root.

Summatory quantities (the Mertens sum M(x) and the reciprocal sum
m(x) = sum_{n<=x} mu(n)/n) are reduced from per-block partials merged
in ascending block order.  The partials depend only on the block grid,
never on the worker count, so results are bit-identical for any number
of workers.  Reciprocal sums use math.fsum, which is exactly rounded,
both inside blocks and when merging block partials.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

MOBIUS = "mobius"
LIOUVILLE = "liouville"

DEFAULT_BLOCK_LEN = 1 << 20

# Checkpoint integers are promised exact up to this frontier.
RANGE_LIMIT = 1 << 62


def _check_range(start: int, count: int) -> None:
    if start < 1:
        raise ValueError("start must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    if start + count - 1 > RANGE_LIMIT:
        raise ValueError("range end exceeds the supported limit 2^62")


def primes_up_to(n: int) -> np.ndarray:
    """All primes p <= n, ascending, as int64."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_values(start: int, count: int, kind: str = MOBIUS) -> np.ndarray:
    """mu or lambda over [start, start + count) as an int8 array."""
    _check_range(start, count)
    hi = start + count
    ps = primes_up_to(math.isqrt(hi - 1)).tolist()
    out = np.ones(count, dtype=np.int8)
    rem = np.arange(start, hi, dtype=np.int64)
    if kind == MOBIUS:
        for p in ps:
            first = (-start) % p
            rem[first::p] //= p
            out[first::p] = -out[first::p]
            p2 = p * p
            out[(-start) % p2 :: p2] = 0
        big = rem > 1
        out[big] = -out[big]
    elif kind == LIOUVILLE:
        for p in ps:
            pe = p
            while pe < hi:
                first = (-start) % pe
                rem[first::pe] //= p
                out[first::pe] = -out[first::pe]
                pe *= p
        big = rem > 1
        out[big] = -out[big]
    else:
        raise ValueError(f"unknown function kind: {kind!r}")
    return out


def mobius_at(n: int) -> int:
    """mu(n) by trial factorization; the reference oracle for all sieving."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1 if d == 2 else 2
    if m > 1:
        result = -result
    return result


def liouville_at(n: int) -> int:
    """(-1)^Omega(n) with Omega counting prime factors with multiplicity."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sign = 1
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            m //= d
            sign = -sign
        d += 1 if d == 2 else 2
    if m > 1:
        sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class MobiusBlock:
    """mu over [start, start + count), one int8 value per integer."""

    start: int
    values: np.ndarray

    def __post_init__(self) -> None:
        _check_range(self.start, int(self.values.size))

    @property
    def count(self) -> int:
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MobiusBlock)
            and self.start == other.start
            and np.array_equal(self.values, other.values)
        )


def sieve_block(start: int, count: int) -> MobiusBlock:
    return MobiusBlock(start, sieve_values(start, count, MOBIUS))


@dataclass(frozen=True)
class SummatoryPoint:
    x: int
    mertens: int
    reciprocal_sum: float


def plan_blocks(limit: int, block_len: int = DEFAULT_BLOCK_LEN) -> list[tuple[int, int]]:
    """Grid blocks (start, count) covering [1, limit], anchored at 1."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if block_len < 1:
        raise ValueError("block_len must be >= 1")
    blocks = []
    start = 1
    while start <= limit:
        count = min(block_len, limit - start + 1)
        blocks.append((start, count))
        start += count
    return blocks


def load_values(start: int, count: int, kind: str = MOBIUS, cache_dir=None) -> np.ndarray:
    """Cached mu values when available, otherwise a fresh sieve."""
    if cache_dir is not None and kind == MOBIUS:
        from . import cache

        got = cache.find_block(cache_dir, start, count)
        if got is not None:
            return got
    return sieve_values(start, count, kind)


def _map_ordered(fn, tasks, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _summatory_partial(args):
    start, count, checkpoints, cache_dir = args
    vals = load_values(start, count, MOBIUS, cache_dir)
    inv = vals / np.arange(start, start + count, dtype=np.float64)
    msum = int(vals.sum(dtype=np.int64))
    block_fsum = math.fsum(inv.tolist())
    prefixes = []
    for x in checkpoints:
        k = x - start + 1
        prefixes.append((x, int(vals[:k].sum(dtype=np.int64)), math.fsum(inv[:k].tolist())))
    return msum, block_fsum, prefixes


def summatory_ladder(
    xs,
    *,
    block_len: int = DEFAULT_BLOCK_LEN,
    workers: int = 1,
    cache_dir=None,
) -> list[SummatoryPoint]:
    """SummatoryPoint at each x, from one ascending sieve pass.

    Pointwise equal to calling mertens at every x.  Each checkpoint's
    reciprocal sum is fsum(whole-block partials before it + its in-block
    prefix partial), a fixed expression in the block grid alone.
    """
    xs = [int(x) for x in xs]
    if not xs:
        raise ValueError("xs must be nonempty")
    if xs[0] < 1:
        raise ValueError("xs entries must be >= 1")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("xs must be strictly increasing")
    blocks = plan_blocks(xs[-1], block_len)
    tasks = []
    for start, count in blocks:
        inside = tuple(x for x in xs if start <= x < start + count)
        tasks.append((start, count, inside, cache_dir))
    partials = _map_ordered(_summatory_partial, tasks, workers)
    points = []
    m_run = 0
    f_parts: list[float] = []
    for msum, block_fsum, prefixes in partials:
        for x, mpre, fpre in prefixes:
            points.append(SummatoryPoint(x, m_run + mpre, math.fsum(f_parts + [fpre])))
        m_run += msum
        f_parts.append(block_fsum)
    return points


def mertens(
    x: int,
    *,
    block_len: int = DEFAULT_BLOCK_LEN,
    workers: int = 1,
    cache_dir=None,
) -> SummatoryPoint:
    """Exact M(x) together with the compensated reciprocal sum m(x)."""
    return summatory_ladder([x], block_len=block_len, workers=workers, cache_dir=cache_dir)[0]
