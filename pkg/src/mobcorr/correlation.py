"""Autocorrelations R(t, x) = sum_{n<=x} f(n) f(n+t) for f in {mu, lambda}.

Checkpoint values are exact integers.  Each block task sieves its own
short lookahead window of t values past the block end, so every block,
including the last, runs one uniform code path, and partial sums merge
in ascending order independent of the worker count.

Negative shifts reduce to positive ones: substituting m = n + t in the
sum over n <= x with n + t >= 1 gives R(t, x) = R(-t, x + t) for t < 0,
with an empty range reported as 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sieve


@dataclass(frozen=True)
class CorrelationSeries:
    shift_t: int
    function_id: str
    checkpoints: tuple[tuple[int, int], ...]


def _correlation_partial(args):
    start, count, t, kind, checkpoints, cache_dir = args
    window = sieve.load_values(start, count, kind, cache_dir)
    tail = sieve.sieve_values(start + count, t, kind)
    w = np.concatenate([window, tail])
    prods = w[:count] * w[t : t + count]
    psum = int(prods.sum(dtype=np.int64))
    prefixes = []
    for x in checkpoints:
        k = x - start + 1
        prefixes.append((x, int(prods[:k].sum(dtype=np.int64))))
    return psum, prefixes


def _positive_shift_ladder(kind, t, xs, block_len, workers, cache_dir):
    blocks = sieve.plan_blocks(xs[-1], block_len)
    tasks = []
    for start, count in blocks:
        inside = tuple(x for x in xs if start <= x < start + count)
        tasks.append((start, count, t, kind, inside, cache_dir))
    partials = sieve._map_ordered(_correlation_partial, tasks, workers)
    out = []
    run = 0
    for psum, prefixes in partials:
        for x, pre in prefixes:
            out.append(run + pre)
        run += psum
    return out


def autocorrelation(
    function_id: str,
    t: int,
    xs,
    *,
    block_len: int = sieve.DEFAULT_BLOCK_LEN,
    workers: int = 1,
    cache_dir=None,
) -> CorrelationSeries:
    """Exact R(t, x) at every checkpoint x, in one ascending pass."""
    if function_id not in (sieve.MOBIUS, sieve.LIOUVILLE):
        raise ValueError(f"unknown function kind: {function_id!r}")
    t = int(t)
    if t == 0:
        raise ValueError(
            "t must be nonzero: the t = 0 sum counts squarefree integers and is out of scope"
        )
    xs = [int(x) for x in xs]
    if not xs:
        raise ValueError("xs must be nonempty")
    if xs[0] < 1:
        raise ValueError("xs entries must be >= 1")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("xs must be strictly increasing")
    if xs[-1] + abs(t) > sieve.RANGE_LIMIT:
        raise ValueError("max(xs) + |t| exceeds the supported limit 2^62")
    if t > 0:
        values = _positive_shift_ladder(function_id, t, xs, block_len, workers, cache_dir)
        checkpoints = tuple(zip(xs, values))
    else:
        shift = -t
        ys = [x - shift for x in xs]
        positive = [y for y in ys if y >= 1]
        if positive:
            got = _positive_shift_ladder(
                function_id, shift, positive, block_len, workers, cache_dir
            )
            lookup = dict(zip(positive, got))
        else:
            lookup = {}
        checkpoints = tuple((x, lookup.get(y, 0)) for x, y in zip(xs, ys))
    return CorrelationSeries(t, function_id, checkpoints)


def normalized_series(series: CorrelationSeries, c: float = 0.0) -> list[tuple[int, float, float]]:
    """(x, |R|/x, |R| * exp(c * sqrt(log x)) / x) per checkpoint."""
    if not series.checkpoints:
        raise ValueError("series has no checkpoints")
    out = []
    for x, r in series.checkpoints:
        ratio = abs(r) / x
        out.append((x, ratio, ratio * math.exp(c * math.sqrt(math.log(x)))))
    return out
