"""Arithmetic-progression counts and the large-sieve functional.

Counts are exact: #{n <= x : n ≡ a (mod q)} = floor((x - a)/q) + 1 for
1 <= a <= min(q, x), else 0.  The worst deviation from x/q over the
classes follows from the same floor identity: writing rem = x mod q,
classes a <= rem exceed x/q by (q - rem)/q and the rest fall short by
rem/q, so the maximum is max(rem, q - rem)/q (0 when rem = 0).
ap_error_profile measures the per-class errors directly instead of
trusting that formula, and tests compare the two routes.

The large-sieve functional

    V(Q, x) = sum_{q<=Q} q sum_{a=1}^{q} |S_a - S/q|^2,
    S_a = sum_{n<=x, n≡a (q)} a_n,  S = sum_{n<=x} a_n

is evaluated with exact integer class sums; q S_a - S is squared in
float64 (for the sequences here each square and each per-q sum stays
far below 2^53, hence exact), and per-q values merge through math.fsum
in ascending q.  The reported bound is Q(10Q + 2 pi x) sum a_n^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sieve

ONES = "ones"
MOBIUS = sieve.MOBIUS
CUSTOM = "custom"


@dataclass(frozen=True)
class APCountError:
    x: int
    q: int
    a: int
    count: int
    expected: float
    error: float
    max_error_over_a: float


def ap_count(x: int, q: int, a: int) -> APCountError:
    """Exact progression count with its deviation from x/q."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if q < 1:
        raise ValueError("q must be >= 1")
    if not 1 <= a <= q:
        raise ValueError("a must lie in [1, q]")
    count = 0 if a > x else (x - a) // q + 1
    rem = x % q
    worst = 0.0 if rem == 0 else max(rem, q - rem) / q
    return APCountError(
        x=x,
        q=q,
        a=a,
        count=count,
        expected=x / q,
        error=(count * q - x) / q,
        max_error_over_a=worst,
    )


def _profile_chunk(args):
    x, q_lo, q_hi = args
    out = []
    for q in range(q_lo, q_hi):
        a = np.arange(1, q + 1, dtype=np.int64)
        counts = (x - a) // q + 1
        dev = np.abs(counts * q - x)
        out.append((q, float(int(dev.max())) / q))
    return out


def ap_error_profile(x: int, qmax: int, *, workers: int = 1) -> list[tuple[int, float]]:
    """(q, max over a of |count - x/q|) for every q <= qmax, measured."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if not 1 <= qmax <= x:
        raise ValueError("qmax must lie in [1, x]")
    bounds = list(range(1, qmax + 1, 1024))
    tasks = [(x, lo, min(lo + 1024, qmax + 1)) for lo in bounds]
    parts = sieve._map_ordered(_profile_chunk, tasks, workers)
    return [row for part in parts for row in part]


def check_ap_partition(x: int, *, workers: int = 1) -> int | None:
    """First q <= x whose class counts fail to sum to x, or None."""
    if x < 1:
        raise ValueError("x must be >= 1")

    tasks = [(x, lo, min(lo + 1024, x + 1)) for lo in range(1, x + 1, 1024)]
    parts = sieve._map_ordered(_partition_chunk, tasks, workers)
    for bad in parts:
        if bad is not None:
            return bad
    return None


def _partition_chunk(args):
    x, q_lo, q_hi = args
    for q in range(q_lo, q_hi):
        a = np.arange(1, q + 1, dtype=np.int64)
        total = int(((x - a) // q + 1).sum())
        if total != x:
            return q
    return None


@dataclass(frozen=True)
class LargeSieveReport:
    Q: int
    x: int
    lhs: float
    rhs: float
    ratio: float
    sequence_id: str
    q_exceeds_x: bool


def _sequence_values(x: int, sequence, cache_dir):
    if isinstance(sequence, str):
        if sequence == ONES:
            return np.ones(x, dtype=np.int8), ONES
        if sequence == MOBIUS:
            return sieve.load_values(1, x, sieve.MOBIUS, cache_dir), MOBIUS
        raise ValueError(f"unknown sequence: {sequence!r}")
    values = np.asarray(sequence)
    if values.size != x:
        raise ValueError("custom sequence must provide exactly x values")
    if not np.issubdtype(values.dtype, np.integer):
        raise ValueError("custom sequence must be integer valued")
    return values.astype(np.int64), CUSTOM


def _sieve_chunk(args):
    x, q_lo, q_hi, sequence, cache_dir = args
    values, _ = _sequence_values(x, sequence, cache_dir)
    small = np.isin(values, (-1, 0, 1)).all()
    total = int(values.sum(dtype=np.int64))
    residues = np.arange(1, x + 1, dtype=np.int64)
    out = []
    for q in range(q_lo, q_hi):
        res = residues % q
        if small:
            class_sums = np.bincount(res[values == 1], minlength=q).astype(np.int64)
            class_sums -= np.bincount(res[values == -1], minlength=q)
        else:
            class_sums = np.zeros(q, dtype=np.int64)
            np.add.at(class_sums, res, values)
        dev = (q * class_sums - total).astype(np.float64)
        out.append(float(np.dot(dev, dev)) / q)
    return out


def large_sieve_functional(
    x: int,
    Q: int,
    sequence="ones",
    *,
    workers: int = 1,
    cache_dir=None,
) -> LargeSieveReport:
    """Both sides of the progression-variance inequality at (Q, x).

    Q > x is accepted but flagged: the stated bound is only claimed for
    Q <= x.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if Q < 1:
        raise ValueError("Q must be >= 1")
    values, sequence_id = _sequence_values(x, sequence, cache_dir)
    token = sequence if isinstance(sequence, str) else values
    tasks = [(x, lo, min(lo + 1024, Q + 1), token, cache_dir) for lo in range(1, Q + 1, 1024)]
    parts = sieve._map_ordered(_sieve_chunk, tasks, workers)
    lhs = math.fsum(v for part in parts for v in part)
    sumsq = int((values.astype(np.int64) ** 2).sum(dtype=np.int64))
    rhs = Q * (10.0 * Q + 2.0 * math.pi * x) * sumsq
    ratio = lhs / rhs if rhs > 0 else math.nan
    return LargeSieveReport(
        Q=Q,
        x=x,
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        sequence_id=sequence_id,
        q_exceeds_x=Q > x,
    )
