"""Ramanujan sums, the coprimality divisor sum, and geometric root sums.

Every operation evaluates its defining finite sum.  Roots of unity use
a per-term angle 2*pi*((u*n) mod q)/q rather than repeated
multiplication, so rounding error stays at the scale of one cos or sin
evaluation even for q near 1e5.

Boundary conventions, since the defining sums are silent about empty
ranges: c_1(n) = 1 (the single residue u = 1) and
geometric_root_sum(1) = 0 (an empty sum).

The bulk checkers sweep whole parameter ranges.  check_ramanujan_mobius
pairs u with n - u (both coprime to n together), so it sums
2*cos(2*pi*u/n) over u <= (n-1)/2; the imaginary part cancels pairwise
by symmetry and is never materialized.  The scalar ramanujan_sum keeps
the full complex sum, and tests cross-check the two routes.
check_coprime_pairs evaluates the divisor-sum table
S[g] = sum_{d|g} mu(d) once and compares S[gcd(a, n)] against
[gcd(a, n) = 1] for every pair; d | a and d | n is the same divisor set
as d | gcd(a, n), while the scalar coprime_indicator walks the divisors
of a directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sieve

_FLUSH_TARGET = 1 << 22
_CHUNK = 4096


@dataclass(frozen=True)
class RamanujanSumValue:
    q: int
    n: int
    value: complex

    @property
    def rounded(self) -> int:
        return round(self.value.real)


def ramanujan_sum(q: int, n: int) -> RamanujanSumValue:
    """c_q(n) = sum over 1 <= u <= q, gcd(u, q) = 1 of exp(2 pi i u n / q)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    u = np.arange(1, q + 1, dtype=np.int64)
    u = u[np.gcd(u, q) == 1]
    angles = (2.0 * math.pi / q) * ((u * n) % q)
    value = complex(math.fsum(np.cos(angles).tolist()), math.fsum(np.sin(angles).tolist()))
    return RamanujanSumValue(q, n, value)


def divisors(a: int) -> list[int]:
    """Divisors of a, ascending."""
    if a < 1:
        raise ValueError("a must be >= 1")
    small, large = [], []
    d = 1
    while d * d <= a:
        if a % d == 0:
            small.append(d)
            if d * d != a:
                large.append(a // d)
        d += 1
    return small + large[::-1]


def coprime_indicator(a: int, n: int) -> int:
    """sum of mu(d) over d dividing both a and n; 1 iff gcd(a, n) = 1."""
    if a < 1 or n < 1:
        raise ValueError("a and n must be >= 1")
    return sum(sieve.mobius_at(d) for d in divisors(a) if n % d == 0)


def geometric_root_sum(k: int) -> complex:
    """sum over 1 <= r < k of exp(2 pi i r / k); -1 for k >= 2, 0 for k = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return 0j
    angles = (2.0 * math.pi / k) * np.arange(1, k, dtype=np.float64)
    return complex(math.fsum(np.cos(angles).tolist()), math.fsum(np.sin(angles).tolist()))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    limit: int
    checked: int
    max_deviation: float
    first_failure: str | None


@dataclass(frozen=True)
class IdentityReport:
    limit: int
    checks: tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.first_failure is None for c in self.checks)


def _spf_table(limit: int) -> np.ndarray:
    """Smallest prime factor per index; spf[1] = 1."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    zero = np.flatnonzero(spf == 0)
    spf[zero] = zero
    return spf


def _distinct_primes(n: int, spf: np.ndarray) -> list[int]:
    ps = []
    while n > 1:
        p = int(spf[n])
        ps.append(p)
        while n % p == 0:
            n //= p
    return ps


def _ramanujan_chunk(args):
    lo, hi = args
    mu = sieve.sieve_values(lo, hi - lo)
    spf = _spf_table(hi - 1)
    max_dev = 0.0
    first = None
    pending: list[np.ndarray] = []
    pending_n: list[int] = []
    pending_len = 0

    def flush():
        nonlocal max_dev, first, pending, pending_n, pending_len
        if not pending_n:
            return
        lens = np.array([a.size for a in pending], dtype=np.int64)
        offs = np.zeros(lens.size, dtype=np.int64)
        np.cumsum(lens[:-1], out=offs[1:])
        cos = np.cos(np.concatenate(pending))
        sums = 2.0 * np.add.reduceat(cos, offs)
        ns = np.array(pending_n, dtype=np.int64)
        expected = mu[ns - lo].astype(np.float64)
        dev = np.abs(sums - expected)
        d = float(dev.max())
        if d > max_dev:
            max_dev = d
        bad = np.rint(sums).astype(np.int64) != mu[ns - lo]
        if bad.any() and first is None:
            first = int(ns[np.flatnonzero(bad)[0]])
        pending, pending_n, pending_len = [], [], 0

    for n in range(lo, hi):
        if n == 1 or n == 2:
            c = 1.0 if n == 1 else math.cos(math.pi)
            d = abs(c - float(mu[n - lo]))
            if d > max_dev:
                max_dev = d
            if round(c) != int(mu[n - lo]) and first is None:
                first = n
            continue
        half = (n - 1) // 2
        mask = np.ones(half, dtype=bool)
        for p in _distinct_primes(n, spf):
            mask[p - 1 :: p] = False
        u = np.flatnonzero(mask).astype(np.float64) + 1.0
        pending.append(u * (2.0 * math.pi / n))
        pending_n.append(n)
        pending_len += u.size
        if pending_len >= _FLUSH_TARGET:
            flush()
    flush()
    return max_dev, first


def check_ramanujan_mobius(limit: int, *, workers: int = 1) -> IdentityCheck:
    """c_n(1) against sieved mu(n) for every n <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    bounds = list(range(1, limit + 1, _CHUNK))
    tasks = [(lo, min(lo + _CHUNK, limit + 1)) for lo in bounds]
    parts = sieve._map_ordered(_ramanujan_chunk, tasks, workers)
    max_dev = max(p[0] for p in parts)
    firsts = [p[1] for p in parts if p[1] is not None]
    first = f"n={min(firsts)}" if firsts else None
    return IdentityCheck("ramanujan_mobius", limit, limit, max_dev, first)


def _divisor_mu_table(limit: int) -> np.ndarray:
    """S[g] = sum of mu(d) over d | g, for all g <= limit."""
    mu = sieve.sieve_values(1, limit)
    s = np.zeros(limit + 1, dtype=np.int32)
    for d in range(1, limit + 1):
        md = int(mu[d - 1])
        if md:
            s[d::d] += md
    return s


def _coprime_chunk(args):
    a_lo, a_hi, limit = args
    s = _divisor_mu_table(limit)
    b = np.arange(1, limit + 1, dtype=np.int32)
    max_dev = 0
    first = None
    for row_lo in range(a_lo, a_hi, 256):
        row_hi = min(row_lo + 256, a_hi)
        a = np.arange(row_lo, row_hi, dtype=np.int32)
        g = np.gcd.outer(a, b)
        dev = s[g] - (g == 1)
        d = int(np.abs(dev).max())
        if d > max_dev:
            max_dev = d
        if d and first is None:
            i, j = np.argwhere(dev != 0)[0]
            first = (int(a[i]), int(b[j]))
    return max_dev, first


def check_coprime_pairs(limit: int, *, workers: int = 1) -> IdentityCheck:
    """The divisor sum against [gcd = 1] for every pair a, n <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    bounds = list(range(1, limit + 1, _CHUNK))
    tasks = [(lo, min(lo + _CHUNK, limit + 1), limit) for lo in bounds]
    parts = sieve._map_ordered(_coprime_chunk, tasks, workers)
    max_dev = max(p[0] for p in parts)
    firsts = [p[1] for p in parts if p[1] is not None]
    first = None
    if firsts:
        a, n = min(firsts)
        first = f"a={a},n={n}"
    return IdentityCheck("coprime_indicator", limit, limit * limit, float(max_dev), first)


def _geometric_chunk(args):
    lo, hi = args
    max_dev = 0.0
    first = None
    pending: list[np.ndarray] = []
    pending_k: list[int] = []
    pending_len = 0

    def flush():
        nonlocal max_dev, first, pending, pending_k, pending_len
        if not pending_k:
            return
        lens = np.array([a.size for a in pending], dtype=np.int64)
        offs = np.zeros(lens.size, dtype=np.int64)
        np.cumsum(lens[:-1], out=offs[1:])
        cat = np.concatenate(pending)
        real_sums = np.add.reduceat(np.cos(cat), offs)
        imag_sums = np.add.reduceat(np.sin(cat), offs)
        dev = np.hypot(real_sums + 1.0, imag_sums)
        d = float(dev.max())
        if d > max_dev:
            max_dev = d
        bad = dev > 1e-9
        if bad.any() and first is None:
            first = int(np.array(pending_k)[np.flatnonzero(bad)[0]])
        pending, pending_k, pending_len = [], [], 0

    for k in range(lo, hi):
        if k == 1:
            continue
        pending.append((2.0 * math.pi / k) * np.arange(1.0, float(k)))
        pending_k.append(k)
        pending_len += k - 1
        if pending_len >= _FLUSH_TARGET:
            flush()
    flush()
    return max_dev, first


def check_geometric_root_sums(limit: int, *, workers: int = 1) -> IdentityCheck:
    """sum of the k-th roots of unity above 1 equals -1, for 2 <= k <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    bounds = list(range(1, limit + 1, _CHUNK))
    tasks = [(lo, min(lo + _CHUNK, limit + 1)) for lo in bounds]
    parts = sieve._map_ordered(_geometric_chunk, tasks, workers)
    max_dev = max(p[0] for p in parts)
    firsts = [p[1] for p in parts if p[1] is not None]
    first = f"k={min(firsts)}" if firsts else None
    return IdentityCheck("geometric_root_sum", limit, limit, max_dev, first)


def verify_identities(limit: int, *, workers: int = 1) -> IdentityReport:
    """All three identity sweeps over parameters up to limit.

    The pairwise coprimality sweep is quadratic in limit; budget roughly
    a few seconds at limit 1e4.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    checks = (
        check_ramanujan_mobius(limit, workers=workers),
        check_coprime_pairs(limit, workers=workers),
        check_geometric_root_sums(limit, workers=workers),
    )
    return IdentityReport(limit, checks)
