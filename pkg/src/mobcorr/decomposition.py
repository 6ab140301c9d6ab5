"""The divisor-pair ledger for the shifted sum R(1, x).

pair_expansion evaluates

    sum over 1 <= d1 < x, 1 <= d2 < x + 1 of
        mu(d1) mu(d2) #{n <= x : d1 | n, d2 | n + 1}

with exactly those ranges.  Its value generally differs from the direct
R(1, x) near the boundary; the difference is a reported quantity, never
patched.  corrected_pair_expansion reorganizes proper-divisor sums
(sum_{d | m, d < m} mu(d) = -mu(m) for m >= 2) and equals
sum_{2<=n<=x} mu(n) mu(n+1) exactly; the missing n = 1 term mu(1)mu(2)
is accounted for separately by the report.

r0_term and r1_term split the coprime-restricted expansion into the
density part x * sum mu mu / (d1 d2) and the remainder, so r0 + r1
reproduces the coprime pair sum exactly in rational arithmetic.  The
exact path accumulates integer numerators over the common denominator
D = lcm(1..x); coprime d1, d2 <= x give d1 d2 = lcm(d1, d2) | D, so no
rounding happens before the final Fraction.  Exact-mode cost grows
quadratically in x; near the 1e4 ceiling a report takes minutes.

The unrestricted variant of r0 replaces mu(d1)mu(d2) with a sieved
lookup of mu(d1 d2) and drops the coprimality condition; pairs with
gcd(d1, d2) > 1 then carry a square factor and contribute 0, so the two
sums agree, and the report states the measured gap rather than assuming
it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import correlation, sieve

_STRIPE = 128


class CapabilityError(RuntimeError):
    """Request beyond the exact-arithmetic ceiling."""


def pair_count(d1: int, d2: int, x: int) -> int:
    """#{1 <= n <= x : d1 | n and d2 | n + 1}, exactly.

    Zero when gcd(d1, d2) > 1; otherwise n runs over one residue class
    mod d1 d2 and a floor count finishes the job.
    """
    if d1 < 1 or d2 < 1 or x < 1:
        raise ValueError("d1, d2, x must be >= 1")
    if math.gcd(d1, d2) > 1:
        return 0
    m = d1 * d2
    k = (-pow(d1, -1, d2)) % d2
    r = d1 * k
    if r == 0:
        return x // m
    if r > x:
        return 0
    return (x - r) // m + 1


def _expansion_stripe(args):
    d1_lo, d1_hi, x = args
    mu = sieve.sieve_values(1, x)
    total = 0
    for d1 in range(d1_lo, d1_hi):
        m1 = int(mu[d1 - 1])
        if m1 == 0:
            continue
        for d2 in range(1, x + 1):
            m2 = int(mu[d2 - 1])
            if m2 == 0 or math.gcd(d1, d2) != 1:
                continue
            total += m1 * m2 * pair_count(d1, d2, x)
    return total


def _stripes(lo: int, hi: int) -> list[tuple[int, int]]:
    return [(a, min(a + _STRIPE, hi)) for a in range(lo, hi, _STRIPE)]


def pair_expansion(x: int, *, workers: int = 1) -> int:
    """The double divisor sum with the literal ranges d1 < x, d2 < x + 1.

    Pairs with gcd(d1, d2) > 1 are skipped because their count is zero;
    the skipped terms are exactly zero, not approximated away.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if x == 1:
        return 0
    tasks = [(lo, hi, x) for lo, hi in _stripes(1, x)]
    return sum(sieve._map_ordered(_expansion_stripe, tasks, workers))


def corrected_pair_expansion(x: int) -> int:
    """sum_{2<=n<=x} mu(n) mu(n+1), via proper-divisor sums over pairs."""
    if x < 2:
        raise ValueError("x must be >= 2")
    mu = sieve.sieve_values(1, x + 1)
    s1 = np.zeros(x + 2, dtype=np.int64)
    for d in range(1, (x + 1) // 2 + 1):
        md = int(mu[d - 1])
        if md:
            s1[2 * d :: d] += md
    prods = s1[2 : x + 1] * s1[3 : x + 2]
    return int(prods.sum())


def _exact_stripe(args):
    d1_lo, d1_hi, x = args
    mu = sieve.sieve_values(1, x + 1)
    big_d = math.lcm(*range(1, x + 1))
    num0 = 0
    num1 = 0
    pairsum = 0
    for d1 in range(d1_lo, d1_hi):
        m1 = int(mu[d1 - 1])
        if m1 == 0:
            continue
        for d2 in range(1, x + 1):
            m2 = int(mu[d2 - 1])
            if m2 == 0 or math.gcd(d1, d2) != 1:
                continue
            mm = m1 * m2
            q = big_d // (d1 * d2)
            cnt = pair_count(d1, d2, x)
            num0 += mm * q
            num1 += mm * (cnt * big_d - x * q)
            pairsum += mm * cnt
    return num0, num1, pairsum


def _float_stripe(args):
    d1_lo, d1_hi, x = args
    mu = sieve.sieve_values(1, x + 1)
    rows = []
    for d1 in range(d1_lo, d1_hi):
        m1 = int(mu[d1 - 1])
        if m1 == 0:
            continue
        terms0 = []
        terms1 = []
        for d2 in range(1, x + 1):
            m2 = int(mu[d2 - 1])
            if m2 == 0 or math.gcd(d1, d2) != 1:
                continue
            mm = m1 * m2
            dd = d1 * d2
            cnt = pair_count(d1, d2, x)
            terms0.append(mm / dd)
            terms1.append(mm * (cnt - x / dd))
        rows.append((math.fsum(terms0), math.fsum(terms1)))
    return rows


def _exact_scan(x: int, workers: int):
    tasks = [(lo, hi, x) for lo, hi in _stripes(1, x)]
    parts = sieve._map_ordered(_exact_stripe, tasks, workers)
    num0 = sum(p[0] for p in parts)
    num1 = sum(p[1] for p in parts)
    pairsum = sum(p[2] for p in parts)
    return num0, num1, pairsum, math.lcm(*range(1, x + 1))


def _float_scan(x: int, workers: int):
    tasks = [(lo, hi, x) for lo, hi in _stripes(1, x)]
    parts = sieve._map_ordered(_float_stripe, tasks, workers)
    rows = [row for part in parts for row in part]
    r0 = x * math.fsum(r[0] for r in rows)
    r1 = math.fsum(r[1] for r in rows)
    return r0, r1


def r0_term(x: int, *, mode: str = "exact", workers: int = 1):
    """x * sum over coprime d1 < x, d2 < x + 1 of mu(d1) mu(d2) / (d1 d2)."""
    _check_mode(mode)
    if x < 1:
        raise ValueError("x must be >= 1")
    if x == 1:
        return Fraction(0) if mode == "exact" else 0.0
    if mode == "exact":
        num0, _, _, big_d = _exact_scan(x, workers)
        return Fraction(x * num0, big_d)
    return _float_scan(x, workers)[0]


def r1_term(x: int, *, mode: str = "exact", workers: int = 1):
    """sum over coprime pairs of mu(d1) mu(d2) (pair_count - x / (d1 d2))."""
    _check_mode(mode)
    if x < 1:
        raise ValueError("x must be >= 1")
    if x == 1:
        return Fraction(0) if mode == "exact" else 0.0
    if mode == "exact":
        _, num1, _, big_d = _exact_scan(x, workers)
        return Fraction(num1, big_d)
    return _float_scan(x, workers)[1]


def _check_mode(mode: str) -> None:
    if mode not in ("exact", "float"):
        raise ValueError("mode must be 'exact' or 'float'")


def _unrestricted_r0(x: int) -> Fraction:
    """x * sum over the full rectangle of mu(d1 d2) / (d1 d2), by lookup.

    Only squarefree d1 and d2 can contribute (a square factor of either
    divides the product), and every surviving denominator divides
    lcm(1..x) because mu(d1 d2) != 0 forces the pair coprime.
    """
    mu = sieve.sieve_values(1, x * (x + 1))
    big_d = math.lcm(*range(1, x + 1))
    num = 0
    for d1 in range(1, x):
        if mu[d1 - 1] == 0:
            continue
        for d2 in range(1, x + 1):
            if mu[d2 - 1] == 0:
                continue
            mp = int(mu[d1 * d2 - 1])
            if mp:
                num += mp * (big_d // (d1 * d2))
    return Fraction(x * num, big_d)


@dataclass(frozen=True)
class DecompositionReport:
    x: int
    t: int
    lhs_direct: int
    rhs_pair_expansion: int
    r0: Fraction | float
    r1: Fraction | float
    r0_plus_r1: Fraction | float
    discrepancy_pair_vs_direct: int
    corrected_expansion: int
    arithmetic: str
    r0_unrestricted: Fraction | None
    r0_product_gap: Fraction | None


def decomposition_report(
    x: int,
    *,
    mode: str = "exact",
    exact_ceiling: int = 10**4,
    mu_product_ceiling: int = 2000,
    workers: int = 1,
) -> DecompositionReport:
    """Every side of the chain at one x; discrepancies are measured.

    corrected_expansion adds the n = 1 term mu(1)mu(2) back onto
    corrected_pair_expansion, so it must equal lhs_direct exactly.
    r0_unrestricted is evaluated only for x <= mu_product_ceiling (the
    lookup table holds mu up to x(x+1)); beyond that it is None.
    """
    _check_mode(mode)
    if x < 2:
        raise ValueError("x must be >= 2")
    if mode == "exact" and x > exact_ceiling:
        raise CapabilityError(
            f"x={x} exceeds the exact-arithmetic ceiling {exact_ceiling}; rerun with mode='float'"
        )
    lhs = correlation.autocorrelation(sieve.MOBIUS, 1, [x], workers=workers).checkpoints[0][1]
    rhs = pair_expansion(x, workers=workers)
    if mode == "exact":
        num0, num1, _, big_d = _exact_scan(x, workers)
        r0 = Fraction(x * num0, big_d)
        r1 = Fraction(num1, big_d)
    else:
        r0, r1 = _float_scan(x, workers)
    corrected = corrected_pair_expansion(x) + sieve.mobius_at(1) * sieve.mobius_at(2)
    r0_unrestricted = None
    gap = None
    if x <= mu_product_ceiling:
        r0_unrestricted = _unrestricted_r0(x)
        if mode == "exact":
            gap = r0 - r0_unrestricted
    return DecompositionReport(
        x=x,
        t=1,
        lhs_direct=lhs,
        rhs_pair_expansion=rhs,
        r0=r0,
        r1=r1,
        r0_plus_r1=r0 + r1,
        discrepancy_pair_vs_direct=rhs - lhs,
        corrected_expansion=corrected,
        arithmetic=mode,
        r0_unrestricted=r0_unrestricted,
        r0_product_gap=gap,
    )
