import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mobcorr import progressions, sieve


def test_ap_count_examples():
    c = progressions.ap_count(10, 3, 1)
    assert c.count == 4
    assert c.expected == pytest.approx(10 / 3)
    assert c.error == pytest.approx(2 / 3)
    assert c.max_error_over_a == pytest.approx(2 / 3)

    c = progressions.ap_count(10, 1, 1)
    assert c.count == 10
    assert c.error == 0.0
    assert c.max_error_over_a == 0.0


def test_ap_count_class_beyond_x():
    c = progressions.ap_count(5, 7, 6)
    assert c.count == 0
    assert c.error == pytest.approx(-5 / 7)


def test_ap_count_validation():
    with pytest.raises(ValueError):
        progressions.ap_count(0, 1, 1)
    with pytest.raises(ValueError):
        progressions.ap_count(10, 0, 1)
    with pytest.raises(ValueError):
        progressions.ap_count(10, 3, 0)
    with pytest.raises(ValueError):
        progressions.ap_count(10, 3, 4)


def test_ap_counts_partition_and_error_bound():
    for x in (10, 100, 997):
        for q in (1, 2, 3, 7, 10):
            counts = [progressions.ap_count(x, q, a) for a in range(1, q + 1)]
            assert sum(c.count for c in counts) == x
            for c in counts:
                assert abs(c.error) < 1.0


def test_ap_count_matches_direct_enumeration():
    for q in (1, 2, 5, 9):
        for a in range(1, q + 1):
            direct = sum(1 for n in range(1, 101) if n % q == a % q)
            assert progressions.ap_count(100, q, a).count == direct


def test_ap_error_profile_trivial():
    assert progressions.ap_error_profile(10, 1) == [(1, 0.0)]


def test_ap_error_profile_matches_per_class_maximum():
    x = 100
    profile = progressions.ap_error_profile(x, 20)
    assert [q for q, _ in profile] == list(range(1, 21))
    for q, worst in profile:
        direct = max(abs(progressions.ap_count(x, q, a).error) for a in range(1, q + 1))
        assert worst == pytest.approx(direct, abs=1e-12), q


def test_ap_error_profile_closed_form():
    x = 997
    for q, worst in progressions.ap_error_profile(x, 50):
        rem = x % q
        expected = 0.0 if rem == 0 else max(rem, q - rem) / q
        assert worst == pytest.approx(expected, abs=1e-12)


def test_ap_error_profile_validation():
    with pytest.raises(ValueError):
        progressions.ap_error_profile(10, 0)
    with pytest.raises(ValueError):
        progressions.ap_error_profile(10, 11)


def test_check_ap_partition():
    for x in (1, 10, 1000):
        assert progressions.check_ap_partition(x) is None


def test_large_sieve_single_modulus_is_zero():
    rep = progressions.large_sieve_functional(10, 1)
    assert rep.lhs == 0.0
    assert rep.ratio == 0.0


def test_large_sieve_ones_bound():
    rep = progressions.large_sieve_functional(10, 10)
    assert rep.sequence_id == progressions.ONES
    assert rep.lhs > 0
    assert rep.ratio <= 1.0
    assert not rep.q_exceeds_x


def test_large_sieve_mobius_bound():
    rep = progressions.large_sieve_functional(100, 100, progressions.MOBIUS)
    assert rep.sequence_id == progressions.MOBIUS
    assert rep.ratio <= 1.0


def test_large_sieve_rhs_formula():
    rep = progressions.large_sieve_functional(50, 7)
    sumsq = 50  # ones sequence
    assert rep.rhs == pytest.approx(7 * (10 * 7 + 2 * math.pi * 50) * sumsq)


def test_large_sieve_lhs_direct_cross_check():
    x, Q = 60, 12
    rep = progressions.large_sieve_functional(x, Q)
    direct = 0.0
    for q in range(1, Q + 1):
        total = x
        for a in range(q):
            class_sum = sum(1 for n in range(1, x + 1) if n % q == a)
            direct += q * (class_sum - total / q) ** 2
    assert rep.lhs == pytest.approx(direct, rel=1e-12)


def test_large_sieve_mobius_lhs_cross_check():
    x, Q = 80, 9
    mu = [sieve.mobius_at(n) for n in range(1, x + 1)]
    rep = progressions.large_sieve_functional(x, Q, progressions.MOBIUS)
    direct = 0.0
    for q in range(1, Q + 1):
        total = sum(mu)
        for a in range(q):
            class_sum = sum(v for n, v in enumerate(mu, start=1) if n % q == a)
            direct += q * (class_sum - total / q) ** 2
    assert rep.lhs == pytest.approx(direct, rel=1e-12)


def test_large_sieve_q_beyond_x_flagged():
    rep = progressions.large_sieve_functional(10, 20)
    assert rep.q_exceeds_x


def test_large_sieve_custom_sequence():
    values = np.array([2, -1, 3, 0, 1], dtype=np.int64)
    rep = progressions.large_sieve_functional(5, 3, values)
    assert rep.sequence_id == progressions.CUSTOM
    total = 5
    direct = 0.0
    seq = [2, -1, 3, 0, 1]
    s = sum(seq)
    for q in range(1, 4):
        for a in range(q):
            class_sum = sum(v for n, v in enumerate(seq, start=1) if n % q == a)
            direct += q * (class_sum - s / q) ** 2
    assert rep.lhs == pytest.approx(direct, rel=1e-12)


def test_large_sieve_validation():
    with pytest.raises(ValueError):
        progressions.large_sieve_functional(0, 1)
    with pytest.raises(ValueError):
        progressions.large_sieve_functional(10, 0)
    with pytest.raises(ValueError):
        progressions.large_sieve_functional(10, 2, np.array([1, 2]))
    with pytest.raises(ValueError):
        progressions.large_sieve_functional(10, 2, "unknown")


def test_parallel_matches_serial():
    a = progressions.ap_error_profile(5000, 3000, workers=1)
    b = progressions.ap_error_profile(5000, 3000, workers=4)
    assert a == b
    ra = progressions.large_sieve_functional(2000, 2000, workers=1)
    rb = progressions.large_sieve_functional(2000, 2000, workers=4)
    assert ra == rb


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=1000))
def test_ap_count_floor_property(x, q):
    for a in (1, min(q, x % q + 1), q):
        c = progressions.ap_count(x, q, a)
        direct = len(range(a, x + 1, q)) if a <= x else 0
        assert c.count == direct
