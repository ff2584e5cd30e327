import math
import random

import numpy as np
import pytest

from golden import FIRST_100
from squareprime import (
    RangeError,
    ResourceLimitError,
    SpTable,
    build_table,
    is_prime,
    is_sp,
    largest_square_divisor,
)


def test_first_hundred():
    table = build_table(549)
    assert table.sp_values().tolist() == FIRST_100
    assert build_table(30, 16).sp_values().tolist() == [8, 12, 18, 20, 27, 28]
    assert build_table(2).sp_values().tolist() == []


def test_decomposition_examples():
    assert (is_sp(27).p, is_sp(27).a) == (3, 3)
    assert (is_sp(28).p, is_sp(28).a) == (7, 2)
    assert (is_sp(637).p, is_sp(637).a) == (13, 7)
    assert (is_sp(332667).p, is_sp(332667).a) == (3, 333)
    assert (is_sp(332668).p, is_sp(332668).a) == (7, 218)
    for non_member in (1, 2, 4, 6, 7, 16, 36, 64, 100, 210):
        assert is_sp(non_member) is None


def test_largest_square_divisor():
    assert largest_square_divisor(1) == 1
    assert largest_square_divisor(72) == 6
    assert largest_square_divisor(32) == 4
    assert largest_square_divisor(549) == 3
    for n in range(1, 2000):
        s = largest_square_divisor(n)
        assert n % (s * s) == 0
        # nothing bigger divides as a square
        for t in range(s + 1, math.isqrt(n) + 1):
            assert n % (t * t) != 0


def _simple_primes(limit):
    mask = [True] * (limit + 1)
    mask[0] = mask[1] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            for q in range(p * p, limit + 1, p):
                mask[q] = False
    return mask


def test_membership_against_direct_marking():
    # independent oracle: mark p * a**2 with a plain list-based sieve
    limit = 10**5
    prime = _simple_primes(limit)
    member = [False] * (limit + 1)
    for a in range(2, math.isqrt(limit // 2) + 1):
        a2 = a * a
        for p in range(2, limit // a2 + 1):
            if prime[p]:
                member[p * a2] = True
    table = build_table(limit)
    got = np.zeros(limit + 1, dtype=bool)
    got[table.sp_values()] = True
    assert np.array_equal(got, np.array(member))


def test_decomposition_unique():
    # at most one (a, p) pair with p prime can exist for any n
    limit = 2 * 10**4
    prime = _simple_primes(limit)
    for n in range(1, limit + 1):
        pairs = [
            (a, n // (a * a))
            for a in range(2, math.isqrt(n) + 1)
            if n % (a * a) == 0 and prime[n // (a * a)]
        ]
        assert len(pairs) <= 1, (n, pairs)
        dec = is_sp(n)
        if pairs:
            assert dec is not None and (dec.a, dec.p) == pairs[0]
        else:
            assert dec is None


def test_table_matches_standalone(table6):
    rng = random.Random(20260814)
    sample = list(range(1, 5001)) + [rng.randrange(1, 10**6 + 1) for _ in range(2000)]
    for n in sample:
        assert table6.sp_member(n) == (is_sp(n) is not None), n


def test_products_never_sp(table6):
    vals = table6.sp_values()
    small = vals[vals <= 2000].tolist()
    for i, u in enumerate(small):
        for v in small[i:]:
            assert is_sp(u * v) is None, (u, v)


def test_counts_frozen(table6):
    assert table6.sp_count(549) == 100
    assert table6.sp_count(1000) == 169
    assert table6.sp_count(10**4) == 1230
    assert table6.sp_count(10**5) == 9036
    assert table6.sp_count(10**6) == 69179
    assert table6.prime_count(100) == 25
    assert table6.prime_count(10**6) == 78498
    assert table6.prime_count(1) == 0
    assert table6.sp_count(7) == 0 and table6.sp_count(8) == 1


def test_prime_count_many(table6):
    ns = np.array([1, 2, 100, 549, 10**6], dtype=np.int64)
    assert table6.prime_count_many(ns).tolist() == [0, 1, 25, 101, 78498]
    with pytest.raises(RangeError):
        table6.prime_count_many(np.array([10**6 + 1]))


def test_sp_list_ranges(table6):
    got = [(d.n, d.p, d.a) for d in table6.sp_list(90, 100)]
    assert got == [(92, 23, 2), (98, 2, 7), (99, 11, 3)]
    assert [d.n for d in table6.sp_list(500, 512)] == [500, 507, 508, 512]
    assert table6.sp_list(550, 555) == []
    for d in table6.sp_list(1, 549):
        assert d.p * d.a * d.a == d.n
        assert is_prime(d.p) and d.a >= 2


def test_segment_size_invariance():
    ref = build_table(10**4)
    for size in (2, 7, 64, 4096, 10**6):
        other = build_table(10**4, segment_size=size)
        assert other.prime_bits.tobytes() == ref.prime_bits.tobytes(), size
        assert other.sp_bits.tobytes() == ref.sp_bits.tobytes(), size


def test_dump_load_roundtrip(tmp_path):
    table = build_table(54321)
    path = tmp_path / "t.spt"
    table.dump(path)
    loaded = SpTable.load(path)
    assert loaded.limit == 54321
    assert loaded.sp_count(54321) == table.sp_count(54321)
    path2 = tmp_path / "t2.spt"
    loaded.dump(path2)
    assert path.read_bytes() == path2.read_bytes()

    bad = tmp_path / "bad.spt"
    bad.write_bytes(b"NOPE" + path.read_bytes()[4:])
    with pytest.raises(ValueError):
        SpTable.load(bad)
    trunc = tmp_path / "trunc.spt"
    trunc.write_bytes(path.read_bytes()[:-5])
    with pytest.raises(ValueError):
        SpTable.load(trunc)


def test_is_prime():
    small = [p for p in range(50) if is_prime(p)]
    assert small == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert is_prime(561) is False  # Carmichael
    assert is_prime(2**61 - 1) is True
    assert is_prime(2**67 - 1) is False


def test_argument_errors(table6):
    with pytest.raises(ValueError):
        build_table(1)
    with pytest.raises(ValueError):
        build_table(100, segment_size=1)
    with pytest.raises(ValueError):
        is_sp(0)
    with pytest.raises(ValueError):
        is_sp(10**12 + 1)
    with pytest.raises(ValueError):
        largest_square_divisor(0)
    with pytest.raises(ValueError):
        table6.prime_count(0)
    with pytest.raises(RangeError):
        table6.prime_count(10**6 + 1)
    with pytest.raises(RangeError):
        table6.sp_member(10**6 + 1)
    with pytest.raises(ValueError):
        table6.sp_list(0, 10)
    with pytest.raises(RangeError):
        table6.sp_list(10, 10**7)


def test_memory_cap(monkeypatch):
    with pytest.raises(ResourceLimitError) as err:
        build_table(10**8, memory_cap_mb=1)
    assert "MB" in str(err.value) and "SP_MEMORY_CAP_MB" in str(err.value)
    monkeypatch.setenv("SP_MEMORY_CAP_MB", "1")
    with pytest.raises(ResourceLimitError):
        build_table(10**8)
    # a 10**4 build's working set is a few tens of KB, inside even this cap
    assert build_table(10**4).sp_count(10**4) == 1230
