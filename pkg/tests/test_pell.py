import math
import random

import pytest

from squareprime import (
    DistinctPrimeError,
    GapWitness,
    PellSolution,
    find_witness,
    generate_gap_pairs,
    is_prime,
    is_sp,
    pell_compose,
    pell_fundamental_unit,
    witness_from_pair,
)

NONSQUARE_D = [d for d in range(2, 201) if math.isqrt(d) ** 2 != d]


def test_fundamental_units_frozen():
    known = {
        2: (3, 2),
        3: (2, 1),
        5: (9, 4),
        6: (5, 2),
        21: (55, 12),
        61: (1766319049, 226153980),
    }
    for D, (x, y) in known.items():
        u = pell_fundamental_unit(D)
        assert (u.x, u.y) == (x, y), D


def test_unit_identity_all_d():
    for D in NONSQUARE_D:
        u = pell_fundamental_unit(D)
        assert u.x >= 2 and u.y >= 1
        assert u.x * u.x - D * u.y * u.y == 1, D


def test_unit_minimality_brute_force():
    # exhaustive up to y = 10**6; the handful of D whose fundamental y is
    # larger (61, 109, 157, 181, ...) are covered by the identity test and
    # by the convergent construction itself
    bound = 10**6
    for D in NONSQUARE_D:
        u = pell_fundamental_unit(D)
        if u.y > bound:
            continue
        for y in range(1, u.y):
            t = D * y * y + 1
            r = math.isqrt(t)
            assert r * r != t, (D, y)


def test_unit_rejects_bad_d():
    for D in (-4, 0, 1, 4, 9, 16, 121, 144):
        with pytest.raises(ValueError):
            pell_fundamental_unit(D)


def test_compose_preserves_norm():
    rng = random.Random(20260814)
    units = {D: pell_fundamental_unit(D) for D in NONSQUARE_D}
    for _ in range(10**4):
        D = rng.choice(NONSQUARE_D)
        s = PellSolution(rng.randrange(1, 10**6), rng.randrange(1, 10**6))
        m = s.x * s.x - D * s.y * s.y
        out = pell_compose(s, units[D], D)
        assert out.x * out.x - D * out.y * out.y == m
    # a unit power is still a unit
    t = units[21]
    t2 = pell_compose(t, t, 21)
    t3 = pell_compose(t2, t, 21)
    assert t3.x * t3.x - 21 * t3.y * t3.y == 1


def test_witness_from_pair():
    w = witness_from_pair(27, 28)
    assert (w.g, w.p1, w.a, w.p2, w.b) == (1, 7, 2, 3, 3)
    assert w.larger == 28 and w.smaller == 27
    w = witness_from_pair(8, 12)
    assert (w.g, w.p1, w.a, w.p2, w.b) == (4, 3, 2, 2, 2)
    with pytest.raises(DistinctPrimeError):
        witness_from_pair(27, 75)  # both use the prime 3
    with pytest.raises(ValueError):
        witness_from_pair(9, 27)  # 9 is not SP
    with pytest.raises(ValueError):
        witness_from_pair(28, 27)


def test_find_witness(table6):
    frozen = {
        1: (7, 2, 3, 3),
        2: (5, 2, 2, 3),
        3: (3, 4, 5, 3),
        4: (3, 2, 2, 2),
        5: (2, 4, 3, 3),
        50: (17, 2, 2, 3),
    }
    for g, (p1, a, p2, b) in frozen.items():
        w = find_witness(table6, g)
        assert (w.p1, w.a, w.p2, w.b) == (p1, a, p2, b), g
        assert w.larger - w.smaller == g
    with pytest.raises(ValueError):
        find_witness(table6, 0)


def test_generate_pairs_from_twin_witness():
    w = witness_from_pair(27, 28)
    pairs = generate_gap_pairs(w, 3)
    assert [(s.n, lg.n) for s, lg in pairs] == [
        (27, 28),
        (332667, 332668),
        (4024611387, 4024611388),
    ]
    s, lg = pairs[1]
    assert (lg.p, lg.a, s.p, s.a) == (7, 218, 3, 333)
    assert 7 * 218**2 - 3 * 333**2 == 1
    # orbit values certify themselves far beyond any sieve
    for s, lg in generate_gap_pairs(w, 12):
        assert lg.n - s.n == 1
        assert is_prime(s.p) and is_prime(lg.p)
        assert s.a >= 2 and lg.a >= 2
        assert s.p * s.a**2 == s.n and lg.p * lg.a**2 == lg.n


def test_generate_pairs_strictly_grow():
    w = witness_from_pair(18, 20)
    pairs = generate_gap_pairs(w, 8)
    ns = [s.n for s, _ in pairs]
    assert ns == sorted(set(ns))
    for s, lg in pairs:
        assert lg.n - s.n == 2


def test_all_gaps_to_50(table6):
    for g in range(1, 51):
        w = find_witness(table6, g)
        assert w is not None, g
        pairs = generate_gap_pairs(w, 5)
        assert len(pairs) == 5
        for s, lg in pairs:
            assert lg.n - s.n == g
            assert s.p * s.a**2 == s.n and lg.p * lg.a**2 == lg.n
            if s.n <= 10**12:  # the sieve-free decomposer can confirm
                assert is_sp(s.n) is not None


def test_generate_errors():
    w = witness_from_pair(27, 28)
    with pytest.raises(ValueError):
        generate_gap_pairs(w, 0)
    with pytest.raises(ValueError):
        generate_gap_pairs(GapWitness(g=1, p1=4, a=2, p2=3, b=3), 1)
    with pytest.raises(DistinctPrimeError):
        generate_gap_pairs(GapWitness(g=15, p1=3, a=3, p2=3, b=2), 1)
    with pytest.raises(ValueError):
        # elements 28 and 27 have gap 1, not 5
        generate_gap_pairs(GapWitness(g=5, p1=7, a=2, p2=3, b=3), 1)


def test_composition_cap_reported(monkeypatch):
    import squareprime.pell as pell_mod

    assert pell_mod.COMPOSITION_CAP == 10**4
    monkeypatch.setattr(pell_mod, "COMPOSITION_CAP", 40)
    w = witness_from_pair(27, 28)
    with pytest.raises(RuntimeError) as err:
        generate_gap_pairs(w, 60)
    assert "compositions" in str(err.value)
