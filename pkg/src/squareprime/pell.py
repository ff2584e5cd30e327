"""Unbounded families of SP pairs at a fixed gap, via Pell equations.

A witness for gap g is a pair of SP numbers P1 * a**2 and P2 * b**2 with
distinct primes P1 != P2 and P1 * a**2 - P2 * b**2 = g.  Writing
x = P1 * a and y = b turns the gap condition into

    x**2 - D * y**2 = m,    D = P1 * P2,  m = P1 * g,

and D is never a perfect square (P1, P2 distinct primes), so the unit group
of x**2 - D * y**2 = 1 is infinite.  Composing the base solution
(P1 * a, b) with powers of the fundamental unit walks an infinite orbit of
solutions.  Reducing the equation mod P1 gives x**2 = 0, and P1 prime then
forces P1 | x; writing x = P1 * k, any orbit member with k >= 2 and y >= 2
yields a new SP pair (P2 * y**2, P1 * k**2) at the same gap.  All arithmetic
is exact on Python integers, so generated pairs are verified directly from
the defining equations, not against a sieve table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DistinctPrimeError, RangeError
from .sieve import SpDecomposition, SpTable, is_prime, is_sp

COMPOSITION_CAP = 10**4


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int


@dataclass(frozen=True)
class GapWitness:
    """SP pair p1 * a**2 (larger) and p2 * b**2 (smaller) with gap g."""

    g: int
    p1: int
    a: int
    p2: int
    b: int

    @property
    def larger(self) -> int:
        return self.p1 * self.a * self.a

    @property
    def smaller(self) -> int:
        return self.p2 * self.b * self.b


def _validate_witness(w: GapWitness) -> None:
    if w.g < 1:
        raise ValueError(f"gap must be >= 1, got {w.g}")
    if w.a < 2 or w.b < 2:
        raise ValueError("witness square parts must have a >= 2 and b >= 2")
    if not (is_prime(w.p1) and is_prime(w.p2)):
        raise ValueError(f"witness primes {w.p1}, {w.p2} must both be prime")
    if w.p1 == w.p2:
        raise DistinctPrimeError(
            f"witness needs distinct primes, both elements use {w.p1}"
        )
    if w.larger - w.smaller != w.g:
        raise ValueError(
            f"witness elements {w.larger} and {w.smaller} have gap "
            f"{w.larger - w.smaller}, not {w.g}"
        )


def witness_from_pair(n_small: int, n_large: int) -> GapWitness:
    """Build a gap witness from two SP numbers (decomposed canonically).

    Raises ValueError if either number is not SP or the pair is degenerate,
    and DistinctPrimeError if both decompositions share the same prime.
    """
    if n_small >= n_large:
        raise ValueError(f"need n_small < n_large, got {n_small} >= {n_large}")
    small = is_sp(n_small)
    if small is None:
        raise ValueError(f"{n_small} is not a square-prime number")
    large = is_sp(n_large)
    if large is None:
        raise ValueError(f"{n_large} is not a square-prime number")
    w = GapWitness(
        g=n_large - n_small, p1=large.p, a=large.a, p2=small.p, b=small.a
    )
    _validate_witness(w)
    return w


def find_witness(table: SpTable, g: int) -> GapWitness | None:
    """Smallest distinct-prime witness for gap g within the table, if any.

    Scans SP numbers v ascending and tests v - g for membership; pairs whose
    decompositions share a prime are skipped, and None is reported when no
    admissible pair exists below the table limit (rather than guessing).
    """
    if g < 1:
        raise ValueError(f"gap must be >= 1, got {g}")
    if g >= table.limit:
        raise RangeError(f"gap {g} is not searchable below limit {table.limit}")
    for v in table.sp_values().tolist():
        u = v - g
        if u < 8:
            continue
        if not table.sp_member(u):
            continue
        small = is_sp(u)
        large = is_sp(v)
        assert small is not None and large is not None
        if small.p == large.p:
            continue
        return GapWitness(g=g, p1=large.p, a=large.a, p2=small.p, b=small.a)
    return None


def pell_fundamental_unit(D: int) -> PellSolution:
    """Least positive solution of x**2 - D * y**2 = 1 for nonsquare D >= 2.

    Computed from the continued-fraction convergents of sqrt(D); the first
    convergent satisfying the equation is the fundamental solution, so no
    search bound or minimality sweep is needed.
    """
    if D < 2:
        raise ValueError(f"D must be >= 2, got {D}")
    a0 = math.isqrt(D)
    if a0 * a0 == D:
        raise ValueError(f"D must not be a perfect square, got {D}")
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - D * q * q != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return PellSolution(x=p, y=q)


def pell_compose(s: PellSolution, t: PellSolution, D: int) -> PellSolution:
    """Brahmagupta composition of s (norm m) with a unit t (norm 1).

    The result keeps the norm of s: (s.x**2 - D s.y**2) is preserved because
    norms multiply under composition and t has norm 1.
    """
    out = PellSolution(x=s.x * t.x + D * s.y * t.y, y=s.x * t.y + s.y * t.x)
    m = s.x * s.x - D * s.y * s.y
    assert out.x * out.x - D * out.y * out.y == m, "composition broke the norm"
    return out


def generate_gap_pairs(
    witness: GapWitness, count: int
) -> list[tuple[SpDecomposition, SpDecomposition]]:
    """First ``count`` SP pairs (smaller, larger) on the witness's Pell orbit.

    Starts from the base solution (p1 * a, b), composes with the fundamental
    unit of D = p1 * p2, and keeps solutions with x = p1 * k, k >= 2 and
    y >= 2.  Each kept solution is re-verified from the defining equations
    (exact integer arithmetic), so pairs far beyond any sieve table are still
    certified.  Raises RuntimeError if ``count`` pairs are not found within
    10**4 compositions.
    """
    _validate_witness(witness)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    p1, p2, g = witness.p1, witness.p2, witness.g
    D = p1 * p2
    m = p1 * g
    unit = pell_fundamental_unit(D)
    sol = PellSolution(x=p1 * witness.a, y=witness.b)
    assert sol.x * sol.x - D * sol.y * sol.y == m, "witness does not solve its Pell equation"

    pairs: list[tuple[SpDecomposition, SpDecomposition]] = []
    compositions = 0
    while len(pairs) < count:
        x, y = sol.x, sol.y
        k, rem = divmod(x, p1)
        assert rem == 0, "orbit member lost divisibility by p1"
        if k >= 2 and y >= 2:
            n_large = p1 * k * k
            n_small = p2 * y * y
            assert n_large - n_small == g
            pairs.append(
                (
                    SpDecomposition(n=n_small, p=p2, a=y),
                    SpDecomposition(n=n_large, p=p1, a=k),
                )
            )
        if len(pairs) == count:
            break
        if compositions >= COMPOSITION_CAP:
            raise RuntimeError(
                f"no further admissible pairs for witness {witness} within "
                f"{COMPOSITION_CAP} compositions"
            )
        sol = pell_compose(sol, unit, D)
        compositions += 1
    return pairs
