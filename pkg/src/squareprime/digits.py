"""Last-digit statistics of SP numbers and the Hurwitz-zeta constants.

An SP number p * a**2 ends in 1, 3, 7 or 9 exactly when gcd(a, 10) = 1 and
p is in the matching residue class mod 10, and the density contribution of
each admissible a is 1 / a**2.  Summing 1 / a**2 over a in a fixed residue
class d mod 10 is a Hurwitz zeta value: sum over k >= 0 of 1/(10k + d)**2
= zeta(2, d/10) / 100.

Two closed-form constants are provided for the aggregate coprime-digit
density.  The "literal" variant,

    (zeta(2, 1/10) + zeta(2, 9/10) + zeta(2, 3/10) + zeta(2, 7/10) - 4) / 400,

subtracts the a = 1 term as 4 instead of its actual value 100 (the a = 1
term of zeta(2, 1/10) alone is (1/10)**-2 = 100); its implied aggregate
share exceeds 1, so it cannot be a probability.  The "corrected" variant
subtracts the right term:

    (zeta(2, 1/10) - 100 + zeta(2, 9/10) + zeta(2, 3/10) + zeta(2, 7/10)) / 400,

and 4 * corrected equals the sum of 1/a**2 over a >= 3 with gcd(a, 10) = 1,
whose closed form (3/4) * (24/25) * zeta(2) - 1 the tests pin it against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .density import ZETA2_MINUS_1
from .sieve import SpTable

COPRIME_DIGITS = (1, 3, 7, 9)

_EM_TERMS = 512


@dataclass(frozen=True)
class HurwitzValue:
    c: float
    value: float
    abs_error_bound: float


@dataclass(frozen=True)
class DigitDistribution:
    limit: int
    counts: tuple[int, ...]  # index = last digit 0..9
    total: int


@dataclass(frozen=True)
class DigitShare:
    digit: int
    count: int
    share: float
    predicted_share: float | None  # None for digits not coprime to 10


@dataclass(frozen=True)
class DigitReport:
    limit: int
    rows: tuple[DigitShare, ...]
    constant_literal: float
    constant_corrected: float
    aggregate_coprime_share: float
    predicted_aggregate_share: float


def hurwitz_zeta2(c) -> HurwitzValue:
    """zeta(2, c) = sum over k >= 0 of 1/(k + c)**2 for rational c in (0, 2].

    Direct summation of the first 512 terms plus the Euler-Maclaurin tail
    1/t + 1/(2 t**2) + 1/(6 t**3) at t = 512 + c.  The reported bound is the
    first omitted correction 1/(30 t**5) plus a rounding allowance of one
    part in 10**15; for c >= 0.1 it stays below 10**-12.
    """
    if isinstance(c, str):
        c = Fraction(c)
    cf = float(c)
    if not 0.0 < cf <= 2.0:
        raise ValueError(f"c must lie in (0, 2], got {c}")
    terms = [1.0 / ((k + cf) * (k + cf)) for k in range(_EM_TERMS)]
    t = _EM_TERMS + cf
    terms += [1.0 / t, 1.0 / (2.0 * t * t), 1.0 / (6.0 * t * t * t)]
    value = math.fsum(terms)
    bound = 1.0 / (30.0 * t**5) + 1e-15 * value
    return HurwitzValue(c=cf, value=value, abs_error_bound=bound)


def last_digit_constant(variant: str) -> float:
    """Aggregate coprime-digit density constant, "literal" or "corrected"."""
    z = {d: hurwitz_zeta2(Fraction(d, 10)).value for d in COPRIME_DIGITS}
    if variant == "literal":
        return (z[1] + z[9] + z[3] + z[7] - 4.0) / 400.0
    if variant == "corrected":
        return (z[1] - 100.0 + z[9] + z[3] + z[7]) / 400.0
    raise ValueError(f"variant must be 'literal' or 'corrected', got {variant!r}")


def digit_counts(table: SpTable) -> DigitDistribution:
    """How many SP numbers <= limit end in each decimal digit."""
    vals = table.sp_values()
    counts = np.bincount(vals % 10, minlength=10)
    return DigitDistribution(
        limit=table.limit,
        counts=tuple(int(c) for c in counts),
        total=int(counts.sum()),
    )


def digit_report(table: SpTable) -> DigitReport:
    """Empirical last-digit shares next to the predicted coprime-digit share.

    The prediction divides the corrected aggregate constant evenly across
    the four coprime digits and normalises by the leading density
    coefficient zeta(2) - 1; digits 0, 2, 4, 5, 6, 8 carry no prediction.
    """
    dist = digit_counts(table)
    literal = last_digit_constant("literal")
    corrected = last_digit_constant("corrected")
    predicted_each = corrected / ZETA2_MINUS_1
    rows = []
    for d in range(10):
        rows.append(
            DigitShare(
                digit=d,
                count=dist.counts[d],
                share=dist.counts[d] / dist.total if dist.total else 0.0,
                predicted_share=predicted_each if d in COPRIME_DIGITS else None,
            )
        )
    coprime = sum(dist.counts[d] for d in COPRIME_DIGITS)
    return DigitReport(
        limit=table.limit,
        rows=tuple(rows),
        constant_literal=literal,
        constant_corrected=corrected,
        aggregate_coprime_share=coprime / dist.total if dist.total else 0.0,
        predicted_aggregate_share=4.0 * predicted_each,
    )
