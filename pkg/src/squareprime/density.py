"""Exact SP counts against the asymptotic law (zeta(2) - 1) * n / ln n.

Counting SP numbers <= n is the same as counting pairs (a, p) with a >= 2
and p prime, p <= n / a**2: the map (a, p) -> p * a**2 is a bijection onto
the SP numbers, so

    SP(n) = sum over a = 2 .. floor(sqrt(n / 2)) of pi(floor(n / a**2))

holds exactly.  Summing pi(n / a**2) ~ (n / a**2) / ln n over all a gives the
leading term (zeta(2) - 1) * n / ln n.  Counts here are inclusive: a
checkpoint n counts members <= n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import RangeError
from .sieve import SpTable

ZETA2_MINUS_1 = math.pi * math.pi / 6.0 - 1.0

DENSITY_CSV_HEADER = "n,sp_exact,pi_n,asymptotic,ratio"


@dataclass(frozen=True)
class DensityRecord:
    n: int
    sp_exact: int
    pi_n: int
    asymptotic: float
    ratio: float


def sp_count(table: SpTable, n: int) -> int:
    """Exact number of SP values <= n, from the table's bit ranks."""
    return table.sp_count(n)


def sp_count_via_pi(table: SpTable, n: int) -> int:
    """Exact SP count <= n recomputed through the prime-counting identity.

    Independent of the SP bit array; only pi() lookups are used, so this is
    a cross-check of the sieve's marking pass.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > table.limit:
        raise RangeError(f"n={n} exceeds table limit {table.limit}")
    amax = math.isqrt(n // 2)
    if amax < 2:
        return 0
    a = np.arange(2, amax + 1, dtype=np.int64)
    return int(table.prime_count_many(n // (a * a)).sum())


def sp_asymptotic(n: int) -> float:
    """Leading-order estimate (zeta(2) - 1) * n / ln n; needs n >= 3."""
    if n < 3:
        raise ValueError(f"asymptotic estimate needs n >= 3, got {n}")
    return ZETA2_MINUS_1 * n / math.log(n)


def density_table(table: SpTable, checkpoints: Iterable[int]) -> list[DensityRecord]:
    """One record per checkpoint: exact count, pi, estimate, and their ratio."""
    records = []
    for n in checkpoints:
        if n < 3:
            raise ValueError(f"checkpoint {n} is below 3 (estimate undefined)")
        if n > table.limit:
            raise RangeError(f"checkpoint {n} exceeds table limit {table.limit}")
        exact = table.sp_count(n)
        approx = sp_asymptotic(n)
        records.append(
            DensityRecord(
                n=n,
                sp_exact=exact,
                pi_n=table.prime_count(n),
                asymptotic=approx,
                ratio=exact / approx,
            )
        )
    return records


def density_csv(records: Sequence[DensityRecord]) -> str:
    lines = [DENSITY_CSV_HEADER]
    for r in records:
        lines.append(f"{r.n},{r.sp_exact},{r.pi_n},{r.asymptotic:.15g},{r.ratio:.15g}")
    return "\n".join(lines) + "\n"


def density_json(records: Sequence[DensityRecord]) -> str:
    rows = [
        {
            "n": r.n,
            "sp_exact": r.sp_exact,
            "pi_n": r.pi_n,
            "asymptotic": float(f"{r.asymptotic:.15g}"),
            "ratio": float(f"{r.ratio:.15g}"),
        }
        for r in records
    ]
    return json.dumps(rows, indent=2) + "\n"
