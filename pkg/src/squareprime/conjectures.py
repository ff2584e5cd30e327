"""Range verification of additive SP conjectures, plus gap statistics.

Three scans are supported, all exact and reproducible bit for bit:

* every integer in a range is a sum of two SP numbers (exceptions listed);
* every SP number above a threshold is such a sum;
* every interval (k**2, (k+1)**2) contains an SP number.

The two-SP-sum scans first overlay the membership array shifted by the few
hundred smallest SP values (a fast under-approximation of reachability),
then settle each surviving candidate by the exact smallest-addend search.
Results do not depend on chunking or worker count: chunk boundaries are
fixed, each chunk is resolved independently, and outputs are merged in
range order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import RangeError
from .sieve import SpTable

GOLDBACH_THRESHOLD = 3931  # every n >= this is a verified two-SP sum (to 10**7)
SP_GOLDBACH_THRESHOLD = 27  # every SP number above this is a two-SP sum
SQUARES_K_MIN = 23  # every (k**2, (k+1)**2) with k >= this contains an SP

_SHIFT_COUNT = 512
_CHUNK = 1 << 22


@dataclass(frozen=True)
class Representation:
    """n = s1 + s2 with both addends SP and s1 minimal (so s1 <= s2)."""

    n: int
    s1: int
    s2: int


@dataclass(frozen=True)
class GapRecord:
    g: int
    first_lo: int
    count: int


def _smallest_addend(table: SpTable, n: int, sp_vals: np.ndarray) -> int | None:
    """Least SP value s with n - s also SP and s <= n - s, else None."""
    jmax = int(np.searchsorted(sp_vals, n // 2, side="right"))
    bits = table.sp_bits
    for j0 in range(0, jmax, 2048):
        s = sp_vals[j0 : min(j0 + 2048, jmax)]
        t = n - s
        hit = (bits[t >> 3].astype(np.uint16) >> (t & 7)) & 1
        idx = np.flatnonzero(hit)
        if idx.size:
            return int(s[idx[0]])
    return None


def find_two_sp_sum(table: SpTable, n: int) -> Representation | None:
    """Representation of n with the smallest possible first addend."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > table.limit:
        raise RangeError(f"n={n} exceeds table limit {table.limit}")
    s = _smallest_addend(table, n, table.sp_values())
    if s is None:
        return None
    return Representation(n=n, s1=s, s2=n - s)


def _reach_chunk(
    spb: np.ndarray, shifts: list[int], clo: int, chi: int
) -> np.ndarray:
    """reach[i] for n = clo + i: some s in shifts has n - s SP."""
    reach = np.zeros(chi - clo + 1, dtype=bool)
    for s in shifts:
        src_lo = max(clo - s, 0)
        src_hi = chi - s
        if src_hi < src_lo:
            continue
        dst = src_lo + s - clo
        src = spb[src_lo : src_hi + 1]
        reach[dst : dst + len(src)] |= src
    return reach


def _run_chunks(chunks, fn, workers: int) -> list:
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, chunks))
    return [fn(c) for c in chunks]


def verify_goldbach_range(
    table: SpTable, lo: int, hi: int, workers: int = 1
) -> list[int]:
    """All n in [lo, hi] with no two-SP-sum representation, ascending."""
    if lo < 1 or lo > hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if hi > table.limit:
        raise RangeError(f"hi={hi} exceeds table limit {table.limit}")
    sp_vals = table.sp_values()
    spb = table.sp_bool_range(0, hi)
    shifts = sp_vals[:_SHIFT_COUNT].tolist()

    def scan(chunk):
        clo, chi = chunk
        reach = _reach_chunk(spb, shifts, clo, chi)
        out = []
        for n in (np.flatnonzero(~reach) + clo).tolist():
            if _smallest_addend(table, n, sp_vals) is None:
                out.append(n)
        return out

    chunks = [(c, min(c + _CHUNK - 1, hi)) for c in range(lo, hi + 1, _CHUNK)]
    exceptions: list[int] = []
    for part in _run_chunks(chunks, scan, workers):
        exceptions.extend(part)
    return exceptions


def verify_sp_goldbach(
    table: SpTable,
    hi: int,
    threshold: int = SP_GOLDBACH_THRESHOLD,
    workers: int = 1,
) -> list[int]:
    """SP numbers v with threshold < v <= hi and no two-SP representation."""
    if hi < 1:
        raise ValueError(f"hi must be a positive integer, got {hi}")
    if hi > table.limit:
        raise RangeError(f"hi={hi} exceeds table limit {table.limit}")
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    lo = threshold + 1
    if lo > hi:
        return []
    sp_vals = table.sp_values()
    spb = table.sp_bool_range(0, hi)
    shifts = sp_vals[:_SHIFT_COUNT].tolist()

    def scan(chunk):
        clo, chi = chunk
        i0 = np.searchsorted(sp_vals, clo, side="left")
        i1 = np.searchsorted(sp_vals, chi, side="right")
        cand = sp_vals[i0:i1]
        if not cand.size:
            return []
        reach = _reach_chunk(spb, shifts, clo, chi)
        out = []
        for v in cand[~reach[cand - clo]].tolist():
            if _smallest_addend(table, v, sp_vals) is None:
                out.append(v)
        return out

    chunks = [(c, min(c + _CHUNK - 1, hi)) for c in range(lo, hi + 1, _CHUNK)]
    exceptions: list[int] = []
    for part in _run_chunks(chunks, scan, workers):
        exceptions.extend(part)
    return exceptions


def sp_between_squares(table: SpTable, k: int) -> int | None:
    """Smallest SP number strictly between k**2 and (k+1)**2, if any."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if (k + 1) * (k + 1) > table.limit:
        raise RangeError(f"(k+1)**2 = {(k + 1) ** 2} exceeds table limit {table.limit}")
    vals = table.sp_values()
    i = int(np.searchsorted(vals, k * k, side="right"))
    if i < len(vals) and int(vals[i]) < (k + 1) * (k + 1):
        return int(vals[i])
    return None


def verify_squares_range(
    table: SpTable, k_min: int, k_max: int, workers: int = 1
) -> list[int]:
    """All k in [k_min, k_max] whose square interval holds no SP number."""
    if k_min < 2 or k_min > k_max:
        raise ValueError(f"need 2 <= k_min <= k_max, got [{k_min}, {k_max}]")
    if (k_max + 1) * (k_max + 1) > table.limit:
        raise RangeError(
            f"(k_max+1)**2 = {(k_max + 1) ** 2} exceeds table limit {table.limit}"
        )
    vals = table.sp_values()

    def scan(chunk):
        ks = np.arange(chunk[0], chunk[1] + 1, dtype=np.int64)
        idx = np.searchsorted(vals, ks * ks, side="right")
        nxt = vals[np.minimum(idx, len(vals) - 1)]
        fail = (idx >= len(vals)) | (nxt >= (ks + 1) * (ks + 1))
        return ks[fail].tolist()

    step = 1 << 16
    chunks = [(c, min(c + step - 1, k_max)) for c in range(k_min, k_max + 1, step)]
    failures: list[int] = []
    for part in _run_chunks(chunks, scan, workers):
        failures.extend(part)
    return failures


def _positions_upto(table: SpTable, hi: int) -> np.ndarray:
    if hi < 1:
        raise ValueError(f"hi must be a positive integer, got {hi}")
    if hi > table.limit:
        raise RangeError(f"hi={hi} exceeds table limit {table.limit}")
    vals = table.sp_values()
    return vals[: int(np.searchsorted(vals, hi, side="right"))]


def gap_histogram(table: SpTable, hi: int) -> list[GapRecord]:
    """Per-gap count and first occurrence among consecutive SP values <= hi."""
    pos = _positions_upto(table, hi)
    if len(pos) < 2:
        return []
    diffs = np.diff(pos)
    order = np.argsort(diffs, kind="stable")
    gaps, counts = np.unique(diffs, return_counts=True)
    firsts = order[np.searchsorted(diffs[order], gaps, side="left")]
    return [
        GapRecord(g=int(g), first_lo=int(pos[i]), count=int(c))
        for g, i, c in zip(gaps, firsts, counts)
    ]


def twin_pairs(table: SpTable, hi: int) -> list[tuple[int, int]]:
    """Consecutive-integer SP pairs (u, u+1) with u + 1 <= hi, ascending."""
    pos = _positions_upto(table, hi)
    if len(pos) < 2:
        return []
    lo = pos[:-1][np.diff(pos) == 1]
    return [(int(u), int(u) + 1) for u in lo]
