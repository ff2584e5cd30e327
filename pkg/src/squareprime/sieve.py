"""Square-prime numbers: sieving, membership, and decomposition.

A square-prime (SP) number is an integer of the form p * a**2 with p prime
and a >= 2.  The representation is unique: in n = p * a**2 the prime p has
odd exponent and every other prime has even exponent, so a**2 is exactly the
largest perfect square dividing n and p is the squarefree kernel n / a**2.
That gives a direct membership test (kernel prime, square part >= 4) and a
canonical decomposition for every member.

Two access paths are provided:

* ``build_table(limit)`` sieves [0, limit] segment by segment and returns an
  ``SpTable`` holding one bit per integer for primality and one for SP
  membership, plus O(1) rank queries (``prime_count``/``sp_count``) backed by
  lazily built per-byte cumulative popcounts.
* ``is_sp(n)`` / ``largest_square_divisor(n)`` answer one-off queries up to
  10**12 by trial division, with no table.
"""

from __future__ import annotations

import math
import os
import struct
import threading
from dataclasses import dataclass

import numpy as np

from .errors import RangeError, ResourceLimitError

DEFAULT_SEGMENT_SIZE = 1 << 20
STANDALONE_LIMIT = 10**12
DEFAULT_MEMORY_CAP_MB = 4096
MEMORY_CAP_ENV = "SP_MEMORY_CAP_MB"

_MAGIC = b"SPT1"

# popcount of a byte, and popcount of the low (r+1) bits of a byte
_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint32)
_POP8_PREFIX = np.array(
    [[bin(b & ((1 << (r + 1)) - 1)).count("1") for r in range(8)] for b in range(256)],
    dtype=np.uint8,
)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class SpDecomposition:
    """Canonical form n = p * a**2 of an SP number (a**2 is the largest
    square divisor of n, p its squarefree kernel)."""

    n: int
    p: int
    a: int


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin.

    The base set (2..37) is exact for all n < 3.3 * 10**24, far past the
    10**12 standalone bound used elsewhere in this module.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _square_split(n: int) -> tuple[int, int]:
    # n == s*s * k with k squarefree; trial division up to the cube root
    # leaves a remainder that is 1, q, q**2 or q1*q2 -- only the q**2 case
    # contributes to s, and it is recognised by isqrt.
    s = 1
    k = 1
    m = n
    d = 2
    while d * d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                k *= d
        d += 1 if d == 2 else 2
    r = math.isqrt(m)
    if r * r == m:
        s *= r
    else:
        k *= m
    return s, k


def _check_standalone(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > STANDALONE_LIMIT:
        raise ValueError(
            f"standalone queries are supported up to {STANDALONE_LIMIT}, got {n}"
        )


def largest_square_divisor(n: int) -> int:
    """Largest s such that s**2 divides n (supported for n <= 10**12)."""
    _check_standalone(n)
    return _square_split(n)[0]


def is_sp(n: int) -> SpDecomposition | None:
    """Decompose n as p * a**2 with p prime, a >= 2, or None if n is not SP.

    Supported for n <= 10**12; larger inputs raise ValueError.
    """
    _check_standalone(n)
    s, k = _square_split(n)
    if s >= 2 and k >= 2 and is_prime(k):
        return SpDecomposition(n=n, p=k, a=s)
    return None


def _unpack_range(bits: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Bool array for integers lo..hi inclusive from a little-endian bit map."""
    b0 = lo >> 3
    window = np.unpackbits(bits[b0 : (hi >> 3) + 1], bitorder="little")
    return window[lo - (b0 << 3) : hi + 1 - (b0 << 3)].view(np.bool_)


class SpTable:
    """Primality and SP membership for [0, limit], one bit per integer.

    Immutable after construction; all reads (including the lazily built
    counting caches, guarded by a lock) are safe from multiple threads.
    """

    def __init__(self, limit: int, prime_bits: np.ndarray, sp_bits: np.ndarray):
        nbytes = (limit + 8) >> 3
        assert prime_bits.dtype == np.uint8 and len(prime_bits) == nbytes
        assert sp_bits.dtype == np.uint8 and len(sp_bits) == nbytes
        self.limit = limit
        self.prime_bits = prime_bits
        self.sp_bits = sp_bits
        self._lock = threading.Lock()
        self._prime_cum8: np.ndarray | None = None
        self._sp_cum8: np.ndarray | None = None
        self._sp_values: np.ndarray | None = None

    # -- membership ---------------------------------------------------

    def _check(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"n must be a positive integer, got {n}")
        if n > self.limit:
            raise RangeError(f"n={n} exceeds table limit {self.limit}")

    def prime_member(self, n: int) -> bool:
        self._check(n)
        return bool((self.prime_bits[n >> 3] >> (n & 7)) & 1)

    def sp_member(self, n: int) -> bool:
        self._check(n)
        return bool((self.sp_bits[n >> 3] >> (n & 7)) & 1)

    # -- counting -----------------------------------------------------

    def _cums(self) -> tuple[np.ndarray, np.ndarray]:
        with self._lock:
            if self._prime_cum8 is None:
                self._prime_cum8 = _cum8(self.prime_bits)
                self._sp_cum8 = _cum8(self.sp_bits)
            return self._prime_cum8, self._sp_cum8

    def prime_count(self, n: int) -> int:
        """pi(n): primes <= n."""
        self._check(n)
        cum, _ = self._cums()
        return int(cum[n >> 3]) + int(_POP8_PREFIX[self.prime_bits[n >> 3], n & 7])

    def sp_count(self, n: int) -> int:
        """SP numbers <= n."""
        self._check(n)
        _, cum = self._cums()
        return int(cum[n >> 3]) + int(_POP8_PREFIX[self.sp_bits[n >> 3], n & 7])

    def prime_count_many(self, ns: np.ndarray) -> np.ndarray:
        """Vectorised pi(n) for an int64 array of queries in [0, limit]."""
        ns = np.asarray(ns, dtype=np.int64)
        if ns.size:
            if int(ns.min()) < 0 or int(ns.max()) > self.limit:
                raise RangeError("query outside [0, limit]")
        cum, _ = self._cums()
        byte = ns >> 3
        return cum[byte].astype(np.int64) + _POP8_PREFIX[self.prime_bits[byte], ns & 7]

    # -- enumeration ----------------------------------------------------

    def sp_values(self) -> np.ndarray:
        """All SP numbers <= limit, ascending (cached int64 array)."""
        with self._lock:
            if self._sp_values is None:
                chunks = []
                step = 1 << 23
                for lo in range(0, self.limit + 1, step):
                    hi = min(lo + step - 1, self.limit)
                    seg = _unpack_range(self.sp_bits, lo, hi)
                    chunks.append(np.flatnonzero(seg).astype(np.int64) + lo)
                self._sp_values = np.concatenate(chunks)
            return self._sp_values

    def sp_bool_range(self, lo: int, hi: int) -> np.ndarray:
        """SP membership as a bool array for integers lo..hi inclusive."""
        if lo < 0 or hi > self.limit or lo > hi:
            raise RangeError(f"range [{lo}, {hi}] outside [0, {self.limit}]")
        return _unpack_range(self.sp_bits, lo, hi)

    def sp_list(self, lo: int, hi: int) -> list[SpDecomposition]:
        """Decompositions of every SP number in [lo, hi], ascending."""
        if lo < 1 or lo > hi:
            raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
        if hi > self.limit:
            raise RangeError(f"hi={hi} exceeds table limit {self.limit}")
        vals = self.sp_values()
        i0 = int(np.searchsorted(vals, lo, side="left"))
        i1 = int(np.searchsorted(vals, hi, side="right"))
        out = []
        for v in vals[i0:i1].tolist():
            dec = is_sp(v)
            assert dec is not None
            out.append(dec)
        return out

    # -- persistence ----------------------------------------------------

    def dump(self, path) -> None:
        """Write magic, little-endian 64-bit limit, then both bit arrays."""
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<Q", self.limit))
            fh.write(self.prime_bits.tobytes())
            fh.write(self.sp_bits.tobytes())

    @classmethod
    def load(cls, path) -> "SpTable":
        with open(path, "rb") as fh:
            blob = fh.read()
        if blob[:4] != _MAGIC:
            raise ValueError("not an SPT1 table dump")
        (limit,) = struct.unpack_from("<Q", blob, 4)
        nbytes = (limit + 8) >> 3
        if len(blob) != 12 + 2 * nbytes:
            raise ValueError(f"truncated table dump for limit {limit}")
        prime_bits = np.frombuffer(blob, dtype=np.uint8, count=nbytes, offset=12).copy()
        sp_bits = np.frombuffer(
            blob, dtype=np.uint8, count=nbytes, offset=12 + nbytes
        ).copy()
        return cls(limit, prime_bits, sp_bits)


def _cum8(bits: np.ndarray) -> np.ndarray:
    cum = np.zeros(len(bits) + 1, dtype=np.uint32)
    np.cumsum(_POP8[bits], dtype=np.uint32, out=cum[1:])
    return cum


def _small_primes(m: int) -> np.ndarray:
    if m < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(m + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(m) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _resolve_memory_cap_mb(memory_cap_mb: int | None) -> int:
    if memory_cap_mb is not None:
        return memory_cap_mb
    env = os.environ.get(MEMORY_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{MEMORY_CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_MEMORY_CAP_MB


def _estimate_build_bytes(limit: int, seg: int) -> int:
    nbytes = (limit + 8) >> 3
    quarter = max(limit // 4, 2)
    pi_quarter = int(1.3 * quarter / max(math.log(quarter), 1.0)) + 16
    return 2 * nbytes + min(seg, limit + 1) + 8 * pi_quarter + math.isqrt(limit) + 1


def build_table(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    memory_cap_mb: int | None = None,
) -> SpTable:
    """Sieve primality and SP membership over [0, limit].

    The output is a pure function of ``limit``: segment size only trades
    memory for locality.  Estimated working-set memory is checked against
    ``memory_cap_mb`` (default: the SP_MEMORY_CAP_MB environment variable,
    else 4096 MB) before any allocation.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if segment_size < 2:
        raise ValueError(f"segment_size must be >= 2, got {segment_size}")
    cap_mb = _resolve_memory_cap_mb(memory_cap_mb)
    est = _estimate_build_bytes(limit, segment_size)
    if est > cap_mb * 1024 * 1024:
        raise ResourceLimitError(
            f"build_table(limit={limit}) needs about {est // (1024 * 1024) + 1} MB, "
            f"over the {cap_mb} MB cap ({MEMORY_CAP_ENV})"
        )

    # segments start on multiples of 8 so each packs to whole bytes
    seg = (segment_size + 7) & ~7
    nbytes = (limit + 8) >> 3
    base = _small_primes(math.isqrt(limit)).tolist()
    prime_bits = np.zeros(nbytes, dtype=np.uint8)
    sp_bits = np.zeros(nbytes, dtype=np.uint8)

    # pass 1: primes; gather those <= limit/4 for the SP pass
    pmax = limit // 4
    prime_chunks = []
    for lo in range(0, limit + 1, seg):
        hi = min(lo + seg, limit + 1)
        mask = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            mask[:2] = False
        for p in base:
            start = p * p
            if start >= hi:
                break
            if start < lo:
                start = lo + (-lo) % p
            mask[start - lo :: p] = False
        packed = np.packbits(mask, bitorder="little")
        prime_bits[lo >> 3 : (lo >> 3) + len(packed)] = packed
        if lo <= pmax:
            keep = mask[: min(hi, pmax + 1) - lo]
            prime_chunks.append(np.flatnonzero(keep).astype(np.int64) + lo)
    primes = (
        np.concatenate(prime_chunks) if prime_chunks else np.empty(0, dtype=np.int64)
    )

    # pass 2: mark p * a**2 for every prime p and every a >= 2 in range
    for lo in range(0, limit + 1, seg):
        hi = min(lo + seg, limit + 1)
        top = hi - 1
        if top < 8:
            continue
        mask = np.zeros(hi - lo, dtype=bool)
        wrote = False
        for a in range(2, math.isqrt(top // 2) + 1):
            a2 = a * a
            p_lo = max(2, -(-lo // a2))
            p_hi = top // a2
            if p_hi < p_lo:
                continue
            i0 = np.searchsorted(primes, p_lo, side="left")
            i1 = np.searchsorted(primes, p_hi, side="right")
            if i1 > i0:
                mask[primes[i0:i1] * a2 - lo] = True
                wrote = True
        if wrote:
            packed = np.packbits(mask, bitorder="little")
            sp_bits[lo >> 3 : (lo >> 3) + len(packed)] = packed

    return SpTable(limit, prime_bits, sp_bits)
