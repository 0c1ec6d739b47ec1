"""Sieved tables of the Mobius function, the Liouville function, and the
squarefree indicator.

Provides:
- primes_up_to: Eratosthenes prime sieve
- sieve: segmented tables of mu, lambda, or mu^2 on {1, ..., max_n}
- mobius_direct / liouville_direct / squarefree_direct: trial-division
  oracles for cross-checking the sieve
- write_table / read_table: binary table files ("MFL1" format)

Tables are 1-based: a table for max_n holds exactly max_n signed bytes,
entry n living at values[n - 1].  Every value is in {-1, 0, 1}.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from pathlib import Path
from typing import Union

import numpy as np

MAGIC = b"MFL1"

# Segment length for the segmented sieve.  Any value gives bit-identical
# tables; this one keeps per-segment scratch arrays comfortably in cache.
DEFAULT_SEGMENT = 1 << 20


class ArithFunction(enum.Enum):
    """Which arithmetic function a table holds."""

    MOBIUS = 0
    LIOUVILLE = 1
    SQUAREFREE = 2


@dataclass(frozen=True)
class ArithTable:
    """Immutable table of an arithmetic function on {1, ..., max_n}.

    Attributes:
        function: which function the values belong to
        max_n: largest index covered (inclusive)
        values: int8 array of length max_n; values[n - 1] is the value at n
    """

    function: ArithFunction
    max_n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ValueError("empty range")
        if len(self.values) != self.max_n:
            raise ValueError("values length must equal max_n")
        self.values.flags.writeable = False

    def __getitem__(self, n: int) -> int:
        """Value at index n (1-based)."""
        if not 1 <= n <= self.max_n:
            raise IndexError(f"index {n} outside 1..{self.max_n}")
        return int(self.values[n - 1])

    def __len__(self) -> int:
        return self.max_n

    def window(self, start: int, length: int) -> np.ndarray:
        """Read-only view of the values at start, start+1, ..., start+length-1."""
        if start < 1 or start + length - 1 > self.max_n:
            raise IndexError("window outside table range")
        return self.values[start - 1 : start - 1 + length]


def primes_up_to(bound: int) -> np.ndarray:
    """All primes <= bound, ascending, as an int64 array.

    Bounds below 2 give an empty list rather than an error.
    """
    if bound < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(bound + 1, dtype=bool)
    is_prime[0] = is_prime[1] = False
    for i in range(2, isqrt(bound) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False
    return np.nonzero(is_prime)[0].astype(np.int64)


@lru_cache(maxsize=8)
def _primes_cached(bound: int) -> np.ndarray:
    """Shared read-only prime list; callers must not mutate."""
    p = primes_up_to(bound)
    p.flags.writeable = False
    return p


def _mobius_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """mu(n) for n in [lo, hi) via sign flips and a leftover-cofactor pass."""
    length = hi - lo
    val = np.ones(length, dtype=np.int8)
    rem = np.arange(lo, hi, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        start = ((lo + p - 1) // p) * p
        sl = slice(start - lo, length, p)
        val[sl] = -val[sl]
        rem[sl] //= p
        p2 = p * p
        start2 = ((lo + p2 - 1) // p2) * p2
        if start2 < hi:
            val[slice(start2 - lo, length, p2)] = 0
    # A cofactor > 1 is a single prime above the sieving limit.
    np.negative(val, where=rem > 1, out=val)
    if lo == 1:
        val[0] = 1
    return val


def _liouville_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """lambda(n) for n in [lo, hi): parity of the factor count, powers included."""
    length = hi - lo
    parity = np.zeros(length, dtype=np.int8)
    rem = np.arange(lo, hi, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        pk = p
        while pk < hi:
            start = ((lo + pk - 1) // pk) * pk
            if start < hi:
                sl = slice(start - lo, length, pk)
                parity[sl] ^= 1
                rem[sl] //= p
            pk *= p
    parity[rem > 1] ^= 1
    out = np.where(parity == 0, 1, -1).astype(np.int8)
    if lo == 1:
        out[0] = 1
    return out


def _squarefree_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """mu(n)^2 for n in [lo, hi): zero exactly at multiples of a prime square."""
    length = hi - lo
    val = np.ones(length, dtype=np.int8)
    for p in primes:
        p = int(p)
        p2 = p * p
        if p2 >= hi:
            break
        start = ((lo + p2 - 1) // p2) * p2
        if start < hi:
            val[slice(start - lo, length, p2)] = 0
    return val


_SEGMENT_FUNCS = {
    ArithFunction.MOBIUS: _mobius_segment,
    ArithFunction.LIOUVILLE: _liouville_segment,
    ArithFunction.SQUAREFREE: _squarefree_segment,
}


def sieve(
    function: ArithFunction,
    max_n: int,
    segment_size: int = DEFAULT_SEGMENT,
) -> ArithTable:
    """Sieve the requested function on {1, ..., max_n}.

    The sieve runs in segments of `segment_size`; the result is
    bit-identical for every choice of segment size.

    Raises:
        ValueError: if max_n < 1 ("empty range").
    """
    if max_n < 1:
        raise ValueError("empty range")
    if segment_size < 1:
        raise ValueError("segment size must be positive")
    primes = _primes_cached(max(isqrt(max_n), 2))
    fill = _SEGMENT_FUNCS[function]
    out = np.empty(max_n, dtype=np.int8)
    for lo in range(1, max_n + 1, segment_size):
        hi = min(lo + segment_size, max_n + 1)
        out[lo - 1 : hi - 1] = fill(lo, hi, primes)
    return ArithTable(function, max_n, out)


def mobius_direct(n: int) -> int:
    """mu(n) by trial division: 1 at n=1, 0 under a square factor,
    otherwise (-1)^(number of prime factors)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sign = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            sign = -sign
        d += 1 if d == 2 else 2
    if m > 1:
        sign = -sign
    return sign


def liouville_direct(n: int) -> int:
    """lambda(n) by trial division: (-1)^Omega(n), multiplicity counted."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            m //= d
            count += 1
        d += 1 if d == 2 else 2
    if m > 1:
        count += 1
    return 1 if count % 2 == 0 else -1


def squarefree_direct(n: int) -> int:
    """mu(n)^2 by trial division: 1 iff no prime square divides n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
        d += 1 if d == 2 else 2
    return 1


def write_table(table: ArithTable, path: Union[str, Path]) -> None:
    """Write a table in the binary format: b"MFL1", one function-id byte
    (0 Mobius / 1 Liouville / 2 SquareFree), max_n as 8-byte little-endian
    unsigned, then max_n signed bytes for indices 1..max_n.  No padding."""
    header = MAGIC + struct.pack("<BQ", table.function.value, table.max_n)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(table.values.astype("<i1").tobytes())


def read_table(path: Union[str, Path]) -> ArithTable:
    """Read a binary table written by write_table, validating the header."""
    raw = Path(path).read_bytes()
    if len(raw) < 13 or raw[:4] != MAGIC:
        raise ValueError("not an MFL1 table file")
    func_id, max_n = struct.unpack("<BQ", raw[4:13])
    try:
        function = ArithFunction(func_id)
    except ValueError:
        raise ValueError(f"unknown function id {func_id}") from None
    if len(raw) != 13 + max_n:
        raise ValueError("table file length does not match header")
    values = np.frombuffer(raw, dtype=np.int8, offset=13).copy()
    return ArithTable(function, int(max_n), values)
