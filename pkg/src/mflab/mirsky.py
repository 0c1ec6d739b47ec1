"""Squarefree-pattern densities and cylinder values of the Mirsky measure.

The density of starting points m for which m + a is squarefree at every a
in a finite support A is the product over primes of (1 - t(p, A) / p^2),
with t(p, A) the number of residues of A mod p^2.  Truncating the product
at a prime cutoff P leaves a certified tail error below |A| / P, since
sum_{p > P} 1/p^2 < 1/P.  Cylinder values of the measure (a prescribed
0/1 pattern rather than "1 at A") follow by inclusion-exclusion over the
zero positions.  Both are cross-checkable against window frequencies of
the sieved squarefree indicator, which is what mirsky_empirical computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import isqrt
from typing import Iterable, Optional, Sequence

import numpy as np

from .admissible import Support, as_support, block_support
from .sieve import ArithFunction, ArithTable, _primes_cached, sieve

INCLUSION_EXCLUSION_CAP = 20

# Below this, products switch to log-space accumulation to dodge underflow.
_UNDERFLOW_GUARD = 1e-300


@dataclass(frozen=True)
class TruncatedDensity:
    """A density value carrying its prime cutoff and certified error bound."""

    value: float
    prime_cutoff: int
    error_bound: float

    def __post_init__(self) -> None:
        if self.error_bound < 0:
            raise ValueError("error bound must be nonnegative")


def _product_over_primes(support: Support, prime_cutoff: int) -> float:
    """prod_{p <= P} (1 - t(p, A)/p^2), exactly 0.0 when a factor vanishes.

    Primes with p^2 above the spread of A see |A| distinct residues, so
    only the finitely many small primes need explicit residue counting.
    """
    if not support:
        return 1.0
    primes = _primes_cached(prime_cutoff)
    primes = primes[primes <= prime_cutoff]
    k = len(support)
    spread = support[-1] - support[0]
    split = isqrt(spread) if spread else 1
    factors = np.empty(len(primes), dtype=np.float64)
    idx = 0
    while idx < len(primes) and primes[idx] <= split:
        p2 = int(primes[idx]) ** 2
        t = len({a % p2 for a in support})
        factors[idx] = 1.0 - t / p2
        idx += 1
    large = primes[idx:].astype(np.float64)
    factors[idx:] = 1.0 - k / (large * large)
    if factors.size and factors.min() == 0.0:
        return 0.0
    value = float(np.prod(factors))
    if 0.0 < value < _UNDERFLOW_GUARD:
        value = float(np.exp(np.sum(np.log(factors))))
    return value


def squarefree_pattern_density(
    positions: Iterable[int], prime_cutoff: int
) -> TruncatedDensity:
    """Truncated density of {m : m + a squarefree for all a in A}.

    The empty support has density exactly 1.  An exact zero factor (the
    support covering all of Z/p^2 for some p <= P) makes the true density
    zero as well, so the error bound is 0 in that case; otherwise it is
    |A| / P.
    """
    if prime_cutoff < 2:
        raise ValueError("prime cutoff must be >= 2")
    support = as_support(positions)
    value = _product_over_primes(support, prime_cutoff)
    error = 0.0 if (not support or value == 0.0) else len(support) / prime_cutoff
    return TruncatedDensity(value, prime_cutoff, error)


def mirsky_cylinder(
    block: Sequence[int],
    prime_cutoff: int,
    max_zeros: int = INCLUSION_EXCLUSION_CAP,
) -> TruncatedDensity:
    """Mirsky measure of the cylinder fixing the given 0/1 block.

    Inclusion-exclusion over the zero positions Z reduces the cylinder to
    pattern densities: sum over Z' of (-1)^|Z'| d(ones ∪ Z').  Terms whose
    truncated product vanishes exactly contribute no error; the others
    contribute their |support| / P tail bound.

    Raises:
        ValueError: for an empty block, symbols outside {0, 1}, or more
            than max_zeros zero positions ("IE cap exceeded").
    """
    if len(block) == 0:
        raise ValueError("block must have length >= 1")
    if any(sym not in (0, 1) for sym in block):
        raise ValueError("cylinder blocks are over {0, 1}")
    if prime_cutoff < 2:
        raise ValueError("prime cutoff must be >= 2")
    ones = block_support(block)
    zeros = tuple(i + 1 for i, sym in enumerate(block) if sym == 0)
    if len(zeros) > max_zeros:
        raise ValueError(f"IE cap exceeded: {len(zeros)} zeros > {max_zeros}")
    total = 0.0
    error = 0.0
    for size in range(len(zeros) + 1):
        sign = 1.0 if size % 2 == 0 else -1.0
        for extra in combinations(zeros, size):
            support = as_support(ones + extra)
            term = _product_over_primes(support, prime_cutoff)
            total += sign * term
            if term != 0.0:
                error += len(support) / prime_cutoff
    return TruncatedDensity(total, prime_cutoff, error)


def mirsky_empirical(
    block: Sequence[int],
    n_windows: int,
    table: Optional[ArithTable] = None,
) -> float:
    """Frequency of the 0/1 block among squarefree-indicator windows.

    Windows start at 1, ..., n_windows; a table covering
    n_windows + len(block) - 1 may be passed in to amortize sieving.
    """
    if len(block) == 0:
        raise ValueError("block must have length >= 1")
    if any(sym not in (0, 1) for sym in block):
        raise ValueError("cylinder blocks are over {0, 1}")
    if n_windows < 1:
        raise ValueError("need at least one window")
    needed = n_windows + len(block) - 1
    if table is None:
        table = sieve(ArithFunction.SQUAREFREE, needed)
    elif table.function is not ArithFunction.SQUAREFREE:
        raise ValueError("table must hold the squarefree indicator")
    elif table.max_n < needed:
        raise ValueError("table too short for the requested windows")
    values = table.values
    match = np.ones(n_windows, dtype=bool)
    for offset, sym in enumerate(block):
        match &= values[offset : offset + n_windows] == sym
    return int(np.count_nonzero(match)) / n_windows
