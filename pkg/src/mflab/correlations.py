"""Empirical correlation sums, logarithmic densities, window frequencies,
and admissible-block coverage of the Mobius sequence.

Correlation sums average a product of shifted table values, each factor
taken to the first or second power, either with equal weights (Cesaro)
or with 1/n weights normalized by log N or by the harmonic number H_N.
Products of {-1, 0, 1} values are summed as exact integers in the Cesaro
case; 1/n-weighted sums use chunked compensated accumulation in ascending
order so results are reproducible to the last bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .admissible import enumerate_admissible_blocks
from .chowla import SignedCylinder
from .sieve import ArithFunction, ArithTable

_KAHAN_CHUNK = 1 << 16


def kahan_sum(values: np.ndarray, chunk: int = _KAHAN_CHUNK) -> float:
    """Compensated sum in fixed ascending chunk order (reproducible)."""
    total = 0.0
    carry = 0.0
    for start in range(0, len(values), chunk):
        piece = float(np.sum(values[start : start + chunk], dtype=np.float64))
        y = piece - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def harmonic_number(n: int) -> float:
    """H_n = 1 + 1/2 + ... + 1/n, compensated, ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return kahan_sum(1.0 / np.arange(1, n + 1, dtype=np.float64))


@dataclass(frozen=True)
class CorrelationSpec:
    """Shift pattern and exponents of a correlation product.

    Shifts are strictly ascending and start at 0; exponents are 1 or 2.
    An all-squares spec is legal but measures a density rather than a
    signed correlation, which `density_mode` exposes so callers can flag
    the result accordingly.
    """

    shifts: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.shifts) != len(self.exponents) or not self.shifts:
            raise ValueError("shifts and exponents must be nonempty and aligned")
        if self.shifts[0] != 0:
            raise ValueError("first shift must be 0")
        if any(b <= a for a, b in zip(self.shifts, self.shifts[1:])):
            raise ValueError("shifts must be strictly ascending")
        if any(e not in (1, 2) for e in self.exponents):
            raise ValueError("exponents must be 1 or 2")

    @property
    def density_mode(self) -> bool:
        return all(e == 2 for e in self.exponents)


@dataclass(frozen=True)
class AveragingMode:
    """Cesaro averaging, or 1/n weights normalized by log N or by H_N."""

    kind: str
    normalizer: str = "log"

    def __post_init__(self) -> None:
        if self.kind not in ("cesaro", "logarithmic"):
            raise ValueError("kind must be 'cesaro' or 'logarithmic'")
        if self.normalizer not in ("log", "harmonic"):
            raise ValueError("normalizer must be 'log' or 'harmonic'")


CESARO = AveragingMode("cesaro")
LOGARITHMIC = AveragingMode("logarithmic", "log")
LOG_HARMONIC = AveragingMode("logarithmic", "harmonic")


def _shifted_product(table: ArithTable, spec: CorrelationSpec, n_terms: int) -> np.ndarray:
    if table.function is ArithFunction.SQUAREFREE:
        raise ValueError("correlation sums expect a Mobius or Liouville table")
    if n_terms < 1:
        raise ValueError("need at least one term")
    if n_terms + spec.shifts[-1] > table.max_n:
        raise ValueError("range overflow: table too short for the shifts")
    values = table.values
    product = np.ones(n_terms, dtype=np.int8)
    for shift, exponent in zip(spec.shifts, spec.exponents):
        window = values[shift : shift + n_terms]
        product = product * (window if exponent == 1 else window * window)
    return product


def chowla_sum(
    table: ArithTable,
    spec: CorrelationSpec,
    n_terms: int,
    mode: AveragingMode = CESARO,
) -> float:
    """Averaged correlation of shifted table values.

    Cesaro: (1/N) sum of the products, summed exactly over the integers.
    Logarithmic: the 1/n-weighted sum divided by log N or by H_N.
    """
    product = _shifted_product(table, spec, n_terms)
    if mode.kind == "cesaro":
        return int(np.sum(product, dtype=np.int64)) / n_terms
    weights = product.astype(np.float64) / np.arange(1, n_terms + 1, dtype=np.float64)
    total = kahan_sum(weights)
    norm = math.log(n_terms) if mode.normalizer == "log" else harmonic_number(n_terms)
    return total / norm


def log_density(
    indicator: Union[Callable[[int], bool], Sequence[bool], np.ndarray],
    n_terms: int,
    normalizer: str = "harmonic",
) -> float:
    """Weighted density (1/norm) sum over n <= N of 1_E(n)/n.

    The indicator may be a predicate on integers or a boolean array
    indexed by n - 1.  Under the harmonic normalizer the full set of
    naturals has density exactly 1.0 and every set lands in [0, 1].
    """
    if n_terms < 2:
        raise ValueError("need n >= 2")
    if normalizer not in ("log", "harmonic"):
        raise ValueError("normalizer must be 'log' or 'harmonic'")
    if callable(indicator):
        member = np.fromiter(
            (bool(indicator(n)) for n in range(1, n_terms + 1)),
            dtype=bool,
            count=n_terms,
        )
    else:
        member = np.asarray(indicator, dtype=bool)
        if member.shape != (n_terms,):
            raise ValueError("indicator array must have length n_terms")
    weights = 1.0 / np.arange(1, n_terms + 1, dtype=np.float64)
    total = kahan_sum(weights * member)
    if normalizer == "log":
        return total / math.log(n_terms)
    value = total / kahan_sum(weights)
    return min(max(value, 0.0), 1.0)


def empirical_measure_cylinder(
    source: Union[ArithTable, np.ndarray, Sequence[int]],
    cylinder: Union[SignedCylinder, Sequence[int]],
    n_windows: int,
) -> float:
    """Frequency of a cylinder among windows of a sequence starting at 1..N."""
    values = source.values if isinstance(source, ArithTable) else np.asarray(source)
    word = cylinder.word() if isinstance(cylinder, SignedCylinder) else tuple(cylinder)
    if len(word) == 0:
        raise ValueError("cylinder must have positive length")
    if n_windows < 1:
        raise ValueError("need at least one window")
    if n_windows + len(word) - 1 > len(values):
        raise ValueError("source too short for the requested windows")
    match = np.ones(n_windows, dtype=bool)
    for offset, sym in enumerate(word):
        match &= values[offset : offset + n_windows] == sym
    return int(np.count_nonzero(match)) / n_windows


@dataclass(frozen=True)
class CoverageResult:
    """How many admissible blocks of one length occur as Mobius windows."""

    block_length: int
    n_windows: int
    seen: int
    admissible_total: int
    missing: tuple[tuple[int, ...], ...]

    @property
    def ratio(self) -> float:
        return self.seen / self.admissible_total


def orbit_block_coverage(
    block_length: int,
    n_windows: int,
    table: Optional[ArithTable] = None,
    missing_limit: int = 20,
) -> CoverageResult:
    """Coverage of the admissible blocks by windows of the Mobius sequence.

    Enumerates all admissible {0, -1, +1} blocks of the given length,
    scans the Mobius windows starting at 1..N, and reports how many
    blocks were observed plus a sample of missing ones (lexicographically
    first, at most missing_limit).
    """
    from .sieve import sieve  # local import to keep module load light

    if n_windows < 1:
        raise ValueError("need at least one window")
    blocks = enumerate_admissible_blocks(block_length, alphabet=3)
    needed = n_windows + block_length - 1
    if table is None:
        table = sieve(ArithFunction.MOBIUS, needed)
    elif table.function is not ArithFunction.MOBIUS:
        raise ValueError("coverage scans the Mobius table")
    elif table.max_n < needed:
        raise ValueError("table too short for the requested windows")
    values = table.values.astype(np.int64)
    codes = np.zeros(n_windows, dtype=np.int64)
    power = 1
    for offset in range(block_length):
        codes += (values[offset : offset + n_windows] + 1) * power
        power *= 3
    seen_codes = set(int(c) for c in np.unique(codes))

    def code_of(word: tuple[int, ...]) -> int:
        total = 0
        power = 1
        for sym in word:
            total += (sym + 1) * power
            power *= 3
        return total

    missing = tuple(w for w in blocks if code_of(w) not in seen_codes)
    return CoverageResult(
        block_length=block_length,
        n_windows=n_windows,
        seen=len(blocks) - len(missing),
        admissible_total=len(blocks),
        missing=missing[:missing_limit],
    )
