"""Monte Carlo sampling of squarefree-pattern windows and their signed lifts.

A window x_1..x_N is drawn by choosing, independently and uniformly, one
residue mod p^2 for every prime p up to a cutoff P, and zeroing x_n
whenever the residue at some prime makes p^2 divide (residue + n).  The
signed sample multiplies each surviving position by an independent fair
sign.  Truncating the prime product at P perturbs the window law by at
most N/P in total variation (each omitted prime contributes under 1/p^2
per coordinate), and the bound is reported alongside samples.

Primes with p^2 > N can zero at most one window position each, and do so
uniformly; the sampler therefore draws only how many of them fire (one
draw from the exact Poisson-binomial count distribution, precomputed per
(P, N)) plus that many uniform positions, instead of one residue per
prime.  The window law is unchanged; small primes keep explicit residues.

RNG: numpy PCG64 via default_rng, seeded with SeedSequence((seed, index)),
one independent stream per sample index.  Draw order per sample: residues
for small primes ascending, the firing count, the fired positions, then
(signed samples only) one sign per nonzero position in position order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Mapping

import numpy as np

from .chowla import CorrelationMonomial
from .sieve import _primes_cached

_COUNT_TAIL = 1e-18


def default_cutoff(length: int) -> int:
    """Heuristic prime cutoff: total-variation error about 1e-5 per window."""
    return 100_000 * length


@dataclass(frozen=True)
class SampleConfig:
    """Window length, prime cutoff, and seed of a sampling run."""

    length: int
    cutoff: int
    seed: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if self.cutoff < 2:
            raise ValueError("cutoff must be >= 2")

    @property
    def tv_error_bound(self) -> float:
        """Total-variation distance to the untruncated window law."""
        return self.length / self.cutoff


@dataclass(frozen=True)
class ResiduePoint:
    """Explicit residues mod p^2 for each prime; evaluates windows directly."""

    residues: Mapping[int, int]

    def __post_init__(self) -> None:
        for p, r in self.residues.items():
            if not 0 <= r < p * p:
                raise ValueError(f"residue {r} outside [0, {p * p}) at prime {p}")

    def indicator_window(self, length: int) -> np.ndarray:
        """x_n for n = 1..length: 0 iff residue + n hits 0 mod p^2 somewhere."""
        out = np.ones(length, dtype=np.int8)
        for p, r in self.residues.items():
            p2 = p * p
            first = (-r) % p2
            if first == 0:
                first = p2
            out[first - 1 : length : p2] = 0
        return out


@dataclass(frozen=True)
class _SamplerState:
    small_squares: tuple[int, ...]
    count_cdf: np.ndarray


@lru_cache(maxsize=8)
def _state(cutoff: int, length: int) -> _SamplerState:
    primes = _primes_cached(cutoff)
    primes = primes[primes <= cutoff]
    small = tuple(int(p) ** 2 for p in primes if int(p) ** 2 <= length)
    large = np.asarray([int(p) for p in primes if int(p) ** 2 > length], dtype=np.float64)
    if large.size == 0:
        cdf = np.array([1.0])
    else:
        fire = length / (large * large)
        mean = float(fire.sum())
        k_max = max(8, int(mean + 12.0 * mean**0.5 + 30.0))
        dist = np.zeros(k_max + 1)
        dist[0] = 1.0
        for q in fire:
            dist[1:] = dist[1:] * (1.0 - q) + dist[:-1] * q
            dist[0] *= 1.0 - q
        cdf = np.cumsum(dist)
        if 1.0 - cdf[-1] > _COUNT_TAIL:
            raise ArithmeticError("count distribution truncated too aggressively")
        cdf /= cdf[-1]
    cdf.flags.writeable = False
    return _SamplerState(small, cdf)


def _rng_for(cfg: SampleConfig, index: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence((cfg.seed & 0xFFFFFFFFFFFFFFFF, index))
    )


def _pattern(rng: np.random.Generator, cfg: SampleConfig) -> np.ndarray:
    state = _state(cfg.cutoff, cfg.length)
    out = np.ones(cfg.length, dtype=np.int8)
    for p2 in state.small_squares:
        r = int(rng.integers(p2))
        first = (-r) % p2
        if first == 0:
            first = p2
        out[first - 1 : cfg.length : p2] = 0
    fired = int(np.searchsorted(state.count_cdf, rng.random(), side="right"))
    if fired:
        out[rng.integers(0, cfg.length, size=fired)] = 0
    return out


def mirsky_sample(cfg: SampleConfig, index: int = 0) -> np.ndarray:
    """One {0, 1} window of length cfg.length, deterministic per (seed, index)."""
    return _pattern(_rng_for(cfg, index), cfg)


def chowla_sample(cfg: SampleConfig, index: int = 0) -> np.ndarray:
    """One {0, -1, +1} window: the pattern times fair signs at its support.

    Squaring the result recovers mirsky_sample(cfg, index) exactly; signs
    are drawn only at nonzero positions, in position order.
    """
    rng = _rng_for(cfg, index)
    pattern = _pattern(rng, cfg)
    support = np.flatnonzero(pattern)
    signs = rng.integers(0, 2, size=support.size).astype(np.int8) * 2 - 1
    out = pattern.copy()
    out[support] = signs
    return out


def sample_blocks(cfg: SampleConfig, count: int, signed: bool = True) -> np.ndarray:
    """count independent windows stacked as a (count, length) int8 array."""
    if count < 1:
        raise ValueError("count must be >= 1")
    draw = chowla_sample if signed else mirsky_sample
    out = np.empty((count, cfg.length), dtype=np.int8)
    for index in range(count):
        out[index] = draw(cfg, index)
    return out


def mc_monomial_integral(
    monomial: CorrelationMonomial,
    n_samples: int,
    cfg: SampleConfig,
) -> tuple[float, float]:
    """Sample mean and standard error of a monomial over signed windows."""
    if monomial.max_position > cfg.length:
        raise ValueError("monomial positions exceed the window length")
    if n_samples < 1:
        raise ValueError("need at least one sample")
    words = sample_blocks(cfg, n_samples, signed=True)
    values = np.ones(n_samples, dtype=np.int64)
    for a in monomial.linear:
        values = values * words[:, a - 1]
    for b in monomial.squared:
        values = values * words[:, b - 1] ** 2
    mean = float(values.mean())
    if n_samples == 1:
        return mean, 0.0
    stderr = float(values.std(ddof=1) / np.sqrt(n_samples))
    return mean, stderr
