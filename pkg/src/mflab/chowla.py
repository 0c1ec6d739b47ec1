"""The unique sign-symmetric lift of the Mirsky measure to signed cylinders.

A level-n signed cylinder fixes a 0/1 base pattern together with a choice
of sign at each base-support position.  The measure studied here is pinned
down by three requirements: shift invariance, coordinatewise squares
pushing forward to the Mirsky measure, and vanishing integrals for every
correlation monomial with at least one first-power factor.  Solving the
resulting subset sign-matrix system shows each of the 2^k sign patterns
over a base carries exactly value(base) / 2^k; `uniqueness_solve` runs the
linear-system route and the closed form side by side, and
`verify_admissible_level` re-checks all three defining properties on an
explicit level table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .admissible import (
    Support,
    as_support,
    block_support,
    enumerate_admissible_blocks,
)
from .mirsky import TruncatedDensity, mirsky_cylinder
from .walsh import solve_uniform_system

LEVEL_CAP = 16

Word = tuple[int, ...]


@dataclass(frozen=True)
class CorrelationMonomial:
    """Product of coordinates over `linear` times squared coordinates over
    `squared`.

    Squared positions shared with linear ones are dropped on construction:
    on symbols in {-1, 0, 1} a cube equals the first power, so the overlap
    is redundant and the two position sets can be kept disjoint.
    """

    linear: Support
    squared: Support

    def __init__(self, linear: Iterable[int], squared: Iterable[int] = ()) -> None:
        lin = as_support(linear)
        sq = tuple(sorted(set(as_support(squared)) - set(lin)))
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "squared", sq)

    @property
    def max_position(self) -> int:
        positions = self.linear + self.squared
        return max(positions) if positions else 0

    def evaluate(self, word: Sequence[int]) -> int:
        """Value of the monomial on a block; symbols must cover every position.

        Raises:
            ValueError: if a position falls outside the block.
        """
        if self.max_position > len(word):
            raise ValueError("position out of range for the given block")
        value = 1
        for a in self.linear:
            value *= int(word[a - 1])
        for b in self.squared:
            value *= int(word[b - 1]) ** 2
        return value


@dataclass(frozen=True)
class SignedCylinder:
    """A 0/1 base block plus a -1/+1 choice at each support position."""

    base: Word
    negatives: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if any(sym not in (0, 1) for sym in self.base):
            raise ValueError("base must be a block over {0, 1}")
        support = set(block_support(self.base))
        if not set(self.negatives) <= support:
            raise ValueError("negative positions must lie in the base support")

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "SignedCylinder":
        """Split a {0, -1, +1} word into its squared base and sign choice."""
        base = tuple(int(sym) ** 2 for sym in word)
        negs = frozenset(i + 1 for i, sym in enumerate(word) if sym == -1)
        return cls(base, negs)

    def word(self) -> Word:
        """The cylinder as a single {0, -1, +1} word."""
        return tuple(
            -sym if (i + 1) in self.negatives else sym
            for i, sym in enumerate(self.base)
        )

    @property
    def support(self) -> Support:
        return block_support(self.base)


def chowla_cylinder(cylinder: SignedCylinder, prime_cutoff: int) -> TruncatedDensity:
    """Measure of a signed cylinder: the base cylinder value split evenly
    over its 2^(support size) sign patterns."""
    base_density = mirsky_cylinder(cylinder.base, prime_cutoff)
    scale = 2 ** len(cylinder.support)
    return TruncatedDensity(
        base_density.value / scale,
        prime_cutoff,
        base_density.error_bound / scale,
    )


@dataclass(frozen=True)
class AdmissibleMeasureLevel:
    """All signed-cylinder values at one level, keyed by {0, -1, +1} word.

    Words absent from the map are treated as carrying measure zero (this
    is where signed cylinders over inadmissible bases live).
    """

    n: int
    values: Mapping[Word, float]

    @classmethod
    def build(cls, n: int, prime_cutoff: int) -> "AdmissibleMeasureLevel":
        """Exact level table over all admissible bases of length n."""
        if n < 1:
            raise ValueError("level must be >= 1")
        if n > LEVEL_CAP:
            raise ValueError(f"level cap exceeded: {n} > {LEVEL_CAP}")
        values: dict[Word, float] = {}
        for base in enumerate_admissible_blocks(n, alphabet=2):
            support = block_support(base)
            share = mirsky_cylinder(base, prime_cutoff).value / 2 ** len(support)
            for size in range(len(support) + 1):
                for negs in combinations(support, size):
                    sc = SignedCylinder(base, frozenset(negs))
                    values[sc.word()] = share
        return cls(n, values)

    def total_mass(self) -> float:
        return float(sum(self.values.values()))

    def value(self, word: Word) -> float:
        return self.values.get(tuple(word), 0.0)


def monomial_integral_level(
    monomial: CorrelationMonomial,
    n: int,
    prime_cutoff: int,
) -> float:
    """Exact finite integral of a correlation monomial at level n.

    Sums evaluate * value over every level-n signed cylinder.  With a
    nonempty linear part the sign patterns cancel pairwise and the sum is
    zero up to accumulated float error; with an empty linear part it
    equals the measure of "squarefree at every squared position".
    """
    if monomial.max_position > n:
        raise ValueError("monomial positions exceed the level")
    level = AdmissibleMeasureLevel.build(n, prime_cutoff)
    return integral_from_level(monomial, level)


def integral_from_level(
    monomial: CorrelationMonomial, level: AdmissibleMeasureLevel
) -> float:
    """Integral of a monomial against an explicit level table."""
    if monomial.max_position > level.n:
        raise ValueError("monomial positions exceed the level")
    total = 0.0
    for word, value in level.values.items():
        total += monomial.evaluate(word) * value
    return total


def uniqueness_solve(base: Sequence[int], nu_value: float) -> dict[Word, float]:
    """Values of all sign patterns over a base with prescribed base mass.

    Solves the subset sign-matrix system whose right-hand side is nu_value
    at the empty subset and zero elsewhere, and checks the solution against
    the closed form nu_value / 2^k; the two must agree to 1e-12.
    """
    base = tuple(int(sym) for sym in base)
    if any(sym not in (0, 1) for sym in base):
        raise ValueError("base must be a block over {0, 1}")
    if nu_value < 0:
        raise ValueError("base mass must be nonnegative")
    support = block_support(base)
    k = len(support)
    solved = solve_uniform_system(k, nu_value)
    closed = nu_value / 2**k
    if np.abs(solved - closed).max() > 1e-12 * max(1.0, nu_value):
        raise ArithmeticError("linear-system and closed-form values disagree")
    out: dict[Word, float] = {}
    for mask in range(2**k):
        negs = frozenset(support[i] for i in range(k) if mask >> i & 1)
        out[SignedCylinder(base, negs).word()] = float(solved[mask])
    return out


@dataclass(frozen=True)
class LevelCheck:
    """Outcome of one defining-property check on a level table."""

    passed: bool
    max_deviation: float


@dataclass(frozen=True)
class LevelReport:
    """verify_admissible_level outcome: per-check verdicts at one level."""

    n: int
    tol: float
    shift: LevelCheck
    squared_pushforward: LevelCheck
    vanishing_integrals: LevelCheck

    @property
    def passed(self) -> bool:
        return (
            self.shift.passed
            and self.squared_pushforward.passed
            and self.vanishing_integrals.passed
        )

    def as_dict(self) -> dict:
        return {
            "level": self.n,
            "tol": self.tol,
            "passed": self.passed,
            "checks": {
                "shift_consistency": vars(self.shift),
                "squared_pushforward": vars(self.squared_pushforward),
                "vanishing_integrals": vars(self.vanishing_integrals),
            },
        }


def _words_of_length(n: int) -> Iterable[Word]:
    if n == 0:
        yield ()
        return
    for rest in _words_of_length(n - 1):
        for sym in (-1, 0, 1):
            yield rest + (sym,)


def verify_admissible_level(
    level: AdmissibleMeasureLevel,
    prime_cutoff: int,
    tol: float = 1e-9,
) -> LevelReport:
    """Check the three defining properties of the measure on a level table.

    (a) shift consistency: the first-(n-1) and last-(n-1) marginals agree;
    (b) squared pushforward: summing sign patterns over each admissible
        base reproduces its Mirsky cylinder value (tolerance widened by
        the truncation error bound);
    (c) vanishing integrals: every monomial with nonempty linear part and
        positions inside [1, n] integrates to ~0 against the table.
    """
    n = level.n
    shift_dev = 0.0
    if n >= 2:
        for short in _words_of_length(n - 1):
            head = sum(level.value(short + (sym,)) for sym in (-1, 0, 1))
            tail = sum(level.value((sym,) + short) for sym in (-1, 0, 1))
            shift_dev = max(shift_dev, abs(head - tail))
    push_dev = 0.0
    push_ok = True
    for base in enumerate_admissible_blocks(n, alphabet=2):
        support = block_support(base)
        mass = 0.0
        for size in range(len(support) + 1):
            for negs in combinations(support, size):
                mass += level.value(SignedCylinder(base, frozenset(negs)).word())
        target = mirsky_cylinder(base, prime_cutoff)
        dev = abs(mass - target.value)
        push_dev = max(push_dev, dev)
        # Truncation uncertainty of the reference value widens the tolerance.
        push_ok = push_ok and dev <= tol + target.error_bound
    integral_dev = 0.0
    positions = range(1, n + 1)
    for lin_size in range(1, n + 1):
        for lin in combinations(positions, lin_size):
            others = [q for q in positions if q not in lin]
            for sq_size in range(len(others) + 1):
                for sq in combinations(others, sq_size):
                    mono = CorrelationMonomial(lin, sq)
                    integral_dev = max(
                        integral_dev, abs(integral_from_level(mono, level))
                    )
    return LevelReport(
        n=n,
        tol=tol,
        shift=LevelCheck(shift_dev <= tol, shift_dev),
        squared_pushforward=LevelCheck(push_ok, push_dev),
        vanishing_integrals=LevelCheck(integral_dev <= tol, integral_dev),
    )
