"""Admissibility of supports and blocks under the residues-mod-p^2 criterion.

A finite set of positions A is admissible when, for every prime p, the
residues of A modulo p^2 leave at least one class uncovered.  Since at most
|A| classes can be covered, only primes with p^2 <= |A| can fail, which
makes the check finite.  A block over {0, 1} or {0, -1, +1} is admissible
when the set of its nonzero positions is.

Provides:
- residue_count: number of distinct residues of a support mod p^2
- is_admissible_support / is_admissible_block / admissibility_report
- enumerate_admissible_supports / enumerate_admissible_blocks
- parse_block / format_block: the "+0-0" text form used by the CLI
"""

from __future__ import annotations

from collections import Counter
from math import isqrt
from typing import Iterable, Sequence

from .sieve import _primes_cached

Support = tuple[int, ...]
Word = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 24

_SYMBOL_FROM_CHAR = {"+": 1, "1": 1, "0": 0, "-": -1, "−": -1}
_CHAR_FROM_SYMBOL = {1: "+", 0: "0", -1: "-"}


def as_support(positions: Iterable[int]) -> Support:
    """Canonical support: ascending tuple of distinct positive positions."""
    pos = sorted(set(int(a) for a in positions))
    if pos and pos[0] < 1:
        raise ValueError("support positions must be >= 1")
    return tuple(pos)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def residue_count(p: int, positions: Iterable[int]) -> int:
    """Number of distinct residues of the support modulo p^2.

    Raises:
        ValueError: if p is not prime.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    support = as_support(positions)
    p2 = p * p
    return len({a % p2 for a in support})


def _relevant_primes(size: int) -> list[int]:
    """Primes whose square does not exceed the support size; larger primes
    cannot cover all of Z/p^2."""
    return [int(p) for p in _primes_cached(max(isqrt(size), 2)) if p * p <= size]


def is_admissible_support(positions: Iterable[int]) -> bool:
    """True iff every prime leaves a residue class mod p^2 uncovered."""
    support = as_support(positions)
    return all(residue_count(p, support) < p * p for p in _relevant_primes(len(support)))


def admissibility_report(word: Sequence[int]) -> dict:
    """Admissibility verdict for a block plus the support and primes checked."""
    support = block_support(word)
    checked = _relevant_primes(len(support))
    return {
        "admissible": all(residue_count(p, support) < p * p for p in checked),
        "support": list(support),
        "checked_primes": checked,
    }


def block_support(word: Sequence[int]) -> Support:
    """1-based positions of the nonzero symbols of a block."""
    for sym in word:
        if sym not in (-1, 0, 1):
            raise ValueError(f"block symbol {sym} outside {{-1, 0, 1}}")
    return tuple(i + 1 for i, sym in enumerate(word) if sym != 0)


def is_admissible_block(word: Sequence[int]) -> bool:
    """Admissibility of a finite block over {0, 1} or {0, -1, +1}."""
    return is_admissible_support(block_support(word))


def parse_block(text: str) -> Word:
    """Parse "+0-0" / "101" style block text into a symbol tuple."""
    try:
        return tuple(_SYMBOL_FROM_CHAR[ch] for ch in text.strip())
    except KeyError as exc:
        raise ValueError(f"unknown block symbol {exc.args[0]!r}") from None


def format_block(word: Sequence[int]) -> str:
    """Render a block as "+", "-", "0" characters."""
    return "".join(_CHAR_FROM_SYMBOL[sym] for sym in word)


def enumerate_admissible_supports(
    n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Support]:
    """All admissible subsets of {1, ..., n}, in lexicographic block order.

    The search walks positions left to right, keeping per-prime residue
    counters; once a partial support covers all of Z/p^2 for some prime,
    every superset is inadmissible and the branch is cut.
    """
    return [block_support(w) for w in enumerate_admissible_blocks(n, alphabet=2, cap=cap)]


def enumerate_admissible_blocks(
    n: int, alphabet: int = 2, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Word]:
    """All admissible blocks of length n, lexicographically ordered.

    Symbols are ordered 0 < 1 for alphabet 2 and -1 < 0 < +1 for
    alphabet 3.  Over alphabet 3 each admissible support contributes
    2^(support size) sign patterns.

    Raises:
        ValueError: if n exceeds the cap ("enumeration cap") or the
            alphabet is not 2 or 3.
    """
    if alphabet not in (2, 3):
        raise ValueError("alphabet must be 2 or 3")
    if n < 0:
        raise ValueError("length must be >= 0")
    if n > cap:
        raise ValueError(f"enumeration cap: {n} > {cap}")
    symbols = (0, 1) if alphabet == 2 else (-1, 0, 1)
    primes = _relevant_primes(n)
    squares = [p * p for p in primes]
    counters: list[Counter] = [Counter() for _ in primes]
    distinct = [0] * len(primes)

    out: list[Word] = []
    word: list[int] = []

    def covers_some_prime() -> bool:
        return any(distinct[i] == squares[i] for i in range(len(primes)))

    def walk(pos: int) -> None:
        if pos > n:
            out.append(tuple(word))
            return
        for sym in symbols:
            word.append(sym)
            if sym == 0:
                walk(pos + 1)
            else:
                for i, p2 in enumerate(squares):
                    r = pos % p2
                    counters[i][r] += 1
                    if counters[i][r] == 1:
                        distinct[i] += 1
                if not covers_some_prime():
                    walk(pos + 1)
                for i, p2 in enumerate(squares):
                    r = pos % p2
                    counters[i][r] -= 1
                    if counters[i][r] == 0:
                        distinct[i] -= 1
            word.pop()

    walk(1)
    return out
