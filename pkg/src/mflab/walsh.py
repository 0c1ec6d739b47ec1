"""Subset-intersection sign matrices, the fast Walsh-Hadamard transform,
Hadamard-matrix checks, circulant constructions, and Barker sequences.

The central object is the 2^n x 2^n matrix with entries (-1)^|A ∩ B| over
subsets A, B of an n-element ground set.  Subsets are enumerated as n-bit
integers, bit i standing for element i + 1, so the matrix obeys the block
recursion [[C, C], [C, -C]] and is a Hadamard matrix; its determinant is
-2 for n = 1 and 2^(n 2^(n-1)) for n > 1 under this ordering.

Provides:
- walsh_entry / walsh_matrix / walsh_det_log2 / det_exact
- fwht: O(n 2^n) multiplication by the sign matrix
- solve_uniform_system: the unique solution of C x = a e_empty
- is_hadamard / hadamard_det_bound_check / circulant_from_row
- autocorrelations / is_barker / barker_search
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

BARKER_SEARCH_CAP = 32


def walsh_entry(a_mask: int, b_mask: int) -> int:
    """(-1)^popcount(a AND b) for subsets given as bitmasks."""
    if a_mask < 0 or b_mask < 0:
        raise ValueError("bitmasks must be nonnegative")
    return -1 if (a_mask & b_mask).bit_count() % 2 else 1


def walsh_matrix(n: int) -> np.ndarray:
    """Materialize the 2^n x 2^n subset sign matrix (int8)."""
    if n < 0:
        raise ValueError("ground-set size must be >= 0")
    masks = np.arange(1 << n, dtype=np.uint64)
    parity = np.bitwise_count(masks[:, None] & masks[None, :]).astype(np.int8) & 1
    return (1 - 2 * parity).astype(np.int8)


def walsh_det_log2(n: int) -> tuple[int, int]:
    """Determinant of the subset sign matrix as (sign, log2 of |det|).

    |det| = 2^(n 2^(n-1)); the sign is -1 only for n = 1 under the
    canonical binary subset ordering.
    """
    if n < 1:
        raise ValueError("ground-set size must be >= 1")
    return (-1 if n == 1 else 1), n * (1 << (n - 1))


def det_exact(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    if any(len(row) != m for row in a):
        raise ValueError("matrix must be square")
    if m == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def fwht(vector: Sequence[float]) -> np.ndarray:
    """Multiply by the subset sign matrix in O(n 2^n) butterfly passes.

    Integer input stays integer (exact); anything else is computed in
    float64.  Applying the transform twice scales by the vector length.

    Raises:
        ValueError: if the length is not a power of two.
    """
    a = np.asarray(vector)
    m = a.shape[0]
    if a.ndim != 1 or m == 0 or m & (m - 1):
        raise ValueError("length must be a power of two")
    dtype = np.int64 if np.issubdtype(a.dtype, np.integer) else np.float64
    a = a.astype(dtype, copy=True)
    h = 1
    while h < m:
        blocks = a.reshape(-1, 2, h)
        top = blocks[:, 0, :] + blocks[:, 1, :]
        bottom = blocks[:, 0, :] - blocks[:, 1, :]
        a = np.stack((top, bottom), axis=1).reshape(m)
        h *= 2
    return a


def solve_uniform_system(n: int, a: float) -> np.ndarray:
    """Solve C x = a e_empty over the 2^n subset basis.

    The unique solution is the constant vector a / 2^n; it is computed by
    one transform pass and verified by pushing it back through the matrix.
    """
    if n < 0:
        raise ValueError("size must be >= 0")
    size = 1 << n
    rhs = np.zeros(size, dtype=np.float64)
    rhs[0] = a
    x = fwht(rhs) / size
    residual = fwht(x)
    residual[0] -= a
    if np.abs(residual).max() > 1e-12 * max(1.0, abs(a)):
        raise ArithmeticError("uniform-system residual exceeds 1e-12")
    return x


def is_hadamard(matrix: Sequence[Sequence[int]]) -> bool:
    """True iff the matrix is +-1 with pairwise orthogonal rows (M M^T = n I).

    Raises:
        ValueError: on non-square input or entries other than +-1.
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.abs(m) == 1):
        raise ValueError("entries must be +-1")
    n = m.shape[0]
    g = m.astype(np.int64) @ m.astype(np.int64).T
    return bool(np.array_equal(g, n * np.eye(n, dtype=np.int64)))


def hadamard_det_bound_check(
    matrix: Sequence[Sequence[float]],
) -> tuple[float, float, bool]:
    """|det| against the bound n^(n/2) for entries in [-1, 1].

    Returns (|det|, bound, tight) where tight means |det| matches the
    bound to 1e-9 relative; equality forces a Hadamard matrix, which is
    re-verified whenever tight comes out true.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if m.size and np.abs(m).max() > 1.0:
        raise ValueError("entries must lie in [-1, 1]")
    n = m.shape[0]
    det_abs = float(abs(np.linalg.det(m)))
    bound = float(n) ** (n / 2)
    tight = abs(det_abs - bound) <= 1e-9 * bound
    if tight and not (np.all(np.abs(m) == 1) and is_hadamard(m.astype(np.int64))):
        raise ArithmeticError("determinant bound attained by a non-Hadamard matrix")
    return det_abs, bound, tight


def _as_sign_sequence(x: Sequence[int]) -> np.ndarray:
    arr = np.asarray(x, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("sequence must be nonempty and one-dimensional")
    if not np.all(np.abs(arr) == 1):
        raise ValueError("entries must be +-1")
    return arr


def autocorrelations(x: Sequence[int]) -> np.ndarray:
    """Aperiodic autocorrelations c_k = sum_j x_j x_(j+k) for k = 1..N-1.

    Real sequences satisfy c_(-k) = c_k, so only positive lags are kept;
    the lag-0 value is the length and is not returned.
    """
    arr = _as_sign_sequence(x)
    n = arr.size
    return np.array(
        [int(np.dot(arr[: n - k], arr[k:])) for k in range(1, n)], dtype=np.int64
    )


def is_barker(x: Sequence[int]) -> bool:
    """True iff every off-peak autocorrelation has magnitude at most 1."""
    c = autocorrelations(x)
    return bool(c.size == 0 or np.abs(c).max() <= 1)


def _barker_of_length(n: int) -> list[tuple[int, ...]]:
    """Depth-first search with first entry pinned to +1.

    A prefix of length m already fixes part of each c_k; the unplaced
    entries can move any c_k by at most n - m, so a partial value with
    |c_k| > 1 + (n - m) can never recover and the branch is pruned.
    """
    if n == 1:
        return [(1,)]
    x = [1] + [0] * (n - 1)
    partial = [0] * n
    found: list[tuple[int, ...]] = []

    def extend(m: int) -> None:
        if m == n:
            found.append(tuple(x))
            return
        slack = 1 + (n - m - 1)
        for sym in (1, -1):
            x[m] = sym
            feasible = True
            for k in range(1, m + 1):
                partial[k] += x[m - k] * sym
                if abs(partial[k]) > slack:
                    feasible = False
            if feasible:
                extend(m + 1)
            for k in range(1, m + 1):
                partial[k] -= x[m - k] * sym

    extend(1)
    return sorted(found)


def barker_search(max_len: int) -> dict[int, list[tuple[int, ...]]]:
    """Exhaustive Barker search for every length 1..max_len.

    Sequences are normalized to start with +1 (a global sign flip leaves
    all autocorrelations unchanged); each length maps to its sorted list
    of representatives, empty when none exist.

    Raises:
        ValueError: if max_len exceeds the search cap.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if max_len > BARKER_SEARCH_CAP:
        raise ValueError(f"cap exceeded: {max_len} > {BARKER_SEARCH_CAP}")
    return {n: _barker_of_length(n) for n in range(1, max_len + 1)}


def circulant_from_row(row: Sequence[float]) -> np.ndarray:
    """Circulant matrix: each row is the previous one shifted right by one."""
    first = np.asarray(row)
    if first.ndim != 1 or first.size == 0:
        raise ValueError("row must be nonempty and one-dimensional")
    return np.stack([np.roll(first, i) for i in range(first.size)])
