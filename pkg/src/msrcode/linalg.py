"""Dense linear algebra over a :class:`~msrcode.gf.Field`.

Matrices and vectors are ``int64`` numpy arrays whose entries are field
elements.  Right-hand sides may carry a trailing batch axis: ``solve`` and
``mat_mul`` treat a 2-D ``b`` as several columns solved at once, which is how
the codec processes many stripes in one pass.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, Singular
from .gf import Field


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def mat_mul(F: Field, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    if A.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if F.is_prime:
        # entries < 2**16, so the int64 accumulator is safe for any inner size below 2**31
        out = (A @ B) % F.p
    else:
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            col = A[:, j]
            if not col.any():
                continue
            out = F.add(out, F.mul(col[:, None], B[j][None, :]))
    return out[:, 0] if vec else out


def scale(F: Field, alpha: int, A) -> np.ndarray:
    return np.asarray(F.mul(alpha, np.asarray(A, dtype=np.int64)), dtype=np.int64)


def _eliminate(F: Field, M: np.ndarray, ncols: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns.

    Pivots are the first nonzero entry at or below the current row.
    """
    M = M.copy()
    rows = M.shape[0]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r, col:] = F.mul(M[r, col:], F.inv(int(M[r, col])))
        factors = M[:, col].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            # columns left of col are already zero in the pivot row
            M[np.ix_(hit, np.arange(col, M.shape[1]))] = F.sub(
                M[hit, col:], F.mul(factors[hit, None], M[r, col:][None, :]))
        pivots.append(col)
        r += 1
    return M, pivots


def rank(F: Field, A) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    _, pivots = _eliminate(F, A, A.shape[1])
    return len(pivots)


def is_nonsingular(F: Field, A) -> bool:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {A.shape}")
    return rank(F, A) == A.shape[0]


def solve(F: Field, A, b) -> np.ndarray:
    """Unique ``x`` with ``A @ x == b``; ``b`` may be a vector or a column batch."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {A.shape}")
    if b.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"rhs length {b.shape[0]} != {A.shape[0]}")
    vec = b.ndim == 1
    B = b[:, None] if vec else b
    n = A.shape[0]
    R, pivots = _eliminate(F, np.hstack([A, B]), n)
    if len(pivots) < n:
        raise Singular(f"matrix of order {n} has rank {len(pivots)}")
    x = R[:, n:]
    return x[:, 0] if vec else x


def inverse(F: Field, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    return solve(F, A, identity(A.shape[0]))


def assemble_blocks(blocks: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    """Concatenate a grid of blocks into one dense matrix."""
    grid = [[np.asarray(b, dtype=np.int64) for b in row] for row in blocks]
    if not grid or not grid[0]:
        raise DimensionMismatch("empty block grid")
    ncol = len(grid[0])
    if any(len(row) != ncol for row in grid):
        raise DimensionMismatch("ragged block grid")
    widths = [b.shape[1] for b in grid[0]]
    for row in grid:
        if len({b.shape[0] for b in row}) != 1:
            raise DimensionMismatch("blocks in a grid row differ in height")
        if [b.shape[1] for b in row] != widths:
            raise DimensionMismatch("blocks in a grid column differ in width")
    return np.vstack([np.hstack(row) for row in grid])


def extract_block(M: np.ndarray, heights: Sequence[int], widths: Sequence[int],
                  t: int, i: int) -> np.ndarray:
    r0 = sum(heights[:t])
    c0 = sum(widths[:i])
    return M[r0:r0 + heights[t], c0:c0 + widths[i]]


def is_upper_triangular(A) -> bool:
    A = np.asarray(A)
    return not np.tril(A, -1).any()


def vandermonde(F: Field, points: Sequence[int], rows: int | None = None) -> np.ndarray:
    """``V[t, j] = points[j]**t``."""
    rows = len(points) if rows is None else rows
    return np.array([[F.pow(x, t) for x in points] for t in range(rows)], dtype=np.int64)
