"""Common surface of array codes given in parity-check form.

A code is fully described to the codec by

* ``parity_block(t, i)`` -- the N x N block ``A_{t,i}``;
* ``select_matrix(i, t)`` and ``repair_matrix(i, j)``;
* ``interference(t, j, i)`` -- the factor ``B`` with
  ``select_matrix(i, t) @ parity_block(t, j) == B @ repair_matrix(i, j)``;
* ``partition(i)`` -- row maps splitting node i's content into the
  projections the repair system solves for.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg
from .gf import Field


class ArrayCode:
    n: int
    k: int
    d: int
    N: int
    field: Field
    construction: str = "?"

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def gamma_optimal(self) -> Fraction:
        """Cut-set lower bound on single-node repair bandwidth, in symbols."""
        return Fraction(self.d * self.N, self.d - self.k + 1)

    # subclasses provide these
    def parity_block(self, t: int, i: int) -> np.ndarray:
        raise NotImplementedError

    def select_matrix(self, i: int, t: int) -> np.ndarray:
        raise NotImplementedError

    def repair_matrix(self, i: int, j: int) -> np.ndarray:
        raise NotImplementedError

    def interference(self, t: int, j: int, i: int) -> np.ndarray:
        raise NotImplementedError

    def partition(self, i: int) -> list[np.ndarray]:
        raise NotImplementedError

    def default_helpers(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if j != i)[: self.d]

    @cached_property
    def parity_matrix(self) -> np.ndarray:
        """The full rN x nN parity-check matrix."""
        return linalg.assemble_blocks(
            [[self.parity_block(t, i) for i in range(self.n)] for t in range(self.r)]
        )

    def columns(self, nodes) -> np.ndarray:
        """Columns of the parity-check matrix belonging to ``nodes``."""
        N = self.N
        idx = np.concatenate([np.arange(j * N, (j + 1) * N) for j in nodes])
        return self.parity_matrix[:, idx]

    @cached_property
    def generator(self) -> np.ndarray:
        """``G`` with ``parity = G @ data`` for the systematic layout (rN x kN)."""
        F = self.field
        data_cols = self.columns(range(self.k))
        parity_cols = self.columns(range(self.k, self.n))
        return linalg.solve(F, parity_cols, F.neg(data_cols))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, k={self.k}, d={self.d}, N={self.N}, {self.field!r})"
