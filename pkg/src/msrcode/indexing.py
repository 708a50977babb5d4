"""w-ary index algebra and the basis partitions V_{i,u}.

An index ``a < w**m`` is read as digits ``(a_0, ..., a_{m-1})`` with ``a_0``
most significant.  ``V_{i,u}`` collects the basis vectors whose i-th digit is
``u``; as a matrix its rows are those basis vectors in ascending order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange


@dataclass(frozen=True)
class WaryContext:
    w: int
    m: int

    def __post_init__(self):
        if self.w < 2 or self.m < 1:
            raise OutOfRange(f"need w >= 2 and m >= 1, got w={self.w}, m={self.m}")

    @property
    def N(self) -> int:
        return self.w ** self.m

    def _place(self, i: int, ndigits: int | None = None) -> int:
        ndigits = self.m if ndigits is None else ndigits
        return self.w ** (ndigits - 1 - i)

    def _check(self, a: int, bound: int, i: int | None = None, u: int | None = None, ndigits=None):
        if not 0 <= a < bound:
            raise OutOfRange(f"index {a} not in [0, {bound})")
        if i is not None and not 0 <= i < (self.m if ndigits is None else ndigits):
            raise OutOfRange(f"digit position {i} out of range")
        if u is not None and not 0 <= u < self.w:
            raise OutOfRange(f"digit value {u} not in [0, {self.w})")

    def digits(self, a: int) -> tuple[int, ...]:
        self._check(a, self.N)
        out = []
        for _ in range(self.m):
            out.append(a % self.w)
            a //= self.w
        return tuple(reversed(out))

    def from_digits(self, seq) -> int:
        if len(seq) != self.m or any(not 0 <= x < self.w for x in seq):
            raise OutOfRange(f"bad digit sequence {seq!r}")
        a = 0
        for x in seq:
            a = a * self.w + x
        return a

    def digit(self, a, i: int):
        """i-th digit of ``a`` (vectorised over numpy arrays)."""
        return (a // self._place(i)) % self.w

    def replace_digit(self, a: int, i: int, u: int) -> int:
        """``a(i, u)``: a with its i-th digit set to u."""
        self._check(a, self.N, i, u)
        pv = self._place(i)
        return a + (u - (a // pv) % self.w) * pv

    def insert_digit(self, a: int, i: int, u: int) -> int:
        """``g_{i,u}(a)`` for an (m-1)-digit ``a``: insert u at position i."""
        self._check(a, self.N // self.w, i, u)
        return int(self._insert(np.int64(a), i, u))

    def _insert(self, a, i: int, u: int):
        low_span = self._place(i)  # w**(m-1-i): width of the digits after position i
        return (a // low_span) * low_span * self.w + u * low_span + a % low_span

    def v_row_map(self, i: int, u: int) -> np.ndarray:
        """Column index of the single 1 in each row of ``V_{i,u}``."""
        self._check(0, 1, i, u)
        a = np.arange(self.N // self.w, dtype=np.int64)
        return self._insert(a, i, u)

    def v_matrix(self, i: int, u: int) -> np.ndarray:
        rows = self.v_row_map(i, u)
        V = np.zeros((rows.size, self.N), dtype=np.int64)
        V[np.arange(rows.size), rows] = 1
        return V

    def sub_context(self) -> "WaryContext":
        """Context for the (m-1)-digit indices that address rows of V_{i,u}."""
        return WaryContext(self.w, self.m - 1)
