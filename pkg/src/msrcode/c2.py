"""s-fold transformation of a C1 base code with d' = n' - 1.

Node i of the new (n = s*n', k = n - r) code reuses base node ``i % n'``
scaled by ``x_i**t`` in parity group t, where ``x_i = c**((i // n') * m * r)``.
Sub-packetization stays at the base's ``r**m``; repair reads whole nodes
from the s - 1 nodes congruent to the failed one and ``N / r`` symbols from
everyone else.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import linalg
from .c1 import C1Code, c1_params, validate_parameters
from .code import ArrayCode
from .errors import BadDegree, FieldTooSmall, InvalidCoefficients
from .gf import Field, c2_threshold, make_field, next_prime_power


def validate_c2_parameters(n_prime: int, k_prime: int, s: int) -> None:
    validate_parameters(n_prime, k_prime, n_prime - 1)
    if s < 1:
        raise BadDegree(f"replication factor s={s} must be >= 1")


@dataclass(frozen=True)
class C2Params:
    base: C1Code
    s: int
    xs: np.ndarray

    @property
    def n_prime(self) -> int:
        return self.base.n

    @property
    def n(self) -> int:
        return self.s * self.base.n

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def k(self) -> int:
        return self.n - self.r

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def threshold(self) -> int:
        return c2_threshold(self.m, self.r, self.s)


def c2_params(n_prime: int, k_prime: int, s: int, q_override: int | None = None,
              strict: bool = True, xs=None) -> C2Params:
    """Base code with ``d' = n' - 1`` plus the scalars ``x_i``.

    ``strict`` rejects fields at or below ``s*m*r`` and tables that break the
    distinctness conditions; ``xs`` overrides the default scalars.
    """
    validate_c2_parameters(n_prime, k_prime, s)
    r, _, m = validate_parameters(n_prime, k_prime, n_prime - 1)
    thr = c2_threshold(m, r, s)
    if q_override is None:
        q = next_prime_power(thr)
    else:
        q = make_field(q_override).q
        if strict and q <= thr:
            raise FieldTooSmall(f"q={q} must exceed s*m*r={thr}")
    base = C1Code(c1_params(n_prime, k_prime, n_prime - 1, q, strict=False))
    F = base.field
    if xs is None:
        xs = F.exp(np.array([(i // n_prime) * m * r for i in range(s * n_prime)], dtype=np.int64))
    xs = np.array(xs, dtype=np.int64).reshape(-1)
    if xs.size != s * n_prime or np.any(xs == 0):
        raise ValueError("need one nonzero scalar per node")
    xs.setflags(write=False)
    params = C2Params(base, s, xs)
    if strict:
        bad = validate_c2_conditions(params)
        if bad:
            raise InvalidCoefficients(f"{len(bad)} violated conditions, first {bad[0]}")
    return params


class C2Violation(NamedTuple):
    condition: str
    i: int
    u: int
    j: int
    v: int


CROSS_GROUP = "cross-group"   # x_i lam[i',u] != x_j lam[j',v] when i != j mod m
SAME_GROUP = "same-group"     # x_i lam[i',u] != x_j lam[j',u] when i != j, i == j mod m
WITHIN_NODE = "within-node"   # lam[i',u] != lam[i',v], u != v


def validate_c2_conditions(params: C2Params) -> list[C2Violation]:
    F = params.field
    lam = params.base.lambdas
    n, n1, m, r = params.n, params.n_prime, params.m, params.r
    scaled = np.array([F.mul(int(params.xs[i]), lam[i % n1]) for i in range(n)], dtype=np.int64)
    out: list[C2Violation] = []
    for i in range(n):
        for j in range(i + 1, n):
            if i % m != j % m:
                for u in range(r):
                    for v in range(r):
                        if scaled[i, u] == scaled[j, v]:
                            out.append(C2Violation(CROSS_GROUP, i, u, j, v))
            else:
                for u in range(r):
                    if scaled[i, u] == scaled[j, u]:
                        out.append(C2Violation(SAME_GROUP, i, u, j, u))
    for i in range(n1):
        for u in range(r):
            for v in range(u + 1, r):
                if lam[i, u] == lam[i, v]:
                    out.append(C2Violation(WITHIN_NODE, i, u, i, v))
    return out


class C2Code(ArrayCode):
    construction = "C2"

    def __init__(self, params: C2Params):
        self.params = params
        self.base = params.base
        self.s = params.s
        self.n, self.k = params.n, params.k
        self.d = self.n - 1
        self.N = self.base.N
        self.field = params.field

    def _base_index(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} out of range")
        return i % self.base.n

    def scale(self, t: int, i: int) -> int:
        """``x_{t,i} = x_i**t``."""
        return self.field.pow(int(self.params.xs[i]), t)

    def congruent(self, i: int, j: int) -> bool:
        return i % self.base.n == j % self.base.n

    @lru_cache(maxsize=None)
    def parity_block(self, t: int, i: int) -> np.ndarray:
        return linalg.scale(self.field, self.scale(t, i), self.base.parity_block(t, self._base_index(i)))

    def select_matrix(self, i: int, t: int = 0) -> np.ndarray:
        return self.base.select_matrix(self._base_index(i), t)

    def repair_matrix(self, i: int, j: int) -> np.ndarray:
        if i == j:
            raise ValueError("a node is not its own helper")
        if self.congruent(i, j):
            return np.eye(self.N, dtype=np.int64)
        return self.base.repair_matrix(self._base_index(i), self._base_index(j))

    @lru_cache(maxsize=None)
    def interference(self, t: int, j: int, i: int) -> np.ndarray:
        i1, j1 = self._base_index(i), self._base_index(j)
        if i1 == j1:
            # whole node downloaded: its term is just the projected block
            B = linalg.mat_mul(self.field, self.base.select_matrix(i1, t), self.base.parity_block(t, j1))
        else:
            B = self.base.interference(t, j1, i1)
        return linalg.scale(self.field, self.scale(t, j), B)

    def partition(self, i: int) -> list[np.ndarray]:
        return self.base.partition(self._base_index(i))

    @property
    def epsilon(self) -> Fraction:
        return Fraction((self.s - 1) * (self.r - 1), self.n - 1)

    def expected_bandwidth(self) -> Fraction:
        # whole nodes from the s-1 congruent helpers, N/r symbols from the rest
        return Fraction((self.s - 1) * self.N) + Fraction((self.n - self.s) * self.N, self.r)


def build_c2(n_prime: int, k_prime: int, s: int, q: int | None = None, strict: bool = True,
             xs=None) -> C2Code:
    return C2Code(c2_params(n_prime, k_prime, s, q, strict=strict, xs=xs))


def c2_parity_block(params: C2Params, t: int, i: int) -> np.ndarray:
    return C2Code(params).parity_block(t, i)


def c2_repair(code: C2Code, codeword, i: int):
    """Repair node i from all n - 1 survivors."""
    from .codec import repair
    return repair(code, codeword, i, None)
