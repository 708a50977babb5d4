"""The (n = 2m, k) MSR code with repair degree d = k + w - 1 and N = w**m.

Nodes ``i < m`` carry upper-triangular blocks with off-diagonal couplings
inside the partition of digit i; nodes ``i >= m`` carry diagonal blocks keyed
on digit ``i - m``.  Repair of node i downloads ``N / w`` symbols from each of
``d`` helpers, which meets the cut-set bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .code import ArrayCode
from .errors import BadDegree, FieldTooSmall, InvalidCoefficients, OddLength
from .gf import Field, c1_threshold, make_field, next_prime_power
from .indexing import WaryContext


def validate_parameters(n: int, k: int, d: int) -> tuple[int, int, int]:
    """Check (n, k, d) and return ``(r, w, m)``."""
    if n % 2:
        raise OddLength(f"n={n} is odd; shorten an ({n + 1},{k + 1}) code with d={d + 1}")
    if not 0 < k < d <= n - 1:
        raise BadDegree(f"need 0 < k < d <= n-1, got n={n}, k={k}, d={d}")
    r, w = n - k, d - k + 1
    return r, w, n // 2


@dataclass(frozen=True)
class C1Params:
    n: int
    k: int
    d: int
    r: int
    w: int
    m: int
    N: int
    field: Field

    @property
    def threshold(self) -> int:
        return c1_threshold(self.m, self.w, self.r)

    @property
    def ctx(self) -> WaryContext:
        return WaryContext(self.w, self.m)


def c1_params(n: int, k: int, d: int, q_override: int | None = None,
              strict: bool = True) -> C1Params:
    r, w, m = validate_parameters(n, k, d)
    thr = c1_threshold(m, w, r)
    if q_override is None:
        field = make_field(next_prime_power(thr))
    else:
        field = make_field(q_override)
        if strict and field.q <= thr:
            raise FieldTooSmall(f"q={field.q} must exceed {thr} for (n,k,d)=({n},{k},{d})")
    return C1Params(n, k, d, r, w, m, w ** m, field)


def lambda_exponents(params: C1Params) -> np.ndarray:
    """Exponent of c for every coefficient, shape (n, w)."""
    m, w, r = params.m, params.w, params.r
    exps = np.zeros((params.n, w), dtype=np.int64)
    for i in range(m):
        for u in range(w):
            if w == r:
                exps[i, u] = i * w + u
                exps[i + m, u] = i * w + (u + 1) % r
            elif w == 2:
                exps[i, u] = i * (w + 2) + u
                exps[i + m, u] = i * (w + 2) + w + u
            else:
                exps[i, u] = i * (w + 1) + u
                exps[i + m, u] = i * (w + 1) + (w if u == 0 else u % (w - 1) + 1)
    return exps


def assign_lambdas(params: C1Params) -> np.ndarray:
    """Coefficient table ``lam[i, u]`` (shape n x w) as field elements."""
    table = np.asarray(params.field.exp(lambda_exponents(params)), dtype=np.int64)
    table.setflags(write=False)
    return table


class Violation(NamedTuple):
    condition: str
    i: int
    u: int
    j: int
    v: int


# Names of the distinctness conditions checked by validate_lambdas.
WITHIN_NODE = "within-node"        # lam[i,u] != lam[i,v], u != v
ACROSS_GROUPS = "across-groups"    # lam[i,u] != lam[j,v], i != j mod m
PAIRED_NODES = "paired-nodes"      # lam[i,u] != lam[i+m,u]
PAIRED_REPAIR = "paired-repair"    # lam[i,0] != lam[i+m,u], lam[i,u] != lam[i+m,0]; only when w < r


def validate_lambdas(params: C1Params, table) -> list[Violation]:
    """All violated distinctness conditions, each with an (i, u, j, v) witness.

    ``across-groups`` is the single condition that both the MDS property and
    repair need; the other three are reported separately.
    """
    lam = np.asarray(table)
    n, m, w = params.n, params.m, params.w
    if lam.shape != (n, w):
        raise ValueError(f"table shape {lam.shape} != {(n, w)}")
    out: list[Violation] = []
    for i in range(n):
        for u in range(w):
            for v in range(u + 1, w):
                if lam[i, u] == lam[i, v]:
                    out.append(Violation(WITHIN_NODE, i, u, i, v))
    for i in range(n):
        for j in range(i + 1, n):
            if i % m == j % m:
                continue
            for u in range(w):
                for v in range(w):
                    if lam[i, u] == lam[j, v]:
                        out.append(Violation(ACROSS_GROUPS, i, u, j, v))
    for i in range(m):
        for u in range(w):
            if lam[i, u] == lam[i + m, u]:
                out.append(Violation(PAIRED_NODES, i, u, i + m, u))
    if w < params.r:
        for i in range(m):
            for u in range(w):
                if lam[i, 0] == lam[i + m, u]:
                    out.append(Violation(PAIRED_REPAIR, i, 0, i + m, u))
                if u and lam[i, u] == lam[i + m, 0]:
                    out.append(Violation(PAIRED_REPAIR, i, u, i + m, 0))
    return out


def _coupled_block(F: Field, ctx: WaryContext, lam_row, t: int, pos: int) -> np.ndarray:
    """Upper-triangular block: diagonal lam[digit_pos(a)]**t, plus
    (lam[0]**t - lam[u]**t) at (a, a(pos, u)) for rows with digit_pos(a) == 0."""
    N = ctx.N
    powers = np.asarray(F.pow(np.asarray(lam_row, dtype=np.int64), t), dtype=np.int64)
    a = np.arange(N, dtype=np.int64)
    dig = ctx.digit(a, pos)
    M = np.zeros((N, N), dtype=np.int64)
    M[a, a] = powers[dig]
    rows = a[dig == 0]
    step = ctx.w ** (ctx.m - 1 - pos)
    for u in range(1, ctx.w):
        M[rows, rows + u * step] = F.sub(powers[0], powers[u])
    return M


def _diagonal_block(F: Field, ctx: WaryContext, lam_row, t: int, pos: int) -> np.ndarray:
    powers = np.asarray(F.pow(np.asarray(lam_row, dtype=np.int64), t), dtype=np.int64)
    a = np.arange(ctx.N, dtype=np.int64)
    return np.diag(powers[ctx.digit(a, pos)])


def parity_block(params: C1Params, table, t: int, i: int) -> np.ndarray:
    """The N x N block ``A_{t,i}``."""
    if not (0 <= t < params.r and 0 <= i < params.n):
        raise IndexError(f"block ({t}, {i}) outside {params.r} x {params.n}")
    lam = np.asarray(table)
    if i < params.m:
        return _coupled_block(params.field, params.ctx, lam[i], t, i)
    return _diagonal_block(params.field, params.ctx, lam[i], t, i - params.m)


def select_matrix(params: C1Params, i: int) -> np.ndarray:
    """``S_{i,t}`` (identical for every t); also the repair matrix ``R_{i,j}``."""
    ctx = params.ctx
    if i < params.m:
        return ctx.v_matrix(i, 0)
    return sum(ctx.v_matrix(i - params.m, u) for u in range(params.w))


def repair_matrix(params: C1Params, i: int, j: int) -> np.ndarray:
    if i == j:
        raise ValueError("a node is not its own helper")
    return select_matrix(params, i)


def b_matrix(params: C1Params, table, t: int, j: int, i: int) -> np.ndarray:
    """``B_{t,j,i}`` with ``S_{i,t} A_{t,j} = B_{t,j,i} R_{i,j}`` for j != i.

    Built on the (m-1)-digit row indices of the select matrix: node j's digit
    moves down one place when it sits after the failed node's digit.
    """
    if i == j:
        raise ValueError("B is defined for j != i only")
    m = params.m
    lam = np.asarray(table)
    i_, j_ = i % m, j % m
    F = params.field
    sub = params.ctx.sub_context()
    if i_ == j_:
        return np.eye(sub.N, dtype=np.int64) * F.pow(int(lam[j, 0]), t)
    pos = j_ if j_ < i_ else j_ - 1
    if j < m:
        return _coupled_block(F, sub, lam[j], t, pos)
    return _diagonal_block(F, sub, lam[j], t, pos)


class C1Code(ArrayCode):
    """The C1 code as a codec-ready object."""

    construction = "C1"

    def __init__(self, params: C1Params, lambdas=None):
        self.params = params
        self.n, self.k, self.d, self.N = params.n, params.k, params.d, params.N
        self.field = params.field
        lam = assign_lambdas(params) if lambdas is None else np.array(lambdas, dtype=np.int64)
        lam.setflags(write=False)
        self.lambdas = lam

    @property
    def w(self) -> int:
        return self.params.w

    @property
    def m(self) -> int:
        return self.params.m

    def violations(self) -> list[Violation]:
        return validate_lambdas(self.params, self.lambdas)

    @lru_cache(maxsize=None)
    def parity_block(self, t: int, i: int) -> np.ndarray:
        return parity_block(self.params, self.lambdas, t, i)

    @lru_cache(maxsize=None)
    def _select(self, i: int) -> np.ndarray:
        return select_matrix(self.params, i)

    def select_matrix(self, i: int, t: int = 0) -> np.ndarray:
        return self._select(i)

    def repair_matrix(self, i: int, j: int) -> np.ndarray:
        if i == j:
            raise ValueError("a node is not its own helper")
        return self._select(i)

    @lru_cache(maxsize=None)
    def interference(self, t: int, j: int, i: int) -> np.ndarray:
        return b_matrix(self.params, self.lambdas, t, j, i)

    def partition(self, i: int) -> list[np.ndarray]:
        return [self.params.ctx.v_row_map(i % self.m, u) for u in range(self.w)]

    @cached_property
    def lambda_exponents(self) -> np.ndarray:
        return np.asarray(self.field.log(self.lambdas))


def build_c1(n: int, k: int, d: int, q: int | None = None, lambdas=None,
             strict: bool = True) -> C1Code:
    """Construct the code; ``strict`` rejects undersized fields and invalid tables."""
    params = c1_params(n, k, d, q, strict=strict)
    code = C1Code(params, lambdas)
    if strict:
        bad = code.violations()
        if bad:
            raise InvalidCoefficients(f"coefficient table violates {len(bad)} conditions, first {bad[0]}")
    return code
