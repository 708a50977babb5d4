"""Encoding, any-k reconstruction, single-node repair and property checks.

Everything here works on any :class:`~msrcode.code.ArrayCode`.  Node
contents are arrays of shape ``(N,)`` or ``(N, S)``; the second form carries
``S`` independent stripes through one elimination.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .code import ArrayCode
from .errors import BadHelperSet, DimensionMismatch, InconsistentNodes, InsufficientNodes, Singular

MDS_EXHAUSTIVE_CAP = 100_000


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MSRC_THREADS", "1")))
    except ValueError:
        return 1


def fan_out(fn: Callable, items: Iterable) -> list:
    """``map`` with optional thread fan-out; results keep input order."""
    items = list(items)
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class Codeword:
    nodes: tuple[np.ndarray, ...]

    def __post_init__(self):
        shapes = {x.shape for x in self.nodes}
        if len(shapes) != 1:
            raise DimensionMismatch(f"nodes differ in shape: {shapes}")

    @property
    def n(self) -> int:
        return len(self.nodes)

    def stacked(self) -> np.ndarray:
        return np.concatenate(self.nodes, axis=0)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.nodes[i]

    def equals(self, other: "Codeword") -> bool:
        return self.n == other.n and all(np.array_equal(a, b) for a, b in zip(self.nodes, other.nodes))


def _split(stack: np.ndarray, count: int, N: int) -> list[np.ndarray]:
    return [stack[j * N:(j + 1) * N] for j in range(count)]


def _as_nodes(code: ArrayCode, data, count: int) -> list[np.ndarray]:
    nodes = [np.asarray(x, dtype=np.int64) for x in data]
    if len(nodes) != count:
        raise DimensionMismatch(f"expected {count} node vectors, got {len(nodes)}")
    for x in nodes:
        if x.shape[0] != code.N or x.ndim > 2:
            raise DimensionMismatch(f"node vector of shape {x.shape}, expected ({code.N},[S])")
    return nodes


def encode(code: ArrayCode, data) -> Codeword:
    """Systematic encoding: nodes 0..k-1 hold ``data``, the rest are parity."""
    nodes = _as_nodes(code, data, code.k)
    parity = linalg.mat_mul(code.field, code.generator, np.concatenate(nodes, axis=0))
    return Codeword(tuple(nodes) + tuple(_split(parity, code.r, code.N)))


def parity_residual(code: ArrayCode, codeword: Codeword) -> np.ndarray:
    """``A @ f`` stacked over all parity groups; zero exactly for codewords."""
    if codeword.n != code.n:
        raise DimensionMismatch(f"codeword has {codeword.n} nodes, code has {code.n}")
    return linalg.mat_mul(code.field, code.parity_matrix, codeword.stacked())


def is_codeword(code: ArrayCode, codeword: Codeword) -> bool:
    return not np.any(parity_residual(code, codeword))


def reconstruct(code: ArrayCode, available: Mapping[int, np.ndarray]) -> Codeword:
    """Rebuild every node from any k (or more) of them."""
    F, N, n = code.field, code.N, code.n
    if len(available) < code.k:
        raise InsufficientNodes(f"{len(available)} nodes available, need {code.k}")
    avail = {int(j): np.asarray(x, dtype=np.int64) for j, x in available.items()}
    if any(not 0 <= j < n for j in avail):
        raise IndexError("node index out of range")
    missing = [j for j in range(n) if j not in avail]
    # Pad the unknowns up to r so the system is square; padded nodes are re-derived and compared.
    extra = sorted(avail)[len(avail) - (code.r - len(missing)):] if len(missing) < code.r else []
    unknown = missing + extra
    known = [j for j in sorted(avail) if j not in extra]
    rhs = F.neg(linalg.mat_mul(F, code.columns(known), np.concatenate([avail[j] for j in known], axis=0)))
    sol = linalg.solve(F, code.columns(unknown), rhs)
    nodes = dict(avail)
    for j, x in zip(unknown, _split(sol, len(unknown), N)):
        if j in avail:
            if not np.array_equal(x, avail[j]):
                raise InconsistentNodes(f"node {j} disagrees with the other survivors")
        else:
            nodes[j] = x
    return Codeword(tuple(nodes[j] for j in range(n)))


@dataclass
class RepairReport:
    failed: int
    helpers: tuple[int, ...]
    recovered: np.ndarray
    downloads: dict[int, int]
    bandwidth: int
    optimal: Fraction
    byproducts: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.bandwidth) / self.optimal

    @property
    def epsilon(self) -> Fraction:
        return self.ratio - 1


@dataclass
class RepairSystem:
    """The linear system a repair solves, fixed by (failed node, helper set).

    Unknowns are node i's projections onto ``partition`` followed by
    ``R_{i,l} f_l`` for every bypassed node l.
    """

    code: ArrayCode
    failed: int
    helpers: tuple[int, ...]
    bypass: tuple[int, ...]
    matrix: np.ndarray
    partition: list[np.ndarray]

    def solve(self, downloads: Mapping[int, np.ndarray]) -> tuple[np.ndarray, dict[int, np.ndarray]]:
        code, F, i = self.code, self.code.field, self.failed
        rhs = None
        for j in self.helpers:
            blocks = np.vstack([code.interference(t, j, i) for t in range(code.r)])
            term = linalg.mat_mul(F, blocks, downloads[j])
            rhs = term if rhs is None else F.add(rhs, term)
        rhs = F.neg(rhs)
        sol = linalg.solve(F, self.matrix, rhs)
        recovered = np.zeros((code.N,) + sol.shape[1:], dtype=np.int64)
        pos = 0
        for rows in self.partition:
            recovered[rows] = sol[pos:pos + rows.size]
            pos += rows.size
        byproducts = {}
        for l in self.bypass:
            size = code.repair_matrix(i, l).shape[0]
            byproducts[l] = sol[pos:pos + size]
            pos += size
        return recovered, byproducts


def check_helpers(code: ArrayCode, i: int, helpers: Sequence[int] | None) -> tuple[int, ...]:
    if not 0 <= i < code.n:
        raise IndexError(f"node {i} out of range")
    if helpers is None:
        return code.default_helpers(i)
    hs = tuple(sorted({int(j) for j in helpers}))
    if len(hs) != len(helpers) or len(hs) != code.d or i in hs or any(not 0 <= j < code.n for j in hs):
        raise BadHelperSet(f"need {code.d} distinct helpers from [0,{code.n}) without node {i}, got {list(helpers)}")
    return hs


def repair_system(code: ArrayCode, i: int, helpers: Sequence[int] | None = None) -> RepairSystem:
    hs = check_helpers(code, i, helpers)
    bypass = tuple(j for j in range(code.n) if j != i and j not in hs)
    parts = code.partition(i)
    rows = []
    for t in range(code.r):
        SA = linalg.mat_mul(code.field, code.select_matrix(i, t), code.parity_block(t, i))
        rows.append([SA[:, p] for p in parts] + [code.interference(t, l, i) for l in bypass])
    M = linalg.assemble_blocks(rows)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"repair system for node {i} is {M.shape}, not square")
    return RepairSystem(code, i, hs, bypass, M, parts)


def repair(code: ArrayCode, codeword: Codeword | Mapping[int, np.ndarray], i: int,
           helpers: Sequence[int] | None = None) -> RepairReport:
    """Regenerate node i from ``R_{i,j} f_j`` downloaded from each helper j.

    Only the helpers' contents are read.  Raises :class:`Singular` when the
    code's coefficients break the conditions repair relies on.
    """
    system = repair_system(code, i, helpers)
    F = code.field
    downloads, counts = {}, {}
    for j in system.helpers:
        R = code.repair_matrix(i, j)
        downloads[j] = linalg.mat_mul(F, R, codeword[j])
        counts[j] = R.shape[0]
    recovered, byproducts = system.solve(downloads)
    return RepairReport(
        failed=i,
        helpers=system.helpers,
        recovered=recovered,
        downloads=counts,
        bandwidth=sum(counts.values()),
        optimal=code.gamma_optimal,
        byproducts=byproducts,
    )


# -- property checks ---------------------------------------------------------

@dataclass
class MDSReport:
    checked: int
    total: int
    failures: list[tuple[int, ...]]

    @property
    def exhaustive(self) -> bool:
        return self.checked == self.total

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_mds(code: ArrayCode, cap: int = MDS_EXHAUSTIVE_CAP, seed: int = 0) -> MDSReport:
    """Check that every r-subset of column blocks is non-singular.

    Above ``cap`` subsets, a uniform random sample of ``cap`` subsets is checked.
    """
    n, r = code.n, code.r
    total = math.comb(n, r)
    if total <= cap:
        subsets = list(itertools.combinations(range(n), r))
    else:
        rng = np.random.default_rng(seed)
        seen: set[tuple[int, ...]] = set()
        while len(seen) < cap:
            seen.add(tuple(sorted(rng.choice(n, size=r, replace=False).tolist())))
        subsets = sorted(seen)
    ok = fan_out(lambda J: linalg.is_nonsingular(code.field, code.columns(J)), subsets)
    return MDSReport(len(subsets), total, [J for J, good in zip(subsets, ok) if not good])


def factorization_failures(code: ArrayCode) -> list[tuple[int, int, int]]:
    """(t, j, i) triples where ``S_{i,t} A_{t,j} != B R_{i,j}``."""
    F, bad = code.field, []
    for i in range(code.n):
        for j in range(code.n):
            if i == j:
                continue
            R = code.repair_matrix(i, j)
            for t in range(code.r):
                lhs = linalg.mat_mul(F, code.select_matrix(i, t), code.parity_block(t, j))
                rhs = linalg.mat_mul(F, code.interference(t, j, i), R)
                if not np.array_equal(lhs, rhs):
                    bad.append((t, j, i))
    return bad


@dataclass
class SweepReport:
    checked: int
    total: int
    failures: list[tuple[int, tuple[int, ...], str]]

    @property
    def ok(self) -> bool:
        return not self.failures


def helper_sets(code: ArrayCode, i: int) -> Iterable[tuple[int, ...]]:
    others = [j for j in range(code.n) if j != i]
    return itertools.combinations(others, code.d)


def repair_sweep(code: ArrayCode, codeword: Codeword | None = None, cap: int = 5000,
                 seed: int = 0) -> SweepReport:
    """Repair every node from every helper set (first ``cap`` pairs) and compare.

    Each repair must return the original content and download exactly
    ``code.expected_bandwidth()`` symbols.
    """
    total = code.n * math.comb(code.n - 1, code.d)
    pairs = list(itertools.islice(
        ((i, hs) for i in range(code.n) for hs in helper_sets(code, i)), cap))
    if codeword is None:
        rng = np.random.default_rng(seed)
        try:
            codeword = encode(code, [code.field.random(code.N, rng) for _ in range(code.k)])
        except Singular:
            return SweepReport(len(pairs), total, [(i, hs, "cannot encode") for i, hs in pairs])
    expected = expected_bandwidth(code)

    def run(pair):
        i, hs = pair
        try:
            rep = repair(code, codeword, i, hs)
        except Singular:
            return "singular repair system"
        if not np.array_equal(rep.recovered, codeword[i]):
            return "wrong content"
        if rep.bandwidth != expected:
            return f"bandwidth {rep.bandwidth} != {expected}"
        return None

    results = fan_out(run, pairs)
    return SweepReport(len(pairs), total, [(i, hs, msg) for (i, hs), msg in zip(pairs, results) if msg])


def expected_bandwidth(code: ArrayCode) -> Fraction:
    fn = getattr(code, "expected_bandwidth", None)
    return fn() if fn is not None else code.gamma_optimal


# -- shortening --------------------------------------------------------------

class ShortenedCode(ArrayCode):
    """An (n, k) view of an (n+1, k+1) code with base node 0 pinned to zero.

    View node v is base node v + 1.  A pinned node contributes nothing to any
    parity group, so dropping its column blocks is exactly the shortened code;
    in repair it acts as a free helper.
    """

    def __init__(self, base: ArrayCode):
        if base.k < 2:
            raise ValueError("base code needs k >= 2 to shorten")
        self.base = base
        self.n, self.k, self.d, self.N = base.n - 1, base.k - 1, base.d - 1, base.N
        self.field = base.field
        self.construction = base.construction

    def parity_block(self, t, i):
        return self.base.parity_block(t, i + 1)

    def select_matrix(self, i, t=0):
        return self.base.select_matrix(i + 1, t)

    def repair_matrix(self, i, j):
        return self.base.repair_matrix(i + 1, j + 1)

    def interference(self, t, j, i):
        return self.base.interference(t, j + 1, i + 1)

    def partition(self, i):
        return self.base.partition(i + 1)

    def expected_bandwidth(self) -> Fraction:
        return self.gamma_optimal

    def lift(self, codeword: Codeword) -> Codeword:
        """The base codeword with the pinned node restored."""
        zero = np.zeros_like(codeword[0])
        return Codeword((zero,) + codeword.nodes)


def shorten(base: ArrayCode) -> ShortenedCode:
    return ShortenedCode(base)
