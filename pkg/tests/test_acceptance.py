"""Acceptance criteria, one test each; conftest prints a PASS/FAIL line per test."""
import itertools
import time
from fractions import Fraction

import numpy as np
import pytest

from golden import EX634_BLOCKS, EX634_LAMBDA_EXP, render
from msrcode import cli, codec, linalg
from msrcode.c1 import C1Code, b_matrix, build_c1
from msrcode.c2 import build_c2
from msrcode.container import Container
from msrcode.gf import c1_threshold, c2_threshold, make_field, smallest_valid_q


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


def _codeword(code, seed=0):
    rng = np.random.default_rng(seed)
    return codec.encode(code, [code.field.random(code.N, rng) for _ in range(code.k)])


def test_criterion_01_golden_vectors():
    with Timer(1.0):
        code = build_c1(6, 3, 4, 13)
        F = code.field
        assert F.c == 2
        assert code.lambda_exponents.tolist() == EX634_LAMBDA_EXP
        assert code.lambdas.tolist() == [[F.pow(2, e) for e in row] for row in EX634_LAMBDA_EXP]
        for i, rows in EX634_BLOCKS.items():
            for t in range(3):
                assert np.array_equal(code.parity_block(t, i), render(F, code.lambdas[i], rows, t)), (t, i)


def test_criterion_02_mds_exhaustive():
    cases = [(build_c1, (6, 3, 4), 20), (build_c1, (6, 3, 5), 20), (build_c1, (4, 2, 3), 6),
             (build_c1, (8, 4, 5), 70), (build_c2, (4, 2, 2), 28)]
    with Timer(10.0):
        for make, args, subsets in cases:
            rep = codec.verify_mds(make(*args))
            assert rep.exhaustive and rep.checked == subsets, args
            assert rep.failures == [], args


def test_criterion_03_repair_optimality():
    with Timer(10.0):
        code = build_c1(6, 3, 4)
        cw = _codeword(code)
        pairs = 0
        for i in range(6):
            sets = list(codec.helper_sets(code, i))
            assert len(sets) == 5
            for hs in sets:
                rep = codec.repair(code, cw, i, hs)
                assert np.array_equal(rep.recovered, cw[i])
                assert rep.bandwidth == 16 == code.gamma_optimal == Fraction(code.d * code.N, code.d - code.k + 1)
                pairs += 1
        assert pairs == 30
        code = build_c1(6, 3, 5)
        assert code.N == 27
        cw = _codeword(code)
        for i in range(6):
            rep = codec.repair(code, cw, i)
            assert np.array_equal(rep.recovered, cw[i])
            assert rep.bandwidth == 45 == code.gamma_optimal


def test_criterion_04_factorization():
    with Timer(5.0):
        for args in [(6, 3, 4), (6, 3, 5)]:
            code = build_c1(*args)
            F, ctx, m, w = code.field, code.params.ctx, code.m, code.w
            for i, j in itertools.permutations(range(code.n), 2):
                for t in range(code.r):
                    lhs = linalg.mat_mul(F, code.select_matrix(i, t), code.parity_block(t, j))
                    rhs = linalg.mat_mul(F, b_matrix(code.params, code.lambdas, t, j, i), code.repair_matrix(i, j))
                    assert np.array_equal(lhs, rhs), (args, t, j, i)
            for i in range(code.n):
                for t in range(code.r):
                    lam = [F.pow(int(x), t) for x in code.lambdas[i]]
                    coefs = ([lam[0]] + [F.sub(lam[0], lam[u]) for u in range(1, w)]) if i < m else lam
                    want = np.zeros((code.N // w, code.N), dtype=np.int64)
                    for u, cf in enumerate(coefs):
                        want = F.add(want, linalg.scale(F, cf, ctx.v_matrix(i % m, u)))
                    got = linalg.mat_mul(F, code.select_matrix(i, t), code.parity_block(t, i))
                    assert np.array_equal(got, want), (args, t, i)


def test_criterion_05_structural_invariants():
    for args in [(6, 3, 4), (6, 3, 5), (4, 2, 3), (8, 4, 5), (8, 4, 6), (10, 5, 8)]:
        code = build_c1(*args)
        F = code.field
        for i in range(code.n):
            d1 = np.diag(code.parity_block(1, i))
            for t in range(code.r):
                A = code.parity_block(t, i)
                assert linalg.is_upper_triangular(A), (args, t, i)
                assert np.array_equal(np.diag(A), F.pow(d1, t)), (args, t, i)
                for j in range(code.n):
                    if j != i:
                        assert linalg.is_upper_triangular(b_matrix(code.params, code.lambdas, t, j, i))


def test_criterion_06_transformed_code_bandwidth():
    with Timer(1.0):
        code = build_c2(4, 2, 2)
        assert (code.n, code.k, code.N) == (8, 6, 4)
        cw = _codeword(code)
        for i in range(8):
            rep = codec.repair(code, cw, i)
            assert np.array_equal(rep.recovered, cw[i])
            assert rep.bandwidth == 16
            assert rep.optimal == 14
            assert rep.ratio == Fraction(8, 7) == 1 + Fraction((code.s - 1) * (code.r - 1), code.n - 1)


def test_criterion_07_field_thresholds():
    assert c1_threshold(3, 2, 3) == 12 and smallest_valid_q("C1", 6, 3, 4) == 13
    assert c2_threshold(2, 2, 2) == 8 and smallest_valid_q("C2", 4, 2, 3, 2) == 9
    assert c1_threshold(5, 2, 3) == 20 and smallest_valid_q("C1", 10, 7, 8) == 23
    assert c1_threshold(5, 4, 5) == 25 and smallest_valid_q("C1", 10, 5, 8) == 27
    assert c1_threshold(5, 3, 3) == 15 and smallest_valid_q("C1", 10, 7, 9) == 16
    for args in [(10, 7, 8), (10, 5, 8), (10, 7, 9)]:
        assert build_c1(*args).violations() == []


def test_criterion_08_shortening():
    with Timer(5.0):
        short = codec.shorten(build_c1(6, 4, 5))
        assert (short.n, short.k, short.d) == (5, 3, 4)
        rep = codec.verify_mds(short)
        assert rep.exhaustive and rep.checked == 10 and rep.ok
        cw = _codeword(short)
        for i in range(5):
            for hs in codec.helper_sets(short, i):
                r = codec.repair(short, cw, i, hs)
                assert np.array_equal(r.recovered, cw[i])
                assert r.bandwidth == short.gamma_optimal == Fraction(short.d * short.N, short.d - short.k + 1)


def test_criterion_09_end_to_end(tmp_path):
    with Timer(30.0):
        src = tmp_path / "blob.bin"
        src.write_bytes(np.random.default_rng(9).integers(0, 256, 64 * 1024, dtype=np.uint8).tobytes())
        box = tmp_path / "blob.msrc"
        assert cli.main(["encode", str(src), str(box), "6", "3", "4"]) == 0
        assert Container.read(box).q == 257
        for lost in itertools.combinations(range(6), 3):
            kept = [str(j) for j in range(6) if j not in lost]
            out = tmp_path / "out.bin"
            assert cli.main(["decode", str(box), str(out), "--available", *kept]) == 0
            assert out.read_bytes() == src.read_bytes(), lost
        original = box.read_bytes()
        for i in range(6):
            damaged = Container.read(box)
            damaged.nodes[i] = np.zeros_like(damaged.nodes[i])
            path = tmp_path / f"fail{i}.msrc"
            damaged.write(path)
            assert cli.main(["repair", str(path), "--fail", str(i)]) == 0
            assert path.read_bytes() == original, i


def test_criterion_10_negative_controls():
    code = build_c1(6, 3, 4)
    m = code.m
    lam = np.array(code.lambdas)
    lam[0, 0] = lam[m, 0]  # paired nodes share a coefficient
    mds = codec.verify_mds(C1Code(code.params, lam))
    assert len(mds.failures) >= 1
    lam = np.array(code.lambdas)
    lam[0, 1] = lam[0, 0]  # one node reuses a coefficient
    sweep = codec.repair_sweep(C1Code(code.params, lam))
    assert len(sweep.failures) >= 1


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
