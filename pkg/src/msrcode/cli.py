"""``msrcode`` command line: info, encode, decode, repair, verify.

Exit codes: 0 success, 1 property failure, 2 usage, 3 I/O, 4 integrity.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import codec
from .c1 import C1Code, build_c1
from .c2 import C2Code, build_c2, validate_c2_conditions
from .code import ArrayCode
from .container import Container, code_for, pack_bytes, unpack_bytes
from .errors import ContainerError, MSRError
from .gf import is_prime, smallest_valid_q

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_INTEGRITY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class IntegrityError(Exception):
    pass


def _base_params(args) -> tuple[int, int, int]:
    """(n, k, d) of the even-length code actually constructed."""
    n, k, d = args.n, args.k, args.d
    if n % 2:
        if args.s > 1:
            raise UsageError("C2 needs an even base length n'")
        if not args.shorten:
            raise UsageError(f"n={n} is odd; pass --shorten to derive it from ({n + 1},{k + 1},d={d + 1})")
        return n + 1, k + 1, d + 1
    return n, k, d


def build_code(args, mode: str = "symbol", strict: bool = True) -> ArrayCode:
    n, k, d = _base_params(args)
    construction = "C2" if args.s > 1 else "C1"
    if construction == "C2" and d != n - 1:
        raise UsageError(f"C2 needs d' = n' - 1 = {n - 1}, got d={d}")
    q = args.q
    if q is None:
        q = smallest_valid_q(construction, n, k, d, args.s, mode)
    elif mode == "byte" and (not is_prime(q) or q < 257):
        raise UsageError(f"byte mode needs a prime q >= 257, got {q}")
    if construction == "C2":
        return build_c2(n, k, args.s, q, strict=strict)
    code = build_c1(n, k, d, q, strict=strict)
    return codec.shorten(code) if args.n % 2 else code


def _fmt_ratio(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _describe(code: ArrayCode) -> list[str]:
    lines = [f"construction: {code.construction}" + (" (shortened)" if isinstance(code, codec.ShortenedCode) else "")]
    lines.append(f"n={code.n} k={code.k} d={code.d} r={code.r}")
    base = code.base if isinstance(code, (codec.ShortenedCode, C2Code)) else code
    if isinstance(base, C1Code):
        lines.append(f"w={base.w} m={base.m}")
    lines.append(f"N={code.N}")
    lines.append(f"q={code.field.q} (p={code.field.p}, e={code.field.e}, c={code.field.c})")
    lines.append(f"gamma_opt={_fmt_ratio(code.gamma_optimal)}")
    if isinstance(code, C2Code):
        lines.append(f"s={code.s} eps={_fmt_ratio(code.epsilon)} bandwidth={_fmt_ratio(code.expected_bandwidth())}")
    return lines


def cmd_info(args) -> int:
    code = build_code(args)
    print("\n".join(_describe(code)))
    return EXIT_OK


def _header_fields(code: ArrayCode) -> dict:
    return dict(construction=code.construction, p=code.field.p, e=code.field.e,
                n=code.n, k=code.k, d=code.d, s=getattr(code, "s", 1))


def cmd_encode(args) -> int:
    code = build_code(args, mode="byte")
    with open(args.input, "rb") as fh:
        data = fh.read()
    nodes = codec.encode(code, pack_bytes(data, code.k, code.N)).nodes
    Container(original_length=len(data), nodes=list(nodes), **_header_fields(code)).write(args.output)
    print(f"encoded {len(data)} bytes into {nodes[0].shape[1]} shards of {code.k}x{code.N} symbols over GF({code.field.q})")
    return EXIT_OK


def cmd_decode(args) -> int:
    box = Container.read(args.container)
    code = code_for(box)
    avail = args.available if args.available is not None else list(range(box.n))
    if len(set(avail)) < code.k:
        raise UsageError(f"{len(set(avail))} nodes listed, at least k={code.k} needed")
    if any(not 0 <= j < box.n for j in avail):
        raise UsageError("available node index out of range")
    if box.shards == 0:
        data = b""
    else:
        cw = codec.reconstruct(code, {j: box.nodes[j] for j in avail})
        data = unpack_bytes(list(cw.nodes[:code.k]), box.original_length)
    with open(args.output, "wb") as fh:
        fh.write(data)
    print(f"decoded {len(data)} bytes from nodes {sorted(set(avail))}")
    return EXIT_OK


def cmd_repair(args) -> int:
    box = Container.read(args.container)
    code = code_for(box)
    i = args.fail
    if not 0 <= i < box.n:
        raise UsageError(f"node {i} out of range")
    try:
        helpers = codec.check_helpers(code, i, args.helpers)
    except MSRError as exc:
        raise UsageError(str(exc)) from exc
    survivors = {j: box.nodes[j] for j in range(box.n) if j != i}
    report = codec.repair(code, survivors, i, helpers)
    stored = box.nodes[i]
    if args.check and not np.array_equal(report.recovered, stored):
        raise IntegrityError(f"recovered node {i} differs from the stored copy")
    box.nodes[i] = report.recovered
    box.write(args.output or args.container)
    for j, cnt in report.downloads.items():
        print(f"helper {j}: {cnt} symbols per shard")
    print(f"total={report.bandwidth} gamma_opt={_fmt_ratio(report.optimal)} "
          f"ratio={_fmt_ratio(report.ratio)} ({float(report.ratio):.3f})")
    return EXIT_OK


def _corrupt(code: ArrayCode) -> ArrayCode:
    """Copy of ``code`` with lam[0,0] set equal to lam[m,0]."""
    if isinstance(code, C2Code):
        from .c2 import C2Params
        base = _corrupt(code.base)
        return C2Code(C2Params(base, code.s, code.params.xs))
    if isinstance(code, codec.ShortenedCode):
        return codec.shorten(_corrupt(code.base))
    lam = np.array(code.lambdas)
    lam[0, 0] = lam[code.m, 0]
    return C1Code(code.params, lam)


def run_checks(code: ArrayCode, sweep_cap: int = 5000) -> tuple[bool, list[str]]:
    lines = []
    base = code.base if isinstance(code, codec.ShortenedCode) else code
    if isinstance(base, C2Code):
        bad = validate_c2_conditions(base.params)
    else:
        bad = base.violations()
    lines.append(f"coefficients: {len(bad)} violations" + (f", first {tuple(bad[0])}" if bad else ""))
    mds = codec.verify_mds(code)
    lines.append(f"mds: {mds.checked - len(mds.failures)}/{mds.checked} subsets"
                 + ("" if mds.exhaustive else f" (sampled of {mds.total})")
                 + (f", first failure {mds.failures[0]}" if mds.failures else ""))
    fac = codec.factorization_failures(code)
    lines.append(f"factorization: {len(fac)} mismatches")
    sweep = codec.repair_sweep(code, cap=sweep_cap)
    lines.append(f"repair: {sweep.checked - len(sweep.failures)}/{sweep.checked} repairs"
                 + ("" if sweep.checked == sweep.total else f" (of {sweep.total})")
                 + (f", first failure {sweep.failures[0]}" if sweep.failures else ""))
    ok = not bad and mds.ok and not fac and sweep.ok
    return ok, lines


def cmd_verify(args) -> int:
    if args.container:
        box = Container.read(args.container)
        code = code_for(box)
    else:
        if args.n is None or args.k is None or args.d is None:
            raise UsageError("give either --container or n k d")
        code = build_code(args)
    if args.corrupt_lambda:
        code = _corrupt(code)
    ok, lines = run_checks(code, args.sweep_cap)
    if args.container:
        residual = codec.parity_residual(code, codec.Codeword(tuple(box.nodes)))
        bad = np.flatnonzero(residual.reshape(residual.shape[0], -1).any(axis=0))
        lines.append(f"container: {box.shards - bad.size}/{box.shards} shards satisfy the parity checks")
        ok = ok and bad.size == 0
    print("\n".join(lines))
    print("OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def _add_code_args(p: argparse.ArgumentParser, optional: bool = False) -> None:
    nargs = "?" if optional else None
    p.add_argument("n", type=int, nargs=nargs, help="code length (base length n' with --s)")
    p.add_argument("k", type=int, nargs=nargs)
    p.add_argument("d", type=int, nargs=nargs, help="repair degree")
    p.add_argument("--s", type=int, default=1, help="replication factor for the transformed code")
    p.add_argument("--q", type=int, default=None, help="field order override")
    p.add_argument("--shorten", action="store_true", help="allow odd n via shortening")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="msrcode", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("info", help="print the parameter sheet of a code")
    _add_code_args(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("encode", help="encode a file into a container")
    p.add_argument("input")
    p.add_argument("output")
    _add_code_args(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="rebuild the original file from any k nodes")
    p.add_argument("container")
    p.add_argument("output")
    p.add_argument("--available", type=int, nargs="+", default=None)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("repair", help="regenerate one node from its helpers")
    p.add_argument("container")
    p.add_argument("--fail", type=int, required=True)
    p.add_argument("--helpers", type=int, nargs="+", default=None)
    p.add_argument("--output", default=None, help="defaults to rewriting the input")
    p.add_argument("--check", action="store_true", help="compare against the stored node (exit 4 on mismatch)")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("verify", help="check MDS, factorization and repair properties")
    _add_code_args(p, optional=True)
    p.add_argument("--container", default=None)
    p.add_argument("--corrupt-lambda", action="store_true", help="debug: break one coefficient first")
    p.add_argument("--sweep-cap", type=int, default=5000)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ContainerError as exc:
        print(f"bad container: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, MSRError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
