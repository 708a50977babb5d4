import os
import subprocess
import sys

import numpy as np
import pytest

from msrcode import cli
from msrcode.container import HEADER, Container, code_for, pack_bytes, unpack_bytes
from msrcode.errors import ContainerError


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def payload(tmp_path):
    path = tmp_path / "in.bin"
    path.write_bytes(np.random.default_rng(5).integers(0, 256, 1024, dtype=np.uint8).tobytes())
    return path


@pytest.fixture
def encoded(tmp_path, payload):
    out = tmp_path / "data.msrc"
    assert run("encode", payload, out, 6, 3, 4) == 0
    return out


def test_pack_round_trip():
    data = bytes(range(256)) * 3 + b"xyz"
    nodes = pack_bytes(data, 3, 8)
    assert len(nodes) == 3 and nodes[0].shape == (8, 33)
    assert unpack_bytes(nodes, len(data)) == data


def test_header_round_trip(encoded):
    box = Container.read(encoded)
    assert (box.construction, box.p, box.e, box.n, box.k, box.d, box.s) == ("C1", 257, 1, 6, 3, 4, 1)
    assert box.original_length == 1024 and box.shards == 43 and box.N == 8
    assert Container.from_bytes(box.to_bytes()).to_bytes() == encoded.read_bytes()
    assert len(encoded.read_bytes()) == HEADER.size + 2 * 6 * 8 * 43


def test_bad_containers(encoded, tmp_path):
    blob = encoded.read_bytes()
    for bad in (b"XXXX" + blob[4:], blob[:4] + b"\x09" + blob[5:], blob[:-1], blob[:10]):
        with pytest.raises(ContainerError):
            Container.from_bytes(bad)
    broken = tmp_path / "broken.msrc"
    broken.write_bytes(blob[:-2])
    assert run("decode", broken, tmp_path / "o") == 3
    assert run("repair", broken, "--fail", 0) == 3


def test_info(capsys):
    assert run("info", 6, 3, 4) == 0
    out = capsys.readouterr().out
    assert "N=8" in out and "q=13" in out and "gamma_opt=16" in out
    assert run("info", 4, 2, 3, "--s", 2) == 0
    assert "eps=1/7" in capsys.readouterr().out
    assert run("info", 5, 3, 4) == 2
    assert run("info", 5, 3, 4, "--shorten") == 0
    assert "shortened" in capsys.readouterr().out


def test_decode_any_k(encoded, payload, tmp_path):
    for avail in ([0, 4, 5], [3, 4, 5], [1, 2, 3], list(range(6))):
        out = tmp_path / "out.bin"
        assert run("decode", encoded, out, "--available", *avail) == 0
        assert out.read_bytes() == payload.read_bytes()
    assert run("decode", encoded, tmp_path / "x", "--available", 0, 1) == 2


def test_repair_every_node(encoded, tmp_path, capsys):
    original = encoded.read_bytes()
    for i in range(6):
        box = Container.read(encoded)
        box.nodes[i] = np.zeros_like(box.nodes[i])  # wipe the node, repair must not read it
        damaged = tmp_path / f"damaged{i}.msrc"
        box.write(damaged)
        assert run("repair", damaged, "--fail", i) == 0
        assert damaged.read_bytes() == original
    out = capsys.readouterr().out
    assert "total=16" in out and "ratio=1 " in out


def test_repair_check_and_helpers(encoded, tmp_path, capsys):
    assert run("repair", encoded, "--fail", 3, "--helpers", 1, 2, 4, 5, "--check",
               "--output", tmp_path / "r.msrc") == 0
    assert "helper 1: 4 symbols per shard" in capsys.readouterr().out
    box = Container.read(encoded)
    box.nodes[3][0, 0] = (box.nodes[3][0, 0] + 1) % 257
    tampered = tmp_path / "t.msrc"
    box.write(tampered)
    assert run("repair", tampered, "--fail", 3, "--check") == 4
    assert run("repair", encoded, "--fail", 3, "--helpers", 1, 2) == 2
    assert run("repair", encoded, "--fail", 9) == 2


def test_empty_file(tmp_path):
    src, box, out = tmp_path / "e", tmp_path / "e.msrc", tmp_path / "e.out"
    src.write_bytes(b"")
    assert run("encode", src, box, 6, 3, 4) == 0
    assert Container.read(box).shards == 0
    assert run("decode", box, out) == 0 and out.read_bytes() == b""


@pytest.mark.parametrize("argv", [
    ("4", "2", "3", "--s", "2"),
    ("5", "3", "4", "--shorten"),
    ("6", "3", "5"),
])
def test_round_trip_other_codes(argv, tmp_path, payload):
    box, out = tmp_path / "c.msrc", tmp_path / "c.out"
    assert run("encode", payload, box, *argv) == 0
    code = code_for(Container.read(box))
    assert run("decode", box, out, "--available", *range(code.n - code.k, code.n)) == 0
    assert out.read_bytes() == payload.read_bytes()
    original = box.read_bytes()
    assert run("repair", box, "--fail", 0, "--check") == 0
    assert box.read_bytes() == original


def test_byte_mode_needs_large_prime(payload, tmp_path):
    assert run("encode", payload, tmp_path / "x", 6, 3, 4, "--q", 13) == 2


def test_verify(capsys, encoded):
    assert run("verify", 6, 3, 4) == 0
    out = capsys.readouterr().out
    assert "20/20 subsets" in out and "30/30 repairs" in out and out.strip().endswith("OK")
    assert run("verify", 4, 2, 3, "--s", 2) == 0
    assert run("verify", 6, 3, 4, "--corrupt-lambda") == 1
    assert "FAILED" in capsys.readouterr().out
    assert run("verify", "--container", encoded) == 0
    assert "43/43 shards" in capsys.readouterr().out
    assert run("verify") == 2


def test_module_entry_point(tmp_path):
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "msrcode.cli", "info", "6", "3", "4"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and "N=8" in proc.stdout
