"""On-disk container for encoded files.

Layout, all integers little-endian::

    magic "MSRC" | version u8 (=1) | construction u8 (1=C1, 2=C2)
    p u16 | e u8 | n u16 | k u16 | d u16 | s u16
    original byte length u64 | shard count u32
    n payloads, node-major, each N * shards u16 symbols (shard-major inside)

A C1 container with odd ``n`` holds a shortened code built from the
``(n+1, k+1, d+1)`` base.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .code import ArrayCode
from .errors import ContainerError

MAGIC = b"MSRC"
VERSION = 1
HEADER = struct.Struct("<4sBBHBHHHHQI")
FLAG = {"C1": 1, "C2": 2}


def sub_packetization(construction: str, n: int, k: int, d: int, s: int) -> int:
    r = n - k
    if construction == "C1":
        return (d - k + 1) ** math.ceil(n / 2)
    if n % s:
        raise ContainerError(f"n={n} is not a multiple of s={s}")
    return r ** math.ceil(n // s / 2)


@dataclass
class Container:
    construction: str
    p: int
    e: int
    n: int
    k: int
    d: int
    s: int
    original_length: int
    nodes: list[np.ndarray]  # one (N, shards) array per node

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def N(self) -> int:
        return sub_packetization(self.construction, self.n, self.k, self.d, self.s)

    @property
    def shards(self) -> int:
        return self.nodes[0].shape[1] if self.nodes else 0

    def to_bytes(self) -> bytes:
        head = HEADER.pack(MAGIC, VERSION, FLAG[self.construction], self.p, self.e,
                           self.n, self.k, self.d, self.s, self.original_length, self.shards)
        body = b"".join(np.ascontiguousarray(x.T).astype("<u2").tobytes() for x in self.nodes)
        return head + body

    @classmethod
    def from_bytes(cls, blob: bytes) -> "Container":
        if len(blob) < HEADER.size:
            raise ContainerError("truncated header")
        magic, ver, flag, p, e, n, k, d, s, length, shards = HEADER.unpack_from(blob)
        if magic != MAGIC:
            raise ContainerError("bad magic")
        if ver != VERSION:
            raise ContainerError(f"unsupported version {ver}")
        names = {v: key for key, v in FLAG.items()}
        if flag not in names:
            raise ContainerError(f"unknown construction flag {flag}")
        construction = names[flag]
        N = sub_packetization(construction, n, k, d, s)
        expect = HEADER.size + 2 * n * N * shards
        if len(blob) != expect:
            raise ContainerError(f"payload size {len(blob)} != {expect}")
        sym = np.frombuffer(blob, dtype="<u2", offset=HEADER.size).astype(np.int64)
        nodes = [sym[j * N * shards:(j + 1) * N * shards].reshape(shards, N).T.copy() for j in range(n)]
        return cls(construction, p, e, n, k, d, s, length, nodes)

    def write(self, path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def read(cls, path) -> "Container":
        return cls.from_bytes(Path(path).read_bytes())


def code_from_header(construction: str, q: int, n: int, k: int, d: int, s: int) -> ArrayCode:
    from .c1 import build_c1
    from .c2 import build_c2
    from .codec import shorten

    if construction == "C1":
        if n % 2:
            return shorten(build_c1(n + 1, k + 1, d + 1, q))
        return build_c1(n, k, d, q)
    if d != n - 1:
        raise ContainerError("C2 containers need d = n - 1")
    n1 = n // s
    return build_c2(n1, n1 - (n - k), s, q)


def code_for(container: Container) -> ArrayCode:
    c = container
    return code_from_header(c.construction, c.q, c.n, c.k, c.d, c.s)


def pack_bytes(data: bytes, k: int, N: int) -> list[np.ndarray]:
    """Split bytes into k data nodes of shape (N, shards), zero-padding the tail."""
    stripe = k * N
    shards = -(-len(data) // stripe)
    buf = np.zeros(shards * stripe, dtype=np.int64)
    buf[:len(data)] = np.frombuffer(data, dtype=np.uint8)
    grid = buf.reshape(shards, k, N)
    return [grid[:, i, :].T.copy() for i in range(k)]


def unpack_bytes(nodes: list[np.ndarray], length: int) -> bytes:
    grid = np.stack([x.T for x in nodes], axis=1)  # shards, k, N
    flat = grid.reshape(-1)[:length]
    if np.any(flat > 255):
        raise ContainerError("data symbol outside the byte range")
    return flat.astype(np.uint8).tobytes()
