"""Finite-field arithmetic over GF(q), q = p**e <= 65535.

Elements are plain integers in ``[0, q)``.  For extension fields the integer
``sum(coef[j] * p**j)`` encodes the polynomial ``sum(coef[j] * x**j)``
reduced modulo the field's irreducible ``modulus``.  Every operation accepts
Python ints or numpy integer arrays and broadcasts like numpy does.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DivisionByZero, NotPrimePower, TooLarge

MAX_Q = 65535


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (n is at most a few hundred thousand)."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e``, or None when q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    (p, e), = fac.items()
    return p, e


def is_prime(n: int) -> bool:
    pe = prime_power(n)
    return pe is not None and pe[1] == 1


# -- polynomials over GF(p), coefficient lists low -> high -------------------

def _int_to_poly(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(v % p)
        v //= p
    return out


def _poly_to_int(coefs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coefs):
        v = v * p + c
    return v


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j, mc in enumerate(mod):
            a[shift + j] = (a[shift + j] - coef * mc) % p
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    r = _poly_mod(prod, mod, p)
    return r + [0] * (len(mod) - 1 - len(r))


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    deg = len(mod) - 1
    for dd in range(1, deg // 2 + 1):
        for v in range(p ** dd):
            divisor = _int_to_poly(v, p, dd) + [1]
            if not any(_poly_mod(mod, divisor, p)):
                return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    for v in range(p ** e):
        cand = _int_to_poly(v, p, e) + [1]
        if cand[0] == 0:
            continue  # divisible by x
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """GF(p**e) with a fixed modulus and primitive element ``c``.

    Build instances with :func:`make_field`; the constructor trusts its input.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    c: int
    _exp: np.ndarray = field(repr=False, compare=False)
    _log: np.ndarray = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    def __repr__(self) -> str:
        return f"GF({self.q})"

    # element-wise arithmetic
    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return _out((a + b) % self.p)
        if self.p == 2:
            return _out(a ^ b)
        res = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.e):
            res += ((a // pw + b // pw) % self.p) * pw
            pw *= self.p
        return _out(res)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return _out((-a) % self.p)
        if self.p == 2:
            return _out(a)
        res = np.zeros(a.shape, dtype=np.int64)
        pw = 1
        for _ in range(self.e):
            res += ((-(a // pw)) % self.p) * pw
            pw *= self.p
        return _out(res)

    def sub(self, a, b):
        if self.e == 1:
            a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
            return _out((a - b) % self.p)
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return _out((a * b) % self.p)
        zero = (a == 0) | (b == 0)
        idx = (self._log[a] + self._log[b]) % (self.q - 1)
        return _out(np.where(zero, 0, self._exp[idx]))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return _out(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, t: int):
        a = np.asarray(a, dtype=np.int64)
        if t == 0:
            return _out(np.ones(a.shape, dtype=np.int64))
        if t < 0 and np.any(a == 0):
            raise DivisionByZero("negative power of zero")
        idx = (self._log[a] * t) % (self.q - 1)
        return _out(np.where(a == 0, 0, self._exp[idx]))

    def exp(self, t):
        """``c**t`` for integer exponents (any sign)."""
        return _out(self._exp[np.asarray(t, dtype=np.int64) % (self.q - 1)])

    def log(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("log of zero")
        return _out(self._log[a])

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        from math import gcd
        n = self.q - 1
        return n // gcd(int(self.log(a)), n)

    def random(self, shape, rng: np.random.Generator, nonzero: bool = False) -> np.ndarray:
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.q, size=shape, dtype=np.int64)


def _out(x: np.ndarray):
    return int(x) if x.ndim == 0 else x


def _elem_pow(v: int, t: int, mod: Sequence[int], p: int, e: int) -> int:
    """Square-and-multiply on encoded extension elements (table-free)."""
    result = [1] + [0] * (e - 1)
    base = _int_to_poly(v, p, e)
    while t:
        if t & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        t >>= 1
    return _poly_to_int(result, p)


@lru_cache(maxsize=None)
def make_field(q: int) -> Field:
    """Return the canonical GF(q).

    The modulus is the smallest monic irreducible polynomial (ordered by its
    base-p encoding) and ``c`` is the smallest primitive element.
    """
    q = int(q)
    if q > MAX_Q:
        raise TooLarge(f"q={q} exceeds {MAX_Q}")
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(f"q={q} is not a prime power")
    p, e = pe
    n = q - 1
    cofactors = [n // ell for ell in factorize(n)] if n > 1 else []

    if e == 1:
        modulus: tuple[int, ...] = ()

        def power(v: int, t: int) -> int:
            return pow(v, t, p)
    else:
        modulus = _smallest_irreducible(p, e)

        def power(v: int, t: int) -> int:
            return _elem_pow(v, t, modulus, p, e)

    c = 1
    if q > 2:
        for cand in range(2, q):
            if all(power(cand, cf) != 1 for cf in cofactors):
                c = cand
                break

    exp = np.zeros(max(n, 1), dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = 1
    cpoly = _int_to_poly(c, p, e) if e > 1 else None
    for t in range(n):
        exp[t] = cur
        log[cur] = t
        if e == 1:
            cur = cur * c % p
        else:
            cur = _poly_to_int(_poly_mulmod(_int_to_poly(cur, p, e), cpoly, modulus, p), p)
    assert cur == 1 and np.all(log[1:] >= 0), "c is not primitive"
    exp.setflags(write=False)
    log.setflags(write=False)
    return Field(p, e, modulus, c, exp, log)


# -- field-size selection ----------------------------------------------------

def c1_threshold(m: int, w: int, r: int) -> int:
    """Field order must strictly exceed this value for the C1 coefficient table."""
    if w == r:
        return m * w
    if w == 2:
        return m * (w + 2)
    return m * (w + 1)


def c2_threshold(m: int, r: int, s: int) -> int:
    return s * m * r


def next_prime_power(above: int) -> int:
    q = above + 1
    while prime_power(q) is None:
        q += 1
    return q


def next_prime(at_least: int) -> int:
    q = max(at_least, 2)
    while not is_prime(q):
        q += 1
    return q


BYTE_MODE_MIN_Q = 257


def smallest_valid_q(construction: str, n: int, k: int, d: int, s: int = 1,
                     mode: str = "symbol") -> int:
    """Smallest admissible field order for a construction.

    For ``"C2"``, ``n, k, d`` describe the base code (``d == n - 1``).  Byte
    mode further requires a prime field holding every byte value.
    """
    from .c1 import validate_parameters

    construction = construction.upper()
    r, w, m = validate_parameters(n, k, d)
    if construction == "C1":
        thr = c1_threshold(m, w, r)
    elif construction == "C2":
        from .c2 import validate_c2_parameters
        validate_c2_parameters(n, k, s)
        thr = c2_threshold(m, r, s)
    else:
        raise ValueError(f"unknown construction {construction!r}")
    if mode == "symbol":
        return next_prime_power(thr)
    if mode == "byte":
        return next_prime(max(thr + 1, BYTE_MODE_MIN_Q))
    raise ValueError(f"unknown mode {mode!r}")
