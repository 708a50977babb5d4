"""
Finite fields and w-ary indices
===============================

The arithmetic layer and the digit bookkeeping that the codes are built on.
"""

import numpy as np

from msrcode import make_field
from msrcode.indexing import WaryContext

# a prime field: plain modular arithmetic, with 2 as its primitive element
F = make_field(13)
print("GF(13): c =", F.c, " 7*8 =", F.mul(7, 8), " 1/5 =", F.inv(5))
print("powers of c:", [F.pow(F.c, t) for t in range(12)])

# an extension field: elements are base-p polynomials packed into integers
G = make_field(9)
print("GF(9) modulus coefficients (low first):", G.modulus, " c =", G.c)
table = G.mul(*np.meshgrid(np.arange(9), np.arange(9), indexing="ij"))
print(table)

# indices 0..N-1 read as m digits base w, most significant first
ctx = WaryContext(w=2, m=3)
for a in range(ctx.N):
    print(a, ctx.digits(a))

# replace a digit, or insert one into a shorter index
print("replace digit 1 of 5 by 1 ->", ctx.replace_digit(5, 1, 1))
print("insert 1 at position 1 of 2 ->", ctx.insert_digit(2, 1, 1))

# each digit position splits the basis into w classes
for i in range(ctx.m):
    print(f"position {i}:", [ctx.v_row_map(i, u).tolist() for u in range(ctx.w)])
