"""
A (6,3) code with repair degree 4
=================================

Builds the code over GF(13), prints its coefficient table and parity blocks,
then encodes one stripe and rebuilds it from different sets of three nodes.
"""

import itertools

import numpy as np

from msrcode import build_c1, encode, parity_residual, reconstruct

code = build_c1(6, 3, 4)
print(code)
print("sub-packetization N =", code.N, " field q =", code.field.q)

# coefficients as exponents of the primitive element, one row per node
print(code.lambda_exponents)

# parity group t=1: coupled upper-triangular blocks for the first half,
# diagonal blocks for the second
for i in range(code.n):
    print(f"A[1,{i}] =")
    print(code.parity_block(1, i))

rng = np.random.default_rng(0)
data = [code.field.random(code.N, rng) for _ in range(code.k)]
cw = encode(code, data)
print("parity residual is zero:", not parity_residual(code, cw).any())

# any three nodes are enough
for keep in itertools.combinations(range(6), 3):
    back = reconstruct(code, {j: cw[j] for j in keep})
    assert back.equals(cw)
print("all 20 choices of 3 nodes rebuild the codeword")
