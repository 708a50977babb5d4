"""
Stretching a short code
=======================

Two scaled copies of a (4,2) base code form an (8,6) code that keeps N = 4.
Repair reads the congruent node whole and N/r symbols from everyone else, so
the bandwidth sits a factor 1 + (s-1)(r-1)/(n-1) above the bound.
"""

import numpy as np

from msrcode import build_c2, encode, repair, verify_mds

code = build_c2(4, 2, 2)
F = code.field
print(code, " q =", F.q, " modulus", F.modulus)
print("per-node scalars:", code.params.xs.tolist(), " (c^4 =", F.pow(F.c, 4), ")")

# the second copy's blocks are the first copy's scaled by x_i^t
t = 1
print(code.parity_block(t, 2))
print(code.parity_block(t, 6))

print("MDS:", verify_mds(code).ok)

rng = np.random.default_rng(2)
cw = encode(code, [F.random(code.N, rng) for _ in range(code.k)])
for i in range(code.n):
    rep = repair(code, cw, i)
    assert np.array_equal(rep.recovered, cw[i])
    print(i, rep.downloads, rep.bandwidth, rep.ratio)
print("epsilon =", code.epsilon)
