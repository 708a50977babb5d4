"""
Repairing one node
==================

A failed node is rebuilt from d helpers, each sending N/w symbols. The total
matches the cut-set bound dN/(d-k+1) for every helper choice.
"""

import numpy as np

from msrcode import build_c1, encode, repair
from msrcode.codec import helper_sets, repair_system

code = build_c1(6, 3, 4)
rng = np.random.default_rng(1)
cw = encode(code, [code.field.random(code.N, rng) for _ in range(code.k)])

rep = repair(code, cw, 3, helpers=(1, 2, 4, 5))
print("downloads per helper:", rep.downloads)
print("bandwidth", rep.bandwidth, "bound", rep.optimal, "ratio", rep.ratio)
print("recovered correctly:", np.array_equal(rep.recovered, cw[3]))

# the helper rows: node 3 asks every helper for (e_a + e_{a+4}) f_j
print(code.repair_matrix(3, 1))

# the system solved during the repair; node 0 was not contacted, so its
# projection shows up as an extra unknown
system = repair_system(code, 3, (1, 2, 4, 5))
print(system.matrix)
print("projection of the bypassed node:", rep.byproducts[0])

# every node from every helper set
for i in range(code.n):
    for hs in helper_sets(code, i):
        r = repair(code, cw, i, hs)
        assert np.array_equal(r.recovered, cw[i]) and r.bandwidth == 16

# larger degree: w = 3, N = 27, each of the 5 helpers sends 9 symbols
big = build_c1(6, 3, 5)
cw = encode(big, [big.field.random(big.N, rng) for _ in range(big.k)])
r = repair(big, cw, 0)
print("d=5:", r.downloads, "total", r.bandwidth)
