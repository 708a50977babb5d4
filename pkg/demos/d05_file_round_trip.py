"""
Files on disk
=============

Encodes a file into a container with the command line front end, loses three
nodes, decodes, and then repairs a wiped node in place.
"""

import os
import tempfile

import numpy as np

from msrcode import cli
from msrcode.container import Container

work = tempfile.mkdtemp()
src = os.path.join(work, "payload.bin")
box = os.path.join(work, "payload.msrc")
out = os.path.join(work, "payload.out")

with open(src, "wb") as fh:
    fh.write(np.random.default_rng(3).integers(0, 256, 20000, dtype=np.uint8).tobytes())

cli.main(["info", "6", "3", "4"])
cli.main(["encode", src, box, "6", "3", "4"])

# decode from the parity nodes only
cli.main(["decode", box, out, "--available", "3", "4", "5"])
print("identical:", open(src, "rb").read() == open(out, "rb").read())

# wipe node 2 and regenerate it
c = Container.read(box)
before = c.nodes[2].copy()
c.nodes[2][:] = 0
c.write(box)
cli.main(["repair", box, "--fail", "2"])
print("node restored:", np.array_equal(Container.read(box).nodes[2], before))

cli.main(["verify", "--container", box])
