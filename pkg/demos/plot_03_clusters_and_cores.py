"""
Clusters and core-periphery rings
=================================

Removing the most important links splits a network into clusters.  Removing
the least important ones peels it from the outside in: nodes isolated late
form the core.
"""

from pwpnet import clusters, core_periphery, deconstruct
from pwpnet import io
from pwpnet.datasets import network_s

S = network_s()


def fmt(blocks, keep_order=False):
    ordered = blocks if keep_order else sorted(blocks, key=lambda b: min(map(int, b)))
    return "  ".join("{" + ",".join(sorted(b, key=int)) + "}" for b in ordered)


for method in ("barycentric", "bridge", "dual"):
    part = clusters(S, method, stop="trees-or-cycles")
    rings = core_periphery(S, method)
    print(f"{method:>11} clusters: {fmt(part)}")
    print(f"{'':>11} rings:    {fmt(rings.rings, keep_order=True)}  (isolated at steps {rings.steps})")

#############################################################################
# A full run to the empty network gives the dendrogram.  Each tree node is a
# component, annotated with the step after which it appeared.

run = deconstruct(S, "bridge", stop="empty")
for step in run.trace:
    print(f"step {step.index}: removed {', '.join(step.removed)}")
print(io.dumps(io.dendrogram_to_dict(run.dendrogram))[:400], "...")
