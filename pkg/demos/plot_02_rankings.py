"""
Ranking nodes and links
=======================

Row sums of ``T`` measure how much a node depends on the others, column sums
how much it influences them, and their sum its importance.  Links are ranked
by building a network whose nodes are the links (dual or barycentric) or by
combining the scores of their endpoints (bridge).
"""

from pwpnet import Kind, node_scores, rank_links, rank_nodes
from pwpnet.datasets import network_s

# three directed 4-cycles joined through the cycle 4 -> 6 -> 9 -> 4
S = network_s()

I = node_scores(S, 1.0, Kind.IMPORTANCE)
for v in sorted(I.values, key=int):
    print(f"node {v:>2}: importance {I[v]:.4f}")
print("node ranking:", rank_nodes(S))

# The connector links come first with the barycentric and bridge methods.
# With the dual construction the factor 1 / (out(v) in(v)) at the hubs damps
# them, so they end up last.
for method in ("barycentric", "bridge", "dual"):
    print(f"{method:>11}:", rank_links(S, method))
