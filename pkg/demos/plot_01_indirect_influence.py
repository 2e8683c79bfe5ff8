"""
Indirect influences on a small network
======================================

A link from ``u`` to ``v`` is a direct influence of ``u`` on ``v``.  Longer
paths carry indirect influence, damped by ``lam**k / k!`` for a path of
length ``k``.  The matrix ``T`` collects both.
"""

import numpy as np

from pwpnet import from_edge_list, influence_matrix
from pwpnet.datasets import path_network

np.set_printoptions(precision=4, suppress=True)

# a path 1 -> 2 -> 3; T[i, j] is the influence of node j on node i
net = path_network(3)
print(influence_matrix(net, 1.0).T)

# At lam = 0 only direct links count.  Larger lam shifts weight to long paths.
for lam in (0.0, 0.5, 1.0, 3.0):
    T = influence_matrix(net, lam)
    print(f"lam={lam}: 1 on 2 = {T.entry('2', '1'):.4f}, 1 on 3 = {T.entry('3', '1'):.4f}")

#############################################################################
# Node weights scale what a node passes on.  Halving the weight of node 2
# halves the influence of 1 on 3 but leaves the influence of 1 on 2 alone.

weighted = from_edge_list([(1, 2), (2, 3)], node_weights={2: 0.5})
T = influence_matrix(weighted, 1.0)
print(f"weighted: 1 on 2 = {T.entry('2', '1'):.4f}, 1 on 3 = {T.entry('3', '1'):.4f}")
