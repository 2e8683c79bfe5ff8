"""
Checking T three ways
=====================

``T`` is computed from a matrix exponential.  The same numbers come out of
summing weighted paths one length at a time, and, for weights in [0, 1], of
counting randomly activated paths.
"""

import numpy as np

from pwpnet import influence_matrix, monte_carlo_active_paths, path_oracle
from pwpnet import dual_influence_oracle, dual, barycentric_influence_oracle
from pwpnet import from_edge_list

net = from_edge_list(
    [(1, 2, 0.9), (2, 3, 0.6), (3, 1, 0.8), (2, 1, 0.3)], node_weights={2: 0.7}
)
lam = 1.0
T = influence_matrix(net, lam)
print("max |T - path sum| =", np.abs(T.T - path_oracle(net, lam).T).max())

# Each sample draws a path length k with probability proportional to
# lam**k / k!, activates every node and link with its weight and counts the
# active paths of that length.
for target, source in (("2", "1"), ("1", "1"), ("3", "2")):
    est, se = monte_carlo_active_paths(net, lam, target, source, samples=100_000, seed=1)
    print(f"T[{target},{source}] = {T.entry(target, source):.4f}, sampled {est:.4f} +- {se:.4f}")

#############################################################################
# Influences between links of the dual network can be summed over chains of
# links of the original network, without building the dual at all.

D = influence_matrix(dual(net).network, lam)
chains = dual_influence_oracle(net, lam)
idx = [D.index_map[f"edge:{e}"] for e in net.edge_ids]
print("dual: max gap =", np.abs(D.T[np.ix_(idx, idx)] - chains.T).max())
print("barycentric chains:\n", np.round(barycentric_influence_oracle(net, lam).T, 4))
