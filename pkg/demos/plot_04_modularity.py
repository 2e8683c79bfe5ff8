"""
Modularity and its deformation
==============================

Modularity compares the weight inside the blocks of a partition with what
the degrees alone would predict.  Replacing the links by the indirect
influences ``T(lam)`` gives ``Q_lam``, which equals ``Q`` at ``lam = 0``.
"""

import numpy as np

from pwpnet import modularity_Q, modularity_Q_lambda
from pwpnet.datasets import network_s

S = network_s()
cycles = [{"1", "2", "3", "4"}, {"5", "6", "7", "8"}, {"9", "10", "11", "12"}]

print(f"Q = {modularity_Q(S, cycles).value:.4f}")

# Indirect influence leaks across the connector cycle, so the 4-cycles look
# less self-contained as lam grows.
for lam in np.linspace(0, 3, 7):
    print(f"Q_lam({lam:.1f}) = {modularity_Q_lambda(S, cycles, lam).value:.4f}")

# a worse partition for comparison
halves = [{str(i) for i in range(1, 7)}, {str(i) for i in range(7, 13)}]
print(f"halves: Q = {modularity_Q(S, halves).value:.4f}")
