"""Girvan-Newman modularity of directed weighted partitions and its PWP deformation.

For a partition ``pi`` of the nodes,

    Q(pi) = sum over ordered pairs (i, j) in a common block of
            D[i, j] / m - (d_in[i] / m) * (d_out[j] / m)

with ``m`` the total link weight.  ``Q_lambda`` replaces ``D`` by the
matrix of indirect influences ``T(lambda)`` and the degrees by its row and
column sums.  Pairs include ``i == j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeWeights, ZeroTotalInfluence, ZeroTotalWeight
from .influence import DEFAULT_LAMBDA, pwp_weighted
from .network import Network, adjacency, check_partition

__all__ = ["ModularityReport", "modularity_Q", "modularity_Q_lambda", "modularity_of_matrix"]


@dataclass(frozen=True)
class ModularityReport:
    value: float
    total: float
    blocks: tuple
    contributions: tuple


def modularity_of_matrix(M: np.ndarray, ids, blocks) -> ModularityReport:
    """Modularity of ``blocks`` for a nonnegative weight matrix ``M``.

    ``M[i, j]`` is the weight from ``ids[j]`` to ``ids[i]``.
    """
    total = float(M.sum())
    row = M.sum(axis=1)
    col = M.sum(axis=0)
    idx = {v: i for i, v in enumerate(ids)}
    contributions = []
    for block in blocks:
        sel = np.array(sorted(idx[v] for v in block), dtype=int)
        inside = M[np.ix_(sel, sel)].sum() / total
        expected = row[sel].sum() * col[sel].sum() / total**2
        contributions.append(float(inside - expected))
    return ModularityReport(math.fsum(contributions), total, tuple(blocks), tuple(contributions))


def _nonnegative(D, f=None):
    if np.any(D < 0) or (f is not None and np.any(f < 0)):
        raise NegativeWeights("modularity needs nonnegative weights")


def modularity_Q(net: Network, partition) -> ModularityReport:
    """Girvan-Newman modularity of ``partition`` on ``net``.

    Raises
    ------
    NegativeWeights
        Some link weight is negative.
    ZeroTotalWeight
        The links carry no weight.
    """
    blocks = check_partition(net, partition)
    pair = adjacency(net)
    _nonnegative(pair.D)
    if not pair.D.sum() > 0:
        raise ZeroTotalWeight("total link weight m must be positive")
    return modularity_of_matrix(pair.D, pair.ids, blocks)


def modularity_Q_lambda(
    net: Network, partition, lam: float = DEFAULT_LAMBDA, unit_node_weights: bool = False
) -> ModularityReport:
    """Modularity computed on indirect influences ``T(lambda)``.

    Node weights enter ``T`` unless ``unit_node_weights`` is set.  At
    ``lam = 0`` and unit node weights this equals :func:`modularity_Q`.
    """
    blocks = check_partition(net, partition)
    pair = adjacency(net)
    f = np.ones_like(pair.f) if unit_node_weights else pair.f
    _nonnegative(pair.D, f)
    T = pwp_weighted(pair.D, f, lam).T
    if not T.sum() > 0:
        raise ZeroTotalInfluence(f"total influence M(lambda) must be positive at lambda={lam}")
    return modularity_of_matrix(T, pair.ids, blocks)
