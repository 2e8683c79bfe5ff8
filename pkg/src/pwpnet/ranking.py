"""Rankings (ordered set partitions) and node scores.

A ranking lists tied blocks from most to least important.  Scores come
from the matrix of indirect influences ``T``: dependence ``E`` (row sums),
influence ``F`` (column sums) and importance ``I = E + F``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .errors import RangeError, ValidationError
from .influence import DEFAULT_LAMBDA, InfluenceMatrix, influence_matrix
from .network import Network

__all__ = [
    "Kind",
    "Ranking",
    "ScoreVector",
    "DEFAULT_TOL",
    "scores",
    "ranking_from_scores",
    "node_scores",
    "rank_nodes",
    "count_rankings",
    "enumerate_rankings",
    "ranking_isomorphism_classes",
]

DEFAULT_TOL = 1e-9


class Kind(str, Enum):
    DEPENDENCE = "dependence"
    INFLUENCE = "influence"
    IMPORTANCE = "importance"


@dataclass(frozen=True)
class Ranking:
    """Ordered partition; ``blocks[0]`` holds the top-ranked items.

    Items inside a block are kept sorted so equal rankings compare equal.
    """

    blocks: tuple[tuple, ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise ValidationError("ranking blocks must be nonempty")
        flat = [x for b in blocks for x in b]
        if len(flat) != len(set(flat)):
            raise ValidationError("ranking blocks must be disjoint")
        object.__setattr__(self, "blocks", blocks)

    @property
    def items(self) -> tuple:
        return tuple(x for b in self.blocks for x in b)

    def position(self) -> dict:
        """Block index of every item (0 = top)."""
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def restrict(self, keep: Iterable) -> "Ranking":
        """Drop items outside ``keep`` and any block left empty."""
        keep = set(keep)
        blocks = ([x for x in b if x in keep] for b in self.blocks)
        return Ranking(tuple(b for b in blocks if b))

    def __str__(self):
        return " > ".join(
            b[0] if len(b) == 1 else "{" + ",".join(b) + "}" for b in self.blocks
        )


@dataclass(frozen=True)
class ScoreVector:
    values: Mapping
    kind: Kind

    def __getitem__(self, item):
        return self.values[item]


def scores(infl: InfluenceMatrix, kind=Kind.IMPORTANCE) -> ScoreVector:
    """Dependence (row sums), influence (column sums) or importance of ``T``."""
    kind = Kind(kind)
    M = infl.T
    if kind is Kind.DEPENDENCE:
        s = M.sum(axis=1)
    elif kind is Kind.INFLUENCE:
        s = M.sum(axis=0)
    else:
        s = M.sum(axis=1) + M.sum(axis=0)
    ids = infl.ids if infl.ids is not None else tuple(range(M.shape[0]))
    return ScoreVector(dict(zip(ids, (float(v) for v in s))), kind)


def ranking_from_scores(s, tol: float = DEFAULT_TOL) -> Ranking:
    """Sort items by decreasing score, merging near-ties into one block.

    Consecutive items whose scores differ by at most
    ``tol * max(1, |top score|)`` land in the same block; the merge is
    transitive along the sorted order.

    Parameters
    ----------
    s : ScoreVector or mapping
        Item -> score.
    """
    if tol < 0:
        raise ValidationError("tol must be >= 0")
    values = s.values if isinstance(s, ScoreVector) else s
    if not values:
        return Ranking(())
    items = sorted(values, key=lambda x: (-values[x], x))
    top = max(abs(values[x]) for x in items)
    gap = tol * max(1.0, top)
    blocks = [[items[0]]]
    for prev, cur in zip(items, items[1:]):
        if values[prev] - values[cur] <= gap:
            blocks[-1].append(cur)
        else:
            blocks.append([cur])
    return Ranking(tuple(blocks))


def node_scores(net: Network, lam: float = DEFAULT_LAMBDA, kind=Kind.IMPORTANCE) -> ScoreVector:
    return scores(influence_matrix(net, lam), kind)


def rank_nodes(
    net: Network, lam: float = DEFAULT_LAMBDA, kind=Kind.IMPORTANCE, tol: float = DEFAULT_TOL
) -> Ranking:
    """Rank the nodes of ``net`` by PWP dependence, influence or importance."""
    return ranking_from_scores(node_scores(net, lam, kind), tol)


def _stirling2(n: int, k: int) -> int:
    return sum((-1) ** i * math.comb(k, i) * (k - i) ** n for i in range(k + 1)) // math.factorial(k)


def count_rankings(n: int) -> int:
    """Number of rankings on ``n`` labelled items (ordered set partitions)."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= 12:
        raise RangeError(f"count_rankings needs 1 <= n <= 12, got {n!r}")
    return sum(math.factorial(k) * _stirling2(n, k) for k in range(1, n + 1))


def enumerate_rankings(items) -> Iterable[Ranking]:
    """Yield every ranking of ``items`` once (brute force, small inputs only)."""
    items = list(items)
    n = len(items)
    if n == 0:
        yield Ranking(())
        return
    # a ranking is a surjection items -> {0..k-1}; block index = rank
    for k in range(1, n + 1):
        for labels in itertools.product(range(k), repeat=n):
            if len(set(labels)) == k:
                blocks = [[] for _ in range(k)]
                for item, lab in zip(items, labels):
                    blocks[lab].append(item)
                yield Ranking(tuple(blocks))


def ranking_isomorphism_classes(rankings: Iterable[Ranking]) -> set:
    """Classes under relabelling; a class is determined by its block sizes."""
    return {tuple(len(b) for b in r.blocks) for r in rankings}
