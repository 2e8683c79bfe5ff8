"""Girvan-Newman style deconstruction driven by a link ranking.

Each step ranks the links of the current network, deletes the whole top
(or bottom) tied block and records the weak components that remain.
Removing top-ranked links exposes clusters; removing bottom-ranked links
peels the network from the periphery towards its core.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .errors import NumericalError, RankerFailure, ValidationError
from .influence import DEFAULT_LAMBDA
from .link_ranking import Method, rank_links
from .network import Network, weakly_connected_components
from .ranking import DEFAULT_TOL, Kind, Ranking

__all__ = [
    "StopRule",
    "Step",
    "DendrogramNode",
    "Dendrogram",
    "Deconstruction",
    "RingDecomposition",
    "deconstruct",
    "build_dendrogram",
    "clusters",
    "core_periphery",
    "is_trees_or_cycles",
]


@dataclass(frozen=True)
class StopRule:
    """When to stop removing links.

    ``"empty"`` runs until no links remain; ``"trees-or-cycles"`` stops as
    soon as every weak component has no more links than nodes;
    ``"steps"`` stops after ``k`` removal steps.
    """

    kind: str = "empty"
    k: int | None = None

    def __post_init__(self):
        if self.kind not in ("empty", "trees-or-cycles", "steps"):
            raise ValidationError(f"unknown stop rule {self.kind!r}")
        if self.kind == "steps" and (self.k is None or self.k < 0):
            raise ValidationError("stop rule 'steps' needs k >= 0")

    @classmethod
    def parse(cls, text) -> "StopRule":
        """Accept ``"empty"``, ``"trees-or-cycles"`` or ``"steps=k"``."""
        if isinstance(text, StopRule):
            return text
        m = re.fullmatch(r"steps=(\d+)", text.strip())
        if m:
            return cls("steps", int(m.group(1)))
        return cls(text.strip())

    def __str__(self):
        return f"steps={self.k}" if self.kind == "steps" else self.kind

    def satisfied(self, net: Network, n_steps: int) -> bool:
        if not net.edges:
            return True
        if self.kind == "trees-or-cycles":
            return is_trees_or_cycles(net)
        if self.kind == "steps":
            return n_steps >= self.k
        return False


def is_trees_or_cycles(net: Network) -> bool:
    """True when every weak component has at most as many links as nodes."""
    comp = {}
    for i, block in enumerate(weakly_connected_components(net)):
        for v in block:
            comp[v] = i
    n_edges: dict[int, int] = {}
    for e in net.edges:
        n_edges[comp[e.source]] = n_edges.get(comp[e.source], 0) + 1
    blocks = weakly_connected_components(net)
    return all(n_edges.get(i, 0) <= len(b) for i, b in enumerate(blocks))


@dataclass(frozen=True)
class Step:
    """One removal: the ranking used, the links deleted, the components left."""

    index: int
    ranking: Ranking
    removed: tuple
    partition: tuple


@dataclass(frozen=True)
class DendrogramNode:
    members: frozenset
    step: int | None
    children: tuple = ()

    @property
    def is_leaf(self) -> bool:
        return len(self.members) == 1


@dataclass(frozen=True)
class Dendrogram:
    """Forest whose roots are the input components and whose leaves are nodes.

    ``step`` on a tree node is the step after which that set first appeared
    as a component (0 for the input network, ``None`` for a leaf never
    isolated before the run stopped).
    """

    roots: tuple

    def walk(self):
        stack = list(self.roots)
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children)

    def leaves(self) -> set:
        return {next(iter(n.members)) for n in self.walk() if n.is_leaf}

    def parent_map(self) -> dict:
        """Child member set -> parent member set."""
        return {c.members: n.members for n in self.walk() for c in n.children}


@dataclass(frozen=True)
class Deconstruction:
    dendrogram: Dendrogram
    trace: tuple
    initial_partition: tuple
    direction: str

    @property
    def final_partition(self) -> tuple:
        return self.trace[-1].partition if self.trace else self.initial_partition


@dataclass(frozen=True)
class RingDecomposition:
    """Rings from the core (first) to the periphery (last).

    ``steps[i]`` is the step at which the nodes of ``rings[i]`` became
    isolated.
    """

    rings: tuple
    steps: tuple
    trace: tuple = ()

    @property
    def core(self) -> frozenset:
        return self.rings[0] if self.rings else frozenset()


def build_dendrogram(node_ids, partitions) -> Dendrogram:
    """Assemble the dendrogram from the component partitions of a run.

    ``partitions[0]`` is the input network's partition; later entries
    follow the steps.  Every distinct component becomes a tree node,
    singletons of all nodes are leaves, and each set hangs below the
    smallest set strictly containing it.
    """
    first_seen: dict[frozenset, int] = {}
    for step, part in enumerate(partitions):
        for block in part:
            first_seen.setdefault(frozenset(block), step)
    for v in node_ids:
        first_seen.setdefault(frozenset([v]), None)
    # laminar family: the parent is the smallest strict superset
    ordered = sorted(first_seen, key=lambda s: (len(s), sorted(s)))
    children: dict[frozenset, list] = {s: [] for s in ordered}
    roots = []
    for i, s in enumerate(ordered):
        parent = next((t for t in ordered[i + 1:] if len(t) > len(s) and s < t), None)
        if parent is None:
            roots.append(s)
        else:
            children[parent].append(s)

    def make(s):
        kids = sorted(children[s], key=lambda c: sorted(c))
        return DendrogramNode(s, first_seen[s], tuple(make(c) for c in kids))

    return Dendrogram(tuple(make(r) for r in sorted(roots, key=lambda c: sorted(c))))


def _default_ranker(method, kind, lam, tol) -> Callable[[Network], Ranking]:
    method, kind = Method(method), Kind(kind)

    def ranker(net):
        return rank_links(net, method, lam, kind, tol)

    return ranker


def deconstruct(
    net: Network,
    method=Method.DUAL,
    kind=Kind.IMPORTANCE,
    lam: float = DEFAULT_LAMBDA,
    direction: str = "highest",
    stop="empty",
    tol: float = DEFAULT_TOL,
    ranker: Callable[[Network], Ranking] | None = None,
) -> Deconstruction:
    """Iteratively delete the top (or bottom) tied block of links.

    The ranking is recomputed on the reduced network before every step.

    Parameters
    ----------
    direction : {"highest", "lowest"}
        Which end of the ranking to remove.
    stop : StopRule or str
        ``"empty"``, ``"trees-or-cycles"`` or ``"steps=k"``.
    ranker : callable, optional
        ``Network -> Ranking`` over link ids; overrides ``method``,
        ``kind`` and ``lam``.

    Raises
    ------
    RankerFailure
        The ranker hit a numerical error.
    """
    if not net.nodes:
        raise ValidationError("cannot deconstruct an empty network")
    if direction not in ("highest", "lowest"):
        raise ValidationError(f"direction must be 'highest' or 'lowest', got {direction!r}")
    stop = StopRule.parse(stop)
    ranker = ranker or _default_ranker(method, kind, lam, tol)
    current = net
    partitions = [weakly_connected_components(net)]
    trace = []
    while not stop.satisfied(current, len(trace)):
        try:
            ranking = ranker(current)
        except NumericalError as exc:
            raise RankerFailure(f"ranking failed at step {len(trace) + 1}: {exc}") from exc
        block = ranking.blocks[0] if direction == "highest" else ranking.blocks[-1]
        current = current.without_edges(block)
        partitions.append(weakly_connected_components(current))
        trace.append(Step(len(trace) + 1, ranking, tuple(block), partitions[-1]))
    return Deconstruction(
        build_dendrogram(net.node_ids, partitions), tuple(trace), partitions[0], direction
    )


def clusters(
    net: Network,
    method=Method.DUAL,
    kind=Kind.IMPORTANCE,
    lam: float = DEFAULT_LAMBDA,
    stop="trees-or-cycles",
    tol: float = DEFAULT_TOL,
) -> tuple:
    """Components left after removing top-ranked links until ``stop`` holds."""
    return deconstruct(net, method, kind, lam, "highest", stop, tol).final_partition


def isolation_steps(net: Network, run: Deconstruction) -> dict:
    """Step after which each node is first a singleton component."""
    steps = {}
    partitions = [run.initial_partition] + [s.partition for s in run.trace]
    for i, part in enumerate(partitions):
        for block in part:
            if len(block) == 1:
                steps.setdefault(next(iter(block)), i)
    return steps


def core_periphery(
    net: Network,
    method=Method.DUAL,
    kind=Kind.IMPORTANCE,
    lam: float = DEFAULT_LAMBDA,
    tol: float = DEFAULT_TOL,
) -> RingDecomposition:
    """Peel the network by deleting bottom-ranked links until none remain.

    Nodes isolated at the same step form a ring; the last nodes to be
    isolated are the core.
    """
    run = deconstruct(net, method, kind, lam, "lowest", "empty", tol)
    steps = isolation_steps(net, run)
    by_step: dict[int, set] = {}
    for v, s in steps.items():
        by_step.setdefault(s, set()).add(v)
    order = sorted(by_step, reverse=True)
    return RingDecomposition(
        tuple(frozenset(by_step[s]) for s in order), tuple(order), run.trace
    )
