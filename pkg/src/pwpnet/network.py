"""Double-weighted directed multigraphs.

A :class:`Network` carries weights on its nodes (``f``) and on its links
(``w``) and explicit source/target maps, so parallel links and self-loops
are first-class.  Matrix views index nodes in sorted id order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DanglingEndpoint,
    DuplicateId,
    InvalidMap,
    InvalidPartition,
    ValidationError,
)

__all__ = [
    "Node",
    "Edge",
    "Network",
    "AdjacencyPair",
    "Partition",
    "build_network",
    "from_edge_list",
    "adjacency",
    "pushforward",
    "product",
    "disjoint_union",
    "weakly_connected_components",
]


@dataclass(frozen=True)
class Node:
    id: str
    weight: float = 1.0


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    weight: float = 1.0


@dataclass(frozen=True)
class AdjacencyPair:
    """Matrix-vector view of a network.

    ``D[i, j]`` is the total weight of links with target ``ids[i]`` and
    source ``ids[j]``; ``f[j]`` is the weight of node ``ids[j]``.
    """

    D: np.ndarray
    f: np.ndarray
    ids: tuple[str, ...]

    @property
    def index_map(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.ids)}


@dataclass(frozen=True)
class Network:
    """Immutable double-weighted directed multigraph.

    Construct through :func:`build_network` or :func:`from_edge_list`;
    the constructor itself validates ids and endpoints too.
    """

    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for node in self.nodes:
            if node.id in seen:
                raise DuplicateId(f"duplicate node id {node.id!r}")
            seen.add(node.id)
        seen_edges = set()
        for edge in self.edges:
            if edge.id in seen_edges:
                raise DuplicateId(f"duplicate edge id {edge.id!r}")
            seen_edges.add(edge.id)
            for end in (edge.source, edge.target):
                if end not in seen:
                    raise DanglingEndpoint(
                        f"edge {edge.id!r} refers to missing node {end!r}"
                    )

    def __len__(self):
        return len(self.nodes)

    @cached_property
    def node_ids(self) -> tuple[str, ...]:
        """Node ids in matrix index order (sorted)."""
        return tuple(sorted(n.id for n in self.nodes))

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted(e.id for e in self.edges))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.node_ids)}

    @cached_property
    def node_weight(self) -> dict[str, float]:
        return {n.id: n.weight for n in self.nodes}

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_degree(self) -> Counter:
        """Number of links leaving each node, parallel links counted."""
        return Counter(e.source for e in self.edges)

    @cached_property
    def in_degree(self) -> Counter:
        return Counter(e.target for e in self.edges)

    def adjacency(self) -> AdjacencyPair:
        return adjacency(self)

    def without_edges(self, edge_ids: Iterable[str]) -> "Network":
        drop = set(edge_ids)
        return Network(self.nodes, tuple(e for e in self.edges if e.id not in drop))

    def with_unit_weights(self) -> "Network":
        """Same topology with every node and link weight set to 1."""
        return Network(
            tuple(Node(n.id, 1.0) for n in self.nodes),
            tuple(Edge(e.id, e.source, e.target, 1.0) for e in self.edges),
        )


Partition = tuple  # tuple[frozenset[str], ...], blocks sorted by their smallest id


def _node_record(rec) -> Node:
    if isinstance(rec, Node):
        return rec
    if isinstance(rec, Mapping):
        return Node(str(rec["id"]), float(rec.get("weight", 1.0)))
    if isinstance(rec, (tuple, list)):
        if len(rec) == 1:
            return Node(str(rec[0]))
        return Node(str(rec[0]), float(rec[1]))
    return Node(str(rec))


def _edge_record(rec) -> Edge:
    if isinstance(rec, Edge):
        return rec
    if isinstance(rec, Mapping):
        return Edge(
            str(rec["id"]),
            str(rec["source"]),
            str(rec["target"]),
            float(rec.get("weight", 1.0)),
        )
    if isinstance(rec, (tuple, list)) and len(rec) in (3, 4):
        weight = float(rec[3]) if len(rec) == 4 else 1.0
        return Edge(str(rec[0]), str(rec[1]), str(rec[2]), weight)
    raise ValidationError(f"cannot interpret edge record {rec!r}")


def build_network(nodes, edges=()) -> Network:
    """Validate node and edge records and return a :class:`Network`.

    Parameters
    ----------
    nodes : iterable
        :class:`Node` objects, ``(id, weight)`` pairs, ``{"id", "weight"}``
        mappings or bare ids (weight 1).
    edges : iterable
        :class:`Edge` objects, ``(id, source, target[, weight])`` tuples or
        ``{"id", "source", "target", "weight"}`` mappings.

    Raises
    ------
    DuplicateId
        Two nodes or two edges share an id.
    DanglingEndpoint
        An edge refers to a node that does not exist.
    """
    return Network(
        tuple(_node_record(r) for r in nodes), tuple(_edge_record(r) for r in edges)
    )


def from_edge_list(pairs, node_weights=None, nodes=None) -> Network:
    """Build a network from ``(source, target[, weight])`` records.

    Edge ids are ``"s->t"``; repeated pairs get a ``#k`` suffix.  Nodes are
    the endpoints plus any extra ids in ``nodes``; weights default to 1.
    """
    node_weights = {str(k): float(v) for k, v in (node_weights or {}).items()}
    order: dict[str, None] = {}
    for v in nodes or ():
        order[str(v)] = None
    edges = []
    counts: Counter = Counter()
    for rec in pairs:
        s, t = str(rec[0]), str(rec[1])
        w = float(rec[2]) if len(rec) > 2 else 1.0
        order.setdefault(s, None)
        order.setdefault(t, None)
        base = f"{s}->{t}"
        counts[base] += 1
        eid = base if counts[base] == 1 else f"{base}#{counts[base]}"
        edges.append(Edge(eid, s, t, w))
    for v in node_weights:
        order.setdefault(v, None)
    return Network(
        tuple(Node(v, node_weights.get(v, 1.0)) for v in order), tuple(edges)
    )


def adjacency(net: Network) -> AdjacencyPair:
    """Return ``(D, f)`` with ``D[i, j]`` summing the weights of links j -> i."""
    idx = net.index
    n = len(idx)
    D = np.zeros((n, n))
    for e in net.edges:
        D[idx[e.target], idx[e.source]] += e.weight
    f = np.array([net.node_weight[v] for v in net.node_ids], dtype=float)
    return AdjacencyPair(D, f, net.node_ids)


def pushforward(net: Network, alpha: Mapping[str, str], codomain=None) -> Network:
    """Image of ``net`` under the node map ``alpha``.

    Node weights of the image are fiber sums of the original node weights;
    each link ``e: u -> v`` becomes a link ``alpha(u) -> alpha(v)`` with the
    same id and weight, so parallel images stay distinct links.

    Parameters
    ----------
    alpha : mapping
        Total function from node ids of ``net`` to node ids of the codomain.
    codomain : Network or iterable of ids, optional
        Target node set.  Nodes outside the image get weight 0.  Defaults to
        the image of ``alpha``.
    """
    alpha = {str(k): str(v) for k, v in alpha.items()}
    missing = [v for v in net.node_ids if v not in alpha]
    if missing:
        raise InvalidMap(f"node map is not total: no image for {missing[:5]}")
    extra = [k for k in alpha if k not in net.index]
    if extra:
        raise InvalidMap(f"node map has ids outside the network: {extra[:5]}")
    if codomain is None:
        targets = sorted(set(alpha.values()))
    else:
        targets = list(codomain.node_ids if isinstance(codomain, Network) else codomain)
        targets = [str(t) for t in targets]
        dangling = set(alpha.values()) - set(targets)
        if dangling:
            raise InvalidMap(f"images outside the codomain: {sorted(dangling)[:5]}")
    fibre = dict.fromkeys(targets, 0.0)
    for v in net.node_ids:
        fibre[alpha[v]] += net.node_weight[v]
    return Network(
        tuple(Node(t, w) for t, w in fibre.items()),
        tuple(Edge(e.id, alpha[e.source], alpha[e.target], e.weight) for e in net.edges),
    )


def product(a: Network, b: Network) -> Network:
    """Categorical product: nodes ``V_a x V_b``, links ``E_a x E_b``.

    Weights multiply; pair ids are written ``"(x,y)"``.
    """
    nodes = tuple(
        Node(f"({u.id},{v.id})", u.weight * v.weight) for u in a.nodes for v in b.nodes
    )
    edges = tuple(
        Edge(
            f"({e.id},{h.id})",
            f"({e.source},{h.source})",
            f"({e.target},{h.target})",
            e.weight * h.weight,
        )
        for e in a.edges
        for h in b.edges
    )
    return Network(nodes, edges)


def disjoint_union(a: Network, b: Network, tags=("a", "b")) -> Network:
    """Tagged union; every id of ``a`` becomes ``"a:<id>"``, likewise for ``b``."""
    nodes, edges = [], []
    for tag, net in zip(tags, (a, b)):
        nodes += [Node(f"{tag}:{n.id}", n.weight) for n in net.nodes]
        edges += [
            Edge(f"{tag}:{e.id}", f"{tag}:{e.source}", f"{tag}:{e.target}", e.weight)
            for e in net.edges
        ]
    return Network(tuple(nodes), tuple(edges))


def weakly_connected_components(net: Network) -> Partition:
    """Blocks of the equivalence relation generated by adjacency.

    Blocks are frozensets, ordered by their smallest node id.
    """
    parent = {v: v for v in net.node_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in net.edges:
        ra, rb = find(e.source), find(e.target)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
    blocks: dict[str, set] = {}
    for v in net.node_ids:
        blocks.setdefault(find(v), set()).add(v)
    return normalize_partition(blocks.values())


def normalize_partition(blocks) -> Partition:
    """Canonical form: tuple of frozensets sorted by smallest member."""
    out = [frozenset(str(v) for v in b) for b in blocks]
    return tuple(sorted(out, key=lambda b: (min(b, default=""), len(b))))


def check_partition(net: Network, blocks) -> Partition:
    """Validate that ``blocks`` partitions the nodes of ``net``."""
    part = normalize_partition(blocks)
    seen: set = set()
    for b in part:
        if not b:
            raise InvalidPartition("empty block")
        if seen & b:
            raise InvalidPartition(f"blocks overlap on {sorted(seen & b)[:5]}")
        seen |= b
    if seen != set(net.node_ids):
        raise InvalidPartition(
            "blocks do not cover the node set exactly: "
            f"missing {sorted(set(net.node_ids) - seen)[:5]}, "
            f"unknown {sorted(seen - set(net.node_ids))[:5]}"
        )
    return part


def network_weight_totals(net: Network) -> tuple[float, float]:
    """``(total node weight, total link weight)``."""
    return (
        math.fsum(n.weight for n in net.nodes),
        math.fsum(e.weight for e in net.edges),
    )
