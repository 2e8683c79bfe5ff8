"""Dual and barycentric-division networks.

Both constructions turn the links of a network into nodes of a new one, so
node rankings on the new network become link rankings on the old.  Each
returns a :class:`TaggedNetwork` whose ``origin`` maps every new node id
back to the original link (and, for the barycentric division, node) it
stands for.
"""

from __future__ import annotations

from dataclasses import dataclass

from .network import Edge, Network, Node

__all__ = ["TaggedNetwork", "dual", "barycentric", "edge_node_id", "node_node_id"]


def edge_node_id(edge_id: str) -> str:
    return f"edge:{edge_id}"


def node_node_id(node_id: str) -> str:
    return f"node:{node_id}"


@dataclass(frozen=True)
class TaggedNetwork:
    """A constructed network plus ``origin``: new node id -> (tag, original id).

    ``tag`` is ``"edge"`` or ``"node"``.
    """

    network: Network
    origin: dict

    def edge_items(self) -> dict:
        """New node id -> original edge id, for nodes that stand for links."""
        return {k: v for k, (tag, v) in self.origin.items() if tag == "edge"}


def dual(net: Network, normalize_degrees: bool = True) -> TaggedNetwork:
    """Dual network: links become nodes, concatenations become links.

    Node ``e`` of the dual has weight ``w(e)``.  Each pair ``e, h`` with
    ``target(e) == v == source(h)`` gives a dual link ``e -> h`` of weight
    ``f(v) / (out(v) * in(v))``.  Degrees count parallel links.

    ``normalize_degrees=False`` uses ``f(v)`` alone.  This is not the
    standard dual; it exists for comparing how strongly the degree damping
    at hubs drives the dual link ranking.
    """
    outd, ind = net.out_degree, net.in_degree
    by_source: dict[str, list[Edge]] = {}
    for h in net.edges:
        by_source.setdefault(h.source, []).append(h)
    nodes = tuple(Node(edge_node_id(e.id), e.weight) for e in net.edges)
    edges = []
    for e in net.edges:
        v = e.target
        for h in by_source.get(v, ()):
            w = net.node_weight[v]
            if normalize_degrees:
                w /= outd[v] * ind[v]
            edges.append(Edge(f"{e.id}=>{h.id}", edge_node_id(e.id), edge_node_id(h.id), w))
    origin = {edge_node_id(e.id): ("edge", e.id) for e in net.edges}
    return TaggedNetwork(Network(nodes, tuple(edges)), origin)


def barycentric(net: Network) -> TaggedNetwork:
    """Barycentric division: every link ``u -> v`` becomes ``u -> e -> v``.

    Original nodes keep their weight, the new node ``e`` gets weight
    ``w(e)`` and all links of the division have weight 1.
    """
    nodes = [Node(node_node_id(n.id), n.weight) for n in net.nodes]
    nodes += [Node(edge_node_id(e.id), e.weight) for e in net.edges]
    edges = []
    for e in net.edges:
        edges.append(Edge(f"out:{e.id}", node_node_id(e.source), edge_node_id(e.id), 1.0))
        edges.append(Edge(f"in:{e.id}", edge_node_id(e.id), node_node_id(e.target), 1.0))
    origin = {node_node_id(n.id): ("node", n.id) for n in net.nodes}
    origin.update({edge_node_id(e.id): ("edge", e.id) for e in net.edges})
    return TaggedNetwork(Network(tuple(nodes), tuple(edges)), origin)
