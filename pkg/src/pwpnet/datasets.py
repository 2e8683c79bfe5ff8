"""Small reference networks."""

from .network import Network, from_edge_list

__all__ = ["network_s", "directed_cycle", "path_network"]

CYCLES_S = ((1, 2, 3, 4), (5, 6, 7, 8), (9, 10, 11, 12))
CONNECTOR_S = (4, 6, 9)


def directed_cycle(labels) -> list:
    labels = list(labels)
    return [(labels[i], labels[(i + 1) % len(labels)]) for i in range(len(labels))]


def network_s() -> Network:
    """Three directed 4-cycles joined by the directed 3-cycle 4 -> 6 -> 9 -> 4.

    12 nodes, 15 links, unit weights.  The rotation 4 -> 6 -> 9 permutes
    the three 4-cycles.
    """
    pairs = [p for cyc in CYCLES_S for p in directed_cycle(cyc)]
    pairs += directed_cycle(CONNECTOR_S)
    return from_edge_list(pairs)


def path_network(n: int) -> Network:
    """Directed path 1 -> 2 -> ... -> n with unit weights."""
    return from_edge_list([(i, i + 1) for i in range(1, n)], nodes=range(1, n + 1))
