"""Ranking links by indirect influence.

Three methods reduce link ranking to PWP node scores:

``dual``
    score the nodes of the dual network, whose nodes are the links;
``barycentric``
    score every node of the barycentric division, then keep only the
    link-nodes (the restriction of the full ranking);
``bridge``
    score a link from its endpoints, ``E(e) = E(source) f(source)`` and
    ``F(e) = w(e) F(target)``, with ``I(e) = E(e) + F(e)``.

The two walk-sum oracles evaluate the dual and barycentric influence
matrices straight from the original network, without building either
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .constructions import barycentric, dual, edge_node_id
from .influence import (
    DEFAULT_LAMBDA,
    InfluenceMatrix,
    SeriesParams,
    influence_matrix,
    path_weight_coefficients,
    walk_series,
)
from .network import Network
from .ranking import DEFAULT_TOL, Kind, Ranking, ranking_from_scores, scores

__all__ = [
    "Method",
    "LinkScoreVector",
    "link_scores",
    "rank_links",
    "rank_links_dual",
    "rank_links_barycentric",
    "rank_links_bridge",
    "barycentric_full_ranking",
    "dual_influence_oracle",
    "barycentric_influence_oracle",
]


class Method(str, Enum):
    DUAL = "dual"
    BARYCENTRIC = "barycentric"
    BRIDGE = "bridge"


@dataclass(frozen=True)
class LinkScoreVector:
    values: Mapping
    method: Method
    kind: Kind

    def __getitem__(self, edge_id):
        return self.values[edge_id]


def _pull_back(tagged, node_score_values) -> dict:
    return {orig: node_score_values[new] for new, orig in tagged.edge_items().items()}


def link_scores(
    net: Network, method=Method.DUAL, lam: float = DEFAULT_LAMBDA, kind=Kind.IMPORTANCE
) -> LinkScoreVector:
    """Score every link of ``net`` with one of the three methods."""
    method, kind = Method(method), Kind(kind)
    if method is Method.BRIDGE:
        infl = influence_matrix(net, lam)
        E = scores(infl, Kind.DEPENDENCE).values
        F = scores(infl, Kind.INFLUENCE).values
        values = {}
        for e in net.edges:
            dep = E[e.source] * net.node_weight[e.source]
            inf = e.weight * F[e.target]
            values[e.id] = {
                Kind.DEPENDENCE: dep,
                Kind.INFLUENCE: inf,
                Kind.IMPORTANCE: dep + inf,
            }[kind]
    else:
        build = dual if method is Method.DUAL else barycentric
        tagged = build(net)
        values = _pull_back(tagged, scores(influence_matrix(tagged.network, lam), kind).values)
    return LinkScoreVector(values, method, kind)


def barycentric_full_ranking(
    net: Network, lam: float = DEFAULT_LAMBDA, kind=Kind.IMPORTANCE, tol: float = DEFAULT_TOL
) -> Ranking:
    """Joint ranking of nodes and links on the barycentric division.

    Items are ``"node:<id>"`` and ``"edge:<id>"``, so one can read off
    whether the actors or the relations of a network dominate.
    """
    tagged = barycentric(net)
    return ranking_from_scores(scores(influence_matrix(tagged.network, lam), kind), tol)


def rank_links_dual(net, lam=DEFAULT_LAMBDA, kind=Kind.IMPORTANCE, tol=DEFAULT_TOL) -> Ranking:
    return ranking_from_scores(link_scores(net, Method.DUAL, lam, kind).values, tol)


def rank_links_barycentric(net, lam=DEFAULT_LAMBDA, kind=Kind.IMPORTANCE, tol=DEFAULT_TOL) -> Ranking:
    """Restriction of :func:`barycentric_full_ranking` to the links.

    Ties and relative order are inherited from the full ranking rather than
    recomputed from the link scores alone.
    """
    full = barycentric_full_ranking(net, lam, kind, tol)
    restricted = full.restrict(edge_node_id(e.id) for e in net.edges)
    prefix = len(edge_node_id(""))
    return Ranking(tuple(tuple(x[prefix:] for x in b) for b in restricted.blocks))


def rank_links_bridge(net, lam=DEFAULT_LAMBDA, kind=Kind.IMPORTANCE, tol=DEFAULT_TOL) -> Ranking:
    return ranking_from_scores(link_scores(net, Method.BRIDGE, lam, kind).values, tol)


_RANKERS = {
    Method.DUAL: rank_links_dual,
    Method.BARYCENTRIC: rank_links_barycentric,
    Method.BRIDGE: rank_links_bridge,
}


def rank_links(
    net: Network,
    method=Method.DUAL,
    lam: float = DEFAULT_LAMBDA,
    kind=Kind.IMPORTANCE,
    tol: float = DEFAULT_TOL,
) -> Ranking:
    """Ranking of the links of ``net``, most important block first."""
    return _RANKERS[Method(method)](net, lam, Kind(kind), tol)


def _concatenations(net: Network, weigh):
    """Transitions ``e -> h`` for every pair with ``target(e) == source(h)``."""
    pos = {eid: i for i, eid in enumerate(net.edge_ids)}
    by_source: dict[str, list] = {}
    for h in net.edges:
        by_source.setdefault(h.source, []).append(h)
    return [
        (pos[e.id], pos[h.id], weigh(e))
        for e in net.edges
        for h in by_source.get(e.target, ())
    ]


def dual_influence_oracle(
    net: Network,
    lam: float = DEFAULT_LAMBDA,
    K: int = 25,
    method: str = "dp",
    params: SeriesParams | None = None,
) -> InfluenceMatrix:
    """Dual-network influences summed over chains of concatenable links.

    A chain ``f = e_0, e_1, ..., e_k = e`` contributes the product over
    ``i < k`` of ``f(v_i) w(e_i) / (out(v_i) in(v_i))`` with
    ``v_i = target(e_i)``, times ``lam**k / ((exp(lam) - 1) k!)``, to the
    influence of ``f`` on ``e``.  Rows and columns follow sorted link ids.
    """
    params = params or SeriesParams(max_terms=K)
    outd, ind = net.out_degree, net.in_degree

    def weigh(e):
        v = e.target
        return net.node_weight[v] * e.weight / (outd[v] * ind[v])

    c = path_weight_coefficients(lam, K)
    T = walk_series(len(net.edges), _concatenations(net, weigh), c, params, method)
    return InfluenceMatrix(T, float(lam), net.edge_ids)


def barycentric_influence_oracle(
    net: Network,
    lam: float = DEFAULT_LAMBDA,
    K: int = 25,
    method: str = "dp",
    params: SeriesParams | None = None,
) -> InfluenceMatrix:
    """Link-to-link block of the barycentric influences, from chains of links.

    A chain of ``k`` concatenations is a path of length ``2k`` in the
    barycentric division; it contributes the product of
    ``f(target(e_i)) w(e_i)`` times ``lam**(2k) / ((exp(lam) - 1) (2k)!)``.
    """
    params = params or SeriesParams(max_terms=K)

    def weigh(e):
        return net.node_weight[e.target] * e.weight

    c = path_weight_coefficients(lam, K, step=2)
    T = walk_series(len(net.edges), _concatenations(net, weigh), c, params, method)
    return InfluenceMatrix(T, float(lam), net.edge_ids)
