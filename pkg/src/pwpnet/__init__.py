"""PWP indirect influences on double-weighted directed networks.

Node and link rankings, Girvan-Newman style deconstruction into clusters
and core-periphery rings, and the PWP-deformed modularity.
"""

from .constructions import TaggedNetwork, barycentric, dual
from .datasets import network_s
from .deconstruction import (
    Dendrogram,
    RingDecomposition,
    StopRule,
    clusters,
    core_periphery,
    deconstruct,
)
from .errors import NumericalError, PWPError, ValidationError
from .influence import (
    InfluenceMatrix,
    SeriesParams,
    bullet,
    influence_matrix,
    monte_carlo_active_paths,
    path_oracle,
    pwp,
    pwp_weighted,
)
from .link_ranking import (
    Method,
    barycentric_influence_oracle,
    dual_influence_oracle,
    link_scores,
    rank_links,
    rank_links_barycentric,
    rank_links_bridge,
    rank_links_dual,
)
from .modularity import ModularityReport, modularity_Q, modularity_Q_lambda
from .network import (
    AdjacencyPair,
    Edge,
    Network,
    Node,
    adjacency,
    build_network,
    disjoint_union,
    from_edge_list,
    product,
    pushforward,
    weakly_connected_components,
)
from .ranking import (
    Kind,
    Ranking,
    count_rankings,
    enumerate_rankings,
    node_scores,
    rank_nodes,
    ranking_from_scores,
    scores,
)

__version__ = "0.1.0"
