"""Indirect influences: the PWP map and two independent oracles.

The PWP map turns a matrix of direct influences ``D`` (with node weights
``f`` folded in column-wise) into the matrix of indirect influences

    T = (exp(lam * D.f) - I) / (exp(lam) - 1)

where ``D.f`` is :func:`bullet`.  ``T[i, j]`` is the influence of node j
on node i.

The oracles evaluate the same quantity without a matrix exponential:
:func:`path_oracle` sums over directed edge paths and
:func:`monte_carlo_active_paths` counts randomly activated paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatch,
    NonFiniteInput,
    NumericalError,
    OracleBudgetExceeded,
    ProbabilityOutOfRange,
    ValidationError,
)
from .network import Network, adjacency

__all__ = [
    "InfluenceMatrix",
    "SeriesParams",
    "bullet",
    "expm_minus_identity",
    "pwp_weighted",
    "pwp",
    "influence_matrix",
    "path_weight_coefficients",
    "walk_series",
    "path_oracle",
    "MonteCarloEstimate",
    "monte_carlo_active_paths",
]

DEFAULT_LAMBDA = 1.0


@dataclass(frozen=True)
class InfluenceMatrix:
    """Indirect influences ``T`` at parameter ``lam``.

    ``T[i, j]`` is the influence of ``ids[j]`` on ``ids[i]``.  ``ids`` is
    ``None`` when the matrix was computed from a bare ``(D, f)`` pair.
    """

    T: np.ndarray
    lam: float
    ids: tuple | None = None

    @property
    def index_map(self) -> dict:
        ids = self.ids if self.ids is not None else range(self.T.shape[0])
        return {v: i for i, v in enumerate(ids)}

    def entry(self, target, source) -> float:
        """Influence of node ``source`` on node ``target``."""
        idx = self.index_map
        return float(self.T[idx[target], idx[source]])


@dataclass(frozen=True)
class SeriesParams:
    """Truncation of the path series used by :func:`path_oracle`.

    ``tolerance`` is an absolute bound on the neglected tail; summation
    stops early only once a rigorous tail estimate drops below it.
    ``max_terms`` is the longest path length summed.
    """

    tolerance: float = 1e-14
    max_terms: int = 30
    max_work: int = 50_000_000

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        if self.max_terms < 1:
            raise ValidationError("max_terms must be at least 1")


def bullet(D, f) -> np.ndarray:
    """Column scaling ``(D.f)[i, j] = D[i, j] * f[j]``."""
    D = np.asarray(D, dtype=float)
    f = np.asarray(f, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionMismatch(f"D must be square, got shape {D.shape}")
    if f.shape != (D.shape[1],):
        raise DimensionMismatch(
            f"f has shape {f.shape}, expected ({D.shape[1]},) to match D"
        )
    return D * f[np.newaxis, :]


def expm_minus_identity(A, tol: float = 1e-12) -> np.ndarray:
    """Return ``exp(A) - I`` by scaling and squaring.

    The scaled matrix ``X = A / 2**s`` has infinity norm at most 1/2.
    ``exp(X) - I`` is summed from its Taylor series (no identity term, so
    no cancellation for small ``A``) until a term falls below ``tol``
    relative to the partial sum, then squared back up with
    ``exp(2X) - I = E @ E + 2 E`` where ``E = exp(X) - I``.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    norm = np.abs(A).sum(axis=1).max()
    if norm == 0.0:
        return np.zeros_like(A)
    s = max(0, math.ceil(math.log2(norm / 0.5)))
    X = A / 2.0**s
    E = X.copy()
    term = X
    for k in range(2, 200):
        term = term @ X / k
        E += term
        tnorm = np.abs(term).sum(axis=1).max()
        if tnorm <= tol * np.abs(E).sum(axis=1).max():
            break
    for _ in range(s):
        E = E @ E + 2.0 * E
    return E


def _check_lambda(lam):
    lam = float(lam)
    if not math.isfinite(lam):
        raise NonFiniteInput(f"lambda must be finite, got {lam}")
    if lam < 0:
        raise ValidationError(f"lambda must be >= 0, got {lam}")
    return lam


def pwp_weighted(D, f, lam: float = DEFAULT_LAMBDA, ids=None) -> InfluenceMatrix:
    """PWP map on a double-weighted network given as ``(D, f)``.

    At ``lam == 0`` the continuity limit ``D.f`` is returned.

    Raises
    ------
    NonFiniteInput
        ``D``, ``f`` or ``lam`` contain NaN or infinity.
    NumericalError
        The exponential overflows.
    """
    lam = _check_lambda(lam)
    if not (np.all(np.isfinite(np.asarray(D, float))) and np.all(np.isfinite(np.asarray(f, float)))):
        raise NonFiniteInput("D and f must have finite entries")
    A = bullet(D, f)
    if lam == 0.0:
        T = A.copy()
    else:
        with np.errstate(over="ignore", invalid="ignore"):
            T = expm_minus_identity(lam * A) / math.expm1(lam)
        if not np.all(np.isfinite(T)):
            raise NumericalError(
                f"matrix exponential overflowed at lambda={lam}; "
                "reduce lambda or rescale the weights"
            )
    return InfluenceMatrix(T, lam, None if ids is None else tuple(ids))


def pwp(D, lam: float = DEFAULT_LAMBDA, ids=None) -> InfluenceMatrix:
    """PWP map with unit node weights."""
    D = np.asarray(D, dtype=float)
    return pwp_weighted(D, np.ones(D.shape[0]), lam, ids)


def influence_matrix(net: Network, lam: float = DEFAULT_LAMBDA) -> InfluenceMatrix:
    """Indirect influences of a :class:`Network`, indexed by sorted node id."""
    pair = adjacency(net)
    return pwp_weighted(pair.D, pair.f, lam, pair.ids)


def path_weight_coefficients(lam: float, K: int, step: int = 1) -> np.ndarray:
    """Weights ``c[k] = lam**(step*k) / ((step*k)! (exp(lam) - 1))`` for k = 0..K.

    ``c[0]`` is 0.  ``step=2`` gives the coefficients of length-doubled
    paths.  At ``lam == 0`` the limits are used (only ``c[1]`` with
    ``step=1`` survives).
    """
    lam = _check_lambda(lam)
    c = np.zeros(K + 1)
    if lam == 0.0:
        if step == 1 and K >= 1:
            c[1] = 1.0
        return c
    denom = math.expm1(lam)
    for k in range(1, K + 1):
        m = step * k
        c[k] = math.exp(m * math.log(lam) - math.lgamma(m + 1)) / denom
    return c


def walk_series(
    n: int,
    transitions,
    coeffs: np.ndarray,
    params: "SeriesParams",
    method: str = "dp",
) -> np.ndarray:
    """Sum ``coeffs[k]`` times the weight of every k-step walk, for k >= 1.

    ``transitions`` is a list of ``(from_state, to_state, factor)``; a
    walk's weight is the product of its factors.  Entry ``[i, j]`` of the
    result collects the walks that start in state ``j`` and end in ``i``.

    ``method="enumerate"`` visits every walk explicitly and stops with
    :class:`OracleBudgetExceeded` past ``params.max_work`` walks.
    ``method="dp"`` groups walks by their current state and extends them
    one transition at a time; it stops early once the remaining tail is
    provably below ``params.tolerance``.
    """
    K = len(coeffs) - 1
    out = np.zeros((n, n))
    if method == "dp":
        work = n * len(transitions) * K
        if work > params.max_work:
            raise OracleBudgetExceeded(f"{work} updates exceed budget {params.max_work}")
        col_norm = np.zeros(n)
        for s, _, a in transitions:
            col_norm[s] += abs(a)
        rho = col_norm.max() if n else 0.0
        for j in range(n):
            x = [0.0] * n
            x[j] = 1.0
            for k in range(1, K + 1):
                y = [0.0] * n
                for s, t, a in transitions:
                    y[t] += a * x[s]
                x = y
                mass = sum(abs(v) for v in x)
                if mass == 0.0:
                    break
                for i in range(n):
                    out[i, j] += coeffs[k] * x[i]
                if k == K or coeffs[k] == 0.0:
                    continue
                # the ratios coeffs[k+1]/coeffs[k] decrease in k, so the tail
                # is dominated by a geometric series
                r = rho * abs(coeffs[k + 1] / coeffs[k])
                if r < 1 and abs(coeffs[k]) * mass * r / (1 - r) <= params.tolerance:
                    break
    elif method == "enumerate":
        succ: dict[int, list] = {}
        for s, t, a in transitions:
            succ.setdefault(s, []).append((t, a))
        count = 0
        for j in range(n):
            stack = [(j, 1.0, 0)]
            while stack:
                state, prod, k = stack.pop()
                if k > 0:
                    out[state, j] += coeffs[k] * prod
                if k == K:
                    continue
                for t, a in succ.get(state, ()):
                    count += 1
                    if count > params.max_work:
                        raise OracleBudgetExceeded(
                            f"more than {params.max_work} walks up to length {K}"
                        )
                    stack.append((t, prod * a, k + 1))
    else:
        raise ValueError(f"unknown method {method!r}")
    return out


def path_oracle(
    net: Network,
    lam: float = DEFAULT_LAMBDA,
    params: SeriesParams | None = None,
    method: str = "dp",
) -> InfluenceMatrix:
    """Indirect influences by summing over directed edge paths.

    Every path ``e_1, ..., e_k`` from ``v`` to ``u`` contributes
    ``w(e_k) f(s e_k) ... w(e_1) f(s e_1) * lam**k / ((exp(lam) - 1) k!)``
    to ``T[u, v]``; parallel links are distinct paths.  See
    :func:`walk_series` for ``method``.

    Raises
    ------
    OracleBudgetExceeded
        The work would exceed ``params.max_work``.
    """
    params = params or SeriesParams()
    c = path_weight_coefficients(lam, params.max_terms)
    idx = net.index
    transitions = [
        (idx[e.source], idx[e.target], e.weight * net.node_weight[e.source])
        for e in net.edges
    ]
    T = walk_series(len(idx), transitions, c, params, method)
    return InfluenceMatrix(T, float(lam), net.node_ids)


class MonteCarloEstimate(NamedTuple):
    estimate: float
    stderr: float


def monte_carlo_active_paths(
    net: Network,
    lam: float,
    target: str,
    source: str,
    samples: int = 100_000,
    K: int = 30,
    seed: int = 0,
) -> MonteCarloEstimate:
    """Estimate ``T[target, source]`` as an expected number of active paths.

    Link weights and node weights are read as activation probabilities.
    Each sample draws a path length ``k`` from ``lam**k / ((exp(lam)-1) k!)``
    (truncated at ``K`` and renormalised), then counts the ``source ->
    target`` edge paths of length ``k`` whose links and source-side nodes
    are all active.  Activations are drawn afresh for every position along
    the path, so the components of a path are independent even when it
    revisits a link.

    Returns
    -------
    MonteCarloEstimate
        Sample mean of the active-path count and its standard error.

    Raises
    ------
    ProbabilityOutOfRange
        A link or node weight lies outside ``[0, 1]``.
    """
    lam = _check_lambda(lam)
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    for e in net.edges:
        if not 0.0 <= e.weight <= 1.0:
            raise ProbabilityOutOfRange(f"link {e.id!r} has weight {e.weight}")
    for nd in net.nodes:
        if not 0.0 <= nd.weight <= 1.0:
            raise ProbabilityOutOfRange(f"node {nd.id!r} has weight {nd.weight}")
    idx = net.index
    tgt, src = idx[target], idx[source]
    n = len(idx)
    if not net.edges:
        return MonteCarloEstimate(0.0, 0.0)
    rng = np.random.default_rng(seed)
    p = path_weight_coefficients(lam, K)[1:]
    lengths = rng.choice(np.arange(1, K + 1), size=samples, p=p / p.sum())
    e_src = np.array([idx[e.source] for e in net.edges])
    e_tgt = np.array([idx[e.target] for e in net.edges])
    w = np.array([e.weight for e in net.edges])
    f = np.array([net.node_weight[v] for v in net.node_ids])
    counts = np.zeros((samples, n))
    counts[:, src] = 1.0
    for step in range(1, int(lengths.max()) + 1):
        rows = np.flatnonzero(lengths >= step)
        x = counts[rows]
        node_on = rng.random((rows.size, n)) < f
        link_on = rng.random((rows.size, w.size)) < w
        flow = x[:, e_src] * node_on[:, e_src] * link_on
        y = np.zeros_like(x)
        for k in range(w.size):
            y[:, e_tgt[k]] += flow[:, k]
        counts[rows] = y
    hits = counts[:, tgt]
    mean = float(hits.mean())
    stderr = float(hits.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return MonteCarloEstimate(mean, stderr)
