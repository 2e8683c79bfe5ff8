"""Acceptance criteria, one test per criterion (per method where it varies).

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from pwpnet.constructions import barycentric, dual
from pwpnet.deconstruction import clusters, core_periphery, deconstruct
from pwpnet.influence import (
    SeriesParams,
    influence_matrix,
    monte_carlo_active_paths,
    path_oracle,
)
from pwpnet.link_ranking import barycentric_influence_oracle, dual_influence_oracle
from pwpnet.modularity import modularity_Q, modularity_Q_lambda
from pwpnet.ranking import count_rankings, enumerate_rankings, ranking_isomorphism_classes

from conftest import ACCEPTANCE_RESULTS, random_network

DATA = Path(__file__).resolve().parent.parent / "data"
S_CYCLES = {
    frozenset({"1", "2", "3", "4"}),
    frozenset({"5", "6", "7", "8"}),
    frozenset({"9", "10", "11", "12"}),
}
S_RINGS = (
    frozenset({"4", "6", "9"}),
    frozenset({"1", "3", "5", "7", "10", "12"}),
    frozenset({"2", "8", "11"}),
)
METHODS = ["dual", "barycentric", "bridge"]


def record(name, ok, detail=""):
    ACCEPTANCE_RESULTS.append((name, bool(ok), detail))
    assert ok, f"{name}: {detail}"


def _fmt(part):
    return " ".join("{" + ",".join(sorted(b, key=int)) + "}" for b in sorted(part, key=lambda b: min(map(int, b))))


def test_criterion_1_path_oracle():
    rng = np.random.default_rng(101)
    params = SeriesParams(max_terms=30)
    worst = 0.0
    start = time.perf_counter()
    for _ in range(50):
        n = int(rng.integers(1, 7))
        lam = float(rng.choice([0.5, 1.0, 2.0]))
        net = random_network(rng, n, p=float(rng.uniform(0.2, 0.8)))
        gap = np.abs(influence_matrix(net, lam).T - path_oracle(net, lam, params).T)
        worst = max(worst, float(gap.max()) if gap.size else 0.0)
    elapsed = time.perf_counter() - start
    record(
        "1 oracle equivalence",
        worst <= 1e-8 and elapsed < 10.0,
        f"max |T - oracle| = {worst:.2e} (tol 1e-8), {elapsed:.2f}s (limit 10s)",
    )


def test_criterion_2_expected_active_paths():
    # a case is one network; all of its entries are re-run with a new seed at most once
    rng = np.random.default_rng(202)
    failures, entries, reseeded = [], 0, 0
    for case in range(10):
        n = int(rng.integers(2, 5))
        lam = float(rng.choice([0.5, 1.0, 2.0]))
        net = random_network(rng, n, p=0.5)
        T = influence_matrix(net, lam)
        pairs = [(t, s) for t in net.node_ids for s in net.node_ids]
        entries += len(pairs)
        for attempt in range(2):
            bad = []
            for k, (target, source) in enumerate(pairs):
                seed = 10_000 * case + 1_000 * attempt + k
                est, err = monte_carlo_active_paths(net, lam, target, source, 100_000, 30, seed)
                exact = T.entry(target, source)
                if abs(est - exact) > 3 * err:
                    bad.append(f"case {case} T[{target},{source}]={exact:.3g} est={est:.3g} se={err:.3g}")
            if not bad:
                break
            reseeded += attempt == 0
        failures += bad
    record(
        "2 expected active paths",
        not failures,
        f"{entries} entries in 10 cases, {reseeded} cases re-seeded, outside 3 SE: {failures or 'none'}",
    )


def test_criterion_3_dual_and_barycentric_chain_sums():
    rng = np.random.default_rng(303)
    worst = {"dual": 0.0, "barycentric": 0.0}
    for _ in range(25):
        n = int(rng.integers(1, 6))
        lam = float(rng.choice([0.5, 1.0, 2.0]))
        net = random_network(rng, n, p=0.5, multi=True)
        for name, build, oracle in (
            ("dual", dual, dual_influence_oracle),
            ("barycentric", barycentric, barycentric_influence_oracle),
        ):
            tagged = build(net)
            T = influence_matrix(tagged.network, lam)
            idx = [T.index_map[f"edge:{e}"] for e in net.edge_ids]
            direct = T.T[np.ix_(idx, idx)]
            gap = np.abs(direct - oracle(net, lam, 25).T)
            worst[name] = max(worst[name], float(gap.max()) if gap.size else 0.0)
    record(
        "3 dual and barycentric chain sums",
        max(worst.values()) <= 1e-8,
        f"max gap dual {worst['dual']:.2e}, barycentric {worst['barycentric']:.2e} (tol 1e-8)",
    )


@pytest.mark.parametrize("method", METHODS)
def test_criterion_4_s_clusters(S, method):
    got = set(clusters(S, method, "importance", 1.0, "trees-or-cycles"))
    record(
        f"4 S clusters [{method}]",
        got == S_CYCLES,
        f"got {_fmt(got)}; expected {_fmt(S_CYCLES)}",
    )


@pytest.mark.parametrize("method", METHODS)
def test_criterion_5_s_core_periphery(S, method):
    rd = core_periphery(S, method, "importance", 1.0)
    record(
        f"5 S core-periphery [{method}]",
        rd.rings == S_RINGS,
        f"got rings {' '.join(_fmt([r]) for r in rd.rings)}",
    )


def test_criterion_6_construction_sizes(S):
    dS = dual(S).network
    ok = len(dS.nodes) == 15 and len(dS.edges) == 21
    rng = np.random.default_rng(606)
    bad = 0
    for _ in range(100):
        net = random_network(rng, int(rng.integers(1, 8)), p=float(rng.uniform(0.1, 0.7)), multi=True)
        b = barycentric(net).network
        d = dual(net).network
        deg = sum(net.out_degree[v] * net.in_degree[v] for v in net.node_ids)
        if (
            len(b.nodes) != len(net.nodes) + len(net.edges)
            or len(b.edges) != 2 * len(net.edges)
            or len(d.edges) != deg
        ):
            bad += 1
    record(
        "6 construction sizes",
        ok and bad == 0,
        f"dual(S): {len(dS.nodes)} nodes, {len(dS.edges)} links; {bad}/100 random violations",
    )


def test_criterion_7_modularity(S):
    rng = np.random.default_rng(707)
    worst_zero, worst_limit = 0.0, 0.0
    checked = 0
    while checked < 50:
        n = int(rng.integers(1, 7))
        net = random_network(rng, n, p=0.6)
        if not net.edges:
            continue
        checked += 1
        worst_zero = max(worst_zero, abs(modularity_Q(net, [set(net.node_ids)]).value))
        labels = rng.integers(0, 2, n)
        blocks = [b for b in ({str(i) for i in range(n) if labels[i] == k} for k in (0, 1)) if b]
        q = modularity_Q(net, blocks).value
        ql = modularity_Q_lambda(net, blocks, 1e-6, unit_node_weights=True).value
        worst_limit = max(worst_limit, abs(q - ql))
    grid = [0.0, 0.5, 1.0, 1.5, 2.0]
    vals = [modularity_Q_lambda(S, list(S_CYCLES), lam).value for lam in grid]
    decreasing = all(a > b for a, b in zip(vals, vals[1:]))
    record(
        "7 modularity",
        worst_zero <= 1e-12 and worst_limit <= 1e-4 and decreasing,
        f"max |Q(one block)| {worst_zero:.1e}, max |Q_1e-6 - Q| {worst_limit:.1e}, "
        f"S Q_lambda {', '.join(f'{v:.4f}' for v in vals)}",
    )


def test_criterion_8_ranking_combinatorics():
    counts, enumerated, classes = [], [], []
    for n in range(1, 7):
        found = list(enumerate_rankings(range(n)))
        counts.append(count_rankings(n))
        enumerated.append(len(set(found)))
        classes.append(len(ranking_isomorphism_classes(found)))
    ok = (
        counts == enumerated
        and counts[:3] == [1, 3, 13]
        and classes == [2 ** (n - 1) for n in range(1, 7)]
    )
    record("8 ranking combinatorics", ok, f"counts {counts}, classes {classes}")


def test_criterion_9_deconstruction_invariants():
    rng = np.random.default_rng(909)
    problems = []
    for case in range(50):
        net = random_network(rng, int(rng.integers(1, 7)), p=float(rng.uniform(0.2, 0.6)), multi=True)
        method = METHODS[case % 3]
        direction = "highest" if case % 2 == 0 else "lowest"
        run = deconstruct(net, method, direction=direction)
        removed = [e for s in run.trace for e in s.removed]
        parts = [run.initial_partition] + [s.partition for s in run.trace]
        seen = {b for p in parts for b in p}
        checks = {
            "terminates": len(run.trace) <= len(net.edges),
            "disjoint removal": len(removed) == len(set(removed)),
            "coverage": set(removed) == set(net.edge_ids),
            "refinement": all(
                any(b <= c for c in coarse) for coarse, fine in zip(parts, parts[1:]) for b in fine
            ),
            "immediate containment": all(
                child < parent and not any(child < b < parent for b in seen)
                for child, parent in run.dendrogram.parent_map().items()
            ),
            "leaves": run.dendrogram.leaves() == set(net.node_ids),
        }
        problems += [(case, k) for k, ok in checks.items() if not ok]
    record("9 deconstruction invariants", not problems, f"50 runs, violations: {problems or 'none'}")


def _cli(args, cwd):
    proc = subprocess.run(
        [sys.executable, "-m", "pwpnet", *args], capture_output=True, cwd=cwd, check=False
    )
    return proc.returncode, proc.stdout


def test_criterion_10_cli_determinism(tmp_path):
    s_file = str(DATA / "network_s.json")
    part = str(DATA / "network_s_cycles.json")
    tri = str(DATA / "triangle.tsv")
    tri_nodes = str(DATA / "triangle_nodes.tsv")
    commands = [
        ["rank-nodes", s_file, "--seed", "3"],
        ["rank-nodes", tri, "--node-weights", tri_nodes, "--kind", "influence"],
        ["rank-links", s_file, "--method", "dual"],
        ["rank-links", s_file, "--method", "barycentric", "--lambda", "0.5"],
        ["rank-links", s_file, "--method", "bridge", "--kind", "dependence"],
        ["cluster", s_file, "--method", "bridge", "--dendrogram", "dendro.json"],
        ["cluster", s_file, "--method", "barycentric", "--stop", "empty", "--format", "dot"],
        ["core-periphery", s_file, "--method", "barycentric"],
        ["core-periphery", s_file, "--method", "bridge", "--format", "dot"],
        ["modularity", s_file, "--partition", part, "--lambda-grid", "0,0.5,1,1.5,2"],
        ["influence", s_file, "--lambda", "2"],
        ["transform", s_file, "--op", "dual"],
        ["transform", s_file, "--op", "barycentric", "--format", "dot"],
        ["transform", tri, "--op", "product", "--other", tri],
        ["transform", tri, "--op", "union", "--other", tri],
        ["oracle", tri, "--mode", "path"],
        ["oracle", tri, "--mode", "monte-carlo", "--samples", "20000", "--seed", "7"],
    ]
    differing = []
    for cmd in commands:
        outputs = []
        for run in ("a", "b"):
            cwd = tmp_path / run / cmd[0]
            cwd.mkdir(parents=True, exist_ok=True)
            code, out = _cli(cmd, cwd)
            extra = (cwd / "dendro.json").read_bytes() if (cwd / "dendro.json").exists() else b""
            outputs.append((code, out, extra))
            (cwd / "dendro.json").unlink(missing_ok=True)
        if outputs[0] != outputs[1] or outputs[0][0] != 0:
            differing.append(" ".join(cmd[:1] + cmd[2:]))
    record(
        "10 CLI determinism",
        not differing,
        f"{len(commands)} commands run twice, differing or failing: {differing or 'none'}",
    )
