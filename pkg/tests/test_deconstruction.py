import numpy as np
import pytest

from pwpnet.datasets import directed_cycle
from pwpnet.deconstruction import (
    StopRule,
    build_dendrogram,
    clusters,
    core_periphery,
    deconstruct,
    is_trees_or_cycles,
)
from pwpnet.errors import NumericalError, RankerFailure, ValidationError
from pwpnet.link_ranking import Method
from pwpnet.network import build_network, disjoint_union, from_edge_list
from pwpnet.ranking import Kind

from conftest import random_network


def test_stop_rule_parse():
    assert StopRule.parse("empty") == StopRule("empty")
    assert StopRule.parse("trees-or-cycles").kind == "trees-or-cycles"
    assert StopRule.parse("steps=3") == StopRule("steps", 3)
    assert str(StopRule.parse("steps=3")) == "steps=3"
    for bad in ("steps=-1", "steps", "forever"):
        with pytest.raises(ValidationError):
            StopRule.parse(bad)


def test_trees_or_cycles():
    assert is_trees_or_cycles(from_edge_list(directed_cycle([1, 2, 3])))
    assert is_trees_or_cycles(from_edge_list([(1, 2), (1, 3), (3, 4)]))
    assert not is_trees_or_cycles(from_edge_list(directed_cycle([1, 2, 3]) + [(1, 3)]))


def test_edgeless():
    run = deconstruct(build_network(["a", "b"]))
    assert run.trace == ()
    assert {r.members for r in run.dendrogram.roots} == {frozenset("a"), frozenset("b")}
    assert all(not r.children for r in run.dendrogram.roots)


@pytest.mark.parametrize("method", list(Method))
def test_single_edge(method):
    run = deconstruct(from_edge_list([(1, 2)]), method)
    assert len(run.trace) == 1 and run.trace[0].removed == ("1->2",)
    (root,) = run.dendrogram.roots
    assert root.members == {"1", "2"} and root.step == 0
    assert {c.members for c in root.children} == {frozenset("1"), frozenset("2")}
    assert all(c.step == 1 for c in root.children)


def test_two_three_cycles_need_no_steps():
    net = disjoint_union(
        from_edge_list(directed_cycle([1, 2, 3])), from_edge_list(directed_cycle([1, 2, 3]))
    )
    run = deconstruct(net, stop="trees-or-cycles")
    assert run.trace == ()
    assert set(run.final_partition) == {
        frozenset({"a:1", "a:2", "a:3"}),
        frozenset({"b:1", "b:2", "b:3"}),
    }


def test_bidirected_pair_run_to_empty():
    net = from_edge_list([(1, 2), (2, 1)])
    run = deconstruct(net, Method.BRIDGE)
    # the two links are symmetric, so both go in one step
    assert len(run.trace) == 1 and set(run.trace[0].removed) == {"1->2", "2->1"}


def test_steps_rule():
    net = from_edge_list([(1, 2, 0.9), (2, 3, 0.5), (3, 4, 0.7), (4, 5, 0.3), (5, 1, 0.6)])
    full = deconstruct(net, Method.BRIDGE)
    assert len(full.trace) > 2
    run = deconstruct(net, Method.BRIDGE, stop="steps=2")
    assert run.trace == full.trace[:2]
    assert deconstruct(net, Method.BRIDGE, stop="steps=0").trace == ()


def test_lowest_direction_removes_bottom_block():
    net = from_edge_list([(1, 2), (2, 3), (3, 4)])
    run = deconstruct(net, Method.BRIDGE, direction="lowest", stop="steps=1")
    assert run.trace[0].removed == run.trace[0].ranking.blocks[-1]


def test_invalid_direction():
    with pytest.raises(ValidationError):
        deconstruct(from_edge_list([(1, 2)]), direction="sideways")


def test_ranker_failure_is_wrapped():
    def boom(net):
        raise NumericalError("overflow")

    with pytest.raises(RankerFailure):
        deconstruct(from_edge_list([(1, 2)]), ranker=boom)


def _check_run(net, run):
    removed = [e for step in run.trace for e in step.removed]
    assert len(removed) == len(set(removed))
    assert set(removed) <= set(net.edge_ids)
    assert len(run.trace) <= len(net.edges)
    parts = [run.initial_partition] + [s.partition for s in run.trace]
    for coarse, fine in zip(parts, parts[1:]):
        for block in fine:
            assert any(block <= c for c in coarse)
    # internal dendrogram nodes are exactly the non-singleton components seen
    seen = {b for p in parts for b in p}
    internal = {n.members for n in run.dendrogram.walk() if not n.is_leaf}
    assert internal == {b for b in seen if len(b) > 1}
    assert run.dendrogram.leaves() == set(net.node_ids)
    for child, parent in run.dendrogram.parent_map().items():
        assert child < parent
        # immediate containment: nothing seen sits strictly between
        assert not any(child < b < parent for b in seen)


@pytest.mark.parametrize("method", list(Method))
def test_invariants_random(method):
    rng = np.random.default_rng(17)
    for _ in range(8):
        net = random_network(rng, int(rng.integers(1, 7)), p=0.4, multi=True)
        for direction in ("highest", "lowest"):
            run = deconstruct(net, method, direction=direction)
            _check_run(net, run)
            assert set(e for s in run.trace for e in s.removed) == set(net.edge_ids)


def test_build_dendrogram_nested():
    parts = [
        (frozenset("abcd"),),
        (frozenset("ab"), frozenset("cd")),
        (frozenset("a"), frozenset("b"), frozenset("cd")),
    ]
    d = build_dendrogram("abcd", parts)
    (root,) = d.roots
    assert [c.members for c in root.children] == [frozenset("ab"), frozenset("cd")]
    cd = root.children[1]
    assert cd.step == 1
    assert {c.step for c in cd.children} == {None}
    assert {c.step for c in root.children[0].children} == {2}


@pytest.mark.parametrize("method", [Method.BARYCENTRIC, Method.BRIDGE])
def test_s_clusters(S, method):
    assert set(clusters(S, method)) == {
        frozenset({"1", "2", "3", "4"}),
        frozenset({"5", "6", "7", "8"}),
        frozenset({"9", "10", "11", "12"}),
    }


@pytest.mark.parametrize("method", [Method.BARYCENTRIC, Method.BRIDGE])
def test_s_rings(S, method):
    rd = core_periphery(S, method)
    assert rd.rings == (
        frozenset({"4", "6", "9"}),
        frozenset({"1", "3", "5", "7", "10", "12"}),
        frozenset({"2", "8", "11"}),
    )
    assert rd.core == {"4", "6", "9"}
    assert rd.steps == (3, 2, 1)


def test_star_is_single_ring():
    net = from_edge_list([(1, 2), (1, 3), (1, 4)])
    for method in Method:
        rd = core_periphery(net, method)
        assert rd.rings == (frozenset({"1", "2", "3", "4"}),)
        assert len(rd.trace) == 1 and len(rd.trace[0].removed) == 3


def test_edgeless_is_single_ring():
    rd = core_periphery(build_network(["x", "y"]))
    assert rd.rings == (frozenset({"x", "y"}),) and rd.steps == (0,)


def test_kind_is_forwarded():
    net = from_edge_list([(1, 2), (2, 3), (3, 4)])
    a = deconstruct(net, Method.BRIDGE, Kind.DEPENDENCE, stop="steps=1")
    b = deconstruct(net, Method.BRIDGE, Kind.INFLUENCE, stop="steps=1")
    assert a.trace[0].removed == ("3->4",)
    assert b.trace[0].removed == ("1->2",)
