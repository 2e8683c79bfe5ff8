"""Reading and writing networks and results.

JSON is the canonical format.  Every document carries ``format_version``
and ``type``; floats are written rounded to 12 significant digits, so
serialize -> parse -> serialize reproduces the same bytes.  Networks can
also be read from a tab-separated edge list and written as DOT.
"""

from __future__ import annotations

import io as _io
import json
import math
import os
import sys
from typing import IO

import numpy as np

from .deconstruction import Deconstruction, Dendrogram, DendrogramNode, RingDecomposition, Step
from .errors import ParseError, ValidationError
from .influence import InfluenceMatrix
from .modularity import ModularityReport
from .network import Edge, Network, Node, build_network, normalize_partition
from .ranking import Ranking

__all__ = [
    "FORMAT_VERSION",
    "parse_network",
    "network_to_dict",
    "network_from_dict",
    "network_to_dot",
    "ranking_to_dict",
    "ranking_from_dict",
    "partition_to_dict",
    "partition_from_dict",
    "dendrogram_to_dict",
    "dendrogram_from_dict",
    "deconstruction_to_dict",
    "rings_to_dict",
    "rings_from_dict",
    "modularity_to_dict",
    "modularity_from_dict",
    "matrix_to_dict",
    "matrix_from_dict",
    "dumps",
    "loads",
]

FORMAT_VERSION = 1
_NODE_FIELDS = {"id", "weight"}
_EDGE_FIELDS = {"id", "source", "target", "weight"}
_NETWORK_FIELDS = {"format_version", "type", "nodes", "edges"}


def num(x) -> float:
    """Round to 12 significant digits; maps -0.0 to 0.0."""
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError(f"cannot serialize non-finite value {x}")
    x = float(f"{x:.12g}")
    return 0.0 if x == 0 else x


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON: {exc.msg}", line=exc.lineno, offset=offset) from None


def _header(kind: str) -> dict:
    return {"format_version": FORMAT_VERSION, "type": kind}


def _check_type(doc, kind):
    if not isinstance(doc, dict):
        raise ParseError(f"expected a JSON object for {kind}")
    if doc.get("type", kind) != kind:
        raise ParseError(f"expected document type {kind!r}, got {doc.get('type')!r}", field="type")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}", field="format_version")


# -- networks ---------------------------------------------------------------


def network_to_dict(net: Network) -> dict:
    doc = _header("network")
    doc["nodes"] = [
        {"id": v, "weight": num(net.node_weight[v])} for v in net.node_ids
    ]
    doc["edges"] = [
        {"id": e.id, "source": e.source, "target": e.target, "weight": num(e.weight)}
        for e in sorted(net.edges, key=lambda e: e.id)
    ]
    return doc


def _weight(rec, where):
    w = rec.get("weight", 1.0)
    if isinstance(w, bool) or not isinstance(w, (int, float)):
        raise ParseError(f"{where}: weight must be a number", field="weight")
    return float(w)


def network_from_dict(doc, strict: bool = False) -> Network:
    """Network from a parsed NetworkFile document.

    ``strict`` rejects unknown fields; otherwise they are ignored.
    """
    _check_type(doc, "network")
    if strict and set(doc) - _NETWORK_FIELDS:
        raise ParseError(f"unknown fields {sorted(set(doc) - _NETWORK_FIELDS)}")
    nodes, edges = [], []
    for i, rec in enumerate(doc.get("nodes", [])):
        where = f"nodes[{i}]"
        if not isinstance(rec, dict) or "id" not in rec:
            raise ParseError(f"{where}: expected an object with an 'id'", field="id")
        if strict and set(rec) - _NODE_FIELDS:
            raise ParseError(f"{where}: unknown fields {sorted(set(rec) - _NODE_FIELDS)}")
        nodes.append(Node(str(rec["id"]), _weight(rec, where)))
    for i, rec in enumerate(doc.get("edges", [])):
        where = f"edges[{i}]"
        if not isinstance(rec, dict):
            raise ParseError(f"{where}: expected an object")
        for key in ("id", "source", "target"):
            if key not in rec:
                raise ParseError(f"{where}: missing {key!r}", field=key)
        if strict and set(rec) - _EDGE_FIELDS:
            raise ParseError(f"{where}: unknown fields {sorted(set(rec) - _EDGE_FIELDS)}")
        edges.append(
            Edge(str(rec["id"]), str(rec["source"]), str(rec["target"]), _weight(rec, where))
        )
    return build_network(nodes, edges)


def _parse_tsv(text: str, node_text: str | None = None) -> Network:
    node_weights: dict[str, float] = {}
    if node_text is not None:
        for lineno, line in enumerate(node_text.splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.rstrip("\r\n").split("\t")
            if len(parts) not in (1, 2):
                raise ParseError("node file: expected 'id<TAB>weight'", line=lineno)
            try:
                node_weights[parts[0]] = float(parts[1]) if len(parts) == 2 else 1.0
            except ValueError:
                raise ParseError("node file: bad weight", line=lineno, field="weight") from None
    order: dict[str, None] = dict.fromkeys(node_weights)
    edges = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\r\n").split("\t")
        if len(parts) not in (2, 3):
            raise ParseError("expected 'source<TAB>target<TAB>weight'", line=lineno)
        s, t = parts[0], parts[1]
        try:
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ParseError("bad weight", line=lineno, field="weight") from None
        order.setdefault(s, None)
        order.setdefault(t, None)
        base = f"{s}->{t}"
        seen[base] = seen.get(base, 0) + 1
        eid = base if seen[base] == 1 else f"{base}#{seen[base]}"
        edges.append(Edge(eid, s, t, w))
    return build_network([Node(v, node_weights.get(v, 1.0)) for v in order], edges)


def _read(source) -> tuple[str, str | None]:
    if hasattr(source, "read"):
        data = source.read()
        name = getattr(source, "name", None)
    else:
        name = os.fspath(source)
        with open(name, "rb") as fh:
            data = fh.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not UTF-8", offset=exc.start) from None
    return data, name if isinstance(name, str) else None


def parse_network(source, fmt: str | None = None, node_weights=None, strict: bool = False) -> Network:
    """Read a network from a path or text stream.

    Parameters
    ----------
    fmt : {"json", "tsv"}, optional
        Guessed from the file extension, else from the first non-blank
        character (``{`` means JSON).
    node_weights : path or stream, optional
        TSV sidecar ``id<TAB>weight``; only used with TSV input.  Missing
        nodes default to weight 1.
    strict : bool
        Reject unknown JSON fields.

    Raises
    ------
    ParseError
        Malformed input, with line / byte offset / field diagnostics.
    ValidationError
        Well-formed input describing an invalid network.
    """
    text, name = _read(source)
    if fmt is None:
        ext = os.path.splitext(name or "")[1].lower()
        if ext in (".tsv", ".tab", ".txt"):
            fmt = "tsv"
        elif ext == ".json":
            fmt = "json"
        else:
            fmt = "json" if text.lstrip().startswith("{") else "tsv"
    if fmt == "json":
        return network_from_dict(loads(text), strict=strict)
    if fmt == "tsv":
        node_text = _read(node_weights)[0] if node_weights is not None else None
        return _parse_tsv(text, node_text)
    raise ValidationError(f"unknown network format {fmt!r}")


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def network_to_dot(net: Network, node_attrs: dict | None = None, name: str = "G") -> str:
    """DOT digraph; ``node_attrs`` maps node id -> extra attribute dict."""
    lines = [f"digraph {_dot_id(name)} {{"]
    for v in net.node_ids:
        attrs = {"weight": f"{num(net.node_weight[v]):.12g}"}
        attrs.update(node_attrs.get(v, {}) if node_attrs else {})
        body = ", ".join(f"{k}={_dot_id(str(val))}" for k, val in attrs.items())
        lines.append(f"  {_dot_id(v)} [{body}];")
    for e in sorted(net.edges, key=lambda e: e.id):
        lines.append(
            f"  {_dot_id(e.source)} -> {_dot_id(e.target)} "
            f"[id={_dot_id(e.id)}, weight={_dot_id(f'{num(e.weight):.12g}')}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- results ----------------------------------------------------------------


def ranking_to_dict(ranking: Ranking, scores=None, **meta) -> dict:
    doc = _header("ranking")
    doc.update(meta)
    doc["blocks"] = [list(b) for b in ranking.blocks]
    if scores is not None:
        doc["scores"] = {x: num(scores[x]) for b in ranking.blocks for x in b}
    return doc


def ranking_from_dict(doc) -> Ranking:
    _check_type(doc, "ranking")
    return Ranking(tuple(tuple(str(x) for x in b) for b in doc["blocks"]))


def _blocks(part) -> list:
    return [sorted(b) for b in normalize_partition(part)]


def partition_to_dict(part, **meta) -> dict:
    doc = _header("partition")
    doc.update(meta)
    doc["blocks"] = _blocks(part)
    return doc


def partition_from_dict(doc) -> tuple:
    """Partition blocks from a partition document (or a bare list of lists)."""
    if isinstance(doc, list):
        return normalize_partition(doc)
    _check_type(doc, "partition")
    if "blocks" not in doc:
        raise ParseError("partition document needs 'blocks'", field="blocks")
    return normalize_partition(doc["blocks"])


def _tree_to_dict(node: DendrogramNode) -> dict:
    return {
        "members": sorted(node.members),
        "step": node.step,
        "children": [_tree_to_dict(c) for c in node.children],
    }


def _tree_from_dict(doc) -> DendrogramNode:
    return DendrogramNode(
        frozenset(doc["members"]), doc["step"], tuple(_tree_from_dict(c) for c in doc["children"])
    )


def dendrogram_to_dict(dendro: Dendrogram) -> dict:
    doc = _header("dendrogram")
    doc["roots"] = [_tree_to_dict(r) for r in dendro.roots]
    return doc


def dendrogram_from_dict(doc) -> Dendrogram:
    _check_type(doc, "dendrogram")
    return Dendrogram(tuple(_tree_from_dict(r) for r in doc["roots"]))


def _step_to_dict(step: Step) -> dict:
    return {
        "index": step.index,
        "removed": sorted(step.removed),
        "ranking": [list(b) for b in step.ranking.blocks],
        "partition": _blocks(step.partition),
    }


def deconstruction_to_dict(run: Deconstruction, **meta) -> dict:
    doc = _header("deconstruction")
    doc.update(meta)
    doc["direction"] = run.direction
    doc["initial_partition"] = _blocks(run.initial_partition)
    doc["dendrogram"] = dendrogram_to_dict(run.dendrogram)
    doc["trace"] = [_step_to_dict(s) for s in run.trace]
    return doc


def rings_to_dict(rings: RingDecomposition, **meta) -> dict:
    doc = _header("rings")
    doc.update(meta)
    doc["rings"] = [
        {"isolation_step": s, "nodes": sorted(r)} for r, s in zip(rings.rings, rings.steps)
    ]
    return doc


def rings_from_dict(doc) -> RingDecomposition:
    _check_type(doc, "rings")
    rings = doc["rings"]
    return RingDecomposition(
        tuple(frozenset(r["nodes"]) for r in rings), tuple(r["isolation_step"] for r in rings)
    )


def modularity_to_dict(report: ModularityReport, **meta) -> dict:
    doc = _header("modularity")
    doc.update(meta)
    doc["value"] = num(report.value)
    doc["total"] = num(report.total)
    doc["blocks"] = _blocks(report.blocks)
    doc["contributions"] = [num(c) for c in report.contributions]
    return doc


def modularity_from_dict(doc) -> ModularityReport:
    _check_type(doc, "modularity")
    return ModularityReport(
        doc["value"],
        doc["total"],
        normalize_partition(doc["blocks"]),
        tuple(doc["contributions"]),
    )


def matrix_to_dict(m: InfluenceMatrix, **meta) -> dict:
    doc = _header("matrix")
    doc.update(meta)
    doc["lambda"] = num(m.lam)
    doc["ids"] = list(m.ids) if m.ids is not None else list(range(m.T.shape[0]))
    doc["rows"] = [[num(x) for x in row] for row in m.T]
    return doc


def matrix_from_dict(doc) -> InfluenceMatrix:
    _check_type(doc, "matrix")
    T = np.array(doc["rows"], dtype=float).reshape(len(doc["ids"]), len(doc["ids"]))
    return InfluenceMatrix(T, float(doc["lambda"]), tuple(doc["ids"]))


def write_text(text: str, dest: str | IO | None):
    if dest is None or dest == "-":
        sys.stdout.write(text)
    elif hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def network_from_text(text: str, fmt: str | None = None) -> Network:
    return parse_network(_io.StringIO(text), fmt)
