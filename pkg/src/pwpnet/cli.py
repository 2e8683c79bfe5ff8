"""Command-line interface: ``pwpnet <command> NETWORK [options]``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.  Errors are
reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .constructions import barycentric, dual
from .deconstruction import StopRule, core_periphery, deconstruct
from .errors import NumericalError, ValidationError
from .influence import SeriesParams, influence_matrix, monte_carlo_active_paths, path_oracle
from .link_ranking import Method, link_scores, rank_links
from .modularity import modularity_Q, modularity_Q_lambda
from .network import check_partition, disjoint_union, product
from .ranking import DEFAULT_TOL, Kind, node_scores, ranking_from_scores

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _report("UsageError", message)
        raise SystemExit(EXIT_INVALID)


def _report(kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": str(message)}) + "\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("network", help="network file (JSON, or TSV edge list)")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="PWP parameter (default 1.0)")
    p.add_argument("--kind", choices=[k.value for k in Kind], default="importance")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tie tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--input-format", choices=["json", "tsv"], default=None)
    p.add_argument("--node-weights", default=None, help="TSV sidecar of node weights")
    p.add_argument("--strict", action="store_true", help="reject unknown JSON fields")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pwpnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_common()]
    method = {"choices": [m.value for m in Method], "default": "dual"}

    sub.add_parser("rank-nodes", parents=common, help="rank nodes by PWP scores")
    p = sub.add_parser("rank-links", parents=common, help="rank links")
    p.add_argument("--method", **method)
    p = sub.add_parser("cluster", parents=common, help="clusters by removing top-ranked links")
    p.add_argument("--method", **method)
    p.add_argument("--stop", default="trees-or-cycles", help="empty | trees-or-cycles | steps=k")
    p.add_argument("--dendrogram", default=None, help="also write dendrogram and trace here")
    p = sub.add_parser("core-periphery", parents=common, help="rings by removing bottom-ranked links")
    p.add_argument("--method", **method)
    p = sub.add_parser("modularity", parents=common, help="Q and Q_lambda of a partition")
    p.add_argument("--partition", required=True, help="partition JSON file")
    p.add_argument("--lambda-grid", default=None, help='comma separated, e.g. "0,0.5,1"')
    p.add_argument("--unit-node-weights", action="store_true")
    sub.add_parser("influence", parents=common, help="dump the matrix of indirect influences")
    p = sub.add_parser("transform", parents=common, help="build a derived network")
    p.add_argument("--op", choices=["dual", "barycentric", "product", "union"], required=True)
    p.add_argument("--other", default=None, help="second network for product/union")
    p = sub.add_parser("oracle", parents=common, help="cross-check T against an oracle")
    p.add_argument("--mode", choices=["path", "monte-carlo"], default="path")
    p.add_argument("--max-terms", type=int, default=30)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--source", default=None)
    p.add_argument("--target", default=None)
    return parser


def _load(args, path=None):
    return io.parse_network(
        path or args.network, args.input_format, args.node_weights, strict=args.strict
    )


def _meta(args, **extra):
    meta = {"lambda": io.num(args.lam), "kind": args.kind}
    meta.update(extra)
    return meta


def _no_dot(args):
    if args.format == "dot":
        raise ValidationError(f"--format dot is not available for {args.command}")


def _cmd_rank_nodes(args):
    _no_dot(args)
    net = _load(args)
    s = node_scores(net, args.lam, args.kind)
    r = ranking_from_scores(s, args.tol)
    return io.dumps(io.ranking_to_dict(r, s.values, items="nodes", **_meta(args)))


def _cmd_rank_links(args):
    _no_dot(args)
    net = _load(args)
    r = rank_links(net, args.method, args.lam, args.kind, args.tol)
    s = link_scores(net, args.method, args.lam, args.kind).values
    return io.dumps(io.ranking_to_dict(r, s, items="edges", **_meta(args, method=args.method)))


def _cmd_cluster(args):
    net = _load(args)
    stop = StopRule.parse(args.stop)
    run = deconstruct(net, args.method, args.kind, args.lam, "highest", stop, args.tol)
    meta = _meta(args, method=args.method, stop=str(stop), steps=len(run.trace))
    if args.dendrogram:
        io.write_text(io.dumps(io.deconstruction_to_dict(run, **meta)), args.dendrogram)
    if args.format == "dot":
        label = {v: {"cluster": str(i)} for i, b in enumerate(run.final_partition) for v in b}
        return io.network_to_dot(net, label)
    return io.dumps(io.partition_to_dict(run.final_partition, **meta))


def _cmd_core_periphery(args):
    net = _load(args)
    rings = core_periphery(net, args.method, args.kind, args.lam, args.tol)
    if args.format == "dot":
        label = {v: {"ring": str(i)} for i, r in enumerate(rings.rings) for v in r}
        return io.network_to_dot(net, label)
    return io.dumps(io.rings_to_dict(rings, **_meta(args, method=args.method)))


def _cmd_modularity(args):
    _no_dot(args)
    net = _load(args)
    with open(args.partition, encoding="utf-8") as fh:
        blocks = check_partition(net, io.partition_from_dict(io.loads(fh.read())))
    doc = {"format_version": io.FORMAT_VERSION, "type": "modularity-scan"}
    doc["Q"] = io.modularity_to_dict(modularity_Q(net, blocks))
    grid = [args.lam]
    if args.lambda_grid:
        try:
            grid = [float(x) for x in args.lambda_grid.split(",") if x.strip()]
        except ValueError:
            raise ValidationError(f"bad --lambda-grid {args.lambda_grid!r}") from None
    doc["Q_lambda"] = [
        io.modularity_to_dict(
            modularity_Q_lambda(net, blocks, lam, args.unit_node_weights), **{"lambda": io.num(lam)}
        )
        for lam in grid
    ]
    return io.dumps(doc)


def _cmd_influence(args):
    _no_dot(args)
    net = _load(args)
    return io.dumps(io.matrix_to_dict(influence_matrix(net, args.lam)))


def _cmd_transform(args):
    net = _load(args)
    if args.op in ("dual", "barycentric"):
        out = (dual if args.op == "dual" else barycentric)(net).network
    else:
        if not args.other:
            raise ValidationError(f"--op {args.op} needs --other")
        other = _load(args, args.other)
        out = product(net, other) if args.op == "product" else disjoint_union(net, other)
    if args.format == "dot":
        return io.network_to_dot(out)
    return io.dumps(io.network_to_dict(out))


def _cmd_oracle(args):
    _no_dot(args)
    net = _load(args)
    exact = influence_matrix(net, args.lam)
    doc = {"format_version": io.FORMAT_VERSION, "type": "oracle", "mode": args.mode}
    doc["lambda"] = io.num(args.lam)
    if args.mode == "path":
        check = path_oracle(net, args.lam, SeriesParams(max_terms=args.max_terms))
        doc["max_terms"] = args.max_terms
        doc["max_abs_difference"] = io.num(np.abs(check.T - exact.T).max() if exact.T.size else 0.0)
        doc["oracle"] = io.matrix_to_dict(check)
        return io.dumps(doc)
    pairs = (
        [(args.target, args.source)]
        if args.source and args.target
        else [(t, s) for t in net.node_ids for s in net.node_ids]
    )
    results = []
    for target, source in pairs:
        for v in (target, source):
            if v not in net.index:
                raise ValidationError(f"unknown node {v!r}")
        est = monte_carlo_active_paths(
            net, args.lam, target, source, args.samples, args.max_terms, args.seed
        )
        results.append(
            {
                "target": target,
                "source": source,
                "exact": io.num(exact.entry(target, source)),
                "estimate": io.num(est.estimate),
                "stderr": io.num(est.stderr),
            }
        )
    doc.update(samples=args.samples, seed=args.seed, max_terms=args.max_terms, entries=results)
    return io.dumps(doc)


COMMANDS = {
    "rank-nodes": _cmd_rank_nodes,
    "rank-links": _cmd_rank_links,
    "cluster": _cmd_cluster,
    "core-periphery": _cmd_core_periphery,
    "modularity": _cmd_modularity,
    "influence": _cmd_influence,
    "transform": _cmd_transform,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        text = COMMANDS[args.command](args)
        io.write_text(text, args.output)
    except (ValidationError, OSError) as exc:
        _report(type(exc).__name__, exc)
        return EXIT_INVALID
    except (NumericalError, FloatingPointError) as exc:
        _report(type(exc).__name__, exc)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
