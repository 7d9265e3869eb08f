# ============================================================================
# LatticeChoose - Command line front door
# Usage:
#   python cli/lc_cli.py solve --graph g.json --lists l.json --m 1 --out c.json
#   python cli/lc_cli.py verify --graph g.json --lists l.json --coloring c.json
#   python cli/lc_cli.py gen --seed 7 --graph g.json --lists l.json
#   python cli/lc_cli.py oracle --instance p.json
#   python cli/lc_cli.py selftest --scale quick
# Exit codes: 0 ok, 1 infeasible / rejected, 2 malformed input
# ============================================================================

import argparse
import json
import logging
import os
import sys

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from pydantic import ValidationError

from config import (
    DATA_DIR, EXIT_MALFORMED, EXIT_OK, EXIT_REJECTED, GEN_DENSITY, GEN_HEIGHT, GEN_LIST_STYLES,
    GEN_SHAPES, GEN_WIDTH, LOG_FORMAT, SELFTEST_SCALES,
)
from choosability.lc_solver import SolveInstance, solve
from cli.lc_generator import GeneratorConfig, generate_instance
from cli.lc_selftest import run_selftest
from oracle.lc_oracle import solve_cycle_exact, solve_path_exact
from shared.audit_logger import log_generate, log_oracle, log_selftest, log_solve, log_verify
from shared.coloring import ProblemParams, uniform_weights, verify_coloring
from shared.documents import ColoringDocument, GraphDocument, ListsDocument, OracleDocument
from shared.errors import InputError, LatticeChooseError
from shared.file_storage import FileStorage
from shared.kafka_client import KafkaClient

SOURCE = "lc"


def _params(args, lists_doc: ListsDocument = None) -> ProblemParams:
    """--m wins, then --a/--b, then --b with the document's list size, then the document's own a/b"""
    if args.m is not None:
        return ProblemParams.from_m(args.m)
    size = lists_doc.size if lists_doc is not None else None
    a = args.a if args.a is not None else (lists_doc.a if lists_doc is not None and lists_doc.a else size)
    b = args.b if args.b is not None else (lists_doc.b if lists_doc is not None else None)
    if a is None or b is None:
        raise InputError("parameters missing: pass --m or --a and --b")
    return ProblemParams.from_ab(a, b)


def _emit(storage: FileStorage, out, document):
    if out:
        path = storage.write_document(out, document)
        print(f"[{SOURCE}] Wrote {path}")
    else:
        print(json.dumps(document.model_dump(mode="json", exclude_none=True)))


def _publish(topic_key, event_type, data):
    client = KafkaClient("LatticeChoose")
    try:
        client.publish_event(topic_key, event_type, data)
    finally:
        client.close()


# ============================================================================
# Commands
# ============================================================================

def cmd_solve(args, storage: FileStorage) -> int:
    graph_doc = storage.read_document(args.graph, GraphDocument)
    lists_doc = storage.read_document(args.lists, ListsDocument)
    params = _params(args, lists_doc)
    graph = graph_doc.to_graph()
    instance = SolveInstance.build(graph, lists_doc.aligned(graph_doc), params)

    try:
        coloring, steps = solve(instance)
    except LatticeChooseError as e:
        if not isinstance(e, InputError):
            log_solve(f"{SOURCE} solve", len(graph), params.a, params.b, False, reason=str(e))
        raise

    trace = [step.to_dict() for step in steps]
    _emit(storage, args.out, ColoringDocument.from_coloring(graph_doc, coloring, params.a, params.b, trace))
    print(f"[{SOURCE}] Colored {len(graph)} vertices with (a,b)=({params.a},{params.b}) in {len(steps)} steps")
    log_solve(f"{SOURCE} solve", len(graph), params.a, params.b, True, steps=len(steps))
    _publish("solve_events", "SOLVED", {"vertices": len(graph), "a": params.a, "b": params.b, "steps": len(steps)})
    return EXIT_OK


def cmd_verify(args, storage: FileStorage) -> int:
    graph_doc = storage.read_document(args.graph, GraphDocument)
    lists_doc = storage.read_document(args.lists, ListsDocument)
    coloring_doc = storage.read_document(args.coloring, ColoringDocument)
    if args.m is not None:
        b = ProblemParams.from_m(args.m).b
    else:
        b = args.b if args.b is not None else (coloring_doc.b if coloring_doc.b is not None else lists_doc.b)
    if b is None:
        raise InputError("demand missing: pass --b or --m, or use a coloring document that records b")

    graph = graph_doc.to_graph()
    lists = lists_doc.aligned(graph_doc)
    report = verify_coloring(graph.edges(), lists, uniform_weights(lists, b), coloring_doc.aligned(graph_doc))
    print(f"[{SOURCE}] verify: {report.describe()}")
    log_verify(f"{SOURCE} verify", len(graph), report)
    return EXIT_OK if report.ok else EXIT_REJECTED


def cmd_gen(args, storage: FileStorage) -> int:
    params = _params(args) if (args.m is not None or args.b is not None) else ProblemParams.from_m(1)
    cfg = GeneratorConfig(width=args.width, height=args.height, density=args.density, seed=args.seed,
                          a=params.a, palette=args.palette, style=args.style, shape=args.shape)
    graph, lists = generate_instance(cfg)
    graph_doc = GraphDocument.from_graph(graph)
    lists_doc = ListsDocument(lists=[lists[v].to_list() for v in graph_doc.order()], a=params.a, b=params.b)
    storage.write_document(args.graph, graph_doc)
    storage.write_document(args.lists, lists_doc)
    print(f"[{SOURCE}] Generated {len(graph)} vertices (seed={args.seed}, shape={args.shape}, style={args.style})")
    log_generate(f"{SOURCE} gen", args.seed, len(graph), args.style)
    return EXIT_OK


def cmd_oracle(args, storage: FileStorage) -> int:
    doc = storage.read_document(args.instance, OracleDocument)
    path = doc.to_path()
    coloring = solve_cycle_exact(path) if doc.kind == "cycle" else solve_path_exact(path)
    feasible = coloring is not None
    result = {"kind": doc.kind, "feasible": feasible,
              "coloring": [coloring[i].to_list() for i in range(len(path))] if feasible else None}
    if args.out:
        with open(storage.resolve(args.out), "w", encoding="utf-8") as f:
            f.write(json.dumps(result) + "\n")
    print(json.dumps(result))
    log_oracle(f"{SOURCE} oracle", doc.kind, len(path), feasible)
    return EXIT_OK if feasible else EXIT_REJECTED


def cmd_selftest(args, storage: FileStorage) -> int:
    results, stats = run_selftest(args.scale, seed=args.seed)
    print(f"[{SOURCE}] selftest scale={args.scale}")
    for result in results:
        print(result.row())
    print(f"[{SOURCE}] waterfall greedy={stats.greedy} oracle fallbacks={stats.fallback}")
    failed = [r.name for r in results if not r.passed]
    passed = len(results) - len(failed)
    log_selftest(f"{SOURCE} selftest", args.scale, passed, failed)
    _publish("selftest_results", "SELFTEST_FINISHED", {"scale": args.scale, "passed": passed, "failed": failed})
    return EXIT_OK if not failed else EXIT_REJECTED


# ============================================================================
# Parser
# ============================================================================

def _add_params(parser):
    parser.add_argument("--m", type=int, help="multiplier: a = 5m, b = 2m")
    parser.add_argument("--a", type=int, help="list size")
    parser.add_argument("--b", type=int, help="demand per vertex")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lc", description="List multicoloring of triangle-free lattice graphs")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="color a graph from its lists")
    p.add_argument("--graph", required=True)
    p.add_argument("--lists", required=True)
    _add_params(p)
    p.add_argument("--out", help="coloring document (stdout when omitted)")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check a coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--b", type=int)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="generate a seeded instance")
    p.add_argument("--graph", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=int, default=GEN_WIDTH)
    p.add_argument("--height", type=int, default=GEN_HEIGHT)
    p.add_argument("--density", type=float, default=GEN_DENSITY)
    p.add_argument("--palette", type=int, help="number of colors (default 3a)")
    p.add_argument("--style", choices=GEN_LIST_STYLES, default="uniform")
    p.add_argument("--shape", choices=GEN_SHAPES, default="random", help="random density window or honeycomb patch")
    _add_params(p)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("oracle", parents=[common], help="exact verdict for a path or cycle")
    p.add_argument("--instance", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("selftest", parents=[common], help="run the property suite")
    p.add_argument("--scale", choices=sorted(SELFTEST_SCALES), default="smoke")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
    logging.getLogger().setLevel(logging.DEBUG if args.verbose else logging.INFO)

    storage = FileStorage(DATA_DIR)
    try:
        return args.handler(args, storage)
    except (ValidationError, InputError, json.JSONDecodeError, FileNotFoundError) as e:
        print(f"[{SOURCE}] Error: {e}")
        return EXIT_MALFORMED
    except LatticeChooseError as e:
        print(f"[{SOURCE}] Error: {type(e).__name__}: {e}")
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
