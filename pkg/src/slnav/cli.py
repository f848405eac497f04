"""Command-line surface: gen / solve / eval / spectra.

Exit codes: 0 on success, 2 on validation errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import canonical, dataset, evaluation
from .errors import SlnavError
from .graph import Query, parse_graph_text
from .navigation import SlnConfig, sln_adaptive, sln_find_path
from .spectral import line_graph_spectrum, embeddings_from_spectrum

MAX_EXHAUSTIVE_NODES = 7


def _collect_graphs(
    max_nodes: int, seed: int, random_per_size: int
) -> list[canonical.CanonicalGraph]:
    """Exhaustive classes for n <= 7, seeded random samples above."""
    out: list[canonical.CanonicalGraph] = []
    for n in range(3, min(max_nodes, MAX_EXHAUSTIVE_NODES) + 1):
        out.extend(canonical.enumerate_connected(n))
    rng = random.Random(seed)
    for n in range(MAX_EXHAUSTIVE_NODES + 1, max_nodes + 1):
        seen = {cg.canonical_key for cg in out}
        added = 0
        while added < random_per_size:
            cg = canonical.canonicalize(canonical.sample_random_connected(n, rng))
            if cg.canonical_key not in seen:
                seen.add(cg.canonical_key)
                out.append(cg)
                added += 1
    return out


def _cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    graphs = _collect_graphs(args.max_nodes, args.seed, args.random_per_size)
    train_g, test_g = canonical.split_train_test(graphs, args.ratio, args.seed)
    for name, gs in (("train", train_g), ("test", test_g)):
        (out / f"graphs_{name}.txt").write_text(
            canonical.persist_records(gs), encoding="utf-8"
        )
    n_test = max(1, args.samples // 2)
    for name, gs, target in (("train", train_g, args.samples), ("test", test_g, n_test)):
        samples = dataset.assemble_dataset(gs, target, args.seed)
        dataset.write_dataset(samples, out / f"{name}.txt")
        dataset.write_manifest(
            out / f"{name}.manifest.json",
            seed=args.seed,
            samples=samples,
            graphs=gs,
            extra={"split": name, "max_nodes": args.max_nodes},
        )
        print(f"{name}: {len(samples)} samples over {len(gs)} graphs")
    return 0


def _cmd_solve(args) -> int:
    g = parse_graph_text(Path(args.graph).read_text(encoding="utf-8"))
    q = Query(args.src, args.tgt)
    cfg = SlnConfig(exclude_visited=not args.no_exclude_visited)
    trace = [] if args.show_distances else None
    if args.adaptive or args.k is None:
        result = sln_adaptive(g, q, cfg)
    else:
        result = sln_find_path(g, q, args.k, cfg, trace=trace)
    path = "-".join(map(str, result.path)) if result.path else "none"
    print(f"path {path}")
    print(f"k_used {result.k_used}")
    print(f"status {result.status.value}")
    if trace:
        for step in trace:
            print(f"step from {step.current}: chose {step.chosen}")
            print("  rows " + " ".join(f"{u}-{v}" for u, v in step.row_edges))
            print("  cols " + " ".join(f"{u}-{v}" for u, v in step.col_edges))
            for row in step.distances:
                print("  " + " ".join(f"{x:.6f}" for x in row))
    return 0


def _cmd_eval(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    graphs = _collect_graphs(args.max_nodes, args.seed, args.random_per_size)
    _, test_g = canonical.split_train_test(graphs, args.ratio, args.seed)
    if args.queries == "all":
        policy = "all"
    elif args.queries.startswith("sample:"):
        policy = ("sample", int(args.queries.split(":", 1)[1]))
    else:
        raise SlnavError(f"bad --queries value {args.queries!r}")
    cfg = SlnConfig(exclude_visited=not args.no_exclude_visited)
    report = evaluation.evaluate_sln(test_g, policy, cfg, seed=args.seed)
    (out / "report.json").write_text(
        evaluation.report_to_json(report) + "\n", encoding="utf-8"
    )
    evaluation.emit_plot_data(report, out, fmt=args.format)
    print(f"queries {report.n_queries}")
    print(f"accuracy {report.overall_accuracy:.6f}")
    return 0


def _cmd_spectra(args) -> int:
    g = parse_graph_text(Path(args.graph).read_text(encoding="utf-8"))
    lg, dec = line_graph_spectrum(g)
    k = args.k if args.k is not None else dec.n_nonzero
    emb = embeddings_from_spectrum(lg, dec, k)
    print("edge_index " + " ".join(f"{u}-{v}" for u, v in lg.edge_index))
    print("eigenvalues " + " ".join(f"{x:.12f}" for x in dec.eigenvalues))
    for u, v in lg.edge_index:
        coeffs = " ".join(f"{c:.12f}" for c in emb.vector(u, v))
        print(f"{u} {v} {coeffs}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slnav",
        description="Spectral Line Navigation toolkit: dataset generation, "
        "path solving, evaluation and spectra dumps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate tokenized train/test datasets")
    gen.add_argument("--max-nodes", type=int, default=7)
    gen.add_argument("--samples", type=int, default=50_000)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--ratio", type=float, default=0.8)
    gen.add_argument("--random-per-size", type=int, default=200,
                     help="random graphs per size for n > 7")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="run SLN on one query")
    solve.add_argument("graph", help="graph file: `n m` then edge lines")
    solve.add_argument("--src", type=int, required=True)
    solve.add_argument("--tgt", type=int, required=True)
    solve.add_argument("--k", type=int)
    solve.add_argument("--adaptive", action="store_true")
    solve.add_argument("--no-exclude-visited", action="store_true")
    solve.add_argument("--show-distances", action="store_true")
    solve.set_defaults(func=_cmd_solve)

    ev = sub.add_parser("eval", help="evaluate SLN over a test split")
    ev.add_argument("--max-nodes", type=int, default=6)
    ev.add_argument("--queries", default="all", help="all or sample:N")
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--ratio", type=float, default=0.8)
    ev.add_argument("--random-per-size", type=int, default=200)
    ev.add_argument("--no-exclude-visited", action="store_true")
    ev.add_argument("--out", required=True)
    ev.add_argument("--format", choices=["csv", "json-lines"], default="csv")
    ev.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("spectra", help="dump eigenvalues and edge embeddings")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=_cmd_spectra)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SlnavError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
