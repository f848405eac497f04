"""Metrics and report aggregation for SLN runs.

Accuracy counts a query correct iff adaptive SLN returns an optimal-length
path. The length-gap metric takes any ranked candidate-length list: mean
length of candidates strictly longer than the optimum, minus the optimum.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .canonical import CanonicalGraph
from .graph import Graph, Query, bfs_shortest_length, is_valid_path
from .navigation import SlnConfig, SlnStatus, sln_adaptive
from .spectral import line_graph_spectrum

PLOT_SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class EvalReport:
    overall_accuracy: float
    accuracy_by_length: dict[int, float]
    counts_by_length: dict[int, int]
    k_histogram: dict[int, int]
    gap_stats: tuple[tuple[str, float], ...]
    config: dict = field(default_factory=dict)

    @property
    def n_queries(self) -> int:
        return sum(self.counts_by_length.values())


def path_length_gap(candidate_lengths: Sequence[int], l_star: int) -> float | None:
    """Mean of candidate lengths strictly above l_star, minus l_star.

    None when no candidate exceeds l_star; >= 1 otherwise.
    """
    longer = [l for l in candidate_lengths if l > l_star]
    if not longer:
        return None
    return sum(longer) / len(longer) - l_star


def _iter_queries(graphs: list[Graph], policy, seed: int):
    """Yield (query_id, graph_index, Query) under the chosen policy."""
    if policy == "all":
        for gi, g in enumerate(graphs):
            for a in range(g.n_nodes):
                for b in range(g.n_nodes):
                    if a != b:
                        yield f"{gi}:{a}->{b}", gi, Query(a, b)
    else:
        kind, count = policy
        if kind != "sample":
            raise ValueError(f"unknown query policy {policy!r}")
        rng = random.Random(seed)
        for _ in range(count):
            gi = rng.randrange(len(graphs))
            g = graphs[gi]
            a, b = rng.sample(range(g.n_nodes), 2)
            yield f"{gi}:{a}->{b}", gi, Query(a, b)


def evaluate_sln(
    test_graphs: list[CanonicalGraph] | list[Graph],
    query_policy="all",
    cfg: SlnConfig = SlnConfig(),
    seed: int = 0,
) -> EvalReport:
    """Run adaptive SLN over the query policy and aggregate metrics."""
    graphs = [
        cg.graph if isinstance(cg, CanonicalGraph) else cg for cg in test_graphs
    ]
    spectra: dict[int, tuple] = {}
    totals: dict[int, int] = {}
    optimal: dict[int, int] = {}
    k_hist: dict[int, int] = {}
    gaps: list[tuple[str, float]] = []
    for qid, gi, q in _iter_queries(graphs, query_policy, seed):
        g = graphs[gi]
        if gi not in spectra:
            spectra[gi] = line_graph_spectrum(g)
        result = sln_adaptive(g, q, cfg, spectrum=spectra[gi])
        l_star = bfs_shortest_length(g, q)
        totals[l_star] = totals.get(l_star, 0) + 1
        if result.status is SlnStatus.OPTIMAL:
            assert result.path is not None and is_valid_path(g, result.path)
            assert len(result.path) == l_star
            optimal[l_star] = optimal.get(l_star, 0) + 1
            k_hist[result.k_used] = k_hist.get(result.k_used, 0) + 1
        elif result.path is not None:
            gap = path_length_gap([len(result.path)], l_star)
            if gap is not None:
                gaps.append((qid, gap))
    n_total = sum(totals.values())
    n_opt = sum(optimal.values())
    return EvalReport(
        overall_accuracy=n_opt / n_total if n_total else 0.0,
        accuracy_by_length={
            l: optimal.get(l, 0) / totals[l] for l in sorted(totals)
        },
        counts_by_length=dict(sorted(totals.items())),
        k_histogram=dict(sorted(k_hist.items())),
        gap_stats=tuple(gaps),
        config={
            "seed": seed,
            "query_policy": policy_name(query_policy),
            "exclude_visited": cfg.exclude_visited,
            "graph_sizes": sorted({g.n_nodes for g in graphs}),
        },
    )


def policy_name(policy) -> str:
    return policy if policy == "all" else f"{policy[0]}:{policy[1]}"


def _write_table(path: Path, header: list[str], rows: list[list], fmt: str) -> None:
    if fmt == "csv":
        lines = [f"# slnav-plot schema={PLOT_SCHEMA_VERSION}", ",".join(header)]
        lines += [",".join(str(x) for x in row) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif fmt == "json-lines":
        lines = [json.dumps({"schema": PLOT_SCHEMA_VERSION, "columns": header})]
        lines += [json.dumps(dict(zip(header, row))) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def emit_plot_data(report: EvalReport, out_dir: Path | str, fmt: str = "csv") -> list[Path]:
    """Write accuracy-by-length, k-histogram (raw + log counts) and gap
    distribution tables."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = "csv" if fmt == "csv" else "jsonl"
    files = []

    p = out / f"accuracy_by_length.{ext}"
    _write_table(
        p,
        ["path_len", "n_queries", "accuracy"],
        [
            [l, report.counts_by_length[l], report.accuracy_by_length[l]]
            for l in report.accuracy_by_length
        ],
        fmt,
    )
    files.append(p)

    p = out / f"k_histogram.{ext}"
    _write_table(
        p,
        ["k", "count", "log_count"],
        [[k, c, math.log(c)] for k, c in report.k_histogram.items()],
        fmt,
    )
    files.append(p)

    p = out / f"gap_distribution.{ext}"
    _write_table(
        p, ["query_id", "gap"], [[qid, gap] for qid, gap in report.gap_stats], fmt
    )
    files.append(p)
    return files


def report_to_json(report: EvalReport) -> str:
    return json.dumps(
        {
            "overall_accuracy": report.overall_accuracy,
            "accuracy_by_length": report.accuracy_by_length,
            "counts_by_length": report.counts_by_length,
            "k_histogram": report.k_histogram,
            "gap_stats": list(report.gap_stats),
            "config": report.config,
        },
        indent=2,
        sort_keys=True,
    )
