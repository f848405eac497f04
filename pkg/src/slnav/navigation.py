"""Spectral Line Navigation: greedy shortest-path search in the spectral
embedding of the line graph.

At each step the edges incident to the current node are compared (L2, in
embedding space) against the edges incident to the target node; the far
endpoint of the globally closest current-edge becomes the next node.
Escalating the eigenvector count k until the path matches the BFS
shortest length gives the adaptive variant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DeadEndError
from .graph import Graph, Query, bfs_shortest_length, check_query, norm_edge
from .spectral import (
    SpectralEmbedding,
    embeddings_from_spectrum,
    line_graph_spectrum,
)

#: Global-minimum ties: smallest far-endpoint node id, then smallest
#: target-edge column index.
TIE_BREAK_NODE_THEN_COLUMN = "node-then-column"


class SlnStatus(enum.Enum):
    OPTIMAL = "optimal"
    VALID_BUT_LONGER = "valid-but-longer"
    NO_PATH_WITHIN_BUDGET = "no-path-within-budget"


@dataclass(frozen=True)
class SlnConfig:
    max_steps: int | None = None  # default: n_nodes of the graph
    exclude_visited: bool = True
    tie_break: str = TIE_BREAK_NODE_THEN_COLUMN

    def __post_init__(self) -> None:
        if self.tie_break != TIE_BREAK_NODE_THEN_COLUMN:
            raise ValueError(f"unknown tie-break rule {self.tie_break!r}")
        if self.max_steps is not None and self.max_steps < 2:
            raise ValueError("max_steps must be >= 2")

    def step_budget(self, g: Graph) -> int:
        return self.max_steps if self.max_steps is not None else g.n_nodes


@dataclass(frozen=True)
class SlnResult:
    path: tuple[int, ...] | None
    k_used: int
    status: SlnStatus

    @property
    def succeeded(self) -> bool:
        return self.status is not SlnStatus.NO_PATH_WITHIN_BUDGET


@dataclass(frozen=True)
class StepTrace:
    """One step's distance matrix, for debugging dumps."""

    current: int
    row_edges: tuple[tuple[int, int], ...]
    col_edges: tuple[tuple[int, int], ...]
    distances: np.ndarray
    chosen: int


def gather_incident(
    emb: SpectralEmbedding, g: Graph, node: int
) -> list[tuple[tuple[int, int], np.ndarray]]:
    """Edges incident to node, ascending neighbor id, with embeddings."""
    return [
        (norm_edge(node, nb), emb.vector(node, nb)) for nb in g.neighbors(node)
    ]


def sln_step(
    emb: SpectralEmbedding,
    g: Graph,
    current: int,
    target: int,
    visited: set[int],
    cfg: SlnConfig,
    trace: list[StepTrace] | None = None,
) -> int:
    """Pick the next node: far endpoint of the current-edge closest (L2)
    to any target-edge."""
    rows = []
    far_ends = []
    for nb in g.neighbors(current):
        if cfg.exclude_visited and nb in visited:
            continue
        rows.append(emb.vector(current, nb))
        far_ends.append(nb)
    if not rows:
        raise DeadEndError(f"no unvisited edges out of node {current}")
    col_edges = gather_incident(emb, g, target)
    row_m = np.stack(rows)
    col_m = np.stack([vec for _, vec in col_edges])
    dist = np.linalg.norm(row_m[:, None, :] - col_m[None, :, :], axis=2)
    # Global min; ties by far-endpoint id then column id. far_ends is
    # already ascending, so flat argmin respects both.
    flat = int(np.argmin(np.round(dist, 12)))
    i, j = divmod(flat, dist.shape[1])
    if trace is not None:
        trace.append(
            StepTrace(
                current=current,
                row_edges=tuple(norm_edge(current, nb) for nb in far_ends),
                col_edges=tuple(e for e, _ in col_edges),
                distances=dist,
                chosen=far_ends[i],
            )
        )
    return far_ends[i]


def sln_find_path(
    g: Graph,
    q: Query,
    k: int,
    cfg: SlnConfig = SlnConfig(),
    trace: list[StepTrace] | None = None,
) -> SlnResult:
    """Run SLN with a fixed eigenvector count k."""
    check_query(g, q)
    lg, dec = line_graph_spectrum(g)
    return _navigate(g, q, embeddings_from_spectrum(lg, dec, k), k, cfg, trace)


def _navigate(
    g: Graph,
    q: Query,
    emb: SpectralEmbedding,
    k: int,
    cfg: SlnConfig,
    trace: list[StepTrace] | None = None,
) -> SlnResult:
    budget = cfg.step_budget(g)
    path = [q.source]
    visited = {q.source}
    while path[-1] != q.target:
        if len(path) >= budget:
            return SlnResult(path=None, k_used=k, status=SlnStatus.NO_PATH_WITHIN_BUDGET)
        try:
            nxt = sln_step(emb, g, path[-1], q.target, visited, cfg, trace)
        except DeadEndError:
            return SlnResult(path=None, k_used=k, status=SlnStatus.NO_PATH_WITHIN_BUDGET)
        path.append(nxt)
        visited.add(nxt)
    optimal = len(path) == bfs_shortest_length(g, q)
    return SlnResult(
        path=tuple(path),
        k_used=k,
        status=SlnStatus.OPTIMAL if optimal else SlnStatus.VALID_BUT_LONGER,
    )


def sln_adaptive(
    g: Graph, q: Query, cfg: SlnConfig = SlnConfig(), spectrum=None
) -> SlnResult:
    """Escalate k = 1, 2, ... until the path is optimal; otherwise return
    the best (shortest valid, else failed) attempt.

    Pass a precomputed `spectrum = line_graph_spectrum(g)` when solving
    many queries on one graph.
    """
    check_query(g, q)
    lg, dec = spectrum if spectrum is not None else line_graph_spectrum(g)
    best: SlnResult | None = None
    for k in range(1, dec.n_nonzero + 1):
        emb = embeddings_from_spectrum(lg, dec, k)
        result = _navigate(g, q, emb, k, cfg)
        if result.status is SlnStatus.OPTIMAL:
            return result
        if result.path is not None and (
            best is None or best.path is None or len(result.path) < len(best.path)
        ):
            best = result
        elif best is None:
            best = result
    assert best is not None
    return best
