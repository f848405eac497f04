"""Graph representation, validation, and exact shortest-path oracles.

Graphs are simple, connected and undirected. Path lengths are counted in
NODES throughout the package (a direct edge is a path of length 2).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    DisconnectedError,
    NodeOutOfRangeError,
    SelfLoopError,
)

Edge = tuple[int, int]

#: Cap on paths returned per query; dense pathological graphs only.
MAX_PATHS_PER_QUERY = 10_000


def norm_edge(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph on nodes 0..n_nodes-1.

    Immutable after construction; build via :func:`validate_graph`.
    """

    n_nodes: int
    edges: frozenset[Edge]

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-node neighbor lists, ascending node id."""
        neigh: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for u, v in self.edges:
            neigh[u].append(v)
            neigh[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neigh)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    @property
    def n_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Query:
    """A (source, target) pair; source != target."""

    source: int
    target: int

    def __post_init__(self) -> None:
        if self.source == self.target:
            raise ValueError(f"query endpoints must differ, got {self.source}")

    def reversed(self) -> "Query":
        return Query(self.target, self.source)


@dataclass(frozen=True)
class PathSet:
    """All shortest paths for one query, with a truncation flag."""

    paths: tuple[tuple[int, ...], ...]
    truncated: bool = False

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)


def _is_connected(n_nodes: int, adjacency: Sequence[Sequence[int]]) -> bool:
    seen = [False] * n_nodes
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in adjacency[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == n_nodes


def validate_graph(n_nodes: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validate and normalize an edge list into a Graph.

    Deduplicates symmetric listings. Raises SelfLoopError,
    NodeOutOfRangeError or DisconnectedError on invalid input.
    """
    if n_nodes < 2:
        raise NodeOutOfRangeError(f"need at least 2 nodes, got {n_nodes}")
    edge_set: set[Edge] = set()
    for u, v in edges:
        if u == v:
            raise SelfLoopError(f"self-loop at node {u}")
        if not (0 <= u < n_nodes and 0 <= v < n_nodes):
            raise NodeOutOfRangeError(f"edge ({u},{v}) outside [0,{n_nodes})")
        edge_set.add(norm_edge(u, v))
    g = Graph(n_nodes=n_nodes, edges=frozenset(edge_set))
    if not edge_set or not _is_connected(n_nodes, g.adjacency):
        raise DisconnectedError("graph is not connected")
    return g


def check_query(g: Graph, q: Query) -> None:
    if not (0 <= q.source < g.n_nodes and 0 <= q.target < g.n_nodes):
        raise NodeOutOfRangeError(f"query {q} outside [0,{g.n_nodes})")


def bfs_shortest_length(g: Graph, q: Query) -> int:
    """Shortest-path length in node count: 1 + minimum hop count."""
    check_query(g, q)
    dist = _bfs_distances(g, q.source)
    return 1 + dist[q.target]


def _bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n_nodes
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def all_shortest_paths(
    g: Graph, q: Query, max_paths: int = MAX_PATHS_PER_QUERY
) -> PathSet:
    """Every shortest path for the query, via BFS predecessor-DAG expansion.

    Output is sorted and duplicate-free; capped at max_paths with the
    truncation reported on the result.
    """
    check_query(g, q)
    dist = _bfs_distances(g, q.source)
    # Predecessors of v on some shortest path from source.
    preds: list[list[int]] = [[] for _ in range(g.n_nodes)]
    for v in range(g.n_nodes):
        for u in g.adjacency[v]:
            if dist[u] == dist[v] - 1:
                preds[v].append(u)

    paths: list[tuple[int, ...]] = []
    truncated = False
    stack: list[tuple[int, tuple[int, ...]]] = [(q.target, (q.target,))]
    while stack:
        node, suffix = stack.pop()
        if node == q.source:
            if len(paths) >= max_paths:
                truncated = True
                break
            paths.append(suffix)
            continue
        for u in preds[node]:
            stack.append((u, (u,) + suffix))
    paths.sort()
    return PathSet(paths=tuple(paths), truncated=truncated)


def is_valid_path(g: Graph, nodes: Sequence[int]) -> bool:
    """Simple path check: >=2 nodes, no repeats, consecutive adjacency."""
    if len(nodes) < 2 or len(set(nodes)) != len(nodes):
        return False
    return all(g.has_edge(a, b) for a, b in zip(nodes, nodes[1:]))


def parse_graph_text(text: str) -> Graph:
    """Parse the `n m` + edge-lines textual graph format."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    n, m = map(int, lines[0].split())
    edges = [tuple(map(int, ln.split())) for ln in lines[1 : 1 + m]]
    if len(edges) != m:
        raise ValueError(f"expected {m} edge lines, got {len(edges)}")
    return validate_graph(n, edges)  # type: ignore[arg-type]


def format_graph_text(g: Graph) -> str:
    lines = [f"{g.n_nodes} {g.n_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"
