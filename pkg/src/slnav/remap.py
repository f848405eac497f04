"""Sample parts and the remap augmentation.

A remap relabels nodes and shuffles every presentation ordering (edge
order, endpoint order within each edge, node-list order) while keeping
the isomorphism class fixed. All four components are drawn independently
from one seeded generator in a fixed order: node permutation, edge
order, per-edge endpoint flips, node-list order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .errors import SizeMismatchError
from .graph import Graph, Query, validate_graph


@dataclass(frozen=True)
class SampleParts:
    """One sample's presentation: edges as listed, node list, query, path."""

    n_nodes: int
    edge_list: tuple[tuple[int, int], ...]
    node_list: tuple[int, ...]
    query: Query
    path: tuple[int, ...]

    def to_graph(self) -> Graph:
        return validate_graph(self.n_nodes, self.edge_list)


def make_parts(g: Graph, query: Query, path: tuple[int, ...]) -> SampleParts:
    """Canonical presentation: sorted edge list, ascending node list."""
    return SampleParts(
        n_nodes=g.n_nodes,
        edge_list=g.sorted_edges,
        node_list=tuple(range(g.n_nodes)),
        query=query,
        path=path,
    )


@dataclass(frozen=True)
class Remap:
    node_permutation: tuple[int, ...]
    edge_order: tuple[int, ...]
    within_edge_flips: tuple[bool, ...]
    node_list_order: tuple[int, ...]
    seed: int | None = None

    @classmethod
    def identity(cls, n_nodes: int, n_edges: int) -> "Remap":
        return cls(
            node_permutation=tuple(range(n_nodes)),
            edge_order=tuple(range(n_edges)),
            within_edge_flips=(False,) * n_edges,
            node_list_order=tuple(range(n_nodes)),
        )

    def inverse(self) -> "Remap":
        inv_nodes = _invert(self.node_permutation)
        inv_edges = _invert(self.edge_order)
        # Undoing flips: the forward output at position i carried the flip
        # of input position edge_order[i].
        flips = tuple(self.within_edge_flips[j] for j in self.edge_order)
        return Remap(
            node_permutation=inv_nodes,
            edge_order=inv_edges,
            within_edge_flips=flips,
            node_list_order=_invert(self.node_list_order),
        )


def _invert(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def random_remap(n_nodes: int, n_edges: int, seed: int) -> Remap:
    """Seeded remap; draw order is part of the reproducibility contract."""
    rng = random.Random(seed)
    node_perm = tuple(rng.sample(range(n_nodes), n_nodes))
    edge_order = tuple(rng.sample(range(n_edges), n_edges))
    flips = tuple(rng.random() < 0.5 for _ in range(n_edges))
    node_list_order = tuple(rng.sample(range(n_nodes), n_nodes))
    return Remap(node_perm, edge_order, flips, node_list_order, seed=seed)


def apply_remap(parts: SampleParts, r: Remap) -> SampleParts:
    """Relabel and reorder a sample; output is isomorphic to the input."""
    n, m = parts.n_nodes, len(parts.edge_list)
    if (
        len(r.node_permutation) != n
        or len(r.node_list_order) != n
        or len(r.edge_order) != m
        or len(r.within_edge_flips) != m
    ):
        raise SizeMismatchError(
            f"remap sized for ({len(r.node_permutation)} nodes, "
            f"{len(r.edge_order)} edges), sample has ({n}, {m})"
        )
    f = r.node_permutation
    relabeled = [(f[u], f[v]) for u, v in parts.edge_list]
    flipped = [
        (v, u) if r.within_edge_flips[i] else (u, v)
        for i, (u, v) in enumerate(relabeled)
    ]
    edges = tuple(flipped[j] for j in r.edge_order)
    node_list = tuple(f[parts.node_list[j]] for j in r.node_list_order)
    return replace(
        parts,
        edge_list=edges,
        node_list=node_list,
        query=Query(f[parts.query.source], f[parts.query.target]),
        path=tuple(f[v] for v in parts.path),
    )
