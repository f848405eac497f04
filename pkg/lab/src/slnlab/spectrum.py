"""Comparison of learned edge representations with spectral embeddings.

For each graph, the sample presentation is randomized many times; the
layer-1 residual states at the <e> tokens are collected per remap,
reduced with PCA (computed separately per remap), and their pairwise
edge distances averaged. The same pairwise distances are computed from
the line-graph spectral embedding. Both distance sets are flattened in
the original edge order, rescaled to [-1, 1], and compared by cosine
similarity over a grid of (eigenvector count, principal-component
count).

The state extractor is injectable so the pipeline can be validated
against a synthetic "model" whose states are the spectral embeddings
themselves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import torch

from slnav import Graph, Query, all_shortest_paths, apply_remap, make_parts, random_remap
from slnav.errors import TooFewEdgesError
from slnav.remap import SampleParts
from slnav.spectral import edge_embeddings, embeddings_from_spectrum, line_graph_spectrum
from slnav.tokens import EDGE, encode

from .model import PathTransformer

TABLE_SCHEMA = "slnlab-table schema=1"

StateFn = Callable[[SampleParts], np.ndarray]


def model_edge_states(model: PathTransformer) -> StateFn:
    """Layer-1 residual states at the <e> positions, one row per edge."""

    def state_fn(parts: SampleParts) -> np.ndarray:
        ids = encode(parts)
        with torch.no_grad():
            out = model(torch.tensor([ids], dtype=torch.long), need_states=True)
        states = out.block_states[0][0].numpy()
        e_pos = [i for i, t in enumerate(ids) if t == EDGE]
        return states[e_pos]

    return state_fn


def spectral_edge_states(k: int, pad_to: int | None = None) -> StateFn:
    """Synthetic extractor whose states ARE the k-dim spectral embedding."""

    def state_fn(parts: SampleParts) -> np.ndarray:
        emb = edge_embeddings(parts.to_graph(), k)
        rows = np.stack([emb.vector(u, v) for u, v in parts.edge_list])
        if pad_to is not None and pad_to > k:
            rows = np.hstack([rows, np.zeros((len(rows), pad_to - k))])
        return rows

    return state_fn


@dataclass(frozen=True)
class SimilarityGrid:
    values: np.ndarray  # (max_eigvecs, max_pcs); nan where no graph supports the cell
    counts: np.ndarray  # graphs contributing per cell
    n_remaps: int

    def value(self, eigvecs: int, pcs: int) -> float:
        return float(self.values[eigvecs - 1, pcs - 1])

    def max_cell(self) -> tuple[int, int, float]:
        masked = np.where(np.isnan(self.values), -np.inf, self.values)
        k, p = np.unravel_index(int(np.argmax(masked)), masked.shape)
        return k + 1, p + 1, float(masked[k, p])


def _base_parts(g: Graph) -> SampleParts:
    q = Query(0, g.n_nodes - 1)
    path = all_shortest_paths(g, q).paths[0]
    return make_parts(g, q, path)


def _averaged_model_distances(
    state_fn: StateFn, g: Graph, n_remaps: int, max_pcs: int, rng: random.Random
) -> list[np.ndarray]:
    """Mean pairwise edge-distance matrix per PC count, over fresh remaps."""
    base = _base_parts(g)
    m = len(base.edge_list)
    sums = [np.zeros((m, m)) for _ in range(max_pcs)]
    order = np.empty(m, dtype=int)
    for _ in range(n_remaps):
        r = random_remap(g.n_nodes, m, rng.randrange(1 << 30))
        states = np.asarray(state_fn(apply_remap(base, r)), dtype=float)
        order[...] = r.edge_order
        original = np.empty_like(states)
        original[order] = states
        centered = original - original.mean(axis=0, keepdims=True)
        u, s, _ = np.linalg.svd(centered, full_matrices=False)
        scores = u * s
        for p in range(1, max_pcs + 1):
            proj = scores[:, : min(p, scores.shape[1])]
            diff = proj[:, None, :] - proj[None, :, :]
            sums[p - 1] += np.linalg.norm(diff, axis=2)
    return [s / n_remaps for s in sums]


def _spectral_distances(g: Graph, max_eigvecs: int) -> list[np.ndarray]:
    lg, dec = line_graph_spectrum(g)
    edges = g.sorted_edges
    out = []
    for k in range(1, min(max_eigvecs, dec.n_nonzero) + 1):
        emb = embeddings_from_spectrum(lg, dec, k)
        coords = np.stack([emb.coords[e] for e in edges])
        diff = coords[:, None, :] - coords[None, :, :]
        out.append(np.linalg.norm(diff, axis=2))
    return out


def _flatten_rescaled(dist: np.ndarray) -> np.ndarray:
    m = dist.shape[0]
    iu = np.triu_indices(m, k=1)
    v = dist[iu]
    lo, hi = v.min(), v.max()
    if hi == lo:
        return np.zeros_like(v)
    return 2.0 * (v - lo) / (hi - lo) - 1.0


def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 1.0 if na == nb else 0.0
    return float(np.dot(a, b) / (na * nb))


def embedding_spectrum_similarity(
    state_fn: StateFn,
    graphs: list[Graph],
    n_remaps: int = 100,
    max_eigvecs: int = 20,
    max_pcs: int = 20,
    seed: int = 0,
) -> SimilarityGrid:
    """Cosine-similarity grid between learned and spectral edge geometry."""
    rng = random.Random(seed)
    acc = np.zeros((max_eigvecs, max_pcs))
    counts = np.zeros((max_eigvecs, max_pcs), dtype=int)
    for g in graphs:
        if g.n_edges < 2:
            raise TooFewEdgesError("similarity needs >= 2 edges")
        model_d = _averaged_model_distances(state_fn, g, n_remaps, max_pcs, rng)
        spec_d = _spectral_distances(g, max_eigvecs)
        model_v = [_flatten_rescaled(d) for d in model_d]
        spec_v = [_flatten_rescaled(d) for d in spec_d]
        for ki, sv in enumerate(spec_v):
            for pi, mv in enumerate(model_v):
                acc[ki, pi] += _cosine(sv, mv)
                counts[ki, pi] += 1
    values = np.where(counts > 0, acc / np.maximum(counts, 1), np.nan)
    return SimilarityGrid(values=values, counts=counts, n_remaps=n_remaps)


def distance_pearson(
    state_fn: StateFn,
    g: Graph,
    eigvecs: int,
    pcs: int,
    n_remaps: int = 100,
    seed: int = 0,
) -> float:
    """Pearson correlation of the unnormalized pairwise distances."""
    rng = random.Random(seed)
    model_d = _averaged_model_distances(state_fn, g, n_remaps, pcs, rng)[pcs - 1]
    spec_d = _spectral_distances(g, eigvecs)[eigvecs - 1]
    iu = np.triu_indices(g.n_edges, k=1)
    return float(np.corrcoef(model_d[iu], spec_d[iu])[0, 1])


def write_grid_table(path: Path | str, grid: SimilarityGrid) -> None:
    lines = [f"# {TABLE_SCHEMA}", "eigvecs,pcs,similarity,n_graphs"]
    k_max, p_max = grid.values.shape
    for k in range(k_max):
        for p in range(p_max):
            if grid.counts[k, p] > 0:
                lines.append(
                    f"{k + 1},{p + 1},{grid.values[k, p]:.6f},{grid.counts[k, p]}"
                )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
