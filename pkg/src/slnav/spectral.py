"""Line graphs, normalized Laplacians, Jacobi eigendecomposition and
per-edge spectral embeddings.

Edges of the base graph become nodes of the line graph; the normalized
Laplacian of the line graph is decomposed and the eigenvector
coefficients of the k smallest non-zero eigenvalues give each base edge
a k-dimensional coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KOutOfRangeError, NoConvergenceError, TooFewEdgesError
from .graph import Edge, Graph, norm_edge

#: Eigenvalues below this are treated as the zero mode.
ZERO_EIGENVALUE_TOL = 1e-8

DEFAULT_JACOBI_TOL = 1e-10
MAX_JACOBI_SWEEPS = 100


@dataclass(frozen=True)
class LineGraph:
    """Line graph L(G): one node per base edge, adjacency by shared endpoint."""

    base: Graph
    edge_index: tuple[Edge, ...]
    adjacency: frozenset[tuple[int, int]]

    @property
    def n_nodes(self) -> int:
        return len(self.edge_index)

    def degree(self, i: int) -> int:
        return sum(1 for a, b in self.adjacency if i in (a, b))


def line_graph(g: Graph) -> LineGraph:
    """Build L(G); edge_index follows the base graph's sorted edge order."""
    if g.n_edges < 2:
        raise TooFewEdgesError(f"line graph needs >= 2 base edges, got {g.n_edges}")
    index = g.sorted_edges
    adj = set()
    for i in range(len(index)):
        for j in range(i + 1, len(index)):
            if len(set(index[i]) & set(index[j])) == 1:
                adj.add((i, j))
    return LineGraph(base=g, edge_index=index, adjacency=frozenset(adj))


def _line_graph_as_graph(lg: LineGraph) -> Graph:
    from .graph import validate_graph

    return validate_graph(lg.n_nodes, list(lg.adjacency))


def normalized_laplacian(g: Graph) -> np.ndarray:
    """D^(-1/2) (D - A) D^(-1/2): unit diagonal, -1/sqrt(deg_i deg_j) on edges."""
    n = g.n_nodes
    lap = np.zeros((n, n), dtype=np.float64)
    np.fill_diagonal(lap, 1.0)
    for u, v in g.edges:
        w = -1.0 / np.sqrt(g.degree(u) * g.degree(v))
        lap[u, v] = lap[v, u] = w
    return lap


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues ascending, orthonormal eigenvector columns aligned."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_tol: float

    @property
    def n_zero(self) -> int:
        return int(np.sum(self.eigenvalues < ZERO_EIGENVALUE_TOL))

    @property
    def n_nonzero(self) -> int:
        return len(self.eigenvalues) - self.n_zero


def eig_sym(
    m: np.ndarray,
    tol: float = DEFAULT_JACOBI_TOL,
    max_sweeps: int = MAX_JACOBI_SWEEPS,
) -> EigenDecomposition:
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Sweeps rotate every off-diagonal pair until the off-diagonal
    Frobenius norm drops below tol * dimension. Eigenvalues within tol of
    zero are clamped to zero; each eigenvector is scaled so its
    largest-magnitude coefficient is positive.
    """
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrix, got {a.shape}")
    if not np.allclose(a, a.T, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        vals, vecs = a[0:1, 0], v
    else:
        target = tol * n
        for _ in range(max_sweeps):
            off = np.sqrt(np.sum(np.tril(a, -1) ** 2) * 2.0)
            if off <= target:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if abs(apq) <= tol * 1e-2:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if theta == 0.0:
                        t = 1.0
                    else:
                        t = np.sign(theta) / (abs(theta) + np.sqrt(theta**2 + 1.0))
                    c = 1.0 / np.sqrt(t**2 + 1.0)
                    s = t * c
                    col_p, col_q = a[:, p].copy(), a[:, q].copy()
                    a[:, p] = c * col_p - s * col_q
                    a[:, q] = s * col_p + c * col_q
                    row_p, row_q = a[p, :].copy(), a[q, :].copy()
                    a[p, :] = c * row_p - s * row_q
                    a[q, :] = s * row_p + c * row_q
                    a[p, q] = a[q, p] = 0.0
                    v_p, v_q = v[:, p].copy(), v[:, q].copy()
                    v[:, p] = c * v_p - s * v_q
                    v[:, q] = s * v_p + c * v_q
        else:
            raise NoConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (dim {n})"
            )
        vals, vecs = np.diag(a).copy(), v
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    vals[np.abs(vals) <= tol] = 0.0
    # Sign convention: largest-magnitude coefficient positive.
    for j in range(vecs.shape[1]):
        i = int(np.argmax(np.abs(vecs[:, j])))
        if vecs[i, j] < 0:
            vecs[:, j] = -vecs[:, j]
    return EigenDecomposition(
        eigenvalues=vals, eigenvectors=vecs, residual_tol=tol
    )


@dataclass(frozen=True)
class SpectralEmbedding:
    """k-dimensional coordinates per base edge."""

    k: int
    coords: dict[Edge, np.ndarray]

    def vector(self, u: int, v: int) -> np.ndarray:
        return self.coords[norm_edge(u, v)]


def line_graph_spectrum(g: Graph) -> tuple[LineGraph, EigenDecomposition]:
    """Decompose the normalized Laplacian of L(G)."""
    lg = line_graph(g)
    lap = normalized_laplacian(_line_graph_as_graph(lg))
    return lg, eig_sym(lap)


def embeddings_from_spectrum(
    lg: LineGraph, dec: EigenDecomposition, k: int
) -> SpectralEmbedding:
    if not 1 <= k <= dec.n_nonzero:
        raise KOutOfRangeError(
            f"k={k} outside [1, {dec.n_nonzero}] non-zero eigenvalues"
        )
    cols = dec.eigenvectors[:, dec.n_zero : dec.n_zero + k]
    coords = {edge: cols[i].copy() for i, edge in enumerate(lg.edge_index)}
    return SpectralEmbedding(k=k, coords=coords)


def edge_embeddings(g: Graph, k: int) -> SpectralEmbedding:
    """Coordinates from eigenvectors of the k smallest non-zero eigenvalues
    of the normalized Laplacian of L(G)."""
    lg, dec = line_graph_spectrum(g)
    return embeddings_from_spectrum(lg, dec, k)
