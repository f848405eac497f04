import math
import random

import numpy as np
import pytest

from slnav.canonical import enumerate_connected
from slnav.errors import KOutOfRangeError, TooFewEdgesError
from slnav.graph import validate_graph
from slnav.spectral import (
    edge_embeddings,
    eig_sym,
    line_graph,
    line_graph_spectrum,
    normalized_laplacian,
)

from oracles import random_connected_graph


def path_graph(n):
    return validate_graph(n, [(i, i + 1) for i in range(n - 1)])


def triangle():
    return validate_graph(3, [(0, 1), (1, 2), (0, 2)])


class TestLineGraph:
    def test_triangle_line_graph_is_triangle(self):
        lg = line_graph(triangle())
        assert lg.n_nodes == 3
        assert len(lg.adjacency) == 3

    def test_path3_line_graph_single_edge(self):
        lg = line_graph(path_graph(3))
        assert lg.n_nodes == 2
        assert lg.adjacency == frozenset({(0, 1)})

    def test_star_line_graph_is_triangle(self):
        star = validate_graph(4, [(0, 1), (0, 2), (0, 3)])
        lg = line_graph(star)
        assert lg.n_nodes == 3 and len(lg.adjacency) == 3

    def test_too_few_edges(self):
        with pytest.raises(TooFewEdgesError):
            line_graph(validate_graph(2, [(0, 1)]))

    def test_degree_identity_and_edge_count(self):
        # line-graph degree of base edge (u,v) is deg(u)+deg(v)-2;
        # line-graph edge count is sum over nodes of C(deg, 2)
        for n in (4, 5, 6):
            for cg in enumerate_connected(n):
                g = cg.graph
                if g.n_edges < 2:
                    continue
                lg = line_graph(g)
                expected = sum(
                    math.comb(g.degree(v), 2) for v in range(g.n_nodes)
                )
                assert len(lg.adjacency) == expected
                for i, (u, v) in enumerate(lg.edge_index):
                    assert lg.degree(i) == g.degree(u) + g.degree(v) - 2


class TestNormalizedLaplacian:
    def test_k2(self):
        lap = normalized_laplacian(validate_graph(2, [(0, 1)]))
        assert np.allclose(lap, [[1, -1], [-1, 1]])

    def test_k3(self):
        lap = normalized_laplacian(triangle())
        assert np.allclose(np.diag(lap), 1.0)
        off = lap[~np.eye(3, dtype=bool)]
        assert np.allclose(off, -0.5)

    def test_path3_entries(self):
        lap = normalized_laplacian(path_graph(3))
        assert lap[0, 1] == pytest.approx(-1 / math.sqrt(2))
        assert lap[1, 2] == pytest.approx(-1 / math.sqrt(2))
        assert lap[0, 2] == 0.0

    def test_spectrum_bounds_and_zero_mode(self):
        rng = random.Random(8)
        for _ in range(50):
            g = random_connected_graph(rng)
            dec = eig_sym(normalized_laplacian(g))
            assert dec.eigenvalues[0] == 0.0
            assert dec.n_zero == 1
            assert dec.eigenvalues[-1] <= 2.0 + 1e-10
            # zero-mode eigenvector proportional to sqrt(deg)
            v0 = dec.eigenvectors[:, 0]
            ref = np.sqrt([g.degree(v) for v in range(g.n_nodes)])
            ref = ref / np.linalg.norm(ref)
            assert np.allclose(np.abs(v0), ref, atol=1e-8)


class TestEigSym:
    def test_identity(self):
        dec = eig_sym(np.eye(3))
        assert np.allclose(dec.eigenvalues, 1.0)

    def test_k2_laplacian(self):
        dec = eig_sym(normalized_laplacian(validate_graph(2, [(0, 1)])))
        assert np.allclose(dec.eigenvalues, [0.0, 2.0])

    def test_k3_laplacian(self):
        # characteristic polynomial of [[1,-.5,-.5],...]: roots 0, 1.5, 1.5
        dec = eig_sym(normalized_laplacian(triangle()))
        assert np.allclose(dec.eigenvalues, [0.0, 1.5, 1.5])

    def test_residual_orthonormality_reconstruction(self):
        rng = random.Random(10)
        for _ in range(100):
            g = random_connected_graph(rng)
            lap = normalized_laplacian(g)
            dec = eig_sym(lap)
            v, w = dec.eigenvectors, dec.eigenvalues
            assert np.max(np.abs(lap @ v - v * w)) <= 1e-8
            assert np.max(np.abs(v.T @ v - np.eye(len(w)))) <= 1e-8
            assert np.max(np.abs(v @ np.diag(w) @ v.T - lap)) <= 1e-8

    def test_matches_numpy_eigvalsh(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            n = int(rng.integers(2, 15))
            m = rng.standard_normal((n, n))
            m = (m + m.T) / 2
            dec = eig_sym(m)
            assert np.allclose(dec.eigenvalues, np.linalg.eigvalsh(m), atol=1e-8)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            eig_sym(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestEdgeEmbeddings:
    def test_path4_fiedler_embedding(self):
        # L(P4) is the 3-node path; lambda=1 eigenvector is (1,0,-1)/sqrt(2)
        emb = edge_embeddings(path_graph(4), k=1)
        vals = np.array(
            [emb.vector(0, 1)[0], emb.vector(1, 2)[0], emb.vector(2, 3)[0]]
        )
        ref = np.array([1.0, 0.0, -1.0]) / math.sqrt(2)
        assert np.allclose(vals, ref) or np.allclose(vals, -ref)

    def test_k1_is_fiedler_vector(self):
        g = random_connected_graph(random.Random(12))
        lg, dec = line_graph_spectrum(g)
        emb = edge_embeddings(g, 1)
        fiedler = dec.eigenvectors[:, dec.n_zero]
        for i, e in enumerate(lg.edge_index):
            assert emb.coords[e][0] == pytest.approx(fiedler[i])

    def test_sign_flip_preserves_distances(self):
        g = random_connected_graph(random.Random(14), n_lo=5)
        lg, dec = line_graph_spectrum(g)
        emb = edge_embeddings(g, min(3, dec.n_nonzero))
        coords = np.stack([emb.coords[e] for e in lg.edge_index])
        flipped = coords.copy()
        flipped[:, 0] = -flipped[:, 0]
        d1 = np.linalg.norm(coords[:, None] - coords[None, :], axis=2)
        d2 = np.linalg.norm(flipped[:, None] - flipped[None, :], axis=2)
        assert np.allclose(d1, d2)

    def test_k_out_of_range(self):
        g = path_graph(3)  # line graph has 2 nodes, 1 non-zero eigenvalue
        with pytest.raises(KOutOfRangeError):
            edge_embeddings(g, 2)
        with pytest.raises(KOutOfRangeError):
            edge_embeddings(g, 0)

    def test_full_k_distances_remap_invariant_simple_spectrum(self):
        # pairwise squared distances with all non-zero eigenvectors are
        # relabeling-invariant when the spectrum is simple
        rng = random.Random(16)
        checked = 0
        for cg in enumerate_connected(5):
            g = cg.graph
            if g.n_edges < 2:
                continue
            lg, dec = line_graph_spectrum(g)
            vals = dec.eigenvalues
            if np.min(np.diff(vals)) < 1e-6:
                continue  # repeated eigenvalues: basis-dependent
            k = dec.n_nonzero
            emb = edge_embeddings(g, k)
            perm = rng.sample(range(g.n_nodes), g.n_nodes)
            pg = validate_graph(g.n_nodes, [(perm[u], perm[v]) for u, v in g.edges])
            pemb = edge_embeddings(pg, k)
            for e1 in g.sorted_edges:
                for e2 in g.sorted_edges:
                    d = np.linalg.norm(emb.coords[e1] - emb.coords[e2])
                    pd = np.linalg.norm(
                        pemb.vector(perm[e1[0]], perm[e1[1]])
                        - pemb.vector(perm[e2[0]], perm[e2[1]])
                    )
                    assert d == pytest.approx(pd, abs=1e-8)
            checked += 1
        assert checked >= 3
