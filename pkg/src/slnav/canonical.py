"""Isomorphism-class canonicalization, exhaustive enumeration and sampling.

The canonical key of a graph is the lexicographically smallest
adjacency-bit-string over all node orderings consistent with a
color-refinement partition (degree sequence iteratively refined by
neighbor colors). Refinement prunes the ordering search from n! down to
the product of color-class factorials; within the pruned set the minimum
is exhaustive, so equal keys <=> isomorphic graphs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedError, EmptyInputError, UnsupportedSizeError
from .graph import Graph, validate_graph

#: Adjacency bit strings are packed into a single int64.
MAX_CANONICAL_NODES = 11

_ORDERING_CHUNK = 65536


@dataclass(frozen=True)
class CanonicalGraph:
    """A graph labeled in its canonical form, plus the class key."""

    graph: Graph
    canonical_key: bytes


def _pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row/col arrays of the upper-triangle pair ordering (i<j, lex)."""
    ai, bi = np.triu_indices(n, k=1)
    return ai, bi


def _lex_weights(m: int) -> np.ndarray:
    # Highest bit first so numeric min == lexicographic min.
    return (1 << np.arange(m - 1, -1, -1, dtype=np.int64)).astype(np.int64)


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n_nodes, g.n_nodes), dtype=bool)
    for u, v in g.edges:
        a[u, v] = a[v, u] = True
    return a


def _refine_colors(g: Graph) -> list[int]:
    """Stable color refinement; color ranks are label-independent."""
    colors = [g.degree(v) for v in range(g.n_nodes)]
    ranks = {c: r for r, c in enumerate(sorted(set(colors)))}
    colors = [ranks[c] for c in colors]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in g.neighbors(v))))
            for v in range(g.n_nodes)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _consistent_orderings(colors: list[int]):
    """Yield node orderings: color classes in rank order, free within."""
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    for parts in itertools.product(*(itertools.permutations(gr) for gr in groups)):
        yield tuple(itertools.chain.from_iterable(parts))


def _min_key_int(g: Graph) -> int:
    adj = _adjacency_matrix(g)
    ai, bi = _pair_index(g.n_nodes)
    weights = _lex_weights(len(ai))
    best: int | None = None
    orderings = _consistent_orderings(_refine_colors(g))
    while True:
        chunk = list(itertools.islice(orderings, _ORDERING_CHUNK))
        if not chunk:
            break
        o = np.array(chunk, dtype=np.intp)
        bits = adj[o[:, ai], o[:, bi]]
        keys = bits.astype(np.int64) @ weights
        k = int(keys.min())
        if best is None or k < best:
            best = k
    assert best is not None
    return best


def canonical_key(g: Graph) -> bytes:
    """Permutation-invariant identifier of the isomorphism class."""
    if g.n_nodes > MAX_CANONICAL_NODES:
        raise UnsupportedSizeError(
            f"canonicalization supports n <= {MAX_CANONICAL_NODES}, got {g.n_nodes}"
        )
    return bytes([g.n_nodes]) + _min_key_int(g).to_bytes(8, "big")


def graph_from_key(key: bytes) -> Graph:
    """Rebuild the canonically labeled representative from its key."""
    n = key[0]
    bits = int.from_bytes(key[1:], "big")
    ai, bi = _pair_index(n)
    m = len(ai)
    edges = [
        (int(ai[e]), int(bi[e])) for e in range(m) if (bits >> (m - 1 - e)) & 1
    ]
    return validate_graph(n, edges)


def canonicalize(g: Graph) -> CanonicalGraph:
    """Canonical key plus the canonically relabeled graph."""
    key = canonical_key(g)
    return CanonicalGraph(graph=graph_from_key(key), canonical_key=key)


def _edge_posmap(n: int) -> np.ndarray:
    """posmap[p, e] = destination bit position of pair e under perm p."""
    ai, bi = _pair_index(n)
    pos = {(int(a), int(b)): e for e, (a, b) in enumerate(zip(ai, bi))}
    perms = list(itertools.permutations(range(n)))
    out = np.empty((len(perms), len(ai)), dtype=np.intp)
    for p, perm in enumerate(perms):
        for e, (a, b) in enumerate(zip(ai, bi)):
            x, y = perm[a], perm[b]
            out[p, e] = pos[(x, y) if x < y else (y, x)]
    return out


def _connected_bits(n: int, bits: np.ndarray, ai: np.ndarray, bi: np.ndarray) -> bool:
    neigh: list[list[int]] = [[] for _ in range(n)]
    for e in np.flatnonzero(bits):
        u, v = int(ai[e]), int(bi[e])
        neigh[u].append(v)
        neigh[v].append(u)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in neigh[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == n


def enumerate_connected(n: int) -> list[CanonicalGraph]:
    """One representative per isomorphism class of connected graphs on n nodes.

    Orbit-marking sweep over all labeled graphs; exhaustive regime 3 <= n <= 7.
    Output sorted by canonical_key.
    """
    if not 3 <= n <= 7:
        raise UnsupportedSizeError(
            f"exhaustive enumeration supports 3 <= n <= 7, got {n}"
        )
    ai, bi = _pair_index(n)
    m = len(ai)
    # Per-permutation weight rows: orbit masks in one matvec per class.
    enc = (1 << np.arange(m, dtype=np.int64)).astype(np.int64)
    weight_rows = enc[_edge_posmap(n)]
    shifts = np.arange(m, dtype=np.int64)

    seen = np.zeros(1 << m, dtype=bool)
    out: list[CanonicalGraph] = []
    for mask in range(1 << m):
        if seen[mask]:
            continue
        bits = (mask >> shifts) & 1
        orbit = weight_rows @ bits
        seen[orbit] = True
        if _connected_bits(n, bits, ai, bi):
            g = validate_graph(
                n, [(int(ai[e]), int(bi[e])) for e in np.flatnonzero(bits)]
            )
            out.append(canonicalize(g))
    out.sort(key=lambda cg: cg.canonical_key)
    return out


def sample_random_connected(n: int, seed: int | random.Random) -> Graph:
    """Random connected graph: uniform edge count, uniform edges, reject
    disconnected. Deterministic given the seed."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m_max = len(pairs)
    while True:
        m = rng.randint(n - 1, m_max)
        edges = rng.sample(pairs, m)
        try:
            return validate_graph(n, edges)
        except DisconnectedError:
            continue


def split_train_test(
    graphs: list[CanonicalGraph], ratio: float, seed: int
) -> tuple[list[CanonicalGraph], list[CanonicalGraph]]:
    """Disjoint partition by canonical key; deterministic shuffle by seed."""
    if not graphs:
        raise EmptyInputError("no graphs to split")
    if not 0 < ratio < 1:
        raise ValueError(f"ratio must be in (0,1), got {ratio}")
    shuffled = sorted(graphs, key=lambda cg: cg.canonical_key)
    random.Random(seed).shuffle(shuffled)
    cut = int(len(shuffled) * ratio)
    return shuffled[:cut], shuffled[cut:]


def persist_records(graphs: list[CanonicalGraph]) -> str:
    """Newline-delimited `key_hex n m u1 v1 ...` records."""
    lines = []
    for cg in graphs:
        g = cg.graph
        flat = " ".join(f"{u} {v}" for u, v in g.sorted_edges)
        lines.append(f"{cg.canonical_key.hex()} {g.n_nodes} {g.n_edges} {flat}")
    return "\n".join(lines) + "\n"


def load_records(text: str) -> list[CanonicalGraph]:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        parts = line.split()
        key = bytes.fromhex(parts[0])
        n, m = int(parts[1]), int(parts[2])
        vals = list(map(int, parts[3 : 3 + 2 * m]))
        edges = list(zip(vals[::2], vals[1::2]))
        out.append(CanonicalGraph(graph=validate_graph(n, edges), canonical_key=key))
    return out
