"""Walk through one SLN solve, printing every intermediate quantity.

Builds a small graph, shows the line graph and its Laplacian spectrum,
the k=1 edge embedding (the Fiedler coordinates), and traces the greedy
navigation step by step. The chosen query is one where k=1 finds a
valid but longer path, so adaptive mode escalates to k=2.
"""

import numpy as np

from slnav import Query, bfs_shortest_length, sln_adaptive, validate_graph
from slnav.navigation import StepTrace, sln_find_path
from slnav.spectral import embeddings_from_spectrum, line_graph_spectrum


def main() -> None:
    # a 5-cycle with one chord
    g = validate_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 4)])
    q = Query(0, 3)
    print(f"graph: n={g.n_nodes}, edges={list(g.sorted_edges)}")
    print(f"query: {q.source} -> {q.target}, shortest length "
          f"{bfs_shortest_length(g, q)} nodes\n")

    lg, dec = line_graph_spectrum(g)
    print("line graph nodes (one per edge):")
    for i, e in enumerate(lg.edge_index):
        print(f"  L{i} = edge {e}, line-graph degree {lg.degree(i)}")
    with np.printoptions(precision=4, suppress=True):
        print(f"\nLaplacian eigenvalues: {dec.eigenvalues}")
    print(f"zero modes: {dec.n_zero}, usable embedding dims: {dec.n_nonzero}\n")

    emb = embeddings_from_spectrum(lg, dec, k=1)
    print("k=1 embedding (Fiedler coordinate per edge):")
    for e in lg.edge_index:
        print(f"  {e}: {emb.coords[e][0]:+.4f}")

    trace: list[StepTrace] = []
    result = sln_find_path(g, q, k=1, trace=trace)
    print(f"\ngreedy walk with k=1:")
    for step in trace:
        print(f"  at {step.current}: candidate edges {step.row_edges}, "
              f"target edges {step.col_edges}")
        with np.printoptions(precision=4, suppress=True):
            print(f"    distance matrix (rows=candidates, cols=target):\n"
                  f"{np.round(step.distances, 4)}")
        print(f"    -> step to {step.chosen}")
    print(f"\nk=1 result: path={result.path}, status={result.status.name}")

    adaptive = sln_adaptive(g, q)
    print(f"adaptive mode: path={adaptive.path}, k_used={adaptive.k_used}, "
          f"status={adaptive.status.name}")


if __name__ == "__main__":
    main()
