"""Spectral Line Navigation toolkit.

Approximate shortest paths via greedy search in the spectral embedding of
the line graph, plus the supporting machinery: graph validation and exact
shortest-path oracles, non-isomorphic graph enumeration, remap
augmentation, a 16-token sequence format, and evaluation metrics.
"""

from .canonical import (
    CanonicalGraph,
    canonical_key,
    canonicalize,
    enumerate_connected,
    sample_random_connected,
    split_train_test,
)
from .dataset import TokenSample, assemble_dataset, read_dataset, write_dataset
from .evaluation import EvalReport, emit_plot_data, evaluate_sln, path_length_gap
from .graph import (
    Graph,
    PathSet,
    Query,
    all_shortest_paths,
    bfs_shortest_length,
    validate_graph,
)
from .navigation import SlnConfig, SlnResult, SlnStatus, sln_adaptive, sln_find_path
from .remap import Remap, SampleParts, apply_remap, make_parts, random_remap
from .spectral import (
    EigenDecomposition,
    LineGraph,
    SpectralEmbedding,
    edge_embeddings,
    eig_sym,
    line_graph,
    normalized_laplacian,
)
from .tokens import decode, encode, loss_mask

__version__ = "0.1.0"

__all__ = [
    "CanonicalGraph",
    "EigenDecomposition",
    "EvalReport",
    "Graph",
    "LineGraph",
    "PathSet",
    "Query",
    "Remap",
    "SampleParts",
    "SlnConfig",
    "SlnResult",
    "SlnStatus",
    "SpectralEmbedding",
    "TokenSample",
    "all_shortest_paths",
    "apply_remap",
    "assemble_dataset",
    "bfs_shortest_length",
    "canonical_key",
    "canonicalize",
    "decode",
    "edge_embeddings",
    "eig_sym",
    "emit_plot_data",
    "encode",
    "enumerate_connected",
    "evaluate_sln",
    "line_graph",
    "loss_mask",
    "make_parts",
    "normalized_laplacian",
    "path_length_gap",
    "random_remap",
    "read_dataset",
    "sample_random_connected",
    "sln_adaptive",
    "sln_find_path",
    "split_train_test",
    "validate_graph",
    "write_dataset",
]
