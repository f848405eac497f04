"""Desk-scale transformer training and analysis on slnav path datasets.

Trains a small decoder-only model with rotary position encoding on the
tokenized shortest-path sequences, then probes what it learned:
attention-head roles, agreement between learned edge representations
and line-graph spectral embeddings, path-probability distributions,
and capacity ablations.
"""

from .ablation import (
    LEARNED_THRESHOLD,
    SUSTAIN_EPOCHS,
    AblationRun,
    ablate,
    learned_verdict,
    write_ablation_table,
)
from .analysis import (
    AttentionProfile,
    HeadStats,
    attention_profile,
    greedy_shortest_path_accuracy,
    path_distribution,
    path_probabilities,
    shortest_path_probability,
    write_profile_table,
)
from .config import ConfigError, DivergenceError, ModelConfig, TrainConfig
from .data import encode_epoch, load_samples, prompt_ids
from .model import ModelOutput, PathTransformer
from .spectrum import (
    SimilarityGrid,
    distance_pearson,
    embedding_spectrum_similarity,
    model_edge_states,
    spectral_edge_states,
    write_grid_table,
)
from .training import (
    TrainResult,
    load_checkpoint,
    save_checkpoint,
    train_model,
    write_loss_log,
)

__version__ = "0.1.0"

__all__ = [
    "LEARNED_THRESHOLD",
    "SUSTAIN_EPOCHS",
    "AblationRun",
    "AttentionProfile",
    "ConfigError",
    "DivergenceError",
    "HeadStats",
    "ModelConfig",
    "ModelOutput",
    "PathTransformer",
    "SimilarityGrid",
    "TrainConfig",
    "TrainResult",
    "ablate",
    "attention_profile",
    "distance_pearson",
    "embedding_spectrum_similarity",
    "encode_epoch",
    "greedy_shortest_path_accuracy",
    "learned_verdict",
    "load_checkpoint",
    "load_samples",
    "model_edge_states",
    "path_distribution",
    "path_probabilities",
    "prompt_ids",
    "save_checkpoint",
    "shortest_path_probability",
    "spectral_edge_states",
    "train_model",
    "write_ablation_table",
    "write_grid_table",
    "write_loss_log",
    "write_profile_table",
]
