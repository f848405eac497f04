"""Model and training hyperparameter containers."""

from __future__ import annotations

from dataclasses import dataclass

ALLOWED_HEADS = (1, 2, 4, 8)
VOCAB_SIZE = 16


class ConfigError(ValueError):
    pass


class DivergenceError(RuntimeError):
    """Training loss became non-finite; message echoes the config."""


@dataclass(frozen=True)
class ModelConfig:
    hidden_dim: int = 128
    heads: int = 4
    layers: int = 2
    vocab_size: int = VOCAB_SIZE
    rope_base: float = 10000.0
    max_seq_len: int = 128

    def __post_init__(self) -> None:
        if self.vocab_size != VOCAB_SIZE:
            raise ConfigError(f"vocab_size must be {VOCAB_SIZE}")
        if self.heads not in ALLOWED_HEADS:
            raise ConfigError(f"heads must be one of {ALLOWED_HEADS}")
        if self.hidden_dim % self.heads != 0:
            raise ConfigError(
                f"hidden_dim {self.hidden_dim} not divisible by heads {self.heads}"
            )
        if self.head_dim % 2 != 0:
            raise ConfigError("head dimension must be even for rotary encoding")
        if self.layers < 1:
            raise ConfigError("layers must be >= 1")

    @property
    def head_dim(self) -> int:
        return self.hidden_dim // self.heads

    @property
    def mlp_hidden(self) -> int:
        return 4 * self.hidden_dim


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 100
    batch_size: int = 256
    peak_lr: float = 2e-3
    lr_floor_ratio: float = 0.1
    warmup_epochs: int = 1
    weight_decay: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.99
    seed: int = 0

    def __post_init__(self) -> None:
        if self.epochs < 1 or self.batch_size < 1:
            raise ConfigError("epochs and batch_size must be positive")
        if not 0.0 <= self.lr_floor_ratio <= 1.0:
            raise ConfigError("lr_floor_ratio must be in [0, 1]")
        if self.warmup_epochs >= self.epochs:
            raise ConfigError("warmup must be shorter than the run")
