"""Deterministic single-process training loop.

Loss is cross-entropy on masked positions only (the predicted path
tokens and <eos>); the learning rate warms up linearly for the first
epoch(s) then follows a cosine decay to a floor fraction of the peak.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path

import torch
from torch import nn

from slnav import TokenSample

from .config import DivergenceError, ModelConfig, TrainConfig
from .data import encode_epoch, iter_batches, load_samples
from .model import PathTransformer

LOG_SCHEMA = "slnlab-log schema=1"


@dataclass
class TrainResult:
    model: PathTransformer
    loss_curve: tuple[float, ...]  # mean masked CE (nats/token) per epoch
    model_cfg: ModelConfig
    train_cfg: TrainConfig


def masked_loss(
    logits: torch.Tensor, ids: torch.Tensor, mask: torch.Tensor
) -> tuple[torch.Tensor, int]:
    """Next-token CE over positions whose target is loss-masked."""
    targets = ids[:, 1:]
    keep = mask[:, 1:]
    flat = logits[:, :-1][keep]
    loss = nn.functional.cross_entropy(flat, targets[keep], reduction="sum")
    return loss, int(keep.sum())


def lr_at(step: int, total_steps: int, warmup_steps: int, cfg: TrainConfig) -> float:
    floor = cfg.peak_lr * cfg.lr_floor_ratio
    if step < warmup_steps:
        return cfg.peak_lr * (step + 1) / warmup_steps
    span = max(1, total_steps - warmup_steps)
    progress = (step - warmup_steps) / span
    return floor + (cfg.peak_lr - floor) * 0.5 * (1.0 + math.cos(math.pi * progress))


def train_model(
    model_cfg: ModelConfig,
    dataset: list[TokenSample] | str | Path,
    train_cfg: TrainConfig = TrainConfig(),
) -> TrainResult:
    samples = load_samples(dataset)
    torch.manual_seed(train_cfg.seed)
    model = PathTransformer(model_cfg)
    # decay only the 2-D weights of attention and MLP; norms, biases, and
    # the tied embedding stay undecayed
    decay, no_decay = [], []
    for name, param in model.named_parameters():
        if param.ndim < 2 or name == "embed.weight":
            no_decay.append(param)
        else:
            decay.append(param)
    opt = torch.optim.AdamW(
        [
            {"params": decay, "weight_decay": train_cfg.weight_decay},
            {"params": no_decay, "weight_decay": 0.0},
        ],
        lr=train_cfg.peak_lr,
        betas=(train_cfg.beta1, train_cfg.beta2),
    )
    steps_per_epoch = math.ceil(len(samples) / train_cfg.batch_size)
    total_steps = steps_per_epoch * train_cfg.epochs
    warmup_steps = steps_per_epoch * train_cfg.warmup_epochs

    curve: list[float] = []
    step = 0
    for epoch in range(train_cfg.epochs):
        encoded = encode_epoch(samples, seed=train_cfg.seed * 1_000_003 + epoch)
        rng = random.Random(train_cfg.seed * 2_000_003 + epoch + 1)
        epoch_loss = 0.0
        epoch_tokens = 0
        model.train()
        for ids, mask in iter_batches(encoded, train_cfg.batch_size, rng):
            for group in opt.param_groups:
                group["lr"] = lr_at(step, total_steps, warmup_steps, train_cfg)
            opt.zero_grad()
            out = model(ids)
            loss_sum, n_tok = masked_loss(out.logits, ids, mask)
            loss = loss_sum / max(1, n_tok)
            if not torch.isfinite(loss):
                raise DivergenceError(
                    f"non-finite loss at epoch {epoch}, step {step}; "
                    f"model={model_cfg}, train={train_cfg}"
                )
            loss.backward()
            opt.step()
            epoch_loss += float(loss_sum.detach())
            epoch_tokens += n_tok
            step += 1
        curve.append(epoch_loss / max(1, epoch_tokens))
    model.eval()
    return TrainResult(
        model=model, loss_curve=tuple(curve), model_cfg=model_cfg, train_cfg=train_cfg
    )


def write_loss_log(path: Path | str, result: TrainResult) -> None:
    lines = [f"# {LOG_SCHEMA}", "epoch,loss"]
    lines += [f"{i},{v:.6f}" for i, v in enumerate(result.loss_curve)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def save_checkpoint(path: Path | str, result: TrainResult) -> None:
    torch.save(
        {
            "model_cfg": result.model_cfg,
            "train_cfg": result.train_cfg,
            "loss_curve": result.loss_curve,
            "state_dict": result.model.state_dict(),
        },
        path,
    )


def load_checkpoint(path: Path | str) -> TrainResult:
    blob = torch.load(path, weights_only=False)
    model = PathTransformer(blob["model_cfg"])
    model.load_state_dict(blob["state_dict"])
    model.eval()
    return TrainResult(
        model=model,
        loss_curve=tuple(blob["loss_curve"]),
        model_cfg=blob["model_cfg"],
        train_cfg=blob["train_cfg"],
    )
