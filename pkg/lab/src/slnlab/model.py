"""A small decoder-only transformer with rotary position encoding.

Pre-norm blocks: causal multi-head attention then a 4x GELU MLP.
`forward` can additionally return per-head attention weights and the
residual-stream state after each block, which the analysis passes use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch
from torch import nn

from .config import ModelConfig


@dataclass
class ModelOutput:
    logits: torch.Tensor
    attentions: tuple[torch.Tensor, ...] | None = None  # per layer (B, H, T, T)
    block_states: tuple[torch.Tensor, ...] | None = None  # per layer (B, T, D)


def rotary_tables(
    head_dim: int, max_len: int, base: float
) -> tuple[torch.Tensor, torch.Tensor]:
    inv_freq = base ** (-torch.arange(0, head_dim, 2, dtype=torch.float32) / head_dim)
    angles = torch.outer(torch.arange(max_len, dtype=torch.float32), inv_freq)
    return torch.cos(angles), torch.sin(angles)  # each (max_len, head_dim/2)


def apply_rotary(x: torch.Tensor, cos: torch.Tensor, sin: torch.Tensor) -> torch.Tensor:
    """Rotate even/odd coordinate pairs of x (B, H, T, head_dim)."""
    t = x.shape[2]
    c, s = cos[:t], sin[:t]
    x1, x2 = x[..., 0::2], x[..., 1::2]
    out = torch.empty_like(x)
    out[..., 0::2] = x1 * c - x2 * s
    out[..., 1::2] = x1 * s + x2 * c
    return out


class CausalSelfAttention(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        self.qkv = nn.Linear(cfg.hidden_dim, 3 * cfg.hidden_dim, bias=False)
        self.proj = nn.Linear(cfg.hidden_dim, cfg.hidden_dim, bias=False)
        cos, sin = rotary_tables(cfg.head_dim, cfg.max_seq_len, cfg.rope_base)
        self.register_buffer("rope_cos", cos, persistent=False)
        self.register_buffer("rope_sin", sin, persistent=False)

    def forward(
        self, x: torch.Tensor, need_weights: bool = False
    ) -> tuple[torch.Tensor, torch.Tensor | None]:
        b, t, d = x.shape
        h, hd = self.cfg.heads, self.cfg.head_dim
        q, k, v = self.qkv(x).split(d, dim=2)
        q = q.view(b, t, h, hd).transpose(1, 2)
        k = k.view(b, t, h, hd).transpose(1, 2)
        v = v.view(b, t, h, hd).transpose(1, 2)
        q = apply_rotary(q, self.rope_cos, self.rope_sin)
        k = apply_rotary(k, self.rope_cos, self.rope_sin)
        scores = q @ k.transpose(2, 3) / math.sqrt(hd)
        causal = torch.triu(
            torch.ones(t, t, dtype=torch.bool, device=x.device), diagonal=1
        )
        scores = scores.masked_fill(causal, float("-inf"))
        weights = torch.softmax(scores, dim=-1)
        y = (weights @ v).transpose(1, 2).reshape(b, t, d)
        return self.proj(y), (weights if need_weights else None)


class Block(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.ln1 = nn.LayerNorm(cfg.hidden_dim)
        self.attn = CausalSelfAttention(cfg)
        self.ln2 = nn.LayerNorm(cfg.hidden_dim)
        self.mlp = nn.Sequential(
            nn.Linear(cfg.hidden_dim, cfg.mlp_hidden),
            nn.GELU(),
            nn.Linear(cfg.mlp_hidden, cfg.hidden_dim),
        )

    def forward(
        self, x: torch.Tensor, need_weights: bool = False
    ) -> tuple[torch.Tensor, torch.Tensor | None]:
        a, weights = self.attn(self.ln1(x), need_weights)
        x = x + a
        x = x + self.mlp(self.ln2(x))
        return x, weights


class PathTransformer(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        self.embed = nn.Embedding(cfg.vocab_size, cfg.hidden_dim)
        self.blocks = nn.ModuleList(Block(cfg) for _ in range(cfg.layers))
        self.ln_f = nn.LayerNorm(cfg.hidden_dim)
        self.lm_head = nn.Linear(cfg.hidden_dim, cfg.vocab_size, bias=False)
        # tied input/output embedding: converges much faster at this scale
        self.lm_head.weight = self.embed.weight

    def forward(
        self,
        ids: torch.Tensor,
        need_attention: bool = False,
        need_states: bool = False,
    ) -> ModelOutput:
        x = self.embed(ids)
        attentions: list[torch.Tensor] = []
        states: list[torch.Tensor] = []
        for block in self.blocks:
            x, weights = block(x, need_attention)
            if need_attention:
                attentions.append(weights)
            if need_states:
                states.append(x)
        logits = self.lm_head(self.ln_f(x))
        return ModelOutput(
            logits=logits,
            attentions=tuple(attentions) if need_attention else None,
            block_states=tuple(states) if need_states else None,
        )

    @torch.no_grad()
    def generate_greedy(self, prompt: list[int], max_new: int, stop: int) -> list[int]:
        """Append argmax tokens until `stop` is produced or max_new reached."""
        ids = list(prompt)
        for _ in range(max_new):
            x = torch.tensor([ids], dtype=torch.long)
            logits = self.forward(x).logits[0, -1]
            nxt = int(torch.argmax(logits))
            ids.append(nxt)
            if nxt == stop:
                break
        return ids[len(prompt):]
