"""Model-dependent evaluation: decoding accuracy, path probabilities,
and attention-head profiling.

Path probabilities follow the temperature-scaled next-token chain rule
over masked positions only. Attention profiling looks at the first
generation step (the source echo position) and partitions the <e>
control tokens by whether their edge touches the current node, the
target node, or neither.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
import torch

from slnav import TokenSample, all_shortest_paths, apply_remap, random_remap
from slnav.graph import is_valid_path
from slnav.remap import SampleParts
from slnav.tokens import EDGE, EOS, MAX_NODE_LABEL, encode, loss_mask

from .data import pad_batch
from .model import PathTransformer

TABLE_SCHEMA = "slnlab-table schema=1"
DEFAULT_TEMPERATURE = 0.7


def _remapped(parts: SampleParts, rng: random.Random) -> SampleParts:
    r = random_remap(parts.n_nodes, len(parts.edge_list), rng.randrange(1 << 30))
    return apply_remap(parts, r)


def greedy_shortest_path_accuracy(
    model: PathTransformer, samples: list[TokenSample], seed: int = 0
) -> float:
    """Fraction of samples whose greedy decode is a shortest path.

    Each sample is presented under a fresh remap, mirroring training.
    """
    rng = random.Random(seed)
    hits = 0
    for s in samples:
        parts = _remapped(s.parts, rng)
        ids = encode(parts)
        prompt = ids[: loss_mask(ids).index(True)]
        generated = model.generate_greedy(
            prompt, max_new=parts.n_nodes + 1, stop=EOS
        )
        if not generated or generated[-1] != EOS:
            continue
        body = generated[:-1]
        if any(not 0 <= t <= MAX_NODE_LABEL for t in body):
            continue
        path = (parts.query.source, *body)
        g = parts.to_graph()
        if (
            path[-1] == parts.query.target
            and len(path) == len(parts.path)
            and is_valid_path(g, path)
        ):
            hits += 1
    return hits / len(samples)


def path_probabilities(
    model: PathTransformer,
    sample: TokenSample,
    temperature: float = DEFAULT_TEMPERATURE,
) -> list[float]:
    """Probability of each shortest path under temperature-scaled decoding.

    All shortest paths share a length, so the candidate sequences batch
    cleanly; each probability is the product of next-token probabilities
    at the masked positions.
    """
    parts = sample.parts
    paths = all_shortest_paths(parts.to_graph(), parts.query).paths
    variants = []
    for p in paths:
        ids = encode(replace(parts, path=p))
        variants.append((ids, loss_mask(ids)))
    ids, mask = pad_batch(variants)
    with torch.no_grad():
        logits = model(ids).logits
    probs = torch.softmax(logits[:, :-1] / temperature, dim=-1)
    targets = ids[:, 1:]
    keep = mask[:, 1:]
    picked = probs.gather(2, targets.unsqueeze(2)).squeeze(2)
    picked = torch.where(keep, picked, torch.ones_like(picked))
    return [float(x) for x in picked.prod(dim=1)]


def shortest_path_probability(
    model: PathTransformer,
    sample: TokenSample,
    temperature: float = DEFAULT_TEMPERATURE,
) -> float:
    """Total mass the model puts on the set of shortest paths; in [0, 1]."""
    return sum(path_probabilities(model, sample, temperature))


def path_distribution(
    model: PathTransformer,
    samples: list[TokenSample],
    temperature: float = DEFAULT_TEMPERATURE,
    max_paths: int = 7,
) -> dict[int, list[tuple[float, float]]]:
    """Ranked per-path probabilities, grouped by shortest-path count j.

    Returns, for each j in 2..max_paths seen in the data, a list of
    (mean, std) per descending rank; means are non-increasing in rank.
    """
    by_j: dict[int, list[list[float]]] = {}
    for s in samples:
        ranked = sorted(path_probabilities(model, s, temperature), reverse=True)
        j = len(ranked)
        if 2 <= j <= max_paths:
            by_j.setdefault(j, []).append(ranked)
    out: dict[int, list[tuple[float, float]]] = {}
    for j, rows in sorted(by_j.items()):
        arr = np.array(rows)
        out[j] = [
            (float(arr[:, r].mean()), float(arr[:, r].std())) for r in range(j)
        ]
    return out


@dataclass(frozen=True)
class HeadStats:
    layer: int
    head: int
    current: float  # mean normalized weight on <e> of edges touching the current node
    target: float
    other: float
    label: str  # "current" / "target" / "other"
    current_ratio: float
    target_ratio: float


@dataclass(frozen=True)
class AttentionProfile:
    heads: tuple[HeadStats, ...]
    n_samples: int

    def classified(self, label: str) -> list[HeadStats]:
        return [h for h in self.heads if h.label == label]


def attention_profile(
    model: PathTransformer,
    samples: list[TokenSample],
    seed: int = 0,
    min_path_len: int = 4,
) -> AttentionProfile:
    """Per-head mean normalized attention to <e> tokens at the first step.

    Only samples with shortest-path length >= min_path_len count, so no
    edge can touch both the current and the target node. Weights over
    the <e> positions are divided by their per-sample maximum.
    """
    rng = random.Random(seed)
    layers = model.cfg.layers
    heads = model.cfg.heads
    sums = np.zeros((layers, heads, 3))
    n_used = 0
    for s in samples:
        if len(s.parts.path) < min_path_len:
            continue
        parts = _remapped(s.parts, rng)
        ids = encode(parts)
        query_pos = loss_mask(ids).index(True) - 1  # the source echo
        e_positions = [i for i, t in enumerate(ids) if t == EDGE]
        categories = []
        for u, v in parts.edge_list:
            if parts.query.source in (u, v):
                categories.append(0)
            elif parts.query.target in (u, v):
                categories.append(1)
            else:
                categories.append(2)
        cats = np.array(categories)
        with torch.no_grad():
            out = model(torch.tensor([ids], dtype=torch.long), need_attention=True)
        for layer, att in enumerate(out.attentions):
            row = att[0, :, query_pos, :].numpy()[:, e_positions]  # (H, |E|)
            row = row / row.max(axis=1, keepdims=True)
            for c in range(3):
                if np.any(cats == c):
                    sums[layer, :, c] += row[:, cats == c].mean(axis=1)
        n_used += 1
    if n_used == 0:
        raise ValueError(f"no samples with path length >= {min_path_len}")
    means = sums / n_used
    labels = ("current", "target", "other")
    stats = []
    for layer in range(layers):
        for head in range(heads):
            cur, tgt, oth = means[layer, head]
            label = labels[int(np.argmax(means[layer, head]))]
            stats.append(
                HeadStats(
                    layer=layer,
                    head=head,
                    current=float(cur),
                    target=float(tgt),
                    other=float(oth),
                    label=label,
                    current_ratio=float(cur / oth) if oth > 0 else float("inf"),
                    target_ratio=float(tgt / oth) if oth > 0 else float("inf"),
                )
            )
    return AttentionProfile(heads=tuple(stats), n_samples=n_used)


def write_profile_table(path: Path | str, profile: AttentionProfile) -> None:
    lines = [
        f"# {TABLE_SCHEMA}",
        "layer,head,current,target,other,label,current_ratio,target_ratio",
    ]
    for h in profile.heads:
        lines.append(
            f"{h.layer},{h.head},{h.current:.4f},{h.target:.4f},{h.other:.4f},"
            f"{h.label},{h.current_ratio:.4f},{h.target_ratio:.4f}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
