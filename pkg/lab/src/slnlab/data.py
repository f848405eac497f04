"""Dataset loading and per-epoch remap augmentation.

Files are the token-string datasets written by `slnav gen`; each epoch
re-randomizes every sample's presentation with a fresh seeded remap, so
the model never sees a fixed labeling of a graph.
"""

from __future__ import annotations

import random
from pathlib import Path

import torch

from slnav import TokenSample, apply_remap, random_remap, read_dataset
from slnav.tokens import EOS, encode, loss_mask

PAD = EOS  # padding reuses <eos>; loss and analyses only touch masked positions


def load_samples(source: list[TokenSample] | str | Path) -> list[TokenSample]:
    if isinstance(source, (str, Path)):
        return read_dataset(source)
    return list(source)


def encode_epoch(
    samples: list[TokenSample], seed: int
) -> list[tuple[list[int], list[bool]]]:
    """One fresh remap per sample, then token ids and loss mask."""
    rng = random.Random(seed)
    out = []
    for s in samples:
        r = random_remap(s.parts.n_nodes, len(s.parts.edge_list), rng.randrange(1 << 30))
        ids = encode(apply_remap(s.parts, r))
        out.append((ids, loss_mask(ids)))
    return out


def pad_batch(
    encoded: list[tuple[list[int], list[bool]]]
) -> tuple[torch.Tensor, torch.Tensor]:
    width = max(len(ids) for ids, _ in encoded)
    ids = torch.full((len(encoded), width), PAD, dtype=torch.long)
    mask = torch.zeros((len(encoded), width), dtype=torch.bool)
    for i, (seq, m) in enumerate(encoded):
        ids[i, : len(seq)] = torch.tensor(seq, dtype=torch.long)
        mask[i, : len(m)] = torch.tensor(m, dtype=torch.bool)
    return ids, mask


def iter_batches(
    encoded: list[tuple[list[int], list[bool]]],
    batch_size: int,
    rng: random.Random,
):
    """Length-bucketed batches in shuffled order (less padding waste)."""
    order = list(range(len(encoded)))
    rng.shuffle(order)
    order.sort(key=lambda i: len(encoded[i][0]))
    batches = [
        order[start : start + batch_size]
        for start in range(0, len(order), batch_size)
    ]
    rng.shuffle(batches)
    for batch in batches:
        yield pad_batch([encoded[i] for i in batch])


def prompt_ids(sample: TokenSample) -> list[int]:
    """Tokens up to the first predicted position (source echo included)."""
    first = sample.loss_mask.index(True)
    return list(sample.token_ids[:first])
