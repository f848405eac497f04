import torch

from slnav import canonical_key
from slnav.tokens import EOS, decode

from slnlab.data import PAD, encode_epoch, iter_batches, pad_batch, prompt_ids


def test_epoch_encoding_preserves_isomorphism_class(tiny_samples):
    subset = tiny_samples[:30]
    encoded = encode_epoch(subset, seed=1)
    for s, (ids, mask) in zip(subset, encoded):
        parts = decode(ids)
        assert canonical_key(parts.to_graph()) == canonical_key(s.parts.to_graph())
        assert len(parts.path) == len(s.parts.path)
        assert sum(mask) == sum(s.loss_mask)


def test_epoch_encoding_deterministic_and_seed_sensitive(tiny_samples):
    subset = tiny_samples[:20]
    assert encode_epoch(subset, seed=5) == encode_epoch(subset, seed=5)
    assert encode_epoch(subset, seed=5) != encode_epoch(subset, seed=6)


def test_pad_batch_shapes_and_padding(tiny_samples):
    encoded = encode_epoch(tiny_samples[:8], seed=0)
    ids, mask = pad_batch(encoded)
    width = max(len(e[0]) for e in encoded)
    assert ids.shape == mask.shape == (8, width)
    for i, (seq, m) in enumerate(encoded):
        assert ids[i, : len(seq)].tolist() == seq
        assert torch.all(ids[i, len(seq):] == PAD)
        assert not mask[i, len(seq):].any()
    assert PAD == EOS


def test_iter_batches_covers_all_once(tiny_samples):
    import random

    encoded = encode_epoch(tiny_samples[:50], seed=0)
    seen = 0
    for ids, mask in iter_batches(encoded, 16, random.Random(0)):
        seen += ids.shape[0]
        assert ids.shape[0] <= 16
    assert seen == 50


def test_prompt_ids_ends_before_first_prediction(tiny_samples):
    s = tiny_samples[0]
    prompt = prompt_ids(s)
    first = s.loss_mask.index(True)
    assert prompt == list(s.token_ids[:first])
    # prompt ends with the source echo after <p>
    assert prompt[-1] == s.parts.query.source
