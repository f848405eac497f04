"""Bucketed dataset assembly and file persistence.

One sample per (graph, unordered query pair): one direction (fair coin)
and one uniformly chosen shortest path. Samples are bucketed by
(path length, graph size) and drawn round-robin so counts stay as even
as the data allows. Files hold one sample per line as token strings;
remap augmentation is applied by consumers at load time, never baked in.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .canonical import CanonicalGraph
from .errors import EmptyInputError
from .graph import Graph, Query, all_shortest_paths, bfs_shortest_length
from .remap import SampleParts, make_parts
from .tokens import decode, encode, from_strings, loss_mask, to_strings

GENERATOR_VERSION = "1"
MANIFEST_SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class TokenSample:
    parts: SampleParts
    token_ids: tuple[int, ...]
    loss_mask: tuple[bool, ...]


def build_sample(parts: SampleParts) -> TokenSample:
    ids = encode(parts)
    return TokenSample(parts=parts, token_ids=tuple(ids), loss_mask=tuple(loss_mask(ids)))


def _as_graphs(graphs) -> list[Graph]:
    return [cg.graph if isinstance(cg, CanonicalGraph) else cg for cg in graphs]


def assemble_dataset(
    graphs: list[CanonicalGraph] | list[Graph],
    samples_target: int,
    seed: int,
) -> list[TokenSample]:
    """Deterministic bucketed sample selection; see module docstring."""
    gs = _as_graphs(graphs)
    if not gs:
        raise EmptyInputError("empty graph split")
    rng = random.Random(seed)
    buckets: dict[tuple[int, int], list[SampleParts]] = {}
    for g in gs:
        for a in range(g.n_nodes):
            for b in range(a + 1, g.n_nodes):
                q = Query(a, b) if rng.random() < 0.5 else Query(b, a)
                paths = all_shortest_paths(g, q).paths
                path = paths[rng.randrange(len(paths))]
                assert len(path) == bfs_shortest_length(g, q)
                key = (len(path), g.n_nodes)
                buckets.setdefault(key, []).append(make_parts(g, q, path))
    for key in sorted(buckets):
        rng.shuffle(buckets[key])

    out: list[TokenSample] = []
    order = sorted(buckets)
    cursors = {key: 0 for key in order}
    while len(out) < samples_target:
        progressed = False
        for key in order:
            if len(out) >= samples_target:
                break
            i = cursors[key]
            if i < len(buckets[key]):
                out.append(build_sample(buckets[key][i]))
                cursors[key] = i + 1
                progressed = True
        if not progressed:
            break
    return out


def bucket_table(samples: list[TokenSample]) -> list[dict]:
    counts: dict[tuple[int, int], int] = {}
    for s in samples:
        key = (len(s.parts.path), s.parts.n_nodes)
        counts[key] = counts.get(key, 0) + 1
    return [
        {"path_len": k[0], "n_nodes": k[1], "count": v}
        for k, v in sorted(counts.items())
    ]


def write_dataset(samples: list[TokenSample], path: Path | str) -> None:
    text = "\n".join(to_strings(list(s.token_ids)) for s in samples)
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_dataset(path: Path | str) -> list[TokenSample]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        ids = from_strings(line)
        parts = decode(ids)
        out.append(
            TokenSample(
                parts=parts, token_ids=tuple(ids), loss_mask=tuple(loss_mask(ids))
            )
        )
    return out


def split_hash(graphs: list[CanonicalGraph]) -> str:
    h = hashlib.sha256()
    for cg in sorted(graphs, key=lambda c: c.canonical_key):
        h.update(cg.canonical_key)
    return h.hexdigest()


def write_manifest(
    path: Path | str,
    *,
    seed: int,
    samples: list[TokenSample],
    graphs: list[CanonicalGraph] | None = None,
    extra: dict | None = None,
) -> None:
    manifest = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "generator_version": GENERATOR_VERSION,
        "seed": seed,
        "n_samples": len(samples),
        "split_hash": split_hash(graphs) if graphs else None,
        "buckets": bucket_table(samples),
    }
    if extra:
        manifest.update(extra)
    Path(path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
