"""The fixed 16-token vocabulary and sequence encode/decode/mask.

Sequence grammar:
    <bos> (u v <e>)+ <n> node+ <q> src tgt <p> path+ <eos>

Node tokens 0-9 have ids equal to their labels; control ids follow.
The loss mask is true on the predicted path tokens (the second path node
onward) and on <eos>; the source echo right after <p> is prompt, not
prediction.
"""

from __future__ import annotations

from .errors import MalformedSequenceError, NodeLabelOutOfVocabError
from .graph import Query
from .remap import SampleParts

MAX_NODE_LABEL = 9

BOS = 10
EOS = 11
EDGE = 12  # <e>
NODES = 13  # <n>
QUERY = 14  # <q>
PATH = 15  # <p>

VOCAB_SIZE = 16

TOKEN_STRINGS = tuple(str(i) for i in range(10)) + (
    "<bos>",
    "<eos>",
    "<e>",
    "<n>",
    "<q>",
    "<p>",
)
STRING_TO_ID = {s: i for i, s in enumerate(TOKEN_STRINGS)}


def _node(token: int) -> int:
    if not 0 <= token <= MAX_NODE_LABEL:
        raise NodeLabelOutOfVocabError(f"node label {token} outside 0-9")
    return token


def encode(parts: SampleParts) -> list[int]:
    """Serialize sample parts into token ids."""
    if len(parts.path) < 2:
        raise MalformedSequenceError("path must have >= 2 nodes")
    ids = [BOS]
    for u, v in parts.edge_list:
        ids += [_node(u), _node(v), EDGE]
    ids.append(NODES)
    ids += [_node(v) for v in parts.node_list]
    ids += [QUERY, _node(parts.query.source), _node(parts.query.target), PATH]
    ids += [_node(v) for v in parts.path]
    ids.append(EOS)
    return ids


def decode(ids: list[int]) -> SampleParts:
    """Inverse of encode; raises MalformedSequenceError on bad grammar."""
    pos = 0

    def take() -> int:
        nonlocal pos
        if pos >= len(ids):
            raise MalformedSequenceError("truncated sequence")
        tok = ids[pos]
        pos += 1
        return tok

    def is_node(tok: int) -> bool:
        return 0 <= tok <= MAX_NODE_LABEL

    if take() != BOS:
        raise MalformedSequenceError("missing <bos>")
    edges: list[tuple[int, int]] = []
    tok = take()
    while tok != NODES:
        u = tok
        v = take()
        if not (is_node(u) and is_node(v)):
            raise MalformedSequenceError("edge endpoints must be node tokens")
        if take() != EDGE:
            raise MalformedSequenceError("dangling node pair, expected <e>")
        edges.append((u, v))
        tok = take()
    if not edges:
        raise MalformedSequenceError("empty edge list")
    node_list: list[int] = []
    tok = take()
    while tok != QUERY:
        if not is_node(tok):
            raise MalformedSequenceError("expected node token in node list")
        node_list.append(tok)
        tok = take()
    if not node_list:
        raise MalformedSequenceError("empty node list")
    src, tgt = take(), take()
    if not (is_node(src) and is_node(tgt)):
        raise MalformedSequenceError("query endpoints must be node tokens")
    if take() != PATH:
        raise MalformedSequenceError("missing <p>")
    path: list[int] = []
    tok = take()
    while tok != EOS:
        if not is_node(tok):
            raise MalformedSequenceError("expected node token in path")
        path.append(tok)
        tok = take()
    if len(path) < 2:
        raise MalformedSequenceError("path must have >= 2 nodes")
    if pos != len(ids):
        raise MalformedSequenceError("trailing tokens after <eos>")
    n = len(node_list)
    if sorted(node_list) != list(range(n)):
        raise MalformedSequenceError("node list is not a permutation of 0..n-1")
    return SampleParts(
        n_nodes=n,
        edge_list=tuple(edges),
        node_list=tuple(node_list),
        query=Query(src, tgt),
        path=tuple(path),
    )


def loss_mask(ids: list[int]) -> list[bool]:
    """True on predicted path tokens (second path node onward) and <eos>."""
    decode(ids)  # grammar check
    p_idx = ids.index(PATH)
    mask = [False] * len(ids)
    # ids[p_idx + 1] is the source echo: prompt, not predicted.
    for i in range(p_idx + 2, len(ids)):
        mask[i] = True
    return mask


def to_strings(ids: list[int]) -> str:
    return " ".join(TOKEN_STRINGS[i] for i in ids)


def from_strings(line: str) -> list[int]:
    try:
        return [STRING_TO_ID[tok] for tok in line.split()]
    except KeyError as exc:
        raise MalformedSequenceError(f"unknown token {exc.args[0]!r}") from None
