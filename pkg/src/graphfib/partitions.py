"""Two-row set partitions and their embedding into bilabelled graphs.

A partition lives on ``k`` upper points ``0..k-1`` and ``l`` lower points
``k..k+l-1``.  Blocks carry no identity beyond their members, but a partition
may own *empty* blocks: these matter because the embedding into bilabelled
graphs turns every block into a vertex, and composition can strand a block
with no boundary points left.
"""

from __future__ import annotations

import json

from .diagrams import BilabelledGraph
from .errors import CapacityError
from .graphs import edgeless

PARTITION_POINT_BOUND = 10

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


class SetPartition:
    """A partition of ``k + l`` points, stored with canonical block ids.

    Occupied blocks are numbered by first occurrence along the point order;
    empty blocks (if any) take the remaining ids.  Two partitions are equal
    iff they group the points identically and own the same number of empty
    blocks.
    """

    __slots__ = ("k", "l", "block_of", "num_blocks")

    def __init__(self, k, l, block_of, num_blocks=None):
        block_of = tuple(block_of)
        if len(block_of) != k + l:
            raise ValueError(f"expected {k + l} point assignments, got {len(block_of)}")
        relabel = {}
        for b in block_of:
            if b not in relabel:
                relabel[b] = len(relabel)
        used = len(relabel)
        if num_blocks is None:
            num_blocks = used
        if num_blocks < used:
            raise ValueError("num_blocks smaller than the number of occupied blocks")
        self.k = k
        self.l = l
        self.block_of = tuple(relabel[b] for b in block_of)
        self.num_blocks = num_blocks

    @property
    def num_empty_blocks(self):
        return self.num_blocks - (max(self.block_of) + 1 if self.block_of else 0)

    def blocks(self):
        """Blocks as tuples of point indices; empty blocks trail."""
        out = [[] for _ in range(self.num_blocks)]
        for point, b in enumerate(self.block_of):
            out[b].append(point)
        return tuple(tuple(b) for b in out)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.k == other.k
            and self.l == other.l
            and self.block_of == other.block_of
            and self.num_blocks == other.num_blocks
        )

    def __hash__(self):
        return hash((self.k, self.l, self.block_of, self.num_blocks))

    def __repr__(self):
        return f"SetPartition({self.k}, {self.l}, {self.block_of}, num_blocks={self.num_blocks})"


def from_blocks(k, l, blocks):
    """Build a partition from explicit blocks; empty lists make empty blocks."""
    block_of = {}
    empty = 0
    for i, block in enumerate(blocks):
        if not block:
            empty += 1
            continue
        for p in block:
            if not (0 <= p < k + l):
                raise ValueError(f"point {p} out of range")
            if p in block_of:
                raise ValueError(f"point {p} in two blocks")
            block_of[p] = i
    if len(block_of) != k + l:
        raise ValueError("blocks must cover every point")
    occupied = len({b for b in block_of.values()})
    return SetPartition(k, l, [block_of[p] for p in range(k + l)], occupied + empty)


def ker(a, b):
    """Coincidence pattern of two label tuples as a partition on len(a)+len(b) points."""
    seen = {}
    block_of = [seen.setdefault(v, len(seen)) for v in tuple(a) + tuple(b)]
    return SetPartition(len(a), len(b), block_of)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_rgs(m):
    """Restricted growth strings of length ``m`` in lexicographic order."""
    if m > PARTITION_POINT_BOUND:
        raise CapacityError(f"partition enumeration capped at {PARTITION_POINT_BOUND} points, got {m}")
    if m == 0:
        return [()]
    out = []
    rgs = [0] * m

    def rec(i, mx):
        if i == m:
            out.append(tuple(rgs))
            return
        for v in range(mx + 2):
            rgs[i] = v
            rec(i + 1, max(mx, v))

    rec(1, 0)
    return out


def enumerate_partitions(m):
    """All partitions of ``m`` points as block tuples, RGS-lex ordered."""
    result = []
    for rgs in enumerate_rgs(m):
        nb = max(rgs) + 1 if rgs else 0
        blocks = [[] for _ in range(nb)]
        for p, b in enumerate(rgs):
            blocks[b].append(p)
        result.append(tuple(tuple(b) for b in blocks))
    return result


def enumerate_set_partitions(k, l):
    """All partitions of ``k`` upper + ``l`` lower points (no empty blocks)."""
    return [SetPartition(k, l, rgs) for rgs in enumerate_rgs(k + l)]


# ---------------------------------------------------------------------------
# category operations mirroring the bilabelled ones


def partition_tensor(p, q):
    """Place ``q`` to the right of ``p``: uppers concatenate, lowers concatenate."""
    shift = p.num_blocks
    upper = p.block_of[: p.k] + tuple(b + shift for b in q.block_of[: q.k])
    lower = p.block_of[p.k :] + tuple(b + shift for b in q.block_of[q.k :])
    return SetPartition(p.k + q.k, p.l + q.l, upper + lower, p.num_blocks + q.num_blocks)


def partition_compose(p, q):
    """The composite ``p . q`` with ``q`` acting first.

    The lower row of ``q`` is identified with the upper row of ``p``, so
    ``q.l == p.k`` is required.  Joined blocks merge; middle blocks that lose
    all their points survive as empty blocks.
    """
    if q.l != p.k:
        raise ValueError(f"arity mismatch: {q.l} lower points glued to {p.k} upper points")
    total = q.num_blocks + p.num_blocks
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(p.k):
        a = find(q.block_of[q.k + i])
        b = find(q.num_blocks + p.block_of[i])
        if a != b:
            parent[max(a, b)] = min(a, b)
    classes = sorted({find(x) for x in range(total)})
    index = {c: i for i, c in enumerate(classes)}
    upper = tuple(index[find(b)] for b in q.block_of[: q.k])
    lower = tuple(index[find(q.num_blocks + b)] for b in p.block_of[p.k :])
    return SetPartition(q.k, p.l, upper + lower, len(classes))


def partition_involution(p):
    return SetPartition(p.l, p.k, p.block_of[p.k :] + p.block_of[: p.k], p.num_blocks)


def partition_to_bilabelled(p):
    """The edgeless bilabelled graph with one vertex per block.

    Empty blocks become isolated unlabeled vertices; they are kept, never
    pruned, so that this embedding commutes with composition.
    """
    g = edgeless(p.num_blocks)
    return BilabelledGraph(g, p.block_of[: p.k], p.block_of[p.k :])


# ---------------------------------------------------------------------------
# serialization


def partition_to_json(p):
    return {"k": p.k, "l": p.l, "blocks": [list(b) for b in p.blocks()]}


def partition_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError("partition JSON must be an object")
    try:
        return from_blocks(obj["k"], obj["l"], obj["blocks"])
    except KeyError as exc:
        raise ValueError(f"partition JSON missing key {exc}")


def load_partition(path):
    with open(path, "r", encoding="utf-8") as fh:
        return partition_from_json(json.load(fh))
