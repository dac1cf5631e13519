"""Finite graphs with loops: quotients, glued unions, homomorphism enumeration,
and exact canonical forms.

Vertices of an ``n``-vertex graph are always ``0..n-1``.  Edges are unordered
pairs stored as ``(u, v)`` tuples with ``u <= v``; a pair ``(v, v)`` is a loop.
There are no edge multiplicities: merging parallel edges is implicit in the
set representation.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations, permutations

from .errors import CapacityError

# Canonical forms are computed by minimising over all vertex permutations,
# so they are only offered up to this many vertices.
CANONICAL_VERTEX_BOUND = 8


class Graph:
    """An undirected graph on vertices ``0..n-1``, loops allowed."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        norm = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e!r} out of range for {n} vertices")
            norm.add((u, v) if u <= v else (v, u))
        self.n = n
        self.edges = frozenset(norm)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph({self.n}, {sorted(self.edges)})"

    def has_edge(self, u, v):
        return ((u, v) if u <= v else (v, u)) in self.edges

    def has_loop(self, v):
        return (v, v) in self.edges


# ---------------------------------------------------------------------------
# constructors


def edgeless(n):
    return Graph(n, ())


def complete(n):
    return Graph(n, combinations(range(n), 2))


def path(n):
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n):
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def add_loops_everywhere(g):
    return Graph(g.n, set(g.edges) | {(v, v) for v in range(g.n)})


def disjoint_union(k, h):
    shifted = ((u + k.n, v + k.n) for (u, v) in h.edges)
    return Graph(k.n + h.n, set(k.edges) | set(shifted))


# ---------------------------------------------------------------------------
# partitions of the vertex set, quotients, glued unions


def normalize_partition(n, blocks):
    """Validate a partition of ``0..n-1`` and order its blocks by minimum.

    Returns a tuple of sorted tuples.  Empty blocks are rejected here; the
    vertex set of a graph quotient never needs them.
    """
    seen = [False] * n
    out = []
    for block in blocks:
        b = sorted(block)
        if not b:
            raise ValueError("empty block in vertex partition")
        for v in b:
            if not (0 <= v < n) or seen[v]:
                raise ValueError("blocks must partition the vertex set")
            seen[v] = True
        out.append(tuple(b))
    if not all(seen):
        raise ValueError("blocks must cover every vertex")
    out.sort(key=lambda b: b[0])
    return tuple(out)


def generated_partition(n, pairs):
    """Finest partition of ``0..n-1`` in which each given pair is merged."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return tuple(tuple(g) for g in sorted(groups.values(), key=lambda g: g[0]))


def join_partitions(n, pa, pb):
    """Coarsest-common refinement join of two partitions."""
    pairs = []
    for blocks in (pa, pb):
        for b in blocks:
            members = sorted(b)
            pairs.extend(zip(members, members[1:]))
    return generated_partition(n, pairs)


def quotient(g, blocks):
    """Merge the vertices inside each block.

    Returns ``(graph, vmap)`` where ``vmap[v]`` is the new index of old
    vertex ``v``.  Blocks are numbered by their minimal element.  An edge
    joining two vertices of one block becomes a loop; parallel images
    collapse.
    """
    blocks = normalize_partition(g.n, blocks)
    vmap = [0] * g.n
    for i, b in enumerate(blocks):
        for v in b:
            vmap[v] = i
    edges = set()
    for u, v in g.edges:
        a, b = vmap[u], vmap[v]
        edges.add((a, b) if a <= b else (b, a))
    return Graph(len(blocks), edges), tuple(vmap)


def f_union(k, h, f):
    """Glue two graphs along a partial injective vertex correspondence.

    ``f`` is an iterable of pairs ``(u, v)`` meaning vertex ``u`` of ``k`` is
    identified with vertex ``v`` of ``h``; it must be injective in both
    coordinates.  Returns ``(graph, map_k, map_h)`` with the inclusion maps of
    the two sides.  The result has ``k.n + h.n - len(f)`` vertices and never
    gains a loop that neither side had.
    """
    f = tuple(f)
    ks = [u for u, _ in f]
    hs = [v for _, v in f]
    if len(set(ks)) != len(f) or len(set(hs)) != len(f):
        raise ValueError("overlap must be injective in both coordinates")
    for u, v in f:
        if not (0 <= u < k.n and 0 <= v < h.n):
            raise ValueError("overlap pair out of range")
    merged = generated_partition(k.n + h.n, [(u, k.n + v) for u, v in f])
    union, vmap = quotient(disjoint_union(k, h), merged)
    return union, tuple(vmap[: k.n]), tuple(vmap[k.n :])


def enumerate_overlaps(nk, nh):
    """All partial injective correspondences between ``0..nk-1`` and ``0..nh-1``.

    Deterministic order: by size, then by the sorted left support, then by the
    right images.  The empty overlap comes first.
    """
    out = []
    for size in range(min(nk, nh) + 1):
        for left in combinations(range(nk), size):
            for right in permutations(range(nh), size):
                out.append(tuple(zip(left, right)))
    return out


# ---------------------------------------------------------------------------
# homomorphisms


def enumerate_homomorphisms(k, g, pins=None, injective=False):
    """All graph homomorphisms from ``k`` to ``g`` as image tuples.

    A map takes edges to edges literally: a non-loop edge may land on a single
    vertex only if that vertex carries a loop.  ``pins`` is an optional dict
    fixing the image of selected vertices.  Results are sorted
    lexicographically on the image tuple ``(phi(0), ..., phi(n-1))``.
    """
    if pins:
        for v, img in pins.items():
            if not (0 <= v < k.n):
                raise ValueError(f"pinned vertex {v} out of range")
            if not (0 <= img < g.n):
                raise ValueError(f"pinned image {img} out of range")
    loops = [False] * k.n
    earlier = [[] for _ in range(k.n)]
    for u, v in k.edges:
        if u == v:
            loops[u] = True
        else:
            earlier[v].append(u)
    gedges = g.edges
    pins = pins or {}
    out = []
    image = [0] * k.n
    used = [False] * g.n

    def extend(v):
        if v == k.n:
            out.append(tuple(image))
            return
        candidates = (pins[v],) if v in pins else range(g.n)
        for c in candidates:
            if injective and used[c]:
                continue
            if loops[v] and (c, c) not in gedges:
                continue
            ok = True
            for u in earlier[v]:
                iu = image[u]
                if ((iu, c) if iu <= c else (c, iu)) not in gedges:
                    ok = False
                    break
            if not ok:
                continue
            image[v] = c
            if injective:
                used[c] = True
            extend(v + 1)
            if injective:
                used[c] = False

    extend(0)
    return out


def automorphisms(g):
    """All automorphisms of ``g``.

    An injective endomorphism of a finite graph is bijective and its inverse
    again preserves edges (the edge count is finite), so injective
    homomorphisms ``g -> g`` are exactly the automorphisms.
    """
    return enumerate_homomorphisms(g, g, injective=True)


# ---------------------------------------------------------------------------
# canonical forms


def _cell_count(n):
    return n * (n + 1) // 2


def _cell_index(n, u, v):
    # cells (u, v) with u <= v, row-major including the diagonal
    return u * n - u * (u + 1) // 2 + v


@lru_cache(maxsize=None)
def _cells(n):
    return tuple((u, v) for u in range(n) for v in range(u, n))


@lru_cache(maxsize=None)
def _perm_cell_tables(n):
    """For each permutation of ``0..n-1``: where each adjacency cell moves."""
    tables = []
    for sigma in permutations(range(n)):
        tab = []
        for u, v in _cells(n):
            a, b = sigma[u], sigma[v]
            if a > b:
                a, b = b, a
            tab.append(_cell_index(n, a, b))
        tables.append((sigma, tuple(tab)))
    return tuple(tables)


def mask_of(g):
    m = 0
    for u, v in g.edges:
        m |= 1 << _cell_index(g.n, u, v)
    return m


def graph_from_mask(n, mask):
    edges = [cell for i, cell in enumerate(_cells(n)) if (mask >> i) & 1]
    return Graph(n, edges)


def canonical_form(g):
    """Minimal adjacency bitmask over all vertex relabelings.

    Returns ``((n, mask), perm)`` where ``perm`` is the lexicographically
    least permutation achieving the minimum (``perm[v]`` is the new name of
    vertex ``v``).  Graphs above ``CANONICAL_VERTEX_BOUND`` vertices are
    refused.
    """
    if g.n > CANONICAL_VERTEX_BOUND:
        raise CapacityError(
            f"canonical form supported up to {CANONICAL_VERTEX_BOUND} vertices, got {g.n}"
        )
    bits = [_cell_index(g.n, u, v) for u, v in g.edges]
    best = None
    best_perm = None
    for sigma, tab in _perm_cell_tables(g.n):
        m = 0
        for c in bits:
            m |= 1 << tab[c]
        if best is None or m < best:
            best = m
            best_perm = sigma
    if best is None:  # n == 0
        return (0, 0), ()
    return (g.n, best), best_perm


def canonical_key(g):
    return canonical_form(g)[0]


def canonical_graph(g):
    """The canonical representative of the isomorphism class of ``g``."""
    (n, mask), perm = canonical_form(g)
    return graph_from_mask(n, mask), perm


def enumerate_graphs(n, loops=False):
    """All isomorphism-class representatives on ``n`` vertices, in canonical order.

    With ``loops=False`` only loopless graphs are produced.  Each returned
    graph equals its own canonical representative.
    """
    if n > CANONICAL_VERTEX_BOUND:
        raise CapacityError(
            f"graph enumeration supported up to {CANONICAL_VERTEX_BOUND} vertices, got {n}"
        )
    if n == 0:
        return [Graph(0)]
    tables = _perm_cell_tables(n)
    if loops:
        allowed = list(range(_cell_count(n)))
    else:
        allowed = [i for i, (u, v) in enumerate(_cells(n)) if u != v]
    masks = []
    for sub in range(1 << len(allowed)):
        bits = [allowed[i] for i in range(len(allowed)) if (sub >> i) & 1]
        mask = 0
        for c in bits:
            mask |= 1 << c
        minimal = True
        for _, tab in tables[1:]:
            m = 0
            for c in bits:
                m |= 1 << tab[c]
            if m < mask:
                minimal = False
                break
        if minimal:
            masks.append(mask)
    masks.sort()
    return [graph_from_mask(n, mask) for mask in masks]


# ---------------------------------------------------------------------------
# serialization


def graph_to_json(g):
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}


def parse_graph6(text):
    """Decode a (short-format) graph6 string into a loopless graph."""
    data = [ord(ch) - 63 for ch in text]
    if not data or any(x < 0 or x > 63 for x in data):
        raise ValueError("invalid graph6 characters")
    if data[0] == 63:
        raise ValueError("extended graph6 sizes are not supported")
    n = data[0]
    bits = []
    for x in data[1:]:
        bits.extend((x >> sh) & 1 for sh in (5, 4, 3, 2, 1, 0))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise ValueError("graph6 string too short")
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    return Graph(n, edges)


def graph_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError("graph JSON must be an object")
    if "graph6" in obj:
        base = parse_graph6(obj["graph6"])
        loops = obj.get("loops", [])
        edges = set(base.edges)
        for v in loops:
            if not (0 <= v < base.n):
                raise ValueError(f"loop vertex {v} out of range")
            edges.add((v, v))
        return Graph(base.n, edges)
    try:
        n = obj["n"]
        edges = obj["edges"]
    except KeyError as exc:
        raise ValueError(f"graph JSON missing key {exc}")
    if not isinstance(n, int):
        raise ValueError("graph JSON field 'n' must be an integer")
    return Graph(n, [tuple(e) for e in edges])


def load_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))
