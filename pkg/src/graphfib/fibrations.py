"""Graph fibrations presented by generator diagrams.

A fibration assigns to certain graphs ("fibres") a normal closure of words
over the involutive free product on the fibre's vertex set.  The fibres are
the glued-union closure of the generator graphs (together with the empty and
the one-vertex graph); in *easy* mode the closure also absorbs quotients and
generator copies may be non-injective.

Every query about a fibre reduces to normal-closure membership over words:
a generator diagram ``(H, a, b)`` contributes the word ``reverse(a) + b``
pushed through each copy of ``H`` inside the fibre.
"""

from __future__ import annotations

import json
from collections import deque

from .diagrams import BilabelledGraph, diagram_from_json, diagram_to_json
from .errors import CapacityError, IndeterminateError
from .freeprod import (
    DEFAULT_BFS_DEPTH,
    DEFAULT_BFS_MAX_LEN,
    DEFAULT_COSET_CAP,
    Membership,
    NormalClosureSpec,
    apply_letter_map,
    member,
    reduce_word,
)
from .graphs import (
    Graph,
    canonical_graph,
    canonical_key,
    edgeless,
    enumerate_homomorphisms,
    enumerate_overlaps,
    f_union,
    quotient,
)
from .partitions import enumerate_partitions


class GraphFibration:
    __slots__ = (
        "generators",
        "easy",
        "max_vertices",
        "membership_strategy",
        "bfs_depth",
        "bfs_max_len",
        "coset_cap",
        "_closure",
        "_fiber_words",
    )

    def __init__(
        self,
        generators,
        easy=False,
        max_vertices=5,
        membership_strategy="auto",
        bfs_depth=DEFAULT_BFS_DEPTH,
        bfs_max_len=DEFAULT_BFS_MAX_LEN,
        coset_cap=DEFAULT_COSET_CAP,
    ):
        generators = tuple(generators)
        for d in generators:
            if not isinstance(d, BilabelledGraph):
                raise ValueError("fibration generators must be bilabelled graphs")
        if max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        self.generators = generators
        self.easy = bool(easy)
        self.max_vertices = max_vertices
        self.membership_strategy = membership_strategy
        self.bfs_depth = bfs_depth
        self.bfs_max_len = bfs_max_len
        self.coset_cap = coset_cap
        self._closure = None
        self._fiber_words = {}

    def __repr__(self):
        kind = "easy" if self.easy else "skew"
        return (
            f"GraphFibration({len(self.generators)} generators, {kind}, "
            f"max_vertices={self.max_vertices})"
        )


def boundary_word(d):
    """The word ``reverse(inputs) + outputs`` of a diagram, reduced."""
    return reduce_word(tuple(reversed(d.inputs)) + tuple(d.outputs))


# ---------------------------------------------------------------------------
# the closure of fibres


def _closure_units(fib):
    """Graphs whose glued unions generate the closure, deduped up to iso.

    The one-vertex graph is always a unit: gluing it in grows the vertex set,
    which is how the edgeless members appear.  In easy mode every quotient of
    a generator graph joins the unit list: a non-injective copy of a
    generator factors as a quotient followed by an embedding, so unions with
    quotients reach everything quotients would.
    """
    units = {}

    def add(g):
        if 1 <= g.n <= fib.max_vertices:
            rep, _ = canonical_graph(g)
            units.setdefault(canonical_key(rep), rep)

    add(edgeless(1))
    for d in fib.generators:
        add(d.graph)
        if fib.easy:
            for blocks in enumerate_partitions(d.graph.n):
                add(quotient(d.graph, blocks)[0])
    return [units[key] for key in sorted(units)]


def closure_graphs(fib):
    """All fibres up to isomorphism, canonical representatives.

    Sorted by vertex count, then by canonical adjacency mask.  The closure is
    computed by a worklist over glued unions of members with generator units;
    intermediate results never need more vertices than the final graph, so
    the ``max_vertices`` bound loses nothing below itself.
    """
    if fib._closure is not None:
        return list(fib._closure)
    units = _closure_units(fib)
    members = {}
    queue = deque()

    def add(g):
        rep, _ = canonical_graph(g)
        key = canonical_key(rep)
        if key not in members:
            members[key] = rep
            queue.append(rep)

    add(edgeless(0))
    add(edgeless(1))
    for u in units:
        add(u)
    while queue:
        x = queue.popleft()
        for h in units:
            if max(x.n, h.n) > fib.max_vertices:
                continue
            low = x.n + h.n - fib.max_vertices
            for f in enumerate_overlaps(x.n, h.n):
                if len(f) < low:
                    continue
                union, _, _ = f_union(x, h, f)
                add(union)
    result = [members[key] for key in sorted(members)]
    fib._closure = result
    return list(result)


def _closure_keys(fib):
    return {canonical_key(g) for g in closure_graphs(fib)}


def is_fiber(fib, g):
    if g.n > fib.max_vertices:
        raise CapacityError(
            f"fibration closure computed up to {fib.max_vertices} vertices, graph has {g.n}"
        )
    return canonical_key(g) in _closure_keys(fib)


# ---------------------------------------------------------------------------
# fibre generator words


def fiber_generators(fib, g):
    """Generator words of the fibre over ``g``, on ``g``'s own vertex names.

    Each copy of a generator diagram inside ``g`` (embeddings for skew
    fibrations, arbitrary homomorphisms for easy ones) contributes its
    boundary word.  Words already implied by earlier ones are dropped when an
    exact membership answer says so; an unknown keeps the word.
    """
    cache_key = (g.n, g.edges)
    if cache_key in fib._fiber_words:
        return fib._fiber_words[cache_key]
    if not is_fiber(fib, g):
        raise ValueError("graph is not a fibre of this fibration")
    words = []
    for d in fib.generators:
        for phi in enumerate_homomorphisms(d.graph, g, injective=not fib.easy):
            w = reduce_word(
                tuple(phi[v] for v in reversed(d.inputs)) + tuple(phi[v] for v in d.outputs)
            )
            if w and w not in words:
                words.append(w)
    kept = []
    for w in words:
        if kept:
            prev = NormalClosureSpec(
                g.n,
                kept,
                strategy="auto",
                bfs_depth=fib.bfs_depth,
                bfs_max_len=fib.bfs_max_len,
                coset_cap=fib.coset_cap,
            )
            if member(w, prev) is Membership.YES:
                continue
        kept.append(w)
    result = tuple(kept)
    fib._fiber_words[cache_key] = result
    return result


def fiber_closure_spec(fib, g):
    return NormalClosureSpec(
        g.n,
        fiber_generators(fib, g),
        strategy=fib.membership_strategy,
        bfs_depth=fib.bfs_depth,
        bfs_max_len=fib.bfs_max_len,
        coset_cap=fib.coset_cap,
    )


def fiber_member(fib, g, word):
    """Tri-state membership of a word in the fibre over ``g``."""
    return member(word, fiber_closure_spec(fib, g))


def diagram_member(fib, d):
    """Does a diagram belong to the category the fibration represents?

    Yes iff the underlying graph is a fibre and the diagram's boundary word
    lies in that fibre.
    """
    if d.graph.n > fib.max_vertices:
        raise CapacityError(
            f"fibration closure computed up to {fib.max_vertices} vertices, diagram has {d.graph.n}"
        )
    if not is_fiber(fib, d.graph):
        return Membership.NO
    return fiber_member(fib, d.graph, boundary_word(d))


# ---------------------------------------------------------------------------
# greatest fibre inside a graph


def greatest_subgraph(fib, g):
    """The largest spanning subgraph of ``g`` that is a fibre.

    Every fibre's edges are covered by generator copies, so the union of all
    generator images inside ``g`` is itself a fibre and contains every
    spanning fibre subgraph.
    """
    if g.n > fib.max_vertices:
        raise CapacityError(
            f"fibration closure computed up to {fib.max_vertices} vertices, graph has {g.n}"
        )
    edges = set()
    for d in fib.generators:
        for phi in enumerate_homomorphisms(d.graph, g, injective=not fib.easy):
            for u, v in d.graph.edges:
                a, b = phi[u], phi[v]
                edges.add((a, b) if a <= b else (b, a))
    k = Graph(g.n, edges)
    assert is_fiber(fib, k), "union of generator images must be a fibre"
    return k


# ---------------------------------------------------------------------------
# fibrations from a single group of words


def fibration_from_group(g, closure, easy=False, max_vertices=5):
    """The fibration generated by the output-only diagrams ``(g, (), w)``.

    ``closure`` is a normal-closure description over ``g``'s vertices.  For an
    easy fibration the closure must be preserved by every endomorphism of
    ``g``; this is checked, and an unknown membership during the check is an
    error.  Construction re-checks that every closure generator is recovered
    in the fibre over ``g`` itself.
    """
    if closure.alphabet_size != g.n:
        raise ValueError("closure alphabet must match the vertex count")
    if easy:
        for phi in enumerate_homomorphisms(g, g):
            for w in closure.generators:
                got = member(apply_letter_map(phi, w), closure)
                if got is Membership.NO:
                    raise ValueError(
                        f"closure is not endomorphism-invariant: image of {w} under {phi} escapes"
                    )
                if got is Membership.UNKNOWN:
                    raise IndeterminateError(
                        f"cannot certify endomorphism-invariance for {w} under {phi}"
                    )
    gens = tuple(BilabelledGraph(g, (), w) for w in closure.generators)
    fib = GraphFibration(
        gens,
        easy=easy,
        max_vertices=max(max_vertices, g.n),
        membership_strategy=closure.strategy,
        bfs_depth=closure.bfs_depth,
        bfs_max_len=closure.bfs_max_len,
        coset_cap=closure.coset_cap,
    )
    for w in closure.generators:
        if fiber_member(fib, g, w) is not Membership.YES:
            raise ValueError(f"generator word {w} is not recovered in its own fibre")
    return fib


# ---------------------------------------------------------------------------
# serialization


def fibration_to_json(fib):
    strategy = fib.membership_strategy
    if strategy == "bounded-bfs":
        strategy = {"bounded-bfs": {"depth": fib.bfs_depth, "max_len": fib.bfs_max_len}}
    return {
        "generators": [diagram_to_json(d) for d in fib.generators],
        "easy": fib.easy,
        "max_vertices": fib.max_vertices,
        "strategy": strategy,
    }


def fibration_from_json(obj, default_max_vertices=5):
    if not isinstance(obj, dict):
        raise ValueError("fibration JSON must be an object")
    try:
        gens = [diagram_from_json(d) for d in obj["generators"]]
    except KeyError as exc:
        raise ValueError(f"fibration JSON missing key {exc}")
    strategy = obj.get("strategy", "auto")
    kwargs = {}
    if isinstance(strategy, dict):
        if list(strategy) != ["bounded-bfs"]:
            raise ValueError(f"invalid strategy object {strategy!r}")
        params = strategy["bounded-bfs"]
        kwargs["bfs_depth"] = params.get("depth", DEFAULT_BFS_DEPTH)
        kwargs["bfs_max_len"] = params.get("max_len", DEFAULT_BFS_MAX_LEN)
        strategy = "bounded-bfs"
    return GraphFibration(
        gens,
        easy=obj.get("easy", False),
        max_vertices=obj.get("max_vertices", default_max_vertices),
        membership_strategy=strategy,
        **kwargs,
    )


def load_fibration(path, default_max_vertices=5):
    with open(path, "r", encoding="utf-8") as fh:
        return fibration_from_json(json.load(fh), default_max_vertices)
