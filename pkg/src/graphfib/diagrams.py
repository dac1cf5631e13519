"""Bilabelled graphs and their category operations.

A bilabelled graph is a graph together with two tuples of vertex labels: the
``inputs`` (lower row, length ``k``) and ``outputs`` (upper row, length
``l``).  Labels may repeat and need not cover all vertices.  These objects
compose like linear maps: ``compose(d1, d2)`` glues the outputs of ``d2`` to
the inputs of ``d1``.
"""

from __future__ import annotations

import json

from .errors import CapacityError
from .graphs import (
    CANONICAL_VERTEX_BOUND,
    Graph,
    _cell_index,
    _perm_cell_tables,
    disjoint_union,
    edgeless,
    f_union,
    generated_partition,
    graph_from_json,
    graph_to_json,
    quotient,
)


class BilabelledGraph:
    __slots__ = ("graph", "inputs", "outputs")

    def __init__(self, graph, inputs=(), outputs=()):
        inputs = tuple(inputs)
        outputs = tuple(outputs)
        for v in inputs + outputs:
            if not (0 <= v < graph.n):
                raise ValueError(f"label {v} out of range for {graph.n} vertices")
        self.graph = graph
        self.inputs = inputs
        self.outputs = outputs

    @property
    def k(self):
        return len(self.inputs)

    @property
    def l(self):
        return len(self.outputs)

    def __eq__(self, other):
        """Literal equality; use :func:`equal_diagrams` for equality up to iso."""
        return (
            isinstance(other, BilabelledGraph)
            and self.graph == other.graph
            and self.inputs == other.inputs
            and self.outputs == other.outputs
        )

    def __hash__(self):
        return hash((self.graph, self.inputs, self.outputs))

    def __repr__(self):
        return f"BilabelledGraph({self.graph!r}, {self.inputs}, {self.outputs})"


def m_diagram(k, l):
    """The single-vertex edgeless diagram whose labels all repeat that vertex."""
    return BilabelledGraph(edgeless(1), (0,) * k, (0,) * l)


def identity_diagram():
    return m_diagram(1, 1)


# ---------------------------------------------------------------------------
# category operations


def tensor(d1, d2):
    """Side-by-side juxtaposition: disjoint union with concatenated labels."""
    g = disjoint_union(d1.graph, d2.graph)
    shift = d1.graph.n
    return BilabelledGraph(
        g,
        d1.inputs + tuple(v + shift for v in d2.inputs),
        d1.outputs + tuple(v + shift for v in d2.outputs),
    )


def compose(d1, d2):
    """The composite ``d1 . d2``: outputs of ``d2`` glued to inputs of ``d1``.

    Requires ``d2.l == d1.k``.  The glued vertices are merged (which may
    create loops and collapse parallel edges); the result keeps the inputs of
    ``d2`` and the outputs of ``d1``.
    """
    if d2.l != d1.k:
        raise ValueError(f"arity mismatch: {d2.l} outputs composed into {d1.k} inputs")
    g = disjoint_union(d2.graph, d1.graph)
    shift = d2.graph.n
    pairs = [(d2.outputs[i], shift + d1.inputs[i]) for i in range(d1.k)]
    merged = generated_partition(g.n, pairs)
    qg, vmap = quotient(g, merged)
    return BilabelledGraph(
        qg,
        tuple(vmap[v] for v in d2.inputs),
        tuple(vmap[shift + v] for v in d1.outputs),
    )


def involution(d):
    """Swap the two label rows."""
    return BilabelledGraph(d.graph, d.outputs, d.inputs)


def rotate_left(d):
    """Move the first input to the front of the outputs."""
    if d.k == 0:
        raise ValueError("rotate_left needs at least one input")
    return BilabelledGraph(d.graph, d.inputs[1:], (d.inputs[0],) + d.outputs)


def rotate_right(d):
    """Move the last output to the end of the inputs."""
    if d.l == 0:
        raise ValueError("rotate_right needs at least one output")
    return BilabelledGraph(d.graph, d.inputs + (d.outputs[-1],), d.outputs[:-1])


def bl_f_union(d1, d2, f):
    """Glued union along an overlap ``f`` between the two vertex sets.

    Labels are concatenated: inputs of ``d1`` then of ``d2``, same for
    outputs, all transported along the inclusion maps.
    """
    g, map1, map2 = f_union(d1.graph, d2.graph, f)
    return BilabelledGraph(
        g,
        tuple(map1[v] for v in d1.inputs) + tuple(map2[v] for v in d2.inputs),
        tuple(map1[v] for v in d1.outputs) + tuple(map2[v] for v in d2.outputs),
    )


def required_composition_pairs(d1, d2):
    """The overlap pairs forced by composing ``d1`` after ``d2``.

    Pair ``i`` identifies ``d2.outputs[i]`` with ``d1.inputs[i]``.  The set of
    pairs is a valid partial injection iff the two label tuples have equal
    kernels (same coincidence pattern); otherwise a ValueError is raised.
    """
    if d2.l != d1.k:
        raise ValueError(f"arity mismatch: {d2.l} outputs composed into {d1.k} inputs")
    pat1 = _first_occurrence_pattern(d1.inputs)
    pat2 = _first_occurrence_pattern(d2.outputs)
    if pat1 != pat2:
        raise ValueError("boundary label tuples have different kernels")
    return tuple(sorted(set(zip(d2.outputs, d1.inputs))))


def _first_occurrence_pattern(values):
    seen = {}
    return tuple(seen.setdefault(v, len(seen)) for v in values)


def bl_f_compose(d1, d2, f):
    """Glued composition ``d1 ._f d2`` along an overlap extending the forced pairs."""
    required = required_composition_pairs(d1, d2)
    f = tuple(f)
    if not set(required) <= set(f):
        raise ValueError("overlap must contain every forced boundary pair")
    g, map2, map1 = f_union(d2.graph, d1.graph, f)
    return BilabelledGraph(
        g,
        tuple(map2[v] for v in d2.inputs),
        tuple(map1[v] for v in d1.outputs),
    )


# ---------------------------------------------------------------------------
# equality up to labeled isomorphism


def diagram_key(d):
    """Canonical key of a diagram under label-preserving isomorphism.

    Minimizes ``(adjacency mask, relabeled inputs, relabeled outputs)`` over
    all vertex permutations.
    """
    g = d.graph
    if g.n > CANONICAL_VERTEX_BOUND:
        raise CapacityError(
            f"diagram canonical form supported up to {CANONICAL_VERTEX_BOUND} vertices, got {g.n}"
        )
    bits = [_cell_index(g.n, u, v) for u, v in g.edges]
    best = None
    for sigma, tab in _perm_cell_tables(g.n):
        m = 0
        for c in bits:
            m |= 1 << tab[c]
        cand = (m, tuple(sigma[v] for v in d.inputs), tuple(sigma[v] for v in d.outputs))
        if best is None or cand < best:
            best = cand
    if best is None:  # zero vertices
        best = (0, d.inputs, d.outputs)
    return (g.n,) + best


def equal_diagrams(d1, d2):
    if d1.graph.n != d2.graph.n or d1.k != d2.k or d1.l != d2.l:
        return False
    return diagram_key(d1) == diagram_key(d2)


# ---------------------------------------------------------------------------
# serialization


def diagram_to_json(d):
    return {
        "graph": graph_to_json(d.graph),
        "inputs": list(d.inputs),
        "outputs": list(d.outputs),
    }


def diagram_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError("diagram JSON must be an object")
    try:
        graph = graph_from_json(obj["graph"])
        inputs = obj["inputs"]
        outputs = obj["outputs"]
    except KeyError as exc:
        raise ValueError(f"diagram JSON missing key {exc}")
    return BilabelledGraph(graph, tuple(inputs), tuple(outputs))


def load_diagram(path):
    with open(path, "r", encoding="utf-8") as fh:
        return diagram_from_json(json.load(fh))
