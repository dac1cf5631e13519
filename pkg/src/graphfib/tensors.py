"""Exact integer tensors counted from graph homomorphisms.

``build_T(g, d)`` counts all homomorphisms of the diagram ``d`` into ``g``,
bucketed by where the labels land: entry ``(j, i)`` counts maps sending the
inputs to the multi-index ``i`` and the outputs to ``j``.  ``build_That``
counts injective maps only.  Shapes are ``n^l`` rows by ``n^k`` columns in
row-major order.

The verifiers in this module recompute both sides of an identity from
scratch and report the first differing entry, if any.
"""

from __future__ import annotations

import json
from itertools import combinations, permutations, product

from .diagrams import (
    BilabelledGraph,
    bl_f_compose,
    bl_f_union,
    compose as compose_diagrams,
    involution,
    required_composition_pairs,
    tensor as tensor_diagrams,
)
from .graphs import enumerate_homomorphisms, enumerate_overlaps, quotient
from .partitions import enumerate_partitions, ker


class IntTensor:
    """A dense integer tensor with ``k`` input and ``l`` output legs of size ``n``.

    Entries are plain Python integers in a flat row-major list: the row index
    encodes the output multi-index, the column index the input one.
    """

    __slots__ = ("n", "k", "l", "entries")

    def __init__(self, n, k, l, entries):
        entries = list(entries)
        if len(entries) != n ** (k + l):
            raise ValueError(f"expected {n ** (k + l)} entries, got {len(entries)}")
        self.n = n
        self.k = k
        self.l = l
        self.entries = entries

    def shape(self):
        return (self.n, self.k, self.l)

    def entry(self, outputs, inputs):
        if len(outputs) != self.l or len(inputs) != self.k:
            raise ValueError("multi-index lengths must match the tensor legs")
        return self.entries[_tuple_index(outputs, self.n) * self.n**self.k + _tuple_index(inputs, self.n)]

    def is_zero(self):
        return all(e == 0 for e in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, IntTensor)
            and self.shape() == other.shape()
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.n, self.k, self.l, tuple(self.entries)))

    def __repr__(self):
        return f"IntTensor(n={self.n}, k={self.k}, l={self.l})"


def _tuple_index(t, n):
    idx = 0
    for x in t:
        idx = idx * n + x
    return idx


def _index_tuple(idx, n, length):
    out = [0] * length
    for pos in range(length - 1, -1, -1):
        out[pos] = idx % n
        idx //= n
    return tuple(out)


def zero_tensor(n, k, l):
    return IntTensor(n, k, l, [0] * (n ** (k + l)))


# ---------------------------------------------------------------------------
# linear operations


def tensor_product(a, b):
    if a.n != b.n:
        raise ValueError("tensor factors must share the leg size")
    n = a.n
    rb, cb = n**b.l, n**b.k
    ca = n**a.k
    ncols = ca * cb
    entries = [0] * (n ** (a.k + b.k + a.l + b.l))
    for ra in range(n**a.l):
        abase = ra * ca
        for cae in range(ca):
            va = a.entries[abase + cae]
            if va == 0:
                continue
            colbase = cae * cb
            for rbe in range(rb):
                rowbase = (ra * rb + rbe) * ncols + colbase
                bbase = rbe * cb
                for cbe in range(cb):
                    vb = b.entries[bbase + cbe]
                    if vb:
                        entries[rowbase + cbe] = va * vb
    return IntTensor(n, a.k + b.k, a.l + b.l, entries)


def compose(a, b):
    """Matrix product ``a . b``; the inputs of ``a`` consume the outputs of ``b``."""
    if a.n != b.n:
        raise ValueError("composed tensors must share the leg size")
    if a.k != b.l:
        raise ValueError(f"arity mismatch: {a.k} inputs composed with {b.l} outputs")
    n = a.n
    rows, mid, cols = n**a.l, n**a.k, n**b.k
    entries = [0] * (rows * cols)
    for r in range(rows):
        abase = r * mid
        obase = r * cols
        for m in range(mid):
            av = a.entries[abase + m]
            if av:
                bbase = m * cols
                for c in range(cols):
                    bv = b.entries[bbase + c]
                    if bv:
                        entries[obase + c] += av * bv
    return IntTensor(n, b.k, a.l, entries)


def adjoint(a):
    rows, cols = a.n**a.l, a.n**a.k
    entries = [0] * (rows * cols)
    for r in range(rows):
        base = r * cols
        for c in range(cols):
            entries[c * rows + r] = a.entries[base + c]
    return IntTensor(a.n, a.l, a.k, entries)


def tensor_add(a, b):
    if a.shape() != b.shape():
        raise ValueError("tensor sum needs equal shapes")
    return IntTensor(a.n, a.k, a.l, [x + y for x, y in zip(a.entries, b.entries)])


def tensor_scale(a, c):
    return IntTensor(a.n, a.k, a.l, [c * x for x in a.entries])


def compare_tensors(a, b):
    """First differing entry of two equal-shaped tensors, or None."""
    if a.shape() != b.shape():
        raise ValueError("compared tensors must have equal shapes")
    cols = a.n**a.k
    for idx, (x, y) in enumerate(zip(a.entries, b.entries)):
        if x != y:
            return {
                "row": list(_index_tuple(idx // cols, a.n, a.l)),
                "col": list(_index_tuple(idx % cols, a.n, a.k)),
                "lhs": x,
                "rhs": y,
            }
    return None


def exact_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return 0
    m, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pivot_row = mat[r]
        pval = pivot_row[col]
        for i in range(r + 1, m):
            row_i = mat[i]
            factor = row_i[col]
            for c in range(col + 1, ncols):
                row_i[c] = (pval * row_i[c] - factor * pivot_row[c]) // prev
            row_i[col] = 0
        prev = pval
        rank += 1
        r += 1
        if r == m:
            break
    return rank


# ---------------------------------------------------------------------------
# builders


def build_T(g, d):
    """Homomorphism counts of a diagram into ``g``, bucketed by label images."""
    n, k, l = g.n, d.k, d.l
    entries = [0] * (n ** (k + l))
    ncols = n**k
    for phi in enumerate_homomorphisms(d.graph, g):
        col = _tuple_index([phi[v] for v in d.inputs], n)
        row = _tuple_index([phi[v] for v in d.outputs], n)
        entries[row * ncols + col] += 1
    return IntTensor(n, k, l, entries)


def build_That(g, d):
    """Injective homomorphism counts; zero outright when ``d`` has too many vertices."""
    n, k, l = g.n, d.k, d.l
    if d.graph.n > g.n:
        return zero_tensor(n, k, l)
    entries = [0] * (n ** (k + l))
    ncols = n**k
    for phi in enumerate_homomorphisms(d.graph, g, injective=True):
        col = _tuple_index([phi[v] for v in d.inputs], n)
        row = _tuple_index([phi[v] for v in d.outputs], n)
        entries[row * ncols + col] += 1
    return IntTensor(n, k, l, entries)


def build_partition_T(n, p):
    """0/1 tensor of a two-row partition: 1 iff same-block points agree."""
    k, l = p.k, p.l
    entries = [0] * (n ** (k + l))
    blocks = [b for b in p.blocks() if b]
    ncols = n**k
    for vals in product(range(n), repeat=k + l):
        if all(all(vals[pt] == vals[b[0]] for pt in b) for b in blocks):
            col = _tuple_index(vals[:k], n)
            row = _tuple_index(vals[k:], n)
            entries[row * ncols + col] = 1
    return IntTensor(n, k, l, entries)


def build_partition_That(n, p):
    """0/1 tensor that is 1 exactly when the value pattern *equals* the partition."""
    k, l = p.k, p.l
    entries = [0] * (n ** (k + l))
    ncols = n**k
    for vals in product(range(n), repeat=k + l):
        if ker(vals[:k], vals[k:]) == p:
            col = _tuple_index(vals[:k], n)
            row = _tuple_index(vals[k:], n)
            entries[row * ncols + col] = 1
    return IntTensor(n, k, l, entries)


# ---------------------------------------------------------------------------
# identity verifiers


def _report(law, lhs, rhs):
    diff = compare_tensors(lhs, rhs)
    return {"law": law, "ok": diff is None, "first_diff": diff}


def verify_functor(g, d1, d2):
    """Counting is functorial: check it on a concrete pair of diagrams.

    Covers the tensor law, the composition law when arities allow, and the
    adjoint law for both diagrams.
    """
    reports = [
        _report(
            "tensor",
            build_T(g, tensor_diagrams(d1, d2)),
            tensor_product(build_T(g, d1), build_T(g, d2)),
        )
    ]
    if d2.l == d1.k:
        reports.append(
            _report(
                "compose",
                build_T(g, compose_diagrams(d1, d2)),
                compose(build_T(g, d1), build_T(g, d2)),
            )
        )
    for name, d in (("adjoint-left", d1), ("adjoint-right", d2)):
        reports.append(_report(name, build_T(g, involution(d)), adjoint(build_T(g, d))))
    return reports


def _extended_overlaps(n2, n1, required):
    used_left = {u for u, _ in required}
    used_right = {v for _, v in required}
    lefts = [u for u in range(n2) if u not in used_left]
    rights = [v for v in range(n1) if v not in used_right]
    out = []
    for size in range(min(len(lefts), len(rights)) + 1):
        for ls in combinations(lefts, size):
            for rs in permutations(rights, size):
                out.append(required + tuple(zip(ls, rs)))
    return out


def verify_that_sums(g, d1, d2):
    """Injective counts expand over glued unions: check both sum rules.

    The product of two injective-count tensors is the sum over all overlaps
    of the glued union's tensor; composition sums over overlaps extending the
    forced boundary pairs, and is identically zero when the boundary kernels
    disagree.
    """
    lhs = tensor_product(build_That(g, d1), build_That(g, d2))
    rhs = zero_tensor(g.n, d1.k + d2.k, d1.l + d2.l)
    for f in enumerate_overlaps(d1.graph.n, d2.graph.n):
        glued = bl_f_union(d1, d2, f)
        if glued.graph.n <= g.n:
            rhs = tensor_add(rhs, build_That(g, glued))
    reports = [_report("union-sum", lhs, rhs)]

    if d2.l == d1.k:
        lhs = compose(build_That(g, d1), build_That(g, d2))
        try:
            required = required_composition_pairs(d1, d2)
        except ValueError:
            reports.append(_report("compose-zero", lhs, zero_tensor(g.n, d2.k, d1.l)))
        else:
            rhs = zero_tensor(g.n, d2.k, d1.l)
            for f in _extended_overlaps(d2.graph.n, d1.graph.n, required):
                glued = bl_f_compose(d1, d2, f)
                if glued.graph.n <= g.n:
                    rhs = tensor_add(rhs, build_That(g, glued))
            reports.append(_report("compose-sum", lhs, rhs))

    for name, d in (("adjoint-left", d1), ("adjoint-right", d2)):
        reports.append(_report(name, build_That(g, involution(d)), adjoint(build_That(g, d))))
    return reports


def moebius_expand(g, d):
    """All counts equal the sum of injective counts over vertex merges."""
    total = zero_tensor(g.n, d.k, d.l)
    for blocks in enumerate_partitions(d.graph.n):
        qg, vmap = quotient(d.graph, blocks)
        dq = BilabelledGraph(qg, [vmap[v] for v in d.inputs], [vmap[v] for v in d.outputs])
        total = tensor_add(total, build_That(g, dq))
    return _report("moebius", build_T(g, d), total)


# ---------------------------------------------------------------------------
# serialization


def tensor_to_json(t):
    return {"n": t.n, "k": t.k, "l": t.l, "entries": list(t.entries)}


def tensor_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError("tensor JSON must be an object")
    try:
        return IntTensor(obj["n"], obj["k"], obj["l"], obj["entries"])
    except KeyError as exc:
        raise ValueError(f"tensor JSON missing key {exc}")


def tensor_to_csv(t):
    """Rows are output multi-indices, columns input ones, comma separated."""
    cols = t.n**t.k
    lines = []
    for r in range(t.n**t.l):
        lines.append(",".join(str(x) for x in t.entries[r * cols : (r + 1) * cols]))
    return "\n".join(lines) + "\n"


def load_tensor(path):
    with open(path, "r", encoding="utf-8") as fh:
        return tensor_from_json(json.load(fh))
