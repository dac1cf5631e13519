"""Exact integer tensors from homomorphism counts and their identities."""

import pytest

from graphfib.diagrams import BilabelledGraph, m_diagram, rotate_left
from graphfib.graphs import Graph, complete, disjoint_union, edgeless, path
from graphfib.partitions import (
    enumerate_set_partitions,
    from_blocks,
    ker,
    partition_to_bilabelled,
)
from graphfib.tensors import (
    IntTensor,
    adjoint,
    build_partition_T,
    build_partition_That,
    build_T,
    build_That,
    compare_tensors,
    compose,
    exact_rank,
    moebius_expand,
    tensor_add,
    tensor_from_json,
    tensor_product,
    tensor_scale,
    tensor_to_csv,
    tensor_to_json,
    verify_functor,
    verify_that_sums,
    zero_tensor,
)

EDGE_DIAGRAM = BilabelledGraph(complete(2), (0,), (1,))
HOSTS = [complete(2), complete(3), path(3), disjoint_union(complete(2), edgeless(1))]


def falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def all_tuples(n, m):
    out = [()]
    for _ in range(m):
        out = [t + (x,) for t in out for x in range(n)]
    return out


# ---------------------------------------------------------------------------
# the tensor container


def test_int_tensor_addressing():
    t = IntTensor(2, 1, 1, [1, 2, 3, 4])
    assert t.shape() == (2, 1, 1)
    assert t.entry((0,), (0,)) == 1
    assert t.entry((0,), (1,)) == 2
    assert t.entry((1,), (0,)) == 3
    assert not t.is_zero()
    assert zero_tensor(3, 1, 2).is_zero()


def test_int_tensor_validates_length():
    with pytest.raises(ValueError):
        IntTensor(2, 1, 1, [1, 2, 3])


def test_compare_tensors_locates_first_difference():
    a = IntTensor(2, 1, 1, [1, 2, 3, 4])
    b = IntTensor(2, 1, 1, [1, 2, 5, 4])
    diff = compare_tensors(a, b)
    assert diff == {"row": [1], "col": [0], "lhs": 3, "rhs": 5}
    assert compare_tensors(a, a) is None
    with pytest.raises(ValueError):
        compare_tensors(a, zero_tensor(2, 2, 1))


# ---------------------------------------------------------------------------
# building from homomorphism counts


def test_identity_diagram_tensor():
    t = build_T(complete(3), m_diagram(1, 1))
    assert t.entries == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_pair_diagram_tensor():
    t = build_T(complete(2), m_diagram(0, 2))
    assert t.shape() == (2, 0, 2)
    assert t.entries == [1, 0, 0, 1]


def test_edge_diagram_tensor_is_adjacency():
    t = build_T(complete(3), EDGE_DIAGRAM)
    assert t.entries == [0, 1, 1, 1, 0, 1, 1, 1, 0]
    assert build_That(complete(3), EDGE_DIAGRAM).entries == t.entries


def test_scalar_diagram_counts_all_homomorphisms():
    t = build_T(complete(3), BilabelledGraph(complete(3), (), ()))
    assert t.shape() == (3, 0, 0) and t.entries == [6]
    assert build_That(complete(3), BilabelledGraph(complete(3), (), ())).entries == [6]


def test_that_zero_when_diagram_is_larger_than_host():
    t = build_That(complete(2), BilabelledGraph(edgeless(3), (0,), (2,)))
    assert t.is_zero()


def test_that_counts_injectively():
    d = BilabelledGraph(edgeless(2), (0,), (1,))
    t = build_T(complete(2), d)
    that = build_That(complete(2), d)
    assert t.entries == [1, 1, 1, 1]
    assert that.entries == [0, 1, 1, 0]


def test_loop_labelled_diagram():
    d = BilabelledGraph(Graph(1, [(0, 0)]), (0,), (0,))
    assert build_T(complete(3), d).is_zero()
    looped = Graph(2, [(0, 0), (0, 1)])
    t = build_T(looped, d)
    assert t.entry((0,), (0,)) == 1 and t.entry((1,), (1,)) == 0


# ---------------------------------------------------------------------------
# algebra on tensors


def test_compose_is_matrix_product():
    a = IntTensor(2, 1, 1, [1, 2, 3, 4])
    b = IntTensor(2, 1, 1, [5, 6, 7, 8])
    assert compose(a, b).entries == [19, 22, 43, 50]
    with pytest.raises(ValueError):
        compose(a, zero_tensor(2, 1, 2))


def test_adjoint_transposes():
    t = IntTensor(2, 2, 1, [1, 2, 3, 4, 5, 6, 7, 8])
    back = adjoint(adjoint(t))
    assert back.entries == t.entries and back.shape() == t.shape()
    assert adjoint(t).shape() == (2, 1, 2)
    assert adjoint(t).entry((0, 1), (0,)) == t.entry((0,), (0, 1))


def test_add_scale_shape_checks():
    a = IntTensor(2, 1, 1, [1, 2, 3, 4])
    assert tensor_add(a, a).entries == [2, 4, 6, 8]
    assert tensor_scale(a, -1).entries == [-1, -2, -3, -4]
    with pytest.raises(ValueError):
        tensor_add(a, zero_tensor(2, 1, 2))


def test_exact_rank():
    assert exact_rank([]) == 0
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[1, 2], [2, 5]]) == 2
    assert exact_rank([[10**20, 1], [0, 10**20], [10**20, 10**20 + 1]]) == 2
    assert exact_rank([[2, 4, 6], [1, 3, 5], [0, 1, 2]]) == 2


# ---------------------------------------------------------------------------
# the counting functor


def test_functor_laws_on_hand_picked_pairs():
    pairs = [
        (EDGE_DIAGRAM, m_diagram(1, 1)),
        (m_diagram(2, 1), EDGE_DIAGRAM),
        (BilabelledGraph(path(3), (0, 2), (1,)), BilabelledGraph(complete(2), (0,), (1, 1))),
        (BilabelledGraph(Graph(2, [(0, 0)]), (0,), (1,)), m_diagram(0, 2)),
    ]
    for g in HOSTS:
        for d1, d2 in pairs:
            for report in verify_functor(g, d1, d2):
                assert report["ok"], report


def test_interchange_of_tensor_and_compose_numerically():
    a = build_T(complete(3), EDGE_DIAGRAM)
    b = build_T(complete(3), m_diagram(1, 1))
    lhs = compose(tensor_product(a, b), tensor_product(b, a))
    rhs = tensor_product(compose(a, b), compose(b, a))
    assert compare_tensors(lhs, rhs) is None


def test_that_sum_rules_on_hand_picked_pairs():
    pairs = [
        (EDGE_DIAGRAM, m_diagram(1, 1)),
        (BilabelledGraph(path(3), (0,), (2,)), EDGE_DIAGRAM),
        (m_diagram(1, 2), m_diagram(2, 1)),
    ]
    for g in HOSTS:
        for d1, d2 in pairs:
            for report in verify_that_sums(g, d1, d2):
                assert report["ok"], report


def test_composition_of_mismatched_kernels_is_zero():
    d1 = BilabelledGraph(edgeless(2), (0, 1), ())
    d2 = BilabelledGraph(edgeless(1), (), (0, 0))
    for g in HOSTS:
        reports = verify_that_sums(g, d1, d2)
        laws = [r["law"] for r in reports]
        assert "compose-zero" in laws
        assert all(r["ok"] for r in reports), reports


def test_moebius_expansion():
    diagrams = [
        EDGE_DIAGRAM,
        BilabelledGraph(path(3), (0,), (1, 2)),
        BilabelledGraph(complete(3), (0, 1), (2,)),
        BilabelledGraph(Graph(4, [(0, 1), (2, 3)]), (0, 2), (1, 3)),
    ]
    for g in HOSTS:
        for d in diagrams:
            assert moebius_expand(g, d)["ok"]


def test_left_rotation_shuffles_indices():
    d = BilabelledGraph(path(3), (0, 2), (1,))
    g = complete(3)
    t = build_T(g, d)
    rt = build_T(g, rotate_left(d))
    for x in range(3):
        for j in all_tuples(3, d.l):
            for rest in all_tuples(3, d.k - 1):
                assert rt.entry((x,) + j, rest) == t.entry(j, (x,) + rest)


# ---------------------------------------------------------------------------
# partition tensors


def test_partition_tensor_is_block_indicator():
    p = ker("a", "a")
    t = build_partition_T(3, p)
    assert t.entries == [1, 0, 0, 0, 1, 0, 0, 0, 1]
    that = build_partition_That(3, p)
    assert that.entries == t.entries
    q = ker("", "aa")
    assert build_partition_T(2, q).entries == [1, 0, 0, 1]


def test_partition_tensor_loose_vs_exact():
    p = ker("ab", "")
    loose = build_partition_T(2, p)
    exact = build_partition_That(2, p)
    assert loose.entries == [1, 1, 1, 1]
    assert exact.entries == [0, 1, 1, 0]


def test_partition_tensors_match_embedded_diagrams():
    n = 3
    for k in range(3):
        for l in range(3 - k):
            for p in enumerate_set_partitions(k, l):
                assert p.num_empty_blocks == 0
                d = partition_to_bilabelled(p)
                assert compare_tensors(build_partition_T(n, p), build_T(edgeless(n), d)) is None
                exact = build_partition_That(n, p)
                assert compare_tensors(exact, build_That(edgeless(n), d)) is None


def test_empty_blocks_scale_the_loose_tensor_and_kill_the_exact_one():
    p = from_blocks(1, 1, [[0, 1], []])
    d = partition_to_bilabelled(p)
    loose = tensor_scale(build_partition_T(3, p), 3)
    assert compare_tensors(loose, build_T(edgeless(3), d)) is None
    assert build_partition_That(3, p).is_zero()


# ---------------------------------------------------------------------------
# serialization


def test_tensor_json_round_trip():
    t = build_T(complete(3), EDGE_DIAGRAM)
    obj = tensor_to_json(t)
    assert obj == {"n": 3, "k": 1, "l": 1, "entries": t.entries}
    assert tensor_from_json(obj) == t
    with pytest.raises(ValueError):
        tensor_from_json({"n": 2, "k": 1, "l": 1, "entries": [1]})


def test_tensor_csv():
    t = IntTensor(2, 1, 1, [1, 2, 3, 4])
    assert tensor_to_csv(t) == "1,2\n3,4\n"
