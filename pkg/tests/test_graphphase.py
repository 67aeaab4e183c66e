import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multispace import graphphase as gp
from multispace.errors import GraphError, NotEmbeddable
from oracles import all_graphs, embeds_on_line, has_kuratowski_subgraph, random_graph, smoothed_is_kuratowski


def phase(vertices, edges, p=2, q=1, seed=0):
    rng = np.random.default_rng(seed)
    branes = [(v, rng.normal(size=p)) for v in vertices]
    inter = [(a, b, rng.normal(size=q)) for a, b in edges]
    return gp.build_graph_phase(branes, inter)


def complete(n):
    return list(range(n)), list(itertools.combinations(range(n), 2))


K33 = (list(range(6)), [(a, b) for a in range(3) for b in range(3, 6)])


# -- construction ---------------------------------------------------------------


def test_minimal_phase_keeps_labels():
    g = gp.build_graph_phase([("a", [1, 0]), ("b", [0, 1])], [("a", "b", [2.5])])
    assert g.vertices == ("a", "b") and g.edge_list() == [("a", "b")]
    assert g.omega["a"] == (1.0, 0.0) and g.Lambda[frozenset("ab")] == (2.5,)


def test_edgeless_phase():
    g = gp.build_graph_phase([("a", [1]), ("b", [2])], [])
    assert g.edges == () and g.q_dim == 0


@pytest.mark.parametrize(
    "branes,inter",
    [
        ([("a", [1])], [("a", "z", [1])]),
        ([("a", [1]), ("a", [2])], []),
        ([("a", [1]), ("b", [1])], [("a", "b", [1]), ("b", "a", [2])]),
        ([("a", [1])], [("a", "a", [1])]),
        ([("a", [1]), ("b", [1, 2])], []),
    ],
)
def test_construction_errors(branes, inter):
    with pytest.raises(GraphError):
        gp.build_graph_phase(branes, inter)


# -- embeddability: examples ------------------------------------------------------


def test_k4_planar_with_euler_witness():
    v = gp.is_embeddable(phase(*complete(4)), 2)
    assert v.embeddable and v.obstruction is None
    assert gp.count_faces(v.witness) == 4
    assert gp.euler_characteristics(v.witness) == [2]


def test_k5_and_k33_obstructions():
    for (vs, es), kind in ((complete(5), "K5"), (K33, "K3,3")):
        v = gp.is_embeddable(phase(vs, es), 2)
        assert not v.embeddable and v.witness is None
        assert v.obstruction_kind == kind
        assert smoothed_is_kuratowski(v.obstruction)
        assert {frozenset(e) for e in v.obstruction} <= {frozenset(e) for e in es}
    assert gp.is_embeddable(phase(*complete(5)), 3).embeddable


def test_line_examples():
    tri = phase([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    v = gp.is_embeddable(tri, 1)
    assert not v.embeddable and v.obstruction_kind == "cycle"
    assert gp.is_embeddable(phase([0, 1, 2], [(0, 1), (1, 2)]), 1).embeddable
    star = gp.is_embeddable(phase([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)]), 1)
    assert not star.embeddable and star.obstruction_kind == "K1,3"


def test_dimension_must_be_positive():
    with pytest.raises(GraphError):
        gp.is_embeddable(phase([0], []), 0)


# -- embeddability: oracles -------------------------------------------------------


def check_against_oracles(vs, es):
    g = phase(vs, es)
    v2 = gp.is_embeddable(g, 2)
    assert v2.embeddable == (not has_kuratowski_subgraph(vs, es))
    if v2.embeddable:
        assert all(x == 2 for x in gp.euler_characteristics(v2.witness))
    else:
        assert smoothed_is_kuratowski(v2.obstruction)
    # vertex permutations get expensive; a non-forest never embeds anyway
    if len(es) < len(vs):
        assert gp.is_embeddable(g, 1).embeddable == embeds_on_line(vs, es)
    else:
        assert not gp.is_embeddable(g, 1).embeddable
    assert gp.is_embeddable(g, 3).embeddable


@pytest.mark.parametrize("n", range(1, 6))
def test_census_up_to_five_vertices(n):
    for es in all_graphs(n):
        check_against_oracles(list(range(n)), es)


def test_random_graphs_up_to_eight_vertices():
    rng = random.Random(20240611)
    nonplanar = 0
    for _ in range(500):
        vs, es = random_graph(rng)
        check_against_oracles(vs, es)
        nonplanar += has_kuratowski_subgraph(vs, es)
    assert nonplanar >= 50


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 9), st.data())
def test_dense_graphs_rejected(n, data):
    slots = list(itertools.combinations(range(n), 2))
    k = data.draw(st.integers(min(3 * n - 5, len(slots)), len(slots)))
    if k <= 3 * n - 6:
        return
    es = data.draw(st.permutations(slots))[:k]
    assert not gp.is_embeddable(phase(list(range(n)), es), 2).embeddable


def test_count_faces_of_hand_built_rotations():
    # a single edge has one face walk; a triangle has two
    assert gp.count_faces({0: [1], 1: [0]}) == 1
    assert gp.count_faces({0: [1, 2], 1: [2, 0], 2: [0, 1]}) == 2
    # isolated vertices count as their own component
    assert gp.euler_characteristics({0: [], 1: [2], 2: [1]}) == [2, 2]


# -- transforms -------------------------------------------------------------------


def test_identity_transform_is_exact():
    g = phase(*complete(4))
    assert gp.transform_phase(g, gp.LabelTransform.identity(), 2) == g


def test_doubling_triangle():
    g = phase([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    out = gp.transform_phase(g, gp.LabelTransform(lambda x: 2 * x, lambda x: x), 2)
    assert out.edges == g.edges
    for v in g.vertices:
        assert out.omega[v] == tuple(2 * x for x in g.omega[v])
    assert out.Lambda == g.Lambda


def test_k5_transform_refused():
    with pytest.raises(NotEmbeddable) as err:
        gp.transform_phase(phase(*complete(5)), gp.LabelTransform.identity(), 2)
    assert smoothed_is_kuratowski(err.value.obstruction)


def test_round_trip_examples():
    g = phase(*complete(4))
    assert gp.round_trip_check(g, gp.LabelTransform.affine(2, 0, 2, 0), gp.LabelTransform.affine(0.5, 0, 0.5, 0), 2)
    zero = gp.LabelTransform(lambda x: 0 * x, lambda x: 0 * x)
    assert not gp.round_trip_check(g, zero, gp.LabelTransform.identity(), 2)


def planar_graph(rng):
    while True:
        vs, es = random_graph(rng, 8)
        if not has_kuratowski_subgraph(vs, es):
            return vs, es


def test_random_affine_round_trips():
    rng = random.Random(7)
    for i in range(100):
        vs, es = planar_graph(rng)
        g = phase(vs, es, p=3, q=2, seed=i)
        a, b = rng.uniform(0.2, 5) * rng.choice((-1, 1)), rng.uniform(-3, 3)
        c, d = rng.uniform(0.2, 5) * rng.choice((-1, 1)), rng.uniform(-3, 3)
        tau = gp.LabelTransform.affine(a, b, c, d)
        inv = gp.LabelTransform.affine(1 / a, -b / a, 1 / c, -d / c)
        assert gp.round_trip_check(g, tau, inv, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_transform_functoriality_and_shape(seed, a, b, c, d):
    rng = random.Random(seed)
    vs, es = planar_graph(rng)
    g = phase(vs, es, p=2, q=2, seed=seed)
    t1 = gp.LabelTransform(lambda x: a * x + b, lambda x: np.sin(x) * c)
    t2 = gp.LabelTransform(lambda x: x**2 - d, lambda x: x + a)
    stepwise = gp.transform_phase(gp.transform_phase(g, t1, 2), t2, 2)
    composed = gp.transform_phase(g, t1.then(t2), 2)
    assert gp.labels_close(stepwise, composed, tol=1e-12)
    assert stepwise.same_graph(g) and len(stepwise.vertices) == len(g.vertices)
    assert stepwise.to_networkx().adj == g.to_networkx().adj
