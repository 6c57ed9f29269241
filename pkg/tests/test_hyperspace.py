from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from vietoris.errors import ArityMismatch
from vietoris.geometry import DIAGONAL, normalize
from vietoris.homeo import PLHomeo, compose, graph, inverse, sup_dist
from vietoris.hyperspace import (
    CurveFamily,
    SetFamilyTuple,
    TupleFamily,
    act_curve,
    act_family,
    act_tuple,
    curve_hausdorff,
    deviation_witness,
    diag_deviation,
    family_hausdorff,
)

from conftest import pl_homeos, set_tuples, staircase_curves
from oracles import sampled_curve_hausdorff, sampled_deviation

ID = PLHomeo.identity()
G = PLHomeo.from_pairs([(0, 0), ("1/2", "1/4"), (1, 1)])


def test_identity_action():
    F1 = graph(G)
    assert act_curve(ID, F1) == F1


def test_action_on_diagonal_is_graph():
    assert act_curve(G, DIAGONAL) == graph(G)


def test_action_sends_inverse_graph_to_diagonal():
    assert act_curve(G, graph(inverse(G))) == DIAGONAL


def test_action_on_flat_curve():
    flat = normalize([(0, "1/2")])
    T = SetFamilyTuple((flat,))
    assert act_tuple(G, T) == SetFamilyTuple((normalize([(0, "1/4")]),))
    assert act_tuple(ID, T) == T
    assert act_tuple(G, act_tuple(inverse(G), T)) == T


def test_act_curve_rejects_reflection():
    with pytest.raises(ValueError):
        act_curve(PLHomeo.reflection(), DIAGONAL)


def test_curve_distance_examples():
    assert curve_hausdorff(DIAGONAL, DIAGONAL) == 0
    assert curve_hausdorff(DIAGONAL, graph(G)) == F(1, 8)


def test_family_distance_examples():
    q = CurveFamily.of([DIAGONAL, graph(G)])
    assert family_hausdorff(q, q) == 0
    assert family_hausdorff(CurveFamily.of([DIAGONAL]), CurveFamily.of([graph(G)])) == curve_hausdorff(DIAGONAL, graph(G))
    assert family_hausdorff(q, CurveFamily.of([graph(G)])) == curve_hausdorff(DIAGONAL, graph(G))


def test_family_arity_mismatch():
    one = TupleFamily.of([SetFamilyTuple((normalize([(0, 1)]),))])
    two = TupleFamily.of([SetFamilyTuple((normalize([(0, 1)]), normalize([(0, 1)])))])
    with pytest.raises(ArityMismatch):
        family_hausdorff(one, two)
    with pytest.raises(ArityMismatch):
        family_hausdorff(one, CurveFamily.of([DIAGONAL]))
    with pytest.raises(ArityMismatch):
        TupleFamily((one.members[0], two.members[0]))


def test_deviation_examples():
    assert diag_deviation(DIAGONAL) == 0
    assert diag_deviation(graph(G)) == F(1, 4)
    assert deviation_witness(graph(G)) == (F(1, 2), F(1, 4))


@given(pl_homeos(), pl_homeos(), staircase_curves())
def test_curve_action_law(g, h, curve):
    assert act_curve(g, act_curve(h, curve)) == act_curve(compose(g, h), curve)


@given(pl_homeos(), pl_homeos(), set_tuples(2))
def test_tuple_action_law(g, h, T):
    assert act_tuple(g, act_tuple(h, T)) == act_tuple(compose(g, h), T)


@given(pl_homeos(), staircase_curves())
def test_action_keeps_curves_monotone(g, curve):
    verts = act_curve(g, curve).vertices
    assert all(x0 <= x1 and y0 <= y1 for (x0, y0), (x1, y1) in zip(verts, verts[1:]))


@given(pl_homeos(), staircase_curves(), staircase_curves())
def test_action_is_lipschitz(g, F1, F2):
    # (x, y) -> (x, g(y)) is max(1, Lip g)-Lipschitz in the L-infinity metric.
    bound = max(F(1), g.lipschitz) * curve_hausdorff(F1, F2)
    assert curve_hausdorff(act_curve(g, F1), act_curve(g, F2)) <= bound
    assert curve_hausdorff(act_curve(ID, F1), act_curve(ID, F2)) == curve_hausdorff(F1, F2)


@given(staircase_curves())
def test_distance_to_diagonal_is_half_deviation(curve):
    assert curve_hausdorff(curve, DIAGONAL) == diag_deviation(curve) / 2


@given(staircase_curves())
def test_vertex_scan_matches_sampling(curve):
    assert abs(float(diag_deviation(curve)) - sampled_deviation(curve)) <= 1 / 1024


@given(pl_homeos())
def test_deviation_of_graph_is_sup_distance(g):
    assert diag_deviation(act_curve(g, DIAGONAL)) == sup_dist(g, ID)


@given(staircase_curves(), staircase_curves())
def test_curve_distance_matches_sampling(F1, F2):
    assert abs(float(curve_hausdorff(F1, F2)) - sampled_curve_hausdorff(F1, F2)) <= 1 / 1024


@given(staircase_curves(), staircase_curves(), staircase_curves())
def test_curve_distance_is_a_metric(F1, F2, F3):
    assert curve_hausdorff(F1, F2) == curve_hausdorff(F2, F1)
    assert (curve_hausdorff(F1, F2) == 0) == (F1 == F2)
    assert curve_hausdorff(F1, F3) <= curve_hausdorff(F1, F2) + curve_hausdorff(F2, F3)


@given(pl_homeos(), st.lists(staircase_curves(), min_size=1, max_size=3), st.lists(staircase_curves(), min_size=1, max_size=3))
def test_family_action_commutes(g, a, b):
    qa, qb = CurveFamily.of(a), CurveFamily.of(b)
    moved = act_family(g, qa)
    assert len(moved) == len(qa)
    assert family_hausdorff(qa, qb) == family_hausdorff(qb, qa)
