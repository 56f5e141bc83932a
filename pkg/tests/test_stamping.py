import math

import numpy as np
import pytest

from stampfold.geometry import Polygon
from stampfold.solid import Placement, build_cube, build_tetramonohedron
from stampfold.stamping import (
    StampReject,
    StampResult,
    refine_boundary,
    region_creases,
    stamp,
    stamp_budget,
    traverse_counts,
)


def ident(face=0):
    return Placement(face, np.eye(2), np.zeros(2), False)


@pytest.fixture
def cross_stamp(latin_cross):
    res = stamp(latin_cross, build_cube(), ident(), (0.0, 0.0))
    assert isinstance(res, StampResult)
    return latin_cross, build_cube(), res


def test_cross_stamping_regions(cross_stamp):
    P, Q, res = cross_stamp
    assert len(res.tree.regions) == 6
    assert all(r.area == pytest.approx(1.0) for r in res.tree.regions)
    assert res.tree.is_tree()
    # indices are BFS: parents precede children
    for parent, child in res.tree.edges:
        assert parent < child
    # the six regions land on six distinct cube faces
    assert sorted(r.face for r in res.tree.regions) == [0, 1, 2, 3, 4, 5]


def test_cross_area_conservation(cross_stamp):
    P, Q, res = cross_stamp
    assert sum(r.area for r in res.tree.regions) == pytest.approx(P.area)


def test_cross_refined_boundary(cross_stamp):
    P, Q, res = cross_stamp
    b = res.boundary
    assert b.n == 14  # 12 corners + 2 break points on the long column edges
    assert b.total_length() == pytest.approx(P.perimeter)
    glue = b.gluing_points()
    assert len(glue) == 4
    assert all(b.vertices[i].angle == pytest.approx(270.0) for i in glue)


def test_triangle_stamping(triangle_side2):
    Q = build_tetramonohedron(1, 1, 1)
    res = stamp(triangle_side2, Q, ident(), (0.0, 0.0))
    assert isinstance(res, StampResult)
    assert len(res.tree.regions) == 4
    b = res.boundary
    assert b.n == 6  # 3 corners + 3 midpoints
    glue = b.gluing_points()
    assert len(glue) == 3
    for i in glue:
        assert b.vertices[i].angle == pytest.approx(180.0)
        assert b.vertices[i].co_curvature == pytest.approx(180.0)


def test_strip_stamping_no_gluing_points():
    P = Polygon([(0, 0), (6, 0), (6, 1), (0, 1)])
    res = stamp(P, build_cube(), ident(), (0.0, 0.0))
    assert isinstance(res, StampResult)
    assert len(res.tree.regions) == 6
    # 4 corners plus a break point per cell boundary on both long edges
    assert res.boundary.n == 14
    assert res.boundary.gluing_points() == []
    angles = {round(v.angle, 6) for v in res.boundary.vertices}
    assert angles == {90.0, 180.0}


def test_offset_placement_rejects_vertex_inside(latin_cross):
    pl = Placement(0, np.eye(2), np.array([0.5, 0.0]), False)
    res = stamp(latin_cross, build_cube(), pl, (0.5, 0.0))
    assert isinstance(res, StampReject)
    assert res.reason == "VertexInsideP"


def test_stamping_deterministic(latin_cross):
    Q = build_cube()
    r1 = stamp(latin_cross, Q, ident(), (0.0, 0.0))
    r2 = stamp(latin_cross, Q, ident(), (0.0, 0.0))
    assert [r.face for r in r1.tree.regions] == [r.face for r in r2.tree.regions]
    assert r1.tree.edges == r2.tree.edges
    for a, b in zip(r1.tree.regions, r2.tree.regions):
        assert np.allclose(a.face_poly, b.face_poly)


def test_traverse_bound_box(cross_stamp):
    P, Q, res = cross_stamp
    counts = traverse_counts(res.tree, P)
    for e in range(P.n):
        ell = float(P.edge_lengths[e])
        assert counts[e] <= math.ceil(2.0 * ell / 1.0) + 2


def test_traverse_bound_triangles(triangle_side2):
    Q = build_tetramonohedron(1, 1, 1)
    res = stamp(triangle_side2, Q, ident(), (0.0, 0.0))
    counts = traverse_counts(res.tree, triangle_side2)
    for e in range(triangle_side2.n):
        ell = float(triangle_side2.edge_lengths[e])
        assert counts[e] <= math.ceil(4.0 * ell / math.sqrt(3.0)) + 2


def test_budget_formula(latin_cross):
    assert stamp_budget(latin_cross) == int(4 * (14 + 4 * 12) + 16)


def test_creases_cross(cross_stamp):
    P, Q, res = cross_stamp
    creases = region_creases(res.tree, P, Q)
    assert len(creases) == 5  # the five fold segments of the Latin cross
    for c in creases:
        assert c.faces[0] != c.faces[1]
        length = np.hypot(*(c.a - c.b))
        assert length == pytest.approx(1.0)


def test_refine_boundary_public(cross_stamp):
    P, Q, res = cross_stamp
    again = refine_boundary(P, res.tree, Q)
    assert again.n == res.boundary.n
