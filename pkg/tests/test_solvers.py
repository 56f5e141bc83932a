import math

import numpy as np
import pytest

from stampfold.geometry import Polygon, Tolerance
from stampfold.netgen import edge_unfolding, random_cut_tree, star_unfolding_tetramonohedron
from stampfold.solid import (
    NonAcuteTriangle,
    build_cube,
    build_octahedron,
    build_tetramonohedron,
)
from stampfold.solvers import (
    PENTAGON_BASIS,
    TRIANGLE_BASIS,
    decompose_integer_xy,
    enumerate_decompositions,
    enumerate_lattices,
    fold,
    fold_box,
    fold_deltahedron,
    fold_dodecahedron,
    fold_tetramonohedron,
)
from stampfold.verify import verify_certificate

TOL = Tolerance.for_scale(10.0)


# -- enumerations -----------------------------------------------------------


def test_enumerate_lattices_unit_distance2():
    cands = enumerate_lattices((0, 0), (2, 0), 1, 1, 1, L=8, tol=TOL)
    pairs = {c.coefficients for c in cands}
    assert pairs == {(2, 0), (-2, 0), (0, 2), (0, -2), (2, -2), (-2, 2)}


def test_enumerate_lattices_irrational_distance_empty():
    cands = enumerate_lattices((0, 0), (1.3, 0), 1, 1, 1, L=8, tol=TOL)
    assert cands == []


def test_enumerate_lattices_includes_basis_vector():
    cands = enumerate_lattices((0, 0), (1, 0), 1, 1, 1, L=8, tol=TOL)
    assert (1, 0) in {c.coefficients for c in cands}
    for c in cands:
        assert np.hypot(*c.v_a) == pytest.approx(1.0)
        assert np.hypot(*c.v_b) == pytest.approx(1.0)
        combo = c.k_a * c.v_a + c.k_b * c.v_b
        assert np.hypot(*(combo - np.array([1.0, 0.0]))) < 1e-9


def test_decompose_integer_xy():
    assert decompose_integer_xy(25) == [(0, 5), (3, 4), (4, 3), (5, 0)]
    assert decompose_integer_xy(2) == [(1, 1)]
    assert decompose_integer_xy(3) == []


def test_pentagon_basis_identity():
    b = PENTAGON_BASIS
    lhs = np.array([math.cos(4 * math.pi / 5), math.sin(4 * math.pi / 5)])
    rhs = -b[0] + b[1] - b[2] + b[3]
    assert np.hypot(*(lhs - rhs)) < 1e-12


def test_enumerate_decompositions_triangle():
    tuples = {
        t.coeffs
        for t in enumerate_decompositions(3 * TRIANGLE_BASIS[0], TRIANGLE_BASIS, 10)
    }
    assert (3, 0) in tuples


def test_enumerate_decompositions_pentagon():
    b = PENTAGON_BASIS
    tuples = {
        t.coeffs for t in enumerate_decompositions(b[1] + b[2], PENTAGON_BASIS, 5)
    }
    assert (0, 1, 1, 0) in tuples
    delta = np.array([math.cos(4 * math.pi / 5), math.sin(4 * math.pi / 5)])
    tuples2 = {
        t.coeffs for t in enumerate_decompositions(delta, PENTAGON_BASIS, 5)
    }
    assert (-1, 1, -1, 1) in tuples2


# -- fold dispatch ----------------------------------------------------------


def test_fold_latin_cross_cube(latin_cross):
    certs = fold(latin_cross, "cube")
    assert certs
    rep = verify_certificate(latin_cross, build_cube(), certs[0])
    assert rep.ok


def test_fold_area_mismatch_short_circuits():
    hept = Polygon([(0, 0), (7, 0), (7, 1), (0, 1)])
    assert fold(hept, "cube") == []


def test_fold_triangle_regular_tetrahedron(triangle_side2):
    certs = fold(triangle_side2, "tetra")
    assert certs


# -- tetramonohedron --------------------------------------------------------


def test_tetramonohedron_star_unfolding_roundtrip():
    P = star_unfolding_tetramonohedron(0.5, 0.6, 0.7)
    assert sorted(np.round(P.edge_lengths, 9)) == pytest.approx([1.0, 1.2, 1.4])
    out = fold_tetramonohedron(P, 0.5, 0.6, 0.7)
    assert out.certificates


def test_tetramonohedron_area_mismatch(triangle_side2):
    out = fold_tetramonohedron(triangle_side2, 1, 1, 0.9)
    assert out.certificates == []


def test_tetramonohedron_rejects_non_acute(triangle_side2):
    with pytest.raises(NonAcuteTriangle):
        fold_tetramonohedron(triangle_side2, 3, 4, 5)


def test_square_rolling_belt():
    sq = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    r = math.sqrt(1 + 1 / 16.0)
    out = fold_tetramonohedron(sq, 0.5, r, r)
    assert out.certificates
    assert any("rolling-belt" in w for w in out.warnings)
    Q = build_tetramonohedron(0.5, r, r)
    assert verify_certificate(sq, Q, out.certificates[0]).ok


def test_square_wrong_tetramonohedron_is_no():
    sq = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    s = math.sqrt(1.0 / math.sqrt(3.0))  # equilateral with matching area
    out = fold_tetramonohedron(sq, s, s, s)
    assert out.certificates == []


def test_tetra_strip_net_type_coverage():
    # the 4-triangle strip (parallelogram) folds to the regular tetrahedron
    h = math.sqrt(3) / 2
    P = Polygon([(0, 0), (2, 0), (2.5, h), (0.5, h)])
    out = fold_tetramonohedron(P, 1, 1, 1)
    assert out.certificates


# -- box ---------------------------------------------------------------------


def test_box_strip_has_no_anchor():
    P = Polygon([(0, 0), (6, 0), (6, 1), (0, 1)])
    out = fold_box(P, 1, 1, 1, first_only=False)
    assert out.certificates == [] and out.stats.stampings == 0


def test_box_1x1x2_net():
    # four 1x2 side faces in a strip, both 1x1 caps hanging off the first side
    P = Polygon(
        [
            (0, -1), (1, -1), (1, 0), (4, 0),
            (4, 2), (1, 2), (1, 3), (0, 3),
        ]
    )
    assert P.area == pytest.approx(10.0)  # 2*(1*1 + 1*2 + 2*1)
    out = fold_box(P, 1, 1, 2)
    assert out.certificates


def test_fold_decision_rigid_motion_invariant(latin_cross):
    rng = np.random.default_rng(5)
    for _ in range(5):
        theta = rng.uniform(0, 2 * math.pi)
        R = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
        )
        shift = rng.uniform(-5, 5, size=2)
        moved = Polygon(latin_cross.vertices @ R.T + shift)
        assert fold(moved, "cube")


def test_fold_decision_relabel_invariant(latin_cross):
    for k in (3, 7):
        rolled = Polygon(np.roll(latin_cross.vertices, k, axis=0))
        assert fold(rolled, "cube")


# -- dodecahedron and deltahedra ----------------------------------------------


def test_pentagon_area_match_but_no_anchor():
    area = 3 * math.sqrt(25 + 10 * math.sqrt(5))
    # regular pentagon scaled to the dodecahedron surface area
    k = 5
    r = math.sqrt(2 * area / (k * math.sin(2 * math.pi / k)))
    pts = [
        (r * math.cos(2 * math.pi * i / k), r * math.sin(2 * math.pi * i / k))
        for i in range(k)
    ]
    P = Polygon(pts)
    assert P.area == pytest.approx(area)
    out = fold_dodecahedron(P)
    assert out.certificates == [] and out.stats.stampings == 0


def test_dodecahedron_wrong_area():
    P = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert fold_dodecahedron(P).certificates == []


def test_octahedron_net_roundtrip():
    Q = build_octahedron()
    net = edge_unfolding(Q, random_cut_tree(Q, 2))
    out = fold_deltahedron(net, Q)
    assert out.certificates
    assert verify_certificate(net, Q, out.certificates[0]).ok


def test_octahedron_net_against_icosahedron_area_mismatch():
    from stampfold.solid import build_icosahedron

    Q = build_octahedron()
    net = edge_unfolding(Q, random_cut_tree(Q, 2))
    out = fold_deltahedron(net, build_icosahedron())
    assert out.certificates == []
