import math

import numpy as np
import pytest

from stampfold.netgen import (
    NotSpanningTree,
    OverlapFailure,
    congruence_signature,
    edge_unfolding,
    enumerate_edge_unfoldings,
    random_cut_tree,
    star_unfolding_tetramonohedron,
)
from stampfold.solid import (
    NonAcuteTriangle,
    build_cube,
    build_dodecahedron,
    build_icosahedron,
    build_octahedron,
    build_tetramonohedron,
)


def test_star_unfolding_unit():
    P = star_unfolding_tetramonohedron(1, 1, 1)
    assert P.n == 3
    assert np.allclose(np.sort(P.edge_lengths), 2.0)


def test_star_unfolding_scaled():
    P = star_unfolding_tetramonohedron(0.5, 0.6, 0.7)
    assert sorted(np.round(P.edge_lengths, 9)) == pytest.approx([1.0, 1.2, 1.4])


def test_star_unfolding_rejects_right_triangle():
    with pytest.raises(NonAcuteTriangle):
        star_unfolding_tetramonohedron(3, 4, 5)


def test_not_spanning_tree():
    cube = build_cube()
    edges = cube.edges()[:7]  # arbitrary 7 edges, generally not a tree
    bad = [frozenset((0, 1)), frozenset((0, 1))]
    with pytest.raises(NotSpanningTree):
        edge_unfolding(cube, bad)


def test_cube_has_eleven_nets():
    nets = enumerate_edge_unfoldings(build_cube())
    assert len(nets) == 11
    for net in nets:
        assert net.area == pytest.approx(6.0)
        assert net.n >= 8


def test_latin_cross_among_cube_nets(latin_cross):
    nets = enumerate_edge_unfoldings(build_cube())
    sig = congruence_signature(latin_cross)
    assert sig in {congruence_signature(n) for n in nets}


def test_random_nets_have_solid_area():
    for Q in (
        build_tetramonohedron(1, 1, 1),
        build_octahedron(),
        build_icosahedron(),
        build_dodecahedron(),
    ):
        for seed in range(4):
            net = edge_unfolding(Q, random_cut_tree(Q, seed))
            assert not isinstance(net, OverlapFailure)
            assert net.area == pytest.approx(Q.surface_area, abs=1e-7)


def test_congruence_signature_invariance(latin_cross):
    moved = latin_cross.vertices @ np.array(
        [[math.cos(1.1), -math.sin(1.1)], [math.sin(1.1), math.cos(1.1)]]
    ).T + np.array([3.0, -2.0])
    from stampfold.geometry import Polygon

    assert congruence_signature(Polygon(moved)) == congruence_signature(latin_cross)
    mirrored = latin_cross.vertices * np.array([-1.0, 1.0])
    assert congruence_signature(Polygon(mirrored)) == congruence_signature(latin_cross)
