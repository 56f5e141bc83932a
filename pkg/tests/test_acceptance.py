"""Acceptance suite: one test per criterion, each printing a PASS line.

Criterion 8 re-verifies every YES certificate produced by criteria 1-4, so
the module collects them as it goes.
"""
import math
import time

import numpy as np
import pytest

import stampfold.solvers as solvers_mod
from stampfold.geometry import Polygon
from stampfold.gluing import FoldingCertificate, glue_check
from stampfold.netgen import (
    OverlapFailure,
    congruence_signature,
    edge_unfolding,
    enumerate_edge_unfoldings,
    random_cut_tree,
    star_unfolding_tetramonohedron,
)
from stampfold.solid import (
    build_box,
    build_cube,
    build_dodecahedron,
    build_icosahedron,
    build_octahedron,
    build_tetramonohedron,
)
from stampfold.solvers import (
    PENTAGON_BASIS,
    decompose_integer_xy,
    enumerate_lattices,
    fold_box,
    fold_deltahedron,
    fold_dodecahedron,
    fold_tetramonohedron,
)
from stampfold.stamping import StampResult, stamp, traverse_counts
from stampfold.verify import verify_certificate
from conftest import LATIN_CROSS
from test_solid import pentagonal_bipyramid, triangular_bipyramid

YES_CERTS: list[tuple[Polygon, object, FoldingCertificate]] = []


def _report(criterion, detail):
    print("[ACCEPTANCE] criterion %s: PASS — %s" % (criterion, detail))


def _perturb(P: Polygon, idx: int = 0, dist: float = 0.05) -> Polygon:
    """Displace one vertex perpendicular to its neighbor chord (changes area)."""
    pts = P.vertices.copy()
    prev = pts[(idx - 1) % len(pts)]
    nxt = pts[(idx + 1) % len(pts)]
    chord = nxt - prev
    n = np.array([-chord[1], chord[0]])
    n = n / np.hypot(*n)
    for sign in (1.0, -1.0):
        moved = pts.copy()
        moved[idx] = moved[idx] + sign * dist * n
        try:
            return Polygon(moved)
        except Exception:
            continue
    raise AssertionError("could not perturb polygon at vertex %d" % idx)


# ---------------------------------------------------------------------------
# criterion 1: Latin cross folds to the cube in under a second


def test_criterion_1_latin_cross_cube():
    P = Polygon(LATIN_CROSS)
    t0 = time.time()
    out = fold_box(P, 1, 1, 1)
    wall = time.time() - t0
    assert out.certificates, "Latin cross must fold to the cube"
    rep = verify_certificate(P, build_cube(), out.certificates[0])
    assert rep.ok, rep.reasons
    assert wall < 1.0, "took %.2fs" % wall
    YES_CERTS.append((P, build_cube(), out.certificates[0]))
    _report(1, "YES with verified certificate in %.2fs" % wall)


# ---------------------------------------------------------------------------
# criterion 2: cube net census over all 35 hexominoes


def _free_polyominoes(n: int) -> list[frozenset]:
    shapes = {frozenset({(0, 0)})}
    for _ in range(n - 1):
        grown = set()
        for shape in shapes:
            for x, y in shape:
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    cell = (x + dx, y + dy)
                    if cell in shape:
                        continue
                    grown.add(_canon_polyomino(shape | {cell}))
        shapes = grown
    return sorted(shapes, key=sorted)


def _canon_polyomino(cells: frozenset) -> frozenset:
    best = None
    pts = list(cells)
    for flip in (False, True):
        q = [(-x, y) if flip else (x, y) for x, y in pts]
        for _ in range(4):
            q = [(-y, x) for x, y in q]
            mx = min(x for x, _ in q)
            my = min(y for _, y in q)
            cand = frozenset((x - mx, y - my) for x, y in q)
            if best is None or sorted(cand) < sorted(best):
                best = cand
    return best


def _polyomino_outline(cells: frozenset) -> Polygon:
    edges = set()
    for x, y in cells:
        for e in (
            ((x, y), (x + 1, y)),
            ((x + 1, y), (x + 1, y + 1)),
            ((x + 1, y + 1), (x, y + 1)),
            ((x, y + 1), (x, y)),
        ):
            rev = (e[1], e[0])
            if rev in edges:
                edges.remove(rev)
            else:
                edges.add(e)
    nxt = {a: b for a, b in edges}
    start = min(nxt)
    ring = [start]
    cur = nxt[start]
    while cur != start:
        ring.append(cur)
        cur = nxt[cur]
    return Polygon(np.array(ring, float))


def test_criterion_2_cube_net_census():
    t0 = time.time()
    nets = enumerate_edge_unfoldings(build_cube())
    assert len(nets) == 11, "cube must have exactly 11 congruence-distinct nets"
    net_sigs = {congruence_signature(n) for n in nets}

    hexominoes = _free_polyominoes(6)
    assert len(hexominoes) == 35
    yes = no = 0
    cube = build_cube()
    for cells in hexominoes:
        P = _polyomino_outline(cells)
        is_net = congruence_signature(P) in net_sigs
        if is_net:
            out = fold_box(P, 1, 1, 1, first_only=True)
            assert out.certificates, "net hexomino rejected: %s" % sorted(cells)
            YES_CERTS.append((P, cube, out.certificates[0]))
            yes += 1
        else:
            out = fold_box(P, 1, 1, 1, first_only=False)
            assert not out.certificates, (
                "non-net hexomino accepted: %s" % sorted(cells)
            )
            no += 1
    wall = time.time() - t0
    assert yes == 11 and no == 24
    assert wall < 60.0, "took %.1fs" % wall
    _report(2, "11 nets accepted, 24 non-nets refused in %.1fs" % wall)


# ---------------------------------------------------------------------------
# criterion 3: tetramonohedron star unfoldings


def _random_acute_triangle(rng):
    A = rng.uniform(50.0, 80.0)
    B = rng.uniform(50.0, 80.0)
    C = 180.0 - A - B
    s = rng.uniform(0.5, 1.5)
    return tuple(
        s * math.sin(math.radians(x)) for x in (A, B, C)
    )


def test_criterion_3_tetramonohedron_star_unfoldings(triangle_side2):
    t0 = time.time()
    out = fold_tetramonohedron(triangle_side2, 1, 1, 1)
    assert out.certificates, "equilateral side-2 triangle must fold to the tetrahedron"
    YES_CERTS.append(
        (triangle_side2, build_tetramonohedron(1, 1, 1), out.certificates[0])
    )

    rng = np.random.default_rng(20260809)
    for trial in range(50):
        a, b, c = _random_acute_triangle(rng)
        P = star_unfolding_tetramonohedron(a, b, c)
        res = fold_tetramonohedron(P, a, b, c)
        assert res.certificates, "star unfolding %d rejected (%.3f,%.3f,%.3f)" % (
            trial, a, b, c,
        )
        YES_CERTS.append((P, build_tetramonohedron(a, b, c), res.certificates[0]))
        bad = _perturb(P, idx=int(rng.integers(0, P.n)), dist=0.05 * a)
        res_bad = fold_tetramonohedron(bad, a, b, c)
        assert not res_bad.certificates, "perturbed triangle %d accepted" % trial
    wall = time.time() - t0
    assert wall < 120.0, "took %.1fs" % wall
    _report(3, "1 + 50 star unfoldings accepted, 50 perturbed refused in %.1fs" % wall)


# ---------------------------------------------------------------------------
# criterion 4: oracle round-trips for all five targets


def _solve_for(P, name, Q):
    if name == "cube":
        return fold_box(P, 1, 1, 1)
    if name == "tetra":
        return fold_tetramonohedron(P, 1, 1, 1)
    if name == "dodeca":
        return fold_dodecahedron(P)
    return fold_deltahedron(P, Q)


@pytest.mark.parametrize(
    "name,builder,budget_s",
    [
        ("cube", build_cube, None),
        ("tetra", lambda: build_tetramonohedron(1, 1, 1), None),
        ("octa", build_octahedron, None),
        ("icosa", build_icosahedron, None),
        ("dodeca", build_dodecahedron, 300.0),
    ],
)
def test_criterion_4_roundtrips(name, builder, budget_s):
    Q = builder()
    total = 0.0
    worst = 0.0
    for seed in range(25):
        net = edge_unfolding(Q, random_cut_tree(Q, seed))
        assert not isinstance(net, OverlapFailure)
        t0 = time.time()
        out = _solve_for(net, name, Q)
        dt = time.time() - t0
        total += dt
        worst = max(worst, dt)
        assert out.certificates, "%s net %d rejected" % (name, seed)
        YES_CERTS.append((net, Q, out.certificates[0]))
        if budget_s is not None:
            assert dt < budget_s, "%s net %d took %.1fs" % (name, seed, dt)
        bad = _perturb(net, idx=seed % net.n, dist=0.05)
        res_bad = _solve_for(bad, name, Q)
        assert not res_bad.certificates, "perturbed %s net %d accepted" % (name, seed)
    _report(
        4,
        "%s: 25 round-trips accepted, 25 perturbed refused "
        "(total %.1fs, worst %.1fs)" % (name, total, worst),
    )


# ---------------------------------------------------------------------------
# criterion 5: Gauss-Bonnet across every buildable solid


def test_criterion_5_gauss_bonnet():
    solids = [
        build_cube(),
        build_box(1, 2, 3),
        build_box(2, 2, 5),
        build_tetramonohedron(1, 1, 1),
        build_tetramonohedron(0.5, 0.6, 0.7),
        build_tetramonohedron(1.0, 1.2, 1.4),
        build_octahedron(),
        build_icosahedron(),
        build_dodecahedron(),
    ]
    from stampfold.solid import build_deltahedron

    solids.append(build_deltahedron(*triangular_bipyramid()))
    solids.append(build_deltahedron(*pentagonal_bipyramid()))
    for Q in solids:
        total = sum(360.0 - cc for cc in Q.co_curvature if cc < 360.0 - 1e-9)
        assert abs(total - 720.0) <= 1e-7, (Q.kind, total)
    _report(5, "curvature sums to 720 within 1e-7 deg on %d solids" % len(solids))


# ---------------------------------------------------------------------------
# criterion 6: invariant suites


def test_criterion_6_invariants(latin_cross, triangle_side2):
    # every accepted stamping during representative solves keeps the tree and
    # area invariants and the per-edge traverse bounds
    accepted = []
    orig_stamp = solvers_mod.stamp

    def spy(P, Q, placement, seed, component=0):
        res = orig_stamp(P, Q, placement, seed, component)
        if isinstance(res, StampResult):
            accepted.append((P, Q, res))
        return res

    octa = build_octahedron()
    octa_net = edge_unfolding(octa, random_cut_tree(octa, 1))
    dod = build_dodecahedron()
    dod_net = edge_unfolding(dod, random_cut_tree(dod, 1))
    solvers_mod.stamp = spy
    try:
        assert fold_box(latin_cross, 1, 1, 1, first_only=False).certificates
        assert fold_tetramonohedron(
            triangle_side2, 1, 1, 1, first_only=False
        ).certificates
        assert fold_deltahedron(octa_net, octa).certificates
        assert fold_dodecahedron(dod_net).certificates
    finally:
        solvers_mod.stamp = orig_stamp
    assert accepted
    for P, Q, res in accepted:
        assert res.tree.is_tree()
        assert sum(r.area for r in res.tree.regions) == pytest.approx(
            P.area, abs=1e-7 * max(1.0, P.perimeter)
        )
        counts = traverse_counts(res.tree, P)
        if Q.kind in ("cube", "box"):
            amin = min(getattr(Q, "box_dims", (1, 1, 1)))
            for e in range(P.n):
                ell = float(P.edge_lengths[e])
                assert counts[e] <= math.ceil(2 * ell / amin) + 2
        elif Q.kind in ("octahedron", "icosahedron", "deltahedron") or (
            Q.kind == "tetramonohedron" and Q.surface_area == pytest.approx(math.sqrt(3))
        ):
            for e in range(P.n):
                ell = float(P.edge_lengths[e])
                assert counts[e] <= math.ceil(4 * ell / math.sqrt(3)) + 2

    # glue order-independence: 20 randomized gluing orders per accepted net
    import numpy as _np

    from stampfold.solid import Placement

    checks = 0
    for P, Q, res in accepted[:6]:
        base = glue_check(res.boundary, Q)
        for seedo in range(20):
            out = glue_check(res.boundary, Q, order_seed=seedo)
            assert isinstance(out, FoldingCertificate) == isinstance(
                base, FoldingCertificate
            )
            checks += 1

    # rigid-motion and relabel invariance of decisions, 20 transforms per net
    rng = np.random.default_rng(99)
    for P, target in ((latin_cross, "cube"), (triangle_side2, "tetra")):
        for _ in range(20):
            theta = rng.uniform(0, 2 * math.pi)
            R = np.array(
                [
                    [math.cos(theta), -math.sin(theta)],
                    [math.sin(theta), math.cos(theta)],
                ]
            )
            shift = rng.uniform(-10, 10, size=2)
            k = int(rng.integers(0, P.n))
            moved = Polygon(np.roll(P.vertices @ R.T + shift, k, axis=0))
            if target == "cube":
                assert fold_box(moved, 1, 1, 1).certificates
            else:
                assert fold_tetramonohedron(moved, 1, 1, 1).certificates
    _report(
        6,
        "tree/area/traverse on %d stampings, %d glue orders, 40 rigid motions"
        % (len(accepted), checks),
    )


# ---------------------------------------------------------------------------
# criterion 7: enumeration bounds


def test_criterion_7_enumeration_checks():
    from stampfold.geometry import Tolerance

    tol = Tolerance.for_scale(4.0)
    cands = enumerate_lattices((0, 0), (2, 0), 1, 1, 1, L=8, tol=tol)
    pairs = {c.coefficients for c in cands}
    assert pairs == {(2, 0), (-2, 0), (0, 2), (0, -2), (2, -2), (-2, 2)}
    assert len(pairs) == 6

    assert decompose_integer_xy(25) == [(0, 5), (3, 4), (4, 3), (5, 0)]

    b = PENTAGON_BASIS
    lhs = np.array([math.cos(4 * math.pi / 5), math.sin(4 * math.pi / 5)])
    err = float(np.hypot(*(lhs - (-b[0] + b[1] - b[2] + b[3]))))
    assert err < 1e-12
    assert np.allclose(b[0], (1.0, 0.0))
    _report(7, "6 lattice pairs, 4 xy pairs, pentagon identity err %.2e" % err)


# ---------------------------------------------------------------------------
# criterion 8: independent verifier over every YES certificate


def test_criterion_8_verifier_independence(latin_cross):
    if not YES_CERTS:
        out = fold_box(latin_cross, 1, 1, 1)
        YES_CERTS.append((latin_cross, build_cube(), out.certificates[0]))
    worst_face = 0.0
    worst_overlap = 0.0
    for P, Q, cert in YES_CERTS:
        rep = verify_certificate(P, Q, cert, rel_area=1e-6, overlap_frac=1e-9)
        assert rep.ok, rep.reasons
        for f, err in rep.face_area_errors.items():
            worst_face = max(worst_face, err / Q.face_area(f))
        worst_overlap = max(worst_overlap, rep.max_overlap_fraction)
    _report(
        8,
        "%d certificates verified (worst face err %.2e rel, overlap %.2e)"
        % (len(YES_CERTS), worst_face, worst_overlap),
    )
