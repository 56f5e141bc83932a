"""Per-target folding drivers.

Every solver follows the same scheme: enumerate anchor data (vertex pairs,
integer decompositions, initial placements), stamp each candidate placement,
zip-glue the survivors, and deduplicate certificates by their crease sets.
An empty list means the polygon does not fold to the target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Polygon, seg_point_distance
from .gluing import FoldingCertificate, GlueFailure, glue_check
from .solid import (
    NonAcuteTriangle,
    Placement,
    SolidModel,
    build_box,
    build_dodecahedron,
    build_icosahedron,
    build_octahedron,
    build_solid,
    build_tetramonohedron,
)
from .stamping import StampReject, StampResult, stamp

AREA_RTOL = 1e-6


@dataclass
class LatticeCandidate:
    k_a: int
    k_b: int
    anchor: np.ndarray
    v_a: np.ndarray
    v_b: np.ndarray
    rotation: float
    mirrored: bool

    @property
    def coefficients(self) -> tuple[int, int]:
        return (self.k_a, self.k_b)


@dataclass
class CoefficientTuple:
    coeffs: tuple[int, ...]


@dataclass
class SolveStats:
    candidates: int = 0
    stampings: int = 0
    glue_checks: int = 0


@dataclass
class FoldOutcome:
    certificates: list[FoldingCertificate] = field(default_factory=list)
    stats: SolveStats = field(default_factory=SolveStats)
    warnings: list[str] = field(default_factory=list)


class _Runner:
    """Stamp/glue executor with memoized placements and crease-set dedup."""

    def __init__(self, P: Polygon, Q: SolidModel, first_only: bool):
        self.P = P
        self.Q = Q
        self.first_only = first_only
        self.outcome = FoldOutcome()
        self._memo: dict = {}
        self._keys: set = set()
        self._quantum = 1e-7 * max(1.0, P.diameter)

    def done(self) -> bool:
        return self.first_only and bool(self.outcome.certificates)

    def _placement_key(self, placement: Placement, seed):
        q = self._quantum
        return (
            placement.face,
            placement.mirrored,
            tuple(np.round(placement.matrix.ravel() / 1e-9).astype(np.int64)),
            tuple(np.round(np.asarray(placement.offset) / q).astype(np.int64)),
            tuple(np.round(np.asarray(seed, float) / q).astype(np.int64)),
        )

    def try_placement(self, placement: Placement, seed) -> bool:
        self.outcome.stats.candidates += 1
        key = self._placement_key(placement, seed)
        if key in self._memo:
            return self._memo[key]
        found = False
        ci = 0
        while True:
            try:
                res = stamp(self.P, self.Q, placement, seed, component=ci)
            except ValueError:
                break  # seed components exhausted
            self.outcome.stats.stampings += 1
            if isinstance(res, StampReject):
                if res.reason == "NoSeedComponent":
                    break
                ci += 1
                continue
            self.outcome.stats.glue_checks += 1
            out = glue_check(res.boundary, self.Q)
            if isinstance(out, FoldingCertificate):
                self._add(out)
                found = True
            ci += 1
        self._memo[key] = found
        return found

    def _add(self, cert: FoldingCertificate):
        key = cert.crease_key(self._quantum)
        if key in self._keys:
            return
        self._keys.add(key)
        self.outcome.certificates.append(cert)

    def finish(self) -> FoldOutcome:
        self.outcome.certificates.sort(
            key=lambda c: (len(c.creases), sorted(c.crease_key(self._quantum)))
        )
        return self.outcome


def _area_matches(P: Polygon, target_area: float) -> bool:
    return abs(P.area - target_area) <= AREA_RTOL * max(1.0, target_area)


def _unit(angle_rad: float) -> np.ndarray:
    return np.array([math.cos(angle_rad), math.sin(angle_rad)])


def _placement_onto(Q: SolidModel, face: int, ring: np.ndarray,
                    eps: float) -> list[Placement]:
    """All isometries carrying the face chart onto the convex ring, any chirality."""
    chart = Q.face_chart(face)
    k = len(chart)
    if len(ring) != k:
        return []
    out = []
    chart_len = [
        float(np.hypot(*(chart[(i + 1) % k] - chart[i]))) for i in range(k)
    ]
    for mirrored in (False, True):
        ref = ring if not mirrored else ring[::-1]
        for off in range(k):
            ok = True
            for i in range(k):
                rl = float(
                    np.hypot(*(ref[(off + i + 1) % k] - ref[(off + i) % k]))
                )
                if abs(rl - chart_len[i]) > 10 * eps:
                    ok = False
                    break
            if not ok:
                continue
            src = chart[0]
            src_dir = chart[1] - chart[0]
            dst = ref[off]
            dst_dir = ref[(off + 1) % k] - ref[off]
            pl = Placement.from_point_dir(
                face, dst, dst_dir, mirrored, src, src_dir
            )
            img = pl.apply(chart)
            tgt = np.array([ref[(off + i) % k] for i in range(k)])
            if np.max(np.hypot(*(img - tgt).T)) <= 100 * eps:
                out.append(pl)
    return out


# ---------------------------------------------------------------------------
# integer enumerations


def enumerate_lattices(m, m_prime, a: float, b: float, c: float,
                       L: float, tol) -> list[LatticeCandidate]:
    """Triangular (a,b,c) lattices with grid points on both m and m_prime.

    Scans k_a in [-ceil(L/a), ceil(L/a)] and solves the norm equation for k_b;
    every integer solution is emitted in both chiralities.
    """
    m = np.asarray(m, float)
    m_prime = np.asarray(m_prime, float)
    delta = m_prime - m
    d = float(np.hypot(*delta))
    if d <= tol.eps_len:
        return []
    cosg = (a * a + b * b - c * c) / (2.0 * a * b)
    sing = math.sqrt(max(0.0, 1.0 - cosg * cosg))
    va0 = np.array([a, 0.0])
    vb0 = np.array([b * cosg, b * sing])
    dot_ab = a * b * cosg

    pairs = set()
    kmax = math.ceil(L / a)
    for k_a in range(-kmax, kmax + 1):
        A = b * b
        B = 2.0 * k_a * dot_ab
        C = k_a * k_a * a * a - d * d
        disc = B * B - 4.0 * A * C
        if disc < -1e-9 * max(1.0, d * d):
            continue
        for sgn in (1.0, -1.0):
            root = (-B + sgn * math.sqrt(max(disc, 0.0))) / (2.0 * A)
            k_b = round(root)
            if abs(root - k_b) > tol.eps_int:
                continue
            combo = k_a * va0 + k_b * vb0
            if abs(float(np.hypot(*combo)) - d) > 100 * tol.eps_len:
                continue
            pairs.add((k_a, int(k_b)))

    out = []
    for k_a, k_b in sorted(pairs):
        for mirrored in (False, True):
            vb = vb0 if not mirrored else np.array([b * cosg, -b * sing])
            combo = k_a * va0 + k_b * vb
            theta = math.atan2(delta[1], delta[0]) - math.atan2(combo[1], combo[0])
            R = np.array(
                [[math.cos(theta), -math.sin(theta)],
                 [math.sin(theta), math.cos(theta)]]
            )
            out.append(
                LatticeCandidate(
                    k_a=k_a,
                    k_b=k_b,
                    anchor=m,
                    v_a=R @ va0,
                    v_b=R @ vb,
                    rotation=math.degrees(theta),
                    mirrored=mirrored,
                )
            )
    return out


def decompose_integer_xy(ell: float, eps_int: float = 1e-7) -> list[tuple[int, int]]:
    """Nonnegative integer pairs (X, Y) with X^2 + Y^2 = ell."""
    if ell <= 0:
        return []
    out = []
    for X in range(0, int(math.floor(math.sqrt(ell + eps_int))) + 1):
        y2 = ell - X * X
        if y2 < -eps_int:
            continue
        Y = math.sqrt(max(y2, 0.0))
        Yi = round(Y)
        if abs(Y - Yi) <= eps_int:
            out.append((X, int(Yi)))
    return out


PENTAGON_BASIS = [
    np.array([math.cos(k * math.pi / 5.0), math.sin(k * math.pi / 5.0)])
    for k in range(4)
]
TRIANGLE_BASIS = [
    np.array([1.0, 0.0]),
    np.array([0.5, math.sqrt(3.0) / 2.0]),
]


def enumerate_decompositions(delta, basis, bound: int,
                             eps_int: float = 1e-7) -> list[CoefficientTuple]:
    """Integer coefficient tuples whose basis combination matches |delta|."""
    delta = np.asarray(delta, float)
    d = float(np.hypot(*delta))
    if len(basis) == 4:
        tuples = _pentagon_tuples(d, bound, eps_int)
    elif len(basis) == 2:
        tuples = _triangle_tuples(d, bound, eps_int)
    else:
        raise ValueError("basis must be the pentagon quadruple or triangle pair")
    return [CoefficientTuple(t) for t in tuples]


def _triangle_tuples(d: float, bound: int, eps_int: float) -> list[tuple[int, int]]:
    out = set()
    for B0 in range(-bound, bound + 1):
        disc = 4.0 * d * d - 3.0 * B0 * B0
        if disc < -eps_int:
            continue
        for sgn in (1.0, -1.0):
            root = (-B0 + sgn * math.sqrt(max(disc, 0.0))) / 2.0
            B1 = round(root)
            if abs(root - B1) <= eps_int and abs(B1) <= bound:
                out.add((B0, int(B1)))
    return sorted(out)


def _pentagon_tuples(d: float, bound: int, eps_int: float) -> list[tuple[int, ...]]:
    """Solve |B0 b0 + B1 b1 + B2 b2 + B3 b3| = d over integers, |Bk| <= bound.

    B3 comes from the norm equation; candidates outside the slab where the
    component orthogonal to b3 already exceeds d cannot have real roots and
    are pruned before the scan.
    """
    b0, b1, b2, b3 = PENTAGON_BASIS
    c0 = float(b3[0] * b0[1] - b3[1] * b0[0])
    c1 = float(b3[0] * b1[1] - b3[1] * b1[0])
    c2 = float(b3[0] * b2[1] - b3[1] * b2[0])
    out = set()
    B1v = np.arange(-bound, bound + 1)
    margin = 10 * eps_int + 1e-9
    for B0 in range(-bound, bound + 1):
        perp01 = B0 * c0 + B1v * c1
        lo = (-d - perp01) / c2
        hi = (d - perp01) / c2
        lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)
        lo = np.ceil(np.maximum(lo - margin, -bound)).astype(np.int64)
        hi = np.floor(np.minimum(hi + margin, bound)).astype(np.int64)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        if total == 0:
            continue
        B1r = np.repeat(B1v, counts)
        starts = np.repeat(lo, counts)
        offsets = np.arange(total) - np.repeat(
            np.cumsum(counts) - counts, counts
        )
        B2r = starts + offsets
        wx = B0 * b0[0] + B1r * b1[0] + B2r * b2[0]
        wy = B0 * b0[1] + B1r * b1[1] + B2r * b2[1]
        p = wx * b3[0] + wy * b3[1]
        disc = p * p - (wx * wx + wy * wy) + d * d
        ok = disc >= -1e-9
        if not np.any(ok):
            continue
        sq = np.sqrt(np.maximum(disc, 0.0))
        for sgn in (1.0, -1.0):
            root = -p + sgn * sq
            B3 = np.round(root)
            hit = ok & (np.abs(root - B3) <= eps_int) & (np.abs(B3) <= bound)
            for j in np.nonzero(hit)[0]:
                out.add((B0, int(B1r[j]), int(B2r[j]), int(B3[j])))
    return sorted(out)


def _coefficient_bound(P: Polygon) -> int:
    return int(math.ceil(P.perimeter)) + 4 * P.n + 16


# ---------------------------------------------------------------------------
# tetramonohedron (types 1-3)


def _heron4(a, b, c) -> float:
    s = 0.5 * (a + b + c)
    return 4.0 * math.sqrt(max(s * (s - a) * (s - b) * (s - c), 0.0))


def _lattice_cells(cand: LatticeCandidate):
    m, va, vb = cand.anchor, cand.v_a, cand.v_b
    cells = []
    for u in (m, m - va, m - vb):
        cells.append(np.array([u, u + va, u + vb]))
    for u in (m - va, m - vb, m - va - vb):
        cells.append(np.array([u + va, u + vb, u + va + vb]))
    return cells


def _try_lattice(runner: _Runner, cand: LatticeCandidate, seed) -> None:
    Q, P = runner.Q, runner.P
    eps = P.tol.eps_len
    for cell in _lattice_cells(cand):
        if not any(
            np.hypot(*(v - np.asarray(seed, float))) <= 10 * eps for v in cell
        ):
            continue
        placements = _placement_onto(Q, 0, cell, eps)
        for pl in placements:
            if runner.try_placement(pl, seed):
                return  # same lattice: any accepted root yields the same folding
            if runner.done():
                return


def _type2_belts(P: Polygon):
    """Edge pairs bounding a rolling belt, with the seam translation."""
    n = P.n
    V = P.vertices
    ang = P.angles
    eps = P.tol.eps_len
    eps_a = P.tol.eps_angle
    belts = []
    for i in range(n):
        for j in range(i + 1, n):
            e0, e1 = P.edge(i)
            f0, f1 = P.edge(j)
            le = float(P.edge_lengths[i])
            lf = float(P.edge_lengths[j])
            if abs(le - lf) > 10 * eps:
                continue
            de = (e1 - e0) / le
            df = (f1 - f0) / lf
            if abs(de[0] * df[1] - de[1] * df[0]) > 1e-9 or float(de @ df) > 0:
                continue  # belt mouths are anti-parallel along the boundary
            cnt = j - i
            if cnt != n - cnt:
                continue
            if abs(ang[i] + ang[(i + 1) % n] - 180.0) > eps_a:
                continue
            if abs(ang[j] + ang[(j + 1) % n] - 180.0) > eps_a:
                continue
            tau = None
            ok = True
            for k in range(cnt):
                p1 = V[(i + 1 + k) % n]
                p2 = V[(i - k) % n]
                t = p2 - p1
                if tau is None:
                    tau = t
                elif np.hypot(*(t - tau)) > 10 * eps:
                    ok = False
                    break
                if 0 < k < cnt - 1:
                    if abs(ang[(i + 1 + k) % n] + ang[(i - k) % n] - 360.0) > eps_a:
                        ok = False
                        break
            if ok:
                belts.append((i, j, tau))
    return belts


def _type2(runner: _Runner, a, b, c):
    """Rolling-belt foldings: pin the belt family to the requested (a,b,c)."""
    P, Q = runner.P, runner.Q
    eps = P.tol.eps_len
    belts = _type2_belts(P)
    if not belts:
        return
    sides = (a, b, c)
    for i, j, tau in belts:
        runner.outcome.warnings.append(
            "rolling-belt family along edges %d and %d: this polygon folds to "
            "infinitely many tetramonohedra" % (i, j)
        )
        e0, e1 = P.edge(i)
        le = float(P.edge_lengths[i])
        w = le / 2.0
        ehat = (e1 - e0) / le
        f0, _ = P.edge(j)
        off = f0 - e0
        h = abs(float(off[0] * ehat[1] - off[1] * ehat[0]))
        nhat = np.array([-ehat[1], ehat[0]])
        if float((f0 - e0) @ nhat) < 0:
            nhat = -nhat
        for s0_idx in range(3):
            if abs(sides[s0_idx] - w) > 10 * eps:
                continue
            rest = [sides[k] for k in range(3) if k != s0_idx]
            for r1, r2 in (rest, rest[::-1]):
                num = r1 * r1 - r2 * r2 + w * w
                delta = num / (2.0 * w)
                if abs(h * h + delta * delta - r1 * r1) > 1e-6 * max(1.0, r1 * r1):
                    continue
                B1 = 0.5 * (e0 + e1)
                B2 = B1 + w * ehat
                T1 = B1 + delta * ehat + h * nhat
                ring = np.array([B1, B2, T1])
                for pl in _placement_onto(Q, 0, ring, eps):
                    runner.try_placement(pl, B1)
                    if runner.done():
                        return


def _type3_v4(P: Polygon, edge_i: int):
    """Walk from the midpoint of edge_i both ways; locate the far fold point.

    The edge-length sequences on the two sides mirror each other until the
    doubled arm of the far fold point breaks the symmetry; that point sits
    at the middle of the leading excess of the longer edge.
    """
    n = P.n
    eps = 10 * P.tol.eps_len
    half = float(P.edge_lengths[edge_i]) / 2.0
    fwd = [half] + [float(P.edge_lengths[(edge_i + 1 + k) % n]) for k in range(n - 1)]
    bwd = [half] + [float(P.edge_lengths[(edge_i - k) % n]) for k in range(1, n)]
    pos = 0.0
    for lf, lb in zip(fwd, bwd):
        if abs(lf - lb) <= eps:
            pos += lf
            continue
        direction = +1 if lf > lb else -1
        return _point_at_arc(P, edge_i, direction, pos + abs(lf - lb) / 2.0)
    return None


def _point_at_arc(P: Polygon, edge_i: int, direction: int, dist: float):
    """Point at arclength dist from the midpoint of edge_i along the boundary."""
    n = P.n
    a0, a1 = P.edge(edge_i)
    mid = 0.5 * (a0 + a1)
    s0, s1 = (mid, a1) if direction > 0 else (mid, a0)
    idx = edge_i
    remaining = dist
    while True:
        L = float(np.hypot(*(s1 - s0)))
        if remaining <= L + 1e-12:
            u = (s1 - s0) / L if L > 0 else np.zeros(2)
            return s0 + u * remaining
        remaining -= L
        idx = (idx + direction) % n
        b0, b1 = P.edge(idx)
        s0, s1 = (b0, b1) if direction > 0 else (b1, b0)


def fold_tetramonohedron(P: Polygon, a: float, b: float, c: float,
                         first_only: bool = True) -> FoldOutcome:
    """All foldings of P onto the tetramonohedron Q(a,b,c), via Types 1-3."""
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        if x * x + y * y <= z * z + 1e-12 * max(a, b, c) ** 2:
            raise NonAcuteTriangle("(%.6g, %.6g, %.6g) is not acute" % (a, b, c))
    Q = build_tetramonohedron(a, b, c)
    runner = _Runner(P, Q, first_only)
    if not _area_matches(P, _heron4(a, b, c)):
        return runner.finish()

    L = P.perimeter
    # Type 1: both fold points are edge midpoints on a common lattice
    for i in range(P.n):
        for j in range(i + 1, P.n):
            mi = 0.5 * (P.edge(i)[0] + P.edge(i)[1])
            mj = 0.5 * (P.edge(j)[0] + P.edge(j)[1])
            for cand in enumerate_lattices(mi, mj, a, b, c, L, P.tol):
                _try_lattice(runner, cand, mi)
                if runner.done():
                    return runner.finish()

    # Type 2: rolling belts
    _type2(runner, a, b, c)
    if runner.done():
        return runner.finish()

    # Type 3: one midpoint anchor; the far fold point from the length scan
    for i in range(P.n):
        a0, a1 = P.edge(i)
        v3 = 0.5 * (a0 + a1)
        v4 = _type3_v4(P, i)
        if v4 is None:
            continue
        for cand in enumerate_lattices(v3, v4, a, b, c, L, P.tol):
            _try_lattice(runner, cand, v3)
            if runner.done():
                return runner.finish()
    return runner.finish()


# ---------------------------------------------------------------------------
# box


def _wedge_contains_quadrant(P: Polygon, vi: int, start_dir, eps_angle) -> bool:
    """Does the interior wedge of P at vertex vi contain [start, start+90deg]?"""
    n = P.n
    v = P.vertices[vi]
    nxt = P.vertices[(vi + 1) % n]
    u0 = nxt - v
    alpha = float(P.angles[vi])
    beta = math.degrees(
        math.atan2(
            u0[0] * start_dir[1] - u0[1] * start_dir[0],
            u0[0] * start_dir[0] + u0[1] * start_dir[1],
        )
    ) % 360.0
    slack = max(eps_angle, 1e-9)
    if beta > 360.0 - slack:
        beta = 0.0
    return beta <= alpha - 90.0 + slack


def fold_box(P: Polygon, a: int, b: int, c: int,
             first_only: bool = True) -> FoldOutcome:
    """Foldings of P onto an a x b x c box with integer sides."""
    Q = build_box(a, b, c)
    a, b, c = Q.box_dims
    runner = _Runner(P, Q, first_only)
    if not _area_matches(P, 2.0 * (a * b + b * c + c * a)):
        return runner.finish()
    eps = P.tol.eps_len

    dim_cases = sorted({(a, b), (a, c), (b, c), (b, a), (c, a), (c, b)})
    face_of_dims = {}
    for f in range(len(Q.faces)):
        chart = Q.face_chart(f)
        w = float(np.hypot(*(chart[1] - chart[0])))
        h = float(np.hypot(*(chart[2] - chart[1])))
        face_of_dims.setdefault(
            (int(round(w)), int(round(h))), f
        )
        face_of_dims.setdefault((int(round(h)), int(round(w))), f)

    anchors = [
        i for i in range(P.n) if abs(P.angles[i] - 270.0) <= P.tol.eps_angle
    ]
    for i in anchors:
        pi = P.vertices[i]
        for j in anchors:
            if j == i:
                continue
            pj = P.vertices[j]
            ell = float(((pj - pi) ** 2).sum())
            for X, Y in decompose_integer_xy(ell, P.tol.eps_int):
                delta = pj - pi
                base = math.atan2(delta[1], delta[0]) - math.atan2(Y, X)
                ux = _unit(base)
                uy = _unit(base + math.pi / 2.0)
                for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
                    quad_start = {
                        (1, 1): ux,
                        (-1, 1): uy,
                        (-1, -1): -ux,
                        (1, -1): -uy,
                    }[(sx, sy)]
                    if not _wedge_contains_quadrant(
                        P, i, quad_start, P.tol.eps_angle
                    ):
                        continue
                    for d1, d2 in dim_cases:
                        f = face_of_dims[(d1, d2)]
                        c0 = pi
                        c1 = pi + d1 * sx * ux
                        c2 = c1 + d2 * sy * uy
                        c3 = pi + d2 * sy * uy
                        ring = np.array([c0, c1, c2, c3])
                        if (sx * sy) < 0:
                            ring = ring[::-1]
                            ring = np.roll(ring, 1, axis=0)  # keep pi first
                        pls = _placement_onto(Q, f, ring, eps)
                        seen_chir = set()
                        for pl in pls:
                            if pl.mirrored in seen_chir:
                                continue  # box symmetry makes the rest redundant
                            seen_chir.add(pl.mirrored)
                            runner.try_placement(pl, pi)
                            if runner.done():
                                return runner.finish()
    return runner.finish()


# ---------------------------------------------------------------------------
# dodecahedron


def fold_dodecahedron(P: Polygon, first_only: bool = True) -> FoldOutcome:
    """Foldings of P onto the unit regular dodecahedron."""
    Q = build_dodecahedron()
    runner = _Runner(P, Q, first_only)
    if not _area_matches(P, 3.0 * math.sqrt(25.0 + 10.0 * math.sqrt(5.0))):
        return runner.finish()

    bound = _coefficient_bound(P)
    anchors = [
        i for i in range(P.n) if abs(P.angles[i] - 324.0) <= P.tol.eps_angle
    ]
    for i in anchors:
        pi = P.vertices[i]
        for j in anchors:
            if j == i:
                continue
            delta = P.vertices[j] - pi
            for tup in enumerate_decompositions(delta, PENTAGON_BASIS, bound,
                                                P.tol.eps_int):
                u = sum(
                    tup.coeffs[k] * PENTAGON_BASIS[k] for k in range(4)
                )
                nu = float(np.hypot(*u))
                if nu <= P.tol.eps_len:
                    continue
                base = math.atan2(delta[1], delta[0]) - math.atan2(u[1], u[0])
                for k in range(4):
                    dirv = _unit(base + k * math.pi / 5.0)
                    for mirrored in (False, True):
                        pl = Placement.from_point_dir(
                            0, pi, dirv, mirrored,
                            Q.face_chart(0)[0],
                            Q.face_chart(0)[1] - Q.face_chart(0)[0],
                        )
                        runner.try_placement(pl, pi)
                        if runner.done():
                            return runner.finish()
    return runner.finish()


# ---------------------------------------------------------------------------
# deltahedra


def fold_deltahedron(P: Polygon, Q: SolidModel,
                     first_only: bool = True) -> FoldOutcome:
    """Foldings of P onto a non-concave deltahedron (octahedron, icosahedron, ...)."""
    runner = _Runner(P, Q, first_only)
    if not _area_matches(P, Q.surface_area):
        return runner.finish()

    bound = _coefficient_bound(P)
    anchors_q = Q.anchor_vertices()
    if Q.kind in ("octahedron", "icosahedron") and anchors_q:
        anchors_q = anchors_q[:1]  # vertex-transitive: one anchor class

    per_vertex = []
    for qj in anchors_q:
        f, pos = Q.vertex_incidence[qj][0]
        chart = Q.face_chart(f)
        cp = chart[pos]
        cd = chart[(pos + 1) % len(chart)] - cp
        per_vertex.append((qj, f, cp, cd))

    for i in range(P.n):
        pi = P.vertices[i]
        matches = [
            (qj, f, cp, cd)
            for qj, f, cp, cd in per_vertex
            if abs(P.angles[i] - Q.co_curvature_at(qj)) <= P.tol.eps_angle
        ]
        if not matches:
            continue
        for j in range(P.n):
            if j == i:
                continue
            delta = P.vertices[j] - pi
            for tup in enumerate_decompositions(delta, TRIANGLE_BASIS, bound,
                                                P.tol.eps_int):
                u = tup.coeffs[0] * TRIANGLE_BASIS[0] + tup.coeffs[1] * TRIANGLE_BASIS[1]
                nu = float(np.hypot(*u))
                if nu <= P.tol.eps_len:
                    continue
                base = math.atan2(delta[1], delta[0]) - math.atan2(u[1], u[0])
                for extra in (0.0, math.pi / 3.0):
                    dirv = _unit(base + extra)
                    for mirrored in (False, True):
                        for qj, f, cp, cd in matches:
                            pl = Placement.from_point_dir(
                                f, pi, dirv, mirrored, cp, cd
                            )
                            runner.try_placement(pl, pi)
                            if runner.done():
                                return runner.finish()
    return runner.finish()


# ---------------------------------------------------------------------------
# dispatcher


def fold_report(P: Polygon, target: str, *, a=None, b=None, c=None,
                solid: SolidModel | None = None,
                first_only: bool = True) -> FoldOutcome:
    """Dispatch to the target-specific solver; area precheck happens inside."""
    t = target.lower()
    if t in ("tetra", "tetrahedron", "regulartetrahedron"):
        return fold_tetramonohedron(P, 1.0, 1.0, 1.0, first_only)
    if t in ("tetramono", "tetramonohedron"):
        return fold_tetramonohedron(P, a, b, c, first_only)
    if t == "cube":
        return fold_box(P, 1, 1, 1, first_only)
    if t == "box":
        return fold_box(P, a, b, c, first_only)
    if t in ("octa", "octahedron"):
        return fold_deltahedron(P, build_octahedron(), first_only)
    if t in ("icosa", "icosahedron"):
        return fold_deltahedron(P, build_icosahedron(), first_only)
    if t in ("dodeca", "dodecahedron"):
        return fold_dodecahedron(P, first_only)
    if t in ("delta", "deltahedron"):
        if solid is None:
            raise ValueError("deltahedron target needs an explicit solid")
        return fold_deltahedron(P, solid, first_only)
    raise ValueError("unknown target %r" % target)


def fold(P: Polygon, target: str, *, a=None, b=None, c=None,
         solid: SolidModel | None = None,
         first_only: bool = True) -> list[FoldingCertificate]:
    """Decide whether P folds to the target; certificates for every folding found."""
    return fold_report(
        P, target, a=a, b=b, c=c, solid=solid, first_only=first_only
    ).certificates
