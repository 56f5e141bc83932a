"""Planar primitives and epsilon-aware predicates.

All comparisons between lengths, angles and coordinates go through a
Tolerance triple; nothing in this module (or the modules built on it)
compares floats for exact equality.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class GeometryError(Exception):
    pass


class NonSimplePolygon(GeometryError):
    pass


class ZeroArea(GeometryError):
    pass


class DegenerateIntersection(GeometryError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Absolute slack for length, angle (degrees) and integrality tests."""

    eps_len: float
    eps_angle: float = 1e-7
    eps_int: float = 1e-7

    def __post_init__(self):
        if self.eps_len <= 0 or self.eps_angle <= 0 or self.eps_int <= 0:
            raise ValueError("tolerances must be strictly positive")

    @classmethod
    def for_scale(cls, diameter: float) -> "Tolerance":
        return cls(eps_len=1e-9 * max(1.0, diameter))


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


# ---------------------------------------------------------------------------
# scalar helpers


def cross2(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


def signed_area(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def seg_point_distance(a, b, p) -> float:
    """Distance from point p to the closed segment ab."""
    a = np.asarray(a, float)
    d = np.asarray(b, float) - a
    L2 = float(d @ d)
    if L2 == 0.0:
        return float(np.hypot(*(np.asarray(p, float) - a)))
    t = float((np.asarray(p, float) - a) @ d) / L2
    t = min(1.0, max(0.0, t))
    return float(np.hypot(*(a + t * d - np.asarray(p, float))))


def interior_angles(pts: np.ndarray) -> np.ndarray:
    """Interior angles (degrees) of a CCW simple polygon, in (0, 360)."""
    n = len(pts)
    prev = pts[np.arange(n) - 1]
    nxt = pts[(np.arange(n) + 1) % n]
    d_in = pts - prev
    d_out = nxt - pts
    turn = np.degrees(
        np.arctan2(
            d_in[:, 0] * d_out[:, 1] - d_in[:, 1] * d_out[:, 0],
            d_in[:, 0] * d_out[:, 0] + d_in[:, 1] * d_out[:, 1],
        )
    )
    return 180.0 - turn


def _segments_intersect(p1, p2, q1, q2, eps) -> bool:
    """True if closed segments p1p2 and q1q2 share a point (eps slack)."""

    def orient(a, b, c):
        v = cross2(b - a, c - a)
        if v > eps:
            return 1
        if v < -eps:
            return -1
        return 0

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if d1 != d2 and d3 != d4 and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    for a, b, c in ((q1, q2, p1), (q1, q2, p2), (p1, p2, q1), (p1, p2, q2)):
        if seg_point_distance(a, b, c) <= eps:
            return True
    return False


def collinear_overlap(a0, a1, b0, b1, eps) -> tuple[float, float] | None:
    """Overlap of segment b0b1 with segment a0a1 as params along a, if collinear.

    Returns (t0, t1) with t measured as arclength from a0, or None when the
    segments are not collinear or barely touch.
    """
    a0 = np.asarray(a0, float)
    d = np.asarray(a1, float) - a0
    L = float(np.hypot(*d))
    if L <= eps:
        return None
    u = d / L
    for p in (b0, b1):
        if abs(cross2(u, np.asarray(p, float) - a0)) > eps:
            return None
    t0 = float((np.asarray(b0, float) - a0) @ u)
    t1 = float((np.asarray(b1, float) - a0) @ u)
    lo, hi = min(t0, t1), max(t0, t1)
    lo, hi = max(lo, 0.0), min(hi, L)
    if hi - lo <= eps:
        return None
    return lo, hi


def merge_intervals(intervals, weld) -> list[tuple[float, float]]:
    if not intervals:
        return []
    ivs = sorted(intervals)
    out = [list(ivs[0])]
    for lo, hi in ivs[1:]:
        if lo <= out[-1][1] + weld:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


def subtract_intervals(base, cuts, weld) -> list[tuple[float, float]]:
    """base minus cuts, all as sorted disjoint (lo, hi) interval lists."""
    out = []
    for lo, hi in base:
        segs = [(lo, hi)]
        for clo, chi in cuts:
            nxt = []
            for slo, shi in segs:
                if chi <= slo + weld or clo >= shi - weld:
                    nxt.append((slo, shi))
                    continue
                if clo > slo + weld:
                    nxt.append((slo, min(clo, shi)))
                if chi < shi - weld:
                    nxt.append((max(chi, slo), shi))
            segs = nxt
        out.extend(s for s in segs if s[1] - s[0] > weld)
    return out


# ---------------------------------------------------------------------------
# polygon


class Polygon:
    """Simple polygon, canonicalized to CCW order with collinear vertices merged."""

    def __init__(self, vertices, tol: Tolerance | None = None):
        pts = np.asarray(vertices, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
            raise GeometryError("polygon needs at least 3 planar vertices")
        if not np.all(np.isfinite(pts)):
            raise GeometryError("polygon coordinates must be finite")
        if tol is None:
            span = float(np.max(np.ptp(pts, axis=0)))
            tol = Tolerance.for_scale(max(span, 1.0))
        self.tol = tol

        area2 = signed_area(pts)
        if area2 < 0:
            pts = pts[::-1].copy()
        pts = self._merge_collinear(pts, tol)
        if len(pts) < 3:
            raise ZeroArea("polygon area is numerically zero")
        self.vertices = pts
        self._validate_simple()
        if abs(signed_area(pts)) <= tol.eps_len**2:
            raise ZeroArea("polygon area is numerically zero")

        self.area = signed_area(pts)
        edges = np.roll(pts, -1, axis=0) - pts
        self.edge_lengths = np.hypot(edges[:, 0], edges[:, 1])
        self.perimeter = float(self.edge_lengths.sum())
        diffs = pts[:, None, :] - pts[None, :, :]
        self.diameter = float(np.sqrt((diffs**2).sum(axis=2)).max())
        self.angles = interior_angles(pts)
        self._triangles: list[np.ndarray] | None = None
        shortest = float(self.edge_lengths.min())
        if tol.eps_len >= 1e-3 * shortest:
            warnings.warn(
                "eps_len %.3g is large next to the shortest edge %.3g"
                % (tol.eps_len, shortest),
                stacklevel=2,
            )

    @staticmethod
    def _merge_collinear(pts, tol):
        changed = True
        while changed and len(pts) >= 3:
            changed = False
            ang = interior_angles(pts)
            keep = np.abs(ang - 180.0) > tol.eps_angle
            if not np.all(keep):
                pts = pts[keep]
                changed = True
        return pts

    def _validate_simple(self):
        pts = self.vertices
        n = len(pts)
        eps = self.tol.eps_len
        for i in range(n):
            a0, a1 = pts[i], pts[(i + 1) % n]
            if np.hypot(*(a1 - a0)) <= eps:
                raise NonSimplePolygon("degenerate zero-length edge")
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                b0, b1 = pts[j], pts[(j + 1) % n]
                if _segments_intersect(a0, a1, b0, b1, eps):
                    raise NonSimplePolygon(
                        "edges %d and %d intersect" % (i, j)
                    )
        ang = interior_angles(pts)
        spikes = (ang < self.tol.eps_angle) | (ang > 360.0 - self.tol.eps_angle)
        if np.any(spikes):
            raise NonSimplePolygon("zero-angle spike at a vertex")

    # -- queries ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def contains(self, pt) -> Location:
        pt = np.asarray(pt, float)
        eps = self.tol.eps_len
        for i in range(self.n):
            a, b = self.edge(i)
            if seg_point_distance(a, b, pt) <= eps:
                return Location.BOUNDARY
        # winding by summed signed angles; robust once boundary is excluded
        d = self.vertices - pt
        ang = np.arctan2(d[:, 1], d[:, 0])
        dang = np.diff(np.concatenate([ang, ang[:1]]))
        dang = (dang + np.pi) % (2 * np.pi) - np.pi
        total = float(dang.sum())
        return Location.INTERIOR if abs(total) > math.pi else Location.EXTERIOR

    def triangulation(self) -> list[np.ndarray]:
        if self._triangles is None:
            self._triangles = ear_triangulate(self.vertices, self.tol.eps_len)
        return self._triangles

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"vertices": [[float(x), float(y)] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict, tol: Tolerance | None = None) -> "Polygon":
        return cls(obj["vertices"], tol=tol)


def polygon_metrics(P: Polygon) -> dict:
    """Area, perimeter, diameter and interior angles of a validated polygon."""
    return {
        "area": P.area,
        "perimeter": P.perimeter,
        "diameter": P.diameter,
        "angles": [float(a) for a in P.angles],
    }


def contains_point(P: Polygon, pt) -> Location:
    return P.contains(pt)


# ---------------------------------------------------------------------------
# triangulation and clipping


def ear_triangulate(pts: np.ndarray, eps: float) -> list[np.ndarray]:
    """Ear-clipping triangulation of a CCW simple polygon."""
    idx = list(range(len(pts)))
    tris: list[np.ndarray] = []
    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 4 * len(pts) ** 2:
            raise GeometryError("triangulation failed to converge")
        n = len(idx)
        found = False
        for k in range(n):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % n]
            a, b, c = pts[i0], pts[i1], pts[i2]
            if cross2(b - a, c - a) <= eps * eps:
                continue  # reflex or degenerate corner
            ear = True
            for j in idx:
                if j in (i0, i1, i2):
                    continue
                if _point_in_triangle(pts[j], a, b, c, eps):
                    ear = False
                    break
            if ear:
                tris.append(np.array([a, b, c]))
                idx.pop(k)
                found = True
                break
        if not found:
            raise GeometryError("no ear found; polygon may be degenerate")
    a, b, c = (pts[i] for i in idx)
    tris.append(np.array([a, b, c]))
    return tris


def _point_in_triangle(p, a, b, c, eps) -> bool:
    s1 = cross2(b - a, p - a)
    s2 = cross2(c - b, p - b)
    s3 = cross2(a - c, p - c)
    return s1 >= -eps and s2 >= -eps and s3 >= -eps


def clip_convex(subject: np.ndarray, clip: np.ndarray, eps: float) -> np.ndarray | None:
    """Sutherland-Hodgman clip of a convex CCW subject against a convex CCW window.

    On-boundary points count as inside, which keeps shared edges intact.
    """
    out = [np.asarray(p, float) for p in subject]
    m = len(clip)
    for i in range(m):
        a, b = clip[i], clip[(i + 1) % m]
        d = b - a
        nrm = np.hypot(*d)
        if nrm <= eps:
            continue
        d = d / nrm
        if not out:
            return None
        res = []
        dist = [cross2(d, p - a) for p in out]
        k = len(out)
        for j in range(k):
            p, q = out[j], out[(j + 1) % k]
            dp, dq = dist[j], dist[(j + 1) % k]
            if dp >= -eps:
                res.append(p)
            if (dp > eps and dq < -eps) or (dp < -eps and dq > eps):
                t = dp / (dp - dq)
                res.append(p + t * (q - p))
        out = res
        if len(out) < 3:
            return None
    arr = _dedup_ring(np.array(out), eps)
    if arr is None or abs(signed_area(arr)) <= eps * _ring_perimeter(arr):
        return None
    return arr


def _dedup_ring(pts: np.ndarray, eps: float) -> np.ndarray | None:
    keep = []
    for p in pts:
        if not keep or np.hypot(*(p - keep[-1])) > eps:
            keep.append(p)
    if len(keep) >= 2 and np.hypot(*(keep[0] - keep[-1])) <= eps:
        keep.pop()
    if len(keep) < 3:
        return None
    return np.array(keep)


def _ring_perimeter(pts: np.ndarray) -> float:
    d = np.roll(pts, -1, axis=0) - pts
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


# ---------------------------------------------------------------------------
# face ∩ polygon decomposition


@dataclass
class ClipComponent:
    """One connected component of (placed convex face) ∩ P.

    Stored as the convex pieces produced by clipping P's triangulation, plus
    1D boundary bookkeeping along the face edges and along the edges of P.
    """

    pieces: list[np.ndarray]
    area: float
    face_intervals: dict[int, list[tuple[float, float]]] = field(default_factory=dict)
    pedge_intervals: dict[int, list[tuple[float, float]]] = field(default_factory=dict)

    def touches(self, pt, eps: float) -> bool:
        return any(_point_in_convex(pt, piece, eps) for piece in self.pieces)


def _point_in_convex(p, ring, eps) -> bool:
    k = len(ring)
    for i in range(k):
        if cross2(ring[(i + 1) % k] - ring[i], p - ring[i]) < -eps:
            return False
    return True


def clip_components(face_pts: np.ndarray, P: Polygon) -> list[ClipComponent]:
    """Components of face ∩ P with boundary interval bookkeeping."""
    eps = P.tol.eps_len
    face_pts = np.asarray(face_pts, float)
    pieces = []
    fmin = face_pts.min(axis=0) - eps
    fmax = face_pts.max(axis=0) + eps
    for tri in P.triangulation():
        if np.any(tri.max(axis=0) < fmin) or np.any(tri.min(axis=0) > fmax):
            continue
        c = clip_convex(tri, face_pts, eps)
        if c is not None:
            pieces.append(c)
    if not pieces:
        return []

    groups = _group_pieces(pieces, eps)
    comps = []
    sliver_cut = eps * max(_ring_perimeter(face_pts), 1.0)
    for grp in groups:
        grp_pieces = [pieces[i] for i in grp]
        area = sum(signed_area(p) for p in grp_pieces)
        if area <= sliver_cut:
            continue
        comp = ClipComponent(pieces=grp_pieces, area=area)
        _fill_intervals(comp, face_pts, P, eps)
        comps.append(comp)
    return comps


def _group_pieces(pieces, eps):
    n = len(pieces)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            if _share_edge(pieces[i], pieces[j], eps):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _share_edge(p1, p2, eps) -> bool:
    if np.any(p1.max(axis=0) < p2.min(axis=0) - eps) or np.any(
        p2.max(axis=0) < p1.min(axis=0) - eps
    ):
        return False
    k1, k2 = len(p1), len(p2)
    for i in range(k1):
        a0, a1 = p1[i], p1[(i + 1) % k1]
        for j in range(k2):
            if collinear_overlap(a0, a1, p2[j], p2[(j + 1) % k2], eps):
                return True
    return False


def _fill_intervals(comp: ClipComponent, face_pts, P: Polygon, eps):
    weld = 10 * eps
    kf = len(face_pts)
    face_iv: dict[int, list] = {k: [] for k in range(kf)}
    pedge_iv: dict[int, list] = {}
    for piece in comp.pieces:
        kp = len(piece)
        for i in range(kp):
            q0, q1 = piece[i], piece[(i + 1) % kp]
            for k in range(kf):
                ov = collinear_overlap(face_pts[k], face_pts[(k + 1) % kf], q0, q1, eps)
                if ov:
                    face_iv[k].append(ov)
            for e in range(P.n):
                a, b = P.edge(e)
                ov = collinear_overlap(a, b, q0, q1, eps)
                if ov:
                    pedge_iv.setdefault(e, []).append(ov)
    comp.face_intervals = {
        k: merge_intervals(v, weld) for k, v in face_iv.items() if v
    }
    comp.pedge_intervals = {
        e: merge_intervals(v, weld) for e, v in pedge_iv.items()
    }


def component_boundary(comp: ClipComponent, eps: float) -> np.ndarray:
    """Outer boundary ring of a component: cancel doubled piece edges, stitch."""
    edges = []
    for piece in comp.pieces:
        k = len(piece)
        for i in range(k):
            edges.append((piece[i].copy(), piece[(i + 1) % k].copy()))
    alive = [True] * len(edges)
    for i in range(len(edges)):
        if not alive[i]:
            continue
        for j in range(i + 1, len(edges)):
            if not alive[j]:
                continue
            if (
                np.hypot(*(edges[i][0] - edges[j][1])) <= eps
                and np.hypot(*(edges[i][1] - edges[j][0])) <= eps
            ):
                alive[i] = alive[j] = False
                break
    remaining = [e for e, ok in zip(edges, alive) if ok]
    if not remaining:
        raise DegenerateIntersection("component boundary vanished")
    ring = [remaining[0][0], remaining[0][1]]
    used = [False] * len(remaining)
    used[0] = True
    while True:
        tail = ring[-1]
        nxt = None
        for j, (a, b) in enumerate(remaining):
            if used[j]:
                continue
            if np.hypot(*(a - tail)) <= 10 * eps:
                nxt = j
                break
        if nxt is None:
            break
        used[nxt] = True
        ring.append(remaining[nxt][1])
    if np.hypot(*(ring[0] - ring[-1])) > 10 * eps or not all(used):
        raise DegenerateIntersection("component boundary did not close")
    ring.pop()
    arr = _dedup_ring(np.array(ring), eps)
    if arr is None:
        raise DegenerateIntersection("component boundary degenerate")
    return arr


def intersect_face(face_pts, P: Polygon) -> list[Polygon]:
    """Simple-polygon components of (convex face) ∩ P.

    Components whose area is below the sliver threshold are discarded; raises
    DegenerateIntersection when the intersection is nonempty but only slivers
    remain.
    """
    eps = P.tol.eps_len
    face_pts = np.asarray(face_pts, float)
    raw = []
    for tri in P.triangulation():
        c = clip_convex(tri, face_pts, eps)
        if c is not None:
            raw.append(c)
    comps = clip_components(face_pts, P)
    if not comps:
        if raw and sum(signed_area(r) for r in raw) > 0:
            raise DegenerateIntersection("intersection is all slivers")
        return []
    out = []
    for comp in comps:
        ring = component_boundary(comp, eps)
        out.append(Polygon(ring, tol=P.tol))
    return out
