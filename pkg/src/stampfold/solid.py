"""Target solids: charts, face adjacency, co-curvature, rolling transforms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Tolerance, cross2, signed_area


class SolidError(Exception):
    pass


class NonAcuteTriangle(SolidError):
    pass


class NonIntegerBox(SolidError):
    pass


class NonConvexSolid(SolidError):
    pass


class GaussBonnetViolation(SolidError):
    pass


class TooFewAnchorVertices(SolidError):
    pass


class PointOutsideFace(SolidError):
    pass


@dataclass(frozen=True)
class Placement:
    """Planar isometry carrying one face chart onto the plane."""

    face: int
    matrix: np.ndarray  # 2x2 orthogonal
    offset: np.ndarray
    mirrored: bool

    def apply(self, pts):
        pts = np.asarray(pts, float)
        return pts @ self.matrix.T + self.offset

    def apply_dir(self, d):
        return np.asarray(d, float) @ self.matrix.T

    def inverse_point(self, pt):
        return (np.asarray(pt, float) - self.offset) @ self.matrix

    def inverse_dir(self, d):
        return np.asarray(d, float) @ self.matrix

    @staticmethod
    def from_point_dir(face: int, corner, direction, mirrored: bool,
                       chart_point, chart_dir) -> "Placement":
        """Placement sending chart_point to corner and chart_dir to direction."""
        u = np.asarray(chart_dir, float)
        u = u / np.hypot(*u)
        w = np.asarray(direction, float)
        w = w / np.hypot(*w)
        if mirrored:
            # reflection mapping u to w: R = rot(w) @ mirror @ rot(-u) folded out
            c = u[0] * w[0] - u[1] * w[1]
            s = u[0] * w[1] + u[1] * w[0]
            M = np.array([[c, s], [s, -c]])
        else:
            c = float(u @ w)
            s = cross2(u, w)
            M = np.array([[c, -s], [s, c]])
        off = np.asarray(corner, float) - M @ np.asarray(chart_point, float)
        return Placement(face, M, off, mirrored)


@dataclass(frozen=True)
class SurfacePoint:
    """A point on the solid, as local chart coordinates on 1, 2 or d faces."""

    charts: tuple  # ((face, (x, y)), ...)
    kind: str  # "face" | "edge" | "vertex"
    vertex: int | None
    point3: np.ndarray

    def primary(self):
        return self.charts[0]


class SolidModel:
    """Immutable polyhedron with per-face planar charts.

    faces are vertex-index cycles, counterclockwise seen from outside; every
    face chart is an isometric planar copy of the 3D face with its first edge
    on the segment (0,0)-(len,0).
    """

    def __init__(self, vertices, faces, kind: str, tol: Tolerance | None = None):
        self.kind = kind
        self.vertices = np.asarray(vertices, float)
        if tol is None:
            span = float(np.max(self.vertices.max(axis=0) - self.vertices.min(axis=0)))
            tol = Tolerance.for_scale(max(span, 1.0))
        self.tol = tol
        self.faces = [list(map(int, f)) for f in faces]
        self._orient_faces()
        self._build_charts()
        self._build_adjacency()
        self._build_curvature()
        self.surface_area = float(sum(signed_area(c) for c in self.charts))
        self._check_invariants()

    # -- construction ---------------------------------------------------------

    def _orient_faces(self):
        # propagate a consistent orientation: shared edge traversed oppositely
        edge_owner = {}
        adj = {}
        for fi, cyc in enumerate(self.faces):
            for k in range(len(cyc)):
                e = frozenset((cyc[k], cyc[(k + 1) % len(cyc)]))
                adj.setdefault(e, []).append(fi)
        for e, fs in adj.items():
            if len(fs) != 2:
                raise NonConvexSolid("edge %s shared by %d faces" % (sorted(e), len(fs)))
        face_adj = {}
        for e, (f1, f2) in adj.items():
            face_adj.setdefault(f1, set()).add(f2)
            face_adj.setdefault(f2, set()).add(f1)
        oriented = {0}
        stack = [0]
        while stack:
            f = stack.pop()
            cyc = self.faces[f]
            dirs = {
                (cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))
            }
            for g in face_adj[f]:
                if g in oriented:
                    continue
                gcyc = self.faces[g]
                gdirs = [
                    (gcyc[k], gcyc[(k + 1) % len(gcyc)]) for k in range(len(gcyc))
                ]
                shared_same = any(d in dirs for d in gdirs)
                if shared_same:
                    self.faces[g] = gcyc[::-1]
                oriented.add(g)
                stack.append(g)
        if len(oriented) != len(self.faces):
            raise NonConvexSolid("face adjacency graph is disconnected")
        vol = 0.0
        for cyc in self.faces:
            p0 = self.vertices[cyc[0]]
            for k in range(1, len(cyc) - 1):
                p1, p2 = self.vertices[cyc[k]], self.vertices[cyc[k + 1]]
                vol += float(np.dot(p0, np.cross(p1, p2))) / 6.0
        if vol < -self.tol.eps_len:
            self.faces = [cyc[::-1] for cyc in self.faces]

    def _build_charts(self):
        self.charts = []
        self.frames = []
        for cyc in self.faces:
            pts = self.vertices[cyc]
            o = pts[0]
            e1 = pts[1] - o
            e1 = e1 / np.linalg.norm(e1)
            nrm = np.zeros(3)
            for k in range(1, len(pts) - 1):
                nrm = nrm + np.cross(pts[k] - o, pts[k + 1] - o)
            n = nrm / np.linalg.norm(nrm)
            e2 = np.cross(n, e1)
            chart = np.column_stack(((pts - o) @ e1, (pts - o) @ e2))
            # planarity
            off = np.abs((pts - o) @ n)
            if np.any(off > 1e3 * self.tol.eps_len):
                raise NonConvexSolid("face %s is not planar" % (cyc,))
            self.charts.append(chart)
            self.frames.append((o, e1, e2))

    def _build_adjacency(self):
        directed = {}
        for fi, cyc in enumerate(self.faces):
            for k in range(len(cyc)):
                directed[(cyc[k], cyc[(k + 1) % len(cyc)])] = (fi, k)
        self.edge_adjacency = {}
        for (a, b), (fi, k) in directed.items():
            if (b, a) not in directed:
                raise NonConvexSolid("surface is not closed at edge (%d,%d)" % (a, b))
            self.edge_adjacency[(fi, k)] = directed[(b, a)]
        self.vertex_incidence = {}
        for fi, cyc in enumerate(self.faces):
            for k, v in enumerate(cyc):
                self.vertex_incidence.setdefault(v, []).append((fi, k))

    def _build_curvature(self):
        m = len(self.vertices)
        total = np.zeros(m)
        for fi, cyc in enumerate(self.faces):
            chart = self.charts[fi]
            kf = len(cyc)
            for k, v in enumerate(cyc):
                a = chart[k - 1] - chart[k]
                b = chart[(k + 1) % kf] - chart[k]
                ang = math.degrees(
                    math.atan2(abs(cross2(a, b)), float(a @ b))
                )
                total[v] += ang
        self.co_curvature = total

    def _check_invariants(self):
        tol = self.tol
        # chart isometry: chart edge lengths match 3D edge lengths
        for fi, cyc in enumerate(self.faces):
            chart = self.charts[fi]
            kf = len(cyc)
            for k in range(kf):
                d3 = np.linalg.norm(
                    self.vertices[cyc[(k + 1) % kf]] - self.vertices[cyc[k]]
                )
                d2 = np.linalg.norm(chart[(k + 1) % kf] - chart[k])
                if abs(d3 - d2) > 10 * tol.eps_len:
                    raise NonConvexSolid("chart %d is not isometric" % fi)
        if np.any(self.co_curvature > 360.0 + tol.eps_angle):
            raise NonConvexSolid("a vertex has co-curvature above 360 degrees")
        total = sum(
            360.0 - c for c in self.co_curvature if c < 360.0 - tol.eps_angle
        )
        if abs(total - 720.0) > max(tol.eps_angle, 1e-7):
            raise GaussBonnetViolation(
                "curvature sums to %.9f, expected 720" % total
            )

    # -- queries ----------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def face_chart(self, f: int) -> np.ndarray:
        return self.charts[f]

    def face_area(self, f: int) -> float:
        return float(signed_area(self.charts[f]))

    def co_curvature_at(self, v: int) -> float:
        return float(self.co_curvature[v])

    def curvature_at(self, v: int) -> float:
        return 360.0 - float(self.co_curvature[v])

    def chart_to_3d(self, face: int, xy) -> np.ndarray:
        o, e1, e2 = self.frames[face]
        xy = np.asarray(xy, float)
        return o + xy[0] * e1 + xy[1] * e2

    def edges(self):
        """Undirected edges as frozensets of vertex ids."""
        out = set()
        for cyc in self.faces:
            for k in range(len(cyc)):
                out.add(frozenset((cyc[k], cyc[(k + 1) % len(cyc)])))
        return sorted(out, key=sorted)

    # -- rolling ------------------------------------------------------------------

    def roll(self, placement: Placement, edge_k: int) -> Placement:
        """Hinge the adjacent face across edge edge_k of the placed face."""
        f = placement.face
        cyc = self.faces[f]
        kf = len(cyc)
        if not 0 <= edge_k < kf:
            raise ValueError("edge index out of range")
        f2, k2 = self.edge_adjacency[(f, edge_k)]
        chart = self.charts[f]
        A = placement.apply(chart[edge_k])
        B = placement.apply(chart[(edge_k + 1) % kf])
        chart2 = self.charts[f2]
        k2n = (k2 + 1) % len(chart2)
        # neighbor's directed edge k2 runs B->A in the plane
        C, D = chart2[k2], chart2[k2n]
        pl2 = Placement.from_point_dir(
            f2, B, A - B, placement.mirrored, C, D - C
        )
        return pl2

    # -- surface points ------------------------------------------------------------

    def surface_point_from_local(self, face: int, xy) -> SurfacePoint:
        xy = np.asarray(xy, float)
        eps = self.tol.eps_len
        chart = self.charts[face]
        cyc = self.faces[face]
        kf = len(cyc)
        for k in range(kf):
            if np.hypot(*(chart[k] - xy)) <= eps:
                v = cyc[k]
                charts = tuple(
                    (fi, tuple(self.charts[fi][pos]))
                    for fi, pos in sorted(self.vertex_incidence[v])
                )
                return SurfacePoint(charts, "vertex", v, self.vertices[v].copy())
        for k in range(kf):
            a, b = chart[k], chart[(k + 1) % kf]
            L = float(np.hypot(*(b - a)))
            t = float((xy - a) @ (b - a)) / (L * L)
            if -eps / L <= t <= 1 + eps / L:
                d = abs(cross2((b - a) / L, xy - a))
                if d <= eps:
                    f2, k2 = self.edge_adjacency[(face, k)]
                    chart2 = self.charts[f2]
                    a2, b2 = chart2[k2], chart2[(k2 + 1) % len(chart2)]
                    other = a2 + (1.0 - t) * (b2 - a2)
                    charts = ((face, tuple(xy)), (f2, tuple(other)))
                    return SurfacePoint(
                        charts, "edge", None, self.chart_to_3d(face, xy)
                    )
        if not _point_in_chart(chart, xy, eps):
            raise PointOutsideFace("local point %s outside face %d" % (xy, face))
        return SurfacePoint(
            ((face, tuple(xy)),), "face", None, self.chart_to_3d(face, xy)
        )

    def surface_point(self, placement: Placement, pt) -> SurfacePoint:
        return self.surface_point_from_local(
            placement.face, placement.inverse_point(pt)
        )

    def co_curvature_of_point(self, sp: SurfacePoint) -> float:
        if sp.kind == "vertex":
            return float(self.co_curvature[sp.vertex])
        return 360.0

    def anchor_vertices(self) -> list[int]:
        """Vertices with curvature distinct from 180 degrees."""
        return [
            v
            for v in range(self.n_vertices)
            if abs(self.co_curvature[v] - 180.0) > self.tol.eps_angle
            and self.co_curvature[v] < 360.0 - self.tol.eps_angle
        ]


def _point_in_chart(chart, xy, eps) -> bool:
    k = len(chart)
    for i in range(k):
        if cross2(chart[(i + 1) % k] - chart[i], xy - chart[i]) < -eps:
            return False
    return True


def co_curvature(Q: SolidModel, v: int) -> float:
    return Q.co_curvature_at(v)


# ---------------------------------------------------------------------------
# builders

_PHI = (1.0 + math.sqrt(5.0)) / 2.0


def build_tetramonohedron(a: float, b: float, c: float,
                          tol: Tolerance | None = None) -> SolidModel:
    """Tetrahedron with four congruent acute (a,b,c) faces."""
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        if x * x + y * y <= z * z + 1e-12 * max(a, b, c) ** 2:
            raise NonAcuteTriangle("(%.6g, %.6g, %.6g) is not acute" % (a, b, c))
    p2 = (-a * a + b * b + c * c) / 2.0
    q2 = (a * a - b * b + c * c) / 2.0
    r2 = (a * a + b * b - c * c) / 2.0
    p, q, r = math.sqrt(p2), math.sqrt(q2), math.sqrt(r2)
    verts = [(0, 0, 0), (p, q, 0), (p, 0, r), (0, q, r)]
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return SolidModel(verts, faces, "tetramonohedron", tol)


def build_regular_tetrahedron(tol: Tolerance | None = None) -> SolidModel:
    return build_tetramonohedron(1.0, 1.0, 1.0, tol)


def build_box(a, b, c, tol: Tolerance | None = None) -> SolidModel:
    eps_int = (tol.eps_int if tol else 1e-7)
    dims = []
    for d in (a, b, c):
        if d <= 0 or abs(d - round(d)) > eps_int:
            raise NonIntegerBox("box sides must be positive integers")
        dims.append(int(round(d)))
    a, b, c = dims
    verts = [
        (0, 0, 0), (a, 0, 0), (a, b, 0), (0, b, 0),
        (0, 0, c), (a, 0, c), (a, b, c), (0, b, c),
    ]
    faces = [
        (0, 3, 2, 1), (4, 5, 6, 7),
        (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7),
    ]
    kind = "cube" if a == b == c == 1 else "box"
    model = SolidModel(verts, faces, kind, tol)
    model.box_dims = (a, b, c)
    return model


def build_cube(tol: Tolerance | None = None) -> SolidModel:
    return build_box(1, 1, 1, tol)


def _faces_from_hull(verts: np.ndarray) -> list[list[int]]:
    from scipy.spatial import ConvexHull

    hull = ConvexHull(verts)
    groups: list[tuple[np.ndarray, set]] = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        n = eq[:3]
        for gn, gset in groups:
            if np.allclose(gn, n, atol=1e-9):
                gset.update(simplex)
                break
        else:
            groups.append((n.copy(), set(simplex)))
    faces = []
    for n, vs in groups:
        ids = sorted(vs)
        pts = verts[ids]
        ctr = pts.mean(axis=0)
        e1 = pts[0] - ctr
        e1 = e1 / np.linalg.norm(e1)
        e2 = np.cross(n, e1)
        ang = [math.atan2(float((p - ctr) @ e2), float((p - ctr) @ e1)) for p in pts]
        faces.append([ids[i] for i in np.argsort(ang)])
    return faces


def build_octahedron(tol: Tolerance | None = None) -> SolidModel:
    s = 1.0 / math.sqrt(2.0)
    verts = np.array(
        [(s, 0, 0), (-s, 0, 0), (0, s, 0), (0, -s, 0), (0, 0, s), (0, 0, -s)]
    )
    return SolidModel(verts, _faces_from_hull(verts), "octahedron", tol)


def build_icosahedron(tol: Tolerance | None = None) -> SolidModel:
    f = _PHI
    raw = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            raw.append((0, s1, s2 * f))
            raw.append((s1, s2 * f, 0))
            raw.append((s1 * f, 0, s2))
    verts = 0.5 * np.array(raw, float)  # edge length 1
    return SolidModel(verts, _faces_from_hull(verts), "icosahedron", tol)


def build_dodecahedron(tol: Tolerance | None = None) -> SolidModel:
    f = _PHI
    raw = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                raw.append((sx, sy, sz))
    for s1 in (1, -1):
        for s2 in (1, -1):
            raw.append((0, s1 / f, s2 * f))
            raw.append((s1 / f, s2 * f, 0))
            raw.append((s1 * f, 0, s2 / f))
    verts = (f / 2.0) * np.array(raw, float)  # edge length 1
    return SolidModel(verts, _faces_from_hull(verts), "dodecahedron", tol)


def build_deltahedron(vertices, faces, tol: Tolerance | None = None) -> SolidModel:
    """Non-concave deltahedron whose faces are convex polyiamonds of unit triangles."""
    model = SolidModel(vertices, faces, "deltahedron", tol)
    t = model.tol
    for fi, chart in enumerate(model.charts):
        kf = len(chart)
        for k in range(kf):
            L = float(np.linalg.norm(chart[(k + 1) % kf] - chart[k]))
            if abs(L - round(L)) > 1e-6 or round(L) < 1:
                raise NonConvexSolid(
                    "face %d edge %d has non-integer length %.6g" % (fi, k, L)
                )
            a = chart[k - 1] - chart[k]
            b = chart[(k + 1) % kf] - chart[k]
            if cross2(b, a) < -t.eps_len:
                raise NonConvexSolid("face %d is not convex" % fi)
            ang = math.degrees(math.atan2(abs(cross2(a, b)), float(a @ b)))
            if abs(ang / 60.0 - round(ang / 60.0)) > 1e-5:
                raise NonConvexSolid(
                    "face %d angle %.4f is not a multiple of 60" % (fi, ang)
                )
    # convexity of the solid: no vertex strictly outside any face plane
    for fi, cyc in enumerate(model.faces):
        o, e1, e2 = model.frames[fi]
        n = np.cross(e1, e2)
        for v in range(model.n_vertices):
            if float((model.vertices[v] - o) @ n) > 1e3 * t.eps_len:
                raise NonConvexSolid("vertex %d lies outside face %d" % (v, fi))
    anchors = model.anchor_vertices()
    if len(anchors) < 2:
        raise TooFewAnchorVertices(
            "deltahedron has %d vertices of curvature != 180; "
            "use the tetramonohedron solver for that shape" % len(anchors)
        )
    return model


def build_solid(name: str, *, a=None, b=None, c=None, vertices=None, faces=None,
                tol: Tolerance | None = None) -> SolidModel:
    """Dispatcher used by the CLI and the fold() entry point."""
    name = name.lower()
    if name in ("tetra", "tetrahedron", "regulartetrahedron"):
        return build_regular_tetrahedron(tol)
    if name in ("tetramono", "tetramonohedron"):
        return build_tetramonohedron(a, b, c, tol)
    if name == "cube":
        return build_cube(tol)
    if name == "box":
        return build_box(a, b, c, tol)
    if name in ("octa", "octahedron"):
        return build_octahedron(tol)
    if name in ("icosa", "icosahedron"):
        return build_icosahedron(tol)
    if name in ("dodeca", "dodecahedron"):
        return build_dodecahedron(tol)
    if name in ("delta", "deltahedron"):
        return build_deltahedron(vertices, faces, tol)
    raise ValueError("unknown solid %r" % name)
