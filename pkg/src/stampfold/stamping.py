"""Stamping: roll the solid over the polygon, building regions and the contact tree.

A stamping either covers P exactly with face-intersection regions whose
contact graph is a tree, or it is rejected with a reason; rejection is an
expected outcome for most candidate placements, so it is a value, not an
exception.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    ClipComponent,
    Location,
    Polygon,
    clip_components,
    clip_convex,
    collinear_overlap,
    merge_intervals,
    seg_point_distance,
    signed_area,
    subtract_intervals,
)
from .solid import Placement, SolidModel, SurfacePoint


class UnassignedBoundaryPoint(Exception):
    """Some boundary point of P is covered by no region."""


@dataclass
class Region:
    index: int
    placement: Placement
    component: ClipComponent
    parent: int | None
    parent_segment: tuple[np.ndarray, np.ndarray] | None
    face_poly: np.ndarray

    @property
    def face(self) -> int:
        return self.placement.face

    @property
    def area(self) -> float:
        return self.component.area


@dataclass
class ContactTree:
    regions: list[Region]
    edges: list[tuple[int, int]]

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.regions) - 1


@dataclass
class BoundaryVertex:
    pos: np.ndarray
    angle: float  # interior angle of P at this point, degrees
    surface: SurfacePoint
    co_curvature: float
    is_gluing_point: bool
    origin: str  # "vertex" of P or "break"


@dataclass
class BoundaryEdge:
    length: float
    plane_start: np.ndarray
    plane_dir: np.ndarray  # unit
    region: int
    face: int
    local_start: np.ndarray
    local_dir: np.ndarray  # unit in chart coords


@dataclass
class RefinedBoundary:
    vertices: list[BoundaryVertex]
    edges: list[BoundaryEdge]  # edges[i] runs vertices[i] -> vertices[i+1]
    tree: ContactTree
    polygon: Polygon
    tol: object = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def total_length(self) -> float:
        return sum(e.length for e in self.edges)

    def gluing_points(self) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.is_gluing_point]


@dataclass
class StampResult:
    tree: ContactTree
    boundary: RefinedBoundary


@dataclass
class StampReject:
    reason: str
    detail: str = ""


@dataclass
class Crease:
    a: np.ndarray
    b: np.ndarray
    faces: tuple[int, int]
    surface_a: SurfacePoint
    surface_b: SurfacePoint


def stamp_budget(P: Polygon) -> int:
    return int(4 * (P.perimeter + 4 * P.n) + 16)


def _vertex_inside(face_poly: np.ndarray, P: Polygon) -> np.ndarray | None:
    for g in face_poly:
        if P.contains(g) is Location.INTERIOR:
            return g
    return None


def initial_components(P: Polygon, Q: SolidModel, initial: Placement, seed) -> int:
    """How many components of (initial face ∩ P) contain the seed point."""
    face_poly = initial.apply(Q.face_chart(initial.face))
    comps = clip_components(face_poly, P)
    seed = np.asarray(seed, float)
    return sum(1 for c in comps if c.touches(seed, 10 * P.tol.eps_len))


def _open_segments(reg: Region, P: Polygon, Q: SolidModel):
    """Maximal subsegments of placed face edges interior to P, as (k, t0, t1)."""
    tol = P.tol
    weld = 10 * tol.eps_len
    fp = reg.face_poly
    kf = len(fp)
    out = []
    for k in sorted(reg.component.face_intervals):
        iv = reg.component.face_intervals[k]
        E0, E1 = fp[k], fp[(k + 1) % kf]
        L = float(np.hypot(*(E1 - E0)))
        u = (E1 - E0) / L
        cuts = []
        for e in range(P.n):
            a, b = P.edge(e)
            ov = collinear_overlap(E0, E1, a, b, tol.eps_len)
            if ov:
                cuts.append(ov)
        open_iv = subtract_intervals(iv, merge_intervals(cuts, weld), weld)
        for t0, t1 in open_iv:
            if t1 - t0 <= weld:
                continue
            mid = E0 + u * (0.5 * (t0 + t1))
            if P.contains(mid) is not Location.INTERIOR:
                continue
            out.append((k, t0, t1))
    return out


def _overlap_area(c1: ClipComponent, c2: ClipComponent, eps: float) -> float:
    total = 0.0
    for p1 in c1.pieces:
        lo1, hi1 = p1.min(axis=0), p1.max(axis=0)
        for p2 in c2.pieces:
            if np.any(p2.min(axis=0) > hi1 + eps) or np.any(p2.max(axis=0) < lo1 - eps):
                continue
            inter = clip_convex(p1, p2, eps)
            if inter is not None:
                total += signed_area(inter)
    return total


def stamp(P: Polygon, Q: SolidModel, initial: Placement, seed,
          component: int = 0) -> StampResult | StampReject:
    """Roll Q over P from the initial placement; seed picks the first region.

    The seed must lie on the boundary of P and of the placed initial face.
    When several components of face ∩ P contain the seed, `component` selects
    one; callers enumerate via initial_components().
    """
    tol = P.tol
    eps_area = tol.eps_len * max(P.perimeter, 1.0)
    budget = stamp_budget(P)
    seed = np.asarray(seed, float)

    face_poly = initial.apply(Q.face_chart(initial.face))
    comps = clip_components(face_poly, P)
    at_seed = [c for c in comps if c.touches(seed, 10 * tol.eps_len)]
    if not at_seed:
        return StampReject("NoSeedComponent", "seed %s touches no component" % (seed,))
    if component >= len(at_seed):
        raise ValueError("seed component index out of range")
    bad = _vertex_inside(face_poly, P)
    if bad is not None:
        return StampReject("VertexInsideP", "initial vertex at %s" % (bad,))

    regions = [Region(0, initial, at_seed[component], None, None, face_poly)]
    stack = [0]
    weld = 10 * tol.eps_len
    while stack:
        i = stack.pop()
        reg = regions[i]
        for k, t0, t1 in _open_segments(reg, P, Q):
            fp = reg.face_poly
            E0 = fp[k]
            E1 = fp[(k + 1) % len(fp)]
            L = float(np.hypot(*(E1 - E0)))
            u = (E1 - E0) / L
            if reg.parent_segment is not None:
                psa, psb = reg.parent_segment
                mid = E0 + u * (0.5 * (t0 + t1))
                if seg_point_distance(psa, psb, mid) <= weld:
                    continue  # the segment this region was rolled in through
            pl2 = Q.roll(reg.placement, k)
            fp2 = pl2.apply(Q.face_chart(pl2.face))
            bad = _vertex_inside(fp2, P)
            if bad is not None:
                return StampReject("VertexInsideP", "rolled vertex at %s" % (bad,))
            comps2 = clip_components(fp2, P)
            mid = E0 + u * (0.5 * (t0 + t1))
            child = None
            for c in comps2:
                if c.touches(mid, 10 * tol.eps_len):
                    child = c
                    break
            if child is None:
                return StampReject(
                    "InternalGap", "no region beyond open segment at %s" % (mid,)
                )
            for other in regions:
                if _overlap_area(child, other.component, tol.eps_len) > eps_area:
                    return StampReject(
                        "ContactCycle",
                        "region %d rolled from %d collides with region %d"
                        % (len(regions), i, other.index),
                    )
            seg = (E0 + u * t0, E0 + u * t1)
            regions.append(
                Region(len(regions), pl2, child, i, seg, fp2)
            )
            if len(regions) > budget:
                return StampReject("StampBudgetExceeded", "over %d regions" % budget)
            stack.append(len(regions) - 1)

    covered = sum(r.area for r in regions)
    if abs(covered - P.area) > tol.eps_len * max(P.perimeter, 1.0) * 10:
        return StampReject(
            "CoverageGap", "covered %.12g of %.12g" % (covered, P.area)
        )

    regions = _bfs_renumber(regions)
    tree = ContactTree(
        regions,
        [(r.parent, r.index) for r in regions if r.parent is not None],
    )
    try:
        boundary = refine_boundary(P, tree, Q)
    except UnassignedBoundaryPoint as exc:
        return StampReject("UnassignedBoundaryPoint", str(exc))
    return StampResult(tree=tree, boundary=boundary)


def _bfs_renumber(regions: list[Region]) -> list[Region]:
    children: dict[int, list[int]] = {}
    for r in regions:
        if r.parent is not None:
            children.setdefault(r.parent, []).append(r.index)
    order = [0]
    qi = 0
    while qi < len(order):
        order.extend(sorted(children.get(order[qi], [])))
        qi += 1
    remap = {old: new for new, old in enumerate(order)}
    out = []
    for old in order:
        r = regions[old]
        out.append(
            Region(
                index=remap[old],
                placement=r.placement,
                component=r.component,
                parent=None if r.parent is None else remap[r.parent],
                parent_segment=r.parent_segment,
                face_poly=r.face_poly,
            )
        )
    return out


def refine_boundary(P: Polygon, tree: ContactTree, Q: SolidModel) -> RefinedBoundary:
    """Subdivide ∂P wherever the covering region changes; annotate with surface data."""
    tol = P.tol
    weld = 10 * tol.eps_len
    verts: list[BoundaryVertex] = []
    edges: list[BoundaryEdge] = []

    for e in range(P.n):
        a, b = P.edge(e)
        L = float(P.edge_lengths[e])
        u = (b - a) / L
        covering = []
        for r in tree.regions:
            for lo, hi in r.component.pedge_intervals.get(e, []):
                covering.append((lo, hi, r.index))
        covering.sort()
        if not covering:
            raise UnassignedBoundaryPoint("edge %d covered by no region" % e)
        pos = 0.0
        for lo, hi, _ in covering:
            if lo > pos + weld:
                raise UnassignedBoundaryPoint(
                    "gap on edge %d at arclength %.9g" % (e, pos)
                )
            pos = max(pos, hi)
        if pos < L - weld:
            raise UnassignedBoundaryPoint("edge %d tail uncovered" % e)

        cuts = sorted(
            {t for lo, hi, _ in covering for t in (lo, hi) if weld < t < L - weld}
        )
        merged_cuts: list[float] = []
        for t in cuts:
            if not merged_cuts or t - merged_cuts[-1] > weld:
                merged_cuts.append(t)
        params = [0.0] + merged_cuts + [L]

        for j in range(len(params) - 1):
            t0, t1 = params[j], params[j + 1]
            mid = 0.5 * (t0 + t1)
            region = None
            for lo, hi, idx in covering:
                if lo - weld <= mid <= hi + weld:
                    region = tree.regions[idx]
                    break
            if region is None:
                raise UnassignedBoundaryPoint(
                    "edge %d param %.9g uncovered" % (e, mid)
                )
            start = a + u * t0
            angle = float(P.angles[e]) if j == 0 else 180.0
            origin = "vertex" if j == 0 else "break"
            sp = Q.surface_point(region.placement, start)
            cocurv = Q.co_curvature_of_point(sp)
            verts.append(
                BoundaryVertex(
                    pos=start,
                    angle=angle,
                    surface=sp,
                    co_curvature=cocurv,
                    is_gluing_point=abs(angle - cocurv) <= tol.eps_angle,
                    origin=origin,
                )
            )
            edges.append(
                BoundaryEdge(
                    length=t1 - t0,
                    plane_start=start,
                    plane_dir=u,
                    region=region.index,
                    face=region.face,
                    local_start=region.placement.inverse_point(start),
                    local_dir=region.placement.inverse_dir(u),
                )
            )
    return RefinedBoundary(
        vertices=verts, edges=edges, tree=tree, polygon=P, tol=P.tol
    )


def region_creases(tree: ContactTree, P: Polygon, Q: SolidModel) -> list[Crease]:
    """Fold segments: placed solid edges interior to P, with their face pairs."""
    tol = P.tol
    raw = []
    for reg in tree.regions:
        fp = reg.face_poly
        kf = len(fp)
        for k, t0, t1 in _open_segments(reg, P, Q):
            E0, E1 = fp[k], fp[(k + 1) % kf]
            u = (E1 - E0) / float(np.hypot(*(E1 - E0)))
            a = E0 + u * t0
            b = E0 + u * t1
            f2, _ = Q.edge_adjacency[(reg.face, k)]
            raw.append((a, b, reg.face, f2, reg.placement))
    creases: list[Crease] = []
    quantum = 1e4 * tol.eps_len
    seen = set()
    for a, b, f1, f2, pl in raw:
        key = _canonical_seg_key(a, b, quantum)
        if key in seen:
            continue
        seen.add(key)
        sa = Q.surface_point(pl, a)
        sb = Q.surface_point(pl, b)
        creases.append(
            Crease(a=a, b=b, faces=tuple(sorted((f1, f2))), surface_a=sa, surface_b=sb)
        )
    return creases


def _canonical_seg_key(a, b, quantum):
    pa = (round(a[0] / quantum), round(a[1] / quantum))
    pb = (round(b[0] / quantum), round(b[1] / quantum))
    return (pa, pb) if pa <= pb else (pb, pa)


def traverse_counts(tree: ContactTree, P: Polygon) -> list[int]:
    """Per edge of P: number of regions meeting its interior with positive length."""
    counts = []
    for e in range(P.n):
        k = sum(
            1 for r in tree.regions if r.component.pedge_intervals.get(e)
        )
        counts.append(k)
    return counts
