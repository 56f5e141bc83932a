"""Zip gluing check on the refined boundary, and the folding certificate.

The zip consumes the boundary cycle from gluing points inward, two segments
at a time. Every zip step cross-checks that the two glued sub-segments map to
the same geodesic on the solid; that check is the main guard against false
accepts under floating point.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .solid import Placement, SolidModel, SurfacePoint
from .stamping import Crease, RefinedBoundary, region_creases


@dataclass
class GlueFailure:
    reason: str
    detail: str = ""


@dataclass
class RegionPlacement:
    index: int
    face: int
    placement: Placement
    pieces: list[np.ndarray]


@dataclass
class SegmentPair:
    """Two boundary sub-segments glued onto the same cut line of the solid."""

    a: tuple[np.ndarray, np.ndarray]
    b: tuple[np.ndarray, np.ndarray]
    length: float


@dataclass
class FoldingCertificate:
    creases: list[Crease]
    region_map: list[RegionPlacement]
    boundary_pairing: list[SegmentPair]
    warnings: list[str] = field(default_factory=list)

    def crease_key(self, quantum: float) -> frozenset:
        keys = []
        for c in self.creases:
            pa = (round(c.a[0] / quantum), round(c.a[1] / quantum))
            pb = (round(c.b[0] / quantum), round(c.b[1] / quantum))
            keys.append((pa, pb) if pa <= pb else (pb, pa))
        return frozenset(keys)


class _Edge:
    __slots__ = ("length", "face", "local_start", "local_dir", "plane_start", "plane_dir")

    def __init__(self, length, face, local_start, local_dir, plane_start, plane_dir):
        self.length = float(length)
        self.face = face
        self.local_start = np.asarray(local_start, float)
        self.local_dir = np.asarray(local_dir, float)
        self.plane_start = np.asarray(plane_start, float)
        self.plane_dir = np.asarray(plane_dir, float)

    def local_at(self, t):
        return self.local_start + t * self.local_dir

    def plane_at(self, t):
        return self.plane_start + t * self.plane_dir

    def surface_at(self, Q: SolidModel, t) -> SurfacePoint:
        return Q.surface_point_from_local(self.face, self.local_at(t))

    def consume_front(self, t):
        self.local_start = self.local_at(t)
        self.plane_start = self.plane_at(t)
        self.length -= t

    def consume_back(self, t):
        self.length -= t


class _Node:
    __slots__ = ("nid", "angle", "surface", "cocurv", "prev", "next", "edge")

    def __init__(self, nid, angle, surface, cocurv):
        self.nid = nid
        self.angle = float(angle)
        self.surface = surface
        self.cocurv = float(cocurv)
        self.prev = None
        self.next = None
        self.edge = None  # edge from this node to self.next


def glue_check(boundary: RefinedBoundary, Q: SolidModel,
               order_seed: int | None = None) -> FoldingCertificate | GlueFailure:
    """Zip the refined boundary closed onto Q; certificate on success.

    With order_seed=None gluing points are consumed lowest-id first; a seed
    randomizes the order (the accept/reject decision must not depend on it).
    """
    tol = boundary.tol
    eps_len = tol.eps_len
    eps3 = 1e3 * eps_len
    rng = random.Random(order_seed) if order_seed is not None else None

    nodes = []
    for i, bv in enumerate(boundary.vertices):
        nodes.append(_Node(i, bv.angle, bv.surface, bv.co_curvature))
    n = len(nodes)
    for i, node in enumerate(nodes):
        be = boundary.edges[i]
        node.next = nodes[(i + 1) % n]
        node.prev = nodes[(i - 1) % n]
        node.edge = _Edge(
            be.length, be.face, be.local_start, be.local_dir,
            be.plane_start, be.plane_dir,
        )
    live = set(nodes)
    S = {node for node, bv in zip(nodes, boundary.vertices) if bv.is_gluing_point}
    next_id = n
    pairing: list[SegmentPair] = []

    while live:
        if len(live) == 1:
            node = next(iter(live))
            if node.edge.length <= 10 * eps_len:
                break
            return GlueFailure(
                "LengthMismatch", "closing loop of length %.9g" % node.edge.length
            )
        S &= live
        if not S:
            return GlueFailure(
                "NoGluingPoint", "%d boundary vertices left" % len(live)
            )
        if rng is None:
            v = min(S, key=lambda nd: nd.nid)
        else:
            v = rng.choice(sorted(S, key=lambda nd: nd.nid))

        u, w = v.prev, v.next
        eL, eR = u.edge, v.edge

        if len(live) == 2:
            # u is w: the two remaining edges close the fold at that vertex
            if abs(eL.length - eR.length) > 10 * eps_len:
                return GlueFailure(
                    "LengthMismatch",
                    "final edges %.9g vs %.9g" % (eL.length, eR.length),
                )
            m = eL.length
            fail = _surface_check(Q, eL, eR, m, eps3)
            if fail:
                return fail
            pairing.append(_make_pair(eL, eR, m))
            if abs(u.angle - u.cocurv) <= tol.eps_angle:
                break
            if u.angle > u.cocurv + tol.eps_angle:
                return GlueFailure(
                    "AngleOverflow",
                    "final vertex angle %.9g over co-curvature %.9g"
                    % (u.angle, u.cocurv),
                )
            return GlueFailure(
                "ClosureMismatch",
                "final vertex angle %.9g != co-curvature %.9g" % (u.angle, u.cocurv),
            )

        m = min(eL.length, eR.length)
        fail = _surface_check(Q, eL, eR, m, eps3)
        if fail:
            return fail
        pairing.append(_make_pair(eL, eR, m))

        if abs(eL.length - eR.length) <= 10 * eps_len:
            merged = _Node(next_id, u.angle + w.angle, u.surface, u.cocurv)
            next_id += 1
            merged.prev = u.prev
            merged.edge = w.edge
            merged.next = w.next
            u.prev.next = merged
            w.next.prev = merged
            live -= {u, v, w}
            S -= {u, v, w}
            live.add(merged)
            if merged.angle > merged.cocurv + tol.eps_angle:
                return GlueFailure(
                    "AngleOverflow",
                    "merged angle %.9g over co-curvature %.9g"
                    % (merged.angle, merged.cocurv),
                )
            if abs(merged.angle - merged.cocurv) <= tol.eps_angle:
                S.add(merged)
        else:
            if eR.length < eL.length:
                survivor = w
                eL.consume_back(m)
                u.next = w
                u.edge = eL
                w.prev = u
            else:
                survivor = u
                eR.consume_front(m)
                u.next = w
                u.edge = eR
                w.prev = u
            live.discard(v)
            S.discard(v)
            survivor.angle += 180.0
            if survivor.angle > survivor.cocurv + tol.eps_angle:
                return GlueFailure(
                    "AngleOverflow",
                    "survivor angle %.9g over co-curvature %.9g"
                    % (survivor.angle, survivor.cocurv),
                )
            if abs(survivor.angle - survivor.cocurv) <= tol.eps_angle:
                S.add(survivor)

    tree = boundary.tree
    creases = region_creases(tree, boundary.polygon, Q)
    region_map = [
        RegionPlacement(
            index=r.index,
            face=r.face,
            placement=r.placement,
            pieces=[p.copy() for p in r.component.pieces],
        )
        for r in tree.regions
    ]
    return FoldingCertificate(
        creases=creases, region_map=region_map, boundary_pairing=pairing
    )


def _surface_check(Q, eL: _Edge, eR: _Edge, m: float, eps3: float):
    """The two glued sub-segments must trace the same curve on Q."""
    for t in (m, 0.5 * m):
        pL = eL.surface_at(Q, eL.length - t).point3
        pR = eR.surface_at(Q, t).point3
        d = float(np.linalg.norm(pL - pR))
        if d > eps3:
            return GlueFailure(
                "SurfaceMismatch",
                "glued points %.3g apart on the solid at offset %.9g" % (d, t),
            )
    return None


def _make_pair(eL: _Edge, eR: _Edge, m: float) -> SegmentPair:
    a = (eL.plane_at(eL.length - m), eL.plane_at(eL.length))
    b = (eR.plane_at(0.0), eR.plane_at(m))
    return SegmentPair(a=a, b=b, length=m)
