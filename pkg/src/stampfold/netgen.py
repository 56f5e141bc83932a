"""Oracle net generator: edge unfoldings and the tetramonohedron star unfolding."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .geometry import NonSimplePolygon, Polygon, clip_convex, signed_area
from .solid import NonAcuteTriangle, Placement, SolidModel


class NotSpanningTree(Exception):
    pass


@dataclass
class OverlapFailure:
    detail: str = ""


def _is_spanning_tree(Q: SolidModel, edges) -> bool:
    m = Q.n_vertices
    if len(edges) != m - 1:
        return False
    solid_edges = set(Q.edges())
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        if frozenset(e) not in solid_edges:
            return False
        a, b = tuple(e)
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def random_cut_tree(Q: SolidModel, seed: int) -> set[frozenset]:
    """Random-weight minimum spanning tree of Q's vertex graph."""
    rng = random.Random(seed)
    edges = sorted(Q.edges(), key=lambda e: rng.random())
    parent = list(range(Q.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()
    for e in edges:
        a, b = tuple(e)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tree.add(frozenset(e))
    return tree


def _develop(Q: SolidModel, cut: set[frozenset]):
    """Place every face in the plane, rolling across uncut edges only."""
    placements: dict[int, Placement] = {
        0: Placement(0, np.eye(2), np.zeros(2), False)
    }
    stack = [0]
    while stack:
        f = stack.pop()
        cyc = Q.faces[f]
        for k in range(len(cyc)):
            e = frozenset((cyc[k], cyc[(k + 1) % len(cyc)]))
            if e in cut:
                continue
            f2, _ = Q.edge_adjacency[(f, k)]
            if f2 in placements:
                continue
            placements[f2] = Q.roll(placements[f], k)
            stack.append(f2)
    if len(placements) != len(Q.faces):
        raise NotSpanningTree("cut set disconnects the face graph")
    return placements


def _boundary_walk(Q: SolidModel, cut: set[frozenset], placements):
    """Directed boundary edges of the development, as placed start points."""
    def is_cut(f, k):
        cyc = Q.faces[f]
        return frozenset((cyc[k], cyc[(k + 1) % len(cyc)])) in cut

    start = None
    for f in range(len(Q.faces)):
        for k in range(len(Q.faces[f])):
            if is_cut(f, k):
                start = (f, k)
                break
        if start:
            break
    if start is None:
        raise NotSpanningTree("no cut edges at all")

    pts = []
    f, k = start
    while True:
        chart = Q.face_chart(f)
        pts.append(placements[f].apply(chart[k]))
        # advance around the head vertex of (f, k) to the next boundary edge
        f2, k2 = f, (k + 1) % len(Q.faces[f])
        while not is_cut(f2, k2):
            f2, k2 = Q.edge_adjacency[(f2, k2)]
            k2 = (k2 + 1) % len(Q.faces[f2])
        f, k = f2, k2
        if (f, k) == start:
            break
        if len(pts) > 4 * sum(len(c) for c in Q.faces):
            raise NotSpanningTree("boundary walk failed to close")
    return pts


def edge_unfolding(Q: SolidModel, tree) -> Polygon | OverlapFailure:
    """Develop Q with the given cut tree; the net polygon if it is simple."""
    cut = {frozenset(e) for e in tree}
    if not _is_spanning_tree(Q, cut):
        raise NotSpanningTree("cut set is not a spanning tree of Q's vertices")
    placements = _develop(Q, cut)
    pts = _boundary_walk(Q, cut, placements)
    eps = Q.tol.eps_len
    # overlapping faces mean the development is not a net even if its
    # boundary stays simple
    polys = [placements[f].apply(Q.face_chart(f)) for f in range(len(Q.faces))]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            rings = (polys[i], polys[j])
            if rings[0] is None:
                continue
            a = rings[0] if not placements[i].mirrored else rings[0][::-1]
            b = rings[1] if not placements[j].mirrored else rings[1][::-1]
            inter = clip_convex(a, b, eps)
            if inter is not None and signed_area(inter) > 100 * eps:
                return OverlapFailure("faces %d and %d overlap" % (i, j))
    try:
        return Polygon(np.array(pts))
    except NonSimplePolygon as exc:
        return OverlapFailure(str(exc))


def enumerate_edge_unfoldings(Q: SolidModel, limit: int = 200000) -> list[Polygon]:
    """All congruence-distinct nets of Q over every spanning cut tree."""
    from itertools import combinations

    edges = Q.edges()
    m = Q.n_vertices
    total = math.comb(len(edges), m - 1)
    if total > limit:
        raise ValueError(
            "enumeration over %d edge subsets is not supported" % total
        )
    seen = {}
    for subset in combinations(edges, m - 1):
        cut = {frozenset(e) for e in subset}
        if not _is_spanning_tree(Q, cut):
            continue
        net = edge_unfolding(Q, cut)
        if isinstance(net, OverlapFailure):
            continue
        sig = congruence_signature(net)
        if sig not in seen:
            seen[sig] = net
    return list(seen.values())


def congruence_signature(P: Polygon, decimals: int = 6) -> tuple:
    """Boundary length-angle sequence, canonical up to rotation and reflection."""
    n = P.n
    seq = [
        (round(float(P.edge_lengths[i]), decimals), round(float(P.angles[i]), decimals))
        for i in range(n)
    ]
    best = None
    for flip in (False, True):
        if flip:
            # reversed traversal: lengths shift by one relative to angles
            s = [
                (round(float(P.edge_lengths[(i - 1) % n]), decimals),
                 round(float(P.angles[i]), decimals))
                for i in range(n - 1, -1, -1)
            ]
        else:
            s = seq
        for r in range(n):
            cand = tuple(s[r:] + s[:r])
            if best is None or cand < best:
                best = cand
    return best


def star_unfolding_tetramonohedron(a: float, b: float, c: float) -> Polygon:
    """Star unfolding of Q(a,b,c): the doubled triangle with midpoint creases."""
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        if x * x + y * y <= z * z + 1e-12 * max(a, b, c) ** 2:
            raise NonAcuteTriangle("(%.6g, %.6g, %.6g) is not acute" % (a, b, c))
    A = np.array([0.0, 0.0])
    B = np.array([2.0 * a, 0.0])
    x = (a * a + b * b - c * c) / a
    y = math.sqrt(max(4.0 * b * b - x * x, 0.0))
    C = np.array([x, y])
    return Polygon(np.array([A, B, C]))
