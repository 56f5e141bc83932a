"""stampfold: fold a polygon onto a convex solid by rolling the solid over it."""

from .geometry import (
    Tolerance,
    Polygon,
    Location,
    polygon_metrics,
    contains_point,
    intersect_face,
)
from .solid import (
    SolidModel,
    Placement,
    SurfacePoint,
    build_solid,
    build_tetramonohedron,
    build_box,
    build_octahedron,
    build_icosahedron,
    build_dodecahedron,
    build_deltahedron,
)
from .stamping import stamp, refine_boundary, StampResult, StampReject
from .gluing import glue_check, GlueFailure, FoldingCertificate
from .verify import verify_certificate
from .solvers import (
    fold,
    fold_box,
    fold_tetramonohedron,
    fold_dodecahedron,
    fold_deltahedron,
    enumerate_lattices,
    decompose_integer_xy,
    enumerate_decompositions,
)
from .netgen import edge_unfolding, star_unfolding_tetramonohedron, random_cut_tree

__all__ = [
    "Tolerance",
    "Polygon",
    "Location",
    "polygon_metrics",
    "contains_point",
    "intersect_face",
    "SolidModel",
    "Placement",
    "SurfacePoint",
    "build_solid",
    "build_tetramonohedron",
    "build_box",
    "build_octahedron",
    "build_icosahedron",
    "build_dodecahedron",
    "build_deltahedron",
    "stamp",
    "refine_boundary",
    "StampResult",
    "StampReject",
    "glue_check",
    "GlueFailure",
    "FoldingCertificate",
    "verify_certificate",
    "fold",
    "fold_box",
    "fold_tetramonohedron",
    "fold_dodecahedron",
    "fold_deltahedron",
    "enumerate_lattices",
    "decompose_integer_xy",
    "enumerate_decompositions",
    "edge_unfolding",
    "star_unfolding_tetramonohedron",
    "random_cut_tree",
]
