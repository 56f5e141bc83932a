"""Independent certificate verifier: push regions onto the solid and check the tiling.

This deliberately shares no logic with the zip gluing loop; it only uses the
region shapes and placements stored in a certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import Polygon, clip_convex, signed_area
from .gluing import FoldingCertificate
from .solid import SolidModel


@dataclass
class VerifyReport:
    ok: bool
    reasons: list[str] = field(default_factory=list)
    face_area_errors: dict[int, float] = field(default_factory=dict)
    max_overlap_fraction: float = 0.0
    area_covered: float = 0.0


def verify_certificate(P: Polygon, Q: SolidModel, cert: FoldingCertificate,
                       rel_area: float = 1e-6,
                       overlap_frac: float = 1e-9) -> VerifyReport:
    """Check that the certificate's regions tile Q exactly.

    Per face: pushed-region areas must sum to the face area within rel_area
    relative error, and any two pushed regions may overlap by at most
    overlap_frac of the face area.
    """
    eps = P.tol.eps_len
    report = VerifyReport(ok=True)

    by_face: dict[int, list[tuple[int, list[np.ndarray]]]] = {}
    total_area = 0.0
    for rp in cert.region_map:
        chart = Q.face_chart(rp.face)
        local_pieces = []
        for piece in rp.pieces:
            local = rp.placement.inverse_point(piece)
            if rp.placement.mirrored:
                local = local[::-1]  # keep rings counterclockwise
            a = signed_area(local)
            total_area += a
            inside = clip_convex(local, chart, eps)
            in_area = signed_area(inside) if inside is not None else 0.0
            if a > eps and in_area < a - max(rel_area * a, eps):
                report.ok = False
                report.reasons.append(
                    "region %d leaks outside face %d" % (rp.index, rp.face)
                )
            local_pieces.append(local)
        by_face.setdefault(rp.face, []).append((rp.index, local_pieces))

    report.area_covered = total_area
    if abs(total_area - P.area) > max(rel_area * P.area, eps * P.perimeter):
        report.ok = False
        report.reasons.append(
            "regions cover %.12g, polygon area is %.12g" % (total_area, P.area)
        )

    for f in range(len(Q.faces)):
        face_area = Q.face_area(f)
        entries = by_face.get(f, [])
        pushed = sum(
            signed_area(p) for _, pieces in entries for p in pieces
        )
        err = abs(pushed - face_area)
        report.face_area_errors[f] = err
        if err > rel_area * face_area:
            report.ok = False
            report.reasons.append(
                "face %d covered by %.12g, area is %.12g" % (f, pushed, face_area)
            )
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                ov = 0.0
                for p1 in entries[i][1]:
                    for p2 in entries[j][1]:
                        inter = clip_convex(p1, p2, eps)
                        if inter is not None:
                            ov += signed_area(inter)
                frac = ov / face_area
                report.max_overlap_fraction = max(report.max_overlap_fraction, frac)
                if frac > overlap_frac:
                    report.ok = False
                    report.reasons.append(
                        "regions %d and %d overlap on face %d by %.3g of its area"
                        % (entries[i][0], entries[j][0], f, frac)
                    )
    return report
