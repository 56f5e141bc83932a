"""Command-line frontend: fold / netgen / verify with JSON and SVG output."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from .geometry import GeometryError, Polygon, Tolerance
from .gluing import FoldingCertificate, RegionPlacement
from .netgen import (
    OverlapFailure,
    edge_unfolding,
    enumerate_edge_unfoldings,
    random_cut_tree,
    star_unfolding_tetramonohedron,
)
from .solid import Placement, SolidError, SolidModel, build_solid
from .solvers import fold_report
from .stamping import Crease
from .verify import verify_certificate

TARGETS = ("cube", "box", "tetra", "tetramono", "octa", "icosa", "dodeca", "delta")


def _load_polygon(path: str, eps: float | None) -> Polygon:
    with open(path) as fh:
        obj = json.load(fh)
    tol = Tolerance(eps_len=eps) if eps else None
    return Polygon.from_json(obj, tol=tol)


def _load_solid(args) -> SolidModel:
    kw = {}
    if args.target in ("box", "tetramono"):
        if args.a is None or args.b is None or args.c is None:
            raise SolidError("--a --b --c are required for %s" % args.target)
        kw.update(a=args.a, b=args.b, c=args.c)
    if args.target == "delta":
        if not args.solid:
            raise SolidError("--solid FILE is required for delta")
        with open(args.solid) as fh:
            obj = json.load(fh)
        kw.update(vertices=obj["vertices"], faces=obj["faces"])
    return build_solid(args.target, **kw)


def certificate_to_json(cert: FoldingCertificate) -> dict:
    creases = []
    for cr in cert.creases:
        creases.append(
            [
                [float(cr.a[0]), float(cr.a[1])],
                [float(cr.b[0]), float(cr.b[1])],
                {"faces": [int(cr.faces[0]), int(cr.faces[1])]},
            ]
        )
    region_map = []
    for rp in cert.region_map:
        region_map.append(
            {
                "region": rp.index,
                "face": rp.face,
                "matrix": [[float(x) for x in row] for row in rp.placement.matrix],
                "offset": [float(x) for x in rp.placement.offset],
                "mirrored": bool(rp.placement.mirrored),
                "shape": [
                    [[float(x), float(y)] for x, y in piece] for piece in rp.pieces
                ],
            }
        )
    pairing = [
        [
            [[float(p.a[0][0]), float(p.a[0][1])], [float(p.a[1][0]), float(p.a[1][1])]],
            [[float(p.b[0][0]), float(p.b[0][1])], [float(p.b[1][0]), float(p.b[1][1])]],
        ]
        for p in cert.boundary_pairing
    ]
    return {
        "creases": creases,
        "region_map": region_map,
        "boundary_pairing": pairing,
        "warnings": cert.warnings,
    }


def certificate_from_json(obj: dict) -> FoldingCertificate:
    creases = []
    for a, b, meta in obj.get("creases", []):
        creases.append(
            Crease(
                a=np.array(a, float),
                b=np.array(b, float),
                faces=tuple(meta["faces"]),
                surface_a=None,
                surface_b=None,
            )
        )
    region_map = []
    for rm in obj.get("region_map", []):
        region_map.append(
            RegionPlacement(
                index=rm["region"],
                face=rm["face"],
                placement=Placement(
                    face=rm["face"],
                    matrix=np.array(rm["matrix"], float),
                    offset=np.array(rm["offset"], float),
                    mirrored=bool(rm["mirrored"]),
                ),
                pieces=[np.array(p, float) for p in rm["shape"]],
            )
        )
    return FoldingCertificate(
        creases=creases,
        region_map=region_map,
        boundary_pairing=[],
        warnings=obj.get("warnings", []),
    )


def write_svg(path: str, P: Polygon, cert: FoldingCertificate | None,
              scale: float = 100.0):
    pts = P.vertices * scale
    lo = pts.min(axis=0) - 0.5 * scale
    hi = pts.max(axis=0) + 0.5 * scale
    w, h = hi - lo

    def sx(p):
        return p[0] * scale - lo[0]

    def sy(p):
        return hi[1] - p[1] * scale  # flip y for SVG

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%.1f" height="%.1f" viewBox="0 0 %.1f %.1f">' % (w, h, w, h),
    ]
    ring = " ".join(
        "%.3f,%.3f" % (sx(p), sy(p)) for p in P.vertices
    )
    lines.append(
        '<polygon points="%s" fill="none" stroke="black" stroke-width="2"/>' % ring
    )
    if cert is not None:
        for cr in cert.creases:
            lines.append(
                '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="black" '
                'stroke-width="1" stroke-dasharray="6,4">'
                "<title>faces %d|%d</title></line>"
                % (
                    sx(cr.a), sy(cr.a), sx(cr.b), sy(cr.b),
                    cr.faces[0], cr.faces[1],
                )
            )
            mid = 0.5 * (cr.a + cr.b)
            lines.append(
                '<text x="%.3f" y="%.3f" font-size="12" fill="gray">%d|%d</text>'
                % (sx(mid), sy(mid), cr.faces[0], cr.faces[1])
            )
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines))


def _cmd_fold(args) -> int:
    try:
        P = _load_polygon(args.polygon, args.tolerance)
        t0 = time.time()
        kw = {}
        if args.target in ("box", "tetramono"):
            kw.update(a=args.a, b=args.b, c=args.c)
        if args.target == "delta":
            kw["solid"] = _load_solid(args)
        outcome = fold_report(
            P, args.target, first_only=not args.all, **kw
        )
    except (GeometryError, SolidError, OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    wall = time.time() - t0
    decision = "YES" if outcome.certificates else "NO"
    report = {
        "decision": decision,
        "certificates": [certificate_to_json(c) for c in outcome.certificates],
        "stats": {
            "candidates": outcome.stats.candidates,
            "stampings": outcome.stats.stampings,
            "glue_checks": outcome.stats.glue_checks,
            "wall_time_s": wall,
        },
        "warnings": outcome.warnings,
    }
    text = json.dumps(report, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    print(
        "%s: %d certificate(s), %d candidates, %.2fs"
        % (decision, len(outcome.certificates), outcome.stats.candidates, wall)
    )
    if not args.json:
        print(text)
    if args.svg:
        write_svg(
            args.svg, P, outcome.certificates[0] if outcome.certificates else None
        )
    return 0 if decision == "YES" else 1


def _cmd_netgen(args) -> int:
    try:
        if args.target == "tetramono" and not args.enumerate:
            nets = [star_unfolding_tetramonohedron(args.a, args.b, args.c)]
        else:
            Q = _load_solid(args)
            if args.enumerate:
                nets = enumerate_edge_unfoldings(Q)
            else:
                net = edge_unfolding(Q, random_cut_tree(Q, args.seed))
                if isinstance(net, OverlapFailure):
                    print("development overlaps: %s" % net.detail, file=sys.stderr)
                    return 1
                nets = [net]
    except (GeometryError, SolidError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    import os

    os.makedirs(args.out, exist_ok=True)
    for i, net in enumerate(nets):
        name = "%s_net_%02d.json" % (args.target, i)
        with open(os.path.join(args.out, name), "w") as fh:
            json.dump(net.to_json(), fh)
        print(os.path.join(args.out, name))
    return 0


def _cmd_verify(args) -> int:
    try:
        P = _load_polygon(args.polygon, args.tolerance)
        Q = _load_solid(args)
        with open(args.certificate) as fh:
            cert = certificate_from_json(json.load(fh))
        report = verify_certificate(P, Q, cert)
    except (GeometryError, SolidError, OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    print("verify: %s" % ("PASS" if report.ok else "FAIL"))
    for r in report.reasons:
        print("  " + r)
    return 0 if report.ok else 1


def _add_target_args(sp):
    sp.add_argument("--target", required=True, choices=TARGETS)
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--c", type=float)
    sp.add_argument("--solid", help="solid JSON file (delta target)")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="stampfold",
        description="Decide polygon-to-solid foldability by stamping",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    f = sub.add_parser("fold", help="decide and certify foldings")
    f.add_argument("--polygon", required=True)
    _add_target_args(f)
    g = f.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="enumerate all foldings")
    g.add_argument("--first", action="store_true", help="stop at the first folding")
    f.add_argument("--tolerance", type=float, help="override eps_len")
    f.add_argument("--svg", help="write the crease pattern as SVG")
    f.add_argument("--json", help="write the full report as JSON")
    f.set_defaults(func=_cmd_fold)

    n = sub.add_parser("netgen", help="generate oracle nets")
    _add_target_args(n)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--enumerate", action="store_true",
                   help="all congruence-distinct edge unfoldings")
    n.add_argument("--out", default=".", help="output directory")
    n.set_defaults(func=_cmd_netgen)

    v = sub.add_parser("verify", help="run the tiling verifier on a certificate")
    v.add_argument("--certificate", required=True)
    v.add_argument("--polygon", required=True)
    _add_target_args(v)
    v.add_argument("--tolerance", type=float)
    v.set_defaults(func=_cmd_verify)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
