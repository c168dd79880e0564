"""Command-line front end: ``penrose-tomo <command> ...``.

Exit codes: 0 success, 1 infeasible or not unique, 2 usage or input error,
3 non-generic window shift.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import determine as det
from . import formats as fm
from . import xray as xr
from .cyclotomic import CycInt, PlaneCoord, canonical_direction
from .modelset import (
    DEFAULT_SPEC,
    NonGenericShift,
    WindowSpec,
    class_frequencies,
    fit_some_pms,
    generate_patch,
)
from .qtau import QTau
from .render import patch_scene, render
from .tomo import InfeasibleError, build_grid, consistency_any_pms, reconstruct, uniqueness

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_NONGENERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(doc, out) -> None:
    text = fm.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _direction(text: str):
    z = fm.parse_cycint(text)
    if not z:
        raise UsageError("direction must be a nonzero cyclotomic integer")
    return canonical_direction(z)


def _spec_from_args(args) -> WindowSpec:
    if args.shift is None:
        return WindowSpec(DEFAULT_SPEC.shift, args.class_rotation)
    p, q = fm.parse_shift(args.shift)
    return WindowSpec(PlaneCoord(p, q), args.class_rotation)


def _admit_for(patch_path):
    patch = fm.load_patch(patch_path)
    return patch, (lambda z: z in patch)


# -- commands ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    radius = fm.parse_qtau(args.radius)
    if radius.sign() <= 0:
        raise UsageError("radius must be positive")
    patch = generate_patch(radius, _spec_from_args(args))
    _emit(fm.patch_doc(patch), args.out)
    print(f"{len(patch)} points within radius {radius}", file=sys.stderr)
    return EXIT_OK


def cmd_xray(args) -> int:
    pts = fm.load_points(args.points)
    _emit(xr.xray(pts, _direction(args.dir)).to_json(), args.out)
    return EXIT_OK


def _solution_doc(status, points=(), spec=None) -> dict:
    doc = {"status": status, "points": fm.points_to_json(points)}
    if spec is not None:
        doc["witness_spec"] = spec.to_json()
    return doc


def cmd_reconstruct(args) -> int:
    xray_files, patch_ref = list(args.xray or []), args.patch
    any_pms = args.any_pms
    if args.request:
        req = fm.read(args.request)
        base = Path(args.request).parent
        if not isinstance(req, dict) or "xrays" not in req or "patch" not in req:
            raise UsageError("a reconstruction request needs 'xrays' and 'patch'")
        xray_files = [base / f for f in req["xrays"]]
        any_pms = req["patch"] == "any_pms"
        patch_ref = None if any_pms else base / req["patch"]
    if len(xray_files) != 2:
        raise UsageError("reconstruct needs exactly two X-ray files")
    if any_pms == (patch_ref is not None):
        raise UsageError("give either --patch FILE or --any-pms")
    p1, p2 = (xr.load(f) for f in xray_files)
    if p1.direction == p2.direction:
        raise UsageError("the two X-rays must use non-parallel directions")
    try:
        if any_pms:
            sol = consistency_any_pms(p1, p2)
            _emit(_solution_doc("ok", sol.points, sol.spec), args.out)
        else:
            _, admit = _admit_for(patch_ref)
            sol = reconstruct(build_grid(p1, p2, admit), p1, p2)
            _emit(_solution_doc("ok", sol.points), args.out)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        _emit(_solution_doc("infeasible"), args.out)
        return EXIT_NO
    return EXIT_OK


def cmd_unique(args) -> int:
    pts = fm.load_points(args.points)
    if len(args.dir) != 2:
        raise UsageError("unique needs exactly two --dir options")
    u1, u2 = (_direction(d) for d in args.dir)
    if u1 == u2:
        raise UsageError("the two directions must not be parallel")
    admit = _admit_for(args.patch)[1] if args.patch else None
    res = uniqueness(pts, u1, u2, admit)
    if res.unique:
        _emit(_solution_doc("ok", pts), args.out)
        return EXIT_OK
    _emit(_solution_doc("nonunique", res.witness), args.out)
    return EXIT_NO


def cmd_fit(args) -> int:
    pts = fm.load_points(args.points)
    if not pts:
        raise UsageError("fit needs a nonempty point set")
    wit = fit_some_pms(pts)
    if wit is None:
        _emit({"status": "infeasible"}, args.out)
        return EXIT_NO
    spec = wit.spec()
    _emit({
        "status": "ok",
        "class_rotation": wit.class_rotation,
        "polygon": [v.to_json() for v in wit.polygon],
        "witness_spec": spec.to_json(),
    }, args.out)
    return EXIT_OK


def _direction_list(args) -> det.DirectionSet:
    if args.dir:
        return det.DirectionSet(tuple(_direction(d) for d in args.dir))
    if args.pool:
        return det.default_pool(args.pool)
    raise UsageError("give directions with --dir or --pool N")


def cmd_counterexample(args) -> int:
    U = _direction_list(args)
    pair = det.even_odd_pair(U, compact=args.compact)
    spec = None
    if args.fixed_spec:
        spec = fm.load_patch(args.patch).spec if args.patch else DEFAULT_SPEC
    found = det.embed_pair_in_common_pms(pair.even, pair.odd, fm.parse_qtau(args.search_radius), spec)
    doc = {
        "directions": U.to_json(),
        "vectors": [v.to_json() for v in pair.vectors],
        "multipliers": list(pair.trace),
    }
    if found is None:
        doc.update({"status": "infeasible", "F": fm.points_to_json(pair.even), "F_prime": fm.points_to_json(pair.odd)})
        _emit(doc, args.out)
        return EXIT_NO
    t = found.translate
    doc.update({
        "status": "ok",
        "translate": t.to_json(),
        "witness_spec": found.spec.to_json(),
        "F": fm.points_to_json(t + z for z in pair.even),
        "F_prime": fm.points_to_json(t + z for z in pair.odd),
    })
    _emit(doc, args.out)
    return EXIT_OK


def _qtau_field(value, name: str) -> QTau:
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return fm.parse_qtau(str(value))
    try:
        return QTau.from_json(value)
    except ValueError:
        raise UsageError(f"manifest field {name!r} is not a number") from None


def run_manifest(manifest: dict, base: Path, timing: bool = False) -> tuple[dict, det.DeterminationResult]:
    kind = manifest.get("enumerator")
    region = manifest.get("region", {})
    if not isinstance(region, dict) or "radius" not in region:
        raise UsageError("manifest needs region.radius")
    radius = _qtau_field(region["radius"], "region.radius")
    if "patch" in region:
        patch = fm.load_patch(base / region["patch"])
    else:
        spec = WindowSpec.from_json(region["spec"]) if "spec" in region else DEFAULT_SPEC
        patch = generate_patch(_qtau_field(region.get("patch_radius", region["radius"]), "region.patch_radius"), spec)
    pts = det.region_points(patch, radius)
    dirs = manifest.get("directions", "u5")
    if dirs == "u5":
        U = det.u5_directions()
    elif isinstance(dirs, dict) and "pool" in dirs:
        U = det.default_pool(int(dirs["pool"]))
    elif isinstance(dirs, list):
        U = det.DirectionSet.of([CycInt.from_json(d) for d in dirs])
    else:
        raise UsageError(f"bad directions entry {dirs!r}")
    R = _qtau_field(manifest["R"], "R") if "R" in manifest else None
    enum = det.make_enumerator(kind, pts, k=manifest.get("k"), R=R, cap=int(manifest.get("cap", 40)))
    table_path = manifest.get("signature_table")
    res = det.check_determination(enum, U, seed=int(manifest.get("seed", 0)), keep_table=bool(table_path))
    report = {
        "enumerator": kind,
        "region": {"radius": radius.to_json(), "points": len(pts), "spec": patch.spec.to_json()},
        "directions": U.to_json(),
    }
    body = res.to_json()
    if not timing:
        body.pop("seconds")
    report.update(body)
    if table_path:
        out = base / table_path
        table = res.table if res.table is not None else np.zeros(0, dtype=np.uint64)
        np.save(out, table)
        report["signature_table"] = {"path": str(table_path), "entries": int(table.size), "dtype": "uint64"}
    return report, res


def cmd_determine(args) -> int:
    manifest = fm.read(args.manifest)
    if not isinstance(manifest, dict):
        raise UsageError("a manifest must be a JSON object")
    base = Path(args.manifest).parent
    report, res = run_manifest(manifest, base, timing=args.timing)
    out = args.out or (base / manifest["report"] if "report" in manifest else None)
    _emit(report, out)
    return EXIT_OK if res.determined else EXIT_NO


def cmd_successive(args) -> int:
    hidden = fm.load_points(args.hidden)
    oracle = det.hidden_set_oracle(hidden)
    if args.mode == "fixed_pms":
        if not args.patch or args.region is None:
            raise UsageError("fixed_pms mode needs --patch and --region")
        patch = fm.load_patch(args.patch)
        res = det.successive_determine(oracle, "fixed_pms", patch=patch, region_radius=fm.parse_qtau(args.region))
    else:
        res = det.successive_determine(oracle, "any_pms")
    _emit({
        "status": "ok",
        "points": fm.points_to_json(res.points),
        "queries": [u.to_json() for u in res.queries],
        "n_queries": res.n_queries,
    }, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    spec = None
    if args.patch:
        patch = fm.load_patch(args.patch)
        pts, spec = patch.points, patch.spec
    elif args.points:
        pts = fm.load_points(args.points)
    else:
        pts = ()
    sol = fm.load_points(args.solution) if args.solution else ()
    alt = fm.load_points(args.alternative) if args.alternative else ()
    xrays = [xr.load(f) for f in (args.xray or [])]
    scene = patch_scene(pts, sol, alt, window=spec if args.window else None, xrays=xrays)
    data = render(scene)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return EXIT_OK


def cmd_stats(args) -> int:
    if args.patch:
        patch = fm.load_patch(args.patch)
        pts, spec = patch.points, patch.spec
    else:
        pts, spec = fm.load_points(args.points), DEFAULT_SPEC
    freq = class_frequencies(pts, spec)
    doc = {
        "points": len(pts),
        "class_frequencies": {str(k): round(v, 6) for k, v in freq.items()},
    }
    if args.dir:
        doc["line_density"] = []
        for d in args.dir:
            info = xr.line_density(pts, _direction(d))
            for key in ("mean_per_line", "min_spacing", "max_spacing", "mean_spacing"):
                info[key] = round(info[key], 6)
            doc["line_density"].append(info)
    if args.scan:
        vx, vy = (fm.parse_rational(s) for s in args.scan.split(","))
        doc["multiplicity_scan"] = {
            "vector": [str(vx), str(vy)],
            "max_multiplicity": xr.multiplicity_scan(pts, vx, vy),
        }
    _emit(doc, args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="penrose-tomo", description="Discrete tomography of Penrose model sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def out(p):
        p.add_argument("--out", help="output file (default: standard output)")

    p = sub.add_parser("gen", help="generate a model-set patch")
    p.add_argument("--radius", required=True, help="disk radius, e.g. 10 or 7/2 or 1+2t")
    p.add_argument("--shift", help="internal shift p,q (default 1/7,1/11)")
    p.add_argument("--class-rotation", type=int, default=0)
    out(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("xray", help="X-ray of a point set in one direction")
    p.add_argument("--points", required=True)
    p.add_argument("--dir", required=True, help="direction a0,a1,a2,a3")
    out(p)
    p.set_defaults(func=cmd_xray)

    p = sub.add_parser("reconstruct", help="reconstruct a set from two X-rays")
    p.add_argument("--xray", action="append")
    p.add_argument("--patch")
    p.add_argument("--any-pms", action="store_true")
    p.add_argument("--request", help="request JSON naming the X-ray files and the patch")
    out(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("unique", help="decide uniqueness from two X-rays")
    p.add_argument("--points", required=True)
    p.add_argument("--dir", action="append", required=True)
    p.add_argument("--patch")
    out(p)
    p.set_defaults(func=cmd_unique)

    p = sub.add_parser("fit", help="find a Penrose model set containing a point set")
    p.add_argument("--points", required=True)
    out(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("counterexample", help="even/odd pair with equal X-rays")
    p.add_argument("--dir", action="append")
    p.add_argument("--pool", type=int)
    p.add_argument("--compact", action="store_true")
    p.add_argument("--search-radius", default="30")
    p.add_argument("--fixed-spec", action="store_true", help="require the window of --patch (or the default)")
    p.add_argument("--patch")
    out(p)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("determine", help="run a determination experiment manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--timing", action="store_true", help="record the runtime in the report")
    out(p)
    p.set_defaults(func=cmd_determine)

    p = sub.add_parser("successive", help="adaptive recovery of a hidden set")
    p.add_argument("--hidden", required=True)
    p.add_argument("--mode", choices=["fixed_pms", "any_pms"], required=True)
    p.add_argument("--patch")
    p.add_argument("--region")
    out(p)
    p.set_defaults(func=cmd_successive)

    p = sub.add_parser("render", help="SVG drawing of a patch and overlays")
    p.add_argument("--patch")
    p.add_argument("--points")
    p.add_argument("--solution")
    p.add_argument("--alternative")
    p.add_argument("--xray", action="append")
    p.add_argument("--window", action="store_true", help="add the internal-space panel")
    out(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("stats", help="class frequencies, line density and multiplicity scans")
    p.add_argument("--patch")
    p.add_argument("--points")
    p.add_argument("--dir", action="append")
    p.add_argument("--scan", help="rational planar vector vx,vy")
    out(p)
    p.set_defaults(func=cmd_stats)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NonGenericShift as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONGENERIC
    except (UsageError, fm.FormatError, xr.XRayFormatError, det.RegionTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except det.PoolExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
