"""Command-line interface: build polytopes, compute h*, verify the table.

Exit codes: 0 ok, 1 mathematical mismatch, 2 input error, 3 budget error.
Reports are JSON on stdout with deterministic result fields; budgets are
flags (--budget-points, --budget-cells) with environment fallbacks
LAPOLY_BUDGET_POINTS / LAPOLY_BUDGET_CELLS.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources

from .budgets import BudgetError, cell_budget, point_budget
from .complexes import boundary_of_simplex, read_complex_file
from .ehrhart import (
    ehrhart_counts,
    hstar_from_counts,
    hstar_simplex_fundamental,
    hstar_structural,
    is_palindromic,
    is_real_rooted,
    is_unimodal,
)
from .laplacian import laplacian_polytope, reduce_full_dim
from .triangulate import h_vector_of, laplacian_triangulation

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

# per-oracle caps used by verify-table so the full run stays in budget
VERIFY_CENSUS_MAX_D = 4
VERIFY_EHRHART_MAX_D = 4
VERIFY_FUNDAMENTAL_MAX_D = 7


def _digest(payload):
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True).encode("utf-8")
    ).hexdigest()


def _report(command, inputs, results, timings, budgets):
    return {
        "command": command,
        "inputs": {"digest": _digest(inputs), **inputs},
        "results": results,
        "timings": timings,
        "budget": budgets,
    }


def _emit(report):
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def load_reference_table(path=None):
    """The reference h*-vectors, keyed by integer d."""
    if path is None:
        text = (
            resources.files("lapoly").joinpath("reference_hstar.json").read_text()
        )
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    data = json.loads(text)
    return {int(k): tuple(v) for k, v in data["rows"].items()}


def hstar_by_method(d, method, points_budget=None, cells_budget=None):
    """h*-vector of the reduced Laplacian polytope by the chosen method."""
    if method == "structural":
        return tuple(hstar_structural(d))
    if method == "census":
        tri = laplacian_triangulation(d, budget=cells_budget)
        h = h_vector_of(tri)
        length = d + 2 if d % 2 else d + 1
        if any(h[length:]):
            raise AssertionError("census h-vector has nonzero tail")
        return tuple(h[:length])
    if method == "fundamental":
        if d % 2 == 0:
            raise ValueError(
                "the fundamental-parallelepiped method needs a simplex "
                "(odd d only)"
            )
        poly, _ = reduce_full_dim(d)
        return tuple(hstar_simplex_fundamental(poly.points, budget=points_budget))
    if method == "ehrhart":
        poly, _ = reduce_full_dim(d)
        dim = poly.ambient_dim
        counts = ehrhart_counts(poly, dim, budget=points_budget)
        return tuple(hstar_from_counts(counts, dim))
    raise ValueError(f"unknown method {method!r}")


def cmd_build(args):
    t0 = time.time()
    if (args.boundary_simplex is None) == (args.complex is None):
        print("error: give exactly one of --boundary-simplex or --complex",
              file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.boundary_simplex is not None:
            c = boundary_of_simplex(args.boundary_simplex)
            source = {"boundary_simplex": args.boundary_simplex}
        else:
            c = read_complex_file(args.complex)
            source = {"complex_file": args.complex}
        poly = laplacian_polytope(c, args.k)
        dim, equations = poly.affine_hull()
        reduced, basis, base = poly.full_dimensional()
        results = {
            "ambient_dim": poly.ambient_dim,
            "dim": dim,
            "vertices": [list(p) for p in poly.vertices()],
            "vertex_count": len(poly.vertex_indices()),
            "affine_hull": [
                {"normal": list(n), "offset": b} for n, b in equations
            ],
            "reduction": {
                "basis": [list(row) for row in basis],
                "base": list(base),
            },
            "facets": [
                {"normal": list(h.normal), "offset": h.offset}
                for h in (reduced.facets() if dim > 0 else [])
            ],
            "facet_count": len(reduced.facets()) if dim > 0 else 0,
        }
    except (ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    inputs = {**source, "k": args.k}
    _emit(_report("build", inputs, results,
                  {"seconds": round(time.time() - t0, 3)},
                  _budget_block(args)))
    return EXIT_OK


def cmd_hstar(args):
    t0 = time.time()
    try:
        h = hstar_by_method(
            args.d, args.method,
            points_budget=args.budget_points, cells_budget=args.budget_cells,
        )
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    uni, peak = is_unimodal(h)
    dim = args.d + 1 if args.d % 2 else args.d
    results = {
        "d": args.d,
        "method": args.method,
        "hstar": list(h),
        "volume": sum(h),
        "unimodal": uni,
        "peak": peak,
        "palindromic": is_palindromic(h, dim),
        "real_rooted": is_real_rooted(h),
    }
    _emit(_report("hstar", {"d": args.d, "method": args.method}, results,
                  {"seconds": round(time.time() - t0, 3)},
                  _budget_block(args)))
    return EXIT_OK


def cmd_verify_table(args):
    t0 = time.time()
    try:
        table = load_reference_table(args.table)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot load table: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.max_d < 1:
        print("error: --max-d must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    rows = {}
    all_ok = True
    for d in range(1, args.max_d + 1):
        structural = hstar_by_method(d, "structural")
        entry = {"structural": list(structural), "oracles": {}}
        reference = table.get(d)
        if reference is not None:
            entry["reference"] = list(reference)
            entry["match"] = tuple(structural) == tuple(reference)
            if not entry["match"]:
                entry["diff"] = [
                    {"index": i, "computed": a, "reference": b}
                    for i, (a, b) in enumerate(zip(structural, reference))
                    if a != b
                ]
                all_ok = False
        else:
            entry["match"] = None
        try:
            if d <= VERIFY_CENSUS_MAX_D:
                entry["oracles"]["census"] = list(
                    hstar_by_method(d, "census", cells_budget=args.budget_cells)
                )
            if d <= VERIFY_EHRHART_MAX_D:
                entry["oracles"]["ehrhart"] = list(
                    hstar_by_method(d, "ehrhart", points_budget=args.budget_points)
                )
            if d % 2 and d <= VERIFY_FUNDAMENTAL_MAX_D:
                entry["oracles"]["fundamental"] = list(
                    hstar_by_method(d, "fundamental",
                                    points_budget=args.budget_points)
                )
        except BudgetError as exc:
            print(f"budget exhausted: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        for name, vec in entry["oracles"].items():
            if tuple(vec) != tuple(structural):
                entry["oracle_mismatch"] = name
                all_ok = False
        entry["volume_ok"] = sum(structural) == (d + 2) ** d
        if not entry["volume_ok"]:
            all_ok = False
        rows[str(d)] = entry
        status = "pass" if entry.get("match") in (True, None) else "FAIL"
        print(f"d={d}: {status}", file=sys.stderr)
    results = {"rows": rows, "ok": all_ok}
    _emit(_report("verify-table", {"max_d": args.max_d, "table": args.table},
                  results, {"seconds": round(time.time() - t0, 3)},
                  _budget_block(args)))
    return EXIT_OK if all_ok else EXIT_MISMATCH


def _budget_block(args):
    return {
        "points": point_budget(getattr(args, "budget_points", None)),
        "cells": cell_budget(getattr(args, "budget_cells", None)),
    }


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lapoly",
        description="Laplacian polytopes: exact facets, triangulations and "
        "h*-vectors.",
    )
    parser.add_argument("--budget-points", type=int, default=None,
                        help="candidate-point budget for box scans")
    parser.add_argument("--budget-cells", type=int, default=None,
                        help="cell budget for materialized triangulations")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_build = sub.add_parser("build", help="Laplacian polytope of a complex")
    p_build.add_argument("--boundary-simplex", type=int, default=None,
                         metavar="D", help="use the boundary of the D-simplex")
    p_build.add_argument("--complex", type=str, default=None, metavar="FILE",
                         help="complex file (order: line plus one facet per line)")
    p_build.add_argument("--k", type=int, required=True,
                         help="Laplacian index")
    p_build.set_defaults(func=cmd_build)

    p_hstar = sub.add_parser("hstar", help="h*-vector of the reduced polytope")
    p_hstar.add_argument("--d", type=int, required=True)
    p_hstar.add_argument("--method", default="structural",
                         choices=["structural", "census", "fundamental", "ehrhart"])
    p_hstar.set_defaults(func=cmd_hstar)

    p_verify = sub.add_parser("verify-table",
                              help="compare against the reference table")
    p_verify.add_argument("--max-d", type=int, required=True)
    p_verify.add_argument("--table", type=str, default=None,
                          help="alternative reference table (JSON)")
    p_verify.set_defaults(func=cmd_verify_table)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
