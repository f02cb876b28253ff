"""Command-line front end: dim, eval, assemble, verify, cond-study.

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage error, 3 domain error, 4 input parse error, 5 degenerate
geometry.  All commands are deterministic given their flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .analysis import conditioning_study, verify_suites
from .assembly import (
    dirichlet_partition,
    mass_matrix,
    matrix_to_csv,
    restrict,
    stiffness_matrix,
    tet_matrices,
    weak_derivative_matrices,
)
from .bases import (
    BasisDescriptor,
    dimension,
    index_set,
    pyramid_eval_rst,
    quad_eval,
    tet_eval,
    triangle_eval,
)
from .errors import DomainError, GeometryError
from .geometry import VertexPyramid, geometry_hash

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_PARSE = 4
EXIT_GEOMETRY = 5

SHAPE_CHOICES = ("triangle", "quad", "tetrahedron", "pyramid")
KIND_CHOICES = ("mass", "weak_x", "weak_y", "weak_z", "stiffness")


class UsageError(Exception):
    pass


class ParseError(Exception):
    pass


def _load_geometry(path: str) -> VertexPyramid:
    try:
        with open(path) as fh:
            data = json.load(fh)
        verts = np.array(data["vertices"], dtype=float)
        if verts.shape != (5, 3):
            raise ValueError(f"expected 5 vertices in 3D, got shape {verts.shape}")
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read geometry from {path}: {exc}") from exc
    return VertexPyramid(verts)


def _parse_point(text: str, count: int) -> list[float]:
    parts = text.split(",")
    if len(parts) != count:
        raise UsageError(f"expected {count} comma-separated coordinates, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from exc


def cmd_dim(args) -> int:
    print(dimension(args.shape, args.order))
    return EXIT_OK


def cmd_eval(args) -> int:
    shape, order = args.shape, args.order
    tol = 1e-12
    if shape == "pyramid":
        r, s, t = _parse_point(args.point, 3)
        vals = pyramid_eval_rst(order, r, s, t)
    elif shape == "tetrahedron":
        x, y, z = _parse_point(args.point, 3)
        lam = np.array([1.0 - x - y - z, x, y, z])
        if lam.min() < -tol:
            raise DomainError("point outside the reference tetrahedron")
        vals = tet_eval(order, lam)
    elif shape == "triangle":
        x, y = _parse_point(args.point, 2)
        lam = np.array([1.0 - x - y, x, y])
        if lam.min() < -tol:
            raise DomainError("point outside the reference triangle")
        vals = triangle_eval(order, lam)
    else:
        a, b = _parse_point(args.point, 2)
        if min(a, b) < -tol or max(a, b) > 1.0 + tol:
            raise DomainError("point outside the reference quad")
        vals = quad_eval(order, a, b)
    for idx, val in zip(index_set(BasisDescriptor(shape, order)), vals):
        label = "(" + ",".join(str(e) for e in idx) + ")"
        print("%s: %.17g" % (label, val))
    return EXIT_OK


def _assemble_matrix(args):
    nq = args.nq
    if args.shape == "pyramid":
        pyr = _load_geometry(args.geometry) if args.geometry else VertexPyramid.reference()
        ghash = geometry_hash(pyr)
        if args.kind == "mass":
            mat = mass_matrix(args.order, pyr, nq)
        elif args.kind == "stiffness":
            mat = stiffness_matrix(args.order, pyr, nq)
        else:
            mat = weak_derivative_matrices(args.order, pyr, nq)[
                ("weak_x", "weak_y", "weak_z").index(args.kind)
            ]
    else:
        if args.kind not in ("mass", "stiffness"):
            raise UsageError(f"kind {args.kind!r} is only assembled on pyramids")
        if args.geometry:
            raise UsageError("--geometry applies to pyramids only (tetrahedron is the reference element)")
        ghash = None
        mat = tet_matrices(args.order, nq)[0 if args.kind == "mass" else 1]
    return mat, ghash


def cmd_assemble(args) -> int:
    if args.shape not in ("pyramid", "tetrahedron"):
        raise UsageError("assemble supports --shape pyramid or tetrahedron")
    mat, ghash = _assemble_matrix(args)
    restricted = False
    if args.restrict:
        part = dirichlet_partition(args.order, args.shape)
        mat = restrict(mat, part)
        restricted = True
        if mat.dim == 0:
            print(
                f"warning: {args.shape} N={args.order} has no interior DOFs; writing empty matrix",
                file=sys.stderr,
            )
    if args.format == "csv":
        text = matrix_to_csv(mat)
    else:
        payload = {
            "shape": mat.shape,
            "N": mat.order,
            "kind": mat.kind,
            "nq": mat.nq,
            "geometry_hash": ghash,
            "symmetry": mat.symmetry,
            "restricted": restricted,
            "dim": mat.dim,
            "entries": mat.entries.tolist(),
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    with open(args.out, "w") as fh:
        fh.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_suites(args.order, args.seed, fault=args.fault)
    all_passed = all(r.passed for r in results.values())
    print(f"{'suite':<26} {'max_error':>13} {'tolerance':>10}  status")
    for name, res in results.items():
        status = "PASS" if res.passed else "FAIL"
        print(f"{name:<26} {res.max_error:>13.6e} {res.tolerance:>10.0e}  {status}")
    if not all_passed:
        failing = [n for n, r in results.items() if not r.passed]
        print("failed suites: " + ", ".join(failing), file=sys.stderr)
    summary = {
        "n_max": args.order,
        "seed": args.seed,
        "all_passed": all_passed,
        "suites": {
            name: {"passed": r.passed, "max_error": r.max_error, "tolerance": r.tolerance, **r.detail}
            for name, r in results.items()
        },
    }
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


def cmd_cond_study(args) -> int:
    orders = range(1, args.order + 1)
    result = conditioning_study(
        orders,
        nq=args.nq,
        restrict_mass=args.restrict_mass,
        restrict_stiffness=not args.full_stiffness,
    )
    for shape, kind, order, reason in result.skipped:
        print(f"skipped {shape} {kind} N={order}: {reason}", file=sys.stderr)
    if args.format == "csv":
        lines = ["shape,kind,N,dof_count,nq,lambda_min,lambda_max,cond"]
        for r in result.records:
            lines.append(
                f"{r.shape},{r.kind},{r.order},{r.dof_count},{r.nq},"
                f"{r.lambda_min!r},{r.lambda_max!r},{r.cond_2norm!r}"
            )
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "meta": {"seed": args.seed, "version": __version__, "nq": args.nq,
                     "max_order": args.order},
            "records": [_record_dict(r) for r in result.records],
            "skipped": [list(s) for s in result.skipped],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    with open(args.out, "w") as fh:
        fh.write(text)
    return EXIT_OK


def _record_dict(record) -> dict:
    return {
        "shape": record.shape,
        "kind": record.kind,
        "N": record.order,
        "dof_count": record.dof_count,
        "nq": record.nq,
        "lambda_min": record.lambda_min,
        "lambda_max": record.lambda_max,
        "cond": record.cond_2norm,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bbpyr",
        description="Bernstein-Bezier pyramid basis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", help="print the basis dimension")
    p_dim.add_argument("--shape", required=True, choices=SHAPE_CHOICES)
    p_dim.add_argument("--order", required=True, type=int)
    p_dim.set_defaults(func=cmd_dim)

    p_eval = sub.add_parser("eval", help="evaluate all basis functions at a point")
    p_eval.add_argument("--shape", required=True, choices=SHAPE_CHOICES)
    p_eval.add_argument("--order", required=True, type=int)
    p_eval.add_argument("--point", required=True,
                        help="comma-separated reference coordinates (r,s,t for the pyramid)")
    p_eval.set_defaults(func=cmd_eval)

    p_asm = sub.add_parser("assemble", help="assemble an element matrix and write it out")
    p_asm.add_argument("--kind", required=True, choices=KIND_CHOICES)
    p_asm.add_argument("--shape", required=True, choices=("pyramid", "tetrahedron"))
    p_asm.add_argument("--order", required=True, type=int)
    p_asm.add_argument("--geometry", help="JSON file with {'vertices': 5 x 3}; default reference")
    p_asm.add_argument("--nq", type=int, help="quadrature points per direction (default N+2)")
    p_asm.add_argument("--restrict", action="store_true",
                       help="keep only the interior (Dirichlet) block")
    p_asm.add_argument("--out", required=True)
    p_asm.add_argument("--format", choices=("csv", "json"), default="csv")
    p_asm.set_defaults(func=cmd_assemble)

    p_ver = sub.add_parser("verify", help="run the executable property suites")
    p_ver.add_argument("--order", type=int, default=4, help="maximum order (<= 8)")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--out", help="write the JSON summary here instead of stdout")
    p_ver.add_argument("--fault", type=float, default=0.0, help=argparse.SUPPRESS)
    p_ver.set_defaults(func=cmd_verify)

    p_std = sub.add_parser("cond-study", help="conditioning study on reference elements")
    p_std.add_argument("--order", type=int, default=6, help="maximum order of the sweep")
    p_std.add_argument("--nq", type=int, help="fixed points per direction (default N+2 per order)")
    p_std.add_argument("--seed", type=int, default=0)
    p_std.add_argument("--restrict-mass", action="store_true",
                       help="apply the Dirichlet reduction to mass matrices too")
    p_std.add_argument("--full-stiffness", action="store_true",
                       help="skip the Dirichlet reduction of stiffness matrices")
    p_std.add_argument("--out", required=True)
    p_std.add_argument("--format", choices=("csv", "json"), default="csv")
    p_std.set_defaults(func=cmd_cond_study)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GeometryError as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
