"""Command-line front end.

JSON output is the stable contract: rationals are serialized as "p/q"
strings and solver bases are in canonical echelon order.  Text output is a
human-oriented rendering of the same data.

Exit codes: 0 success, 2 validation failure, 3 precondition error,
4 I/O or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import catalog, checks
from .errors import DegenerateMetric, NilmetricError
from .exact import fmt, fmt_matrix
from .geodesics import geodesic
from .geometry import j_family, ricci
from .isometry import ahc_isotropy_algebra, isotropy_algebra, nilradical, skew_derivations
from .liealg import (
    MetricLieAlgebra,
    SplitAlgebra,
    Subspace,
    algebra_from_dict,
    algebra_to_dict,
    center,
    is_ad_invariant,
    restrict_metric,
    signature,
    split,
    split_with,
    validate,
)
from .spectral import classify

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _positive_float(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return val


def _positive_int(text: str) -> int:
    val = int(text)
    if val <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return val


def parse_rational_vector(text: str) -> list[Fraction]:
    """"1,0,-1/2" (or a JSON list of strings/numbers) -> list of Fractions."""
    text = text.strip()
    try:
        if text.startswith("["):
            items = json.loads(text)
        else:
            items = [s for s in text.split(",") if s.strip()]
        return [Fraction(str(x).strip()) for x in items]
    except (ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_IO, f"cannot parse rational vector {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin", metavar="NAME", help="catalog algebra name")
    group.add_argument("--file", metavar="PATH", help="algebra definition file (JSON)")
    source.add_argument("--seed", type=int, default=0, help="seed for randomized certification steps")

    parser = argparse.ArgumentParser(prog="nilmetric", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common, source], help="Jacobi, nilpotency step, solvability")
    sub.add_parser("report", parents=[common, source], help="structure, center, j-maps and Ricci")
    sub.add_parser("classify", parents=[common, source], help="Ricci spectrum and structural conclusions")
    sub.add_parser("isotropy", parents=[common, source], help="isotropy algebra of the splitting")
    sub.add_parser("derivations", parents=[common, source], help="skew-symmetric derivations")
    sub.add_parser("ahc", parents=[common, source], help="isotropy algebra for bi-invariant metrics")

    geo = sub.add_parser("geodesic", parents=[common, source], help="geodesic through e as CSV")
    geo.add_argument("--w", required=True, help="initial complement velocity, e.g. 1,0,0")
    geo.add_argument("--u", default=None, help="initial center velocity (default 0)")
    geo.add_argument("--tmax", type=_positive_float, default=5.0)
    geo.add_argument("--samples", type=_positive_int, default=101)
    geo.add_argument("--tol", type=_positive_float, default=None,
                     help="fail (exit 2) if the finite-difference residual exceeds this")

    cat = sub.add_parser("catalog", parents=[common], help="list or dump catalog entries")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    cat_sub.add_parser("list", parents=[common])
    dump = cat_sub.add_parser("dump", parents=[common])
    dump.add_argument("name")

    ex = sub.add_parser("check-example", parents=[common], help="run one acceptance block")
    ex.add_argument("name", help="example name or number")
    return parser


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def load_input(args) -> tuple[MetricLieAlgebra, Subspace | None]:
    if args.builtin:
        try:
            obj = catalog.builtin(args.builtin)
        except KeyError as exc:
            raise CliError(EXIT_IO, str(exc.args[0])) from exc
        if isinstance(obj, SplitAlgebra):
            return obj.algebra, obj.complement
        if not isinstance(obj, MetricLieAlgebra):
            raise CliError(EXIT_IO, f"catalog entry {args.builtin!r} is not an algebra")
        return obj, None
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {args.file}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_IO, f"invalid JSON in {args.file}: {exc}") from exc
    try:
        return algebra_from_dict(data)
    except DegenerateMetric as exc:
        raise CliError(EXIT_VALIDATION, f"validation failed: {exc}") from exc
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(EXIT_IO, f"invalid algebra definition in {args.file}: {exc}") from exc


def _splitting(alg: MetricLieAlgebra, comp: Subspace | None) -> SplitAlgebra:
    return split(alg) if comp is None else split_with(alg, comp)


def _require_lie(alg: MetricLieAlgebra) -> None:
    rep = validate(alg)
    if not rep.jacobi_ok:
        raise CliError(EXIT_VALIDATION, "validation failed: Jacobi identity fails on basis triples "
                       f"{[list(t) for t in rep.jacobi_failures]}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> tuple[int, dict]:
    alg, _ = load_input(args)
    rep = validate(alg)
    return (EXIT_OK if rep.jacobi_ok else EXIT_VALIDATION), dict(algebra=alg.name, **rep.to_dict())


def cmd_report(args) -> tuple[int, dict]:
    alg, comp = load_input(args)
    rep = validate(alg)
    out = {"algebra": alg.name, "dim": alg.dim, "basis": list(alg.basis_names),
           "validation": rep.to_dict(), "metric_signature": list(signature(alg.metric))}
    if not rep.jacobi_ok:
        return EXIT_VALIDATION, out
    z = center(alg)
    rz = restrict_metric(alg, z)
    out["center"] = {"dim": z.dim, "basis": fmt_matrix(z.basis), "nondegenerate": rz.nondegenerate}
    out["ad_invariant"] = is_ad_invariant(alg)
    if rep.solvable and rep.nilpotency_step is None:
        out["nilradical"] = fmt_matrix(nilradical(alg, seed=args.seed).basis)
    if rep.nilpotency_step is not None and rep.nilpotency_step <= 2 and rz.nondegenerate:
        s = _splitting(alg, comp)
        out["complement"] = fmt_matrix(s.v_basis)
        if s.orthogonal:
            jf = j_family(s)
            ric = ricci(s)
            out["j_maps"] = [fmt_matrix(j.matrix) for j in jf.maps]
            out["ricci_operator"] = fmt_matrix(ric.operator.matrix)
            out["scalar_curvature"] = fmt(ric.scalar)
    return EXIT_OK, out


def cmd_classify(args) -> tuple[int, dict]:
    alg, _ = load_input(args)
    rep = classify(alg)
    code = EXIT_VALIDATION if "Jacobi identity fails" in rep.notes else EXIT_OK
    return code, rep.to_dict()


def cmd_isotropy(args) -> tuple[int, dict]:
    alg, comp = load_input(args)
    _require_lie(alg)
    return EXIT_OK, dict(algebra=alg.name, **isotropy_algebra(_splitting(alg, comp)).to_dict())


def cmd_derivations(args) -> tuple[int, dict]:
    alg, _ = load_input(args)
    _require_lie(alg)
    return EXIT_OK, dict(algebra=alg.name, **skew_derivations(alg).to_dict())


def cmd_ahc(args) -> tuple[int, dict]:
    alg, _ = load_input(args)
    _require_lie(alg)
    return EXIT_OK, dict(algebra=alg.name, **ahc_isotropy_algebra(alg).to_dict())


def cmd_geodesic(args) -> tuple[int, str]:
    alg, comp = load_input(args)
    _require_lie(alg)
    s = _splitting(alg, comp)
    w = parse_rational_vector(args.w)
    u = parse_rational_vector(args.u) if args.u else [Fraction(0)] * alg.dim
    for name, x in (("w", w), ("u", u)):
        if len(x) != alg.dim:
            raise CliError(EXIT_IO, f"--{name} needs {alg.dim} ambient coordinates, got {len(x)}")
    if args.samples < 5:
        raise CliError(EXIT_IO, "--samples must be at least 5")
    try:
        curve = geodesic(s, w, u, np.linspace(0.0, args.tmax, args.samples))
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, f"precondition failed: {exc}") from exc
    if args.tol is not None and curve.max_residual > args.tol:
        sys.stderr.write(f"geodesic residual {curve.max_residual:.3e} exceeds --tol {args.tol:g}\n")
        return EXIT_VALIDATION, curve.to_csv()
    return EXIT_OK, curve.to_csv()


def _catalog_entry(name: str) -> dict:
    try:
        obj = catalog.builtin(name)
    except KeyError as exc:
        raise CliError(EXIT_IO, str(exc.args[0])) from exc
    if isinstance(obj, MetricLieAlgebra):
        return algebra_to_dict(obj)
    if isinstance(obj, SplitAlgebra):
        return algebra_to_dict(obj.algebra, obj.complement)
    if isinstance(obj, Subspace):
        return {"kind": "subspace", "name": name, "ambient_dim": obj.ambient_dim,
                "basis": fmt_matrix(obj.basis)}
    if isinstance(obj, catalog.CoordinateChart):
        return {"kind": "chart", "name": obj.name or name, "dim": obj.dim}
    if isinstance(obj, catalog.SmoothMap):
        return {"kind": "map", "name": obj.name or name, "dim": obj.dim,
                "closed_form_jacobian": obj.closed_form}
    out = {"kind": "map_family", "name": name}
    if name == "Ftau":
        out["block_order"] = list(catalog.FTAU_BLOCK_ORDER)
    return out


def cmd_catalog(args) -> tuple[int, dict]:
    if args.action == "list":
        return EXIT_OK, catalog.catalog_names()
    return EXIT_OK, _catalog_entry(args.name)


def cmd_check_example(args) -> tuple[int, dict]:
    try:
        res = checks.run_example(args.name)
    except KeyError as exc:
        raise CliError(EXIT_IO, str(exc.args[0])) from exc
    out = res.to_dict()
    out.pop("seconds")  # keep the JSON deterministic
    if args.format == "text":
        out["seconds"] = round(res.seconds, 3)
    return (EXIT_OK if res.ok else EXIT_VALIDATION), out


COMMANDS = {
    "validate": cmd_validate,
    "report": cmd_report,
    "classify": cmd_classify,
    "isotropy": cmd_isotropy,
    "derivations": cmd_derivations,
    "ahc": cmd_ahc,
    "geodesic": cmd_geodesic,
    "catalog": cmd_catalog,
    "check-example": cmd_check_example,
}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def render_text(data, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for key, val in data.items():
            if isinstance(val, (dict, list)) and val and not _flat_list(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)) and not _flat_list(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(data))
    return "\n".join(lines)


def _flat_list(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, (dict, list)) for x in val)


def _scalar(val) -> str:
    if isinstance(val, list):
        return "[" + ", ".join(_scalar(x) for x in val) + "]"
    if isinstance(val, dict):
        return "{}"
    if isinstance(val, bool):
        return "true" if val else "false"
    return "-" if val is None else str(val)


def emit(payload, fmt_: str, stream) -> None:
    if isinstance(payload, str):
        stream.write(payload)
    elif fmt_ == "json":
        stream.write(json.dumps(payload, indent=2) + "\n")
    else:
        stream.write(render_text(payload) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors are parse errors
        return EXIT_OK if exc.code == 0 else EXIT_IO
    try:
        code, payload = COMMANDS[args.command](args)
    except CliError as exc:
        sys.stderr.write(f"nilmetric: {exc}\n")
        return exc.code
    except NilmetricError as exc:
        sys.stderr.write(f"nilmetric: precondition failed ({type(exc).__name__}): {exc}\n")
        return EXIT_PRECONDITION
    emit(payload, args.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
