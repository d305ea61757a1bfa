"""Command line front end.

    frontlab classify FILE [--json]
    frontlab mesh FILE --which base|parallel|dual [--t T] [--grid N M]
        [--box UMIN UMAX VMIN VMAX] [--skip-degenerate] -o OUT.obj
    frontlab sweep --nf RANGES -o OUT.csv [--summary]
    frontlab verify [--seed S] [--draws N]

Exit codes are 0 on success, 1 when verification fails, 2 for bad input and 3 when
a mathematical precondition fails. Errors are reported on stderr with their class
name.
"""

from typing import List, Optional, Sequence
import argparse
import csv
import json
import logging
import sys

from frontlab.config import DEFAULT_GRID_SHAPE, Tolerances, get_tolerances
from frontlab.datasets.examples import CoefficientGrid
from frontlab.datasets.labels import LABEL_COLUMNS
from frontlab.errors import (
    BadTranslationVector,
    FrontlabError,
    NotInNormalForm,
    RangeError,
)
from frontlab.geometry.contact import classify_umbilic, height_jet_and_delta
from frontlab.geometry.curvature import principal_curvature_bounded
from frontlab.geometry.dual import dual_singularity, make_dual
from frontlab.geometry.frames import build_frame
from frontlab.geometry.grid import Grid
from frontlab.geometry.parallel import predict_swallowtail, swallowtail_conditions
from frontlab.geometry.ridge import ridge_analyze
from frontlab.geometry.surface import (
    LEADING_COEFFICIENTS,
    PolySurface,
    extract_normal_form,
    load_surface,
    validate_adapted,
)
from frontlab.mesh import SURFACE_KINDS, sample_mesh, write_obj
from frontlab.verify import DEFAULT_DRAWS, DEFAULT_SEED, run_verification

SWEEP_HEADER = (*LEADING_COEFFICIENTS, *LABEL_COLUMNS)


def _translation(surface: PolySurface) -> Optional[tuple]:
    if surface.c_vec is not None:
        return surface.c_vec
    if any(c != 0.0 for c in surface.constant()):
        return surface.constant()
    return None


def classify_surface(surface: PolySurface, tol: Tolerances = None) -> dict:
    """Everything `frontlab classify` reports about the origin of a surface.

    Normal form coefficients are read off when the surface (without its constant
    vector) is in normal form. They switch on the closed form cross-checks and the
    contact discriminants.

    Returns:
        dict: The report, see :func:`format_report` for its text form.

    Raises:
        PreconditionError: When the origin is not a cuspidal edge point of a front.
    """
    tol = tol or get_tolerances()
    report = {"surface": surface.name, "adapted": validate_adapted(surface, tol=tol).as_dict()}

    try:
        coeffs = extract_normal_form(surface.centered(), tol)
    except NotInNormalForm as error:
        logging.info(f"Surface is not in normal form: {error}")
        coeffs = None
    report["normal_form"] = coeffs.as_dict() if coeffs is not None else None

    frame = build_frame(surface, (0.0, 0.0), tol=tol)
    principal = principal_curvature_bounded(frame, tol)
    report["frame"] = frame.values()
    report["principal"] = principal.as_dict()
    report["ridge"] = ridge_analyze(surface, coeffs=coeffs, tol=tol).as_dict()

    kappa = principal.kappa2
    parallel = {"t0": None, "verdict": None, "conditions": None}
    if abs(kappa) > tol.curvature:
        direct, _ = predict_swallowtail(surface, coeffs=coeffs, tol=tol)
        parallel["t0"] = 1.0 / kappa
        parallel["verdict"] = str(direct.verdict)
        parallel["classification"] = direct.as_dict()
        if coeffs is not None:
            parallel["conditions"] = swallowtail_conditions(coeffs, tol).as_dict()
    report["parallel"] = parallel

    c_vec = _translation(surface)
    contact = None
    if coeffs is not None:
        if abs(coeffs.b20) > tol.curvature:
            contact = classify_umbilic(coeffs, tol).as_dict()
        else:
            _, height = height_jet_and_delta(coeffs, c_vec or (0.0, 0.0, 1.0), tol)
            contact = height.as_dict()
    report["contact"] = contact

    try:
        dual = make_dual(surface, tol=tol)
        report["dual"] = dual_singularity(dual, coeffs=coeffs).as_dict()
    except BadTranslationVector as error:
        report["dual"] = {"verdict": None, "reason": f"{error.name}: {error}"}
    return report


def _number(value: float) -> str:
    return f"{value:.12g}"


def format_report(report: dict) -> str:
    """Human readable form of :func:`classify_surface`'s report."""
    lines = [f"surface: {report['surface']}"]
    adapted = report["adapted"]
    lines.append(f"adapted: {'pass' if adapted['passed'] else 'fail'} (sampled)")
    lines += [f"    {witness}" for witness in adapted["witnesses"]]

    coeffs = report["normal_form"]
    if coeffs is not None:
        lines.append("normal form: " + " ".join(f"{k}={_number(v)}" for k, v in coeffs.items()))
    frame = report["frame"]
    lines.append(
        "frame at 0: " + " ".join(f"{k}={_number(frame[k])}" for k in ("E", "F", "G", "L", "M", "N"))
    )
    principal = report["principal"]
    lines.append(f"kappa2(0): {_number(principal['kappa2'])} ({principal['branch']} branch)")
    lines.append(f"v_hat(0): ({', '.join(_number(x) for x in principal['v_hat'])})")

    ridge = report["ridge"]
    ridge_line = f"ridge: order {ridge['order']}, vk1={_number(ridge['vk1'])}, vk2={_number(ridge['vk2'])}"
    closed = ridge["closed_form"]
    if closed is not None:
        ridge_line += (
            f", C1={_number(closed['c1'])}, C2={_number(closed['c2'])}"
            f" (exact {_number(closed['c2_exact'])})"
        )
    lines.append(ridge_line)

    parallel = report["parallel"]
    if parallel["verdict"] is not None:
        lines.append(f"verdict: {parallel['verdict']} (parallel, t0={parallel['t0']:g})")
        if parallel["conditions"] is not None:
            lines.append(f"conditions: {'pass' if parallel['conditions']['passed'] else 'fail'}")
    else:
        lines.append("verdict: none (parallel, kappa(0)=0)")

    contact = report["contact"]
    if contact is not None:
        label = "Delta_phi" if contact["kind"] == "DistanceSquared" else "Delta_h"
        lines.append(f"{label}: {_number(contact['delta'])}")
        lines.append(f"D4: {contact['d4']}")

    dual = report["dual"]
    if dual["verdict"] is not None:
        lines.append(f"dual: {dual['verdict']}")
    else:
        lines.append(f"dual: unavailable ({dual['reason']})")
    return "\n".join(lines)


def cmd_classify(args: argparse.Namespace) -> int:
    surface = load_surface(args.file)
    report = classify_surface(surface)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(format_report(report))
    return 0


def cmd_mesh(args: argparse.Namespace) -> int:
    surface = load_surface(args.file)
    try:
        grid = Grid(args.box or surface.box(), args.grid)
    except ValueError as error:
        raise RangeError(str(error)) from None
    mesh = sample_mesh(
        surface, args.which, t=args.t, grid=grid, skip_degenerate=args.skip_degenerate
    )
    write_obj(args.output, mesh)
    print(
        f"wrote {args.output}: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces, "
        f"{len(mesh.segments)} singular segments"
    )
    return 0


def sweep_rows(dataset: CoefficientGrid) -> List[list]:
    """CSV rows of a labelled sweep in grid order."""
    rows = []
    for item in dataset:
        values = [*item["data"].leading()]
        values += [item["target"][column] for column in LABEL_COLUMNS]
        rows.append(values)
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    dataset = CoefficientGrid(args.nf)
    with open(args.output, "w", newline="", encoding="utf-8") as csv_file:
        writer = csv.writer(csv_file, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        writer.writerows(sweep_rows(dataset))
    logging.info(f"Wrote {len(dataset)} rows to {args.output}")
    if args.summary:
        dataset.summary()
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(args.seed, args.draws)
    print(report.format())
    return report.exit_code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frontlab",
        description="Cuspidal edges, their parallel and dual surfaces.",
    )
    parser.add_argument("--verbose", action="store_true", help="Log progress at info level")
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser("classify", help="Report the geometry at the origin")
    classify.add_argument("file", help="Surface definition file")
    classify.add_argument("--json", action="store_true", help="Print the report as JSON")
    classify.set_defaults(handler=cmd_classify)

    mesh = commands.add_parser("mesh", help="Export a sampled surface as OBJ")
    mesh.add_argument("file", help="Surface definition file")
    mesh.add_argument("--which", choices=SURFACE_KINDS, default="base")
    mesh.add_argument("--t", type=float, default=None, help="Parallel offset, focal by default")
    mesh.add_argument(
        "--grid", type=int, nargs=2, metavar=("N", "M"), default=list(DEFAULT_GRID_SHAPE)
    )
    mesh.add_argument(
        "--box", type=float, nargs=4, metavar=("UMIN", "UMAX", "VMIN", "VMAX"), default=None
    )
    mesh.add_argument("--skip-degenerate", action="store_true")
    mesh.add_argument("-o", "--output", required=True, help="Output OBJ path")
    mesh.set_defaults(handler=cmd_mesh)

    sweep = commands.add_parser("sweep", help="Tabulate closed form predicates over a grid")
    sweep.add_argument(
        "--nf", required=True, help="Coefficient ranges, e.g. b30=-1:1:21,b12=-1:1:21,b20=1,b03=1"
    )
    sweep.add_argument("-o", "--output", required=True, help="Output CSV path")
    sweep.add_argument("--summary", action="store_true", help="Print a summary of the sweep")
    sweep.set_defaults(handler=cmd_sweep)

    verify = commands.add_parser("verify", help="Run the cross-check battery")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--draws", type=int, default=DEFAULT_DRAWS)
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Sequence[str] = None) -> int:
    """Runs the command line front end and returns the exit code."""
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.handler(args)
    except FrontlabError as error:
        print(f"error: {error.name}: {error}", file=sys.stderr)
        return error.exit_code
    except OSError as error:
        print(f"error: {type(error).__name__}: {error}", file=sys.stderr)
        return 2
