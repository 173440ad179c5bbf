"""Command-line interface for the stringy engine."""

import argparse
import logging
import sys
from pathlib import Path

import joblib

from stringy_engine.config import get_settings
from stringy_engine.errors import DimensionGuard, InvalidParams, ParseError, StringyError
from stringy_engine.families import get_family, list_families
from stringy_engine.families.wps import (
    WPSParams,
    integrality_report,
    wps_delta,
    wps_dual,
)
from stringy_engine.fine_interior import classify, fine
from stringy_engine.formats import (
    PolytopeFile,
    classification_document,
    dumps,
    efun_document,
    error_document,
    fine_document,
    format_classification,
    format_efun,
    format_fine,
    format_mirror,
    format_stringy,
    format_wps,
    make_document,
    mirror_document,
    parse_polytope_file,
    polytope_document,
    rational,
    render_polytope,
    stringy_document,
    wps_document,
)
from stringy_engine.mavlyutov import mav_dual
from stringy_engine.polytope import Polytope
from stringy_engine.stringy import efun_u, estr_general, mirror_test, stringy_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _guard(p: Polytope, max_dim: int) -> None:
    if p.dim > max_dim:
        raise DimensionGuard(f"dimension {p.dim} exceeds STRINGY_MAX_DIM = {max_dim}")


def _load(path: str) -> tuple[Polytope, str]:
    parsed = parse_polytope_file(_read(path))
    _guard(parsed.polytope, get_settings().max_dim)
    name = parsed.name or ("stdin" if path == "-" else Path(path).stem)
    logger.debug("loaded %s: dimension %d, %d vertices", name, parsed.polytope.dim, len(parsed.polytope.vertices))
    return parsed.polytope, name


def _emit(args: argparse.Namespace, doc: dict, text: str) -> None:
    print(dumps(doc) if args.json else text)


def cmd_classify(args: argparse.Namespace) -> int:
    delta, name = _load(args.file)
    cls = classify(delta)
    _emit(args, classification_document(cls, name), format_classification(cls, name))
    return EXIT_OK


def cmd_fine(args: argparse.Namespace) -> int:
    delta, name = _load(args.file)
    result = fine(delta)
    _emit(args, fine_document(result, name), format_fine(result, name))
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    delta, name = _load(args.file)
    dual = mav_dual(delta)
    label = f"{name}-dual"
    doc = make_document("dual", label, {"polytope": polytope_document(dual)})
    _emit(args, doc, render_polytope(dual, label).rstrip("\n"))
    return EXIT_OK


def cmd_estr(args: argparse.Namespace) -> int:
    delta, name = _load(args.file)
    report = stringy_report(delta, name=name, with_efun=args.check, check=args.check)
    _emit(args, stringy_document(report), format_stringy(report, translate=args.translate))
    if args.check and not all(report.checks.values()):
        failed = ", ".join(k for k, ok in report.checks.items() if not ok)
        print(f"Error: cross-formula check failed: {failed}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_efun(args: argparse.Namespace) -> int:
    delta, name = _load(args.file)
    f = efun_u(delta)
    _emit(args, efun_document(f, name), format_efun(f, name))
    return EXIT_OK


def cmd_mirror(args: argparse.Namespace) -> int:
    delta, name = _load(args.file)
    report = mirror_test(delta)
    _emit(args, mirror_document(report, name), format_mirror(report, name))
    if args.check and not report.passed:
        print("Error: mirror test failed", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_wps(args: argparse.Namespace) -> int:
    params = WPSParams(args.a, args.b, args.l)
    report = integrality_report(params)
    doc = wps_document(report)
    lines = [format_wps(report)]
    agree = True
    if args.materialize:
        engine_x = estr_general(wps_delta(params))
        engine_xvee = estr_general(wps_dual(params))
        agree = engine_x == report.estr_x and engine_xvee == report.estr_xvee
        doc["materialized"] = {
            "e_str_x": rational(engine_x),
            "e_str_xvee": rational(engine_xvee),
            "agree": agree,
        }
        lines.append(f"  Engine e_str(X): {engine_x}")
        lines.append(f"  Engine e_str(X dual): {engine_xvee}")
        lines.append(f"  Closed forms agree: {'yes' if agree else 'no'}")
    _emit(args, doc, "\n".join(lines))
    if args.check and not agree:
        print("Error: closed forms disagree with the engine", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def _batch_inputs(source: str) -> list[tuple[str, str]]:
    if source == "-":
        blocks, current = [], []
        for line in sys.stdin.read().splitlines():
            if line.strip():
                current.append(line)
            elif current:
                blocks.append("\n".join(current))
                current = []
        if current:
            blocks.append("\n".join(current))
        return [(f"stdin-{i}", block) for i, block in enumerate(blocks, start=1)]
    directory = Path(source)
    if not directory.is_dir():
        raise NotADirectoryError(f"not a directory: {source}")
    return [(path.name, path.read_text()) for path in sorted(directory.iterdir()) if path.is_file()]


def batch_item(label: str, text: str, max_dim: int) -> dict:
    """Stringy report document for one batch input, or an error document."""
    try:
        parsed: PolytopeFile = parse_polytope_file(text)
        name = parsed.name or label
        _guard(parsed.polytope, max_dim)
        report = stringy_report(parsed.polytope, name=name, with_efun=False)
        return stringy_document(report)
    except StringyError as e:
        logger.debug("batch item %s failed: %s", label, e)
        return error_document(e, label)
    except Exception as e:
        logger.warning("batch item %s raised %s: %s", label, type(e).__name__, e)
        return error_document(e, label)


def cmd_batch(args: argparse.Namespace) -> int:
    settings = get_settings()
    jobs = args.jobs if args.jobs is not None else settings.jobs
    items = _batch_inputs(args.source)
    logger.debug("dispatching %d batch items to %d workers", len(items), jobs)
    docs = joblib.Parallel(n_jobs=jobs)(
        joblib.delayed(batch_item)(label, text, settings.max_dim) for label, text in items
    )
    for doc in docs:
        print(dumps(doc))
    return EXIT_OK


def cmd_example(args: argparse.Namespace) -> int:
    family = get_family(args.family)
    if family is None:
        raise InvalidParams(
            f"unknown family: {args.family}; available: {', '.join(list_families())}"
        )
    polytope = family.build(args.member)
    label = f"{family.name}:{args.member}"
    doc = make_document(
        "example",
        label,
        {"description": family.describe(args.member), "polytope": polytope_document(polytope)},
    )
    _emit(args, doc, render_polytope(polytope, label).rstrip("\n"))
    return EXIT_OK


def cmd_families(args: argparse.Namespace) -> int:
    lines = ["Available families:"]
    registry = {}
    for family_name in list_families():
        family = get_family(family_name)
        registry[family_name] = {"display_name": family.display_name, "members": family.members()}
        lines.append(f"  - {family_name}: {family.display_name}")
        lines.append(f"      {', '.join(family.members())}")
    _emit(args, make_document("families", None, {"families": registry}), "\n".join(lines))
    return EXIT_OK


def _jobs(value: str) -> int:
    jobs = int(value)
    if jobs == 0 or jobs < -1:
        raise argparse.ArgumentTypeError("--jobs must be positive or -1 for all cores")
    return jobs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_mutually_exclusive_group()
    output.add_argument("--json", dest="json", action="store_true", help="Emit a JSON document")
    output.add_argument("--text", dest="json", action="store_false", help="Emit a text report (default)")
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")

    single = argparse.ArgumentParser(add_help=False, parents=[common])
    single.add_argument("file", help="Polytope file, or - for stdin")

    parser = argparse.ArgumentParser(
        prog="stringy",
        description="Fine interiors, Mavlyutov duals and stringy Euler numbers of lattice polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, handler, help_text, flags in (
        ("classify", cmd_classify, "Calabi-Yau classification of a polytope", ()),
        ("fine", cmd_fine, "Fine interior, support and canonical hull", ()),
        ("dual", cmd_dual, "Mavlyutov dual as a polytope file", ()),
        ("estr", cmd_estr, "Stringy Euler number with its face table", ("translate", "check")),
        ("efun", cmd_efun, "Stringy E-function as coefficient lists", ()),
        ("mirror", cmd_mirror, "Compare e_str with that of the Mavlyutov dual", ("check",)),
    ):
        command = sub.add_parser(name, parents=[single], help=help_text)
        if "translate" in flags:
            command.add_argument("--translate", action="store_true", help="Print the normalization vector")
        if "check" in flags:
            command.add_argument("--check", action="store_true", help="Fail on cross-formula disagreement")
        command.set_defaults(handler=handler)

    wps = sub.add_parser("wps", parents=[common], help="Closed forms for hypersurfaces in P(a,1,...,1)")
    wps.add_argument("-a", type=int, required=True)
    wps.add_argument("-b", type=int, required=True)
    wps.add_argument("-l", type=int, required=True)
    wps.add_argument("--materialize", action="store_true", help="Also run the engine on both polytopes")
    wps.add_argument("--check", action="store_true", help="Fail if the engine disagrees with the closed forms")
    wps.set_defaults(handler=cmd_wps)

    batch = sub.add_parser("batch", parents=[common], help="Stringy reports for many polytopes as NDJSON")
    batch.add_argument("source", help="Directory of polytope files, or - for blank-line separated stdin")
    batch.add_argument("--jobs", type=_jobs, default=None, help="Worker count (default: STRINGY_JOBS)")
    batch.set_defaults(handler=cmd_batch)

    example = sub.add_parser("example", parents=[common], help="Write a family member as a polytope file")
    example.add_argument("family")
    example.add_argument("member")
    example.set_defaults(handler=cmd_example)

    families = sub.add_parser("families", parents=[common], help="List the polytope families")
    families.set_defaults(handler=cmd_families)
    return parser


def _fail(args: argparse.Namespace, error: Exception, code: int) -> int:
    print(f"Error: {error}", file=sys.stderr)
    if getattr(args, "json", False):
        print(dumps(error_document(error)))
    return code


def run(argv: list[str] | None = None) -> int:
    """Run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        level = "DEBUG" if args.verbose else get_settings().log_level
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        return args.handler(args)
    except (ParseError, OSError) as e:
        return _fail(args, e, EXIT_INPUT)
    except StringyError as e:
        return _fail(args, e, EXIT_DOMAIN)


def main() -> None:
    """Command-line interface for the stringy engine."""
    sys.exit(run())


if __name__ == "__main__":
    main()
