"""Polytope files, JSON report documents and text reports.

Native polytope files start with a header ``d k [name]`` followed by ``k``
rows of ``d`` integers. PALP-style matrices put the number of rows first;
when the rows do not match the native shape both orientations are tried and
the one giving a full-dimensional polytope wins. ``#`` starts a comment.

JSON documents carry ``schema_version`` and ``kind``; every rational is a
``"p/q"`` string.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from stringy_engine.errors import (
    AmbiguousOrientation,
    NonLatticeVertices,
    NotFullDimensional,
    ParseError,
    StringyError,
)
from stringy_engine.families.wps import WPSReport
from stringy_engine.fine_interior import CYClass, FineResult
from stringy_engine.genfun import RationalFunctionUQ, poly_from_coefficients
from stringy_engine.polytope import Marker, Polytope, Side, hull
from stringy_engine.stringy import MirrorReport, QuasiRegularReport, StringyReport

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PolytopeFile:
    polytope: Polytope
    name: str | None = None


def _rows(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            rows.append((number, content.split()))
    return rows


def _int(token: str, line: int, column: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line, column) from None


def _matrix(rows: list[tuple[int, list[str]]], width: int) -> list[tuple[int, ...]]:
    matrix = []
    for line, tokens in rows:
        if len(tokens) != width:
            column = min(len(tokens), width) + 1
            raise ParseError(f"row has {len(tokens)} entries, expected {width}", line, column)
        matrix.append(tuple(_int(t, line, c) for c, t in enumerate(tokens, start=1)))
    return matrix


def _full_dimensional(points: list[tuple[int, ...]]) -> Polytope | None:
    p = hull(points)
    return p if p.is_full_dimensional else None


def parse_polytope_file(text: str) -> PolytopeFile:
    """Parse a native or PALP-style polytope file.

    Raises:
        ParseError: On malformed headers, rows or entries
        AmbiguousOrientation: If both matrix orientations are full-dimensional
        NotFullDimensional: If the vertices span a lower-dimensional polytope
    """
    rows = _rows(text)
    if not rows:
        raise ParseError("empty polytope file")
    header_line, header = rows[0]
    if len(header) < 2:
        raise ParseError("header needs two integers", header_line, len(header) + 1)
    first = _int(header[0], header_line, 1)
    second = _int(header[1], header_line, 2)
    name = " ".join(header[2:]) or None
    if first < 1 or second < 1:
        raise ParseError("header entries must be positive", header_line)
    body = rows[1:]

    if len(body) == second and all(len(tokens) == first for _, tokens in body):
        points = _matrix(body, first)
        polytope = _full_dimensional(points)
        if polytope is None:
            raise NotFullDimensional(f"{second} vertices do not span R^{first}")
        return PolytopeFile(polytope, name)

    if len(body) != first:
        line = body[-1][0] + 1 if body else header_line + 1
        raise ParseError(f"expected {second} vertex rows of {first} entries", line)
    matrix = _matrix(body, second)
    as_rows = _full_dimensional(matrix)
    as_columns = _full_dimensional([tuple(row[j] for row in matrix) for j in range(second)])
    if as_rows is not None and as_columns is not None:
        raise AmbiguousOrientation("both matrix orientations give full-dimensional polytopes")
    polytope = as_rows if as_rows is not None else as_columns
    if polytope is None:
        raise NotFullDimensional("neither matrix orientation is full-dimensional")
    return PolytopeFile(polytope, name)


def parse_polytope(text: str) -> Polytope:
    return parse_polytope_file(text).polytope


def render_polytope(p: Polytope, name: str | None = None) -> str:
    """Native polytope file for a lattice polytope.

    Raises:
        NonLatticeVertices: If a vertex is not integral
    """
    if not p.is_lattice:
        raise NonLatticeVertices("only lattice polytopes can be written as polytope files")
    header = f"{p.ambient_dim} {len(p.vertices)}"
    if name:
        header += f" {name}"
    lines = [header]
    lines.extend(" ".join(str(c) for c in v.to_ints()) for v in p.vertices)
    return "\n".join(lines) + "\n"


def rational(value) -> str:
    """Render an exact rational as ``"p/q"``."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def _vector(v) -> list[str]:
    return [rational(c) for c in v]


def polytope_document(p: Polytope | Marker | None) -> dict[str, Any] | str | None:
    if p is None:
        return None
    if isinstance(p, Marker):
        return p.value
    return {
        "side": p.side.value,
        "dim": p.dim,
        "vertices": [_vector(v) for v in p.vertices],
    }


def polytope_from_document(doc: dict[str, Any]) -> Polytope:
    points = [[parse_rational(c) for c in v] for v in doc["vertices"]]
    return hull(points, side=Side(doc["side"]))


def make_document(kind: str, name: str | None, body: dict[str, Any]) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "name": name, **body}


def fine_document(result: FineResult, name: str | None = None) -> dict[str, Any]:
    return make_document(
        "fine",
        name,
        {
            "interior": polytope_document(result.interior),
            "support": [list(n) for n in result.support],
            "canonical_hull": polytope_document(result.canonical_hull),
            "translation": list(result.translation) if result.translation else None,
        },
    )


def classification_document(cls: CYClass, name: str | None = None) -> dict[str, Any]:
    return make_document(
        "classification",
        name,
        {
            "verdict": cls.verdict.value,
            "interior_dim": cls.interior_dim,
            "translation": list(cls.translation) if cls.translation is not None else None,
            "almost_reflexive": cls.almost_reflexive,
            "closure": polytope_document(cls.closure),
        },
    )


def ratfun_document(f: RationalFunctionUQ) -> dict[str, list[str]]:
    """Numerator and denominator coefficients by increasing degree."""
    return {
        "numerator": [rational(c) for c in f.numerator_coefficients()],
        "denominator": [rational(c) for c in f.denominator_coefficients()],
    }


def ratfun_from_document(doc: dict[str, list[str]]) -> RationalFunctionUQ:
    return RationalFunctionUQ(
        poly_from_coefficients([parse_rational(c) for c in doc["numerator"]]),
        poly_from_coefficients([parse_rational(c) for c in doc["denominator"]]),
    )


def stringy_document(report: StringyReport) -> dict[str, Any]:
    body: dict[str, Any] = {
        "verdict": report.classification.verdict.value,
        "translation": list(report.classification.translation),
        "e_str": rational(report.estr),
        "integral": report.is_integral,
        "denominator": report.denominator,
        "face_terms": [
            {
                "face": t.face,
                "dim": t.dim,
                "volume": rational(t.volume),
                "cone_volume": rational(t.cone_volume),
                "contribution": rational(t.contribution),
            }
            for t in report.face_terms
        ],
    }
    if report.efun is not None:
        body["efun"] = ratfun_document(report.efun)
        body["symmetry_ok"] = report.symmetry_ok
        body["polynomial"] = report.is_polynomial
    if report.checks:
        body["checks"] = dict(report.checks)
    return make_document("stringy", report.name or None, body)


def efun_document(f: RationalFunctionUQ, name: str | None = None) -> dict[str, Any]:
    return make_document(
        "efun", name, {"efun": ratfun_document(f), "polynomial": f.is_polynomial}
    )


def mirror_document(report: MirrorReport, name: str | None = None) -> dict[str, Any]:
    return make_document(
        "mirror",
        name,
        {
            "e_str": rational(report.estr),
            "e_str_dual": rational(report.estr_dual),
            "sign": report.sign,
            "pass": report.passed,
        },
    )


def quasi_regular_document(report: QuasiRegularReport, name: str | None = None) -> dict[str, Any]:
    return make_document(
        "quasi_regular",
        name,
        {
            "singular_facets": [
                {"face": s.face, "distance": s.distance, "volume": rational(s.volume)}
                for s in report.singular_facets
            ],
            "residual": rational(report.residual),
            "quasi_regular": report.quasi_regular,
        },
    )


def wps_document(report: WPSReport) -> dict[str, Any]:
    p = report.params
    return make_document(
        "wps",
        str(p),
        {
            "a": p.a,
            "b": p.b,
            "l": p.l,
            "d": p.d,
            "e_str_x": rational(report.estr_x),
            "e_str_xvee": rational(report.estr_xvee),
            "denominator_x": report.estr_x.denominator,
            "denominator_xvee": report.estr_xvee.denominator,
            "aggregate": rational(report.aggregate),
            "local_e_str": rational(report.local_estr),
            "quasi_regular": report.quasi_regular,
            "mirror_pass": report.mirror_pass,
        },
    )


def error_document(error: Exception, name: str | None = None) -> dict[str, Any]:
    if isinstance(error, StringyError):
        detail = error.to_dict()
    elif isinstance(error, OSError):
        detail = {"code": "io_error", "message": str(error)}
    else:
        detail = {"code": "internal_error", "message": f"{type(error).__name__}: {error}"}
    return make_document("error", name, {"error": detail})


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True)


def loads(text: str) -> dict[str, Any]:
    """Parse a report document.

    Raises:
        ParseError: If the text is not a document of a known schema version
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from e
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"not a schema version {SCHEMA_VERSION} report document")
    return doc


def _rule() -> str:
    return "=" * 70


def _title(text: str) -> list[str]:
    return [_rule(), text, _rule()]


def format_classification(cls: CYClass, name: str | None = None) -> str:
    lines = _title(f"Classification{f': {name}' if name else ''}")
    lines.append(f"  Verdict: {cls.verdict.value}")
    if cls.interior_dim < 0:
        lines.append("  Fine interior: empty")
    else:
        lines.append(f"  Fine interior dimension: {cls.interior_dim}")
    if cls.translation is not None:
        lines.append(f"  Translation: {' '.join(str(c) for c in cls.translation)}")
        lines.append(f"  Almost reflexive: {'yes' if cls.almost_reflexive else 'no'}")
    return "\n".join(lines)


def format_fine(result: FineResult, name: str | None = None) -> str:
    lines = _title(f"Fine interior{f': {name}' if name else ''}")
    if result.is_empty:
        lines.append("  Fine interior: empty")
        return "\n".join(lines)
    interior = result.interior
    lines.append(f"  Dimension: {interior.dim}")
    lines.append("  Vertices:")
    for v in interior.vertices:
        lines.append(f"    • ({', '.join(str(c) for c in v)})")
    lines.append(f"  Support: {len(result.support)} lattice directions")
    if isinstance(result.canonical_hull, Polytope):
        lines.append(f"  Canonical hull: {len(result.canonical_hull.vertices)} vertices")
    else:
        lines.append("  Canonical hull: unbounded")
    return "\n".join(lines)


def format_stringy(report: StringyReport, translate: bool = False) -> str:
    lines = _title(f"Stringy Euler number{f': {report.name}' if report.name else ''}")
    lines.append(f"  Verdict: {report.classification.verdict.value}")
    if translate:
        lines.append(
            f"  Translation: {' '.join(str(c) for c in report.classification.translation)}"
        )
    lines.append(f"  e_str: {report.estr}")
    lines.append("")
    lines.append(f"  {'face':>5} {'dim':>4} {'v(face)':>12} {'v(cone)':>12} {'term':>14}")
    for t in report.face_terms:
        lines.append(
            f"  {t.face:>5} {t.dim:>4} {str(t.volume):>12} {str(t.cone_volume):>12} "
            f"{str(t.contribution):>14}"
        )
    if report.efun is not None:
        lines.append("")
        lines.append(f"  E-function polynomial: {'yes' if report.is_polynomial else 'no'}")
        lines.append(f"  Poincare symmetry: {'yes' if report.symmetry_ok else 'no'}")
    for check, ok in report.checks.items():
        lines.append(f"  Check {check}: {'ok' if ok else 'FAILED'}")
    return "\n".join(lines)


def format_efun(f: RationalFunctionUQ, name: str | None = None) -> str:
    lines = _title(f"Stringy E-function{f': {name}' if name else ''}")
    doc = ratfun_document(f)
    lines.append(f"  Numerator: {' '.join(doc['numerator'])}")
    lines.append(f"  Denominator: {' '.join(doc['denominator'])}")
    return "\n".join(lines)


def format_mirror(report: MirrorReport, name: str | None = None) -> str:
    lines = _title(f"Mirror test{f': {name}' if name else ''}")
    lines.append(f"  e_str: {report.estr}")
    lines.append(f"  e_str of the Mavlyutov dual: {report.estr_dual}")
    lines.append(f"  Sign: {report.sign:+d}")
    lines.append(f"  Result: {'pass' if report.passed else 'fail'}")
    return "\n".join(lines)


def format_wps(report: WPSReport) -> str:
    p = report.params
    lines = _title(f"P({p.a},1^{p.d}) with a={p.a}, b={p.b}, l={p.l}, d={p.d}")
    lines.append(f"  e_str(X): {report.estr_x}")
    lines.append(f"  e_str(X dual): {report.estr_xvee}")
    lines.append(f"  Denominator-b terms: {report.aggregate}")
    lines.append(f"  Local e_str at the singular point: {report.local_estr}")
    lines.append(f"  Quasi-regular: {'yes' if report.quasi_regular else 'no'}")
    lines.append(f"  Mirror test: {'pass' if report.mirror_pass else 'fail'}")
    return "\n".join(lines)
