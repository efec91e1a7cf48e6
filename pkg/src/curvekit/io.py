"""Facet-list files and curvature output formats.

Facet text format: one facet per line, whitespace-separated integer vertex
ids; blank lines and lines starting with ``#`` are ignored. The JSON form is
``{"facets": [[...], ...]}``.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from curvekit.complex import SimplicialComplex, generate_closure
from curvekit.errors import EmptyFacet, ParseError


def parse_facets(text: str, source: str | None = None) -> list[list[int]]:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            facet = [int(tok) for tok in line.replace(",", " ").split()]
        except ValueError as exc:
            raise ParseError(f"non-integer vertex id in {line!r}", lineno, source) from exc
        if any(v < 0 for v in facet):
            raise ParseError("vertex ids must be non-negative", lineno, source)
        facets.append(facet)
    return facets


def parse_facets_json(text: str, source: str | None = None) -> list[list[int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, source) from exc
    facets = data.get("facets") if isinstance(data, dict) else None
    if not isinstance(facets, list):
        raise ParseError('expected an object with a "facets" list', None, source)
    out = []
    for i, f in enumerate(facets):
        if not isinstance(f, list) or not all(isinstance(v, int) and v >= 0 for v in f):
            raise ParseError(f"facet {i} is not a list of non-negative integers", None, source)
        out.append(f)
    return out


def read_facets(path) -> list[list[int]]:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return parse_facets_json(text, str(path))
    return parse_facets(text, str(path))


def load_complex(path) -> SimplicialComplex:
    facets = read_facets(path)
    try:
        return generate_closure(facets)
    except EmptyFacet as exc:
        raise ParseError(str(exc), None, str(path)) from exc


def format_facets(G: SimplicialComplex, header: str | None = None) -> str:
    lines = [f"# {line}" for line in header.splitlines()] if header else []
    lines += [" ".join(str(v) for v in f) for f in sorted(G.facets)]
    return "\n".join(lines) + "\n"


def write_facets(G: SimplicialComplex, path, header: str | None = None) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps({"facets": [list(f) for f in sorted(G.facets)]}) + "\n")
    else:
        path.write_text(format_facets(G, header))


def rational(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _value(v):
    return rational(v) if isinstance(v, (Fraction, int)) else float(v)


def curvature_json(field, chi: int) -> dict:
    return {
        "k": field.k,
        "chi": chi,
        "formula": field.formula_tag,
        "values": [{"simplex": list(s), "value": _value(v)} for s, v in zip(field.simplices, field.values)],
    }


def curvature_csv(field) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=";", lineterminator="\n")
    writer.writerow(["simplex", "value"])
    for s, v in zip(field.simplices, field.values):
        writer.writerow([" ".join(str(x) for x in s), _value(v)])
    return buf.getvalue()


def parse_curvature_csv(text: str) -> dict[tuple[int, ...], Fraction | float]:
    out = {}
    reader = csv.reader(io.StringIO(text), delimiter=";")
    next(reader, None)
    for row in reader:
        if not row or row[0].startswith("#"):
            continue
        simplex = tuple(int(x) for x in row[0].split())
        val = row[1]
        out[simplex] = Fraction(val) if "/" in val else float(val)
    return out
