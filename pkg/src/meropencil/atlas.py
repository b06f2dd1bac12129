"""Plain-text atlas files declaring the charts of a pencil analysis.

Grammar (one assignment per line, ``#`` starts a comment):

    seed = 271828                       # optional header assignments
    jet_cap = 64
    candidates = 0, 1                   # global special-value overrides

    [chart NAME]
    vars = x, z                         # exactly two coordinates
    p = x*z^2 + x^2
    q = z^3
    base_points = (0, 0) (1, -1)        # optional: declare instead of solving
    candidates = 0                      # optional per-chart overrides

    [overlap SRC DST]                   # optional rational coordinate change
    x = x / (z^2 - x^2)                 # images of DST variables in SRC coords
    z = z / (z^2 - x^2)

Expressions follow the polynomial grammar of the parser; an overlap image
may be a ratio written with a single top-level '/'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AtlasError, ExpressionError
from .multipoly import MultiPoly, parse_expression, parse_prefix
from .pencil import ChartInput, OverlapMap


@dataclass(frozen=True)
class Atlas:
    charts: tuple[ChartInput, ...]
    overlaps: tuple[OverlapMap, ...]
    seed: int | None = None
    jet_cap: int | None = None
    candidates: tuple[Fraction, ...] = ()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise AtlasError(f"bad rational literal {text!r}") from exc


def _parse_rational_list(text: str) -> tuple[Fraction, ...]:
    items = [s for s in (piece.strip() for piece in text.split(",")) if s]
    return tuple(parse_rational(s) for s in items)


def _parse_points(text: str) -> tuple[tuple[Fraction, Fraction], ...]:
    pts = []
    rest = text.strip()
    while rest:
        if not rest.startswith("("):
            raise AtlasError(f"expected '(' in base_points near {rest!r}")
        end = rest.find(")")
        if end < 0:
            raise AtlasError("unclosed '(' in base_points")
        coords = _parse_rational_list(rest[1:end])
        if len(coords) != 2:
            raise AtlasError(f"a base point needs two coordinates: {rest[:end + 1]!r}")
        pts.append((coords[0], coords[1]))
        rest = rest[end + 1:].strip().lstrip(",").strip()
    return tuple(pts)


def _parse_ratio(text: str, variables: tuple[str, str]) -> tuple[MultiPoly, MultiPoly]:
    num, consumed = parse_prefix(text, variables)
    rest = text[consumed:].strip()
    if not rest:
        return num, MultiPoly.constant(variables, 1)
    if not rest.startswith("/"):
        raise AtlasError(f"unexpected trailing {rest!r} in overlap image")
    den = parse_expression(rest[1:], variables)
    if den.is_zero():
        raise AtlasError("overlap image has a zero denominator")
    return num, den


def parse_atlas(text: str) -> Atlas:
    header: dict[str, str] = {}
    chart_sections: list[dict] = []
    overlap_sections: list[dict] = []
    current: dict | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise AtlasError(f"line {lineno}: unclosed section header")
            words = line[1:-1].split()
            if len(words) == 2 and words[0] == "chart":
                current = {"kind": "chart", "name": words[1], "line": lineno}
                chart_sections.append(current)
            elif len(words) == 3 and words[0] == "overlap":
                current = {"kind": "overlap", "src": words[1], "dst": words[2],
                           "images": {}, "line": lineno}
                overlap_sections.append(current)
            else:
                raise AtlasError(
                    f"line {lineno}: expected [chart NAME] or [overlap SRC DST]"
                )
            continue
        if "=" not in line:
            raise AtlasError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if current is None:
            header[key] = value
        elif current["kind"] == "chart":
            current[key] = value
        else:
            current["images"][key] = value

    charts = []
    for sec in chart_sections:
        for required in ("vars", "p", "q"):
            if required not in sec:
                raise AtlasError(
                    f"chart {sec['name']!r} (line {sec['line']}) is missing {required!r}"
                )
        variables = tuple(v.strip() for v in sec["vars"].split(",") if v.strip())
        if len(variables) != 2:
            raise AtlasError(f"chart {sec['name']!r} must declare exactly two variables")
        try:
            p = parse_expression(sec["p"], variables)
            q = parse_expression(sec["q"], variables)
        except ExpressionError as exc:
            raise AtlasError(f"chart {sec['name']!r}: {exc}") from exc
        declared = None
        if "base_points" in sec:
            declared = _parse_points(sec["base_points"])
        overrides = ()
        if "candidates" in sec:
            overrides = _parse_rational_list(sec["candidates"])
        charts.append(ChartInput(sec["name"], p, q, declared, overrides))

    by_name = {c.name: c for c in charts}
    overlaps = []
    for sec in overlap_sections:
        if sec["src"] not in by_name or sec["dst"] not in by_name:
            raise AtlasError(
                f"overlap {sec['src']} -> {sec['dst']} references an unknown chart"
            )
        src_vars = by_name[sec["src"]].p.variables
        dst_vars = by_name[sec["dst"]].p.variables
        images = {}
        for var, value in sec["images"].items():
            if var not in dst_vars:
                raise AtlasError(
                    f"overlap {sec['src']} -> {sec['dst']}: {var!r} is not a "
                    f"variable of chart {sec['dst']!r}"
                )
            try:
                images[var] = _parse_ratio(value, src_vars)  # type: ignore[arg-type]
            except ExpressionError as exc:
                raise AtlasError(
                    f"overlap {sec['src']} -> {sec['dst']}: {exc}"
                ) from exc
        missing = [v for v in dst_vars if v not in images]
        if missing:
            raise AtlasError(
                f"overlap {sec['src']} -> {sec['dst']} lacks images for {missing}"
            )
        overlaps.append(OverlapMap(sec["src"], sec["dst"], images))

    seed = None
    jet_cap = None
    candidates: tuple[Fraction, ...] = ()
    for key, value in header.items():
        if key == "seed":
            seed = int(value)
        elif key == "jet_cap":
            jet_cap = int(value)
        elif key == "candidates":
            candidates = _parse_rational_list(value)
        else:
            raise AtlasError(f"unknown header key {key!r}")
    if not charts:
        raise AtlasError("the atlas declares no charts")
    return Atlas(tuple(charts), tuple(overlaps), seed, jet_cap, candidates)


def load_atlas(path: str) -> Atlas:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_atlas(fh.read())
    except OSError as exc:
        raise AtlasError(f"cannot read atlas file {path}: {exc}") from exc
