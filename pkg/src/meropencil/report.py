"""Report records and their text / JSON renderings.

The JSON layout is a fixed contract (stable key order, rationals as
"num/den" strings), so reports round-trip byte-identically through
json.loads / json.dumps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .localalg import GermClass, MilnorResult
from .multipoly import MultiPoly


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def format_point(pt: tuple[Fraction, Fraction]) -> str:
    return f"({format_rational(pt[0])}, {format_rational(pt[1])})"


@dataclass(frozen=True)
class SpecialValueRecord:
    """Invariants at one candidate special parameter value of one base point."""

    a: Fraction
    mu_special: int
    mu_generic: int
    lambda_polar: int
    lambda_jump: int
    splitting_detected: bool
    mu_nearby_sum: int
    class_generic: GermClass
    class_special: GermClass

    @property
    def trivial(self) -> bool:
        return self.lambda_polar == 0

    def validate(self) -> None:
        assert self.lambda_polar >= 0 and self.lambda_jump >= 0
        assert self.lambda_polar <= self.lambda_jump
        assert self.splitting_detected == (self.lambda_polar != self.lambda_jump)
        assert self.mu_nearby_sum >= self.mu_generic
        assert (self.mu_nearby_sum == self.mu_generic) == (not self.splitting_detected)
        assert self.mu_special == self.mu_nearby_sum + self.lambda_polar

    def to_json_obj(self) -> dict:
        return {
            "a": format_rational(self.a),
            "mu_special": self.mu_special,
            "mu_generic": self.mu_generic,
            "lambda_polar": self.lambda_polar,
            "lambda_jump": self.lambda_jump,
            "splitting": self.splitting_detected,
            "mu_nearby_sum": self.mu_nearby_sum,
            "class_special": str(self.class_special),
            "trivial": self.trivial,
        }


@dataclass(frozen=True)
class BasePointReport:
    point: tuple[Fraction, Fraction]
    generic_mu: int
    class_generic: GermClass
    specials: tuple[SpecialValueRecord, ...]
    complete: bool
    notes: tuple[str, ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "point": [format_rational(c) for c in self.point],
            "generic_mu": self.generic_mu,
            "class_generic": str(self.class_generic),
            "specials": [s.to_json_obj() for s in self.specials],
        }


@dataclass(frozen=True)
class CriticalPointRecord:
    point: tuple[Fraction, Fraction]
    value: Fraction
    milnor: MilnorResult
    germ_class: GermClass

    def to_json_obj(self) -> dict:
        return {
            "point": [format_rational(c) for c in self.point],
            "value": format_rational(self.value),
            "mu": self.milnor.mu,
            "class": str(self.germ_class),
        }


@dataclass(frozen=True)
class ChartReport:
    name: str
    p: MultiPoly
    q: MultiPoly
    critical_points: tuple[CriticalPointRecord, ...]
    base_points: tuple[BasePointReport, ...]
    complete: bool
    notes: tuple[str, ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "p": str(self.p),
            "q": str(self.q),
            "critical_points": [c.to_json_obj() for c in self.critical_points],
            "base_points": [b.to_json_obj() for b in self.base_points],
            "complete": self.complete,
        }


@dataclass(frozen=True)
class ValueSummary:
    a: Fraction
    mu_a: int
    lambda_a: int

    def to_json_obj(self) -> dict:
        return {
            "a": format_rational(self.a),
            "mu_a": self.mu_a,
            "lambda_a": self.lambda_a,
        }


@dataclass(frozen=True)
class PencilReport:
    charts: tuple[ChartReport, ...]
    atypical_values: tuple[Fraction, ...]
    per_value: tuple[ValueSummary, ...]
    mu: int
    lam: int
    warnings: tuple[str, ...] = ()

    @property
    def b2(self) -> int:
        return self.mu + self.lam

    @property
    def chi_rel(self) -> int:
        # n = 2: the signed relative Euler characteristic equals b2
        return self.mu + self.lam

    def validate(self) -> None:
        assert self.mu == sum(v.mu_a for v in self.per_value)
        assert self.lam == sum(v.lambda_a for v in self.per_value)
        assert set(self.atypical_values) == {
            v.a for v in self.per_value if v.mu_a + v.lambda_a > 0
        }

    def to_json_obj(self) -> dict:
        return {
            "charts": [c.to_json_obj() for c in self.charts],
            "atypical_values": [format_rational(a) for a in self.atypical_values],
            "per_value": [v.to_json_obj() for v in self.per_value],
            "totals": {
                "mu": self.mu,
                "lambda": self.lam,
                "b2": self.b2,
                "chi_rel": self.chi_rel,
            },
            "warnings": list(self.warnings),
        }


def render_json(obj_or_report) -> str:
    obj = obj_or_report.to_json_obj() if hasattr(obj_or_report, "to_json_obj") else obj_or_report
    return json.dumps(obj, indent=2) + "\n"


def _chart_text(chart: ChartReport, lines: list[str]) -> None:
    lines.append(f"chart {chart.name}:  p = {chart.p},  q = {chart.q}")
    if not chart.complete:
        lines.append("  WARNING: analysis incomplete (nonrational clusters reported in notes)")
    for note in chart.notes:
        lines.append(f"  note: {note}")
    if chart.critical_points:
        lines.append("  critical points off the poles:")
        for c in chart.critical_points:
            lines.append(
                f"    {format_point(c.point)}  value = {format_rational(c.value)}"
                f"  mu = {c.milnor.mu}  [{c.germ_class}]"
            )
    else:
        lines.append("  critical points off the poles: none")
    for b in chart.base_points:
        lines.append(
            f"  base point {format_point(b.point)}: generic mu = {b.generic_mu}"
            f"  [{b.class_generic}]"
        )
        if not b.specials:
            lines.append("    no special parameter values detected")
        for s in b.specials:
            arrow = f"{s.class_special} <- {s.class_generic}"
            lines.append(
                f"    a = {format_rational(s.a)}:  mu(a) = {s.mu_special},"
                f"  mu_gen = {s.mu_generic},  lambda_polar = {s.lambda_polar},"
                f"  lambda_jump = {s.lambda_jump},  nearby mu sum = {s.mu_nearby_sum},"
                f"  splitting = {'yes' if s.splitting_detected else 'no'},"
                f"  trivial = {'yes' if s.trivial else 'no'}  [{arrow}]"
            )


def render_pencil_text(report: PencilReport) -> str:
    lines: list[str] = ["pencil analysis", "=" * 15]
    for chart in report.charts:
        _chart_text(chart, lines)
    lines.append("")
    if report.atypical_values:
        lines.append(
            "atypical values: "
            + ", ".join(format_rational(a) for a in report.atypical_values)
        )
    else:
        lines.append("atypical values: none")
    for v in report.per_value:
        lines.append(
            f"  a = {format_rational(v.a)}:  mu_a = {v.mu_a},  lambda_a = {v.lambda_a}"
        )
    lines.append(f"totals: mu = {report.mu}, lambda = {report.lam}")
    lines.append(f"b_2(X,F) = mu + lambda = {report.b2}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def render_chart_text(chart: ChartReport, warnings: tuple[str, ...] = ()) -> str:
    lines: list[str] = []
    _chart_text(chart, lines)
    for w in warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def emit_report(report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        if isinstance(report, PencilReport):
            return render_pencil_text(report)
        if isinstance(report, ChartReport):
            return render_chart_text(report)
        raise InputError(f"no text rendering for {type(report).__name__}")
    raise InputError(f"unknown output format {fmt!r}")
