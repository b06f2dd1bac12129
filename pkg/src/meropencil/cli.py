"""Command line driver.

Subcommands:
  mu        Milnor number of a polynomial germ at a point
  classify  ADE label of a plane-curve germ at a point
  germ      base-point family analysis of one chart p/q
  pencil    full atlas analysis with global totals

Exit codes: 0 success, 1 input error, 2 mathematical refusal
(non-isolated singularities, non-reduced fiber, failed genericity).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from .atlas import load_atlas, parse_rational
from .errors import InputError, MeropencilError, RefusalError
from .localalg import classify_plane_germ, milnor_number
from .multipoly import parse_expression, translate
from .pencil import (
    DEFAULT_SEED,
    AnalysisConfig,
    ChartInput,
    analyze_germ_chart,
    analyze_pencil,
)
from .report import emit_report, format_rational, render_chart_text, render_json


@dataclass(frozen=True)
class CliConfig:
    seed: int = DEFAULT_SEED
    jet_cap: int = 64
    candidate_overrides: tuple[Fraction, ...] = ()
    atlas: str | None = None
    output_format: str = "text"
    parallelism: int = 1
    out: str | None = None

    def analysis(self) -> AnalysisConfig:
        return AnalysisConfig(
            seed=self.seed,
            jet_cap=self.jet_cap,
            candidate_overrides=self.candidate_overrides,
            parallelism=self.parallelism,
        )


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise InputError(message)


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help="seed for the deterministic generic-sample generator")
    sp.add_argument("--jet-cap", type=int, default=64,
                    help="stabilization cap for truncated-jet computations")
    sp.add_argument("--candidates", default="",
                    help="comma-separated special-value overrides, e.g. 0,1,-1/2")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", default=None, help="also write the report to this file")


def _build_parser() -> _Parser:
    parser = _Parser(prog="meropencil",
                     description="Exact invariants of meromorphic pencils of plane curves")
    sub = parser.add_subparsers(dest="command", required=True)

    mu = sub.add_parser("mu", help="Milnor number of a germ at a point")
    mu.add_argument("--vars", required=True, help="ordered variables, e.g. x,z")
    mu.add_argument("--poly", required=True)
    mu.add_argument("--point", default=None, help="study point, e.g. 0,0 (default: origin)")
    _add_common(mu)

    cl = sub.add_parser("classify", help="ADE label of a plane-curve germ")
    cl.add_argument("--vars", required=True)
    cl.add_argument("--poly", required=True)
    cl.add_argument("--point", default=None)
    _add_common(cl)

    germ = sub.add_parser("germ", help="base-point analysis of one chart p/q")
    germ.add_argument("--vars", required=True)
    germ.add_argument("--p", required=True)
    germ.add_argument("--q", required=True)
    germ.add_argument("--point", default=None,
                      help="restrict to one base point, e.g. 0,0")
    _add_common(germ)

    pencil = sub.add_parser("pencil", help="full atlas analysis")
    pencil.add_argument("--atlas", required=True, help="atlas file path")
    pencil.add_argument("--parallelism", type=int, default=1)
    _add_common(pencil)
    return parser


def _parse_vars(text: str) -> tuple[str, ...]:
    vs = tuple(v.strip() for v in text.split(",") if v.strip())
    if not vs:
        raise InputError("empty variable list")
    return vs


def _parse_point(text: str, arity: int) -> tuple[Fraction, ...]:
    coords = tuple(parse_rational(c) for c in text.split(","))
    if len(coords) != arity:
        raise InputError(f"expected {arity} coordinates, got {len(coords)}")
    return coords


def _parse_candidates(text: str) -> tuple[Fraction, ...]:
    if not text.strip():
        return ()
    return tuple(parse_rational(c) for c in text.split(","))


def _germ_at_point(args):
    vs = _parse_vars(args.vars)
    poly = parse_expression(args.poly, vs)
    if args.point:
        poly = translate(poly, _parse_point(args.point, len(vs)))
    return poly


def _write(text: str, out: str | None) -> None:
    sys.stdout.write(text)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv: list[str]) -> int:
    args = _build_parser().parse_args(argv)
    cfg = CliConfig(
        seed=args.seed,
        jet_cap=getattr(args, "jet_cap"),
        candidate_overrides=_parse_candidates(args.candidates),
        atlas=getattr(args, "atlas", None),
        output_format=args.format,
        parallelism=getattr(args, "parallelism", 1),
        out=args.out,
    )

    if args.command == "mu":
        res = milnor_number(_germ_at_point(args), cap=cfg.jet_cap)
        if cfg.output_format == "json":
            obj = {
                "mu": res.mu,
                "stabilization_degree": res.stabilization_degree,
                "basis_monomials": [list(e) for e in res.basis_monomials],
            }
            _write(render_json(obj), cfg.out)
        else:
            _write(
                f"mu = {res.mu}\n"
                f"stabilized at jet order {res.stabilization_degree}\n",
                cfg.out,
            )
        return 0

    if args.command == "classify":
        cls = classify_plane_germ(_germ_at_point(args), cap=cfg.jet_cap)
        if cfg.output_format == "json":
            obj = {"label": str(cls), "mu": cls.mu, "corank": cls.corank}
            _write(render_json(obj), cfg.out)
        else:
            _write(f"{cls} (mu = {cls.mu}, corank = {cls.corank})\n", cfg.out)
        return 0

    if args.command == "germ":
        vs = _parse_vars(args.vars)
        if len(vs) != 2:
            raise InputError("germ analysis needs exactly two variables")
        p = parse_expression(args.p, vs)
        q = parse_expression(args.q, vs)
        declared = None
        if args.point:
            pt = _parse_point(args.point, 2)
            declared = ((pt[0], pt[1]),)
        chart = ChartInput("germ", p, q, declared, ())
        report, warnings = analyze_germ_chart(chart, cfg.analysis())
        if cfg.output_format == "json":
            obj = report.to_json_obj()
            obj["warnings"] = list(warnings)
            _write(render_json(obj), cfg.out)
        else:
            _write(render_chart_text(report, warnings), cfg.out)
        return 0

    if args.command == "pencil":
        atlas = load_atlas(cfg.atlas)
        analysis = AnalysisConfig(
            seed=atlas.seed if atlas.seed is not None else cfg.seed,
            jet_cap=atlas.jet_cap if atlas.jet_cap is not None else cfg.jet_cap,
            candidate_overrides=tuple(
                sorted(set(cfg.candidate_overrides) | set(atlas.candidates))
            ),
            parallelism=cfg.parallelism,
        )
        report = analyze_pencil(list(atlas.charts), analysis, atlas.overlaps)
        _write(emit_report(report, cfg.output_format), cfg.out)
        return 0

    raise InputError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        return run(argv)
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (InputError, MeropencilError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:  # console script
    sys.exit(main())
