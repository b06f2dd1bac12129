"""Whole-chart and whole-atlas analysis.

Per chart: find base points, analyze the germ family at each of them,
and solve the critical system off the poles.  Per atlas: pool candidate
special values (polar eliminant roots, critical values, user overrides),
aggregate per-value sums, and report the atypical set and the global
vanishing-cycle count mu + lambda.

Charts are user-declared; except for explicitly declared overlap maps,
critical points are counted per chart and a warning reminds the user
that disjointness is their responsibility.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .elimination import poly_gcd, squarefree_part, try_divide
from .errors import (
    DegenerateFamilyError,
    IncompleteAnalysisError,
    InputError,
    NonIsolatedError,
)
from .family import (
    GenericSampler,
    PlaneGermFamily,
    base_points,
    derive_seed,
    fiber_reducedness,
    generic_mu,
    generic_polar_intersection,
    polar_curve,
    reduce_fraction,
    special_value_candidates,
)
from .localalg import DEFAULT_JET_CAP, classify_plane_germ, milnor_number
from .multipoly import MultiPoly, translate
from .report import (
    BasePointReport,
    ChartReport,
    CriticalPointRecord,
    PencilReport,
    SpecialValueRecord,
    ValueSummary,
    format_point,
    format_rational,
)
from .unipoly import UniPoly, rational_roots

DEFAULT_SEED = 271828


@dataclass(frozen=True)
class ChartInput:
    """One affine chart of the meromorphic function: f = p/q in two
    declared coordinates."""

    name: str
    p: MultiPoly
    q: MultiPoly
    declared_base_points: tuple[tuple[Fraction, Fraction], ...] | None = None
    overrides: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class OverlapMap:
    """Declared rational coordinate change between two charts: for each
    destination variable, a (numerator, denominator) pair over the source
    chart's variables."""

    src: str
    dst: str
    images: Mapping[str, tuple[MultiPoly, MultiPoly]]

    def apply(self, point: tuple[Fraction, Fraction],
              src_vars: tuple[str, str],
              dst_vars: tuple[str, str]) -> tuple[Fraction, Fraction] | None:
        binding = dict(zip(src_vars, point))
        out = []
        for v in dst_vars:
            if v not in self.images:
                return None
            num, den = self.images[v]
            d = den.evaluate(binding)
            if d == 0:
                return None
            out.append(num.evaluate(binding) / d)
        return tuple(out)  # type: ignore[return-value]


@dataclass(frozen=True)
class AnalysisConfig:
    seed: int = DEFAULT_SEED
    jet_cap: int = DEFAULT_JET_CAP
    candidate_overrides: tuple[Fraction, ...] = ()
    parallelism: int = 1

    def __post_init__(self):
        if self.jet_cap < 4:
            raise InputError("jet cap must be at least 4")
        if self.parallelism < 1:
            raise InputError("parallelism must be at least 1")


# ----------------------------------------------------------------------
# critical points off the poles


def _common_rational_zeros(a: MultiPoly, b: MultiPoly) -> tuple[list[tuple[Fraction, Fraction]], bool, list[str]]:
    """Rational common zeros of two coprime plane polynomials, by resultant
    elimination in each variable with exact verification."""
    from .elimination import resultant

    v1, v2 = a.variables
    notes: list[str] = []
    complete = True
    axes: list[list[Fraction]] = []
    for keep, drop in ((v1, v2), (v2, v1)):
        if a.degree_in(drop) <= 0 and b.degree_in(drop) <= 0:
            # both involve only the kept variable and are coprime
            return [], True, []
        elim = resultant(a, b, drop)
        if elim.is_zero():
            raise NonIsolatedError("eliminant vanished: common component")
        if elim.is_constant():
            axes.append([])
            continue
        rr = rational_roots(UniPoly.from_multipoly(elim, keep))
        if rr.quotient.degree() > 0:
            complete = False
            notes.append(
                f"nonrational {keep}-coordinates possible: roots of {rr.quotient}"
            )
        axes.append(sorted(rr.roots))
    points = []
    for x0 in axes[0]:
        for z0 in axes[1]:
            pt = {v1: x0, v2: z0}
            if a.evaluate(pt) == 0 and b.evaluate(pt) == 0:
                points.append((x0, z0))
    return sorted(points), complete, notes


def critical_analysis(p: MultiPoly, q: MultiPoly, *,
                      cap: int = DEFAULT_JET_CAP) -> tuple[list[CriticalPointRecord], bool, list[str]]:
    """Solve the critical system of f = p/q off the pole locus and compute
    the Milnor data of the fiber germ at every rational solution."""
    if p.variables != q.variables or len(p.variables) != 2:
        raise InputError("critical_analysis expects two polynomials in the same two variables")
    v1, v2 = p.variables
    e1 = q * p.diff(v1) - p * q.diff(v1)
    e2 = q * p.diff(v2) - p * q.diff(v2)
    if e1.is_zero() and e2.is_zero():
        raise DegenerateFamilyError("p/q is constant: no meaningful critical locus")

    pole = None if q.is_constant() else squarefree_part(q)

    def saturate(e: MultiPoly) -> MultiPoly:
        if e.is_zero() or pole is None:
            return e
        while True:
            g = poly_gcd(e, pole)
            if g.is_constant():
                return e
            nxt = try_divide(e, g)
            assert nxt is not None
            e = nxt

    e1, e2 = saturate(e1), saturate(e2)
    for one, other in ((e1, e2), (e2, e1)):
        if one.is_zero():
            if other.is_constant():
                return [], True, []
            raise NonIsolatedError(
                "positive-dimensional critical locus off the poles"
            )
    if e1.is_constant() or e2.is_constant():
        return [], True, []
    if not poly_gcd(e1, e2).is_constant():
        raise NonIsolatedError("positive-dimensional critical locus off the poles")

    points, complete, notes = _common_rational_zeros(e1, e2)
    records = []
    for pt in points:
        binding = dict(zip((v1, v2), pt))
        qval = q.evaluate(binding)
        if qval == 0:
            continue
        value = p.evaluate(binding) / qval
        germ = translate(p - q * value, pt)
        res = milnor_number(germ, cap=cap)
        cls = classify_plane_germ(germ, cap=cap)
        records.append(CriticalPointRecord(pt, value, res, cls))
    return records, complete, notes


# ----------------------------------------------------------------------
# per-base-point and per-chart analysis


def analyze_base_point(fam: PlaneGermFamily, *,
                       extra_candidates: Iterable[Fraction] = (),
                       seed: int = DEFAULT_SEED,
                       cap: int = DEFAULT_JET_CAP) -> tuple[BasePointReport, list[str]]:
    """Full invariant set at one base point: generic data, candidate
    special values, and both lambda routes at each candidate."""
    warnings: list[str] = []
    cand = special_value_candidates(fam, overrides=extra_candidates, cap=cap)
    avoid = set(cand.values)
    mu_gen, class_gen, w = generic_mu(fam, avoid, seed=derive_seed(seed, "mu"), cap=cap)
    warnings.extend(w)

    gamma = polar_curve(fam)
    if gamma.is_trivial_at_origin():
        i_gen = None
    else:
        sampler = GenericSampler(derive_seed(seed, "polar"), avoid)
        i_gen, w = generic_polar_intersection(fam, gamma.equation, sampler, cap)
        warnings.extend(w)

    from .family import _intersection_with_member

    specials = []
    for a in cand.values:
        if not fiber_reducedness(fam.p, fam.q, a):
            from .errors import NonReducedFiberError

            raise NonReducedFiberError(
                f"fiber at t = {format_rational(a)} is not reduced at base point "
                f"{format_point(fam.base_point)}; invariants are undefined there"
            )
        if i_gen is None:
            lam_polar = 0
        else:
            i_a = _intersection_with_member(gamma.equation, fam, a, cap)
            lam_polar = i_a - i_gen
        member = fam.member(a)
        mu_special = milnor_number(member, cap=cap).mu
        class_special = classify_plane_germ(member, cap=cap)
        lam_jump = mu_special - mu_gen
        if lam_polar < 0 or lam_jump < 0:
            from .errors import GenericityFailureError

            raise GenericityFailureError(
                f"negative jump at t = {format_rational(a)}: generic samples "
                "were not generic"
            )
        nearby = mu_special - lam_polar
        if nearby < mu_gen:
            raise NonIsolatedError(
                f"route disagreement at t = {format_rational(a)}: nearby Milnor "
                f"sum {nearby} below generic mu {mu_gen}"
            )
        specials.append(SpecialValueRecord(
            a=a,
            mu_special=mu_special,
            mu_generic=mu_gen,
            lambda_polar=lam_polar,
            lambda_jump=lam_jump,
            splitting_detected=lam_jump != lam_polar,
            mu_nearby_sum=nearby,
            class_generic=class_gen,
            class_special=class_special,
        ))
    report = BasePointReport(
        point=fam.base_point,
        generic_mu=mu_gen,
        class_generic=class_gen,
        specials=tuple(specials),
        complete=cand.complete,
        notes=cand.notes,
    )
    return report, warnings


def analyze_chart(chart: ChartInput, *,
                  chart_index: int = 0,
                  extra_candidates: Iterable[Fraction] = (),
                  seed: int = DEFAULT_SEED,
                  cap: int = DEFAULT_JET_CAP,
                  with_critical: bool = True) -> tuple[ChartReport, list[str]]:
    """Analyze one chart: critical points plus every base point."""
    warnings: list[str] = []
    p, q, warn = reduce_fraction(chart.p, chart.q)
    if warn:
        warnings.append(f"chart {chart.name}: {warn}")

    if chart.declared_base_points is not None:
        pts: list[tuple[Fraction, Fraction]] = sorted(chart.declared_base_points)
        bp_complete, bp_notes = True, []
    else:
        pts, bp_complete, bp_notes = base_points(p, q)

    crit_records: list[CriticalPointRecord] = []
    crit_complete = True
    crit_notes: list[str] = []
    if with_critical:
        crit_records, crit_complete, crit_notes = critical_analysis(p, q, cap=cap)

    pool = set(extra_candidates) | set(chart.overrides)
    pool.update(c.value for c in crit_records)

    reports = []
    for bp_index, pt in enumerate(pts):
        fam = PlaneGermFamily.at_point(p, q, pt)
        bp_seed = derive_seed(seed, chart_index, bp_index)
        rep, w = analyze_base_point(fam, extra_candidates=sorted(pool),
                                    seed=bp_seed, cap=cap)
        reports.append(rep)
        warnings.extend(f"chart {chart.name}: {msg}" for msg in w)

    complete = bp_complete and crit_complete and all(r.complete for r in reports)
    notes = tuple(bp_notes) + tuple(crit_notes)
    report = ChartReport(
        name=chart.name,
        p=p,
        q=q,
        critical_points=tuple(crit_records),
        base_points=tuple(reports),
        complete=complete,
        notes=notes,
    )
    return report, warnings


# ----------------------------------------------------------------------
# atlas-level aggregation


def _deduplicate(charts: list[ChartReport],
                 overlaps: Iterable[OverlapMap],
                 chart_inputs: list[ChartInput]) -> tuple[list[list[CriticalPointRecord]], list[str]]:
    """Apply declared overlap maps: a critical point whose declared image
    coincides (point and value) with a critical point of the partner
    chart is counted once; the copy in the later-listed chart is dropped."""
    order = {c.name: i for i, c in enumerate(chart_inputs)}
    vars_by_name = {c.name: c.p.variables for c in chart_inputs}
    kept: list[list[CriticalPointRecord]] = [list(c.critical_points) for c in charts]
    warnings: list[str] = []
    for om in overlaps:
        if om.src not in order or om.dst not in order:
            raise InputError(f"overlap references unknown chart {om.src!r} or {om.dst!r}")
        i, j = order[om.src], order[om.dst]
        src_vars = vars_by_name[om.src]
        dst_vars = vars_by_name[om.dst]
        for cp in list(kept[i]):
            image = om.apply(cp.point, src_vars, dst_vars)
            if image is None:
                continue
            match = next(
                (o for o in kept[j] if o.point == image and o.value == cp.value),
                None,
            )
            if match is None:
                continue
            victims, victim = (kept[j], match) if j > i else (kept[i], cp)
            if victim in victims:
                victims.remove(victim)
                warnings.append(
                    f"overlap {om.src} -> {om.dst}: critical point "
                    f"{format_point(cp.point)} identified with "
                    f"{format_point(match.point)}; counted once"
                )
    return kept, warnings


def analyze_pencil(charts: list[ChartInput],
                   config: AnalysisConfig = AnalysisConfig(),
                   overlaps: Iterable[OverlapMap] = ()) -> PencilReport:
    """Analyze a declared chart atlas and aggregate the global report."""
    if not charts:
        raise InputError("the atlas declares no charts")
    names = [c.name for c in charts]
    if len(set(names)) != len(names):
        raise InputError("chart names must be distinct")

    # first pass: reductions and critical systems, to pool candidate values
    first: list[tuple[MultiPoly, MultiPoly, str | None]] = []
    crit_by_chart: list[tuple[list[CriticalPointRecord], bool, list[str]]] = []
    for chart in charts:
        p, q, warn = reduce_fraction(chart.p, chart.q)
        first.append((p, q, warn))
        crit_by_chart.append(critical_analysis(p, q, cap=config.jet_cap))

    pooled: set[Fraction] = set(config.candidate_overrides)
    for records, _, _ in crit_by_chart:
        pooled.update(c.value for c in records)
    for chart in charts:
        pooled.update(chart.overrides)

    def run(idx_chart):
        idx, chart = idx_chart
        return analyze_chart(
            chart,
            chart_index=idx,
            extra_candidates=sorted(pooled),
            seed=config.seed,
            cap=config.jet_cap,
        )

    tasks = list(enumerate(charts))
    if config.parallelism > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool_exec:
            results = list(pool_exec.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    chart_reports = [r for r, _ in results]
    warnings: list[str] = []
    for _, w in results:
        warnings.extend(w)

    incomplete = [c.name for c in chart_reports if not c.complete]
    if incomplete:
        details = "; ".join(
            f"{c.name}: {' / '.join(c.notes) or 'incomplete'}"
            for c in chart_reports if not c.complete
        )
        raise IncompleteAnalysisError(
            "refusing to aggregate totals: nonrational solution clusters in "
            f"chart(s) {', '.join(incomplete)} ({details})"
        )

    kept_critical, dedup_warnings = _deduplicate(chart_reports, overlaps, charts)
    warnings.extend(dedup_warnings)
    chart_reports = [
        ChartReport(
            name=c.name, p=c.p, q=c.q,
            critical_points=tuple(kept_critical[i]),
            base_points=c.base_points,
            complete=c.complete,
            notes=c.notes,
        )
        for i, c in enumerate(chart_reports)
    ]

    if len(chart_reports) > 1 and any(c.critical_points for c in chart_reports):
        listing = "; ".join(
            f"{c.name}: " + (", ".join(format_point(cp.point) for cp in c.critical_points) or "none")
            for c in chart_reports
        )
        warnings.append(
            "critical points are counted per declared chart; verify the atlas "
            f"covers each point once ({listing})"
        )

    values: set[Fraction] = set()
    for c in chart_reports:
        values.update(cp.value for cp in c.critical_points)
        for b in c.base_points:
            values.update(s.a for s in b.specials)
    per_value = []
    for a in sorted(values):
        mu_a = sum(cp.milnor.mu for c in chart_reports
                   for cp in c.critical_points if cp.value == a)
        lam_a = sum(s.lambda_polar for c in chart_reports
                    for b in c.base_points for s in b.specials if s.a == a)
        per_value.append(ValueSummary(a, mu_a, lam_a))

    atypical = tuple(v.a for v in per_value if v.mu_a + v.lambda_a > 0)
    mu_total = sum(v.mu_a for v in per_value)
    lam_total = sum(v.lambda_a for v in per_value)
    report = PencilReport(
        charts=tuple(chart_reports),
        atypical_values=atypical,
        per_value=tuple(per_value),
        mu=mu_total,
        lam=lam_total,
        warnings=tuple(warnings),
    )
    report.validate()
    return report


def analyze_germ_chart(chart: ChartInput, config: AnalysisConfig = AnalysisConfig()) -> tuple[ChartReport, tuple[str, ...]]:
    """Base-point-only analysis of a single chart (the `germ` command)."""
    report, warnings = analyze_chart(
        chart,
        chart_index=0,
        extra_candidates=config.candidate_overrides,
        seed=config.seed,
        cap=config.jet_cap,
        with_critical=False,
    )
    return report, tuple(warnings)
