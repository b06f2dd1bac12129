"""One-parameter families p - t*q of plane-curve germs at a base point.

A base point is a common zero of the reduced pair (p, q): every member of
the pencil passes through it, and the interesting invariants live there.
The two computational routes to the vanishing-cycle count at a special
parameter value a are:

  * polar route:  lambda(a) = i0(Gamma, p - a*q) - i0(Gamma, p - s*q)
    for generic s, where Gamma is the pole-saturated Jacobian curve of
    the pair (p, q).  The subtraction removes the non-moving intersection
    contributed by the base point itself, which sits on every fiber.
  * jump route:  lambda(a) = mu(a) - (sum of nearby Milnor numbers); the
    directly computable part is mu(a) - mu(generic), and comparing it
    with the polar route detects splitting of singular points.

Generic parameter values are integers drawn from a seeded deterministic
generator in [1009, 9973], skipping known candidates; every genericity
claim is double-checked by two-sample agreement.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .elimination import (
    divisions_by,
    is_squarefree,
    normalized,
    poly_gcd,
    resultant,
    squarefree_part,
    try_divide,
)
from .errors import (
    DegenerateFamilyError,
    GenericityFailureError,
    InputError,
    NonIsolatedError,
    NonReducedFiberError,
    NotVanishingError,
)
from .localalg import (
    DEFAULT_JET_CAP,
    INFINITE,
    GermClass,
    classify_plane_germ,
    intersection_multiplicity,
    milnor_number,
)
from .multipoly import MultiPoly, parse_expression, translate
from .unipoly import UniPoly, rational_roots

SAMPLE_LOW = 1009
SAMPLE_HIGH = 9973


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from heterogeneous labels (no salted hashing)."""
    blob = ":".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


class GenericSampler:
    """Deterministic stream of generic integer parameter values."""

    def __init__(self, seed: int, avoid: Iterable[Fraction] = ()):
        self._rng = random.Random(seed)
        self._taken = {Fraction(a) for a in avoid}

    def draw(self) -> Fraction:
        while True:
            v = Fraction(self._rng.randint(SAMPLE_LOW, SAMPLE_HIGH))
            if v not in self._taken:
                self._taken.add(v)
                return v


def two_sample_agree(compute, sampler: GenericSampler, what: str):
    """Evaluate at two generic samples; they must agree.  One disagreeing
    pair triggers a single fresh re-sample (recorded as a warning), a
    second disagreement aborts."""
    warnings: list[str] = []
    s1, s2 = sampler.draw(), sampler.draw()
    v1, v2 = compute(s1), compute(s2)
    if v1 == v2:
        return v1, s1, warnings
    warnings.append(
        f"generic samples disagreed for {what}: "
        f"{what}({s1}) = {v1}, {what}({s2}) = {v2}; re-sampling once"
    )
    s3, s4 = sampler.draw(), sampler.draw()
    v3, v4 = compute(s3), compute(s4)
    if v3 == v4:
        return v3, s3, warnings
    raise GenericityFailureError(
        f"generic samples disagree twice for {what}: "
        f"({s1}: {v1}, {s2}: {v2}), ({s3}: {v3}, {s4}: {v4})"
    )


# ----------------------------------------------------------------------
# fractions, base points, reducedness


def reduce_fraction(p: MultiPoly, q: MultiPoly) -> tuple[MultiPoly, MultiPoly, str | None]:
    """Divide out gcd(p, q); a warning message reports a removed factor."""
    if q.is_zero():
        raise InputError("denominator is the zero polynomial")
    if p.is_zero():
        return p, q, "zero numerator"
    g = poly_gcd(p, q)
    if g.is_constant():
        return p, q, None
    p2 = try_divide(p, g)
    q2 = try_divide(q, g)
    assert p2 is not None and q2 is not None
    return p2, q2, f"removed common factor ({g}) from p/q"


def _set_zero(p: MultiPoly, var: str) -> MultiPoly:
    """Terms surviving the substitution var = 0 (stays in the same ring)."""
    i = p.variables.index(var)
    return MultiPoly(p.variables, {e: c for e, c in p.terms.items() if e[i] == 0})


def base_points(p: MultiPoly, q: MultiPoly) -> tuple[list[tuple[Fraction, Fraction]], bool, list[str]]:
    """All rational common zeros of a reduced pair, by resultant
    elimination in each variable plus exact verification.

    The completeness flag drops to False when an eliminant keeps a
    positive-degree factor with no rational roots; such solution clusters
    are reported symbolically in the notes.
    """
    if p.variables != q.variables or len(p.variables) != 2:
        raise InputError("base_points expects two polynomials in the same two variables")
    g = poly_gcd(p, q)
    if not p.is_zero() and not q.is_zero() and not g.is_constant():
        raise DegenerateFamilyError(
            f"p and q share the curve component ({g}); reduce the fraction first"
        )
    if q.is_constant() or p.is_constant():
        # a nonzero constant on either side leaves no common zeros
        if (q.is_constant() and not q.is_zero()) or (p.is_constant() and not p.is_zero()):
            return [], True, []
        raise DegenerateFamilyError("zero member in the fraction")
    v1, v2 = p.variables
    notes: list[str] = []
    complete = True
    axis_candidates: list[list[Fraction]] = []
    for keep, drop in ((v1, v2), (v2, v1)):
        if p.degree_in(drop) == 0 and q.degree_in(drop) == 0:
            # nothing to eliminate: common roots in the kept variable only
            elim = poly_gcd(p, q)  # constant: coprime, no common zeros
            axis_candidates.append([])
            continue
        elim = resultant(p, q, drop)
        if elim.is_zero():
            raise DegenerateFamilyError("resultant vanished: common component")
        if elim.is_constant():
            axis_candidates.append([])
            continue
        rr = rational_roots(UniPoly.from_multipoly(elim, keep))
        if rr.quotient.degree() > 0:
            complete = False
            notes.append(
                f"nonrational {keep}-coordinates possible: roots of {rr.quotient}"
            )
        axis_candidates.append(sorted(rr.roots))
    points = []
    for a in axis_candidates[0]:
        for b in axis_candidates[1]:
            pt = {v1: a, v2: b}
            if p.evaluate(pt) == 0 and q.evaluate(pt) == 0:
                points.append((a, b))
    return sorted(points), complete, notes


def fiber_reducedness(p: MultiPoly, q: MultiPoly, a: Fraction) -> bool:
    """True iff the fiber equation p - a*q is square-free."""
    member = p - q * Fraction(a)
    if member.is_zero():
        return False
    return is_squarefree(member)


# ----------------------------------------------------------------------
# the germ family


@dataclass(frozen=True)
class PlaneGermFamily:
    """The pencil p - t*q at a base point, translated to the origin.

    Both polynomials vanish at the origin and their gcd is invertible
    there (a genuine common factor through the base point would make
    every invariant infinite).
    """

    p: MultiPoly
    q: MultiPoly
    base_point: tuple[Fraction, Fraction]

    @classmethod
    def at_point(cls, p: MultiPoly, q: MultiPoly,
                 point: Sequence[Fraction | int] = (0, 0)) -> PlaneGermFamily:
        if p.variables != q.variables or len(p.variables) != 2:
            raise InputError("a germ family needs two polynomials in the same two variables")
        pt = (Fraction(point[0]), Fraction(point[1]))
        p0 = translate(p, pt)
        q0 = translate(q, pt)
        if p0.constant_term() or q0.constant_term():
            raise NotVanishingError(
                f"({pt[0]}, {pt[1]}) is not a base point: "
                f"p = {p.evaluate(dict(zip(p.variables, pt)))}, "
                f"q = {q.evaluate(dict(zip(q.variables, pt)))} there"
            )
        g = poly_gcd(p0, q0)
        if not g.is_constant() and not g.constant_term():
            raise DegenerateFamilyError(
                f"p and q share the component ({g}) through the base point"
            )
        return cls(p0, q0, pt)

    @property
    def variables(self) -> tuple[str, str]:
        return self.p.variables  # type: ignore[return-value]

    def parameter_name(self) -> str:
        name = "t"
        while name in self.variables:
            name += "_"
        return name

    def member(self, a: Fraction | int) -> MultiPoly:
        """The fiber germ p - a*q at the origin."""
        return self.p - self.q * Fraction(a)

    def total_poly(self) -> MultiPoly:
        """p - t*q over (v1, v2, t)."""
        t = self.parameter_name()
        ext = self.variables + (t,)
        return self.p.with_variables(ext) - self.q.with_variables(ext) * MultiPoly.variable(ext, t)


@dataclass(frozen=True)
class PolarCurve:
    """Pole-saturated Jacobian curve of the pair (p, q)."""

    equation: MultiPoly
    removed_factors: tuple[MultiPoly, ...]

    def is_trivial_at_origin(self) -> bool:
        return self.equation.is_constant() or bool(self.equation.constant_term())


def polar_curve(fam: PlaneGermFamily) -> PolarCurve:
    """Jacobian determinant of (p, q) with every factor shared with the
    pole locus divided out."""
    v1, v2 = fam.variables
    jac = fam.p.diff(v1) * fam.q.diff(v2) - fam.p.diff(v2) * fam.q.diff(v1)
    if jac.is_zero():
        raise DegenerateFamilyError(
            "Jacobian of (p, q) vanishes identically: the pair is functionally dependent"
        )
    if fam.q.is_constant():
        return PolarCurve(normalized(jac), ())
    pole = squarefree_part(fam.q)
    removed: list[MultiPoly] = []
    eq = jac
    while True:
        g = poly_gcd(eq, pole)
        if g.is_constant():
            break
        nxt = try_divide(eq, g)
        assert nxt is not None
        removed.append(g)
        eq = nxt
    return PolarCurve(normalized(eq), tuple(removed))


# ----------------------------------------------------------------------
# lambda along the poles, two routes


def _intersection_with_member(gamma: MultiPoly, fam: PlaneGermFamily,
                              a: Fraction, cap: int) -> int:
    m = fam.member(a)
    if m.is_zero():
        raise DegenerateFamilyError(f"fiber at {a} is the whole plane")
    i = intersection_multiplicity(gamma, m, cap=cap)
    if i == INFINITE:
        raise NonIsolatedError(
            f"polar curve shares a component with the fiber at t = {a}; "
            "singularities are not isolated there"
        )
    return int(i)


def generic_polar_intersection(fam: PlaneGermFamily, gamma: MultiPoly,
                               sampler: GenericSampler, cap: int) -> tuple[int, list[str]]:
    value, _, warns = two_sample_agree(
        lambda s: _intersection_with_member(gamma, fam, s, cap),
        sampler, "i0(polar curve, fiber)"
    )
    return value, warns


def polar_lambda(fam: PlaneGermFamily, a: Fraction | int, *,
                 seed: int = 0, avoid: Iterable[Fraction] = (),
                 cap: int = DEFAULT_JET_CAP) -> int:
    """Moving polar intersection number at parameter a: the count of
    vanishing cycles concentrated at the base point for the value a."""
    gamma = polar_curve(fam)
    if gamma.is_trivial_at_origin():
        return 0
    a = Fraction(a)
    sampler = GenericSampler(seed, set(avoid) | {a})
    i_gen, _ = generic_polar_intersection(fam, gamma.equation, sampler, cap)
    i_a = _intersection_with_member(gamma.equation, fam, a, cap)
    lam = i_a - i_gen
    if lam < 0:
        raise GenericityFailureError(
            f"polar intersection at t = {a} is smaller than the generic one "
            f"({i_a} < {i_gen}); generic samples were not generic"
        )
    return lam


def generic_mu(fam: PlaneGermFamily, avoid: Iterable[Fraction] = (), *,
               seed: int = 0, cap: int = DEFAULT_JET_CAP) -> tuple[int, GermClass, list[str]]:
    """Milnor number (and class) of the germ at the base point for generic
    parameter values, certified by two-sample agreement."""
    sampler = GenericSampler(seed, avoid)

    def compute(s: Fraction) -> int:
        if not fiber_reducedness(fam.p, fam.q, s):
            raise NonReducedFiberError(
                f"fiber at generic sample t = {s} is not reduced"
            )
        return milnor_number(fam.member(s), cap=cap).mu

    mu, witness, warns = two_sample_agree(compute, sampler, "mu(generic fiber)")
    cls = classify_plane_germ(fam.member(witness), cap=cap)
    return mu, cls, warns


@dataclass(frozen=True)
class JumpResult:
    lambda_jump: int
    mu_special: int
    splitting_detected: bool
    mu_nearby_sum: int


def jump_lambda(fam: PlaneGermFamily, a: Fraction | int, *,
                seed: int = 0, avoid: Iterable[Fraction] = (),
                cap: int = DEFAULT_JET_CAP) -> JumpResult:
    """Jump route: mu at the special value minus the generic mu, with the
    splitting diagnosis against the polar route."""
    a = Fraction(a)
    if not fiber_reducedness(fam.p, fam.q, a):
        raise NonReducedFiberError(f"fiber at t = {a} is not reduced")
    avoid_all = set(avoid) | {a}
    mu_gen, _, _ = generic_mu(fam, avoid_all, seed=seed, cap=cap)
    lam_polar = polar_lambda(fam, a, seed=seed, avoid=avoid_all, cap=cap)
    mu_special = milnor_number(fam.member(a), cap=cap).mu
    lam_jump = mu_special - mu_gen
    if lam_jump < 0:
        raise GenericityFailureError(
            f"mu({a}) = {mu_special} is below the generic mu = {mu_gen}"
        )
    nearby = mu_special - lam_polar
    if nearby < mu_gen:
        raise NonIsolatedError(
            f"inconsistent routes at t = {a}: nearby Milnor sum {nearby} "
            f"below the generic mu {mu_gen}"
        )
    return JumpResult(lam_jump, mu_special, lam_jump != lam_polar, nearby)


def unit_twist_check(fam: PlaneGermFamily, u: MultiPoly, a: Fraction | int, *,
                     seed: int = 0, avoid: Iterable[Fraction] = (),
                     cap: int = DEFAULT_JET_CAP) -> bool:
    """Re-run the polar route on (p*u, q*u) for a unit u at the origin and
    compare; the invariant does not depend on the unit, so this should
    always come back True."""
    u = u if isinstance(u, MultiPoly) else MultiPoly.constant(fam.variables, u)
    if u.variables != fam.variables:
        u = u.with_variables(fam.variables)
    if not u.constant_term():
        raise InputError(f"({u}) is not a unit at the origin")
    twisted = PlaneGermFamily(fam.p * u, fam.q * u, fam.base_point)
    lam0 = polar_lambda(fam, a, seed=seed, avoid=avoid, cap=cap)
    lam1 = polar_lambda(twisted, a, seed=seed, avoid=avoid, cap=cap)
    return lam0 == lam1


# ----------------------------------------------------------------------
# candidate special values


@dataclass(frozen=True)
class CandidateReport:
    values: tuple[Fraction, ...]
    complete: bool
    notes: tuple[str, ...]


def _shear(p: MultiPoly, move: str, along: str, c: int) -> MultiPoly:
    """Substitute move := move + c*along, keeping the variable order."""
    vs = p.variables
    expr = MultiPoly.variable(vs, move) + MultiPoly.variable(vs, along) * c
    return p.substitute({move: expr}).with_variables(vs)


def _regular_direction(gamma: MultiPoly, total: MultiPoly,
                       elim: str, keep: str) -> bool:
    """Is resultant elimination in ``elim`` sound near the origin?  The
    leading coefficients must not vanish on the axis keep-direction, or
    intersections could escape to infinity in the eliminated variable."""
    if gamma.degree_in(elim) < 1 or total.degree_in(elim) < 1:
        return False
    lc_g = gamma.coefficients_in(elim)[-1]
    lc_t = total.coefficients_in(elim)[-1]
    for lc in (lc_g, lc_t):
        axis = lc
        for v in lc.variables:
            if v not in (keep, elim):
                continue
        axis = _set_zero(lc, keep)
        if axis.is_zero():
            return False
    return True


def special_value_candidates(fam: PlaneGermFamily, *,
                             overrides: Iterable[Fraction] = (),
                             cap: int = DEFAULT_JET_CAP) -> CandidateReport:
    """Finite candidate set for parameter values where the polar count can
    jump: rational roots of the lowest moving coefficient of the polar
    restriction eliminant, united with caller-supplied overrides.

    Sound but only probabilistically complete: values outside the set are
    certified generic by two-sample agreement elsewhere in the pipeline.
    """
    notes: list[str] = []
    over = tuple(sorted({Fraction(v) for v in overrides}))
    gamma_curve = polar_curve(fam)
    if gamma_curve.is_trivial_at_origin():
        return CandidateReport(over, True, ("polar curve misses the base point",))
    v1, v2 = fam.variables
    tname = fam.parameter_name()
    ext = fam.variables + (tname,)

    attempts: list[tuple[MultiPoly, MultiPoly, str, str, str | None]] = []
    gamma0 = gamma_curve.equation.with_variables(ext)
    total0 = fam.total_poly()
    attempts.append((gamma0, total0, v1, v2, None))
    attempts.append((gamma0, total0, v2, v1, None))
    shear_rng = random.Random(derive_seed("shear", str(fam.p), str(fam.q)))
    for _ in range(6):
        c = shear_rng.randint(1, 9)
        for move, along, elim, keep in ((v2, v1, v1, v2), (v1, v2, v2, v1)):
            sp = _shear(fam.p, move, along, c)
            sq = _shear(fam.q, move, along, c)
            sheared = PlaneGermFamily(sp, sq, fam.base_point)
            sg = polar_curve(sheared)
            if sg.is_trivial_at_origin():
                continue
            attempts.append((
                sg.equation.with_variables(ext), sheared.total_poly(),
                elim, keep,
                f"sheared {move} -> {move} + {c}*{along} for regularity",
            ))

    for gamma, total, elim, keep, note in attempts:
        if not _regular_direction(gamma, total, elim, keep):
            continue
        r = resultant(gamma, total, elim)
        if r.is_zero():
            continue
        keep_var = MultiPoly.variable(ext, keep)
        reduced, _ = divisions_by(r, keep_var)
        lowest = _set_zero(reduced, keep)
        if lowest.is_zero():
            continue
        if note:
            notes.append(note)
        if lowest.degree_in(tname) < 1:
            return CandidateReport(over, True, tuple(notes))
        rr = rational_roots(UniPoly.from_multipoly(lowest, tname))
        complete = rr.quotient.degree() <= 0
        if not complete:
            notes.append(
                f"nonrational candidate special values possible: roots of {rr.quotient}"
            )
        values = tuple(sorted(set(rr.roots) | set(over)))
        return CandidateReport(values, complete, tuple(notes))
    raise DegenerateFamilyError(
        "could not find a regular elimination direction for the polar restriction"
    )
