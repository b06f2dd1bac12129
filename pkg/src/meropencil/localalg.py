"""Local invariants of polynomial germs at the origin.

The workhorse is a Nakayama-stabilized truncated-jet computation: for a
finitely generated ideal J and increasing jet order k, the dimension d_k
of (polynomials of degree < k) modulo the degree-< k truncations of
monomial multiples of the generators is computed by exact row reduction.
The first k with d_{k+1} = d_k certifies that the maximal-ideal power
m^k lies inside the local ideal, so d_k is the dimension of the full
local quotient.  Applied to the Jacobian ideal this yields the Milnor
number; applied to the ideal (u, v) of two plane germs it yields their
local intersection multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .elimination import poly_gcd, squarefree_part, normalized
from .errors import (
    InputError,
    NonIsolatedError,
    NonzeroLinearPartError,
    NotVanishingError,
)
from .jetlinalg import integer_rows, row_reduce
from .multipoly import Exponents, MultiPoly

DEFAULT_JET_CAP = 64

INFINITE = math.inf


def _monomials_below(nvars: int, max_total: int) -> list[Exponents]:
    """Exponent vectors of total degree <= max_total, graded lex ascending."""
    out: list[Exponents] = []
    for d in range(max_total + 1):
        level = set()
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            level.add(tuple(e))
        out.extend(sorted(level, reverse=True))
    return out


def _order(p: MultiPoly) -> int:
    """Minimal total degree of a term; large sentinel for the zero polynomial."""
    if p.is_zero():
        return 1 << 30
    return min(sum(e) for e in p.terms)


def _jet_dimension(generators: list[MultiPoly], nvars: int, k: int) -> tuple[int, list[Exponents]]:
    """Dimension of (deg < k polynomials) modulo truncated multiples of the
    generators, together with the monomials spanning the quotient."""
    cols = _monomials_below(nvars, k - 1)
    col_index = {e: i for i, e in enumerate(cols)}
    rows: list[list[Fraction]] = []
    for g in generators:
        if g.is_zero():
            continue
        ordg = _order(g)
        for m in _monomials_below(nvars, k - 1 - ordg):
            row = [Fraction(0)] * len(cols)
            hit = False
            for e, c in g.terms.items():
                shifted = tuple(a + b for a, b in zip(e, m))
                if sum(shifted) < k:
                    row[col_index[shifted]] = c
                    hit = True
            if hit:
                rows.append(row)
    if not rows:
        return len(cols), cols
    rank, pivots = row_reduce(integer_rows(rows), len(cols))
    pivot_set = set(pivots)
    basis = [e for i, e in enumerate(cols) if i not in pivot_set]
    return len(cols) - rank, basis


def stabilized_dimension(generators: list[MultiPoly], nvars: int,
                         cap: int) -> tuple[int, int, list[Exponents]]:
    """Run jet orders k = 1, 2, ... until d_{k+1} = d_k; returns
    (dimension, stabilization order k*, quotient basis monomials)."""
    prev, prev_basis = _jet_dimension(generators, nvars, 1)
    for k in range(2, cap + 2):
        cur, basis = _jet_dimension(generators, nvars, k)
        if cur == prev:
            return prev, k - 1, prev_basis
        prev, prev_basis = cur, basis
    raise NonIsolatedError(
        f"jet dimensions did not stabilize by order {cap}: "
        "not an isolated singularity, or the cap is too low"
    )


@dataclass(frozen=True)
class MilnorResult:
    """Milnor number with its Nakayama certificate."""

    mu: int
    stabilization_degree: int
    basis_monomials: tuple[Exponents, ...]


def milnor_number(g: MultiPoly, cap: int = DEFAULT_JET_CAP) -> MilnorResult:
    """Dimension over Q of the local Jacobian algebra at the origin.

    Zero iff the germ is smooth there; raises NonIsolatedError when the
    jet dimensions fail to stabilize within the cap.
    """
    if g.constant_term():
        raise NotVanishingError(f"germ does not vanish at the origin: {g}")
    partials = [g.diff(v) for v in g.variables]
    if all(p.is_zero() for p in partials):
        raise NonIsolatedError("all partial derivatives vanish identically")
    if any(p.constant_term() for p in partials):
        return MilnorResult(0, 1, ())
    mu, kstar, basis = stabilized_dimension(partials, len(g.variables), cap)
    return MilnorResult(mu, kstar, tuple(basis))


def intersection_multiplicity(u: MultiPoly, v: MultiPoly,
                              cap: int = DEFAULT_JET_CAP) -> int | float:
    """Local intersection multiplicity of two plane-curve germs at the
    origin: dim of the local quotient by (u, v).  Returns INFINITE when
    the germs share a curve component through the origin (detected by
    gcd before any iteration)."""
    if u.variables != v.variables:
        raise InputError("germs live over different variable lists")
    if u.constant_term() or v.constant_term():
        raise NotVanishingError("both germs must vanish at the origin")
    if u.is_zero() or v.is_zero():
        return INFINITE
    common = poly_gcd(u, v)
    if not common.is_constant() and not common.constant_term():
        return INFINITE
    dim, _, _ = stabilized_dimension([u, v], len(u.variables), cap)
    return dim


def hessian_corank(g: MultiPoly) -> int:
    """Corank of the matrix of second partials at the origin."""
    if g.constant_term():
        raise NotVanishingError(f"germ does not vanish at the origin: {g}")
    n = len(g.variables)
    for v in g.variables:
        if g.diff(v).constant_term():
            raise NonzeroLinearPartError(
                "Hessian corank is defined for germs with zero linear part"
            )
    rows = []
    for v1 in g.variables:
        dv = g.diff(v1)
        rows.append([dv.diff(v2).constant_term() for v2 in g.variables])
    rank, _ = row_reduce(integer_rows(rows), n)
    return n - rank


@dataclass(frozen=True)
class GermClass:
    """ADE label of a plane-curve germ, with its numeric witnesses."""

    kind: str  # "Smooth", "A", "D", "E", "Unclassified"
    mu: int
    corank: int

    @property
    def label(self) -> str:
        if self.kind in ("Smooth", "Unclassified"):
            return self.kind
        return f"{self.kind}_{self.mu}"

    def __str__(self) -> str:
        return self.label


def _cubic_part(g: MultiPoly) -> MultiPoly:
    return MultiPoly(g.variables,
                     {e: c for e, c in g.terms.items() if sum(e) == 3})


def classify_plane_germ(g: MultiPoly, cap: int = DEFAULT_JET_CAP) -> GermClass:
    """ADE recognition for isolated plane-curve germs at the origin.

    Smooth when mu = 0; A_mu for corank <= 1; for corank 2 the cubic part
    decides: three distinct linear factors give D_4, a double plus a
    simple factor gives D_mu, a perfect cube (or vanishing cubic) gives
    E_mu for mu in {6, 7, 8}.  Everything else is Unclassified.
    """
    if len(g.variables) != 2:
        raise InputError("classification is implemented for plane germs only")
    mu = milnor_number(g, cap=cap).mu
    if mu == 0:
        return GermClass("Smooth", 0, 0)
    corank = hessian_corank(g)
    if corank <= 1:
        return GermClass("A", mu, corank)
    cubic = _cubic_part(g)
    if cubic.is_zero():
        distinct_deg = 0
    else:
        distinct_deg = squarefree_part(cubic).total_degree()
    if distinct_deg == 3:
        if mu == 4:
            return GermClass("D", 4, 2)
        return GermClass("Unclassified", mu, corank)
    if distinct_deg == 2:
        if mu >= 4:
            return GermClass("D", mu, 2)
        return GermClass("Unclassified", mu, corank)
    # perfect cube or no cubic terms at all
    if mu in (6, 7, 8):
        return GermClass("E", mu, 2)
    return GermClass("Unclassified", mu, corank)
