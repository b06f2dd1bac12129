"""Elimination toolkit: exact division, multivariate gcd, resultants,
square-free parts.

All remainder sequences are subresultant PRS (Brown/Collins), not naive
Euclidean division, so intermediate coefficients stay at determinant
scale.  The normalization convention for gcd-like outputs is: integer
primitive coefficients with positive leading coefficient under the
graded lexicographic term order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import InputError, VariableMismatchError
from .multipoly import MultiPoly


def try_divide(p: MultiPoly, d: MultiPoly) -> MultiPoly | None:
    """Exact quotient p/d, or None when d does not divide p."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if d.variables != p.variables:
        raise VariableMismatchError("operands live over different variable lists")
    if p.is_zero():
        return p
    lead_e, lead_c = d.leading_term()
    quo: dict[tuple[int, ...], Fraction] = {}
    rem = p
    while not rem.is_zero():
        e, c = rem.leading_term()
        q = tuple(a - b for a, b in zip(e, lead_e))
        if any(k < 0 for k in q):
            return None
        coeff = c / lead_c
        quo[q] = coeff
        rem = rem - MultiPoly(p.variables, {q: coeff}) * d
    return MultiPoly(p.variables, quo)


def exact_divide(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    q = try_divide(p, d)
    if q is None:
        raise ArithmeticError(f"({p}) is not divisible by ({d})")
    return q


def normalized(p: MultiPoly) -> MultiPoly:
    """Scale to integer primitive coefficients with positive grlex leading
    coefficient; the zero polynomial is returned unchanged."""
    if p.is_zero():
        return p
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // int_gcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = int_gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    _, lead = p.leading_term()
    if lead < 0:
        scale = -scale
    return p * scale


def divisions_by(p: MultiPoly, factor: MultiPoly) -> tuple[MultiPoly, int]:
    """Largest e with factor^e | p; returns (p / factor^e, e)."""
    e = 0
    while True:
        q = try_divide(p, factor)
        if q is None:
            return p, e
        p, e = q, e + 1


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, on dense
    coefficient lists (lowest degree first, no trailing zeros)."""
    da, db = len(a) - 1, len(b) - 1
    lead = b[-1]
    rem = list(a)
    steps = 0
    while len(rem) - 1 >= db and any(not c.is_zero() for c in rem):
        while rem and rem[-1].is_zero():
            rem.pop()
        if len(rem) - 1 < db:
            break
        top = rem[-1]
        shift = len(rem) - 1 - db
        rem = [c * lead for c in rem]
        for k, c in enumerate(b):
            rem[shift + k] = rem[shift + k] - top * c
        rem.pop()
        steps += 1
    while rem and rem[-1].is_zero():
        rem.pop()
    # match the definition when the sequence stopped early
    extra = da - db + 1 - steps
    if extra > 0 and rem:
        mult = lead ** extra
        rem = [c * mult for c in rem]
    return rem


def _coeff_lists(p: MultiPoly, q: MultiPoly, var: str) -> tuple[list, list]:
    return p.coefficients_in(var), q.coefficients_in(var)


def content_in(p: MultiPoly, var: str) -> MultiPoly:
    """gcd of the coefficients of p viewed in one variable."""
    coeffs = p.coefficients_in(var)
    if not coeffs:
        return MultiPoly.zero(p.variables)
    acc = MultiPoly.zero(p.variables)
    for c in coeffs:
        acc = poly_gcd(acc, c)
        if acc.is_constant() and not acc.is_zero():
            break
    return acc


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized (integer primitive, positive
    grlex leading coefficient); gcd with zero is the normalized other
    argument, gcd of two nonzero constants is 1."""
    if p.variables != q.variables:
        raise VariableMismatchError("operands live over different variable lists")
    if p.is_zero():
        return normalized(q)
    if q.is_zero():
        return normalized(p)
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(p.variables, 1)
    var = next(v for v in p.variables
               if p.degree_in(v) > 0 or q.degree_in(v) > 0)
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp == 0:
        return poly_gcd(p, content_in(q, var))
    if dq == 0:
        return poly_gcd(content_in(p, var), q)
    cp = content_in(p, var)
    cq = content_in(q, var)
    scale = poly_gcd(cp, cq)
    a = exact_divide(p, cp).coefficients_in(var)
    b = exact_divide(q, cq).coefficients_in(var)
    if len(a) < len(b):
        a, b = b, a
    one = MultiPoly.constant(p.variables, 1)
    g = h = one
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = r
            break
        divisor = g * h**delta
        a, b = b, [exact_divide(c, divisor) for c in r]
        g = a[-1]
        h = exact_divide(g**delta, h ** (delta - 1)) if delta else h
    if len(b) == 1:
        return normalized(scale)
    part = MultiPoly.from_coefficients(p.variables, var, b)
    part = exact_divide(part, content_in(part, var))
    return normalized(scale * part)


def gcd_many(polys: list[MultiPoly]) -> MultiPoly:
    if not polys:
        raise InputError("gcd of an empty list")
    acc = polys[0]
    for p in polys[1:]:
        acc = poly_gcd(acc, p)
    return acc if not acc.is_zero() else normalized(acc)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant with respect to one variable, by subresultant PRS with
    full sign and content bookkeeping; the result does not involve
    ``var`` and matches the Sylvester determinant exactly."""
    if p.variables != q.variables:
        raise VariableMismatchError("operands live over different variable lists")
    if p.is_zero() or q.is_zero():
        raise InputError("resultant of the zero polynomial")
    m, n = p.degree_in(var), q.degree_in(var)
    if m == 0 and n == 0:
        raise InputError(f"both inputs are constant in {var!r}")
    if m == 0:
        return p**n
    if n == 0:
        return q**m
    sign = 1
    a_poly, b_poly = p, q
    if m < n:
        a_poly, b_poly = q, p
        if (m & 1) and (n & 1):
            sign = -sign
    ca = content_in(a_poly, var)
    cb = content_in(b_poly, var)
    a = exact_divide(a_poly, ca).coefficients_in(var)
    b = exact_divide(b_poly, cb).coefficients_in(var)
    t = ca ** (len(b) - 1) * cb ** (len(a) - 1)
    one = MultiPoly.constant(p.variables, 1)
    g = h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if (da & 1) and (db & 1):
            sign = -sign
        r = _prem(a, b)
        divisor = g * h**delta
        a, b = b, [exact_divide(c, divisor) for c in r]
        g = a[-1]
        h = exact_divide(g**delta, h ** (delta - 1)) if delta else h
        if len(b) <= 1:
            break
    if not b:
        return MultiPoly.zero(p.variables)
    da = len(a) - 1
    final = exact_divide(b[0] ** da, h ** (da - 1)) if da else b[0]
    result = t * final
    return result if sign == 1 else -result


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of a nonzero
    polynomial: p / gcd(p, all first partials), normalized."""
    if p.is_zero():
        raise InputError("square-free part of the zero polynomial")
    g = p
    for v in p.variables:
        g = poly_gcd(g, p.diff(v))
        if g.is_constant():
            break
    if g.is_constant():
        return normalized(p)
    return normalized(exact_divide(p, g))


def is_squarefree(p: MultiPoly) -> bool:
    if p.is_zero():
        return False
    return squarefree_part(p) == normalized(p)
