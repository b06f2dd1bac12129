"""Dense univariate polynomials over Q and rational root extraction.

Used for the eliminants produced by resultant elimination: candidate
special values and candidate critical coordinates are rational roots of
some univariate polynomial.  Roots are found exactly via integer content
removal and divisor enumeration of the trailing/leading coefficients,
with deflation; irrational roots are never returned but survive in the
reported square-free quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable

from .errors import InputError, VariableMismatchError
from .multipoly import MultiPoly


class UniPoly:
    """Coefficients stored densely, lowest degree first, trailing zeros
    stripped; the zero polynomial is the empty list."""

    __slots__ = ("variable", "coefficients")

    def __init__(self, variable: str, coefficients: Iterable[Fraction | int]):
        cs = [Fraction(c) for c in coefficients]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "coefficients", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def from_multipoly(cls, p: MultiPoly, var: str | None = None) -> UniPoly:
        """View a polynomial that involves at most one variable as univariate."""
        used = [v for i, v in enumerate(p.variables)
                if any(e[i] for e in p.terms)]
        if var is None:
            if len(used) > 1:
                raise VariableMismatchError(f"{p} is not univariate (uses {used})")
            var = used[0] if used else p.variables[0]
        elif any(u != var for u in used):
            raise VariableMismatchError(f"{p} involves {used}, not only {var!r}")
        i = p.variables.index(var)
        deg = p.degree_in(var)
        cs = [Fraction(0)] * (deg + 1 if deg >= 0 else 0)
        for e, c in p.terms.items():
            cs[e[i]] = c
        return cls(var, cs)

    def is_zero(self) -> bool:
        return not self.coefficients

    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly(self.variable,
                       [k * c for k, c in enumerate(self.coefficients)][1:])

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        lead = self.coefficients[-1]
        return UniPoly(self.variable, [c / lead for c in self.coefficients])

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return (self.variable == other.variable
                and self.coefficients == other.coefficients)

    def __hash__(self) -> int:
        return hash((self.variable, self.coefficients))

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coefficients)
        quo = [Fraction(0)] * max(len(rem) - len(other.coefficients) + 1, 0)
        d = other.degree()
        lead = other.coefficients[-1]
        while len(rem) - 1 >= d and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < d:
                break
            shift = len(rem) - 1 - d
            factor = rem[-1] / lead
            quo[shift] = factor
            for k, c in enumerate(other.coefficients):
                rem[shift + k] -= factor * c
            rem.pop()
        return UniPoly(self.variable, quo), UniPoly(self.variable, rem)

    def gcd(self, other: UniPoly) -> UniPoly:
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        return a.monic() if not a.is_zero() else a

    def squarefree(self) -> UniPoly:
        """Quotient by gcd with the derivative; monic."""
        if self.is_zero():
            raise InputError("square-free part of the zero polynomial")
        g = self.gcd(self.derivative())
        if g.degree() <= 0:
            return self.monic()
        q, r = self.divmod(g)
        assert r.is_zero()
        return q.monic()

    def integer_primitive(self) -> list[int]:
        """Scaled coefficient list: integers with gcd 1, same roots."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coefficients:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coefficients]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        return [v // g for v in ints]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for k in range(self.degree(), -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mono = self.variable if k == 1 else f"{self.variable}^{k}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"UniPoly({self.variable!r}, {str(self)!r})"


def _positive_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d <= isqrt(n):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class RationalRoots:
    """Exact rational roots, plus the square-free quotient left after
    dividing out every rational linear factor (degree 0 when none remain)."""

    roots: frozenset[Fraction]
    quotient: UniPoly


def rational_roots(u: UniPoly) -> RationalRoots:
    """All rational roots of a nonzero univariate polynomial."""
    if u.is_zero():
        raise InputError("rational_roots of the zero polynomial")
    work = u.squarefree()
    roots: set[Fraction] = set()
    # factor out the root at zero
    if work.coefficients and not work.coefficients[0]:
        roots.add(Fraction(0))
        cs = list(work.coefficients)
        while cs and not cs[0]:
            cs.pop(0)
        work = UniPoly(u.variable, cs)
    if work.degree() >= 1:
        ints = work.integer_primitive()
        lead, trail = ints[-1], ints[0]
        for p in _positive_divisors(trail):
            for q in _positive_divisors(lead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand in roots:
                        continue
                    if work(cand) == 0:
                        roots.add(cand)
        for r in sorted(roots - {Fraction(0)}):
            lin = UniPoly(u.variable, [-r, 1])
            q_, rem = work.divmod(lin)
            assert rem.is_zero()
            work = q_
    return RationalRoots(frozenset(roots), work.monic())
