"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent vectors (one nonnegative integer per
declared variable) to nonzero ``Fraction`` coefficients:

    x*z^2 + x^2  over (x, z)  ->  {(1, 2): 1, (2, 0): 1}

The representation is canonical: zero coefficients are never stored, so
two polynomials are equal iff their variable tuples and term dicts are
equal.  Values are immutable after construction and every operation is a
pure function, safe to use from several threads.

Term order, used only for normalization and printing, is graded
lexicographic in the declared variable order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ExpressionError, VariableMismatchError

Scalar = Union[int, Fraction]
Exponents = tuple[int, ...]

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _check_variables(variables: Iterable[str]) -> tuple[str, ...]:
    vs = tuple(variables)
    if not vs:
        raise VariableMismatchError("at least one variable is required")
    if len(set(vs)) != len(vs):
        raise VariableMismatchError(f"duplicate variable in {vs}")
    for v in vs:
        if not _IDENT_RE.match(v):
            raise VariableMismatchError(f"invalid variable name {v!r}")
    return vs


class MultiPoly:
    """An exact sparse polynomial over Q in a fixed ordered variable list."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, Scalar]):
        vs = _check_variables(variables)
        n = len(vs)
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in terms.items():
            e = tuple(exps)
            if len(e) != n or any(k < 0 or not isinstance(k, int) for k in e):
                raise VariableMismatchError(f"bad exponent vector {e} for {vs}")
            c = Fraction(coeff)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MultiPoly is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, variables: Iterable[str]) -> MultiPoly:
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Iterable[str], value: Scalar) -> MultiPoly:
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): Fraction(value)})

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> MultiPoly:
        vs = tuple(variables)
        if name not in vs:
            raise VariableMismatchError(f"unknown variable {name!r} in {vs}")
        exps = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {exps: Fraction(1)})

    # ------------------------------------------------------------------
    # predicates and coefficient access

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self._index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise VariableMismatchError(
                f"unknown variable {var!r}; declared: {', '.join(self.variables)}"
            ) from None

    def grlex_key(self, exps: Exponents) -> tuple:
        return (sum(exps), exps)

    def leading_term(self) -> tuple[Exponents, Fraction]:
        """Largest term under graded lexicographic order. Errors on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=self.grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: self.grlex_key(t[0]), reverse=True)

    # ------------------------------------------------------------------
    # ring operations

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise VariableMismatchError(
                    f"variable lists differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.variables, other)
        return None

    def __add__(self, other) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return self._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.variables)
            return self._raw({e: k * c for e, k in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return self._raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise VariableMismatchError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _raw(self, terms: dict[Exponents, Fraction]) -> MultiPoly:
        """Internal fast constructor: terms are already clean."""
        p = object.__new__(MultiPoly)
        object.__setattr__(p, "variables", self.variables)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # ------------------------------------------------------------------
    # calculus and specialization

    def diff(self, var: str) -> MultiPoly:
        """Formal partial derivative with respect to one declared variable."""
        i = self._index(var)
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
        return self._raw(out)

    def substitute(self, bindings: Mapping[str, MultiPoly | Scalar]) -> MultiPoly:
        """Exact composite after replacing bound variables.

        Unbound variables are retained; the result's variable list is the
        retained variables followed by any new variables introduced by the
        substituted expressions, in order of first appearance.
        """
        for name in bindings:
            if name not in self.variables:
                raise VariableMismatchError(
                    f"cannot bind unknown variable {name!r}; declared: {self.variables}"
                )
        values: dict[str, MultiPoly | Fraction] = {}
        used_in_values: list[str] = []
        for name in self.variables:
            if name not in bindings:
                continue
            val = bindings[name]
            if isinstance(val, MultiPoly):
                used = _used_variables(val)
                for v in val.variables:
                    if v in used and v not in used_in_values:
                        used_in_values.append(v)
                values[name] = val
            else:
                values[name] = Fraction(val)
        # original variables keep their order; genuinely new ones follow
        result_vars = [v for v in self.variables
                       if v not in bindings or v in used_in_values]
        result_vars.extend(v for v in used_in_values if v not in self.variables)
        if not result_vars:
            # fully specialized to a constant: keep the original ring
            result_vars = list(self.variables)
        rv = tuple(result_vars)
        embedded: dict[str, MultiPoly] = {}
        for name, val in values.items():
            if isinstance(val, MultiPoly):
                embedded[name] = val.with_variables(rv)
            else:
                embedded[name] = MultiPoly.constant(rv, val)
        acc = MultiPoly.zero(rv)
        retained_pos = {v: rv.index(v) for v in self.variables if v in rv}
        for e, c in self.terms.items():
            term_exps = [0] * len(rv)
            factor = MultiPoly.constant(rv, c)
            for i, v in enumerate(self.variables):
                if e[i] == 0:
                    continue
                if v in bindings:
                    factor = factor * embedded[v] ** e[i]
                else:
                    term_exps[retained_pos[v]] = e[i]
            acc = acc + factor * MultiPoly(rv, {tuple(term_exps): 1})
        return acc

    def with_variables(self, variables: Iterable[str]) -> MultiPoly:
        """Re-embed into a ring whose variable set contains every variable
        this polynomial actually uses."""
        vs = tuple(variables)
        pos = {}
        used = _used_variables(self)
        for v in self.variables:
            if v in used and v not in vs:
                raise VariableMismatchError(f"target variables {vs} do not contain {v!r}")
            if v in vs:
                pos[v] = vs.index(v)
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            exps = [0] * len(vs)
            for i, v in enumerate(self.variables):
                if e[i]:
                    exps[pos[v]] = e[i]
            out[tuple(exps)] = c
        return MultiPoly(vs, out)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a rational point binding every variable."""
        vals = []
        for v in self.variables:
            if v not in point:
                raise VariableMismatchError(f"no value supplied for {v!r}")
            vals.append(Fraction(point[v]))
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for val, k in zip(vals, e):
                if k:
                    term *= val**k
            total += term
        return total

    def coefficients_in(self, var: str) -> list[MultiPoly]:
        """Dense coefficient list [c0, c1, ...] viewing self in one variable.

        Coefficients keep the full variable list (with zero exponent in
        ``var``).  Empty list for the zero polynomial.
        """
        i = self._index(var)
        d = self.degree_in(var)
        if d < 0:
            return []
        buckets: list[dict[Exponents, Fraction]] = [{} for _ in range(d + 1)]
        for e, c in self.terms.items():
            r = list(e)
            k = r[i]
            r[i] = 0
            buckets[k][tuple(r)] = c
        return [self._raw(b) for b in buckets]

    @classmethod
    def from_coefficients(cls, variables: Iterable[str], var: str,
                          coeffs: Iterable[MultiPoly]) -> MultiPoly:
        vs = tuple(variables)
        i = vs.index(var)
        out: dict[Exponents, Fraction] = {}
        for k, c in enumerate(coeffs):
            for e, val in c.with_variables(vs).terms.items():
                r = list(e)
                r[i] += k
                out[tuple(r)] = out.get(tuple(r), Fraction(0)) + val
        return cls(vs, out)

    # ------------------------------------------------------------------
    # comparison, hashing, printing

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.variables, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.variables, e)
                if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables}, {str(self)!r})"


def _used_variables(p: MultiPoly) -> set[str]:
    used: set[str] = set()
    for e in p.terms:
        for v, k in zip(p.variables, e):
            if k:
                used.add(v)
    return used


def translate(p: MultiPoly, point: Iterable[Scalar]) -> MultiPoly:
    """Move the study point to the origin: p(v1 + a1, v2 + a2, ...)."""
    pt = [Fraction(a) for a in point]
    if len(pt) != len(p.variables):
        raise VariableMismatchError("point arity does not match variable list")
    bindings = {}
    for v, a in zip(p.variables, pt):
        if a:
            bindings[v] = MultiPoly.variable(p.variables, v) + a
    if not bindings:
        return p
    return p.substitute(bindings).with_variables(p.variables)


# ----------------------------------------------------------------------
# expression parsing
#
# expr   := '-'? term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' nonneg-integer)?
# base   := identifier | rational-literal | '(' expr ')'
# rational-literal := integer ('/' positive-integer)?
#
# Whitespace is insignificant.  Implicit multiplication is rejected.

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()/])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ExpressionError(f"expected {op!r}, found {val or 'end of input'!r}", pos)
        self.take()

    def expr(self) -> MultiPoly:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.peek()
            if kind != "int":
                raise ExpressionError("exponent must be a nonnegative integer", pos)
            self.take()
            base = base ** int(val)
        return base

    def base(self) -> MultiPoly:
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.take()
                kind3, val3, pos3 = self.peek()
                if kind3 != "int":
                    raise ExpressionError("denominator must be a positive integer", pos3)
                self.take()
                den = int(val3)
                if den == 0:
                    raise ExpressionError("denominator must be a positive integer", pos3)
                return MultiPoly.constant(self.variables, Fraction(num, den))
            return MultiPoly.constant(self.variables, num)
        if kind == "ident":
            if val not in self.variables:
                raise ExpressionError(
                    f"unknown identifier {val!r}; declared variables: "
                    f"{', '.join(self.variables)}", pos
                )
            return MultiPoly.variable(self.variables, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExpressionError(f"unexpected {val or 'end of input'!r}", pos)


def parse_expression(text: str, variables: Iterable[str]) -> MultiPoly:
    """Parse an expression over the declared ordered variable list."""
    vs = _check_variables(variables)
    parser = _Parser(text, vs)
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ExpressionError(f"unexpected {val!r} after complete expression", pos)
    return result


def parse_prefix(text: str, variables: Iterable[str]) -> tuple[MultiPoly, int]:
    """Parse a leading expression and return it with the index of the first
    unconsumed character (used by the atlas reader for rational maps)."""
    vs = _check_variables(variables)
    parser = _Parser(text, vs)
    result = parser.expr()
    _, _, pos = parser.peek()
    return result, pos
