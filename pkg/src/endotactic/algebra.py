"""Exact sparse multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero
``Fraction`` coefficients.  Terms are kept in graded lexicographic order
(highest total degree first) so that printing and serialization are
deterministic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Operands live in different numbers of variables."""


class PolynomialParseError(ValueError):
    pass


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: coefficients must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def grlex_key(exp: Exponent):
    return (-sum(exp), tuple(-e for e in exp))


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """A polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Exponent, Fraction] = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            if nvars is None:
                nvars = len(exp)
            elif len(exp) != nvars:
                raise DimensionError(f"exponent {exp} has dimension {len(exp)}, expected {nvars}")
            collected[exp] = collected.get(exp, Fraction(0)) + as_fraction(coeff)
        if nvars is None:
            raise ValueError("nvars is required for an empty polynomial")
        self.nvars = nvars
        self._terms = {e: collected[e] for e in sorted(collected, key=grlex_key) if collected[e] != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls({}, nvars)

    @classmethod
    def constant(cls, c: Scalar, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return cls({tuple(exp): coeff}, len(exp))

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls.monomial(exp)

    # queries

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DimensionError(f"dimension mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(as_fraction(other), self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial({e: c * v for e, v in self._terms.items()}, self.nvars)
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = add_exponents(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Sequence[int]) -> "Polynomial":
        """Multiply by the monomial ``x**exp``."""
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise DimensionError("shift vector has the wrong dimension")
        return Polynomial({add_exponents(e, exp): c for e, c in self._terms.items()}, self.nvars)

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Polynomial(out, self.nvars)

    def __call__(self, point):
        return poly_eval(self, point)

    # equality is structural because the representation is canonical

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, nvars={self.nvars})"

    def __str__(self):
        return format_polynomial(self)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


def poly_equal(a: Polynomial, b: Polynomial) -> bool:
    a._check(b)
    return a == b


def poly_eval(p: Polynomial, point):
    """Evaluate ``p`` at ``point``.

    Exact when every coordinate is an int or Fraction, IEEE double otherwise.
    """
    point = list(point)
    if len(point) != p.nvars:
        raise DimensionError(f"point has dimension {len(point)}, polynomial has {p.nvars}")
    exact = all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in point)
    if exact:
        point = [Fraction(v) for v in point]
        total = Fraction(0)
    else:
        point = [float(v) for v in point]
        total = 0.0
    for exp, c in p.items():
        term = c if exact else float(c)
        for v, e in zip(point, exp):
            if e:
                term *= v**e
        total += term
    return total


class PolyVector:
    """One polynomial per species: the right-hand side of a polynomial ODE."""

    __slots__ = ("components", "nvars")

    def __init__(self, components: Sequence[Polynomial]):
        components = tuple(components)
        if not components:
            raise ValueError("a PolyVector needs at least one component")
        nvars = components[0].nvars
        for p in components:
            if p.nvars != nvars:
                raise DimensionError("components must share one dimension")
        self.components = components
        self.nvars = nvars

    @classmethod
    def zero(cls, n: int) -> "PolyVector":
        return cls([Polynomial.zero(n)] * n)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other: "PolyVector") -> "PolyVector":
        if len(self) != len(other):
            raise DimensionError("PolyVector length mismatch")
        return PolyVector([a + b for a, b in zip(self, other)])

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def __neg__(self):
        return PolyVector([-p for p in self])

    def scale(self, factor) -> "PolyVector":
        """Multiply every component by a rational or a Polynomial."""
        return PolyVector([factor * p for p in self])

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def shift(self, exp) -> "PolyVector":
        return PolyVector([p.shift(exp) for p in self])

    def support(self) -> list[Exponent]:
        """Exponents appearing in any component, in grlex order."""
        seen = set()
        for p in self:
            seen.update(p.support())
        return sorted(seen, key=grlex_key)

    def coefficient_vector(self, exp) -> tuple[Fraction, ...]:
        return tuple(p.coefficient(exp) for p in self)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self)

    def __call__(self, point):
        return [poly_eval(p, point) for p in self]

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"PolyVector({[str(p) for p in self]!r})"


# ---------------------------------------------------------------------------
# text format


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Render as ``c*x^a*y^b + ...`` in canonical term order; zero is ``"0"``."""
    names = list(names) if names is not None else default_names(p.nvars)
    if p.is_zero():
        return "0"
    pieces = []
    for exp, c in p.items():
        factors = []
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(mag)] + factors)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|\^|\*|\+|-))")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse a sum of products of rationals and ``name^k`` factors.

    Accepts ``^`` or ``**`` for powers and an optional ``*`` between factors.
    Parentheses are not supported.
    """
    names = list(names)
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    tokens = []
    pos = 0
    text = text.strip()
    if not text:
        raise PolynomialParseError("empty polynomial")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialParseError(f"unexpected character at column {pos + 1}: {text[pos:pos + 8]!r}")
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", num, pos))
        elif ident is not None:
            tokens.append(("name", ident, pos))
        elif op is not None:
            tokens.append(("op", "^" if op == "**" else op, pos))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    terms: dict[Exponent, Fraction] = {}
    i = 0

    def expect_int(j):
        if j >= len(tokens) or tokens[j][0] != "num" or "/" in tokens[j][1]:
            col = tokens[j][2] + 1 if j < len(tokens) else len(text)
            raise PolynomialParseError(f"expected an integer exponent at column {col}")
        return int(tokens[j][1])

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exp = [0] * n
        nfactors = 0
        while i < len(tokens):
            kind, val, col = tokens[i]
            if kind == "op" and val == "*":
                if nfactors == 0:
                    raise PolynomialParseError(f"dangling '*' at column {col + 1}")
                i += 1
                continue
            if kind == "op":
                break
            if kind == "num":
                k = 1
                i += 1
                if i < len(tokens) and tokens[i][:2] == ("op", "^"):
                    k = expect_int(i + 1)
                    i += 2
                coeff *= Fraction(val) ** k
            else:
                if val not in index:
                    raise PolynomialParseError(f"unknown species {val!r} at column {col + 1}")
                k = 1
                i += 1
                if i < len(tokens) and tokens[i][:2] == ("op", "^"):
                    k = expect_int(i + 1)
                    i += 2
                exp[index[val]] += k
            nfactors += 1
        if nfactors == 0:
            col = tokens[i][2] + 1 if i < len(tokens) else len(text)
            raise PolynomialParseError(f"missing term at column {col}")
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Polynomial(terms, n)
