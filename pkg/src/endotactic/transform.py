"""Operations on mass-action systems that act predictably on their fields,
and the base-unit to full-unit construction built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, as_fraction, poly_eval
from .geometry import convex_hull, is_strictly_interior
from .network import MassActionSystem, NetworkError, reaction_vector
from .realize import canonical_realization


class OrthantError(NetworkError):
    """A transformed complex would have a negative coordinate."""


class TransformError(ValueError):
    pass


class InvalidScalarPolynomial(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


def _rebuild(sys: MassActionSystem, reactions) -> MassActionSystem:
    return MassActionSystem.from_reactions(sys.species, reactions)


def translate(sys: MassActionSystem, v: Sequence[int]) -> MassActionSystem:
    """Shift every complex by ``v``; the field gets multiplied by ``x**v``."""
    v = tuple(int(c) for c in v)
    if len(v) != sys.network.n:
        raise TransformError("translation vector has the wrong dimension")
    if any(c < 0 for c in v):
        raise OrthantError(f"translation {v} has a negative entry")

    def sh(y):
        return tuple(a + b for a, b in zip(y, v))

    reactions = [(sh(a), sh(b), k) for a, b, k in sys.reactions()]
    return MassActionSystem.from_reactions(sys.species, reactions, [sh(y) for y in sys.network.vertices])


def scalar_multiply(sys: MassActionSystem, rho) -> MassActionSystem:
    """Scale the field by a nonzero rational.

    Negative factors flip every reaction through its source
    (``y -> 2y - y'``) and scale rates by ``|rho|``.
    """
    rho = as_fraction(rho)
    if rho == 0:
        raise TransformError("scale factor must be nonzero")
    if rho > 0:
        return MassActionSystem(sys.network, [rho * k for k in sys.rates])
    reactions = []
    for a, b, k in sys.reactions():
        t = tuple(2 * x - y for x, y in zip(a, b))
        if any(c < 0 for c in t):
            raise OrthantError(f"reflection of {a} -> {b} lands on {t}")
        reactions.append((a, t, -rho * k))
    return _rebuild(sys, reactions)


def add_systems(a: MassActionSystem, b: MassActionSystem) -> MassActionSystem:
    """Union of reactions; rates add on coincident edges."""
    if tuple(a.species) != tuple(b.species):
        raise TransformError(f"species mismatch: {a.species} vs {b.species}")
    extra = list(a.network.vertices) + list(b.network.vertices)
    return MassActionSystem.from_reactions(a.species, a.reactions() + b.reactions(), extra)


def simplify(sys: MassActionSystem) -> MassActionSystem:
    """Re-realize the collected field canonically.  Field preserved exactly."""
    return canonical_realization(sys.field(), sys.species)


def length_transform(sys: MassActionSystem, edge: int, lam) -> MassActionSystem:
    """Stretch reaction ``edge`` by ``lam`` and divide its rate by ``lam``."""
    lam = as_fraction(lam)
    if lam <= 0:
        raise TransformError("length factor must be positive")
    reactions = sys.reactions()
    a, b, k = reactions[edge]
    t = [Fraction(x) + lam * d for x, d in zip(a, reaction_vector(a, b))]
    if any(c.denominator != 1 for c in t):
        raise TransformError(f"stretched target {tuple(t)} is not a lattice point")
    t = tuple(int(c) for c in t)
    if any(c < 0 for c in t):
        raise OrthantError(f"stretched target {t} leaves the orthant")
    reactions[edge] = (a, t, k / lam)
    return _rebuild(sys, reactions)


def diagonal_decompose(sys: MassActionSystem, edge: int, d1, d2, w1, w2) -> MassActionSystem:
    """Replace ``y -> y'`` (rate k) by ``y -> y + d1`` and ``y -> y + d2``
    with ``w1 d1 + w2 d2 = k (y' - y)``."""
    w1, w2 = as_fraction(w1), as_fraction(w2)
    if w1 <= 0 or w2 <= 0:
        raise TransformError("decomposition weights must be positive")
    d1, d2 = tuple(int(c) for c in d1), tuple(int(c) for c in d2)
    if not any(d1) or not any(d2):
        raise TransformError("decomposition vectors must be nonzero")
    reactions = sys.reactions()
    a, b, k = reactions[edge]
    delta = reaction_vector(a, b)
    if any(w1 * p + w2 * q != k * r for p, q, r in zip(d1, d2, delta)):
        raise TransformError("w1*d1 + w2*d2 does not equal rate times reaction vector")
    t1 = tuple(x + d for x, d in zip(a, d1))
    t2 = tuple(x + d for x, d in zip(a, d2))
    for t in (t1, t2):
        if any(c < 0 for c in t):
            raise OrthantError(f"decomposed target {t} leaves the orthant")
    del reactions[edge]
    reactions += [(a, t1, w1), (a, t2, w2)]
    return _rebuild(sys, reactions)


# ---------------------------------------------------------------------------
# scalar polynomials and full units


@dataclass(frozen=True)
class ScalarPolynomial:
    """A multiplier with one negative term whose exponent is interior to the
    Newton polytope of the positive terms, and negative at the all-ones point."""

    poly: Polynomial

    def __post_init__(self):
        problems = scalar_polynomial_violations(self.poly)
        if problems:
            raise InvalidScalarPolynomial(problems)

    @property
    def negative_exponent(self):
        return next(e for e, c in self.poly.items() if c < 0)

    @property
    def value_at_ones(self) -> Fraction:
        return poly_eval(self.poly, [1] * self.poly.nvars)


def scalar_polynomial_violations(h: Polynomial) -> list[str]:
    problems = []
    neg = [e for e, c in h.items() if c < 0]
    pos = [e for e, c in h.items() if c > 0]
    if len(neg) != 1:
        problems.append(f"expected exactly one negative term, found {len(neg)}")
    if not pos:
        problems.append("no positive terms")
    elif len(neg) == 1:
        hull = convex_hull(pos)
        if not hull.is_full_dimensional:
            problems.append("positive exponents do not span a full-dimensional Newton polytope")
        elif not is_strictly_interior(hull, neg[0]):
            problems.append(f"negative exponent {neg[0]} is not strictly inside the positive Newton polytope")
    if poly_eval(h, [1] * h.nvars) >= 0:
        problems.append("value at the all-ones point is not negative")
    return problems


def construct_full_unit(base: MassActionSystem, h: ScalarPolynomial | Polynomial, validate: bool = True) -> MassActionSystem:
    """Combine translated and rescaled copies of ``base``, one per term of h, then simplify.

    Each copy is translated before it is rescaled, so a negative term's
    reflection happens at the shifted position.  The result's field is
    ``h * field(base)`` exactly.
    """
    if isinstance(h, ScalarPolynomial):
        poly = h.poly
    else:
        poly = ScalarPolynomial(h).poly if validate else h
    if poly.nvars != base.network.n:
        raise TransformError("scalar polynomial and base unit have different dimensions")
    total = None
    for e, c in poly.items():
        part = scalar_multiply(translate(base, e), c)
        total = part if total is None else add_systems(total, part)
    if total is None:
        raise TransformError("scalar polynomial is zero")
    return simplify(total)
