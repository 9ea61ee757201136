"""The worked examples as data: base fields, scalar polynomials, reference points.

Only fields are stored; networks are derived by canonical realization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial, PolyVector, parse_polynomial
from .network import MassActionSystem
from .realize import canonical_realization


@dataclass(frozen=True)
class ExampleBundle:
    name: str
    species: tuple[str, ...]
    base_field: PolyVector
    scalar: Polynomial
    fixed_points: tuple[tuple[float, ...], ...]  # as printed
    box: tuple[tuple[float, float], ...]
    description: str = ""

    @property
    def full_field(self) -> PolyVector:
        return self.base_field.scale(self.scalar)

    def base_system(self) -> MassActionSystem:
        return canonical_realization(self.base_field, self.species)

    def full_system(self) -> MassActionSystem:
        return canonical_realization(self.full_field, self.species)


def _field(exprs, names):
    return PolyVector([parse_polynomial(e, names) for e in exprs])


_XY = ("x", "y")
_XYZ = ("x", "y", "z")

H2D = "x^2 + x*y^2 + y - 4*x*y"
H3 = "1 + x^3 + x^2*y^2 - 4*x^2*y"
H3D = "1 + x*y + y*z + x*z + x^2*y*z + x*y^2*z + x*y*z^2 + x^2*y^2*z^2 - 15*x*y*z"

EXAMPLES: dict[str, ExampleBundle] = {
    "ex1": ExampleBundle(
        "ex1",
        _XY,
        _field(["1 - x + y^2 - x*y^2", "y - 2*y^2 - 2*x*y^2"], _XY),
        parse_polynomial(H2D, _XY),
        ((1.0, 0.25),),
        ((0.1, 3.0), (0.1, 3.0)),
        "endotactic full unit, deficiency-two base",
    ),
    "ex2": ExampleBundle(
        "ex2",
        _XY,
        _field(["1 - x + y + y^2", "y - x*y^2"], _XY),
        parse_polynomial(H2D, _XY),
        ((1.839, 0.544),),
        ((0.1, 3.0), (0.1, 3.0)),
        "endotactic full unit sharing the scalar polynomial of ex1",
    ),
    "ex3": ExampleBundle(
        "ex3",
        _XY,
        _field(["2*y^2 - 2*x^2 - x*y", "2 - 2*x^2*y^2 - x*y"], _XY),
        parse_polynomial(H3, _XY),
        ((0.781, 1.0),),
        ((0.1, 3.0), (0.1, 3.0)),
        "strongly endotactic full unit",
    ),
    "ex3d": ExampleBundle(
        "ex3d",
        _XYZ,
        _field(
            [
                "1 - x + y + y^2 + z - z*x + z*y + z*y^2",
                "y - x*y^2 + z*y - z*x*y^2",
                "y - x*y^2*z",
            ],
            _XYZ,
        ),
        parse_polynomial(H3D, _XYZ),
        ((1.83, 0.54, 1.0),),
        ((0.1, 3.0), (0.1, 3.0), (0.1, 3.0)),
        "three-species endotactic full unit",
    ),
}


def get_example(name: str) -> ExampleBundle:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None


def ex2_fixed_point() -> tuple[float, float]:
    """Positive root of y^3 + y^2 + y - 1 with x = 1/y."""
    import numpy as np

    roots = np.roots([1, 1, 1, -1])
    y = float(next(r.real for r in roots if abs(r.imag) < 1e-12 and r.real > 0))
    return (1 / y, y)


def ex3_fixed_point() -> tuple[float, float]:
    return ((-1 + 17**0.5) / 4, 1.0)


def boundary_line_point(z) -> tuple[Fraction, Fraction, Fraction]:
    """Point (1, 0, z) on the steady line of the three-species base unit."""
    return (Fraction(1), Fraction(0), Fraction(z))
