"""Arithmetic in the rank-two Neron-Severi lattice of a Hilbert scheme of points.

A class ``x h + y delta`` is stored as ``DivisorClass(x, y)``.  The form is
``h^2 = 2t``, ``delta^2 = -2(n-1)``, ``h.delta = 0``.  The involution matrix is
reported in the basis ``{h, -delta}`` (columns are images of basis vectors) and
converted to ``(x, y)`` coordinates when applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exceptions import ParameterViolation, ZeroClass
from .pell import PellSolution, min_unit_with_congruence

__all__ = [
    "HilbParams",
    "DivisorClass",
    "ActionMatrix",
    "bbf_square",
    "bbf_pairing",
    "divisibility",
    "involution_matrix",
    "reflection_fix_axis",
]


@dataclass(frozen=True)
class HilbParams:
    """Hilbert scheme of ``n`` points on a K3 surface of degree ``2t``."""

    n: int
    t: int

    def __post_init__(self):
        if self.n < 2:
            raise ParameterViolation(f"n must be >= 2, got {self.n}")
        if self.t < 1:
            raise ParameterViolation(f"t must be >= 1, got {self.t}")

    @property
    def radicand(self) -> int:
        return self.t * (self.n - 1)


@dataclass(frozen=True, order=True)
class DivisorClass:
    x: int
    y: int

    def __iter__(self):
        yield self.x
        yield self.y

    def primitive(self) -> DivisorClass:
        """Primitive generator of the ray through the class, h-coefficient >= 0."""
        g = gcd(self.x, self.y)
        if g == 0:
            raise ZeroClass("the zero class has no primitive part")
        x, y = self.x // g, self.y // g
        if x < 0 or (x == 0 and y < 0):
            x, y = -x, -y
        return DivisorClass(x, y)

    def __str__(self) -> str:
        sign = "-" if self.y < 0 else "+"
        return f"{self.x}h {sign} {abs(self.y)}δ"


H = DivisorClass(1, 0)
DELTA = DivisorClass(0, 1)


@dataclass(frozen=True)
class ActionMatrix:
    """2x2 integer matrix in the basis ``{h, -delta}``."""

    a: int
    b: int
    c: int
    d: int

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: ActionMatrix) -> ActionMatrix:
        return ActionMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, cls: DivisorClass) -> DivisorClass:
        # (x, y) in {h, delta} is (x, -y) in {h, -delta}
        u, v = cls.x, -cls.y
        return DivisorClass(self.a * u + self.b * v, -(self.c * u + self.d * v))


def bbf_square(p: HilbParams, c: DivisorClass) -> int:
    return 2 * p.t * c.x * c.x - 2 * (p.n - 1) * c.y * c.y


def bbf_pairing(p: HilbParams, c1: DivisorClass, c2: DivisorClass) -> int:
    return 2 * p.t * c1.x * c2.x - 2 * (p.n - 1) * c1.y * c2.y


def divisibility(p: HilbParams, c: DivisorClass) -> int:
    """Divisibility of ``c`` in the full second cohomology lattice.

    ``h`` pairs to 1 with the unimodular K3 part, ``delta`` generates a
    ``<-2(n-1)>`` summand, so the answer is ``gcd(x, 2(n-1)|y|)``.
    """
    if c.x == 0 and c.y == 0:
        raise ZeroClass("divisibility of the zero class is undefined")
    return gcd(c.x, 2 * (p.n - 1) * abs(c.y))


def _unit(p: HilbParams, unit: PellSolution | None) -> PellSolution:
    return unit if unit is not None else min_unit_with_congruence(p.n, p.t)


def involution_matrix(p: HilbParams, unit: PellSolution | None = None) -> ActionMatrix:
    """The isometry exchanging ``h`` and ``z h - t w delta``."""
    z, w = _unit(p, unit)
    return ActionMatrix(z, -(p.n - 1) * w, p.t * w, -z)


def reflection_fix_axis(p: HilbParams, unit: PellSolution | None = None) -> DivisorClass:
    """Primitive class spanning the line fixed by :func:`involution_matrix`."""
    z, w = _unit(p, unit)
    return DivisorClass((p.n - 1) * w, -(z - 1)).primitive()
