"""Movable cone, interior walls, chamber counts and n-irregularity.

Walls inside the movable cone are the rays through ``X h - 2tY delta`` for
positive solutions of ``X^2 - 4t(n-1) Y^2 = alpha^2 - 4 rho (n-1)`` with
``X = +-alpha (mod 2(n-1))``, where ``(rho, alpha)`` runs over
:func:`wall_family`.  A wall ``(X, Y)`` lies inside the cone exactly when
``0 < Y/X < w/(2z)``, with ``(z, w)`` the unit returned by
:func:`~hilbbir.pell.min_unit_with_congruence`.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple

from .exceptions import InvariantViolation, NotApplicable, ParameterViolation
from .nslattice import DivisorClass, HilbParams
from .pell import (
    PellEquation,
    PellSolution,
    fundamental_solutions,
    fundamental_unit,
    is_square,
    min_unit_with_congruence,
    positive_solutions_below,
    solve_skew,
)

log = logging.getLogger(__name__)

__all__ = [
    "WallParams",
    "Wall",
    "ChamberDecomposition",
    "IrregularityCertificate",
    "IrregularValue",
    "wall_family",
    "movable_cone",
    "decompose",
    "is_n_irregular",
    "scan_irregular",
    "n3_class_counts",
    "N3_ALLOWED_COUNTS",
]


@dataclass(frozen=True, order=True)
class WallParams:
    rho: int
    alpha: int
    n: int = field(compare=False)

    @property
    def rhs(self) -> int:
        return self.alpha * self.alpha - 4 * self.rho * (self.n - 1)

    @property
    def active(self) -> bool:
        # rhs <= 0 never meets the interior of the movable cone
        return self.rhs > 0


def wall_family(n: int) -> list[WallParams]:
    if n < 2:
        raise ParameterViolation(f"n must be >= 2, got {n}")
    out = [WallParams(-1, a, n) for a in range(1, n)]
    out += [WallParams(0, a, n) for a in range(3, n)]
    rho = 1
    while 4 * rho < n - 1:
        out += [WallParams(rho, a, n) for a in range(4 * rho + 1, n)]
        rho += 1
    return out


@dataclass(frozen=True)
class Wall:
    ray: DivisorClass
    source: WallParams
    witness: PellSolution

    @property
    def slope(self) -> Fraction:
        """``Y/X`` of the witness, the coordinate in which the cone is ``[0, w/(2z)]``."""
        return Fraction(self.witness.y, self.witness.x)


@dataclass(frozen=True)
class ChamberDecomposition:
    params: HilbParams
    extremal_low: DivisorClass
    extremal_high: DivisorClass
    walls: tuple[Wall, ...]
    upper_slope: Fraction
    boundary: str = "hilbert-chow"

    @property
    def chamber_count(self) -> int:
        return len(self.walls) + 1


def _slope_of(c: DivisorClass, t: int) -> Fraction:
    # ray x h + y delta corresponds to Y/X = -y / (2 t x)
    return Fraction(-c.y, 2 * t * c.x)


def _skew_plus_obstruction(p: HilbParams) -> PellSolution | None:
    if p.n == 2:
        return None
    return solve_skew(p.n - 1, p.t, 1)


def movable_cone(p: HilbParams) -> tuple[DivisorClass, DivisorClass]:
    """Extremal rays ``(h, primitive(z h - t w delta))`` of the closed movable cone."""
    if is_square(p.radicand):
        raise NotApplicable(f"t(n-1) = {p.radicand} is a perfect square")
    if _skew_plus_obstruction(p) is not None:
        raise NotApplicable(f"{p.n - 1}X^2 - {p.t}Y^2 = 1 has integer solutions")
    z, w = min_unit_with_congruence(p.n, p.t)
    return DivisorClass(1, 0), DivisorClass(z, -p.t * w).primitive()


def _walls(p: HilbParams, upper: Fraction) -> tuple[Wall, ...]:
    n, t = p.n, p.t
    big_r = 4 * t * (n - 1)
    mod = 2 * (n - 1)
    by_ray: dict[DivisorClass, Wall] = {}
    for wp in wall_family(n):
        if not wp.active:
            continue
        for sol in positive_solutions_below(PellEquation(big_r, wp.rhs), upper):
            if (sol.x - wp.alpha) % mod and (sol.x + wp.alpha) % mod:
                continue
            ray = DivisorClass(sol.x, -2 * t * sol.y).primitive()
            if ray in by_ray:
                log.info("wall %s of (n,t)=(%d,%d) arises from %s and %s", ray, n, t, by_ray[ray].source, wp)
                continue
            by_ray[ray] = Wall(ray, wp, sol)
    return tuple(sorted(by_ray.values(), key=lambda w: w.slope))


def decompose(p: HilbParams, *, divisorial_boundary: bool = False) -> ChamberDecomposition:
    """Wall-and-chamber decomposition of the movable cone.

    With ``divisorial_boundary=True`` the case where ``(n-1)X^2 - tY^2 = 1`` is
    solvable is also handled: the upper boundary is then the ray
    ``(n-1) x1 h - t y1 delta`` for the smallest solution ``(x1, y1)``.
    """
    if is_square(p.radicand):
        raise NotApplicable(f"t(n-1) = {p.radicand} is a perfect square")
    obstruction = _skew_plus_obstruction(p)
    if obstruction is None:
        low, high = movable_cone(p)
        z, w = min_unit_with_congruence(p.n, p.t)
        upper = Fraction(w, 2 * z)
        kind = "hilbert-chow"
    elif divisorial_boundary:
        x1, y1 = obstruction
        low = DivisorClass(1, 0)
        high = DivisorClass((p.n - 1) * x1, -p.t * y1).primitive()
        upper = Fraction(y1, 2 * (p.n - 1) * x1)
        kind = "divisorial"
    else:
        raise NotApplicable(f"{p.n - 1}X^2 - {p.t}Y^2 = 1 has integer solutions")
    if _slope_of(high, p.t) != upper:
        raise InvariantViolation(f"upper ray {high} does not have slope {upper}")
    return ChamberDecomposition(p, low, high, _walls(p, upper), upper, kind)


# -- irregularity ------------------------------------------------------------


@dataclass(frozen=True)
class IrregularityCertificate:
    """Outcome of :func:`is_n_irregular` with the evidence from each path.

    ``parity`` is the chamber-parity answer, ``shortcut`` the answer forced
    for ``t = 1`` or symplectic involutions together with an explicit wall
    through the fixed axis, and ``witness`` the ``(ell, a, alpha, rho, X, Y)``
    tuple satisfying ``4 t ell Y^2 = (alpha^2 - 4 rho (n-1)) a^2``.
    """

    irregular: bool
    has_nonnatural: bool
    chamber_count: int | None = None
    parity: bool | None = None
    shortcut: bool | None = None
    shortcut_wall: tuple[int, int, int, int] | None = None
    witness: tuple[int, int, int, int, int, int] | None = None
    witness_path: bool | None = None

    def __bool__(self) -> bool:
        return self.irregular


def _witness_search(p: HilbParams, ell: int, a: int) -> tuple[int, int, int, int, int, int] | None:
    n, t = p.n, p.t
    mod = 2 * (n - 1)
    for wp in wall_family(n):
        c = wp.rhs
        if c <= 0:
            continue
        num = c * a * a
        if num % (4 * t * ell):
            continue
        y2 = num // (4 * t * ell)
        y = isqrt(y2)
        if y * y != y2 or y == 0:
            continue
        x2 = c + 4 * t * (n - 1) * y2
        x = isqrt(x2)
        if x * x != x2:
            continue
        if (x - wp.alpha) % mod and (x + wp.alpha) % mod:
            continue
        return (ell, a, wp.alpha, wp.rho, x, y)
    return None


def _shortcut_wall(p: HilbParams) -> tuple[int, int, int, int]:
    """An interior wall ``(alpha, rho, X, Y)`` through the fixed axis when the
    involution acts trivially on the transcendental lattice (or t = 1)."""
    n, t = p.n, p.t
    b, a = fundamental_unit(p.radicand)
    c = max(gcd(n - 1, b - 1), gcd(n - 1, b + 1))
    alpha = max(4, 2 * (n - 1) // c)
    x, y = b * alpha, a * alpha // 2
    mod = 2 * (n - 1)
    ok = (
        alpha % 2 == 0
        and 4 <= alpha <= n - 1
        and x * x - 4 * t * (n - 1) * y * y == alpha * alpha
        and ((x - alpha) % mod == 0 or (x + alpha) % mod == 0)
    )
    if not ok:
        raise InvariantViolation(f"no axis wall for (n,t)=({n},{t}) with alpha={alpha}")
    return (alpha, 0, x, y)


def is_n_irregular(p: HilbParams) -> IrregularityCertificate:
    """Whether some non-natural birational involution is biregular on no model.

    Every applicable path is evaluated and they must agree.
    """
    from .classify import nonnatural_generators

    gens = nonnatural_generators(p)
    if not gens:
        return IrregularityCertificate(False, False)
    dec = decompose(p)
    parity = dec.chamber_count % 2 == 0
    shortcut = None
    shortcut_wall = None
    if p.t == 1 or any(g.symplectic for g in gens):
        shortcut = True
        shortcut_wall = _shortcut_wall(p)
        if not any(_slope_of(w.ray, p.t) == Fraction(shortcut_wall[3], shortcut_wall[2]) for w in dec.walls):
            raise InvariantViolation(f"axis wall {shortcut_wall} missing from decomposition of {p}")
    witness = None
    witness_path = None
    if p.t >= 2 and not gens[0].symplectic:
        g = gens[0]
        witness = _witness_search(p, g.ell, g.a)
        witness_path = witness is not None
    answers = {v for v in (parity, shortcut, witness_path) if v is not None}
    if len(answers) != 1:
        raise InvariantViolation(
            f"irregularity paths disagree for (n,t)=({p.n},{p.t}): "
            f"parity={parity} shortcut={shortcut} witness={witness_path}"
        )
    return IrregularityCertificate(
        irregular=parity,
        has_nonnatural=True,
        chamber_count=dec.chamber_count,
        parity=parity,
        shortcut=shortcut,
        shortcut_wall=shortcut_wall,
        witness=witness,
        witness_path=witness_path,
    )


class IrregularValue(NamedTuple):
    t: int
    ell: int


def _candidate_ts(n: int) -> list[int]:
    bound = (n - 1) * (n + 3)
    cands = {1}
    for wp in wall_family(n):
        c = wp.rhs
        if c <= 0:
            continue
        for ell in {1, n - 1}:
            if c % ell:
                continue
            q = c // ell
            for r in range(1, isqrt(q) + 1):
                if q % (r * r) == 0 and 2 <= q // (r * r) <= bound:
                    cands.add(q // (r * r))
    return sorted(cands)


def _irregular_cell(args: tuple[int, int, bool]) -> list[IrregularValue]:
    n, t, nonsymplectic_only = args
    from .classify import nonnatural_generators

    p = HilbParams(n, t)
    gens = nonnatural_generators(p)
    if not gens:
        return []
    if nonsymplectic_only:
        gens = tuple(g for g in gens if not g.symplectic)
        if not gens:
            return []
    if not is_n_irregular(p):
        return []
    return [IrregularValue(t, min(g.ell for g in gens))]


def scan_irregular(
    n: int,
    mode: str = "nonsymplectic_finite",
    t_max: int | None = None,
    jobs: int = 1,
) -> list[IrregularValue]:
    """n-irregular values of t.

    ``nonsymplectic_finite`` lists the finitely many t whose irregular
    involution is non-symplectic, from the divisor candidates of each
    ``alpha^2 - 4 rho (n-1)``.  ``full_range`` checks every ``t <= t_max``
    (default ``10 (n-1)(n+3)``) and also reports symplectic ones, with
    ``ell = t`` for those.
    """
    if n < 2:
        raise ParameterViolation(f"n must be >= 2, got {n}")
    if mode == "nonsymplectic_finite":
        cells = [(n, t, True) for t in _candidate_ts(n)]
    elif mode == "full_range":
        t_max = t_max if t_max is not None else 10 * (n - 1) * (n + 3)
        cells = [(n, t, False) for t in range(1, t_max + 1)]
    else:
        raise ParameterViolation(f"unknown scan mode {mode!r}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_irregular_cell, cells, chunksize=8))
    else:
        results = [_irregular_cell(c) for c in cells]
    return [v for chunk in results for v in chunk]


# -- n = 3 -------------------------------------------------------------------

# t mod 18 -> allowed (classes of X^2-8tY^2=9, classes of X^2-8tY^2=12, chambers)
_P9 = {0: {1, 2, 3}, 1: {1}, 2: {1, 3}, 3: {1}, 4: {1}, 5: {1, 3}, 6: {1}, 7: {1}, 8: {1, 3},
       9: {1, 2, 3}, 10: {1}, 11: {1, 3}, 12: {1}, 13: {1}, 14: {1, 3}, 15: {1}, 16: {1}, 17: {1, 3}}
_P12 = {r: {0} for r in range(18)} | {3: {0, 1}, 5: {0, 2}, 11: {0, 2}, 17: {0, 2}}
_CH = {0: {1, 2, 3}, 1: {1}, 2: {1, 3}, 3: {1, 2}, 4: {1}, 5: {1, 3, 5}, 6: {1}, 7: {1}, 8: {1, 3},
       9: {1, 2, 3}, 10: {1}, 11: {1, 3, 5}, 12: {1}, 13: {1}, 14: {1, 3}, 15: {1}, 16: {1}, 17: {1, 3, 5}}
N3_ALLOWED_COUNTS: dict[int, tuple[frozenset[int], frozenset[int], frozenset[int]]] = {
    r: (frozenset(_P9[r]), frozenset(_P12[r]), frozenset(_CH[r])) for r in range(18)
}


def n3_class_counts(t: int) -> tuple[int, int, int]:
    """Class counts of ``X^2 - 8tY^2 = 9`` and ``= 12`` and the chamber count for n = 3."""
    if t < 2:
        raise NotApplicable("t must be >= 2")
    if is_square(2 * t):
        raise NotApplicable(f"2t = {2 * t} is a perfect square")
    if solve_skew(2, t, 1) is not None:
        raise NotApplicable(f"2X^2 - {t}Y^2 = 1 has integer solutions")
    if fundamental_unit(2 * t).y % 2:
        raise NotApplicable(f"the fundamental unit of {2 * t} has odd Y")
    c9 = len(fundamental_solutions(PellEquation(8 * t, 9)))
    c12 = len(fundamental_solutions(PellEquation(8 * t, 12)))
    return c9, c12, c9 + c12

