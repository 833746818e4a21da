"""Exact solver for standard and generalized Pell equations ``X^2 - r Y^2 = m``.

Everything here works on Python integers, so there is no size limit on the
solutions.  Fundamental units come from the continued fraction of ``sqrt(r)``;
equivalence classes of a generalized equation are found with the
Lagrange-Matthews-Mollin (LMM) method, which runs the PQa recurrence once per
square root of ``r`` modulo ``m / f^2``.

Two solutions ``(X, Y)`` and ``(X', Y')`` of ``X^2 - r Y^2 = m`` are
equivalent when both ``(XX' - rYY') / m`` and ``(XY' - X'Y) / m`` are
integers.  The fundamental solution of a class is the member with the smallest
non-negative ``Y``; when two conjugate members ``(X, Y)``, ``(-X, Y)`` tie, the
one with ``X > 0`` is chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, NamedTuple

from .exceptions import InvariantViolation, ParameterViolation, SquareRadicand

__all__ = [
    "PellEquation",
    "PellSolution",
    "SolutionClass",
    "is_square",
    "fundamental_unit",
    "negative_pell",
    "fundamental_solutions",
    "next_in_class",
    "prev_in_class",
    "equivalent",
    "min_unit_with_congruence",
    "solve_skew",
    "interval_representative",
    "positive_solutions_below",
]


class PellSolution(NamedTuple):
    x: int
    y: int

    def norm(self, r: int) -> int:
        return self.x * self.x - r * self.y * self.y


@dataclass(frozen=True)
class PellEquation:
    """The equation ``X^2 - r Y^2 = m``."""

    r: int
    m: int

    def __post_init__(self):
        if self.r < 1:
            raise ParameterViolation(f"r must be >= 1, got {self.r}")
        if self.m == 0:
            raise ParameterViolation("m must be nonzero")

    def is_solution(self, x: int, y: int) -> bool:
        return x * x - self.r * y * y == self.m


@dataclass(frozen=True)
class SolutionClass:
    fundamental: PellSolution
    conjugate_flag: bool = False


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _checked(x: int, y: int, r: int, m: int) -> PellSolution:
    if x * x - r * y * y != m:
        raise InvariantViolation(f"({x}, {y}) does not solve X^2 - {r}Y^2 = {m}")
    return PellSolution(x, y)


def _require_nonsquare(r: int) -> None:
    if r < 1:
        raise ParameterViolation(f"r must be positive, got {r}")
    if is_square(r):
        raise SquareRadicand(r)


@lru_cache(maxsize=8192)
def _period_convergent(r: int) -> tuple[int, int, int]:
    """Return ``(p, q, L)``: the convergent closing the first period of sqrt(r).

    ``p^2 - r q^2 = (-1)^L`` where ``L`` is the period length.
    """
    a0 = isqrt(r)
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    m, d, a = 0, 1, a0
    length = 0
    while True:
        m = d * a - m
        d = (r - m * m) // d
        a = (a0 + m) // d
        length += 1
        if a == 2 * a0:
            return p, q, length
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev


def fundamental_unit(r: int) -> PellSolution:
    """Smallest positive solution of ``X^2 - r Y^2 = 1``."""
    _require_nonsquare(r)
    p, q, length = _period_convergent(r)
    if length % 2:
        p, q = p * p + r * q * q, 2 * p * q
    return _checked(p, q, r, 1)


def negative_pell(r: int) -> PellSolution | None:
    """Smallest positive solution of ``X^2 - r Y^2 = -1``, or None."""
    _require_nonsquare(r)
    p, q, length = _period_convergent(r)
    if length % 2 == 0:
        return None
    return _checked(p, q, r, -1)


def next_in_class(s: PellSolution, unit: PellSolution, r: int, m: int | None = None) -> PellSolution:
    """Multiply ``s`` by the unit ``a + b sqrt(r)``."""
    a, b = unit
    x, y = s
    out = PellSolution(a * x + r * b * y, b * x + a * y)
    if m is not None:
        _checked(*out, r, m)
    return out


def prev_in_class(s: PellSolution, unit: PellSolution, r: int, m: int | None = None) -> PellSolution:
    """Multiply ``s`` by the inverse unit ``a - b sqrt(r)``."""
    a, b = unit
    return next_in_class(s, PellSolution(a, -b), r, m)


def equivalent(s1: PellSolution, s2: PellSolution, r: int, m: int) -> bool:
    (x1, y1), (x2, y2) = s1, s2
    return (x1 * x2 - r * y1 * y2) % m == 0 and (x1 * y2 - x2 * y1) % m == 0


# -- generalized equations ----------------------------------------------------


@lru_cache(maxsize=65536)
def _sqrt_mod_all(d_mod: int, modulus: int) -> tuple[int, ...]:
    """All ``z`` in ``(-modulus/2, modulus/2]`` with ``z^2 = d (mod modulus)``."""
    lo = -((modulus - 1) // 2)
    hi = modulus // 2
    return tuple(z for z in range(lo, hi + 1) if (z * z - d_mod) % modulus == 0)


def _floor_quadratic(p: int, q: int, d: int, s: int) -> int:
    # floor((p + sqrt(d)) / q) for non-square d, with s = isqrt(d)
    if q > 0:
        return (p + s) // q
    return -((p + s) // (-q) + 1)


def _pqa_first_unit_q(p0: int, q0: int, d: int) -> tuple[int, int] | None:
    """Run PQa(p0, q0, d) and return ``(G_{i-1}, B_{i-1})`` at the first i >= 1
    with ``Q_i = +-1``; None if no such index occurs before the sequence cycles.
    """
    s = isqrt(d)
    g_prev2, g_prev1 = -p0, q0
    b_prev2, b_prev1 = 1, 0
    p, q = p0, q0
    seen = set()
    i = 0
    while True:
        if i >= 1 and q in (1, -1):
            return g_prev1, b_prev1
        state = (p, q)
        if state in seen:
            return None
        seen.add(state)
        a = _floor_quadratic(p, q, d, s)
        g_prev2, g_prev1 = g_prev1, a * g_prev1 + g_prev2
        b_prev2, b_prev1 = b_prev1, a * b_prev1 + b_prev2
        p = a * q - p
        q = (d - p * p) // q
        i += 1


def _lmm_raw(r: int, m: int) -> list[PellSolution]:
    """One solution per equivalence class (not yet normalized), via LMM."""
    out: list[PellSolution] = []
    neg = None
    f = 1
    while f * f <= abs(m):
        if m % (f * f) == 0:
            mm = m // (f * f)
            am = abs(mm)
            for z in _sqrt_mod_all(r % am, am):
                hit = _pqa_first_unit_q(z, am, r)
                if hit is None:
                    continue
                g, b = hit
                nrm = g * g - r * b * b
                if nrm == mm:
                    out.append(PellSolution(f * g, f * b))
                elif nrm == -mm:
                    if neg is None:
                        neg = negative_pell(r) or False
                    if neg:
                        t, u = neg
                        out.append(PellSolution(f * (g * t + b * u * r), f * (g * u + b * t)))
                else:
                    raise InvariantViolation(f"PQa produced norm {nrm} for m={mm}")
        f += 1
    return out


def _normalize(sol: PellSolution, unit: PellSolution, r: int, m: int) -> SolutionClass:
    """Replace ``sol`` by the fundamental solution of its class."""
    x, y = sol
    if m > 0:
        if x < 0:
            x, y = -x, -y
        cur = PellSolution(x, y)
        while cur.y < 0:
            cur = next_in_class(cur, unit, r)
        prev = prev_in_class(cur, unit, r)
        while prev.y >= 0:
            cur, prev = prev, prev_in_class(prev, unit, r)
        # cur has the smallest non-negative Y on the X > 0 branch; -prev is
        # the candidate from the X < 0 branch
        if -prev.y < cur.y:
            return SolutionClass(PellSolution(-prev.x, -prev.y), False)
        return SolutionClass(cur, -prev.y == cur.y)
    if y < 0:
        x, y = -x, -y
    cur = PellSolution(x, y)
    while True:
        nxt = next_in_class(cur, unit, r)
        if nxt.y < cur.y:
            cur = nxt
            continue
        prv = prev_in_class(cur, unit, r)
        if prv.y < cur.y:
            cur = prv
            continue
        break
    tie = nxt.y == cur.y or prv.y == cur.y
    if tie and cur.x < 0:
        cur = PellSolution(-cur.x, cur.y)
    return SolutionClass(cur, tie)


def fundamental_solutions(eq: PellEquation) -> list[SolutionClass]:
    """One :class:`SolutionClass` per equivalence class of solutions.

    Classes are sorted by ``(|X|, Y, sign X)`` of their fundamental solution.
    """
    r, m = eq.r, eq.m
    _require_nonsquare(r)
    unit = fundamental_unit(r)
    classes: list[SolutionClass] = []
    for raw in _lmm_raw(r, m):
        _checked(*raw, r, m)
        cls = _normalize(raw, unit, r, m)
        _checked(*cls.fundamental, r, m)
        if not any(equivalent(cls.fundamental, c.fundamental, r, m) for c in classes):
            classes.append(cls)
    classes.sort(key=lambda c: (abs(c.fundamental.x), c.fundamental.y, c.fundamental.x < 0))
    return classes


def interval_representative(sol: PellSolution, unit: PellSolution, r: int) -> PellSolution:
    """The member of the class of ``sol`` with ``X > 0`` and ``0 <= Y/X < w/z``.

    Only meaningful for ``m > 0``.
    """
    x, y = sol
    if x < 0:
        x, y = -x, -y
    cur = PellSolution(x, y)
    while cur.y < 0:
        cur = next_in_class(cur, unit, r)
    prev = prev_in_class(cur, unit, r)
    while prev.y >= 0:
        cur, prev = prev, prev_in_class(prev, unit, r)
    return cur


def positive_solutions_below(eq: PellEquation, slope: Fraction) -> Iterator[PellSolution]:
    """All solutions with ``X > 0``, ``Y > 0`` and ``Y/X < slope``, for ``m > 0``.

    Each class is walked from its interval representative by the fundamental
    unit, so no solution is skipped even when ``slope`` spans several unit
    intervals.  Output is sorted by slope.
    """
    if eq.m <= 0:
        raise ParameterViolation("positive_solutions_below needs m > 0")
    r = eq.r
    # every solution with m > 0 lies below 1/sqrt(r), so the walk would not end
    if slope * slope * r >= 1:
        raise ParameterViolation(f"slope {slope} must be below 1/sqrt({r})")
    unit = fundamental_unit(r)
    num, den = slope.numerator, slope.denominator
    found = []
    for cls in fundamental_solutions(eq):
        cur = interval_representative(cls.fundamental, unit, r)
        while cur.y * den < num * cur.x:
            if cur.y > 0:
                found.append(cur)
            cur = next_in_class(cur, unit, r)
    found.sort(key=lambda s: Fraction(s.y, s.x))
    return iter(found)


# -- specialised equations ---------------------------------------------------


def min_unit_with_congruence(n: int, t: int) -> PellSolution:
    """Smallest positive solution of ``X^2 - t(n-1) Y^2 = 1`` with ``X = +-1 (mod n-1)``."""
    if n < 2 or t < 1:
        raise ParameterViolation(f"need n >= 2, t >= 1; got n={n}, t={t}")
    r = t * (n - 1)
    unit = fundamental_unit(r)
    mod = n - 1
    cur = unit
    while (cur.x - 1) % mod and (cur.x + 1) % mod:
        cur = next_in_class(cur, unit, r)
    return _checked(*cur, r, 1)


def _solve_skew_square(A: int, B: int, c: int) -> PellSolution | None:
    # A X^2 - B Y^2 = c with AB = s^2: (AX - sY)(AX + sY) = cA
    s = isqrt(A * B)
    rhs = c * A
    best = None
    for d in range(1, abs(rhs) + 1):
        if rhs % d:
            continue
        for d1 in (d, -d):
            e1 = rhs // d1
            # AX - sY = d1, AX + sY = e1
            if (d1 + e1) % 2 or (e1 - d1) % 2:
                continue
            ax, sy = (d1 + e1) // 2, (e1 - d1) // 2
            if ax <= 0 or sy <= 0 or ax % A or sy % s:
                continue
            cand = PellSolution(ax // A, sy // s)
            if best is None or cand.x < best.x:
                best = cand
    return best


def solve_skew(A: int, B: int, c: int) -> PellSolution | None:
    """Smallest-``X`` positive solution of ``A X^2 - B Y^2 = c``, or None.

    With ``U = A X`` this is ``U^2 - AB Y^2 = cA`` restricted to ``A | U``;
    divisibility by ``A`` is constant on an equivalence class because every
    unit ``a + b sqrt(AB)`` has ``gcd(a, A) = 1``.
    """
    if A < 1 or B < 1:
        raise ParameterViolation(f"A, B must be positive; got {A}, {B}")
    if c == 0:
        raise ParameterViolation("c must be nonzero")
    r = A * B
    if is_square(r):
        best = _solve_skew_square(A, B, c)
    else:
        unit = fundamental_unit(r)
        best = None
        for cls in fundamental_solutions(PellEquation(r, c * A)):
            f = cls.fundamental
            if f.x % A:
                continue
            for cand in (prev_in_class(f, unit, r), f, next_in_class(f, unit, r)):
                u, y = abs(cand.x), abs(cand.y)
                if u == 0 or y == 0:
                    continue
                sol = PellSolution(u // A, y)
                if best is None or sol.x < best.x:
                    best = sol
    if best is not None and A * best.x ** 2 - B * best.y ** 2 != c:
        raise InvariantViolation(f"{best} does not solve {A}X^2 - {B}Y^2 = {c}")
    return best


def primitive(x: int, y: int) -> tuple[int, int]:
    g = gcd(x, y)
    return (x // g, y // g) if g else (0, 0)
