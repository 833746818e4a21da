"""Birational maps ``S^[n] -> Sigma^[n]`` not induced by an isomorphism of K3 surfaces.

A Picard-rank-one K3 of degree ``2t`` has ``2^(rho(t)-1)`` Fourier-Mukai
partners.  One of them, ``Sigma``, admits a non-induced birational map from
``S^[n]`` exactly when the movable cone has a Hilbert-Chow type upper boundary
whose unit ``(z, w)`` satisfies ``z = +-1 (mod 2(n-1))`` and ``w`` even.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from sympy import primefactors

from .cones import decompose
from .exceptions import InvariantViolation, ParameterViolation
from .nslattice import HilbParams
from .pell import PellEquation, is_square, min_unit_with_congruence, positive_solutions_below, solve_skew

__all__ = [
    "AmbiguityReport",
    "PartnerLabel",
    "fm_partner_count",
    "fm_partner_count_bruteforce",
    "ambiguity",
    "explicit_walls_below",
]


def fm_partner_count(t: int) -> int:
    """Number of non-isomorphic Fourier-Mukai partners, ``2^(rho(t)-1)`` with ``rho(1) = 1``."""
    if t < 1:
        raise ParameterViolation(f"t must be >= 1, got {t}")
    rho = len(primefactors(t)) if t > 1 else 1
    return 2 ** (rho - 1)


def fm_partner_count_bruteforce(t: int) -> int:
    """``|{a in (Z/2t)^x : a^2 = 1 (mod 4t)}| / +-``, by exhaustion."""
    if t < 1:
        raise ParameterViolation(f"t must be >= 1, got {t}")
    m = 2 * t
    units = {a for a in range(m) if gcd(a, m) == 1 and (a * a - 1) % (4 * t) == 0}
    orbits = {min(a, (-a) % m) for a in units}
    return len(orbits)


class PartnerLabel(tuple):
    """``(p, q, r, s)`` with ``Sigma`` the moduli space ``M_S(s, H, r)``."""

    __slots__ = ()

    def __new__(cls, p: int, q: int, r: int, s: int):
        return super().__new__(cls, (p, q, r, s))

    p = property(lambda self: self[0])
    q = property(lambda self: self[1])
    r = property(lambda self: self[2])
    s = property(lambda self: self[3])

    def __repr__(self) -> str:
        return f"PartnerLabel(p={self.p}, q={self.q}, r={self.r}, s={self.s})"


@dataclass(frozen=True)
class AmbiguityReport:
    exists_noninduced_map: bool
    fm_partner_count: int
    partner_isomorphic_to_S: bool | None = None
    partner_label: PartnerLabel | None = None
    map_biregular: bool | None = None
    epsilon: int | None = None


def _coprime_split(hp: int, k: int) -> tuple[int, int]:
    # q = largest divisor of hp coprime to k, p = hp / q
    q = hp
    g = gcd(q, k)
    while g > 1:
        q //= g
        g = gcd(q, k)
    return hp // q, q


def _label(p: HilbParams, z: int, w: int) -> tuple[PartnerLabel, int]:
    m = p.n - 1
    hp = w // 2
    for eps in (1, -1):
        if (z - eps) % (2 * m):
            continue
        k = (z - eps) // (2 * m)
        # z^2 - 1 = 4 m k (m k + eps) forces m s p^2 - r q^2 = -eps
        k2 = k * m + eps
        pp, q = _coprime_split(hp, k)
        if k % (pp * pp) or k2 % (q * q):
            continue
        s, r = k // (pp * pp), k2 // (q * q)
        if r * s != p.t or m * s * pp * pp - r * q * q != -eps:
            continue
        return PartnerLabel(pp, q, r, s), eps
    raise InvariantViolation(f"no (p, q, r, s) decomposition for {p} with unit ({z}, {w})")


def _explicit_pairs(n: int) -> list[tuple[int, int]]:
    m = n - 1
    pairs = [(-1, a) for a in range(1, m + 1)]
    pairs += [(0, a) for a in range(3, m + 1)]
    rho = 1
    while 4 * rho < m:
        lo = max(4 * rho + 1, isqrt(4 * rho * m - 1) + 1)
        pairs += [(rho, a) for a in range(lo, m + 1)]
        rho += 1
    return pairs


def explicit_walls_below(p: HilbParams, z: int, w: int) -> list[tuple[int, int, int, int]]:
    """``(rho, alpha, X, Y)`` over the explicit ``(rho, alpha)`` list whose minimal
    congruent positive solution has ``Y/X < w/(2z)``.

    For a fixed positive right-hand side the slope ``Y/X`` grows with ``Y``, so
    the minimal solution is the one of smallest slope.
    """
    big_r = 4 * p.radicand
    mod = 2 * (p.n - 1)
    upper = Fraction(w, 2 * z)
    out = []
    for rho, alpha in _explicit_pairs(p.n):
        rhs = alpha * alpha - 4 * rho * (p.n - 1)
        if rhs <= 0:
            continue
        for sol in positive_solutions_below(PellEquation(big_r, rhs), upper):
            if (sol.x - alpha) % mod == 0 or (sol.x + alpha) % mod == 0:
                out.append((rho, alpha, sol.x, sol.y))
                break
    return out


def ambiguity(p: HilbParams, *, verify: bool = False) -> AmbiguityReport:
    """Existence, isomorphism type and biregularity of a non-induced birational map.

    With ``verify=True`` biregularity is also decided from the explicit
    ``(rho, alpha)`` list and the two answers must agree.
    """
    count = fm_partner_count(p.t)
    if is_square(p.radicand):
        return AmbiguityReport(False, count)
    if p.n > 2 and solve_skew(p.n - 1, p.t, 1) is not None:
        return AmbiguityReport(False, count)
    z, w = min_unit_with_congruence(p.n, p.t)
    m2 = 2 * (p.n - 1)
    if w % 2 or ((z - 1) % m2 and (z + 1) % m2):
        return AmbiguityReport(False, count)
    iso = (z - 1) % (2 * p.t) == 0 or (z + 1) % (2 * p.t) == 0
    label, eps = _label(p, z, w)
    bireg = decompose(p).chamber_count == 1
    if verify:
        alt = not explicit_walls_below(p, z, w)
        if alt != bireg:
            raise InvariantViolation(f"biregularity at {p}: chambers say {bireg}, explicit walls say {alt}")
    return AmbiguityReport(True, count, iso, label, bireg, eps)
