"""Decision procedure for the birational automorphism group of ``S^[n]``.

For ``t >= 2`` a non-trivial birational automorphism exists iff ``t(n-1)`` is
not a square and the congruence-constrained unit ``(z, w)`` has ``w`` even and
``(z mod 2(n-1), z mod 2t)`` equal to ``(1, -1)``, ``(-1, -1)`` or ``(1, 1)``.
For ``t = 1`` the natural involution is always present; a second, non-natural
pair of generators appears when ``n - 1`` is not a square and the
fundamental unit of ``n - 1`` is not ``+-1`` modulo ``n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from sympy import primefactors

from .cones import ChamberDecomposition, Wall, decompose
from .exceptions import InvariantViolation, NotApplicable, ParameterViolation
from .nslattice import DivisorClass, HilbParams, bbf_square, reflection_fix_axis
from .pell import (
    fundamental_unit,
    is_square,
    min_unit_with_congruence,
    negative_pell,
    solve_skew,
)

__all__ = [
    "Generator",
    "BirClassification",
    "FamilyPrediction",
    "ConjectureReport",
    "congruence_case",
    "nonnatural_generators",
    "classify",
    "family_t",
    "conjecture_check",
    "moduli_components",
    "same_component",
]

TRIVIAL, Z2, Z2xZ2 = "Trivial", "Z2", "Z2xZ2"


@dataclass(frozen=True)
class Generator:
    """A non-natural birational involution, described by its lattice action."""

    symplectic: bool
    transcendental_action: int
    nu: DivisorClass
    ell: int
    descriptor: str
    case_jk: tuple[int, int] | None = None
    # (a, b) from the equation that produced nu; a is the delta-coefficient
    a: int = 0
    b: int = 0


@dataclass(frozen=True)
class BirClassification:
    n: int
    t: int
    group: str
    aut_group: str
    case_jk: tuple[int, int] | None
    generators: tuple[Generator, ...] = ()
    chambers: int | None = None
    walls: tuple[Wall, ...] = field(default=(), repr=False)
    irregular: bool = False
    biregular: bool = False
    regularizable: bool = False
    not_hilbert_model: bool = False

    @property
    def symplectic(self) -> tuple[bool, ...] | None:
        return tuple(g.symplectic for g in self.generators) or None

    @property
    def transcendental_action(self) -> tuple[int, ...] | None:
        return tuple(g.transcendental_action for g in self.generators) or None

    @property
    def nu(self) -> DivisorClass | None:
        return self.generators[0].nu if self.generators else None

    @property
    def invariant_descriptor(self) -> tuple[str, ...] | None:
        return tuple(g.descriptor for g in self.generators) or None

    @property
    def has_nonnatural(self) -> bool:
        return bool(self.generators)


def _pm1(z: int, mod: int) -> int | None:
    if (z - 1) % mod == 0:
        return 1
    if (z + 1) % mod == 0:
        return -1
    return None


def congruence_case(p: HilbParams) -> tuple[int, int] | None:
    """The label ``(j, k)`` of the unit ``(z, w)``, or None when no involution exists.

    For ``n = 2`` the residue modulo 2 is read as ``+1``.
    """
    if p.t < 2:
        raise ParameterViolation("congruence_case needs t >= 2")
    if is_square(p.radicand):
        return None
    z, w = min_unit_with_congruence(p.n, p.t)
    if w % 2:
        return None
    j, k = _pm1(z, 2 * (p.n - 1)), _pm1(z, 2 * p.t)
    if j is None or k is None:
        return None
    if (j, k) == (-1, 1):
        if p.n >= 3 and solve_skew(p.n - 1, p.t, 1) is None:
            raise InvariantViolation(f"(j,k)=(-1,1) at {p} but (n-1)X^2 - tY^2 = 1 is unsolvable")
        return None
    return (j, k)


def _descriptor(p: HilbParams, ell: int, symplectic: bool) -> str:
    if symplectic:
        return f"coinvariant ⟨-{2 * (p.n - 1)}⟩"
    return f"⟨{2 * ell}⟩"


def nonnatural_generators(p: HilbParams) -> tuple[Generator, ...]:
    """Non-natural generators of ``Bir(S^[n])`` without any chamber computation."""
    n, t = p.n, p.t
    if t == 1:
        if is_square(n - 1):
            return ()
        ab = solve_skew(n - 1, 1, -1)
        if ab is None:
            raise InvariantViolation(f"{n - 1}X^2 - Y^2 = -1 unsolvable")
        a, b = ab
        if _pm1(b, n - 1) is not None:
            return ()
        nu = DivisorClass(b, -a)
        _check_axis(p, nu, 2)
        return (
            Generator(True, 1, nu, 1, _descriptor(p, 1, True), None, a, b),
            Generator(False, -1, nu, 1, _descriptor(p, 1, False), None, a, b),
        )
    jk = congruence_case(p)
    if jk is None:
        return ()
    if jk == (1, -1):
        a, b = _must(solve_skew(n - 1, t, -1), p, "(n-1)X^2 - tY^2 = -1")
        nu, ell, sympl = DivisorClass(b, -a), 1, False
    elif jk == (-1, -1):
        a, b = _must(negative_pell(p.radicand), p, "X^2 - t(n-1)Y^2 = -1")
        nu, ell, sympl = DivisorClass((n - 1) * b, -a), n - 1, False
    else:
        b, a = fundamental_unit(p.radicand)
        nu, ell, sympl = DivisorClass(b, -t * a), t, True
    _check_axis(p, nu, 2 * ell)
    gen = Generator(sympl, 1 if sympl else -1, nu, ell, _descriptor(p, ell, sympl), jk, a, b)
    return (gen,)


def _must(sol, p: HilbParams, what: str):
    if sol is None:
        raise InvariantViolation(f"{what} should be solvable for {p}")
    return sol


def _check_axis(p: HilbParams, nu: DivisorClass, square: int) -> None:
    if nu != reflection_fix_axis(p):
        raise InvariantViolation(f"axis {nu} differs from the fixed line {reflection_fix_axis(p)} at {p}")
    if bbf_square(p, nu) != square:
        raise InvariantViolation(f"nu^2 = {bbf_square(p, nu)} != {square} at {p}")


def _chambers(p: HilbParams) -> ChamberDecomposition | None:
    try:
        return decompose(p, divisorial_boundary=True)
    except NotApplicable:
        return None


def classify(p: HilbParams, *, with_chambers: bool = True) -> BirClassification:
    gens = nonnatural_generators(p)
    if p.t == 1:
        group = Z2xZ2 if gens else Z2
    else:
        group = Z2 if gens else TRIVIAL
    dec = _chambers(p) if (with_chambers or gens) else None
    chambers = dec.chamber_count if dec is not None else None
    if gens and chambers is None:
        raise InvariantViolation(f"movable cone unavailable although {p} has a non-natural involution")
    if p.t == 1:
        aut = Z2
    else:
        aut = Z2 if gens and chambers == 1 else TRIVIAL
    biregular = bool(gens) and not gens[0].symplectic and chambers == 1
    regularizable = bool(gens) and chambers % 2 == 1
    if any(g.symplectic for g in gens) and regularizable:
        raise InvariantViolation(f"symplectic involution at {p} would be regularizable")
    return BirClassification(
        n=p.n,
        t=p.t,
        group=group,
        aut_group=aut,
        case_jk=gens[0].case_jk if gens else None,
        generators=gens,
        chambers=chambers,
        walls=dec.walls if dec is not None else (),
        irregular=bool(gens) and chambers % 2 == 0,
        biregular=biregular,
        regularizable=regularizable,
        not_hilbert_model=bool(gens) and not biregular and regularizable,
    )


# -- families and checks -----------------------------------------------------


@dataclass(frozen=True)
class FamilyPrediction:
    t: int
    case_jk: tuple[int, int]


def family_t(kind: str, n: int, k: int, q: int | None = None, h: int | None = None) -> FamilyPrediction:
    """Degree ``t`` from one of the three infinite families and its predicted label.

    ``inv2``: ``t = (n-1)k^2 + 1``.  ``inv2n2``: ``t = (n-1)k^2 + 2qk + (q^2+1)/(n-1)``
    with ``q^2 = -1 (mod n-1)``.  ``sympl``: ``t = (n-1)k^2 + 2qk + h`` where
    ``n - 1 = (q^2 - 1)/h``, ``q >= 3`` and ``h`` not divisible by ``q - 1`` or ``q + 1``.
    """
    if n < 2:
        raise ParameterViolation(f"n must be >= 2, got {n}")
    if k < 1:
        raise ParameterViolation(f"k must be >= 1, got {k}")
    m = n - 1
    if kind == "inv2":
        return FamilyPrediction(m * k * k + 1, (1, -1))
    if kind == "inv2n2":
        if q is None or q < 1:
            raise ParameterViolation("inv2n2 needs q >= 1")
        if (q * q + 1) % m:
            raise ParameterViolation(f"q^2 = {q * q} is not -1 modulo n-1 = {m}")
        # with n = 2 the two non-symplectic labels coincide; (1,-1) is reported
        return FamilyPrediction(m * k * k + 2 * q * k + (q * q + 1) // m, (1, -1) if n == 2 else (-1, -1))
    if kind == "sympl":
        if q is None or q < 3:
            raise ParameterViolation("sympl needs q >= 3")
        if h is None or h < 1:
            raise ParameterViolation("sympl needs h >= 1")
        if h * m != q * q - 1:
            raise ParameterViolation(f"n-1 = {m} is not (q^2-1)/h = ({q * q} - 1)/{h}")
        if h % (q - 1) == 0 or h % (q + 1) == 0:
            raise ParameterViolation(f"h = {h} is divisible by q-1 or q+1")
        return FamilyPrediction(m * k * k + 2 * q * k + h, (1, 1))
    raise ParameterViolation(f"unknown family {kind!r}")


@dataclass(frozen=True)
class ConjectureReport:
    checked: tuple[tuple[int, int, int], ...]
    counterexamples: tuple[tuple[int, int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def conjecture_check(n_max: int, k_max: int, n_min: int = 2, k_min: int = 3) -> ConjectureReport:
    """Check biregularity of the involution for ``t = (n-1)k^2 + 1``, ``k >= 3``."""
    if n_max < 2 or k_max < 3:
        raise ParameterViolation("need n_max >= 2 and k_max >= 3")
    checked, bad = [], []
    for n in range(n_min, n_max + 1):
        for k in range(k_min, k_max + 1):
            t = (n - 1) * k * k + 1
            cls = classify(HilbParams(n, t))
            checked.append((n, k, t))
            if not cls.biregular:
                bad.append((n, k, t))
    return ConjectureReport(tuple(checked), tuple(bad))


def _rho(r: int) -> int:
    return len(primefactors(r)) if r > 1 else 1


def _minus_one_is_square_mod(m: int) -> bool:
    if m == 1:
        return True
    return any((x * x + 1) % m == 0 for x in range(m))


def moduli_components(n: int, polarization: tuple[int, int]) -> int | None:
    """Number of connected components of the moduli space of polarized
    manifolds of ``K3^[n]``-type with the given (square, divisibility)."""
    if n < 2:
        raise ParameterViolation(f"n must be >= 2, got {n}")
    m = n - 1
    if polarization == (2, 1):
        return 1
    if polarization == (2, 2):
        return 1 if n % 4 == 0 else None
    if polarization == (2 * m, m):
        if not _minus_one_is_square_mod(m):
            return None
        if n % 2 == 0:
            return 2 ** (_rho(m) - 1)
        if n % 4 == 1:
            return 2 ** _rho(m // 4)
        return 2 ** (_rho(m // 2) - 1)
    raise ParameterViolation(f"unsupported polarization {polarization}")


def same_component(n: int, t1: int, t2: int) -> bool:
    """Whether the biregular involutions at degrees ``t1`` and ``t2`` land in the
    same component of the moduli space of ``(2(n-1), n-1)``-polarized manifolds."""
    a = []
    for t in (t1, t2):
        p = HilbParams(n, t)
        if t < 2:
            raise NotApplicable(f"t={t}: need t >= 2")
        if is_square(p.radicand):
            raise NotApplicable(f"t={t}: t(n-1) is a square")
        sol = negative_pell(p.radicand)
        if sol is None:
            raise NotApplicable(f"t={t}: X^2 - t(n-1)Y^2 = -1 is unsolvable")
        if not classify(p).biregular:
            raise NotApplicable(f"t={t}: no biregular non-natural involution")
        if n > 2 and sol.x % (n - 1) == 0:
            raise NotApplicable(f"t={t}: a = {sol.x} is divisible by n-1")
        a.append(sol.x)
    m = n - 1
    return (a[0] - a[1]) % m == 0 or (a[0] + a[1]) % m == 0


def _isqrt_exact(v: int) -> int | None:
    s = isqrt(v)
    return s if s * s == v else None
