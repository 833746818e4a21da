import pytest
from hypothesis import given, settings, strategies as st

from hilbbir.classify import (
    classify,
    conjecture_check,
    congruence_case,
    family_t,
    moduli_components,
    nonnatural_generators,
    same_component,
)
from hilbbir.exceptions import NotApplicable, ParameterViolation
from hilbbir.nslattice import DivisorClass, HilbParams, bbf_square, divisibility, involution_matrix
from hilbbir.pell import fundamental_unit, is_square, negative_pell, solve_skew


@pytest.mark.parametrize("n, t, jk", [(2, 5, (1, -1)), (6, 2, (-1, -1)), (9, 3, (1, 1)), (2, 3, None), (3, 2, None)])
def test_congruence_case(n, t, jk):
    assert congruence_case(HilbParams(n, t)) == jk


def test_congruence_case_needs_t_at_least_2():
    with pytest.raises(ParameterViolation):
        congruence_case(HilbParams(3, 1))


def test_classify_6_2():
    c = classify(HilbParams(6, 2))
    assert c.group == "Z2" and c.aut_group == "Trivial"
    assert c.symplectic == (False,)
    assert c.nu == DivisorClass(5, -3)
    assert c.invariant_descriptor == ("⟨10⟩",)
    assert not c.biregular and c.regularizable and c.not_hilbert_model


def test_classify_9_3():
    c = classify(HilbParams(9, 3))
    assert c.group == "Z2" and c.case_jk == (1, 1)
    assert c.symplectic == (True,) and c.transcendental_action == (1,)
    assert c.invariant_descriptor == ("coinvariant ⟨-16⟩",)
    assert not c.biregular and not c.regularizable


def test_classify_t1():
    c = classify(HilbParams(9, 1))
    assert c.group == "Z2xZ2" and c.aut_group == "Z2"
    assert sorted(g.symplectic for g in c.generators) == [False, True]
    assert c.case_jk is None
    for n in (2, 3, 5, 10):
        natural = classify(HilbParams(n, 1))
        assert natural.group == "Z2" and natural.aut_group == "Z2" and natural.nu is None


def test_classify_8_2_nu():
    c = classify(HilbParams(8, 2))
    assert c.nu == DivisorClass(2, -1)
    assert c.invariant_descriptor == ("⟨2⟩",)


def test_trivial_group_has_no_flags():
    c = classify(HilbParams(2, 3))
    assert c.group == "Trivial" and c.nu is None and c.symplectic is None
    assert not (c.biregular or c.regularizable or c.irregular or c.not_hilbert_model)


@pytest.mark.parametrize(
    "kind, n, k, q, h, t, jk",
    [
        ("inv2", 6, 1, None, None, 6, (1, -1)),
        ("inv2n2", 6, 1, 2, None, 10, (-1, -1)),
        ("sympl", 9, 1, 3, 1, 15, (1, 1)),
        ("inv2n2", 2, 1, 1, None, 5, (1, -1)),
    ],
)
def test_family_t(kind, n, k, q, h, t, jk):
    pred = family_t(kind, n, k, q=q, h=h)
    assert (pred.t, pred.case_jk) == (t, jk)
    assert classify(HilbParams(n, t), with_chambers=False).case_jk == jk


@pytest.mark.parametrize(
    "kind, n, k, q, h",
    [("inv2n2", 5, 1, 2, None), ("sympl", 9, 1, 3, 2), ("sympl", 9, 1, 2, 1), ("inv2", 6, 0, None, None), ("x", 3, 1, None, None)],
)
def test_family_t_violations(kind, n, k, q, h):
    with pytest.raises(ParameterViolation):
        family_t(kind, n, k, q=q, h=h)


@given(st.integers(2, 12), st.integers(1, 6), st.integers(1, 30))
@settings(max_examples=80, deadline=None)
def test_families_reproduce_prediction(n, k, q):
    m = n - 1
    preds = [family_t("inv2", n, k)]
    if (q * q + 1) % m == 0:
        preds.append(family_t("inv2n2", n, k, q=q))
    if q >= 3 and (q * q - 1) % m == 0:
        h = (q * q - 1) // m
        if h % (q - 1) and h % (q + 1):
            preds.append(family_t("sympl", n, k, q=q, h=h))
    for pred in preds:
        assert congruence_case(HilbParams(n, pred.t)) == pred.case_jk


def test_conjecture_examples():
    rep = conjecture_check(14, 10)
    assert rep.holds and len(rep.checked) == 13 * 8
    assert classify(HilbParams(2, 10)).biregular
    # k = 2 gives t = 4n - 3, which is irregular
    assert classify(HilbParams(5, 17)).irregular
    with pytest.raises(ParameterViolation):
        conjecture_check(14, 2)


def test_moduli_components():
    assert moduli_components(6, (10, 5)) == 1
    assert moduli_components(4, (2, 2)) == 1
    assert moduli_components(5, (2, 2)) is None
    assert moduli_components(5, (8, 4)) is None
    assert moduli_components(7, (2, 1)) == 1
    assert moduli_components(66, (130, 65)) == 2
    assert moduli_components(2, (2, 1)) == 1
    with pytest.raises(ParameterViolation):
        moduli_components(6, (4, 2))


def test_same_component():
    assert same_component(6, 34, 34)
    assert same_component(6, 34, 58)
    # two components exist at n = 66, these minimal a are 57 and 8 modulo 65
    assert same_component(66, 1546, 1706)
    with pytest.raises(NotApplicable, match="t=10"):
        same_component(6, 10, 34)
    with pytest.raises(NotApplicable):
        same_component(6, 34, 20)


cells = st.tuples(st.integers(2, 14), st.integers(1, 300))


@given(cells)
@settings(max_examples=200, deadline=None)
def test_classification_invariants(nt):
    p = HilbParams(*nt)
    c = classify(p)
    for g in c.generators:
        assert involution_matrix(p).apply(g.nu) == g.nu
        assert bbf_square(p, g.nu) == 2 * g.ell
        if g.ell == p.n - 1 and not g.symplectic:
            assert divisibility(p, g.nu) == p.n - 1
        elif g.ell == 1:
            assert divisibility(p, g.nu) in (1, 2)
    if p.t >= 2 and c.generators:
        g = c.generators[0]
        assert (c.case_jk == (1, 1)) == g.symplectic == (g.transcendental_action == 1)
    if c.biregular:
        assert c.regularizable
    if c.chambers is not None and c.generators:
        assert c.regularizable == (c.chambers % 2 == 1)
    if any(g.symplectic for g in c.generators):
        assert not c.regularizable


@given(cells)
@settings(max_examples=200, deadline=None)
def test_case_agrees_with_equations(nt):
    n, t = nt
    if t < 2 or is_square(t * (n - 1)) or (n > 2 and solve_skew(n - 1, t, 1)):
        return
    jk = congruence_case(HilbParams(n, t))
    skew = solve_skew(n - 1, t, -1) is not None
    neg = negative_pell(t * (n - 1)) is not None
    b = fundamental_unit(t * (n - 1)).x
    sympl = (b - 1) % (n - 1) != 0 and (b + 1) % (n - 1) != 0
    if n == 2:
        assert (jk == (1, -1)) == (skew or neg)
        assert jk != (1, 1)
    else:
        assert (jk == (1, -1)) == skew
        assert (jk == (-1, -1)) == neg
        assert (jk == (1, 1)) == sympl


def test_generators_without_chambers():
    gens = nonnatural_generators(HilbParams(2, 5))
    assert len(gens) == 1 and gens[0].a == 2 and gens[0].ell == 1
