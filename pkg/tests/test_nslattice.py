import pytest
from hypothesis import given, settings, strategies as st

from hilbbir.exceptions import ParameterViolation, SquareRadicand, ZeroClass
from hilbbir.nslattice import (
    DELTA,
    H,
    ActionMatrix,
    DivisorClass,
    HilbParams,
    bbf_pairing,
    bbf_square,
    divisibility,
    involution_matrix,
    reflection_fix_axis,
)
from hilbbir.pell import is_square

IDENTITY = ActionMatrix(1, 0, 0, 1)

params = st.builds(HilbParams, st.integers(2, 14), st.integers(1, 300)).filter(
    lambda p: not is_square(p.radicand)
)


def test_params_validation():
    with pytest.raises(ParameterViolation):
        HilbParams(1, 3)
    with pytest.raises(ParameterViolation):
        HilbParams(3, 0)


@pytest.mark.parametrize(
    "n, t, c, sq",
    [(6, 2, DivisorClass(5, -3), 10), (8, 2, DivisorClass(2, -1), 2), (4, 7, DivisorClass(0, 0), 0)],
)
def test_bbf_square(n, t, c, sq):
    assert bbf_square(HilbParams(n, t), c) == sq


def test_divisibility():
    p = HilbParams(14, 5)
    assert divisibility(p, DivisorClass(13, -8)) == 13
    assert divisibility(p, DELTA) == 26
    assert divisibility(p, H) == 1
    with pytest.raises(ZeroClass):
        divisibility(p, DivisorClass(0, 0))


@pytest.mark.parametrize(
    "n, t, rows",
    [(2, 5, ((9, -4), (20, -9))), (6, 2, ((19, -30), (12, -19)))],
)
def test_involution_matrix_examples(n, t, rows):
    assert involution_matrix(HilbParams(n, t)).rows == rows


@pytest.mark.parametrize("n, t, nu", [(6, 2, (5, -3)), (8, 2, (2, -1)), (9, 3, (5, -3))])
def test_reflection_fix_axis(n, t, nu):
    assert tuple(reflection_fix_axis(HilbParams(n, t))) == nu


def test_square_radicand():
    with pytest.raises(SquareRadicand):
        involution_matrix(HilbParams(3, 2))
    with pytest.raises(SquareRadicand):
        reflection_fix_axis(HilbParams(5, 1))


def test_primitive_normalizes_sign():
    assert DivisorClass(-4, 6).primitive() == DivisorClass(2, -3)
    assert DivisorClass(0, -5).primitive() == DivisorClass(0, 1)
    with pytest.raises(ZeroClass):
        DivisorClass(0, 0).primitive()


@given(params)
@settings(max_examples=200, deadline=None)
def test_matrix_is_isometric_involution(p):
    m = involution_matrix(p)
    assert m @ m == IDENTITY
    assert m.det() == -1 and m.trace() == 0
    z, w = m.a, m.c // p.t
    assert m.apply(DivisorClass(z, -p.t * w)) == H
    nu = reflection_fix_axis(p)
    assert m.apply(nu) == nu


@given(params, st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
@settings(max_examples=200, deadline=None)
def test_matrix_preserves_form(p, x1, y1, x2, y2):
    m = involution_matrix(p)
    c1, c2 = DivisorClass(x1, y1), DivisorClass(x2, y2)
    assert bbf_square(p, m.apply(c1)) == bbf_square(p, c1)
    assert bbf_pairing(p, m.apply(c1), m.apply(c2)) == bbf_pairing(p, c1, c2)
