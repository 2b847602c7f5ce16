from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from singkit.errors import NotMonic, NotSquarefree, ZeroDivisor
from singkit.numbers import QQ, NumberField, RadicalAlgebra, invert, mpq, rational_root

rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))
K2 = NumberField([-2, 0, 1])          # theta^2 = 2
K3 = NumberField([1, -1, 0, 1])       # theta^3 - theta + 1, irreducible over Q


def elements(K):
    return st.lists(rationals, min_size=K.degree, max_size=K.degree).map(K.reduce)


def test_invert_rational():
    assert invert(mpq(2, 3)) == mpq(3, 2)
    with pytest.raises(ZeroDivisionError):
        invert(0)


def test_sqrt2_relation_and_inverse():
    t = K2.gen
    assert t * t == K2(2)
    assert invert(t) == t / 2


def test_reducible_modulus_detected_on_inversion():
    K = NumberField([-1, 0, 1])
    with pytest.raises(ZeroDivisor):
        invert(K.gen - 1)


def test_field_header_examples():
    w12 = NumberField([mpq(1386, 6089), 0, 1])
    assert w12.degree == 2
    assert w12.gen ** 2 == w12(mpq(-1386, 6089))
    bi = NumberField([mpq(-17943573032, 1269497754275), 0, 0, 0, 1])
    s = bi.gen ** 2
    assert s * s == bi(mpq(17943573032, 1269497754275))


def test_defining_polynomial_checks():
    with pytest.raises(NotMonic):
        NumberField([1, 0, 2])
    with pytest.raises(NotSquarefree):
        NumberField([1, 2, 1])
    with pytest.raises(ValueError):
        NumberField([1, 1])


def test_rational_root():
    assert rational_root(mpq(8, 27), 3) == mpq(2, 3)
    assert rational_root(mpq(-8), 3) == -2
    assert rational_root(mpq(2), 2) is None
    assert rational_root(mpq(-4), 2) is None


def test_radical_algebra_monomials():
    R = RadicalAlgebra([(2, 3), (3, 5)])
    w1, w2 = R.gens
    assert w1 ** 2 == R.one * 3
    assert w2 ** 3 == R.one * 5
    assert (w1 * w2) * (w1 * w2).inverse() == R.one


@given(elements(K3), elements(K3), elements(K3))
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if a != K3.zero:
        assert a * invert(a) == K3.one


@given(elements(K2))
def test_canonical_representation(a):
    # equal elements are stored identically and never carry unreduced fractions
    b = (a + K2.one) - K2.one
    assert a.coeffs == b.coeffs
    for c in b.coeffs:
        f = Fraction(int(c.numerator), int(c.denominator))
        assert (f.numerator, f.denominator) == (int(c.numerator), int(c.denominator))


@given(rationals, rationals)
def test_qq_is_exact(a, b):
    assert QQ.convert(a) + QQ.convert(b) - QQ.convert(b) == a
    if b:
        assert (a / b) * b == a
