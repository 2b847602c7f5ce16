import pytest
from hypothesis import given, strategies as st

from singkit.errors import NotArtinian
from singkit.numbers import QQ, mpq
from singkit.polynomial import Ideal, PolyRing, jacobian_ideal
from singkit.standard_basis import (eliminate, groebner_basis, ideal_membership, mora_normal_form,
                                    radical_membership, reduced_normal_form, standard_basis,
                                    standard_monomials)

L1 = PolyRing(("x",), QQ, "local")
L2 = PolyRing(("x", "y"), QQ, "local")
L3 = PolyRing(("x", "y", "z"), QQ, "local")
G2 = PolyRing(("a1", "a2"), QQ, "global")


def test_nf_through_a_unit():
    (x,) = L1.gens
    g = x - x ** 2
    # the oracle: (1 - x) * x - (x - x^2) vanishes, so x is g times a unit inverse
    assert (1 - x) * x - g == L1.zero
    assert mora_normal_form(x, [g]).is_zero()
    sb = standard_basis(Ideal(L1, [g]))
    assert sb.lead_ideal() == [(1,)]


def test_nf_of_independent_variable():
    x, y = L2.gens
    assert mora_normal_form(y, [x]) == y


def test_unit_ideal():
    sb = standard_basis(Ideal(L2, [L2.one]))
    assert sb.is_unit_ideal


def test_parabolic_staircase():
    x, y, z = L3.gens
    sb = standard_basis(jacobian_ideal(x ** 3 + y ** 3 + z ** 3 + x * y * z))
    assert len(standard_monomials(sb.staircase, 3)) == 8


def test_reduced_nf_uses_the_nilpotency_bound():
    (x,) = L1.gens
    sb = standard_basis(Ideal(L1, [x ** 2 - x ** 3]))
    assert reduced_normal_form(x ** 2, sb).is_zero()
    assert reduced_normal_form(3 + x + x ** 5, sb) == 3 + x


def test_radical_membership():
    x, y = PolyRing(("x", "y"), QQ, "global").gens
    ring = x.ring
    assert radical_membership(x, Ideal(ring, [x ** 2]))
    assert not radical_membership(x, Ideal(ring, [x * y]))
    a1, a2 = G2.gens
    assert not radical_membership(a2, Ideal(G2, [a1 ** 2, a1 * a2]))


def test_eliminate():
    R = PolyRing(("s1", "s3"), QQ, "global")
    s1, s3 = R.gens
    out = eliminate(Ideal(R, [s3 - s1 ** 2, s1 ** 3]), ["s3"])
    assert [str(g) for g in out.gens] == ["s1^3"]
    I = Ideal(R, [s1])
    assert eliminate(I, []) is I
    R3 = PolyRing(("z", "a1", "a2"), QQ, "global")
    z, a1, a2 = R3.gens
    sat = eliminate(Ideal(R3, [a1 ** 2, a1 * a2, z * a2 - 1]), ["z"])
    # saturating by a2 leaves the component a1 = 0
    assert sorted(str(g) for g in sat.gens) == ["a1"]


def test_groebner_basis_reduces_membership():
    x, y = PolyRing(("x", "y"), QQ, "global").gens
    G = groebner_basis([x ** 2 - y, x * y - 1])
    I = Ideal(x.ring, G)
    assert ideal_membership(y ** 3 - 1, I)


def test_non_artinian_reduced_nf():
    x, y = L2.gens
    sb = standard_basis(Ideal(L2, [x * y]))
    with pytest.raises(NotArtinian):
        reduced_normal_form(x, sb)


# properties ---------------------------------------------------------------------

exps = st.tuples(st.integers(0, 4), st.integers(0, 4))
small = st.integers(-4, 4).map(mpq)


@st.composite
def local_ideals(draw):
    """Ideals containing x^a + ..., y^b + ... so the quotient is finite."""
    x, y = L2.gens
    a, b = draw(st.integers(2, 5)), draw(st.integers(2, 5))
    tails = draw(st.lists(st.dictionaries(exps, small, max_size=3), min_size=2, max_size=3))
    gens = [x ** a + L2.from_dict(tails[0]) * x * y, y ** b + L2.from_dict(tails[1]) * x * y]
    if len(tails) > 2:
        gens.append(L2.from_dict(tails[2]) * x)
    return Ideal(L2, gens)


@given(local_ideals())
def test_generators_reduce_to_zero(I):
    sb = standard_basis(I)
    for g in I.gens:
        assert sb.normal_form(g).is_zero()


@given(local_ideals(), st.lists(st.dictionaries(exps, small, max_size=3), min_size=2, max_size=2))
def test_combinations_reduce_to_zero(I, cs):
    sb = standard_basis(I)
    combo = L2.from_dict(cs[0]) * I.gens[0] + L2.from_dict(cs[1]) * I.gens[1]
    assert sb.normal_form(combo).is_zero()


@given(local_ideals())
def test_mora_relation(I):
    x, y = L2.gens
    f = (1 + x) * I.gens[0] + y ** 2 + x * y ** 3
    sb = standard_basis(I)
    h, u, qs = mora_normal_form(f, list(sb.generators), relation=True)
    assert u.constant_coeff() != 0
    rhs = h
    for q, g in zip(qs, sb.generators):
        rhs = rhs + q * g
    assert u * f - rhs == L2.zero


@given(local_ideals())
def test_staircase_is_presentation_independent(I):
    g0, g1 = I.gens[0], I.gens[1]
    other = Ideal(L2, [g0 + g1, g1] + list(I.gens[2:]))
    assert standard_basis(I).lead_ideal() == standard_basis(other).lead_ideal()
