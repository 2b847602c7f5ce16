import pytest
import sympy as sp

import oracles
from singkit.errors import IndexOutOfRange, ParabolicBase
from singkit.local_algebra import LocalAlgebra, minimal_embedding
from singkit.modular import (SUBSERIES, coefficient_a, coefficient_c, coefficient_d, coefficient_e,
                             hyperbolic_triples, modular_ideal, reduced_modular_ideal,
                             subseries_of, subseries_profile, vanishing_index)
from singkit.numbers import mpq


def test_coefficient_a():
    assert coefficient_a(3, 3, 3) == 0
    assert coefficient_a(4, 3, 3) == 3
    assert coefficient_a(5, 4, 3) == 13


def test_coefficient_c_examples():
    assert coefficient_c(5, 4, 3, 2) == 52
    assert coefficient_c(4, 3, 3, 4) == 0
    assert coefficient_d(4, 3, 3, 3) == coefficient_e(4, 3, 3, 3)
    with pytest.raises(ParabolicBase):
        coefficient_c(3, 3, 3, 2)


@pytest.mark.parametrize("pqr", hyperbolic_triples(max_sum=16))
def test_coefficients_against_sympy(pqr):
    p, q, r = pqr
    for i in range(2, p + 1):
        want = oracles.coefficient_c(p, q, r, i)
        assert coefficient_c(p, q, r, i) == mpq(int(want.p), int(want.q))
    for i in range(2, q + 1):
        want = oracles.coefficient_c(q, p, r, i)   # d is c with the roles of p and q exchanged
        assert coefficient_d(p, q, r, i) == mpq(int(want.p), int(want.q))


def test_generator_pattern():
    data = modular_ideal(5, 4, 3)
    assert data.tau == 10
    assert len(data.ideal.ring.variables) == 10
    # f_i, g_i, h_i plus the three mixed generators
    assert len([g for g in data.ideal.gens if g]) == (5 - 1) + (4 - 2) + (3 - 2) + 3
    emb = minimal_embedding(data.ideal)
    assert set(emb.variables) == {"t1", "u1", "v1"}
    red = reduced_modular_ideal(5, 4, 3)
    assert LocalAlgebra(emb.ideal).dimension == LocalAlgebra(red).dimension == 11


def test_reduced_examples():
    assert [str(g) for g in reduced_modular_ideal(4, 4, 4).gens] == ["u1*v1", "t1*v1", "t1*u1"]
    red = reduced_modular_ideal(4, 3, 3)
    d3 = coefficient_d(4, 3, 3, 3)
    t1, u1, v1 = red.ring.gens
    assert list(red.gens) == [u1 * v1, t1 * v1 - d3 * u1 ** 2, t1 * u1 - d3 * v1 ** 2]
    assert not LocalAlgebra(red).is_artinian


def test_parabolic_and_range_errors():
    with pytest.raises(ParabolicBase):
        modular_ideal(3, 3, 3)
    with pytest.raises((IndexOutOfRange, ParabolicBase)):
        modular_ideal(2, 2, 2)


def test_profiles():
    assert subseries_profile(5, 4, 3).line_components == 0
    assert subseries_profile(6, 4, 2).vanishing == {"c_p", "d_q"}
    assert subseries_profile(4, 4, 4).line_components == 3


@pytest.mark.parametrize("pqr", hyperbolic_triples(max_sum=20))
def test_vanishing_agrees_with_coefficients(pqr):
    p, q, r = pqr
    prof = subseries_profile(p, q, r)
    assert (coefficient_c(p, q, r, p) == 0) == ("c_p" in prof.vanishing)
    assert (coefficient_d(p, q, r, q) == 0) == ("d_q" in prof.vanishing)
    assert (coefficient_e(p, q, r, r) == 0) == ("e_r" in prof.vanishing)


@pytest.mark.parametrize("pqr", hyperbolic_triples(max_sum=22))
def test_dimension_law(pqr):
    p, q, r = pqr
    A = LocalAlgebra(reduced_modular_ideal(p, q, r))
    if subseries_profile(p, q, r).vanishing:
        assert not A.is_artinian
    else:
        assert A.dimension == p + q + r - 1


@pytest.mark.parametrize("pqr", [(5, 4, 3), (6, 4, 3), (7, 5, 2), (5, 5, 4)])
def test_permutation_symmetry(pqr):
    p, q, r = pqr
    a = reduced_modular_ideal(p, q, r)
    b = reduced_modular_ideal(q, p, r)
    # swap the roles of t and u
    t1, u1, v1 = a.ring.gens
    moved = {str(g.compose([u1, t1, v1], a.ring)) for g in b.gens}
    assert moved == {str(g) for g in a.gens}


def test_vanishing_index_is_integer_arithmetic():
    assert vanishing_index(10, 3, 3) == 3
    assert vanishing_index(10, 4, 2) == 4
    assert vanishing_index(10, 5, 4) is None
    assert vanishing_index(2, 3, 3) is None


def test_subseries_membership():
    for q, r, l in SUBSERIES:
        assert sp.Rational(1, l) + sp.Rational(1, q) + sp.Rational(1, r) < 1 or l == 0
        assert subseries_of(l, q, r) is not None
    assert subseries_of(5, 4, 3) is None
