import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from singkit.catalog import load_example
from singkit.errors import NotAmbient, SymmetricException
from singkit.isomorphy import (AlgebraMap, Ansatz, check_ambient_isomorphism, coefficient_ideal,
                               coefficient_map, find_surjection, isomorphy_prechecks,
                               solve_diagonal, specialized_reduction, symmetric_exception_map,
                               verify)
from singkit.local_algebra import LocalAlgebra
from singkit.modular import coefficient_c, coefficient_d, coefficient_e, reduced_modular_ideal
from singkit.numbers import QQ, mpq
from singkit.polynomial import Ideal, PolyRing, jacobian_ideal

R1 = PolyRing(("x",), QQ, "local")
S1 = PolyRing(("s",), QQ, "local")
X3 = PolyRing(("x", "y", "z"), QQ, "local")


def test_toy_coefficient_ideal():
    (x,) = R1.gens
    (s,) = S1.gens
    B = LocalAlgebra(Ideal(R1, [x ** 2]))
    an = Ansatz.build(("s",), B, allow_constant=True)
    a1, a2 = an.params.gens
    (row,) = coefficient_map(Ideal(S1, [s ** 2]), B, an)
    assert row == {(0,): a1 ** 2, (1,): 2 * a1 * a2}
    J = coefficient_ideal(Ideal(S1, [s ** 2]), B, an)
    assert sorted(str(g) for g in J.gens) == ["2*a1_1*a1_2", "a1_1^2"]
    assert coefficient_ideal(Ideal(S1, [S1.zero]), B, an).gens == ()


def test_w12_coefficients_lie_on_the_variety():
    ex = load_example("w12")
    B = LocalAlgebra(jacobian_ideal(ex.polynomial))
    an = Ansatz.from_shape(ex.stratum.ring.variables, B, ex.shape)
    values = {}
    for i, s in enumerate(an.source):
        img = ex.map.image(s)
        for j in an.mask[i]:
            values[an.params.variables[an.index[(i, j)]]] = img.coeff(an.basis[j])
    K = ex.map.field
    point = [K.convert(values[v]) for v in an.params.variables]
    for g in coefficient_ideal(ex.stratum, B, an).gens:
        assert g.change_ring(g.ring.with_field(K)).evaluate(point) == K.zero


def test_find_surjection_toy_cases():
    (x,) = R1.gens
    (s,) = S1.gens
    A3, B2 = Ideal(S1, [s ** 3]), Ideal(R1, [x ** 2])
    res = find_surjection(A3, B2)
    assert not res.found
    res = find_surjection(A3, B2, isomorphism=False)
    assert res.found and str(res.map) == "s -> x"
    assert verify(res.map, A3, B2).verdict == "surjection"


def test_verify_identity_and_perturbed_w12():
    x, y, z = X3.gens
    I = jacobian_ideal(x ** 3 + y ** 4 + z ** 5)
    ident = AlgebraMap(("x", "y", "z"), X3, [x, y, z])
    assert verify(ident, I, I).is_isomorphism
    ex = load_example("w12")
    B = jacobian_ideal(ex.polynomial)
    assert verify(ex.map, ex.stratum, B).is_isomorphism
    imgs = list(ex.map.images)
    ring = ex.map.target
    imgs[1] = imgs[1] + ring.gen("x")
    bad = verify(AlgebraMap(ex.map.source, ring, imgs), ex.stratum, B)
    assert bad.verdict == "failure" and bad.witness


def test_ambient_examples():
    x, y, z = X3.gens
    I444 = reduced_modular_ideal(4, 4, 4)
    m = AlgebraMap(("t1", "u1", "v1"), X3, [x, y, z])
    assert check_ambient_isomorphism(m, I444, jacobian_ideal(x * y * z)).is_isomorphism
    sol = solve_diagonal(5, 3, 3)
    assert sol.kind == "subseries" and sol.certify().is_isomorphism
    sol = symmetric_exception_map(6, 6, 3)
    assert str(sol.target_polynomial) == "x^3 + x*y*z"
    assert sol.certify().is_isomorphism
    with pytest.raises(NotAmbient):
        check_ambient_isomorphism(AlgebraMap(("t1", "u1", "v1"), X3, [x, x, z]), I444,
                                  jacobian_ideal(x * y * z))


def test_solve_diagonal_scalar_equations():
    sol = solve_diagonal(5, 4, 3)
    a, b, g = sol.scalars
    cp, dq, er = coefficient_c(5, 4, 3, 5), coefficient_d(5, 4, 3, 4), coefficient_e(5, 4, 3, 3)
    assert cp * a ** 4 == -5 * b * g
    assert dq * b ** 3 == -4 * a * g
    assert er * g ** 2 == -3 * a * b
    assert sol.certify().is_isomorphism
    with pytest.raises(SymmetricException):
        solve_diagonal(4, 4, 4)
    assert symmetric_exception_map(4, 4, 4).scalars == (1, 1, 1)


@pytest.mark.parametrize("pqr", [(5, 4, 3), (6, 4, 3), (5, 5, 4)])
def test_inverse_diagonal_map_certifies(pqr):
    sol = solve_diagonal(*pqr)
    K = sol.field
    R = PolyRing(("t1", "u1", "v1"), K, "local")
    # each image is c * (one target variable); invert variable by variable
    back = {}
    for src, img in zip(sol.map.source, sol.map.images):
        ((m, c),) = img.terms.items()
        back[img.ring.variables[m.index(1)]] = R.gen(src) * (1 / c)
    inv = AlgebraMap(("x", "y", "z"), R, [back[v] for v in ("x", "y", "z")])
    assert check_ambient_isomorphism(inv, sol.target_ideal, sol.source_ideal).is_isomorphism


# properties ----------------------------------------------------------------------

@st.composite
def small_pairs(draw):
    """Artinian quotients of C{x,y} and ansatz values."""
    a, b = draw(st.integers(2, 4)), draw(st.integers(2, 4))
    R = PolyRing(("x", "y"), QQ, "local")
    x, y = R.gens
    c = mpq(draw(st.integers(-2, 2)))
    B = LocalAlgebra(Ideal(R, [x ** a + c * y ** 2, y ** b + c * x * y]))
    assume(B.is_artinian)
    S = PolyRing(("s1", "s2"), QQ, "local")
    s1, s2 = S.gens
    d = mpq(draw(st.integers(-2, 2)))
    I_A = Ideal(S, [s1 ** 2 + d * s1 * s2, s2 ** 3 - s1 * s2 ** 2, s1 * s2 + d * s2 ** 2])
    return I_A, B, draw(st.integers(0, 10 ** 6))


@settings(max_examples=100)
@given(small_pairs())
def test_specialization_commutes_with_reduction(data):
    I_A, B, seed = data
    an = Ansatz.build(I_A.ring.variables, B)
    rows = coefficient_map(I_A, B, an)
    rnd = random.Random(seed)
    values = {v: mpq(rnd.randint(-5, 5), rnd.randint(1, 4)) for v in an.params.variables}
    point = [values[v] for v in an.params.variables]
    special = specialized_reduction(I_A, B, an, values)
    for row, nf in zip(rows, special):
        evald = {m: c.evaluate(point) for m, c in row.items()}
        assert {m: c for m, c in evald.items() if c} == dict(nf.terms)


@settings(max_examples=20)
@given(st.integers(2, 5), st.integers(2, 5), st.integers(-2, 2))
def test_found_maps_always_verify(a, b, c):
    R = PolyRing(("x", "y"), QQ, "local")
    x, y = R.gens
    I_B = Ideal(R, [x ** a + c * x * y, y ** b])
    S = PolyRing(("s", "t"), QQ, "local")
    s, t = S.gens
    # a linear change of coordinates of the same ideal
    I_A = Ideal(S, [(s + t) ** a + c * (s + t) * t, t ** b])
    res = find_surjection(I_A, I_B, budget=20)
    pre = isomorphy_prechecks(I_A, I_B)
    assert pre.ok
    assert res.found
    assert verify(res.map, I_A, I_B).is_isomorphism
