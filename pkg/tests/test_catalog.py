import pytest
import sympy as sp

from oracles import global_quotient_dim, hessian_det, to_sympy
from singkit.catalog import (BasisNotIndependent, BasisWrongSize, hesse_form, is_quasihomogeneous,
                             limit_singularity, load_catalog, load_example,
                             miniversal_deformation, parse_deformation, splitting_family,
                             t_series, validate_entry)
from singkit.errors import DegenerateLambda, IndexOutOfRange, NotASubseries
from singkit.local_algebra import LocalAlgebra, milnor_number, tjurina_number
from singkit.numbers import QQ, NumberField, mpq
from singkit.polynomial import PolyRing, jacobian_ideal

INF = float("inf")
X2 = PolyRing(("x", "y"), QQ, "local")
X3 = PolyRing(("x", "y", "z"), QQ, "local")


def test_t_series_examples():
    f = t_series(3, 3, 3)
    assert milnor_number(f) == tjurina_number(f) == 8
    with pytest.raises(DegenerateLambda):
        t_series(3, 3, 3, -3)
    assert milnor_number(t_series(3, 3, 3, -3, check=False)) == INF
    with pytest.raises(IndexOutOfRange):
        t_series(2, 2, 2)


def test_degenerate_lambda_over_extensions():
    K = NumberField([-8, 0, 1])
    R = PolyRing(("x", "y", "z"), K, "local")
    with pytest.raises(DegenerateLambda):
        t_series(4, 4, 2, K.gen, ring=R)
    assert milnor_number(t_series(4, 4, 2, K.gen, ring=R, check=False)) == INF


def test_hesse_examples():
    x, y, z = X3.gens
    assert hesse_form(x ** 3 + y ** 7 + z ** 2) == 504 * x * y ** 5
    (u,) = PolyRing(("u",), QQ, "local").gens
    assert hesse_form(u ** 2) == u.ring.constant(2)


def test_hesse_against_sympy_on_the_table():
    for e in load_catalog():
        f0 = e.quasihomogeneous_part
        names = f0.ring.variables
        h = hesse_form(f0)
        assert to_sympy(h, names) == hessian_det(to_sympy(f0, names), names)


def test_miniversal_examples():
    a, b = X2.gens
    d = miniversal_deformation(a ** 2 + b ** 2)
    R = d.ring
    assert d.polynomial == R.gen("x") ** 2 + R.gen("y") ** 2 + R.gen("s1")
    f = t_series(5, 4, 3)
    x, y, z = f.ring.gens
    basis = [x ** i for i in range(4, -1, -1)] + [y ** 3, y ** 2, y, z ** 2, z]
    d = miniversal_deformation(f, basis, prefix="t")
    assert d.parameters == tuple(f"t{i}" for i in range(1, 11))
    with pytest.raises(BasisWrongSize):
        miniversal_deformation(f, basis[:-1])
    with pytest.raises(BasisNotIndependent):
        miniversal_deformation(f, basis[:-1] + [x ** 4])


def test_w12_family_with_printed_basis():
    ex = load_example("w12")
    d = miniversal_deformation(ex.polynomial, ex.basis)
    assert len(d.parameters) == 11


def test_splitting_family_examples():
    fam = splitting_family(5, 4, 3, 3)
    assert fam.fiber(0) == t_series(5, 3, 3)
    rep = fam.fiber_report(1)
    assert (rep.origin_tau, rep.total_tau, rep.expected_tau) == (8, 9, 9)
    rep = splitting_family(4, 4, 3, 3).fiber_report(1)
    assert rep.origin_tau == 8 == rep.total_tau
    with pytest.raises(NotASubseries):
        splitting_family(5, 4, 4, 4)
    with pytest.raises(NotASubseries):
        splitting_family(3, 4, 3, 3)


@pytest.mark.parametrize("klqr", [(5, 4, 3, 3), (6, 4, 3, 3), (6, 5, 4, 2), (7, 5, 4, 2)])
def test_global_tau_against_sympy(klqr):
    fam = splitting_family(*klqr)
    f = fam.fiber(1)
    names = ["x", "y", "z"]
    e = to_sympy(f, names)
    polys = [e] + [sp.diff(e, s) for s in sp.symbols(names)]
    assert fam.fiber_report(1).total_tau == global_quotient_dim(polys, names)


def test_splitting_family_at_zero_is_the_t_series():
    for k, l, q, r in [(5, 4, 3, 3), (6, 5, 4, 2), (9, 7, 3, 2), (6, 4, 6, 2)]:
        assert splitting_family(k, l, q, r).fiber(0) == t_series(k, q, r)


def test_limit_singularities():
    f = limit_singularity(3, 3)
    x, y, z = f.ring.gens
    assert f == y ** 3 + z ** 3 + x * y * z
    assert milnor_number(f) == INF
    g = limit_singularity(4, 2)
    x, y, z = g.ring.gens
    assert g == y ** 4 + z ** 2 + x * y * z
    for d in jacobian_ideal(f).gens:
        assert d.subs({"y": 0, "z": 0}).is_zero()


def test_quasihomogeneity():
    x, y, z = X3.gens
    assert is_quasihomogeneous(x ** 3 + y ** 3 + z ** 3 + x * y * z)
    assert not is_quasihomogeneous(x ** 5 + y ** 4 + z ** 3 + x * y * z)
    assert is_quasihomogeneous(x ** 2 + y ** 2 + z ** 2)


def test_parabolic_mu_equals_tau():
    for p, q, r in [(3, 3, 3), (4, 4, 2), (6, 3, 2)]:
        f = t_series(p, q, r)
        assert milnor_number(f) == tjurina_number(f) == p + q + r - 1


# the table ----------------------------------------------------------------------

CAT = load_catalog()


def test_table_shape():
    assert len(CAT) == 14
    assert CAT.names[:3] == ["E12", "E13", "E14"]


@pytest.mark.parametrize("name", CAT.names)
def test_rows(name):
    e = CAT[name]
    v = validate_entry(e, stratum=False)
    if name in ("E13", "E14"):
        assert not v.verified
        return
    assert v.verified
    assert v.tau == v.basis_count and v.mu == v.tau + 1
    assert v.hesse_ok and v.basis_independent
    f = e.polynomial
    assert is_quasihomogeneous(f) == (milnor_number(f) == tjurina_number(f))


def test_z11_double_parameter_summand():
    e = CAT["Z11"]
    R = PolyRing(("x", "y") + tuple(f"s{i}" for i in range(1, 11)), QQ, "local")
    terms, notes = parse_deformation("s7*y s8*x^2", R)
    assert len(terms) == 2 and notes
    assert e.name == "Z11"
