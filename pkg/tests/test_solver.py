from singkit.numbers import QQ, NumberField, mpq
from singkit.polynomial import Ideal, PolyRing
from singkit.solver import solve_parameter_system, univariate_roots

P2 = PolyRing(("a1", "a2"), QQ, "global")
P1 = PolyRing(("a",), QQ, "global")


def test_two_parameter_point():
    a1, a2 = P2.gens
    sol = solve_parameter_system(Ideal(P2, [a1 ** 2, a1 * a2]), [a2])
    assert sol.status == "solved"
    assert sol.point(P2.variables) == [0, 1]


def test_unit_ideal_is_impossible():
    sol = solve_parameter_system(Ideal(P2, [P2.one]), [P2.gen(1)])
    assert sol.status == "certified-impossible"
    assert not sol.ok


def test_quadratic_root_adjoined():
    (a,) = P1.gens
    sol = solve_parameter_system(Ideal(P1, [a ** 2 - 2]), [a])
    assert sol.status == "solved"
    K = sol.field
    assert isinstance(K, NumberField) and K.degree == 2
    (v,) = sol.point(P1.variables)
    assert v * v == K.convert(2)


def test_minor_excludes_the_only_root():
    (a,) = P1.gens
    sol = solve_parameter_system(Ideal(P1, [a ** 3]), [a])
    assert sol.status == "certified-impossible"


def test_univariate_roots():
    # (t - 1/2)(t^2 - 3)
    roots, factors = univariate_roots([mpq(3, 2), mpq(-3), mpq(-1, 2), 1])
    assert roots == [mpq(1, 2)]
    assert factors == [[mpq(-3), 0, 1]]
    K = NumberField([-3, 0, 1])
    roots, _ = univariate_roots([mpq(3, 2), mpq(-3), mpq(-1, 2), 1], K)
    assert sorted(str(r) for r in roots) == sorted(["1/2", "theta", "-theta"])


def test_minor_tests_record_both_readings():
    from singkit.solver import minor_tests
    (a,) = P1.gens
    # a is not in (a^2) but vanishes on V(a^2): only the radical test refuses
    t = minor_tests(Ideal(P1, [a ** 2]), [a])
    assert (t.printed, t.radical) == (True, False)
    a1, a2 = P2.gens
    t = minor_tests(Ideal(P2, [a1 ** 2, a1 * a2]), [a2])
    assert (t.printed, t.radical) == (True, True)
    t = minor_tests(Ideal(P2, [a1 ** 2, a1 * a2]), [a1])
    assert (t.printed, t.radical) == (True, False)
