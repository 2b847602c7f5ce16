"""Closed-form modular-stratum ideals I(p,q,r) of the hyperbolic T-series.

The miniversal deformation of x^p + y^q + z^r + xyz is taken in the
parameters t1..tp (monomials x^(p-1), ..., x, 1), u1..u(q-1) and
v1..v(r-1).  Besides the generators that are linear in t_i, u_i, v_i
(i >= 2) the ideal has three mixed generators in t1, u1, v1, which is all
that survives a minimal embedding.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import IndexOutOfRange, ParabolicBase
from .numbers import QQ, mpq
from .polynomial import Ideal, PolyRing

__all__ = [
    "coefficient_a", "coefficient_c", "coefficient_d", "coefficient_e",
    "ModularIdealData", "modular_ideal", "reduced_modular_ideal",
    "SubseriesProfile", "subseries_profile", "vanishing_index",
    "is_hyperbolic", "is_parabolic", "hyperbolic_triples", "SUBSERIES",
    "PARABOLIC_TRIPLES", "subseries_of",
]

# parabolic index triples, sorted descending
PARABOLIC_TRIPLES = ((3, 3, 3), (4, 4, 2), (6, 3, 2))

# (q, r, l): the family (T_{k,q,r}) for k >= l
SUBSERIES = ((3, 3, 4), (4, 2, 5), (4, 4, 3), (3, 2, 7), (6, 2, 4), (6, 3, 3))


def _unit_sum(p, q, r):
    """Sign of 1 - 1/p - 1/q - 1/r as an exact fraction."""
    return 1 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)


def is_parabolic(p, q, r):
    return _unit_sum(p, q, r) == 0


def is_hyperbolic(p, q, r):
    return _unit_sum(p, q, r) > 0


def coefficient_a(p, q, r):
    """a(p,q,r) = pqr - qr - pr - pq."""
    return mpq(p * q * r - q * r - p * r - p * q)


def _product_coefficient(i, a, factors):
    if a == 0:
        raise ParabolicBase("a(p,q,r) = 0: parabolic indices have no I(p,q,r)")
    num = mpq(1)
    for k in range(1, i + 1):
        num *= factors(k)
    return num / (factorial(i) * a ** (i - 2))


def coefficient_c(p, q, r, i):
    a = coefficient_a(p, q, r)
    return _product_coefficient(i, a, lambda k: coefficient_a(p - k + 1, q, r))


def coefficient_d(p, q, r, i):
    a = coefficient_a(p, q, r)
    return _product_coefficient(i, a, lambda k: coefficient_a(p, q - k + 1, r))


def coefficient_e(p, q, r, i):
    a = coefficient_a(p, q, r)
    return _product_coefficient(i, a, lambda k: coefficient_a(p, q, r - k + 1))


@dataclass
class ModularIdealData:
    indices: tuple
    ring: PolyRing
    a: object
    c: dict
    d: dict
    e: dict
    generators: list
    reduced_ring: PolyRing = None
    reduced_generators: list = field(default_factory=list)

    @property
    def ideal(self):
        return Ideal(self.ring, self.generators)

    @property
    def reduced(self):
        return Ideal(self.reduced_ring, self.reduced_generators)

    @property
    def tau(self):
        return self.ring.nvars

    @property
    def mixed_coefficients(self):
        p, q, r = self.indices
        return self.c[p], self.d[q], self.e[r]


def _check_indices(p, q, r):
    for v in (p, q, r):
        if int(v) != v or v < 2:
            raise IndexOutOfRange(f"indices must be integers >= 2, got {(p, q, r)}")
    if _unit_sum(p, q, r) < 0:
        raise IndexOutOfRange(f"1/p + 1/q + 1/r > 1 for {(p, q, r)}")
    if _unit_sum(p, q, r) == 0:
        raise ParabolicBase(f"{(p, q, r)} is parabolic")


def modular_ideal(p, q, r, field=QQ):
    """All generators of I(p,q,r) together with the coefficient data."""
    _check_indices(p, q, r)
    names = ([f"t{i}" for i in range(1, p + 1)] + [f"u{i}" for i in range(1, q)]
             + [f"v{i}" for i in range(1, r)])
    ring = PolyRing(names, field, "local")
    a = coefficient_a(p, q, r)
    c = {i: coefficient_c(p, q, r, i) for i in range(2, p + 1)}
    d = {i: coefficient_d(p, q, r, i) for i in range(2, q + 1)}
    e = {i: coefficient_e(p, q, r, i) for i in range(2, r + 1)}
    t = lambda i: ring.gen(f"t{i}")  # noqa: E731
    u = lambda i: ring.gen(f"u{i}")  # noqa: E731
    v = lambda i: ring.gen(f"v{i}")  # noqa: E731
    a2 = a * a
    gens = [t(i) * a2 - t(1) ** i * c[i] for i in range(2, p + 1)]
    gens += [u(i) * a2 - u(1) ** i * d[i] for i in range(2, q)]
    gens += [v(i) * a2 - v(1) ** i * e[i] for i in range(2, r)]
    mixed = _mixed(ring, t(1), u(1), v(1), p, q, r, c[p], d[q], e[r])
    gens += mixed
    rring = PolyRing(("t1", "u1", "v1"), field, "local")
    rmixed = _mixed(rring, *rring.gens, p, q, r, c[p], d[q], e[r])
    return ModularIdealData((p, q, r), ring, a, c, d, e, gens, rring, rmixed)


def _mixed(ring, t1, u1, v1, p, q, r, cp, dq, er):
    return [u1 * v1 - t1 ** (p - 1) * cp,
            t1 * v1 - u1 ** (q - 1) * dq,
            t1 * u1 - v1 ** (r - 1) * er]


def reduced_modular_ideal(p, q, r, field=QQ):
    """The three mixed generators in t1, u1, v1."""
    return modular_ideal(p, q, r, field).reduced


# sub-series combinatorics -----------------------------------------------------------

def vanishing_index(n, q, r):
    """The k <= n with 1/k + 1/q + 1/r = 1, or None (integer arithmetic only)."""
    den = q * r - q - r
    if den <= 0 or (q * r) % den:
        return None
    k = (q * r) // den
    return k if k <= n else None


@dataclass(frozen=True)
class SubseriesProfile:
    vanishing: frozenset
    line_components: int


def subseries_profile(p, q, r):
    """Which of c_p, d_q, e_r vanish, decided by the divisor criterion."""
    _check_indices(p, q, r)
    van = set()
    if vanishing_index(p, q, r) is not None:
        van.add("c_p")
    if vanishing_index(q, p, r) is not None:
        van.add("d_q")
    if vanishing_index(r, p, q) is not None:
        van.add("e_r")
    return SubseriesProfile(frozenset(van), len(van))


def subseries_of(p, q, r):
    """(q', r', l) of a sub-series containing T_{p,q,r} in some index order, else None."""
    trip = (p, q, r)
    for k_pos in range(3):
        k = trip[k_pos]
        rest = sorted((trip[j] for j in range(3) if j != k_pos), reverse=True)
        for qq, rr, l in SUBSERIES:
            if (qq, rr) == tuple(rest) and k >= l:
                return qq, rr, l, k_pos
    return None


def hyperbolic_triples(max_tau=None, max_sum=None):
    """All hyperbolic (p, q, r) with p >= q >= r >= 2 within the given bound."""
    if max_sum is None:
        if max_tau is None:
            raise ValueError("give max_tau or max_sum")
        max_sum = max_tau + 2
    out = []
    for p in range(2, max_sum + 1):
        for q in range(2, p + 1):
            for r in range(2, q + 1):
                if p + q + r <= max_sum and _unit_sum(p, q, r) > 0:
                    out.append((p, q, r))
    out.sort(key=lambda t: (sum(t), t))
    return out
