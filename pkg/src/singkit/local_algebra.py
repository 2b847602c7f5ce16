"""Quotients of the formal local ring: bases, dimensions, Milnor/Tjurina data."""

import math
from dataclasses import dataclass

from .errors import NotArtinian, SubstitutionDiverged
from .linalg import nullspace, rank
from .polynomial import Ideal, PolyRing, jacobian_ideal, monomials_of_degree, tjurina_ideal
from .standard_basis import (nilpotency_bound, reduced_normal_form, standard_basis,
                             standard_monomials)

__all__ = [
    "LocalAlgebra", "kbase", "milnor_number", "tjurina_number", "mult_matrix",
    "annihilator_check", "AnnihilatorReport", "minimal_embedding", "MinimalEmbedding",
    "hilbert_function", "embdim", "local_invariants_at", "as_local",
]


def as_local(ideal):
    """Same ideal viewed in the local (antigraded degrevlex) ring."""
    if ideal.ring.order.is_local:
        return ideal
    return ideal.with_order("local")


class LocalAlgebra:
    """K[[x]]/I with lazily computed standard basis and staircase."""

    def __init__(self, ideal, budget=None):
        self.ideal = as_local(ideal)
        self.budget = budget
        self.ring = self.ideal.ring
        self.field = self.ring.field
        self._sb = None
        self._basis = None
        self._bound = False
        self._nf_cache = {}

    @property
    def sb(self):
        if self._sb is None:
            self._sb = standard_basis(self.ideal, budget=self.budget)
        return self._sb

    @property
    def lead_monomials(self):
        return self.sb.staircase

    @property
    def is_artinian(self):
        return self.bound is not None

    @property
    def bound(self):
        """Least N with m^N contained in the ideal (None when not Artinian)."""
        if self._bound is False:
            self._bound = nilpotency_bound(self.lead_monomials, self.ring.nvars)
        return self._bound

    @property
    def dimension(self):
        if not self.is_artinian:
            return math.inf
        return len(self.basis)

    def __len__(self):
        return self.dimension

    @property
    def basis(self):
        """Standard monomials, descending in the local order."""
        if self._basis is None:
            std = standard_monomials(self.lead_monomials, self.ring.nvars)
            if std is None:
                raise NotArtinian("quotient is not finite dimensional")
            key = self.ring.order.key
            self._basis = sorted(std, key=key, reverse=True)
            self._index = {m: i for i, m in enumerate(self._basis)}
        return self._basis

    def basis_polynomials(self):
        return [self.ring.monomial(m) for m in self.basis]

    def normal_form(self, f):
        """Reduced normal form of f (staircase representative)."""
        return reduced_normal_form(self.ring(f), self.sb)

    def monomial_normal_form(self, m):
        """Reduced normal form of one monomial as {standard monomial: coeff}."""
        m = tuple(m)
        hit = self._nf_cache.get(m)
        if hit is None:
            if sum(m) >= self.bound:
                hit = {}
            else:
                hit = dict(self.normal_form(self.ring.monomial(m)).terms)
            self._nf_cache[m] = hit
        return hit

    def coordinates(self, f):
        """Coefficient vector of the class of f in :attr:`basis`."""
        nf = self.normal_form(f)
        zero = self.field.zero
        v = [zero] * len(self.basis)
        for m, c in nf.terms.items():
            v[self._index[m]] = c
        return v

    def contains(self, f):
        return self.sb.contains(self.ring(f))

    def hilbert_function(self, k):
        std = standard_monomials(self.lead_monomials, self.ring.nvars, limit=k)
        return sum(1 for m in std if sum(m) == k)

    def hilbert_series(self, upto=None):
        if upto is None:
            if not self.is_artinian:
                raise NotArtinian("give an explicit degree range")
            upto = self.bound
        return [self.hilbert_function(k) for k in range(upto + 1)]

    @property
    def embdim(self):
        return self.hilbert_function(1)

    def mult_matrix(self, g):
        """Matrix of multiplication by g; column j holds NF(g * basis[j])."""
        g = self.ring(g)
        cols = [self.coordinates(g * self.ring.monomial(b)) for b in self.basis]
        n = len(self.basis)
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def kbase(A):
    if not isinstance(A, LocalAlgebra):
        A = LocalAlgebra(A)
    return A.basis


def milnor_number(f):
    """Dimension of the Milnor algebra (math.inf for non-isolated critical points)."""
    return LocalAlgebra(jacobian_ideal(_local_poly(f))).dimension


def tjurina_number(f):
    return LocalAlgebra(tjurina_ideal(_local_poly(f))).dimension


def _local_poly(f):
    if f.ring.order.is_local:
        return f
    return f.change_ring(f.ring.with_order("local"))


def mult_matrix(A, g):
    if not isinstance(A, LocalAlgebra):
        A = LocalAlgebra(A)
    return A.mult_matrix(g)


def hilbert_function(A, k):
    if not isinstance(A, LocalAlgebra):
        A = LocalAlgebra(A)
    return A.hilbert_function(k)


def embdim(A):
    if not isinstance(A, LocalAlgebra):
        A = LocalAlgebra(A)
    return A.embdim


@dataclass
class AnnihilatorReport:
    milnor: int
    tjurina: int
    ann_dimension: int
    equals_maximal_ideal: bool
    mf_in_mJ: bool


def annihilator_check(f):
    """Kernel of multiplication by f on Q(f), and the m*f in m*J(f) test."""
    f = _local_poly(f)
    J = jacobian_ideal(f)
    Q = LocalAlgebra(J)
    if not Q.is_artinian:
        raise NotArtinian("f does not have an isolated critical point")
    M = Q.mult_matrix(f)
    mu = Q.dimension
    r = rank(M)
    ann = mu - r
    tau = LocalAlgebra(tjurina_ideal(f)).dimension
    nonunit = [j for j, b in enumerate(Q.basis) if any(b)]
    kills_m = all(not M[i][j] for j in nonunit for i in range(mu))
    ring = f.ring
    mJ = Ideal(ring, [x * d for x in ring.gens for d in J.gens])
    sb_mJ = standard_basis(mJ)
    in_mJ = all(sb_mJ.contains(x * f) for x in ring.gens)
    return AnnihilatorReport(mu, tau, ann, ann == mu - 1 and tau == mu - 1 and kills_m, in_mJ)


# minimal embedding ----------------------------------------------------------------

@dataclass
class MinimalEmbedding:
    variables: tuple
    ideal: Ideal
    substitutions: dict  # eliminated variable -> polynomial in the original ring

    def __iter__(self):
        yield self.variables
        yield self.ideal


def _pick_linear(gens, ring):
    """(generator index, variable index) for a generator with a linear term."""
    best = None
    for gi, g in enumerate(gens):
        lin = g.linear_coefficients()
        cand = [i for i, c in enumerate(lin) if c]
        if not cand:
            continue
        # prefer a variable that does not occur elsewhere in g
        for i in reversed(cand):
            rest = g - ring.gen(i) * lin[i]
            if i not in rest.used_variables():
                return gi, i, False
        if best is None:
            best = (gi, cand[-1], True)
    return best


def minimal_embedding(ideal, verify=True):
    """Eliminate variables occurring linearly in generators.

    Returns a :class:`MinimalEmbedding` whose ideal lives in the remaining
    variables and has an isomorphic quotient.
    """
    ideal = as_local(ideal)
    ring0 = ideal.ring
    gens = [g for g in ideal.gens if g]
    subs = {}
    active = list(range(ring0.nvars))
    bound = None
    while True:
        pick = _pick_linear(gens, ring0)
        if pick is None:
            break
        gi, vi, selfref = pick
        g = gens.pop(gi)
        c = g.linear_coefficients()[vi]
        x = ring0.gen(vi)
        h = g - x * c
        if not selfref:
            expr = -h / c
        else:
            if bound is None:
                # eliminated variables no longer occur; kill them explicitly
                gone = [ring0.gen(i) for i in range(ring0.nvars) if i not in active]
                A = LocalAlgebra(Ideal(ring0, gens + [g] + gone))
                bound = A.bound
                if bound is None:
                    raise SubstitutionDiverged(
                        f"{ring0.variables[vi]} appears in its own tail and the quotient is not Artinian")
            expr = ring0.zero
            images = list(ring0.gens)
            for _ in range(bound + 1):
                images[vi] = expr
                new = (-h / c).compose(images, ring0, bound)
                if new == expr:
                    break
                expr = new
            else:
                raise SubstitutionDiverged("fixed-point substitution did not stabilise")
        images = list(ring0.gens)
        images[vi] = expr
        gens = [p.compose(images, ring0, bound) for p in gens]
        gens = [p for p in gens if p]
        active.remove(vi)
        if bound is not None:
            # truncation dropped terms of m^bound; keep m^bound itself in the ideal
            rest = [i for i in active]
            for m in monomials_of_degree(len(rest), bound):
                e = [0] * ring0.nvars
                for i, k in zip(rest, m):
                    e[i] = k
                mono = ring0.monomial(tuple(e))
                if mono not in gens:
                    gens.append(mono)
        for k, v in subs.items():
            subs[k] = v.compose(images, ring0, bound)
        subs[ring0.variables[vi]] = expr
    names = tuple(ring0.variables[i] for i in active)
    sub_ring = PolyRing(names, ring0.field, "local")
    new_ideal = Ideal(sub_ring, [p.change_ring(sub_ring) for p in gens])
    emb = MinimalEmbedding(names, new_ideal, subs)
    if verify:
        _verify_embedding(ideal, emb)
    return emb


def _verify_embedding(ideal, emb):
    ring0 = ideal.ring
    sub_ring = emb.ideal.ring
    sb_new = standard_basis(emb.ideal)
    images = []
    for v in ring0.variables:
        if v in emb.substitutions:
            images.append(emb.substitutions[v].change_ring(sub_ring))
        else:
            images.append(sub_ring.gen(v))
    bound = sb_new.bound
    for g in ideal.gens:
        if sb_new.normal_form(g.compose(images, sub_ring, bound)):
            raise SubstitutionDiverged(f"generator {g} does not map into the embedded ideal")
    sb_old = standard_basis(ideal)
    for p in emb.ideal.gens:
        if sb_old.normal_form(p.change_ring(ring0)):
            raise SubstitutionDiverged(f"embedded generator {p} is not in the original ideal")


def local_invariants_at(f, point):
    """(mu, tau) of the germ of f at ``point`` (exact coordinates)."""
    f = _local_poly(f)
    ring = f.ring
    images = [x + ring.constant(p) for x, p in zip(ring.gens, point)]
    g = f.compose(images, ring)
    c = g.constant_coeff()
    mu = LocalAlgebra(Ideal(ring, [g.diff(i) for i in range(ring.nvars)])).dimension
    if c:
        return mu, 0
    tau = LocalAlgebra(tjurina_ideal(g)).dimension
    return mu, tau
