"""Maps between local algebras: ansatz search and certification.

A local homomorphism K[[s]] -> K[[x]] is written with undetermined
coefficients, ``s_i -> sum_j a_ij f_j`` over a basis f_j of the target
algebra B.  Reducing the images of the generators of I_A modulo I_B gives
polynomials whose x-coefficients generate the coefficient ideal J in the
a_ij.  A point of V(J) where some maximal minor of the linear part does not
vanish gives a surjection A -> B; with dim A = dim B it is an isomorphism.

Non-Artinian quotients are compared by an ambient coordinate change instead
(:func:`check_ambient_isomorphism`).
"""

import math
import time
from dataclasses import dataclass, field as dc_field

from .errors import (FieldMismatch, NotAmbient, NotArtinian, SymmetricException,
                     UnsupportedRootDegree)
from .linalg import determinant, rank, smith_normal_form
from .local_algebra import LocalAlgebra, as_local, minimal_embedding
from .modular import (coefficient_a, modular_ideal, subseries_profile, vanishing_index,
                      _check_indices)
from .numbers import QQ, NumberField, RadicalAlgebra, mpq, rational_root
from .polynomial import Ideal, PolyRing, jacobian_ideal
from .solver import BUDGET_EXHAUSTED, CERTIFIED_IMPOSSIBLE, budget_seconds, solve_parameter_system
from .standard_basis import StandardBasis, standard_basis

__all__ = [
    "Ansatz", "AlgebraMap", "VerificationReport", "SearchResult", "coefficient_ideal", "coefficient_map",
    "linear_part_minors", "find_surjection", "verify", "check_ambient_isomorphism",
    "solve_diagonal", "DiagonalSolution", "symmetric_exception_map", "isomorphy_prechecks",
    "Prechecks",
]


# maps ---------------------------------------------------------------------------------

class AlgebraMap:
    """Images of the source variables as polynomials in the target ring."""

    def __init__(self, source, target, images):
        self.source = tuple(source)
        self.target = target
        self.images = [target(p) for p in images]
        if len(self.images) != len(self.source):
            raise ValueError("one image per source variable")
        for s, p in zip(self.source, self.images):
            if p.constant_coeff():
                raise ValueError(f"image of {s} has a constant term")

    @property
    def field(self):
        return self.target.field

    def image(self, name):
        return self.images[self.source.index(name)]

    def linear_matrix(self):
        return [p.linear_coefficients() for p in self.images]

    def over(self, fld):
        ring = self.target.with_field(fld)
        return AlgebraMap(self.source, ring, [p.change_ring(ring) for p in self.images])

    def apply(self, g, bound=None):
        """phi(g) for g in a ring whose variables are the source variables."""
        imgs = []
        for v in g.ring.variables:
            if v not in self.source:
                raise ValueError(f"variable {v} has no image")
            imgs.append(self.images[self.source.index(v)])
        return g.compose(imgs, self.target, bound)

    def __str__(self):
        return "\n".join(f"{s} -> {p}" for s, p in zip(self.source, self.images))

    def __repr__(self):
        return f"AlgebraMap({dict(zip(self.source, map(str, self.images)))})"


@dataclass
class Ansatz:
    """Undetermined map s_i -> sum_j a_ij f_j with an optional support mask."""
    source: tuple
    target: LocalAlgebra
    basis: list
    mask: list
    params: PolyRing = None
    index: dict = dc_field(default_factory=dict)

    @classmethod
    def build(cls, source, target, mask=None, allow_constant=False, basis=None):
        basis = list(target.basis) if basis is None else list(basis)
        n = len(source)
        if mask is None:
            mask = [[j for j, m in enumerate(basis) if allow_constant or any(m)] for _ in range(n)]
        else:
            mask = [sorted(set(row)) for row in mask]
            if not allow_constant:
                mask = [[j for j in row if any(basis[j])] for row in mask]
        names = []
        index = {}
        for i, row in enumerate(mask):
            for j in row:
                index[(i, j)] = len(names)
                names.append(f"a{i + 1}_{j + 1}")
        params = PolyRing(names, QQ, "global")
        return cls(tuple(source), target, basis, mask, params, index)

    @classmethod
    def from_shape(cls, source, target, shape):
        """Mask given as ``{source var: [target monomial, ...]}``.

        Monomials outside the target's standard basis are allowed; they are
        appended to the monomial list and reduced when images are composed.
        """
        basis = list(target.basis)
        pos = {m: j for j, m in enumerate(basis)}
        mask = []
        for s in source:
            row = []
            for m in shape.get(s, ()):
                m = tuple(m)
                if len(m) != target.ring.nvars:
                    raise ValueError(f"shape monomial {m} has the wrong number of exponents")
                if m not in pos:
                    pos[m] = len(basis)
                    basis.append(m)
                row.append(pos[m])
            mask.append(row)
        return cls.build(source, target, mask, basis=basis)

    def param(self, i, j):
        return self.params.gen(self.index[(i, j)])

    @property
    def size(self):
        return self.params.nvars

    def generic_images(self, xring):
        """Images with parameter-ring coefficients in ``xring``."""
        out = []
        for i, row in enumerate(self.mask):
            p = xring.zero
            for j in row:
                p = p + xring.monomial(self.basis[j], self.param(i, j))
            out.append(p)
        return out

    def linear_part(self):
        """Linear-part matrix (rows: source, columns: target variables) over the parameters."""
        nv = self.target.ring.nvars
        M = [[self.params.zero] * nv for _ in self.source]
        for (i, j) in self.index:
            m = self.basis[j]
            if sum(m) == 1:
                M[i][m.index(1)] = self.param(i, j)
        return M

    def specialize(self, values, fld=QQ):
        """The map obtained from a parameter point (dict name -> value)."""
        ring = self.target.ring.with_field(fld)
        imgs = []
        for i, row in enumerate(self.mask):
            p = ring.zero
            for j in row:
                name = self.params.variables[self.index[(i, j)]]
                v = values.get(name, 0)
                if v:
                    p = p + ring.monomial(self.basis[j], fld.convert(v))
            imgs.append(p)
        return AlgebraMap(self.source, ring, imgs)


def _source_images(ansatz, source_ring, images):
    out = []
    for v in source_ring.variables:
        if v not in ansatz.source:
            raise ValueError(f"source variable {v} is not covered by the ansatz")
        out.append(images[ansatz.source.index(v)])
    return out


def coefficient_map(I_A, B, ansatz):
    """Per generator of I_A: {standard monomial of B: coefficient in the parameters}."""
    if not isinstance(B, LocalAlgebra):
        B = LocalAlgebra(B)
    if not B.is_artinian:
        raise NotArtinian("target algebra is not finite dimensional")
    xring = PolyRing(B.ring.variables, ansatz.params, "local")
    images = _source_images(ansatz, I_A.ring, ansatz.generic_images(xring))
    out = []
    for a in I_A.gens:
        if not a:
            continue
        comp = a.compose(images, xring, B.bound)
        acc = {}
        for m, c in comp.terms.items():
            for sm, v in B.monomial_normal_form(m).items():
                t = c * v
                prev = acc.get(sm)
                acc[sm] = t if prev is None else prev + t
        out.append({m: c for m, c in sorted(acc.items()) if c})
    return out


def coefficient_ideal(I_A, B, ansatz):
    """Ideal in the parameter ring cut out by phi(I_A) in I_B."""
    gens = [c for row in coefficient_map(I_A, B, ansatz) for c in row.values()]
    return Ideal(ansatz.params, gens)


def specialized_reduction(I_A, B, ansatz, values):
    """Reduced normal forms of the images under the specialized map (for checks)."""
    amap = ansatz.specialize(values)
    return [B.normal_form(amap.apply(a, B.bound)) for a in I_A.gens if a]


def linear_part_minors(ansatz):
    """Maximal minors (size = number of target variables) of the linear part."""
    from itertools import combinations
    M = ansatz.linear_part()
    k = ansatz.target.ring.nvars
    out = []
    if k > len(M):
        return out
    for rs in combinations(range(len(M)), k):
        d = determinant([M[r] for r in rs])
        if d:
            out.append(d)
    return out


# verification -------------------------------------------------------------------------

@dataclass
class VerificationReport:
    verdict: str  # "isomorphism", "surjection" or "failure"
    containment: list
    linear_rank: int
    target_embdim: int
    dim_source: object = None
    dim_target: object = None
    mode: str = "artinian"
    reverse_containment: list = None
    witness: str = None

    @property
    def ok(self):
        return self.verdict != "failure"

    @property
    def is_isomorphism(self):
        return self.verdict == "isomorphism"

    def lines(self):
        out = [f"mode: {self.mode}",
               f"containment: {sum(1 for c in self.containment if not c)}/{len(self.containment)} normal forms vanish",
               f"linear part rank: {self.linear_rank} (target variables: {self.target_embdim})"]
        if self.reverse_containment is not None:
            good = sum(1 for c in self.reverse_containment if not c)
            out.append(f"reverse containment: {good}/{len(self.reverse_containment)} normal forms vanish")
        if self.dim_source is not None:
            out.append(f"dimensions: {_fmt_dim(self.dim_source)} -> {_fmt_dim(self.dim_target)}")
        out.append(f"verdict: {self.verdict}")
        if self.witness:
            out.append(f"witness: {self.witness}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _fmt_dim(d):
    return "inf" if d == math.inf else str(d)


def _common_ring(amap, I_B):
    """Target ring of the map carrying I_B's generators."""
    fb, fm = I_B.ring.field, amap.field
    if fb == fm or fb == QQ:
        ring = amap.target.with_order("local")
        if ring.variables != I_B.ring.variables:
            raise FieldMismatch("map target and I_B use different variables")
        return ring
    if fm == QQ:
        return I_B.ring.with_order("local")
    raise FieldMismatch(f"map coefficients in {fm!r}, target ideal over {fb!r}")


def _lift_sb(ideal, ring):
    """Standard basis of a rational ideal reused over an extension ring."""
    sb = standard_basis(as_local(ideal))
    if sb.ring == ring:
        return sb
    return StandardBasis(ring, [g.change_ring(ring) for g in sb.generators], sb.bound)


def verify(amap, I_A, I_B):
    """Check phi(I_A) in I_B and surjectivity; upgrade to isomorphism when dims agree."""
    ring = _common_ring(amap, I_B)
    amap = AlgebraMap(amap.source, ring, [p.change_ring(ring) for p in amap.images])
    sb = _lift_sb(I_B, ring)
    nfs = [sb.normal_form(amap.apply(a, sb.bound)) for a in I_A.gens if a]
    lin = amap.linear_matrix()
    r = rank(lin) if lin else 0
    m = ring.nvars
    A = LocalAlgebra(I_A)
    B = LocalAlgebra(Ideal(I_B.ring, I_B.gens))
    dA, dB = A.dimension, B.dimension
    witness = None
    bad = [(g, nf) for g, nf in zip([a for a in I_A.gens if a], nfs) if nf]
    if bad:
        witness = f"NF(phi({bad[0][0]})) = {bad[0][1]}"
        verdict = "failure"
    elif r < m:
        witness = f"linear part has rank {r} < {m}"
        verdict = "failure"
    elif dA != math.inf and dA == dB:
        verdict = "isomorphism"
    else:
        verdict = "surjection"
    return VerificationReport(verdict, nfs, r, m, dA, dB, "artinian", None, witness)


def _monic_rational(polys, ring):
    """Monic generators, moved to QQ when all coefficients turn out rational."""
    out = [p.monic() for p in polys if p]
    if ring.field == QQ:
        return out, ring
    rational = all(getattr(c, "is_rational", lambda: True)() for p in out for c in p.terms.values())
    if rational:
        qring = ring.with_field(QQ)
        return [p.map_coeffs(_as_rational, qring) for p in out], qring
    return out, ring


def _as_rational(c):
    if hasattr(c, "coeffs"):
        return c.coeffs[0]
    if hasattr(c, "terms"):
        return c.terms.get(c.algebra.zero_exp, mpq(0))
    return c


def check_ambient_isomorphism(amap, I_A, I_B):
    """Certify phi(I_A) = I_B for an invertible linear coordinate change phi."""
    if len(amap.source) != amap.target.nvars or I_A.ring.nvars != I_B.ring.nvars:
        raise NotAmbient("source and target need the same number of variables")
    ring = _common_ring(amap, I_B)
    amap = AlgebraMap(amap.source, ring, [p.change_ring(ring) for p in amap.images])
    lin = amap.linear_matrix()
    if rank(lin) < ring.nvars:
        raise NotAmbient("linear part of the map is singular")
    images = [amap.apply(a) for a in I_A.gens if a]
    sb_b = _lift_sb(I_B, ring)
    forward = [sb_b.normal_form(p) for p in images]
    gens_img, img_ring = _monic_rational(images, ring)
    sb_img = standard_basis(Ideal(img_ring, gens_img))
    back_ring = img_ring
    reverse = [sb_img.normal_form(g.change_ring(back_ring)) for g in I_B.gens if g]
    dB = LocalAlgebra(Ideal(I_B.ring, I_B.gens)).dimension
    dA = LocalAlgebra(I_A).dimension
    witness = None
    if any(forward):
        k = next(i for i, p in enumerate(forward) if p)
        witness = f"NF(phi(generator {k + 1})) = {forward[k]}"
    elif any(reverse):
        k = next(i for i, p in enumerate(reverse) if p)
        witness = f"target generator {k + 1} has NF {reverse[k]} modulo phi(I_A)"
    verdict = "failure" if witness else "isomorphism"
    return VerificationReport(verdict, forward, ring.nvars, ring.nvars, dA, dB, "ambient",
                              reverse, witness)


# prechecks ------------------------------------------------------------------------------

@dataclass
class Prechecks:
    dimensions: tuple
    embdims: tuple
    hilbert: tuple

    @property
    def ok(self):
        return (self.dimensions[0] == self.dimensions[1] and self.embdims[0] == self.embdims[1]
                and self.hilbert[0] == self.hilbert[1])

    def failures(self):
        out = []
        if self.dimensions[0] != self.dimensions[1]:
            out.append("dimension")
        if self.embdims[0] != self.embdims[1]:
            out.append("embdim")
        if self.hilbert[0] != self.hilbert[1]:
            out.append("hilbert")
        return out


def isomorphy_prechecks(I_A, I_B):
    """Necessary conditions for A = O/I_A and B = O/I_B to be isomorphic."""
    A, B = LocalAlgebra(I_A), LocalAlgebra(I_B)
    dims = (A.dimension, B.dimension)
    emb = (A.embdim, B.embdim)
    if A.is_artinian and B.is_artinian:
        top = max(A.bound, B.bound)
    else:
        top = 6
    hil = (tuple(A.hilbert_function(k) for k in range(top + 1)),
           tuple(B.hilbert_function(k) for k in range(top + 1)))
    return Prechecks(dims, emb, hil)


# search ---------------------------------------------------------------------------------

@dataclass
class SearchResult:
    map: AlgebraMap = None
    reason: str = None
    report: VerificationReport = None
    source_embedding: object = None
    target_embedding: object = None
    attempts: list = dc_field(default_factory=list)

    @property
    def found(self):
        return self.map is not None

    def __bool__(self):
        return self.found


def _degree_masks(B, n):
    degs = sorted({sum(m) for m in B.basis if any(m)})
    masks = []
    for d in degs:
        masks.append((f"degree<={d}", [[j for j, m in enumerate(B.basis) if 0 < sum(m) <= d]
                                       for _ in range(n)]))
    return masks


def find_surjection(I_A, I_B, shape=None, isomorphism=True, budget=None, embed=True):
    """Search a surjection O/I_A -> O/I_B (an isomorphism when dims agree).

    ``shape`` optionally fixes the support: ``{source var: [monomials]}`` with
    monomials as exponent tuples of the (embedded) target variables.  The
    returned :class:`SearchResult` holds a verified map or the reason for
    failure.
    """
    total = budget_seconds() if budget is None else budget
    t0 = time.monotonic()
    emb_a = minimal_embedding(I_A) if embed else None
    emb_b = minimal_embedding(I_B) if embed else None
    IA = emb_a.ideal if embed else as_local(I_A)
    IB = emb_b.ideal if embed else as_local(I_B)
    B = LocalAlgebra(IB)
    if not B.is_artinian:
        raise NotArtinian("target ideal is not Artinian")
    res = SearchResult(source_embedding=emb_a, target_embedding=emb_b)
    if isomorphism:
        A = LocalAlgebra(IA)
        if A.dimension != B.dimension:
            res.reason = f"dimension-mismatch ({_fmt_dim(A.dimension)} != {B.dimension})"
            return res
    source = IA.ring.variables
    if shape is not None:
        candidates = [("shape", Ansatz.from_shape(source, B, shape))]
    else:
        candidates = [(lbl, Ansatz.build(source, B, mask)) for lbl, mask in _degree_masks(B, len(source))]
    reason = CERTIFIED_IMPOSSIBLE
    for label, ansatz in candidates:
        left = total - (time.monotonic() - t0)
        if left <= 0:
            reason = BUDGET_EXHAUSTED
            break
        minors = linear_part_minors(ansatz)
        if not minors:
            res.attempts.append((label, CERTIFIED_IMPOSSIBLE))
            continue
        J = coefficient_ideal(IA, B, ansatz)
        sol = solve_parameter_system(J, minors, budget=left)
        res.attempts.append((label, sol.status))
        if not sol.ok:
            if sol.status != CERTIFIED_IMPOSSIBLE:
                reason = sol.status
                if total - (time.monotonic() - t0) <= 0:
                    break
            continue
        amap = ansatz.specialize(sol.values, sol.field)
        report = verify(amap, IA, IB)
        if not report.ok:
            # a solver point must verify; anything else is a bug
            raise AssertionError(f"unverified solver point: {report.witness}")
        if isomorphism and not report.is_isomorphism:
            continue
        res.map, res.report, res.reason = amap, report, None
        return res
    res.reason = reason
    return res


# diagonal maps for the T-series -----------------------------------------------------------

@dataclass
class DiagonalSolution:
    indices: tuple
    scalars: tuple
    field: object
    target_polynomial: object
    map: AlgebraMap
    kind: str  # "generic", "subseries" or "symmetric"

    @property
    def source_ideal(self):
        return modular_ideal(*self.indices).reduced

    @property
    def target_ideal(self):
        return jacobian_ideal(self.target_polynomial)

    def certify(self):
        return check_ambient_isomorphism(self.map, self.source_ideal, self.target_ideal)


def _target_ring(fld=QQ):
    return PolyRing(("x", "y", "z"), fld, "local")


def _coefs(p, q, r):
    data = modular_ideal(p, q, r)
    return (p, q, r), data.mixed_coefficients


def _radical_field(pairs):
    """Field for w_j with w_j^n_j = K_j; returns (field, values of w_j)."""
    vals = []
    rad = []
    for n, K in pairs:
        if n == 1:
            vals.append(("q", K))
            continue
        best = None
        for e in range(n, 0, -1):
            if n % e == 0:
                root = rational_root(K, e)
                if root is not None:
                    best = (n // e, root)
                    break
        deg, const = best
        if deg == 1:
            vals.append(("q", const))
        else:
            vals.append(("r", len(rad)))
            rad.append((deg, const))
    if not rad:
        fld = QQ
        gens = []
    elif len(rad) == 1:
        deg, const = rad[0]
        fld = NumberField([-const] + [mpq(0)] * (deg - 1) + [mpq(1)])
        gens = [fld.gen]
    else:
        fld = RadicalAlgebra(rad)
        gens = list(fld.gens)
    out = []
    for kind, v in vals:
        out.append(fld.convert(v) if kind == "q" else gens[v])
    return fld, out


def _generic_scalars(ns, coefs):
    """Solve -coef_i a_i^(n_i - 1) = n_i a_j a_k by Smith normal form."""
    M = [[(ns[i] - 1) if i == j else -1 for j in range(3)] for i in range(3)]
    K = [-mpq(ns[i]) / coefs[i] for i in range(3)]
    U, D, V = smith_normal_form(M)
    pairs = []
    for j in range(3):
        kj = mpq(1)
        for i in range(3):
            kj *= K[i] ** U[j][i]
        pairs.append((D[j][j], kj))
    if any(n <= 0 for n, _ in pairs):
        raise UnsupportedRootDegree("degenerate exponent system")
    fld, w = _radical_field(pairs)
    alphas = []
    for i in range(3):
        a = fld.one
        for j in range(3):
            if V[i][j]:
                a = a * w[j] ** V[i][j]
        alphas.append(a)
    return fld, alphas


def solve_diagonal(p, q, r):
    """Diagonal scalars matching reduced I(p,q,r) with a Jacobian ideal.

    Generic case: target x^p + y^q + z^r + xyz.  When exactly one of c_p,
    d_q, e_r vanishes the corresponding variable goes to x and the target is
    y^n + z^m + xyz with the remaining exponents.
    """
    _check_indices(p, q, r)
    ns, coefs = _coefs(p, q, r)
    zero = [i for i in range(3) if not coefs[i]]
    if len(zero) >= 2:
        raise SymmetricException(f"{len(zero)} of the mixed coefficients vanish for {(p, q, r)}")
    src = ("t1", "u1", "v1")
    if not zero:
        fld, alphas = _generic_scalars(ns, coefs)
        R = _target_ring(fld)
        x, y, z = R.gens
        imgs = [alphas[0] * x, alphas[1] * y, alphas[2] * z]
        f = _target_ring()("x^%d + y^%d + z^%d + x*y*z" % ns)
        amap = AlgebraMap(src, R, imgs)
        return DiagonalSolution((p, q, r), tuple(alphas), fld, f, amap, "generic")
    k = zero[0]
    j, l = [i for i in range(3) if i != k]
    nj, nl = ns[j], ns[l]
    dj, el = coefs[j], coefs[l]
    # alpha = -d beta^(nj-1) / (nj gamma), gamma^nl = nl d beta^nj / (e nj)
    g_rad = nl * dj / (el * nj)
    b_rad = 1 / g_rad
    if rational_root(g_rad, nl) is not None or rational_root(b_rad, nj) is None:
        fld, (gamma,) = _radical_field([(nl, g_rad)])
        beta = fld.one
    else:
        fld, (beta,) = _radical_field([(nj, b_rad)])
        gamma = fld.one
    alpha = -(beta ** (nj - 1)) * dj / (gamma * nj)
    R = _target_ring(fld)
    x, y, z = R.gens
    imgs = [None] * 3
    imgs[k], imgs[j], imgs[l] = alpha * x, beta * y, gamma * z
    f = _target_ring()("y^%d + z^%d + x*y*z" % (nj, nl))
    amap = AlgebraMap(src, R, imgs)
    scal = [None] * 3
    scal[k], scal[j], scal[l] = alpha, beta, gamma
    return DiagonalSolution((p, q, r), tuple(scal), fld, f, amap, "subseries")


def symmetric_exception_map(p, q, r):
    """Rational ambient map for triples where two or three coefficients vanish."""
    _check_indices(p, q, r)
    ns, coefs = _coefs(p, q, r)
    live = [i for i in range(3) if coefs[i]]
    if len(live) > 1:
        raise SymmetricException(f"{(p, q, r)} is not a symmetric exception")
    R = _target_ring()
    x, y, z = R.gens
    src = ("t1", "u1", "v1")
    if not live:
        f = R("x*y*z")
        return DiagonalSolution((p, q, r), (mpq(1),) * 3, QQ, f, AlgebraMap(src, R, [x, y, z]),
                                "symmetric")
    l = live[0]
    j, k = [i for i in range(3) if i != l]
    n = ns[l]
    # beta yz - coef x^(n-1) must be proportional to yz + n x^(n-1)
    beta = -coefs[l] / n
    imgs = [None] * 3
    imgs[l], imgs[j], imgs[k] = x, beta * y, z
    scal = [None] * 3
    scal[l], scal[j], scal[k] = mpq(1), beta, mpq(1)
    f = R("x^%d + x*y*z" % n)
    return DiagonalSolution((p, q, r), tuple(scal), QQ, f, AlgebraMap(src, R, imgs), "symmetric")
