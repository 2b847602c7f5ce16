"""Normal forms and deformation data.

T-series germs with their parabolic gaps, Hesse forms, miniversal
deformations, the splitting families of the six sub-series, the table of the
14 exceptional unimodal germs (with a validating loader) and the records of
the worked examples W12, Z11, S11 and the bimodal germ x^10 + y^3 + x^4 y^2.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import (BasisNotIndependent, BasisWrongSize, BudgetExhausted, DegenerateLambda,
                     IndexOutOfRange, NotArtinian, NotASubseries)
from .linalg import determinant, rank, solve_linear
from .local_algebra import LocalAlgebra, local_invariants_at
from .modular import PARABOLIC_TRIPLES, SUBSERIES, subseries_of
from .numbers import QQ, mpq
from .parser import parse_minpoly
from .polynomial import Ideal, PolyRing, jacobian_ideal, tjurina_ideal
from .standard_basis import groebner_basis, standard_monomials

__all__ = [
    "t_series", "t_series_class", "PARABOLIC_GAPS", "is_degenerate_lambda",
    "hesse_form", "hesse_family", "miniversal_deformation", "Deformation",
    "splitting_family", "SplittingFamily", "FiberReport", "limit_singularity",
    "is_quasihomogeneous", "weights", "weighted_split",
    "CatalogEntry", "Catalog", "EntryValidation", "load_catalog", "validate_entry",
    "ExampleRecord", "load_example", "parse_deformation",
]

XYZ = ("x", "y", "z")

# lambda^e = v makes the parabolic germ non-isolated
PARABOLIC_GAPS = {(3, 3, 3): (3, mpq(-27)), (4, 4, 2): (4, mpq(64)), (6, 3, 2): (6, mpq(432))}


def _unit_sum(p, q, r):
    return 1 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)


def t_series_class(p, q, r):
    for v in (p, q, r):
        if int(v) != v or v < 2:
            raise IndexOutOfRange(f"indices must be integers >= 2, got {(p, q, r)}")
    s = _unit_sum(p, q, r)
    if s < 0:
        raise IndexOutOfRange(f"1/p + 1/q + 1/r > 1 for {(p, q, r)}")
    return "parabolic" if s == 0 else "hyperbolic"


def is_degenerate_lambda(p, q, r, lam):
    """True when x^p + y^q + z^r + lam*xyz is not a germ of type T_{p,q,r}."""
    kind = t_series_class(p, q, r)
    if kind == "hyperbolic":
        return not lam
    e, v = PARABOLIC_GAPS[tuple(sorted((p, q, r), reverse=True))]
    return lam ** e == v


def t_series(p, q, r, lam=1, ring=None, check=True):
    """x^p + y^q + z^r + lam*x*y*z.

    ``lam`` may lie in a number field; pass a ring over that field.  With
    ``check`` the degenerate parameter values are rejected.
    """
    if check and is_degenerate_lambda(p, q, r, lam):
        raise DegenerateLambda(f"lambda = {lam} is degenerate for T_{{{p},{q},{r}}}")
    if not check:
        t_series_class(p, q, r)
    R = ring or PolyRing(XYZ, QQ, "local")
    x, y, z = R.gens[:3]
    return x ** p + y ** q + z ** r + x * y * z * R.field.convert(lam)


def limit_singularity(q, r, ring=None):
    """y^q + z^r + xyz, the non-isolated end of a sub-series."""
    R = ring or PolyRing(XYZ, QQ, "local")
    x, y, z = R.gens[:3]
    return y ** q + z ** r + x * y * z


# weights and Hesse forms

def hesse_form(f0):
    """Determinant of the Hessian matrix of f0."""
    n = f0.ring.nvars
    first = [f0.diff(i) for i in range(n)]
    H = [[first[i].diff(j) for j in range(n)] for i in range(n)]
    det = determinant(H)
    return det if hasattr(det, "ring") else f0.ring.constant(det)


def hesse_family(f0, lam):
    return f0 + hesse_form(f0) * f0.ring.field.convert(lam)


def weights(monomials):
    """Weights w with <w, m> = 1 for the given monomials (None if no unique solution)."""
    ms = [tuple(m) for m in monomials]
    n = len(ms[0])
    chosen = []
    for m in ms:
        if rank([list(map(mpq, c)) for c in chosen + [m]]) > len(chosen):
            chosen.append(m)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        return None
    w = solve_linear([[mpq(e) for e in m] for m in chosen], [mpq(1)] * n)
    if w is None or any(x <= 0 for x in w):
        return None
    return tuple(w)


def weighted_split(f, w):
    """(part of weighted degree 1, part above, part below) of f."""
    parts = [{}, {}, {}]
    for m, c in f.terms.items():
        d = sum(a * b for a, b in zip(w, m))
        parts[0 if d == 1 else (1 if d > 1 else 2)][m] = c
    return tuple(f.ring.from_dict(p) for p in parts)


def is_quasihomogeneous(f):
    """f lies in its Jacobian ideal (for isolated germs, quasihomogeneous in some coordinates)."""
    if f.ring.nvars and not f.ring.order.is_local:
        f = f.change_ring(f.ring.with_order("local"))
    Q = LocalAlgebra(jacobian_ideal(f))
    if not Q.is_artinian:
        raise NotArtinian("f does not have an isolated critical point")
    return Q.contains(f)


# deformations

@dataclass
class Deformation:
    germ: object
    basis: list
    ring: PolyRing
    polynomial: object

    @property
    def parameters(self):
        return self.ring.variables[self.germ.ring.nvars:]

    def __str__(self):
        return str(self.polynomial)


def miniversal_deformation(f, basis=None, prefix="s"):
    """F = f + sum s_i b_i over a basis of the Tjurina algebra.

    The default basis is the staircase of the Tjurina ideal; a caller basis
    must have tau elements whose classes are linearly independent.
    """
    if not f.ring.order.is_local:
        f = f.change_ring(f.ring.with_order("local"))
    T = LocalAlgebra(tjurina_ideal(f))
    if not T.is_artinian:
        raise NotArtinian("f does not have an isolated singularity")
    tau = T.dimension
    if basis is None:
        basis = T.basis_polynomials()
    else:
        basis = [f.ring(b) for b in basis]
        if len(basis) != tau:
            raise BasisWrongSize(f"basis has {len(basis)} elements, tau = {tau}")
        if rank([T.coordinates(b) for b in basis]) < tau:
            raise BasisNotIndependent("basis classes are linearly dependent in T(f)")
    names = tuple(f"{prefix}{i}" for i in range(1, tau + 1))
    R = f.ring.with_variables(f.ring.variables + names)
    F = f.change_ring(R)
    for i, b in enumerate(basis):
        F = F + R.gen(f.ring.nvars + i) * b.change_ring(R)
    return Deformation(f, basis, R, F)


# splitting families

@dataclass
class FiberReport:
    k: int
    l: int
    q: int
    r: int
    t: object
    origin_tau: int
    split_tau: int
    total_tau: int
    expected_tau: int

    @property
    def ok(self):
        return self.origin_tau + self.split_tau == self.total_tau == self.expected_tau


@dataclass
class SplittingFamily:
    k: int
    l: int
    q: int
    r: int
    ring: PolyRing
    polynomial: object

    def fiber(self, t):
        return _drop_t(self.polynomial.subs({"t": mpq(t)}), PolyRing(XYZ, QQ, "local"))

    def fiber_report(self, t=1):
        """Local tau at 0 and at (-t, 0, 0), and the total over the whole fiber."""
        f = self.fiber(t)
        origin = local_invariants_at(f, (0, 0, 0))[1]
        split = local_invariants_at(f, (-mpq(t), 0, 0))[1] if t else 0
        total = _global_tau(f)
        return FiberReport(self.k, self.l, self.q, self.r, mpq(t), origin, split, total,
                           self.k + self.q + self.r - 2)


def _drop_t(p, R):
    out = {m[:3]: c for m, c in p.terms.items()}
    return R.from_dict(out)


def _global_tau(f):
    """dim K[x]/(f, df): the sum of local Tjurina numbers over the affine fiber."""
    R = f.ring.with_order("global")
    g = f.change_ring(R)
    G = groebner_basis([g] + [g.diff(i) for i in range(R.nvars)], R)
    std = standard_monomials([p.lm for p in G], R.nvars)
    if std is None:
        raise NotArtinian("fiber has non-isolated singularities")
    return len(std)


def splitting_family(k, l, q, r):
    """x^(l-1) (x+t)^(k-l+1) + y^q + z^r + xyz for a sub-series member."""
    if (q, r, l) not in SUBSERIES or k < l:
        raise NotASubseries(f"(k, l, q, r) = {(k, l, q, r)} is not on a listed sub-series")
    R = PolyRing(XYZ + ("t",), QQ, "local")
    x, y, z, t = R.gens
    F = x ** (l - 1) * (x + t) ** (k - l + 1) + y ** q + z ** r + x * y * z
    return SplittingFamily(k, l, q, r, R, F)


# the table of exceptional germs

def _data(name):
    return resources.files("singkit").joinpath("data", name).read_text()


def _stratum_ring(texts):
    top = max((int(k) for g in texts for k in re.findall(r"\bs(\d+)", g)), default=1)
    return PolyRing(tuple(f"s{i}" for i in range(1, top + 1)), QQ, "local")


@dataclass
class CatalogEntry:
    name: str
    variables: tuple
    equation: str
    tjurina_basis: list
    bold_markers: list
    modular_equations: list
    repairs: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    @property
    def ring(self):
        return PolyRing(self.variables, QQ, "local")

    @property
    def polynomial(self):
        return self.ring(self.equation)

    def printed_terms(self):
        return [self.ring(t) for t in re.split(r"\s+\+\s+", self.equation)]

    @property
    def weights(self):
        return weights([t.lm for t in self.printed_terms()])

    @property
    def quasihomogeneous_part(self):
        w = self.weights
        return None if w is None else weighted_split(self.polynomial, w)[0]

    @property
    def perturbation(self):
        w = self.weights
        return None if w is None else weighted_split(self.polynomial, w)[1]

    @property
    def reconstructed(self):
        """f0 + hesse_form(f0), the Hesse-type form built from the leading part."""
        f0 = self.quasihomogeneous_part
        return None if f0 is None else f0 + hesse_form(f0)

    def basis_polynomials(self, ring=None):
        R = ring or self.ring
        return [R(b) for b in self.tjurina_basis]

    def stratum_texts(self, repaired=True):
        gens = list(self.modular_equations)
        if repaired:
            for r in self.repairs:
                g = gens[r["generator"]]
                if r["printed"] not in g:
                    raise ValueError(f"{self.name}: repair target {r['printed']} not found")
                gens[r["generator"]] = g.replace(r["printed"], r["repaired"], 1)
        return gens

    def stratum_ideal(self, repaired=True):
        texts = self.stratum_texts(repaired)
        S = _stratum_ring(texts)
        return Ideal(S, [S(g) for g in texts])


@dataclass
class EntryValidation:
    name: str
    status: str
    form: str
    mu: object
    tau: object
    basis_count: int
    basis_independent: bool
    hesse_ok: bool
    stratum_source: str = None
    stratum_dimension: object = None
    prechecks: object = None
    messages: list = field(default_factory=list)

    @property
    def verified(self):
        return self.status == "verified"

    @property
    def stratum_ok(self):
        return self.prechecks is not None and self.prechecks.ok

    def lines(self):
        out = [f"{self.name}: {self.status} ({self.form} form)",
               f"  mu = {self.mu}, tau = {self.tau}, basis count = {self.basis_count}, "
               f"basis independent = {self.basis_independent}, hesse = {self.hesse_ok}"]
        if self.stratum_source:
            out.append(f"  stratum ({self.stratum_source}): dim = {self.stratum_dimension}, "
                       f"prechecks = {'pass' if self.stratum_ok else 'fail'}")
        out += [f"  note: {m}" for m in self.messages]
        return out

    def as_dict(self):
        d = {k: getattr(self, k) for k in ("name", "status", "form", "basis_count",
                                           "basis_independent", "hesse_ok", "stratum_source")}
        d["mu"] = _num(self.mu)
        d["tau"] = _num(self.tau)
        d["stratum_dimension"] = _num(self.stratum_dimension)
        d["prechecks"] = None if self.prechecks is None else self.stratum_ok
        d["messages"] = list(self.messages)
        return d


def _num(v):
    if v is None:
        return None
    return "inf" if v == float("inf") else int(v)


def _check_form(f, entry):
    """(mu, tau, basis independent, ok) of a candidate normal form for the row."""
    Q = LocalAlgebra(jacobian_ideal(f))
    T = LocalAlgebra(tjurina_ideal(f))
    mu, tau = Q.dimension, T.dimension
    n = len(entry.tjurina_basis)
    indep = False
    if T.is_artinian and tau == n:
        indep = rank([T.coordinates(b) for b in entry.basis_polynomials(f.ring)]) == n
    return mu, tau, indep, (tau == n and mu == tau + 1 and indep)


def _hesse_ok(entry, f0, pert):
    """The perturbation and hesse_form(f0) are parallel and nonzero in Q(f0)."""
    if f0 is None or not pert:
        return False
    Q0 = LocalAlgebra(jacobian_ideal(f0))
    if not Q0.is_artinian:
        return False
    a, b = Q0.coordinates(hesse_form(f0)), Q0.coordinates(pert)
    if not any(a) or not any(b):
        return False
    return rank([a, b]) == 1


def validate_entry(entry, stratum=True, budget=60):
    """Transcription checks of one table row, then the stratum prechecks."""
    from .isomorphy import isomorphy_prechecks
    msgs = []
    f = entry.polynomial
    mu, tau, indep, ok = _check_form(f, entry)
    form = "printed"
    f0, pert = entry.quasihomogeneous_part, entry.perturbation
    if not ok:
        msgs.append(f"printed form fails: mu = {_num(mu)}, tau = {_num(tau)}, "
                    f"{len(entry.tjurina_basis)} basis monomials")
        rec = entry.reconstructed
        if rec is not None and rec != f:
            rmu, rtau, rindep, rok = _check_form(rec, entry)
            msgs.append(f"reconstructed form {rec}: mu = {_num(rmu)}, tau = {_num(rtau)}")
            if rok:
                form, mu, tau, indep, ok = "reconstructed", rmu, rtau, rindep, True
                pert = hesse_form(f0)
                f = rec
    hesse = _hesse_ok(entry, f0, pert)
    status = "verified" if ok and hesse else "unverified"
    if entry.flags.get("confirm"):
        msgs.append(entry.flags["confirm"])
    res = EntryValidation(entry.name, status, form, mu, tau, len(entry.tjurina_basis), indep,
                          hesse, messages=msgs)
    if stratum and res.verified:
        source = "repaired" if entry.repairs else "printed"
        try:
            I_A = entry.stratum_ideal(repaired=True)
            A = LocalAlgebra(I_A, budget=budget)
            res.stratum_dimension = A.dimension
            res.prechecks = isomorphy_prechecks(I_A, jacobian_ideal(f))
        except (BudgetExhausted, NotArtinian) as exc:
            msgs.append(f"stratum check failed: {exc}")
        res.stratum_source = source
        for r in entry.repairs:
            msgs.append(f"stratum generator {r['generator'] + 1}: {r['printed']} read as {r['repaired']}")
    return res


class Catalog:
    """Immutable ordered collection of table rows."""

    def __init__(self, entries):
        self._entries = {e.name: e for e in entries}

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self):
        return len(self._entries)

    def __contains__(self, name):
        return name in self._entries

    def __getitem__(self, name):
        try:
            return self._entries[name]
        except KeyError:
            raise KeyError(f"no catalog entry {name!r}") from None

    @property
    def names(self):
        return list(self._entries)

    def validate(self, stratum=True):
        return [validate_entry(e, stratum) for e in self]


@lru_cache(maxsize=None)
def load_catalog():
    table = json.loads(_data("exceptional.json"))
    repairs = json.loads(_data("stratum_repairs.json"))["repairs"]
    entries = []
    for rec in table["entries"]:
        flags = {"quasihomogeneous": False, "hesse_type": True, "exceptional": True}
        entries.append(CatalogEntry(rec["name"], tuple(rec["variables"]), rec["equation"],
                                    list(rec["tjurina_basis"]), list(rec["bold_markers"]),
                                    list(rec["modular_equations"]), repairs.get(rec["name"], []),
                                    flags))
    return Catalog(entries)


# worked examples

def parse_deformation(text, ring):
    """Split a printed deformation ``f + s1*m1 + ...`` into (parameter, monomial) pairs.

    A summand carrying two parameters (a lost ``+``) is split in two and
    reported in the returned notes.
    """
    body = re.sub(r"^\s*f\s*\+", "", text)
    pairs, notes = [], []
    for part in re.split(r"\+", body):
        part = part.strip()
        hits = list(re.finditer(r"\bs\d+", part))
        if len(hits) > 1:
            notes.append(f"summand '{part}' holds {len(hits)} parameters; read as separate terms")
        for i, h in enumerate(hits):
            end = hits[i + 1].start() if i + 1 < len(hits) else len(part)
            mono = part[h.end():end].strip().lstrip("*").strip() or "1"
            pairs.append((h.group(0), ring(mono)))
    return pairs, notes


@dataclass
class ExampleRecord:
    name: str
    polynomial: object
    stratum: Ideal
    shape: dict
    basis: list = None
    full_stratum: Ideal = None
    map: object = None
    deformation: list = None
    notes: list = field(default_factory=list)


def _shape(raw):
    return {k: [tuple(m) for m in v] for k, v in raw.items()}


@lru_cache(maxsize=None)
def load_example(name):
    """Parsed record for ``w12``, ``z11``, ``s11`` or ``bimodal``."""
    from .isomorphy import AlgebraMap
    data = json.loads(_data("examples.json"))
    if name not in data:
        raise KeyError(f"no example {name!r}")
    rec = data[name]
    R = PolyRing(tuple(rec["variables"]), QQ, "local")
    f = R(rec["equation"])
    out = ExampleRecord(name, f, None, _shape(rec["shape"]))
    if name == "w12":
        printed = list(rec["basis_printed"])
        ins = rec["basis_insert"]
        full = printed[:ins["position"]] + [ins["monomial"]] + printed[ins["position"]:]
        # printed as (b_tau, ..., b_1)
        out.basis = [R(b) for b in reversed(full)]
        out.notes.append(f"basis lists {len(printed)} monomials; {ins['monomial']} inserted")
        S = PolyRing(tuple(f"s{i}" for i in range(1, rec["stratum_variables"] + 1)), QQ, "local")
        out.full_stratum = Ideal(S, [S(g) for g in rec["stratum"]])
        bold = [rec["stratum"][i] for i in rec["bold"]]
        S2 = _stratum_ring(bold)
        out.stratum = Ideal(S2, [S2(g) for g in bold])
    elif name == "bimodal":
        out.basis = [R(b) for b in rec["basis"]]
        S = PolyRing(tuple(rec["stratum_variables"]), QQ, "local")
        out.stratum = Ideal(S, [S(g) for g in rec["stratum"]])
    else:
        row = load_catalog()[rec["catalog_row"]]
        out.stratum = row.stratum_ideal(repaired=True)
        out.deformation, notes = parse_deformation(rec["deformation_printed"], R)
        out.notes += notes
        out.notes += [f"stratum generator {r['generator'] + 1}: {r['printed']} read as {r['repaired']}"
                      for r in row.repairs]
    if "map" in rec:
        K = parse_minpoly(rec["minpoly"])
        RK = R.with_field(K)
        src = out.stratum.ring.variables
        out.map = AlgebraMap(src, RK, [RK(rec["map"][s]) for s in src])
    return out


def parabolic_triples():
    return list(PARABOLIC_TRIPLES)


def in_subseries(p, q, r):
    return subseries_of(p, q, r) is not None
