"""Standard bases (Mora) for local orders and Groebner bases for global ones.

The local algorithm follows the tangent cone strategy: weak normal forms
pick the reducer of least ecart and remember intermediate remainders, so
reduction terminates although the order is not a well-order.  Once the
lead ideal contains every monomial of some degree N (the "highest corner"
situation) the maximal ideal power m^N lies in the ideal and everything is
truncated below degree N from then on.
"""

import time

from .errors import NotArtinian, OrderMismatch
from .polynomial import (Ideal, PolyRing, Polynomial, TermOrder, ecart, mono_deg,
                         mono_div, mono_divides, mono_lcm)

__all__ = [
    "StandardBasis", "mora_normal_form", "standard_basis", "groebner_basis",
    "reduced_normal_form", "ideal_membership", "radical_membership", "eliminate",
    "standard_monomials", "nilpotency_bound", "spoly", "lazard_standard_basis",
]


# term operations allowed in one Mora normal form before switching methods
MORA_STEP_LIMIT = 200000


# helpers -------------------------------------------------------------------------

def spoly(f, g):
    lf, lg = f.lm, g.lm
    l = mono_lcm(lf, lg)
    return (f.mul_term(mono_div(l, lf), 1 / f.lc)
            - g.mul_term(mono_div(l, lg), 1 / g.lc))


def _sub_multiple(h, g, mono, c, bound=None):
    """In place: h -= c * x^mono * g on the term dict h (optionally truncated)."""
    for m, v in g.terms.items():
        mm = tuple(x + y for x, y in zip(m, mono))
        if bound is not None and sum(mm) >= bound:
            continue
        w = h.get(mm)
        if w is None:
            h[mm] = -(c * v)
        else:
            w = w - c * v
            if w:
                h[mm] = w
            else:
                del h[mm]


def standard_monomials(leads, nvars, limit=None):
    """Monomials outside the monomial ideal generated by ``leads``.

    Returns None when the complement is infinite (some variable has no pure
    power among the leads) unless ``limit`` caps the total degree.
    """
    if any(not any(m) for m in leads):
        return []
    if limit is None:
        for i in range(nvars):
            if not any(m[i] > 0 and sum(m) == m[i] for m in leads):
                return None
    leads = list(leads)

    def standard(m):
        for l in leads:
            if all(a <= b for a, b in zip(l, m)):
                return False
        return True

    zero = (0,) * nvars
    if not standard(zero):
        return []
    out = [zero]
    stack = [(zero, 0)]
    while stack:
        m, first = stack.pop()
        for i in range(first, nvars):
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if limit is not None and sum(mm) > limit:
                continue
            if standard(mm):
                out.append(mm)
                stack.append((mm, i))
    return out


def nilpotency_bound(leads, nvars):
    """Least N with every degree-N monomial in the lead ideal, or None."""
    std = standard_monomials(leads, nvars)
    if std is None:
        return None
    return max((sum(m) for m in std), default=-1) + 1


def _minimal_leads(polys):
    """Indices of elements whose lead monomial is not divisible by another's."""
    keep = []
    for i, p in enumerate(polys):
        li = p.lm
        dominated = False
        for j, q in enumerate(polys):
            if i == j:
                continue
            lj = q.lm
            if mono_divides(lj, li) and (lj != li or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


# Mora normal form ------------------------------------------------------------------

class _Stalled(Exception):
    pass


def mora_normal_form(f, G, relation=False, bound=None, max_steps=None):
    """Weak normal form of f with respect to G.

    Returns h with ``u*f = sum(q_i*g_i) + h`` for a unit u, and lead(h) not
    divisible by any lead(g_i).  With ``relation=True`` returns
    ``(h, u, [q_i])`` instead.  For global orders this is ordinary top
    reduction.  ``bound`` truncates at that total degree (only sound when
    m^bound is contained in the ideal).
    """
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise OrderMismatch("all polynomials must share ring and term order")
    if not ring.order.is_local:
        if relation:
            raise ValueError("relations are only tracked for local orders")
        return _global_reduce(f, [g for g in G if g], full=False)
    key = ring.order.key
    h = dict(f.truncate(bound).terms)
    T = [(g, ecart(g), None) for g in G if g]
    if relation:
        u = ring.one
        q = [ring.zero for _ in G]
        idx = [i for i, g in enumerate(G) if g]
        T = [(g, e, ("gen", k)) for (g, e, _), k in zip(T, idx)]
    work = 0
    while h:
        work += len(h)
        if max_steps is not None and work > max_steps:
            raise _Stalled()
        lm = max(h, key=key)
        lc = h[lm]
        best = None
        for t, (g, e, tag) in enumerate(T):
            if mono_divides(g.lm, lm) and (best is None or e < T[best][1]):
                best = t
                if e == 0:
                    break
        if best is None:
            break
        g, eg, tag = T[best]
        hp = Polynomial(ring, h)
        eh = hp.degree() - sum(lm)
        if eg > eh:
            T.append((hp, eh, ("rem", u, list(q)) if relation else None))
        mono = mono_div(lm, g.lm)
        c = lc / g.lc
        h = dict(h)
        _sub_multiple(h, g, mono, c, bound)
        if relation:
            if tag[0] == "gen":
                k = tag[1]
                q[k] = q[k] + ring.monomial(mono, c)
            else:
                _, uk, qk = tag
                step = ring.monomial(mono, c)
                u = u - step * uk
                q = [a - step * b for a, b in zip(q, qk)]
    res = Polynomial(ring, h)
    if relation:
        return res, u, q
    return res


def _global_reduce(f, G, full=True, bound=None):
    ring = f.ring
    key = ring.order.key
    h = dict(f.terms)
    rem = {}
    leads = [(g.lm, g) for g in G]
    while h:
        lm = max(h, key=key)
        lc = h[lm]
        for l, g in leads:
            if mono_divides(l, lm):
                _sub_multiple(h, g, mono_div(lm, l), lc / g.lc, bound)
                break
        else:
            if not full:
                rem.update(h)
                break
            rem[lm] = lc
            del h[lm]
    return Polynomial(ring, rem)


# standard basis -------------------------------------------------------------------

class StandardBasis:
    """Standard basis of an ideal under its ring's term order."""

    def __init__(self, ring, generators, bound=None):
        self.ring = ring
        self.order = ring.order
        self.generators = list(generators)
        self.bound = bound
        leads = [g.lm for g in self.generators]
        self.staircase = _minimal_monomials(leads)

    @property
    def is_unit_ideal(self):
        return any(sum(l) == 0 for l in self.staircase)

    def lead_ideal(self):
        return list(self.staircase)

    def normal_form(self, f):
        f = self.ring(f)
        if self.order.is_local:
            return mora_normal_form(f, self.generators, bound=self.bound)
        return _global_reduce(f, self.generators, full=True)

    def contains(self, f):
        return not self.normal_form(f)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"StandardBasis({[str(g) for g in self.generators]})"


def _minimal_monomials(mons):
    mons = sorted(set(mons), key=lambda m: (sum(m), m))
    out = []
    for m in mons:
        if not any(mono_divides(o, m) for o in out):
            out.append(m)
    return out


def _select_pair(pairs, lcms, local, key):
    if local:
        return min(pairs, key=lambda p: (sum(lcms[p]), p))
    return min(pairs, key=lambda p: (sum(lcms[p]), tuple(-x for x in _flat(key(lcms[p]))), p))


def _flat(k):
    out = []
    for x in k:
        if isinstance(x, tuple):
            out.extend(_flat(x))
        else:
            out.append(x)
    return out


def standard_basis(ideal, budget=None):
    """Standard basis (local order) or reduced Groebner basis (global order)."""
    ring = ideal.ring
    if not ring.order.is_local:
        return StandardBasis(ring, groebner_basis(ideal.gens, ring, budget=budget))
    gens = [g.monic() for g in ideal.gens if g]
    if any(g.is_constant() for g in gens):
        return StandardBasis(ring, [ring.one])
    # Mora first (fast with a highest corner); Lazard when reduction stalls
    # small leads first: once S has a highest corner, later reductions truncate
    gens.sort(key=lambda g: ring.order.key(g.lm), reverse=True)
    bound = None
    try:
        S = []
        for g in gens:
            h = mora_normal_form(g, S, bound=bound, max_steps=MORA_STEP_LIMIT) if S else g
            if h:
                S.append(h.monic())
                if bound is None:
                    bound = nilpotency_bound([s.lm for s in S], ring.nvars)
        return _mora_sb(ring, S, budget)
    except _Stalled:
        return lazard_standard_basis(Ideal(ring, gens), budget)


def lazard_standard_basis(ideal, budget=None):
    """Local standard basis via homogenization (Lazard's method).

    The generators are homogenized with an extra variable, a Groebner basis
    is computed for a degree order whose ties are broken by the local order,
    and the result is dehomogenized.  Always terminates, also for
    non-Artinian quotients where Mora's reduction can be very slow.
    """
    ring = ideal.ring
    gens = [g for g in ideal.gens if g]
    if not gens:
        return StandardBasis(ring, [])
    H = PolyRing(("_h",) + ring.variables, ring.field, TermOrder("homlocal"))
    hom = []
    for g in gens:
        d = g.degree()
        hom.append(Polynomial(H, {(d - sum(m),) + m: c for m, c in g.terms.items()}))
    G = groebner_basis(hom, H, budget=budget)
    back = [Polynomial(ring, {m[1:]: c for m, c in p.terms.items()}).monic() for p in G]
    if any(b.is_constant() for b in back):
        return StandardBasis(ring, [ring.one])
    basis = [back[i] for i in _minimal_leads(back)]
    bound = nilpotency_bound([b.lm for b in basis], ring.nvars)
    if bound is not None:
        basis = [b.truncate(bound) if sum(b.lm) < bound else b for b in basis]
    basis.sort(key=lambda g: ring.order.key(g.lm), reverse=True)
    return StandardBasis(ring, basis, bound)


def _mora_sb(ring, S, budget=None):
    key = ring.order.key
    n = ring.nvars
    bound = None
    t0 = time.monotonic()

    def refresh_bound():
        leads = [s.lm for s in S]
        return nilpotency_bound(leads, n)

    bound = refresh_bound()
    if bound is not None:
        S[:] = [s.truncate(bound) if sum(s.lm) < bound else s for s in S]
    pairs = set()
    lcms = {}
    for j in range(len(S)):
        for i in range(j):
            pairs.add((i, j))
            lcms[(i, j)] = mono_lcm(S[i].lm, S[j].lm)
    while pairs:
        if budget is not None and time.monotonic() - t0 > budget:
            from .errors import BudgetExhausted
            raise BudgetExhausted("standard basis computation exceeded its budget")
        p = _select_pair(pairs, lcms, True, key)
        pairs.discard(p)
        i, j = p
        l = lcms.pop(p)
        if bound is not None and sum(l) >= bound:
            continue
        li, lj = S[i].lm, S[j].lm
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # product criterion
        if _chain_criterion(i, j, l, S, pairs):
            continue
        s = spoly(S[i], S[j])
        h = mora_normal_form(s, S, bound=bound, max_steps=MORA_STEP_LIMIT)
        if not h:
            continue
        h = h.monic()
        S.append(h)
        k = len(S) - 1
        for i2 in range(k):
            pairs.add((i2, k))
            lcms[(i2, k)] = mono_lcm(S[i2].lm, h.lm)
        if bound is None and sum(h.lm) == max(h.lm):
            bound = refresh_bound()
            if bound is not None:
                S[:] = [s.truncate(bound) if sum(s.lm) < bound else s for s in S]
                for q in [q for q in pairs if sum(lcms[q]) >= bound]:
                    pairs.discard(q)
                    lcms.pop(q)
    keep = _minimal_leads(S)
    basis = [S[i] for i in keep]
    basis.sort(key=lambda g: key(g.lm), reverse=True)
    return StandardBasis(ring, basis, bound)


def _chain_criterion(i, j, l, S, pairs):
    for k in range(len(S)):
        if k == i or k == j:
            continue
        if mono_divides(S[k].lm, l):
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                return True
    return False


# global Groebner bases ---------------------------------------------------------------

def groebner_basis(polys, ring=None, budget=None, max_reductions=None):
    """Reduced Groebner basis for a global (or block/lex) order.

    ``budget`` is in seconds; ``max_reductions`` caps the number of S-pair
    reductions (a machine independent limit).  Both raise BudgetExhausted.
    """
    polys = [p for p in polys if p]
    if ring is None:
        ring = polys[0].ring
    if ring.order.is_local:
        raise OrderMismatch("groebner_basis needs a global order")
    t0 = time.monotonic()
    G = []
    for p in polys:
        h = _global_reduce(p, G) if G else p
        if h:
            if h.is_constant():
                return [ring.one]
            G.append(h.monic())
    key = ring.order.key
    pairs = set()
    lcms = {}
    for j in range(len(G)):
        for i in range(j):
            pairs.add((i, j))
            lcms[(i, j)] = mono_lcm(G[i].lm, G[j].lm)
    sugar = [p.degree() for p in G]
    done = 0
    while pairs:
        if budget is not None and time.monotonic() - t0 > budget:
            from .errors import BudgetExhausted
            raise BudgetExhausted("Groebner basis computation exceeded its budget")
        if max_reductions is not None and done >= max_reductions:
            from .errors import BudgetExhausted
            raise BudgetExhausted("Groebner basis computation exceeded its reduction limit")
        p = min(pairs, key=lambda q: (_pair_sugar(q, G, sugar, lcms), q))
        pairs.discard(p)
        i, j = p
        l = lcms.pop(p)
        li, lj = G[i].lm, G[j].lm
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if _chain_criterion(i, j, l, G, pairs):
            continue
        s = spoly(G[i], G[j])
        done += 1
        h = _global_reduce(s, G, full=False)
        if not h:
            continue
        h = _global_reduce(h, G, full=True).monic()
        if h.is_constant():
            return [ring.one]
        sg = _pair_sugar(p, G, sugar, {p: l})
        G.append(h)
        sugar.append(max(sg, h.degree()))
        k = len(G) - 1
        for i2 in range(k):
            pairs.add((i2, k))
            lcms[(i2, k)] = mono_lcm(G[i2].lm, h.lm)
    return _reduce_basis(G, ring)


def _pair_sugar(p, G, sugar, lcms):
    i, j = p
    l = lcms[p]
    return max(sugar[i] + sum(l) - sum(G[i].lm), sugar[j] + sum(l) - sum(G[j].lm))


def _reduce_basis(G, ring):
    keep = _minimal_leads(G)
    M = [G[i] for i in keep]
    out = []
    for i, g in enumerate(M):
        others = M[:i] + M[i + 1:]
        r = _global_reduce(g, others, full=True)
        out.append(r.monic())
    key = ring.order.key
    out.sort(key=lambda g: key(g.lm), reverse=True)
    return out


# reduced normal forms -------------------------------------------------------------

def reduced_normal_form(f, sb):
    """Representative of the class of f supported on standard monomials.

    Needs a finite quotient under a local order: everything is computed
    modulo m^N where N is the nilpotency bound of the lead ideal, so plain
    full reduction terminates.  Coefficients of f may lie in a parameter
    ring; only the basis leading coefficients get inverted.
    """
    ring = sb.ring
    if not ring.order.is_local:
        return _global_reduce(f, sb.generators, full=True)
    N = sb.bound if sb.bound is not None else nilpotency_bound(sb.staircase, ring.nvars)
    if N is None:
        raise NotArtinian("reduced normal form needs an Artinian quotient")
    key = ring.order.key
    h = {m: c for m, c in f.terms.items() if sum(m) < N}
    rem = {}
    G = [(g.lm, g) for g in sb.generators]
    while h:
        lm = max(h, key=key)
        lc = h[lm]
        for l, g in G:
            if mono_divides(l, lm):
                _sub_multiple(h, g, mono_div(lm, l), lc / g.lc, N)
                break
        else:
            rem[lm] = lc
            del h[lm]
    return Polynomial(ring, rem)


# membership ----------------------------------------------------------------------

def ideal_membership(f, ideal, sb=None):
    sb = standard_basis(ideal) if sb is None else sb
    return not sb.normal_form(f)


def radical_membership(f, ideal):
    """f in sqrt(I) via 1 in I + (1 - z*f) with a fresh variable z."""
    ring = ideal.ring
    if ring.order.is_local:
        raise OrderMismatch("radical membership is implemented for global orders")
    if not f:
        return True
    z = "_z"
    while z in ring.variables:
        z += "_"
    big = PolyRing((z,) + ring.variables, ring.field, "global")
    gens = [g.change_ring(big) for g in ideal.gens]
    gens.append(big.one - big.gen(0) * f.change_ring(big))
    G = groebner_basis(gens, big)
    return len(G) == 1 and G[0].is_constant()


def eliminate(ideal, drop):
    """Generators of I intersected with the subring without the ``drop`` variables."""
    ring = ideal.ring
    drop = [v if isinstance(v, str) else ring.variables[v] for v in drop]
    if not drop:
        return ideal
    keep = [v for v in ring.variables if v not in drop]
    order = TermOrder.block("global", len(drop), "global")
    big = PolyRing(tuple(drop) + tuple(keep), ring.field, order)
    G = groebner_basis([g.change_ring(big) for g in ideal.gens], big)
    nd = len(drop)
    sub_kind = ring.order.kind if ring.order.kind in ("global", "lex", "local") else "global"
    sub = PolyRing(keep, ring.field, sub_kind)
    out = [g.change_ring(sub) for g in G if not any(any(m[:nd]) for m in g.terms)]
    return Ideal(sub, out)
