"""Finding one point of V(J) outside V(m) for a parameter ideal J.

The system is split into blocks: the smallest set of unknowns carrying at
least as many equations as unknowns is solved first, its solutions are
substituted into the remaining equations, and so on, with backtracking.
Inside a block the minor (or the variables dividing all of its terms) is
removed by saturation with an extra variable ``_z``, a lexicographic
Groebner basis is computed and variables are solved from the last one
upward.  A univariate eliminant contributes its roots in the current field,
or over QQ one algebraic root of bounded degree which becomes the extension
generator ``theta``.  Free variables are specialised to 0, 1, -1, 2, -2, ...
"""

import dataclasses
import itertools
import os
import time
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import BudgetExhausted, ZeroDivisor
from .numbers import QQ, AlgebraicNumber, NumberField, mpq, upoly_deriv, upoly_divmod, upoly_gcd
from .polynomial import Ideal, PolyRing
from .standard_basis import StandardBasis, groebner_basis

__all__ = ["ParameterSolution", "solve_parameter_system", "MinorTests", "minor_tests", "budget_seconds",
           "specialization_values", "univariate_roots", "REDUCTION_LIMIT"]

CERTIFIED_IMPOSSIBLE = "certified-impossible"
BUDGET_EXHAUSTED = "budget-exhausted"
UNSUPPORTED_ROOT = "unsupported-root-degree"
SOLVED = "solved"

# S-pair reductions allowed per Groebner basis inside the solver
REDUCTION_LIMIT = 400


def budget_seconds(default=120.0):
    """Solver budget in seconds, from SINGKIT_BUDGET_MS when set."""
    raw = os.environ.get("SINGKIT_BUDGET_MS")
    if raw:
        try:
            return max(int(raw), 1) / 1000.0
        except ValueError:
            pass
    return default


def specialization_values(count):
    out = [0]
    k = 1
    while len(out) < count:
        out.extend([k, -k])
        k += 1
    return [mpq(v) for v in out[:count]]


@dataclass
class ParameterSolution:
    status: str
    field: object = QQ
    values: dict = dataclasses.field(default_factory=dict)
    minor_index: int = None
    detail: str = ""

    @property
    def ok(self):
        return self.status == SOLVED

    def point(self, variables):
        return [self.values[v] for v in variables]


class _Deadline:
    def __init__(self, seconds):
        self.end = None if seconds is None else time.monotonic() + seconds

    def remaining(self):
        if self.end is None:
            return None
        left = self.end - time.monotonic()
        if left <= 0:
            raise BudgetExhausted("parameter search exceeded its budget")
        return left


class _Stalled(Exception):
    pass


def _gb(polys, ring, deadline):
    try:
        return groebner_basis(polys, ring, budget=deadline.remaining(),
                              max_reductions=REDUCTION_LIMIT)
    except BudgetExhausted as exc:
        if "reduction limit" in str(exc):
            raise _Stalled() from None
        raise


def _unknown_if_stalled(fn):
    try:
        return fn()
    except _Stalled:
        return None


def _in_radical(m, gens, ring, deadline):
    big = PolyRing(("_z",) + ring.variables, QQ, "global")
    polys = [g.change_ring(big) for g in gens] + [big.one - big.gen(0) * m.change_ring(big)]
    G = _gb(polys, big, deadline)
    return len(G) == 1 and G[0].is_constant()


@dataclass
class MinorTests:
    """Both readings of the nondegeneracy test on V(J).

    ``printed``: some minor is not in J.  ``radical``: some minor is not in
    the radical of J, i.e. it does not vanish on all of V(J).  Only the
    second guarantees a usable point; the first is weaker when J is not
    radical.  ``None`` means the reduction limit was reached.
    """
    printed: object
    radical: object


def minor_tests(J, minors, budget=None):
    if isinstance(J, Ideal):
        ring, gens = J.ring, [g for g in J.gens if g]
    else:
        gens = [g for g in J if g]
        ring = minors[0].ring
    deadline = _Deadline(budget_seconds() if budget is None else budget)
    R = ring if not ring.order.is_local else ring.with_order("global")
    gens = [g.change_ring(R) for g in gens]
    minors = [m.change_ring(R) for m in minors if m]
    if not gens:
        return MinorTests(bool(minors), bool(minors))
    G = _unknown_if_stalled(lambda: _gb(gens, R, deadline))
    printed = None if G is None else any(StandardBasis(R, G).normal_form(m) for m in minors)
    flags = [_unknown_if_stalled(lambda m=m: _in_radical(m, gens, R, deadline)) for m in minors]
    radical = None if any(f is None for f in flags) else not all(flags)
    return MinorTests(printed, radical)


def solve_parameter_system(J, minors, budget=None, max_root_degree=4, free_values=6):
    """A point of V(J) where at least one of ``minors`` does not vanish.

    ``J`` is an :class:`Ideal` (or generator list) over QQ.  Returns a
    :class:`ParameterSolution` whose status is ``solved``,
    ``certified-impossible`` (every minor lies in the radical of J),
    ``budget-exhausted`` or ``unsupported-root-degree``.
    """
    if isinstance(J, Ideal):
        ring, gens = J.ring, [g for g in J.gens if g]
    else:
        gens = [g for g in J if g]
        ring = minors[0].ring if minors else gens[0].ring
    deadline = _Deadline(budget_seconds() if budget is None else budget)
    global_ring = ring if not ring.order.is_local else ring.with_order("global")
    gens = [g.change_ring(global_ring) for g in gens]
    minors = [m.change_ring(global_ring) for m in minors]
    try:
        state = _State(deadline, max_root_degree, free_values)
        for k, m in enumerate(minors):
            if not m:
                continue
            try:
                sol = next(state.blocks(gens, global_ring, set(range(global_ring.nvars)), {}, m),
                           None)
            except _Stalled:
                state.stalled = True
                continue
            if sol is not None:
                fld, values = sol
                named = {global_ring.variables[i]: v for i, v in values.items()}
                return ParameterSolution(SOLVED, fld, named, k)
        # no point found: try to certify that none exists
        if gens and _unknown_if_stalled(lambda: _gb(gens, global_ring, deadline)) == [global_ring.one]:
            return ParameterSolution(CERTIFIED_IMPOSSIBLE, detail="J is the unit ideal")
        if all(not m or (gens and _unknown_if_stalled(
                lambda: _in_radical(m, gens, global_ring, deadline))) for m in minors):
            return ParameterSolution(CERTIFIED_IMPOSSIBLE,
                                     detail="every maximal minor lies in the radical of J")
        if state.unsupported:
            return ParameterSolution(UNSUPPORTED_ROOT, detail=state.unsupported)
        if state.stalled:
            return ParameterSolution(BUDGET_EXHAUSTED, detail="Groebner basis reduction limit reached")
        return ParameterSolution(BUDGET_EXHAUSTED,
                                 detail="no point found with the deterministic specialisations")
    except BudgetExhausted as exc:
        return ParameterSolution(BUDGET_EXHAUSTED, detail=str(exc))


def _convert_values(values, fld):
    if fld == QQ:
        return dict(values)
    return {k: fld.convert(v) for k, v in values.items()}


class _State:
    def __init__(self, deadline, max_root_degree, free_values):
        self.deadline = deadline
        self.max_root_degree = max_root_degree
        self.free_values = free_values
        self.unsupported = None
        self.stalled = False

    # block decomposition

    def blocks(self, polys, ring, unknowns, values, minor):
        """Yield (field, {var index: value}) covering every unknown."""
        self.deadline.remaining()
        polys = [p for p in polys if p]
        if any(p.is_constant() for p in polys):
            return
        if not polys:
            yield from self._free(ring, sorted(unknowns), values, minor)
            return
        W = self._pick_block(polys)
        block = [p for p in polys if p.used_variables() <= W]
        rest = [p for p in polys if not p.used_variables() <= W]
        m = minor.change_ring(minor.ring.with_field(ring.field)).subs(values)
        if not m:
            return
        sat = m if m.used_variables() <= W else self._monomial_part(m, W)
        for fld, vals in self._solve_block(block, ring, W, sat):
            new_ring = ring if fld == ring.field else ring.with_field(fld)
            merged = _convert_values(values, fld)
            merged.update(vals)
            sub = [p.change_ring(new_ring).subs(vals) for p in rest]
            yield from self.blocks(sub, new_ring, unknowns - W, merged, minor)

    @staticmethod
    def _monomial_part(m, W):
        """Product of the block variables dividing every term of m."""
        common = None
        for mono in m.terms:
            common = list(mono) if common is None else [min(a, b) for a, b in zip(common, mono)]
        exps = [1 if i in W and e else 0 for i, e in enumerate(common)]
        if not any(exps):
            return None
        return m.ring.monomial(tuple(exps))

    @staticmethod
    def _pick_block(polys):
        cands = {frozenset(p.used_variables()) for p in polys}
        cands.add(frozenset().union(*cands))
        best = None
        for W in cands:
            count = sum(1 for p in polys if p.used_variables() <= W)
            score = (max(len(W) - count, 0), len(W), sorted(W))
            if best is None or score < best[0]:
                best = (score, W)
        return set(best[1])

    def _free(self, ring, free, values, minor):
        """Specialise unconstrained unknowns so that the minor does not vanish."""
        fld = ring.field
        m = minor.change_ring(minor.ring.with_field(fld)).subs(values)
        involved = sorted(v for v in free if v in m.used_variables())
        rest = {v: fld.zero for v in free if v not in involved}
        seq = [fld.convert(v) for v in specialization_values(self.free_values)]
        for combo in itertools.product(seq, repeat=len(involved)):
            assign = dict(zip(involved, combo))
            if m.subs(assign):
                out = dict(values)
                out.update(rest)
                out.update(assign)
                yield fld, out
                return

    # one block

    def _solve_block(self, block, ring, W, sat):
        fld = ring.field
        names = [ring.variables[i] for i in sorted(W)]
        lead = ("_z",) if sat is not None else ()
        lex = PolyRing(lead + tuple(names), fld, "lex")
        polys = [p.change_ring(lex) for p in block]
        if sat is not None:
            polys.append(lex.one - lex.gen("_z") * sat.change_ring(lex))
        order = list(reversed(range(lex.nvars)))
        back = {lex.index(n): ring.index(n) for n in names}
        for f2, vals in self._tri(polys, lex, order, {}):
            yield f2, {back[i]: v for i, v in vals.items() if i in back}

    def _tri(self, polys, ring, order, values):
        """Triangular back-substitution; yields (field, {lex index: value})."""
        self.deadline.remaining()
        polys = [p for p in polys if p]
        if not order:
            if not polys:
                yield ring.field, values
            return
        try:
            G = _gb(polys, ring, self.deadline) if polys else []
        except ZeroDivisor as exc:
            yield from self._retry_factor(exc, polys, ring, order, values)
            return
        if G and G[0].is_constant():
            return
        v = order[0]
        uni = [g for g in G if g.used_variables() <= {v}]
        if not uni:
            for val in specialization_values(self.free_values):
                yield from self._assign(G, ring, order, values, v, ring.field.convert(val))
            return
        g = min(uni, key=lambda p: p.degree())
        coeffs = [ring.field.zero] * (g.degree() + 1)
        for m, c in g.terms.items():
            coeffs[m[v]] = c
        roots, rest = univariate_roots(coeffs, ring.field)
        for r in roots:
            yield from self._assign(G, ring, order, values, v, r)
        for factor in rest:
            d = len(factor) - 1
            if d > self.max_root_degree:
                self.unsupported = self.unsupported or (
                    f"eliminant factor of degree {d} > {self.max_root_degree}")
                continue
            K = NumberField(factor)
            new_ring = ring.with_field(K)
            lifted = [p.change_ring(new_ring) for p in G]
            yield from self._assign(lifted, new_ring, order, _convert_values(values, K), v, K.gen)
        if ring.field != QQ and len(coeffs) - 1 > len(roots):
            self.unsupported = self.unsupported or "eliminant root outside the current extension"

    def _assign(self, G, ring, order, values, v, val):
        sub = [p.subs({v: val}) for p in G]
        if any(p.is_constant() and p for p in sub):
            return
        vals = dict(values)
        vals[v] = val
        yield from self._tri(sub, ring, order[1:], vals)

    def _retry_factor(self, exc, polys, ring, order, values):
        # the modulus split during the computation; continue over the exposed factor
        if not isinstance(ring.field, NumberField):
            raise exc
        factor = list(exc.factor)
        if len(factor) < 2:
            raise exc
        if len(factor) == 2:
            root = -factor[0] / factor[1]
            conv = lambda a: sum((c * root ** i for i, c in enumerate(a.coeffs)), mpq(0))  # noqa: E731
            new_ring = ring.with_field(QQ)
        else:
            K = NumberField(factor)
            conv = lambda a: K.reduce(list(a.coeffs))  # noqa: E731
            new_ring = ring.with_field(K)
        vals = {k: conv(x) if isinstance(x, AlgebraicNumber) else x for k, x in values.items()}
        yield from self._tri([p.map_coeffs(conv, new_ring) for p in polys], new_ring, order, vals)


# univariate root finding

def _squarefree(coeffs):
    g = upoly_gcd(coeffs, upoly_deriv(coeffs))
    if len(g) <= 1:
        return coeffs
    q, _ = upoly_divmod(coeffs, g)
    return q


def _exact_divides(f, g):
    _, r = upoly_divmod(f, g)
    return not any(r)


def univariate_roots(coeffs, fld=QQ, max_factor_degree=4):
    """Roots in ``fld`` of a univariate polynomial, plus leftover factors.

    Returns ``(roots, factors)``.  Over QQ the roots are the rational ones
    and ``factors`` holds monic rational factors of degree 2..max_factor_degree
    found from numeric root subsets and confirmed by exact division (or the
    whole squarefree remainder if no small factor explains it).  Over a
    number field only roots lying in that field are returned.
    """
    coeffs = list(coeffs)
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return [], []
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]], []
    if fld != QQ:
        return _roots_in_field(coeffs, fld), []
    lc = coeffs[-1]
    f = _squarefree([mpq(c) / lc for c in coeffs])
    roots = []
    if not f[0]:
        roots.append(mpq(0))
        f = f[1:]
    rest = list(f)
    for r in _numeric_roots(rest):
        if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-20):
            continue
        q = _rationalize(mpmath.re(r))
        if q is None:
            continue
        lin = [-q, mpq(1)]
        if len(rest) > 1 and _exact_divides(rest, lin):
            roots.append(q)
            rest, _ = upoly_divmod(rest, lin)
    factors = []
    if len(rest) > 2:
        factors = _small_factors(rest, _numeric_roots(rest), max_factor_degree) or [rest]
    roots.sort(key=lambda q: (abs(q), q < 0))
    factors.sort(key=len)
    return roots, factors


def _numeric_roots(f):
    if len(f) <= 1:
        return []
    size = max(len(str(c)) for c in f)
    dps = max(60, 3 * size + 20 * len(f))
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in reversed(f)]
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            roots = mpmath.polyroots(coeffs, maxsteps=4000, extraprec=8 * dps, error=False)
        return [mpmath.mpc(r) for r in roots]


def _rationalize(x):
    try:
        fr = Fraction(mpmath.nstr(x, mpmath.mp.dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    except (ValueError, OverflowError):
        return None
    fr = fr.limit_denominator(10 ** (mpmath.mp.dps // 3))
    return mpq(fr.numerator, fr.denominator)


def _small_factors(f, roots, max_deg):
    """Monic rational factors of f of degree 2..max_deg built from root subsets."""
    rest = list(f)
    pool = list(roots)
    for k in range(2, max_deg + 1):
        if len(rest) - 1 < k or len(pool) > 24:
            break
        for sub in itertools.combinations(range(len(pool)), k):
            poly = [mpmath.mpc(1)]
            for i in sub:
                r = pool[i]
                nxt = [mpmath.mpc(0)] * (len(poly) + 1)
                for j, c in enumerate(poly):
                    nxt[j + 1] += c
                    nxt[j] -= c * r
                poly = nxt
            if any(abs(mpmath.im(c)) > mpmath.mpf(10) ** (-20) for c in poly):
                continue
            cand = [_rationalize(mpmath.re(c)) for c in poly]
            if any(c is None for c in cand):
                continue
            if _exact_divides(rest, cand):
                rest, _ = upoly_divmod(rest, cand)
                return [cand] + ([rest] if len(rest) > 2 else [])
    return []


def _roots_in_field(coeffs, K):
    """Roots in K of a polynomial with coefficients in K.

    Numeric roots under one embedding of K are matched against rational
    combinations of powers of the generator by integer relation detection;
    every candidate is confirmed by exact evaluation.
    """
    coeffs = [K.convert(c) for c in coeffs]
    size = sum(len(str(x)) for c in coeffs for x in c.coeffs)
    dps = max(120, 2 * size)
    found = []
    with mpmath.workdps(dps):
        mp_ = [mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in reversed(K.minpoly)]
        theta = mpmath.polyroots(mp_, maxsteps=400, extraprec=4 * dps)[0]
        pows = [mpmath.mpc(1)]
        for _ in range(K.degree - 1):
            pows.append(pows[-1] * theta)

        def embed(a):
            return sum((mpmath.mpf(int(x.numerator)) / int(x.denominator) * p
                        for x, p in zip(a.coeffs, pows)), mpmath.mpc(0))

        num = [embed(c) for c in reversed(coeffs)]
        try:
            roots = mpmath.polyroots(num, maxsteps=400, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            roots = mpmath.polyroots(num, maxsteps=4000, extraprec=8 * dps, error=False)
        mix = mpmath.sqrt(2) - mpmath.mpf(1) / 3
        for r in roots:
            xs = [mpmath.re(z) + mix * mpmath.im(z) for z in [mpmath.mpc(r)] + pows]
            try:
                rel = mpmath.pslq(xs, tol=mpmath.mpf(10) ** (-(dps * 2) // 3),
                                  maxcoeff=10 ** (dps // 4), maxsteps=50000)
            except (ValueError, ZeroDivisionError):
                rel = None
            if not rel or rel[0] == 0:
                continue
            cand = K.reduce([mpq(-c, rel[0]) for c in rel[1:]])
            val = K.zero
            for c in reversed(coeffs):
                val = val * cand + c
            if not val and cand not in found:
                found.append(cand)
    return found
