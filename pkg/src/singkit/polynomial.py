"""Sparse multivariate polynomials with local and global term orders.

A :class:`PolyRing` fixes the variable names, the coefficient domain and the
term order.  Polynomials are immutable dictionaries from exponent tuples to
nonzero coefficients.  The coefficient domain is a field (``QQ`` or a
:class:`~singkit.numbers.NumberField`) or another :class:`PolyRing`, which is
how parameter-dependent polynomials (coefficients in the parameters, local
variables outside) are represented.
"""

from functools import reduce as _reduce

from .errors import NonGerm, ZeroPolynomial
from .numbers import QQ, AlgebraicNumber, NumberField, mpq, to_rational

__all__ = [
    "TermOrder", "PolyRing", "Polynomial", "Ideal",
    "mono_mul", "mono_div", "mono_divides", "mono_lcm", "mono_deg",
    "ecart", "jacobian_ideal", "tjurina_ideal", "monomials_of_degree",
]


# monomials -------------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def monomials_of_degree(n, d):
    """All exponent tuples of length n and total degree d (lex descending)."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


# term orders -------------------------------------------------------------------

def _key_degrevlex(a):
    return (sum(a), tuple(-e for e in reversed(a)))


def _key_local(a):
    return (-sum(a), tuple(-e for e in reversed(a)))


def _key_lex(a):
    return a


def _key_homlocal(a):
    # first variable homogenizes; the local order breaks ties inside a degree
    return (sum(a), _key_local(a[1:]))


class TermOrder:
    """Monomial order given by a sort key: larger key means larger monomial.

    Kinds: ``"local"`` (antigraded degrevlex, 1 is the largest monomial),
    ``"global"`` (degrevlex), ``"lex"``, ``"block"`` (two orders on a
    split of the variables, the first block dominating) and ``"homlocal"``
    (total degree, then the local order on all but the first variable; used
    for homogenized standard basis computations).
    """

    _KEYS = {"local": _key_local, "global": _key_degrevlex, "lex": _key_lex,
             "homlocal": _key_homlocal}

    def __init__(self, kind="local", first=None, split=None, second=None):
        self.kind = kind
        if kind == "block":
            if first is None or second is None or split is None:
                raise ValueError("block order needs two orders and a split index")
            if first.is_local or second.is_local:
                raise ValueError("block orders are built from global orders")
            self.first, self.split, self.second = first, split, second
            k1, k2 = first.key, second.key

            def key(a, k1=k1, k2=k2, s=split):
                return (k1(a[:s]), k2(a[s:]))

            self.key = key
        elif kind in self._KEYS:
            self.key = self._KEYS[kind]
        else:
            raise ValueError(f"unknown term order {kind!r}")

    @classmethod
    def block(cls, first, split, second):
        if isinstance(first, str):
            first = cls(first)
        if isinstance(second, str):
            second = cls(second)
        return cls("block", first, split, second)

    @property
    def is_local(self):
        return self.kind == "local"

    def _ident(self):
        if self.kind == "block":
            return ("block", self.first._ident(), self.split, self.second._ident())
        return (self.kind,)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"TermOrder.block({self.first!r}, {self.split}, {self.second!r})"
        return f"TermOrder({self.kind!r})"

    def greater(self, a, b):
        return self.key(a) > self.key(b)


def _as_order(order):
    if isinstance(order, TermOrder):
        return order
    return TermOrder(order)


# rings -----------------------------------------------------------------------

class PolyRing:
    """Polynomial ring ``domain[variables]`` with an attached term order."""

    def __init__(self, variables, field=QQ, order="local"):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.field = field
        self.order = _as_order(order)
        self.nvars = len(self.variables)
        self._zero_exp = (0,) * self.nvars
        self._index = {v: i for i, v in enumerate(self.variables)}

    # identity
    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field!r}, {self.order!r})"

    # domain protocol (lets a PolyRing act as coefficient domain)
    is_extension = False

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return Polynomial(self, {self._zero_exp: self.field.one})

    def convert(self, x):
        return self(x)

    def contains(self, x):
        return isinstance(x, Polynomial) and x.ring == self

    def format(self, c):
        return str(c)

    # construction
    def index(self, name):
        return self._index[name]

    def gen(self, i):
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=None):
        c = self.field.one if coeff is None else self.field.convert(coeff)
        if not c:
            return self.zero
        return Polynomial(self, {tuple(exps): c})

    def constant(self, c):
        c = self.field.convert(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def from_dict(self, terms):
        conv = self.field.convert
        out = {}
        for m, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def __call__(self, x):
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return x.change_ring(self)
        if isinstance(x, str):
            from .parser import parse_in_ring
            return parse_in_ring(x, self)
        return self.constant(x)

    def parse(self, text):
        from .parser import parse_in_ring
        return parse_in_ring(text, self)

    def with_order(self, order):
        return PolyRing(self.variables, self.field, order)

    def with_field(self, field):
        return PolyRing(self.variables, field, self.order)

    def with_variables(self, variables, order=None):
        return PolyRing(variables, self.field, self.order if order is None else order)

    def sort_key(self, m):
        return self.order.key(m)


# polynomials -------------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_lead", "_sorted")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lead = None
        self._sorted = None

    # basic queries
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def coeff(self, m):
        return self.terms.get(tuple(m), self.ring.field.zero)

    def monomials(self):
        return list(self.terms)

    def sorted_terms(self):
        """Terms in descending order under the ring's term order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def _lead_term(self):
        if self._lead is None:
            if not self.terms:
                raise ZeroPolynomial("zero polynomial has no lead term")
            key = self.ring.order.key
            m = max(self.terms, key=key)
            self._lead = (m, self.terms[m])
        return self._lead

    @property
    def lm(self):
        return self._lead_term()[0]

    @property
    def lc(self):
        return self._lead_term()[1]

    @property
    def lt(self):
        return self._lead_term()

    def degree(self):
        """Total degree (-1 for the zero polynomial)."""
        return max((sum(m) for m in self.terms), default=-1)

    def low_degree(self):
        """Order of vanishing at the origin (-1 for zero)."""
        return min((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var):
        i = self.ring.index(var) if isinstance(var, str) else var
        return max((m[i] for m in self.terms), default=-1)

    def used_variables(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            return None
        try:
            return self.ring.constant(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Polynomial) and (other.ring is self.ring or other.ring == self.ring):
            return self._mul_poly(other)
        try:
            c = self.ring.field.convert(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def _mul_poly(self, o, bound=None):
        if not self.terms or not o.terms:
            return Polynomial(self.ring, {})
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for m1, c1 in b.items():
            d1 = sum(m1) if bound is not None else 0
            for m2, c2 in a.items():
                if bound is not None and d1 + sum(m2) >= bound:
                    continue
                m = tuple(x + y for x, y in zip(m1, m2))
                v = get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    def mul_truncated(self, other, bound):
        """Product with all terms of total degree >= bound dropped."""
        return self._mul_poly(other, bound)

    def scale(self, c):
        if not c:
            return Polynomial(self.ring, {})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono, c):
        """Multiply by the single term c*x^mono."""
        if not c:
            return Polynomial(self.ring, {})
        return Polynomial(self.ring, {tuple(x + y for x, y in zip(m, mono)): v * c
                                      for m, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if other.is_constant() and other:
                other = other.constant_coeff()
            else:
                return NotImplemented
        c = self.ring.field.convert(other)
        return self.scale(1 / c)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_truncated(self, n, bound):
        result = self.ring.one.truncate(bound)
        base = self.truncate(bound)
        while n:
            if n & 1:
                result = result.mul_truncated(base, bound)
            n >>= 1
            if n:
                base = base.mul_truncated(base, bound)
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # transformations
    def monic(self):
        if not self.terms:
            return self
        return self.scale(1 / self.lc)

    def truncate(self, bound):
        """Drop all terms of total degree >= bound."""
        if bound is None:
            return self
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) < bound})

    def homogeneous_part(self, d):
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def diff(self, var):
        i = self.ring.index(var) if isinstance(var, str) else var
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = c * e
        return Polynomial(self.ring, out)

    def map_coeffs(self, fn, ring=None):
        ring = self.ring if ring is None else ring
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return Polynomial(ring, out)

    def change_ring(self, ring):
        """Reinterpret in a ring with the same variables (or a superset by name)."""
        if ring.variables == self.ring.variables:
            conv = ring.field.convert
            return self.map_coeffs(conv, ring)
        idx = []
        for v in self.ring.variables:
            if v not in ring._index:
                if any(m[self.ring.index(v)] for m in self.terms):
                    raise ValueError(f"variable {v} not present in target ring")
                idx.append(None)
            else:
                idx.append(ring._index[v])
        out = {}
        conv = ring.field.convert
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for j, k in enumerate(m):
                if k:
                    e[idx[j]] = k
            c = conv(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(ring, out)

    def compose(self, images, ring=None, bound=None):
        """Substitute ``images[i]`` for the i-th variable.

        All images must live in ``ring``; terms of total degree >= ``bound``
        are dropped along the way (valid when that power of the maximal
        ideal is zero in the quotient of interest).
        """
        if ring is None:
            ring = images[0].ring if images else self.ring
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        cache = [dict() for _ in images]

        def power(i, e):
            c = cache[i]
            if e not in c:
                if e == 0:
                    c[e] = ring.one
                elif e == 1:
                    c[e] = images[i].truncate(bound)
                else:
                    half = power(i, e // 2)
                    p = half.mul_truncated(half, bound) if bound else half * half
                    if e % 2:
                        p = p.mul_truncated(power(i, 1), bound) if bound else p * power(i, 1)
                    c[e] = p
            return c[e]

        conv = ring.field.convert
        acc = {}
        for m, c in self.terms.items():
            term = ring.constant(conv(c))
            for i, e in enumerate(m):
                if e:
                    p = power(i, e)
                    term = term.mul_truncated(p, bound) if bound else term * p
                    if not term:
                        break
            for mm, cc in term.terms.items():
                v = acc.get(mm)
                acc[mm] = cc if v is None else v + cc
        return Polynomial(ring, {m: c for m, c in acc.items() if c})

    def evaluate(self, point):
        """Evaluate at a point (sequence of coefficient-domain values)."""
        total = self.ring.field.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def subs(self, assignment):
        """Partial substitution ``{var: value}`` with values in the coefficient domain."""
        idx = {self.ring.index(k) if isinstance(k, str) else k: v for k, v in assignment.items()}
        out = {}
        for m, c in self.terms.items():
            v = c
            mm = list(m)
            for i, x in idx.items():
                if m[i]:
                    v = v * x ** m[i]
                    mm[i] = 0
            mm = tuple(mm)
            w = out.get(mm)
            out[mm] = v if w is None else w + v
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    def linear_coefficients(self):
        """Coefficients of the degree-one monomials, indexed by variable."""
        n = self.ring.nvars
        zero = self.ring.field.zero
        out = [zero] * n
        for m, c in self.terms.items():
            if sum(m) == 1:
                out[m.index(1)] = c
        return out

    # printing
    def __str__(self):
        from .parser import format_polynomial
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def ecart(f):
    """Degree spread deg(f) - deg(lead(f)) of a nonzero polynomial."""
    if not f:
        raise ZeroPolynomial("ecart of the zero polynomial")
    return f.degree() - sum(f.lm)


# ideals ----------------------------------------------------------------------

class Ideal:
    """Finitely generated ideal; generators share one ring."""

    def __init__(self, ring, gens=()):
        self.ring = ring
        conv = []
        for g in gens:
            g = ring(g)
            conv.append(g)
        self.gens = tuple(conv)

    def nonzero_gens(self):
        return [g for g in self.gens if g]

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        body = ", ".join(str(g) for g in self.gens)
        return f"Ideal({list(self.ring.variables)}: {body})"

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(other))

    def change_ring(self, ring):
        return Ideal(ring, [g.change_ring(ring) for g in self.gens])

    def with_order(self, order):
        ring = self.ring.with_order(order)
        return self.change_ring(ring)


def jacobian_ideal(f):
    """Ideal of all partial derivatives of a germ f."""
    if f.constant_coeff():
        raise NonGerm("germ must vanish at the origin")
    return Ideal(f.ring, [f.diff(i) for i in range(f.ring.nvars)])


def tjurina_ideal(f):
    """Jacobian ideal plus (f)."""
    j = jacobian_ideal(f)
    return Ideal(f.ring, j.gens + (f,))
