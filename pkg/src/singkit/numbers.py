"""Exact coefficient fields: the rationals and simple algebraic extensions.

Rationals are ``gmpy2.mpq`` values, which are always kept in lowest terms
with a positive denominator.  A simple extension ``Q(theta)`` is described by
a monic squarefree defining polynomial; its elements are coefficient tuples
of length ``deg m`` reduced modulo ``m``.

Univariate polynomials in this module are plain lists of coefficients,
constant term first.  The helpers work for any coefficient type supporting
the field operations, so they are reused over extension fields.
"""

from fractions import Fraction
from numbers import Integral, Rational as _RationalABC

from gmpy2 import mpq

from .errors import NotMonic, NotSquarefree, ZeroDivisor

__all__ = [
    "mpq", "QQ", "RationalField", "NumberField", "AlgebraicNumber",
    "RadicalAlgebra", "RadicalElement", "rational_root",
    "field_extend", "invert", "to_rational",
    "upoly_trim", "upoly_add", "upoly_sub", "upoly_mul", "upoly_divmod",
    "upoly_gcd", "upoly_xgcd", "upoly_deriv", "upoly_eval", "upoly_monic",
    "upoly_str",
]


def to_rational(x):
    """Convert ints, Fractions, mpq or 'a/b' strings into an mpq."""
    if isinstance(x, type(mpq())):
        return x
    if isinstance(x, (Integral, Fraction, _RationalABC)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, AlgebraicNumber) and x.is_rational():
        return x.coeffs[0]
    if isinstance(x, RadicalElement) and x.is_rational():
        return x.terms.get(x.algebra.zero_exp, mpq(0))
    raise TypeError(f"cannot convert {x!r} to a rational")


# univariate helpers ---------------------------------------------------------

def upoly_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def upoly_add(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return upoly_trim(out)


def upoly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return upoly_trim(out)


def upoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return upoly_trim(out)


def upoly_divmod(a, b):
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = upoly_trim(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    inv_lead = 1 / b[-1] if not isinstance(b[-1], int) else mpq(1, b[-1])
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c = r[-1] * inv_lead
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = r[i + shift] - c * y
        r = upoly_trim(r[:-1] if not r[-1] else r)
    return upoly_trim(q), r


def upoly_monic(a):
    a = upoly_trim(a)
    if not a:
        return a
    inv = 1 / a[-1] if not isinstance(a[-1], int) else mpq(1, a[-1])
    return [c * inv for c in a]


def upoly_gcd(a, b):
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return upoly_monic(a)


def upoly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = upoly_trim(a), upoly_trim(b)
    s0, s1 = [mpq(1)], []
    t0, t1 = [], [mpq(1)]
    while r1:
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, upoly_sub(s0, upoly_mul(q, s1))
        t0, t1 = t1, upoly_sub(t0, upoly_mul(q, t1))
    if not r0:
        return [], s0, t0
    inv = 1 / r0[-1]
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


def upoly_deriv(a):
    return upoly_trim([i * a[i] for i in range(1, len(a))])


def upoly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def upoly_str(a, var="theta"):
    if not upoly_trim(a):
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        parts.append(_term_str(c, var, i))
    return _join_signed(parts)


def _term_str(c, var, e):
    neg = c < 0
    mag = -c if neg else c
    mon = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
    if not mon:
        body = str(mag)
    elif mag == 1:
        body = mon
    else:
        body = f"{mag}*{mon}"
    return ("-" if neg else "+", body)


def _join_signed(parts):
    out = ""
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out = body if sign == "+" else "-" + body
        else:
            out += f" {sign} {body}"
    return out


# fields ----------------------------------------------------------------------

class RationalField:
    """The field Q; elements are mpq."""

    degree = 1
    is_extension = False

    def __call__(self, x):
        return to_rational(x)

    convert = __call__

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def contains(self, x):
        return isinstance(x, (type(mpq()), int))

    def format(self, c):
        return str(c)


QQ = RationalField()


class NumberField:
    """Simple algebraic extension Q[theta]/(m(theta)).

    ``minpoly`` holds the rational coefficients of the monic defining
    polynomial, constant term first.  Irreducibility is not certified; a
    reducible modulus shows up as :class:`ZeroDivisor` on inversion.
    """

    is_extension = True

    def __init__(self, minpoly, name="theta"):
        m = [to_rational(c) for c in upoly_trim(minpoly)]
        if len(m) < 3:
            raise ValueError("defining polynomial must have degree >= 2")
        if m[-1] != 1:
            raise NotMonic(f"defining polynomial must be monic, leading coefficient {m[-1]}")
        if len(upoly_gcd(m, upoly_deriv(m))) > 1:
            raise NotSquarefree(upoly_str(m, name))
        self.minpoly = tuple(m)
        self.degree = len(m) - 1
        self.name = name
        self._zero = AlgebraicNumber(self, (mpq(0),) * self.degree)
        self._one = AlgebraicNumber(self, (mpq(1),) + (mpq(0),) * (self.degree - 1))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({upoly_str(self.minpoly, self.name)})"

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def gen(self):
        c = [mpq(0)] * self.degree
        c[1] = mpq(1)
        return AlgebraicNumber(self, tuple(c))

    def reduce(self, coeffs):
        """Canonical representative of a coefficient list modulo the minpoly."""
        c = upoly_trim([to_rational(x) for x in coeffs])
        d = self.degree
        m = self.minpoly
        while len(c) > d:
            top = c.pop()
            if top:
                shift = len(c) - d
                for i in range(d):
                    c[shift + i] -= top * m[i]
        c = c + [mpq(0)] * (d - len(c))
        return AlgebraicNumber(self, tuple(c))

    def __call__(self, x):
        if isinstance(x, AlgebraicNumber):
            if x.field == self:
                return x
            if x.is_rational():
                x = x.coeffs[0]
            else:
                raise ValueError(f"element {x} lives in a different extension")
        q = to_rational(x)
        return AlgebraicNumber(self, (q,) + (mpq(0),) * (self.degree - 1))

    convert = __call__

    def contains(self, x):
        return isinstance(x, AlgebraicNumber) and x.field == self

    def format(self, c):
        return str(c)

    def minpoly_str(self):
        return upoly_str(self.minpoly, self.name)


class AlgebraicNumber:
    """Element of a :class:`NumberField` in canonical reduced form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def is_rational(self):
        return not any(self.coeffs[1:])

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is self.field or other.field == self.field:
                return other
            if other.is_rational():
                return self.field(other.coeffs[0])
            raise ValueError("mixing elements of different extensions")
        try:
            return self.field(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, AlgebraicNumber):
            try:
                q = to_rational(other)
            except TypeError:
                return NotImplemented
            return AlgebraicNumber(self.field, tuple(a * q for a in self.coeffs))
        o = self._coerce(other)
        if self.is_rational():
            q = self.coeffs[0]
            return AlgebraicNumber(self.field, tuple(q * b for b in o.coeffs))
        if o.is_rational():
            q = o.coeffs[0]
            return AlgebraicNumber(self.field, tuple(a * q for a in self.coeffs))
        return self.field.reduce(upoly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.field(1 / self.coeffs[0])
        g, s, _ = upoly_xgcd(list(self.coeffs), list(self.field.minpoly))
        if len(g) > 1:
            raise ZeroDivisor(tuple(g), upoly_str(g, self.field.name))
        return self.field.reduce(s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            q = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.is_rational() and self.coeffs[0] == q

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __str__(self):
        return upoly_str(list(self.coeffs), self.field.name)

    def __repr__(self):
        return f"AlgebraicNumber({self})"


def field_extend(minpoly, name="theta"):
    """Build Q(theta) from the coefficient list (constant first) of a monic minpoly."""
    return NumberField(minpoly, name)


def invert(e):
    """Multiplicative inverse of a rational or algebraic number."""
    if isinstance(e, AlgebraicNumber):
        return e.inverse()
    q = to_rational(e)
    if not q:
        raise ZeroDivisionError("inverse of zero")
    return 1 / q


# several radicals -----------------------------------------------------------------

def rational_root(q, n):
    """Exact n-th root of a rational in Q, or None."""
    from gmpy2 import iroot
    q = to_rational(q)
    if n == 1:
        return q
    neg = q < 0
    if neg:
        if n % 2 == 0:
            return None
        q = -q
    a, ok1 = iroot(q.numerator, n)
    b, ok2 = iroot(q.denominator, n)
    if not (ok1 and ok2):
        return None
    r = mpq(int(a), int(b))
    return -r if neg else r


class RadicalAlgebra:
    """Q[w1, ..., wk]/(w1^n1 - K1, ..., wk^nk - Kk) with sparse elements.

    Meant for scalars that are monomials in a few radicals.  The quotient is
    not always a field, but all Ki are nonzero so every monomial is a unit;
    identities checked here survive every choice of complex roots.
    """

    is_extension = True

    def __init__(self, radicals, names=None):
        rads = []
        for n, k in radicals:
            k = to_rational(k)
            if int(n) < 2 or not k:
                raise ValueError("radicals need exponent >= 2 and a nonzero radicand")
            rads.append((int(n), k))
        if not rads:
            raise ValueError("at least one radical is required")
        self.radicals = tuple(rads)
        self.names = tuple(names) if names else tuple(f"w{i + 1}" for i in range(len(rads)))
        self.zero_exp = (0,) * len(rads)
        self.degree = 1
        for n, _ in rads:
            self.degree *= n

    def __eq__(self, other):
        return (isinstance(other, RadicalAlgebra) and self.radicals == other.radicals
                and self.names == other.names)

    def __hash__(self):
        return hash((self.radicals, self.names))

    def __repr__(self):
        return f"RadicalAlgebra({self.describe()})"

    def describe(self):
        return ", ".join(f"{v}^{n} = {k}" for v, (n, k) in zip(self.names, self.radicals))

    @property
    def zero(self):
        return RadicalElement(self, {})

    @property
    def one(self):
        return RadicalElement(self, {self.zero_exp: mpq(1)})

    def gen(self, i):
        e = [0] * len(self.radicals)
        e[i] = 1
        return RadicalElement(self, {tuple(e): mpq(1)})

    @property
    def gens(self):
        return [self.gen(i) for i in range(len(self.radicals))]

    def monomial(self, exps, coeff=1):
        """coeff * prod w_i^e_i for arbitrary integer exponents."""
        c = to_rational(coeff)
        red = []
        for e, (n, k) in zip(exps, self.radicals):
            q, r = divmod(e, n)
            c *= k ** q
            red.append(r)
        return RadicalElement(self, {tuple(red): c} if c else {})

    def __call__(self, x):
        if isinstance(x, RadicalElement):
            if x.algebra == self:
                return x
            if x.is_rational():
                x = to_rational(x)
            else:
                raise ValueError("element lives in a different radical algebra")
        q = to_rational(x)
        return RadicalElement(self, {self.zero_exp: q} if q else {})

    convert = __call__

    def contains(self, x):
        return isinstance(x, RadicalElement) and x.algebra == self

    def format(self, c):
        return str(c)


class RadicalElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def is_rational(self):
        z = self.algebra.zero_exp
        return all(e == z for e in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def _coerce(self, other):
        if isinstance(other, RadicalElement):
            if other.algebra is self.algebra or other.algebra == self.algebra:
                return other
            if other.is_rational():
                return self.algebra(to_rational(other))
            raise ValueError("mixing elements of different radical algebras")
        try:
            return self.algebra(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return RadicalElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return RadicalElement(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        rads = self.algebra.radicals
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                c = c1 * c2
                e = []
                for a, b, (n, k) in zip(e1, e2, rads):
                    s = a + b
                    if s >= n:
                        s -= n
                        c *= k
                    e.append(s)
                e = tuple(e)
                v = out.get(e)
                out[e] = c if v is None else v + c
        return RadicalElement(self.algebra, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def inverse(self):
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        alg = self.algebra
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return alg.monomial([-x for x in e], 1 / c)
        return self._inverse_linear()

    def _inverse_linear(self):
        # solve self * y = 1 on the monomial basis
        from itertools import product
        from .linalg import solve_linear
        alg = self.algebra
        basis = list(product(*[range(n) for n, _ in alg.radicals]))
        index = {b: i for i, b in enumerate(basis)}
        cols = []
        for b in basis:
            img = self * RadicalElement(alg, {b: mpq(1)})
            col = [mpq(0)] * len(basis)
            for e, c in img.terms.items():
                col[index[e]] = c
            cols.append(col)
        rows = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
        rhs = [mpq(0)] * len(basis)
        rhs[index[alg.zero_exp]] = mpq(1)
        sol = solve_linear(rows, rhs)
        if sol is None:
            raise ZeroDivisor(str(self), f"non-invertible element {self}")
        return RadicalElement(alg, {b: c for b, c in zip(basis, sol) if c})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return self.algebra.monomial([x * n for x in e], c ** n)
        result = self.algebra.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, RadicalElement):
            return self.algebra == other.algebra and self.terms == other.terms
        try:
            q = to_rational(other)
        except TypeError:
            return NotImplemented
        if not q:
            return not self.terms
        return self.terms == {self.algebra.zero_exp: q}

    def __hash__(self):
        if self.is_rational():
            return hash(self.terms.get(self.algebra.zero_exp, mpq(0)))
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.algebra.names
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            mon = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(names, e) if k)
            if not mon:
                parts.append((sign, str(mag)))
            elif mag == 1:
                parts.append((sign, mon))
            else:
                parts.append((sign, f"{mag}*{mon}"))
        return _join_signed(parts)

    def __repr__(self):
        return f"RadicalElement({self})"
