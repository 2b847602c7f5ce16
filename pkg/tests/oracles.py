"""Independent reference computations built on sympy.

Nothing here imports singkit internals except to convert polynomials, so a
bug in the kernel cannot hide behind the same bug in its check.
"""

import sympy as sp


def to_sympy(p, names=None):
    names = names or p.ring.variables
    syms = sp.symbols(names)
    expr = sp.Integer(0)
    for m, c in p.terms.items():
        term = sp.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(syms, m):
            term *= s ** e
        expr += term
    return sp.expand(expr)


def hessian_det(expr, names):
    syms = sp.symbols(names)
    return sp.expand(sp.hessian(expr, syms).det())


def weighted_milnor(weights):
    """Milnor-Orlik: mu = prod(1/w - 1) for a quasihomogeneous isolated germ."""
    out = sp.Integer(1)
    for w in weights:
        out *= (1 / sp.Rational(w) - 1)
    return out


def coefficient_a(p, q, r):
    return p * q * r - p * q - q * r - p * r


def coefficient_c(p, q, r, i):
    a = coefficient_a(p, q, r)
    num = sp.Integer(1)
    for k in range(1, i + 1):
        num *= coefficient_a(p - k + 1, q, r)
    return sp.Rational(num, sp.factorial(i) * sp.Integer(a) ** (i - 2))


def global_quotient_dim(polys, names):
    """dim_Q Q[x]/(polys) via a sympy Groebner basis, or None if infinite."""
    syms = sp.symbols(names)
    G = sp.groebner(polys, *syms, order="grevlex")
    leads = [sp.Poly(g, *syms).monoms(order="grevlex")[0] for g in G.exprs]
    n = len(syms)
    for i in range(n):
        if not any(all(m[j] == 0 for j in range(n) if j != i) and m[i] > 0 for m in leads):
            return None
    bound = [min(m[i] for m in leads if m[i] > 0 and all(m[j] == 0 for j in range(n) if j != i))
             for i in range(n)]
    count = 0

    def rec(prefix):
        nonlocal count
        k = len(prefix)
        if k == n:
            if not any(all(a >= b for a, b in zip(prefix, m)) for m in leads):
                count += 1
            return
        for e in range(bound[k]):
            rec(prefix + (e,))

    rec(())
    return count
