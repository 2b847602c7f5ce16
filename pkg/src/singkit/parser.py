"""Text syntax for polynomials, ideal files and map files.

Grammar (whitespace insignificant)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (['*'|'/'] factor)*      # juxtaposition multiplies
    factor  := primary ('^' | '**') integer | primary
    primary := integer | name | '(' expr ')' | '-' factor

Division is only allowed by nonzero constants, so ``-30445/7392*s1^2`` and
``x/2`` parse while ``x/y`` does not.  Names are matched greedily against the
declared variables, which makes ``x2y3`` read as ``x*2*y*3`` and ``xyz`` as
``x*y*z`` when x, y, z are declared.  ``theta`` denotes the generator of the
coefficient extension when one is declared.
"""

import re
from dataclasses import dataclass, field as dc_field

from .errors import PolynomialSyntaxError, UnknownVariable
from .numbers import (QQ, AlgebraicNumber, NumberField, RadicalAlgebra, RadicalElement, mpq,
                      upoly_trim)
from .polynomial import Ideal, PolyRing, Polynomial

__all__ = [
    "parse_polynomial", "parse_in_ring", "format_polynomial", "parse_minpoly",
    "IdealFile", "MapFile", "read_ideal_text", "load_ideal", "format_ideal_file",
    "read_map_text", "load_map", "format_map_file", "parse_radicals",
]

THETA = "theta"
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"\d+")


class _Parser:
    def __init__(self, text, ring, line=None, allow_theta=True):
        self.text = text
        self.ring = ring
        self.pos = 0
        self.line = line
        self.names = sorted(ring.variables, key=len, reverse=True)
        self.theta = (THETA if allow_theta and isinstance(ring.field, NumberField)
                      and THETA not in ring.variables else None)
        if self.theta:
            self.names = sorted(self.names + [THETA], key=len, reverse=True)
        self.radicals = {}
        if allow_theta and isinstance(ring.field, RadicalAlgebra):
            for i, name in enumerate(ring.field.names):
                if name not in ring.variables:
                    self.radicals[name] = i
            self.names = sorted(self.names + list(self.radicals), key=len, reverse=True)

    def error(self, msg, pos=None):
        raise PolynomialSyntaxError(msg, self.pos if pos is None else pos, self.line)

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        if not self.text.strip():
            self.error("empty expression")
        val = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.text[self.pos]!r}")
        return val

    def expr(self):
        ch = self.peek()
        neg = False
        if ch in "+-":
            neg = ch == "-"
            self.pos += 1
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                acc = acc + self.term()
            elif ch == "-":
                self.pos += 1
                acc = acc - self.term()
            else:
                return acc

    def _starts_factor(self, ch):
        return ch.isdigit() or ch.isalpha() or ch in "(_"

    def term(self):
        acc = self.factor()
        while True:
            ch = self.peek()
            if ch == "*" and self.text[self.pos:self.pos + 2] != "**":
                self.pos += 1
                acc = acc * self.factor()
            elif ch == "/":
                self.pos += 1
                start = self.pos
                d = self.factor()
                if not d.is_constant() or not d:
                    self.error("division only by nonzero constants", start)
                acc = acc / d.constant_coeff()
            elif ch and self._starts_factor(ch):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        base = self.primary()
        self.skip()
        if self.text.startswith("**", self.pos):
            self.pos += 2
        elif self.text.startswith("^", self.pos):
            self.pos += 1
        else:
            return base
        self.skip()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            self.error("exponent must be a non-negative integer")
        self.pos = m.end()
        return base ** int(m.group())

    def primary(self):
        ch = self.peek()
        if not ch:
            self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            val = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return val
        if ch.isdigit():
            m = _INT_RE.match(self.text, self.pos)
            self.pos = m.end()
            return self.ring.constant(mpq(int(m.group())))
        if ch.isalpha() or ch == "_":
            for name in self.names:
                if self.text.startswith(name, self.pos):
                    self.pos += len(name)
                    if name == self.theta:
                        return self.ring.constant(self.ring.field.gen)
                    if name in self.radicals:
                        return self.ring.constant(self.ring.field.gen(self.radicals[name]))
                    return self.ring.gen(name)
            m = _NAME_RE.match(self.text, self.pos)
            raise UnknownVariable(m.group(), self.pos, self.line)
        self.error(f"unexpected character {ch!r}")


def parse_in_ring(text, ring, line=None):
    return _Parser(text, ring, line).parse()


def parse_polynomial(text, variables, field=QQ, order="local"):
    """Parse ``text`` as a polynomial in ``variables`` over ``field``."""
    ring = variables if isinstance(variables, PolyRing) else PolyRing(variables, field, order)
    return parse_in_ring(text, ring)


def parse_minpoly(text):
    """Parse ``theta^2 + 1386/6089`` into a :class:`NumberField`."""
    ring = PolyRing([THETA], QQ, "global")
    p = parse_in_ring(text, ring)
    coeffs = [mpq(0)] * (p.degree() + 1)
    for (e,), c in p.terms.items():
        coeffs[e] = c
    return NumberField(coeffs, THETA)


_RADICAL_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\^\s*(\d+)\s*=\s*(.+?)\s*$")


def parse_radicals(text, line=None):
    """Parse ``w1^2 = -3/4, w2^5 = 7`` into a :class:`RadicalAlgebra`."""
    names, rads = [], []
    scalar = PolyRing(["_"], QQ, "global")
    for part in text.split(","):
        m = _RADICAL_RE.match(part)
        if not m:
            raise PolynomialSyntaxError(f"bad radical declaration {part.strip()!r}", 0, line)
        k = parse_in_ring(m.group(3), scalar, line)
        if not k.is_constant() or not k:
            raise PolynomialSyntaxError("radicands must be nonzero rationals", 0, line)
        names.append(m.group(1))
        rads.append((int(m.group(2)), k.constant_coeff()))
    return RadicalAlgebra(rads, names)


def _field_header(field):
    if isinstance(field, NumberField):
        return f"minpoly: {field.minpoly_str()}"
    if isinstance(field, RadicalAlgebra):
        return f"radicals: {field.describe()}"
    return None


# printing ----------------------------------------------------------------------

def _format_monomial(m, names):
    parts = []
    for e, v in zip(m, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _coeff_sign_body(c):
    """Split a coefficient into (negative?, printable magnitude, needs_parens)."""
    if isinstance(c, RadicalElement):
        if c.is_rational():
            return _coeff_sign_body(c.terms.get(c.algebra.zero_exp, mpq(0)))
        if len(c.terms) == 1:
            text = str(c)
            if text.startswith("-"):
                return True, text[1:], False
            return False, text, False
        return False, str(c), True
    if isinstance(c, Polynomial):
        if len(c.terms) == 1:
            (m, v), = c.terms.items()
            if not any(m):
                return _coeff_sign_body(v)
            neg, body, _ = _coeff_sign_body(v)
            mon = _format_monomial(m, c.ring.variables)
            if body == "1":
                return neg, mon, False
            return neg, f"{body}*{mon}", False
        return False, str(c), True
    if isinstance(c, AlgebraicNumber):
        if c.is_rational():
            return _coeff_sign_body(c.coeffs[0])
        nz = [i for i, x in enumerate(c.coeffs) if x]
        if len(nz) == 1:
            i = nz[0]
            q = c.coeffs[i]
            gen = THETA if i == 1 else f"{THETA}^{i}"
            neg = q < 0
            mag = -q if neg else q
            return neg, gen if mag == 1 else f"{mag}*{gen}", False
        return False, str(c), True
    neg = c < 0
    return neg, str(-c if neg else c), False


def format_polynomial(p):
    """Canonical text: terms descending under the ring order, exact coefficients."""
    if not p.terms:
        return "0"
    names = p.ring.variables
    out = []
    for m, c in p.sorted_terms():
        neg, body, paren = _coeff_sign_body(c)
        mon = _format_monomial(m, names)
        if paren:
            body = f"({body})"
        if mon:
            text = mon if body == "1" else f"{body}*{mon}"
        else:
            text = body
        if not out:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


# ideal files -------------------------------------------------------------------

@dataclass
class IdealFile:
    ring: PolyRing
    ideal: Ideal
    headers: dict = dc_field(default_factory=dict)


_HEADER_RE = re.compile(r"^\s*([A-Za-z_]+)\s*:\s*(.*)$")


def _split_headers(text):
    headers = {}
    body = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _HEADER_RE.match(line)
        if m and "->" not in line and not body:
            headers[m.group(1).lower()] = (m.group(2).strip(), lineno)
        else:
            body.append((line.strip(), lineno))
    return headers, body


def _ring_from_headers(headers, default_order="local"):
    if "vars" not in headers:
        raise PolynomialSyntaxError("missing 'vars:' header", line=1)
    names = [v.strip() for v in headers["vars"][0].split(",") if v.strip()]
    order = headers.get("order", (default_order, 0))[0].lower()
    if order not in ("local", "global", "lex"):
        raise PolynomialSyntaxError(f"unknown order {order!r}", line=headers["order"][1])
    fld = QQ
    if "minpoly" in headers and "radicals" in headers:
        raise PolynomialSyntaxError("declare either 'minpoly:' or 'radicals:'",
                                    line=headers["radicals"][1])
    if "radicals" in headers:
        text, lineno = headers["radicals"]
        fld = parse_radicals(text, lineno)
    if "minpoly" in headers:
        text, lineno = headers["minpoly"]
        try:
            fld = parse_minpoly(text)
        except PolynomialSyntaxError as exc:
            raise PolynomialSyntaxError(str(exc), exc.position, lineno) from None
    return PolyRing(names, fld, order)


def read_ideal_text(text):
    headers, body = _split_headers(text)
    ring = _ring_from_headers(headers)
    gens = [parse_in_ring(line, ring, lineno) for line, lineno in body]
    return IdealFile(ring, Ideal(ring, gens), {k: v[0] for k, v in headers.items()})


def load_ideal(path):
    """Load an ideal file: ``vars:``, ``order:``, optional ``minpoly:``, generators."""
    with open(path) as fh:
        return read_ideal_text(fh.read()).ideal


def format_ideal_file(ideal):
    ring = ideal.ring
    lines = [f"vars: {','.join(ring.variables)}"]
    kind = ring.order.kind if ring.order.kind in ("local", "global", "lex") else "global"
    lines.append(f"order: {kind}")
    head = _field_header(ring.field)
    if head:
        lines.append(head)
    lines.extend(str(g) for g in ideal.gens)
    return "\n".join(lines) + "\n"


# map files -------------------------------------------------------------------

@dataclass
class MapFile:
    """Images of source variables as polynomials in the target ring."""
    source: tuple
    target: PolyRing
    images: dict


def read_map_text(text):
    headers, body = _split_headers(text)
    ring = _ring_from_headers(headers)
    images = {}
    order = []
    for line, lineno in body:
        if "->" not in line:
            raise PolynomialSyntaxError("expected '<var> -> <polynomial>'", line=lineno)
        lhs, rhs = line.split("->", 1)
        name = lhs.strip()
        if not _NAME_RE.fullmatch(name):
            raise PolynomialSyntaxError(f"bad source variable {name!r}", 0, lineno)
        images[name] = parse_in_ring(rhs.strip(), ring, lineno)
        order.append(name)
    if "source" in headers:
        src = tuple(v.strip() for v in headers["source"][0].split(",") if v.strip())
    else:
        src = tuple(order)
    return MapFile(src, ring, images)


def load_map(path):
    from .isomorphy import AlgebraMap
    with open(path) as fh:
        mf = read_map_text(fh.read())
    return AlgebraMap(mf.source, mf.target, [mf.images[s] for s in mf.source])


def format_map_file(amap):
    ring = amap.target
    lines = [f"vars: {','.join(ring.variables)}", "order: local"]
    head = _field_header(ring.field)
    if head:
        lines.append(head)
    lines.append(f"source: {','.join(amap.source)}")
    for s, img in zip(amap.source, amap.images):
        lines.append(f"{s} -> {img}")
    return "\n".join(lines) + "\n"
