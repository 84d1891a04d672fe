"""Laurent polynomials in n variables over a finite field.

Terms map integer exponent vectors to nonzero coefficients (coefficient
vectors of the base field).  Supports parsing, evaluation on the torus,
Newton polytope extraction, restriction to polytope faces, and the toric
partials x_i d/dx_i.
"""

import re
from dataclasses import dataclass, field as dc_field

from .config import DEFAULT
from .errors import ZetamillError
from .ffield import FieldDesc, FieldElem, embed, invert
from .lattice import Face, LatticePolytope, convex_hull


class ParseError(ZetamillError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True, eq=True)
class LaurentPoly:
    """Finite map exponent vector -> nonzero coefficient; immutable by
    convention after construction."""

    n: int
    field: FieldDesc
    terms: dict = dc_field(compare=True)

    def __post_init__(self):
        for u, c in self.terms.items():
            if len(u) != self.n:
                raise ZetamillError(f"exponent {u} has wrong arity for n={self.n}")
            if not any(c):
                raise ZetamillError("zero coefficient stored in term map")

    @property
    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def coefficient(self, u) -> FieldElem:
        return FieldElem(self.terms.get(tuple(u), self.field.zero()))

    def __repr__(self):
        if self.is_zero:
            return "LaurentPoly(0)"
        bits = []
        for u in sorted(self.terms):
            c = self.terms[u]
            mono = "*".join(f"x{i+1}^{e}" for i, e in enumerate(u) if e != 0) or "1"
            bits.append(f"{list(c)}*{mono}")
        return f"LaurentPoly({' + '.join(bits)})"


def make_laurent(n: int, F: FieldDesc, terms) -> LaurentPoly:
    """Build from {exponent tuple: coefficient}, combining and dropping zeros.
    Coefficients may be ints (reduced mod p) or coefficient tuples."""
    acc = {}
    for u, c in terms.items():
        u = tuple(int(e) for e in u)
        if isinstance(c, int):
            c = F.from_int(c)
        elif isinstance(c, FieldElem):
            c = c.coeffs
        prev = acc.get(u, F.zero())
        acc[u] = F.add(prev, tuple(c))
    return LaurentPoly(n=n, field=F, terms={u: c for u, c in acc.items() if any(c)})


_TOKEN = re.compile(r"\s*(?:(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|"
                    r"(?P<op>[-+*^()]))")


def parse_laurent(text: str, n: int, F: FieldDesc, aliases=None) -> LaurentPoly:
    """Parse the term grammar: terms joined by + / -, each term a '*'-separated
    product of an optional integer coefficient and factors xJ or xJ^E with
    signed integer exponent E.  Whitespace is insignificant.

    aliases maps extra variable names (e.g. a family parameter "y") to
    1-based variable indices.
    """
    aliases = aliases or {}
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or not text[pos:].strip():
            if not text[pos:].strip():
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()

    terms = {}
    i = 0

    def var_index(name, at):
        if name in aliases:
            j = aliases[name]
        elif name[0] == "x" and name[1:].isdigit():
            j = int(name[1:])
        else:
            raise ParseError(f"unknown variable {name!r}", at)
        if not (1 <= j <= n):
            raise ParseError(f"variable index {j} out of range 1..{n}", at)
        return j - 1

    sign = 1
    first = True
    while i < len(tokens):
        kind, val, at = tokens[i]
        if kind == "op" and val in "+-":
            sign = 1 if val == "+" else -1
            i += 1
        elif not first:
            raise ParseError(f"expected + or - before {val!r}", at)
        if i >= len(tokens):
            raise ParseError("dangling sign", at)
        first = False
        coeff = 1
        expo = [0] * n
        expect_factor = True
        while i < len(tokens):
            kind, val, at = tokens[i]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError(f"expected * before {val!r}", at)
            if kind == "int":
                coeff *= int(val)
                i += 1
            elif kind == "var":
                j = var_index(val, at)
                e = 1
                if i + 1 < len(tokens) and tokens[i + 1][:2] == ("op", "^"):
                    i += 2
                    neg = 1
                    if i < len(tokens) and tokens[i][:2] == ("op", "-"):
                        neg = -1
                        i += 1
                    if i >= len(tokens) or tokens[i][0] != "int":
                        raise ParseError("exponent expected after ^", at)
                    e = neg * int(tokens[i][1])
                    i += 1
                else:
                    i += 1
                if abs(expo[j] + e) > DEFAULT.exponent_bound:
                    raise ParseError("exponent exceeds configured bound", at)
                expo[j] += e
            else:
                raise ParseError(f"unexpected token {val!r}", at)
            expect_factor = False
        if expect_factor:
            raise ParseError("empty term", at)
        u = tuple(expo)
        c = F.from_int(sign * coeff)
        prev = terms.get(u, F.zero())
        terms[u] = F.add(prev, c)
        sign = 1
    return LaurentPoly(n=n, field=F, terms={u: c for u, c in terms.items() if any(c)})


def evaluate(f: LaurentPoly, point, E: FieldDesc = None) -> FieldElem:
    """Evaluate at a torus point with coordinates in an extension E of
    f.field (E defaults to f.field).  Negative exponents go through
    inversion; zero coordinates are rejected."""
    E = E or f.field
    coords = []
    for x in point:
        t = x.coeffs if isinstance(x, FieldElem) else tuple(x)
        if not any(t):
            raise ZeroDivisionError("evaluation at a zero coordinate")
        coords.append(t)
    if len(coords) != f.n:
        raise ZetamillError(f"point has {len(coords)} coordinates, expected {f.n}")
    inv = [None] * f.n
    acc = E.zero()
    for u, c in f.terms.items():
        if E is not f.field:
            c = embed(FieldElem(c), f.field, E).coeffs
        term = c
        for j, e in enumerate(u):
            if e == 0:
                continue
            if e > 0:
                term = E.mul(term, E.pow(coords[j], e))
            else:
                if inv[j] is None:
                    inv[j] = E.inv(coords[j])
                term = E.mul(term, E.pow(inv[j], -e))
        acc = E.add(acc, term)
    return FieldElem(acc)


def newton_polytope(f: LaurentPoly) -> LatticePolytope:
    """Convex hull of the exponent vectors of the terms of f."""
    if f.is_zero:
        raise ZetamillError("Newton polytope of the zero polynomial")
    return convex_hull(f.support())


def face_restrict(f: LaurentPoly, face: Face, delta: LatticePolytope = None) -> LaurentPoly:
    """Terms of f whose exponents lie on the given face of its Newton polytope."""
    delta = delta or newton_polytope(f)
    vset = set(delta.vertices)
    if not set(face.vertices) <= vset:
        raise ZetamillError("face does not belong to the Newton polytope of f")
    kept = {u: c for u, c in f.terms.items() if delta.point_on_face(face, u)}
    return LaurentPoly(n=f.n, field=f.field, terms=kept)


def toric_partial(f: LaurentPoly, i: int) -> LaurentPoly:
    """x_i d/dx_i applied termwise: a_u X^u -> (u_i mod p) a_u X^u.

    i is 1-based.  Exponents reduce mod p before scaling, so monomials with
    p | u_i drop out, as they must in characteristic p.
    """
    if not (1 <= i <= f.n):
        raise ZetamillError(f"variable index {i} out of range 1..{f.n}")
    F = f.field
    out = {}
    for u, c in f.terms.items():
        scaled = F.scale(u[i - 1], c)
        if any(scaled):
            out[u] = scaled
    return LaurentPoly(n=f.n, field=F, terms=out)


# ---------------------------------------------------------------------------
# helpers for the counting kernels
# ---------------------------------------------------------------------------

def formal_partial(f: LaurentPoly, i: int) -> LaurentPoly:
    """Ordinary d/dx_i for polynomials (no negative exponents in x_i)."""
    if not (1 <= i <= f.n):
        raise ZetamillError(f"variable index {i} out of range 1..{f.n}")
    F = f.field
    out = {}
    for u, c in f.terms.items():
        e = u[i - 1]
        if e < 0:
            raise ZetamillError("formal partial needs nonnegative exponents")
        if e == 0:
            continue
        scaled = F.scale(e, c)
        if any(scaled):
            v = u[:i - 1] + (e - 1,) + u[i:]
            out[v] = F.add(out.get(v, F.zero()), scaled)
    return LaurentPoly(n=f.n, field=F,
                       terms={u: c for u, c in out.items() if any(c)})


def substitute_last(f: LaurentPoly, value, E: FieldDesc = None) -> LaurentPoly:
    """Substitute the last variable by a (possibly zero) value in E, returning
    a Laurent polynomial in n-1 variables over E.  Negative exponents of the
    last variable require a nonzero value."""
    E = E or f.field
    v = value.coeffs if isinstance(value, FieldElem) else tuple(value)
    vinv = None
    acc = {}
    for u, c in f.terms.items():
        if E is not f.field:
            c = embed(FieldElem(c), f.field, E).coeffs
        e = u[-1]
        if e > 0:
            c = E.mul(c, E.pow(v, e))
        elif e < 0:
            if vinv is None:
                vinv = E.inv(v)
            c = E.mul(c, E.pow(vinv, -e))
        key = u[:-1]
        acc[key] = E.add(acc.get(key, E.zero()), c)
    return LaurentPoly(n=f.n - 1, field=E,
                       terms={u: c for u, c in acc.items() if any(c)})


def last_var_decomposition(f: LaurentPoly):
    """Clear last-variable denominators: returns (shift, {degree j: LaurentPoly
    in the first n-1 variables}) with f * x_n^shift = sum_j c_j(x') x_n^j."""
    if f.is_zero:
        return 0, {}
    shift = max(0, -min(u[-1] for u in f.terms))
    coeffs = {}
    for u, c in f.terms.items():
        j = u[-1] + shift
        layer = coeffs.setdefault(j, {})
        layer[u[:-1]] = c
    return shift, {j: LaurentPoly(n=f.n - 1, field=f.field, terms=layer)
                   for j, layer in coeffs.items()}
