"""Exact arithmetic in F_p and its extensions F_{p^k}.

A field F_{p^k} is modelled concretely as F_p[t]/(m(t)) with m the canonical
monic irreducible of degree k: the first irreducible in the total order that
sorts monic degree-k polynomials by coefficient vector, constant term most
significant, ascending.  That makes every FieldDesc reproducible across runs
and platforms without external tables.

Elements are coefficient vectors of length k over F_p (constant term first),
wrapped in FieldElem for the public operations.  FieldDesc also exposes the
same arithmetic directly on plain tuples; the enumeration kernels elsewhere
in the package work on those.

Degree-1 fields use modulus t, so F_p needs no special-casing: reduction mod
t simply truncates to the constant term.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .config import DEFAULT
from .errors import CapExceeded, ZetamillError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# dense univariate polynomial helpers over F_p
# coefficient lists ascending (constant term first), trailing zeros trimmed
# ---------------------------------------------------------------------------

def _ptrim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[db], p - 2, p) if b[db] != 1 else 1
    q = [0] * max(da - db + 1, 0)
    while da >= db and any(a):
        a = _ptrim(a)
        da = len(a) - 1
        if da < db:
            break
        c = (a[da] * inv_lead) % p
        q[da - db] = c
        for j in range(db + 1):
            a[da - db + j] = (a[da - db + j] - c * b[j]) % p
    return _ptrim(q), _ptrim(a)


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(m, p):
    """Exhaustive factor search: no monic divisor of degree 1..deg(m)//2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _pmod(m, g, p):
                return False
    return True


# ---------------------------------------------------------------------------
# field descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDesc:
    """Immutable description of F_{p^k}; shareable across workers.

    modulus is the canonical monic irreducible of degree k over F_p, as a
    length-(k+1) coefficient tuple with constant term first.
    """

    p: int
    k: int
    modulus: tuple

    @property
    def order(self) -> int:
        return self.p ** self.k

    # -- plain-tuple arithmetic ------------------------------------------------

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def from_int(self, c: int):
        """The constant element c (reduced mod p)."""
        return (c % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def scale(self, c, a):
        p = self.p
        c %= p
        return tuple((c * x) % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        acc = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    acc[i + j] += ai * bj
        red = _reduction_rows(self)
        out = [c % p for c in acc[:k]]
        for j in range(k - 1):
            c = acc[k + j] % p
            if c:
                row = red[j]
                for i in range(k):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def square(self, a):
        return self.mul(a, a)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inversion of zero field element")
        p = self.p
        if self.k == 1:
            return (pow(a[0], p - 2, p),)
        # extended Euclid in F_p[t] against the modulus
        r0, r1 = list(self.modulus), _ptrim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        # r0 is now a nonzero constant gcd; s0 * a == r0 mod modulus
        c = pow(r0[0], p - 2, p)
        out = [(c * x) % p for x in s0]
        out += [0] * (self.k - len(out))
        return tuple(out[:self.k])

    def is_zero(self, a):
        return not any(a)

    # -- packed-integer conversions (base-p digits, constant term first) -------

    def pack(self, a) -> int:
        v = 0
        for c in reversed(a):
            v = v * self.p + c
        return v

    def unpack(self, v: int):
        p = self.p
        out = []
        for _ in range(self.k):
            v, c = divmod(v, p)
            out.append(c)
        return tuple(out)

    # -- deterministic enumeration ---------------------------------------------

    def elements(self):
        """All elements in ascending lex order on coefficient vectors."""
        if self.order > DEFAULT.field_size_cap:
            raise CapExceeded("field too large to enumerate",
                              estimated=self.order, cap=DEFAULT.field_size_cap)
        return (t for t in product(range(self.p), repeat=self.k))

    def units(self):
        zero = self.zero()
        return (t for t in self.elements() if t != zero)

    def lex_rank(self, a) -> int:
        """Position of a in the lex enumeration order."""
        v = 0
        for c in a:
            v = v * self.p + c
        return v

    def from_lex_rank(self, r: int):
        p = self.p
        out = []
        for _ in range(self.k):
            r, c = divmod(r, p)
            out.append(c)
        return tuple(reversed(out))

    def eval_poly(self, coeffs_fp, x):
        """Evaluate an F_p-coefficient polynomial at a point of this field."""
        acc = self.zero()
        for c in reversed(coeffs_fp):
            acc = self.mul(acc, x)
            acc = self.add(acc, self.from_int(c))
        return acc

    def __repr__(self):
        return f"FieldDesc(p={self.p}, k={self.k})"


_REDUCTION_ROWS = {}


def _reduction_rows(F: FieldDesc):
    """Rows X^{k+j} mod m(X) for j = 0..k-2, as coefficient tuples."""
    key = (F.p, F.k)
    rows = _REDUCTION_ROWS.get(key)
    if rows is None:
        p, k = F.p, F.k
        m = list(F.modulus)
        rows = []
        cur = [(-m[i]) % p for i in range(k)]  # X^k mod m
        rows.append(tuple(cur))
        for _ in range(k - 2):
            shifted = [0] + cur[:-1]
            lead = cur[-1]
            cur = [(shifted[i] + lead * rows[0][i]) % p for i in range(k)]
            rows.append(tuple(cur))
        rows = tuple(rows)
        _REDUCTION_ROWS[key] = rows
    return rows


@dataclass(frozen=True)
class FieldElem:
    """A residue mod the field modulus: length-k coefficient vector over F_p."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))


def _check_elem(x: FieldElem, F: FieldDesc):
    if len(x.coeffs) != F.k:
        raise ZetamillError(f"element has {len(x.coeffs)} coefficients, field degree is {F.k}")
    if any(not (0 <= c < F.p) for c in x.coeffs):
        raise ZetamillError("element coefficients out of range [0, p)")


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldDesc:
    """The canonical model of F_{p^k}.

    Deterministic: the modulus is the first irreducible monic of degree k in
    ascending coefficient order (constant term most significant).
    """
    if not is_prime(p):
        raise ZetamillError(f"{p} is not prime")
    if k < 1:
        raise ZetamillError(f"extension degree must be >= 1, got {k}")
    if p ** k > DEFAULT.field_size_cap:
        raise CapExceeded(f"field size {p}^{k} exceeds configured cap",
                          estimated=p ** k, cap=DEFAULT.field_size_cap)
    for tail in product(range(p), repeat=k):
        m = list(tail) + [1]
        if _is_irreducible(m, p):
            return FieldDesc(p=p, k=k, modulus=tuple(m))
    raise ZetamillError("no irreducible polynomial found")  # unreachable


def invert(x: FieldElem, F: FieldDesc) -> FieldElem:
    _check_elem(x, F)
    return FieldElem(F.inv(x.coeffs))


def frobenius_power(x: FieldElem, F: FieldDesc, base_q: int, j: int = 1) -> FieldElem:
    """x^(q^j) by repeated q-th powering, q = base_q a power of F.p."""
    _check_elem(x, F)
    _power_exponent(base_q, F.p)
    y = x.coeffs
    for _ in range(j):
        y = F.pow(y, base_q)
    return FieldElem(y)


def _power_exponent(q: int, p: int) -> int:
    """a such that q = p^a, or raise."""
    a, v = 0, q
    while v > 1 and v % p == 0:
        v //= p
        a += 1
    if v != 1 or a == 0:
        raise ZetamillError(f"{q} is not a positive power of {p}")
    return a


def in_subfield(x: FieldElem, F: FieldDesc, q: int, d: int) -> bool:
    """Whether x lies in the subfield F_{q^d}, i.e. is fixed by Frob_q^d."""
    _check_elem(x, F)
    a = _power_exponent(q, F.p)
    if d < 1 or F.k % (a * d) != 0:
        raise ZetamillError(f"F_{{{q}^{d}}} is not a subfield of F_{{{F.p}^{F.k}}}")
    return frobenius_power(x, F, q, d).coeffs == x.coeffs


_EMBED_ROOTS = {}


def _embedding_root(frm: FieldDesc, into: FieldDesc):
    """Lex-least root of frm.modulus in into; defines the canonical embedding."""
    key = (frm.p, frm.k, into.k)
    root = _EMBED_ROOTS.get(key)
    if root is None:
        m = frm.modulus
        for cand in into.elements():
            if into.is_zero(into.eval_poly(m, cand)):
                root = cand
                break
        else:
            raise ZetamillError("modulus has no root in the target field; corrupted FieldDesc")
        _EMBED_ROOTS[key] = root
    return root


def embed(x: FieldElem, frm: FieldDesc, into: FieldDesc) -> FieldElem:
    """Canonical embedding F_{p^k} -> F_{p^K} for k | K; fixes F_p."""
    _check_elem(x, frm)
    if frm.p != into.p:
        raise ZetamillError("embedding requires equal characteristic")
    if into.k % frm.k != 0:
        raise ZetamillError(f"degree {frm.k} does not divide {into.k}")
    if frm.k == into.k:
        return FieldElem(x.coeffs)
    if frm.k == 1:
        return FieldElem(into.from_int(x.coeffs[0]))
    r = _embedding_root(frm, into)
    acc = into.zero()
    for c in reversed(x.coeffs):
        acc = into.mul(acc, r)
        acc = into.add(acc, into.from_int(c))
    return FieldElem(acc)


def trace_to_prime(x: FieldElem, F: FieldDesc) -> int:
    """Absolute trace x + x^p + ... + x^(p^(k-1)), as an element of F_p."""
    _check_elem(x, F)
    acc = x.coeffs
    y = x.coeffs
    for _ in range(F.k - 1):
        y = F.pow(y, F.p)
        acc = F.add(acc, y)
    if any(acc[1:]):
        raise ZetamillError("trace left the prime field; corrupted FieldDesc")
    return acc[0]
