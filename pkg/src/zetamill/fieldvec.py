"""Internal vectorized kernels for finite-field enumeration.

Elements are packed as integers sum c_i p^i (constant term = least
significant digit), so 0 packs the zero element and 1..Q-1 run through the
units.  All numpy work is integer-exact: table gathers, digit convolutions
mod p, comparisons.  Nothing here is part of the public API.

Iteration order offered to callers is ascending lex on coefficient vectors
(constant term most significant), matching the scalar enumeration order, so
range splits reproduce identical partial results.
"""

import numpy as np

from .config import DEFAULT
from .errors import ZetamillError
from .ffield import FieldDesc, _reduction_rows

_VEC_CACHE = {}


def vecfield(F: FieldDesc) -> "VecField":
    key = (F.p, F.k)
    vf = _VEC_CACHE.get(key)
    if vf is None:
        vf = VecField(F)
        _VEC_CACHE[key] = vf
    return vf


class VecField:
    """Vectorized arithmetic on packed-element numpy arrays for one field."""

    def __init__(self, F: FieldDesc):
        self.F = F
        self.p = F.p
        self.k = F.k
        self.Q = F.order
        if self.k > 1:
            rows = _reduction_rows(F)
            self._red = np.array(rows, dtype=np.int64)  # (k-1, k)
        self._pows = np.array([self.p ** i for i in range(self.k)], dtype=np.int64)
        self._mul_table = None
        self._log = None
        self._exp = None
        self._chi = None
        self._trace = None
        if self.Q <= DEFAULT.scalar_table_cap:
            self._build_mul_table()
        elif self.Q <= DEFAULT.log_table_cap:
            self._build_log_tables()

    # -- packing ---------------------------------------------------------------

    def unpack(self, a):
        """(k, N) digit matrix of a packed array."""
        a = np.asarray(a, dtype=np.int64)
        out = np.empty((self.k,) + a.shape, dtype=np.int64)
        v = a
        for i in range(self.k):
            v, d = np.divmod(v, self.p)
            out[i] = d
        return out

    def pack(self, digits):
        return np.tensordot(self._pows, digits % self.p, axes=(0, 0))

    def lex_to_packed(self, r):
        """Packed elements for lex ranks r (0 = zero element).

        The lex rank reads coefficient vectors constant-term-first, so its
        mixed-radix digits map onto packed digits in reverse order.
        """
        r = np.asarray(r, dtype=np.int64)
        out = np.zeros_like(r)
        v = r
        for i in range(self.k):
            q = self.p ** (self.k - 1 - i)
            d, v = np.divmod(v, q)
            out = out + d * (self.p ** i)
        return out

    # -- table builders ----------------------------------------------------------

    def _mul_digits(self, A, B):
        """Digit-matrix product with modulus reduction; shapes (k, N)."""
        p, k = self.p, self.k
        if k == 1:
            return (A * B) % p
        N = A.shape[1] if A.ndim > 1 else 1
        acc = np.zeros((2 * k - 1,) + A.shape[1:], dtype=np.int64)
        for i in range(k):
            for j in range(k):
                acc[i + j] += A[i] * B[j]
        acc %= p
        out = acc[:k].copy()
        for j in range(k - 1):
            c = acc[k + j]
            out += self._red[j].reshape((k,) + (1,) * (out.ndim - 1)) * c
        return out % p

    def _build_mul_table(self):
        Q = self.Q
        a = np.repeat(np.arange(Q, dtype=np.int64), Q)
        b = np.tile(np.arange(Q, dtype=np.int64), Q)
        prod = self.pack(self._mul_digits(self.unpack(a), self.unpack(b)))
        self._mul_table = prod.reshape(Q, Q)

    def _build_log_tables(self):
        F, Q = self.F, self.Q
        g = self._find_generator()
        exp = np.empty(Q - 1, dtype=np.int64)
        block = min(4096, Q - 1)
        cur = F.one()
        for i in range(block):
            exp[i] = F.pack(cur)
            cur = F.mul(cur, g)
        gb = self.unpack(np.array([F.pack(F.pow(g, block))], dtype=np.int64))
        filled = block
        while filled < Q - 1:
            nxt = min(filled + block, Q - 1)
            prev = self.unpack(exp[filled - block:nxt - block])
            exp[filled:nxt] = self.pack(self._mul_digits(prev, gb))
            filled = nxt
        log = np.empty(Q, dtype=np.int64)
        log[0] = -1
        log[exp] = np.arange(Q - 1, dtype=np.int64)
        self._exp, self._log = exp, log

    def _find_generator(self):
        F, Q = self.F, self.Q
        factors = _prime_factors(Q - 1)
        for r in range(1, Q):
            g = F.from_lex_rank(r)
            if all(F.pow(g, (Q - 1) // ell) != F.one() for ell in factors):
                return g
        raise ZetamillError("no multiplicative generator found")  # unreachable

    # -- arithmetic ---------------------------------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self.pack((self.unpack(a) + self.unpack(b)) % self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a) - np.asarray(b)) % self.p
        return self.pack((self.unpack(a) - self.unpack(b)) % self.p)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return self.pack((-self.unpack(a)) % self.p)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        if self._exp is not None:
            la, lb = self._log[a], self._log[b]
            out = self._exp[(la + lb) % (self.Q - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        return self.pack(self._mul_digits(self.unpack(a), self.unpack(b)))

    def pow_int(self, a, e: int):
        """a ** e for units when e < 0 is needed; e reduced mod Q-1 for units.
        Zero entries power to zero for e > 0 and to one for e == 0."""
        a = np.asarray(a, dtype=np.int64)
        if self._exp is not None:
            la = self._log[a]
            out = self._exp[(la * (e % (self.Q - 1))) % (self.Q - 1)]
            if e == 0:
                return np.ones_like(a)
            return np.where(a == 0, 0, out)
        e_eff = e
        if e < 0:
            e_eff = e % (self.Q - 1)  # callers guarantee units for negative e
        result = np.ones_like(a)
        base = a
        zero_mask = (a == 0)
        ee = e_eff
        while ee:
            if ee & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            ee >>= 1
        if e_eff > 0:
            result = np.where(zero_mask, 0, result)
        return result

    def inv_units(self, a):
        return self.pow_int(a, self.Q - 2)

    def scalar(self, coeffs) -> int:
        """Pack a scalar coefficient tuple."""
        return self.F.pack(tuple(coeffs))

    # -- derived tables ------------------------------------------------------------

    def chi(self, a):
        """Quadratic character values in {-1, 0, 1} (odd characteristic)."""
        if self.p == 2:
            raise ZetamillError("quadratic character undefined in characteristic 2")
        if self._chi is None:
            u = np.arange(1, self.Q, dtype=np.int64)
            sq = self.mul(u, u)
            chi = -np.ones(self.Q, dtype=np.int8)
            chi[0] = 0
            chi[sq] = 1
            self._chi = chi
        return self._chi[np.asarray(a, dtype=np.int64)]

    def trace(self, a):
        """Absolute trace to F_p, as integers 0..p-1."""
        if self._trace is None:
            x = np.arange(self.Q, dtype=np.int64)
            acc = x.copy()
            y = x
            for _ in range(self.k - 1):
                y = self.pow_int(y, self.p)
                acc = self.add(acc, y)
            # traces are constants, so the packed value is the trace itself
            self._trace = acc
        return self._trace[np.asarray(a, dtype=np.int64)]


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# vectorized Laurent evaluation on torus blocks
# ---------------------------------------------------------------------------

def eval_laurent_vec(vf: VecField, f, coords, units=True):
    """Evaluate a Laurent polynomial on packed coordinate arrays.

    With units=True all coordinates are assumed nonzero and exponents reduce
    mod Q-1; with units=False coordinates may be zero and all exponents must
    be nonnegative (affine evaluation)."""
    from .ffield import FieldElem, embed  # local import to avoid cycles

    Q = vf.Q
    shape = np.broadcast(*[np.asarray(c) for c in coords]).shape
    acc = np.zeros(shape, dtype=np.int64)
    pow_cache = [dict() for _ in coords]
    for u, c in f.terms.items():
        if vf.F is not f.field:
            c = embed(FieldElem(c), f.field, vf.F).coeffs
        term = np.full(shape, vf.scalar(c), dtype=np.int64)
        for j, e in enumerate(u):
            if units:
                e = e % (Q - 1)
            elif e < 0:
                raise ZetamillError("affine evaluation needs nonnegative exponents")
            if e == 0:
                continue
            pc = pow_cache[j]
            if e not in pc:
                pc[e] = vf.pow_int(np.asarray(coords[j], dtype=np.int64), e)
            term = vf.mul(term, pc[e])
        acc = vf.add(acc, term)
    return acc


class ScalarField:
    """Packed-integer scalar arithmetic with lookup tables, for the serial
    univariate kernels (polynomial gcds) over moderately sized fields."""

    _CACHE = {}

    def __new__(cls, F: FieldDesc):
        key = (F.p, F.k)
        inst = cls._CACHE.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(F)
            cls._CACHE[key] = inst
        return inst

    def _init(self, F: FieldDesc):
        Q = F.order
        if Q > DEFAULT.log_table_cap:
            raise ZetamillError(f"field of size {Q} too large for scalar tables")
        self.F = F
        self.Q = Q
        self.p = F.p
        vf = vecfield(F)
        if vf._exp is None:
            vf._build_log_tables()
        self.exp = vf._exp.tolist()
        self.log = vf._log.tolist()
        self.digits = [F.unpack(v) for v in range(Q)] if Q <= 1 << 19 else None
        self._weights = [F.p ** i for i in range(F.k)]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.Q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("scalar inverse of zero")
        return self.exp[(-self.log[a]) % (self.Q - 1)]

    def pow(self, a, e):
        if a == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.log[a] * e) % (self.Q - 1)]

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        p = self.p
        da = self.digits[a] if self.digits else self.F.unpack(a)
        db = self.digits[b] if self.digits else self.F.unpack(b)
        return sum(((x + y) % p) * w for x, y, w in zip(da, db, self._weights))

    def neg(self, a):
        if a == 0:
            return 0
        p = self.p
        da = self.digits[a] if self.digits else self.F.unpack(a)
        return sum(((-x) % p) * w for x, w in zip(da, self._weights))

    def sub(self, a, b):
        return self.add(a, self.neg(b))


def torus_blocks(vf: VecField, nvars: int, block_size: int = 1 << 20):
    """Yield packed coordinate arrays covering the n-torus (units^nvars) in
    ascending lex order, in blocks of at most block_size points."""
    m = vf.Q - 1
    total = m ** nvars
    start = 0
    while start < total:
        stop = min(start + block_size, total)
        idx = np.arange(start, stop, dtype=np.int64)
        coords = []
        rem = idx
        for j in range(nvars):
            q = m ** (nvars - 1 - j)
            d, rem = np.divmod(rem, q)
            coords.append(vf.lex_to_packed(d + 1))  # lex ranks 1..Q-1 are the units
        yield tuple(coords)
        start = stop
