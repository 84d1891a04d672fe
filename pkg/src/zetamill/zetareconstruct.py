"""Exact zeta functions from count sequences.

Counts go in, rational functions in 1 + T Z[[T]] come out: minimal linear
recurrences over Q (Berlekamp-Massey), exp-series Pade splitting into
numerator and denominator, Newton-identity extraction of designated factors,
Weil weight and functional equation checks, slope zeta functions, l-adic
congruence scans, and per-prime Euler factor tables.

All reconstruction is exact rational arithmetic; floating point appears only
inside the Weil-weight root finder (mpmath, with verified moduli).
"""

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath

from .errors import MathInconsistency, ReconstructionError, ZetamillError
from .lattice import LatticePolytope, normalized_volume, _solve as _exact_solve
from .polygons import ConvexPolygonQ


# ---------------------------------------------------------------------------
# integer polynomials (ascending coefficients, constant term first)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs if cs else (0,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs != (0,) else -1

    @property
    def is_one(self):
        return self.coeffs == (1,)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(tuple(out))

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def power_sums(self, K: int):
        """Power sums of reciprocal roots, s_1..s_K, by Newton's identities."""
        c = self.coeffs
        if c[0] != 1:
            raise ZetamillError("power sums need constant term 1")
        deg = self.degree
        s = []
        for k in range(1, K + 1):
            acc = -k * c[k] if k <= deg else 0
            for i in range(1, min(k, deg + 1)):
                acc -= c[i] * s[k - i - 1]
            s.append(acc)
        return s

    def to_json(self):
        return list(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


ONE = IntPolynomial((1,))


def poly_from_power_sums(s, degree: int) -> IntPolynomial:
    """Monic-reciprocal polynomial 1 + c_1 T + ... + c_deg T^deg whose
    reciprocal-root power sums are s[0..degree-1]; integer-validated."""
    if len(s) < degree:
        raise ReconstructionError(f"need {degree} power sums, got {len(s)}")
    c = [Fraction(1)]
    for m in range(1, degree + 1):
        acc = Fraction(s[m - 1])
        for i in range(1, m):
            acc += c[i] * s[m - i - 1]
        c.append(-acc / m)
    out = []
    for x in c:
        if x.denominator != 1:
            raise MathInconsistency(
                f"non-integer coefficient {x} in reconstruction; wrong degree bound or corrupted counts")
        out.append(int(x))
    return IntPolynomial(tuple(out))


def binomial_factor(q_power: int) -> IntPolynomial:
    """The trivial factor 1 - q_power * T."""
    return IntPolynomial((1, -q_power))


# ---------------------------------------------------------------------------
# zeta factorizations
# ---------------------------------------------------------------------------

@dataclass
class ZetaFactorization:
    """Z = numerator / denominator in 1 + T Z[[T]], expansion-verified
    against the counts that produced it."""

    numerator: IntPolynomial
    denominator: IntPolynomial
    factored: list | None = None      # optional [(IntPolynomial, multiplicity)]
    provenance: dict = dc_field(default_factory=dict)

    @staticmethod
    def from_num_den(num: IntPolynomial, den: IntPolynomial, counts=None,
                     factored=None, provenance=None) -> "ZetaFactorization":
        if num.coeffs[0] != 1 or den.coeffs[0] != 1:
            raise MathInconsistency("zeta factors must have constant term 1")
        z = ZetaFactorization(numerator=num, denominator=den, factored=factored,
                              provenance=dict(provenance or {}))
        if counts is not None:
            expanded = z.expand_counts(len(counts))
            if expanded != [int(c) for c in counts]:
                raise MathInconsistency(
                    f"expansion {expanded} does not reproduce counts {list(counts)}")
            z.provenance.setdefault("counts", [int(c) for c in counts])
        return z

    def expand_counts(self, K: int):
        """N_k for k = 1..K from the log-derivative power sums."""
        sd = self.denominator.power_sums(K)
        sn = self.numerator.power_sums(K)
        return [d - n for d, n in zip(sd, sn)]

    @property
    def total_degree(self):
        return self.numerator.degree + self.denominator.degree

    def to_json(self):
        out = {"numerator": self.numerator.to_json(),
               "denominator": self.denominator.to_json()}
        if self.factored is not None:
            out["factored"] = [[p.to_json(), m] for p, m in self.factored]
        if self.provenance:
            out["provenance"] = json.loads(json.dumps(self.provenance, default=str))
        return out

    def __repr__(self):
        return (f"ZetaFactorization(num={list(self.numerator.coeffs)}, "
                f"den={list(self.denominator.coeffs)})")


# ---------------------------------------------------------------------------
# minimal recurrence + reconstruction
# ---------------------------------------------------------------------------

def minimal_recurrence(seq):
    """Berlekamp-Massey over exact rationals.

    Returns the connection coefficients (1, c_1, ..., c_L) of the shortest
    recurrence sum_i c_i a_{k-i} = 0 (c_0 = 1) fitting the whole sequence.
    """
    seq = [Fraction(x) for x in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for i, a in enumerate(seq):
        delta = a
        for j in range(1, L + 1):
            delta += C[j] * seq[i - j]
        if delta == 0:
            m += 1
            continue
        T = list(C)
        coef = delta / b
        C = C + [Fraction(0)] * (len(B) + m - len(C))
        for j, bj in enumerate(B):
            C[j + m] -= coef * bj
        if 2 * L <= i:
            L = i + 1 - L
            B = T
            b = delta
            m = 1
        else:
            m += 1
    while len(C) > L + 1:
        C = C[:-1]
    return C


def _zeta_series(counts, upto: int):
    """Coefficients z_0..z_upto of exp(sum N_k T^k / k), exact Fractions."""
    z = [Fraction(1)]
    for m in range(1, upto + 1):
        acc = Fraction(0)
        for j in range(1, m + 1):
            if j <= len(counts):
                acc += Fraction(counts[j - 1]) * z[m - j]
        z.append(acc / m)
    return z


def recurrence_reconstruct(counts, max_order: int) -> ZetaFactorization:
    """The unique rational function in 1 + T Z[[T]] of total degree at most
    max_order whose log-derivative power sums reproduce every count.

    Needs len(counts) >= 2 * max_order; fails loudly when no function within
    the bound fits (raise the bound and supply more counts).
    """
    counts = [int(c) for c in counts]
    if len(counts) < 2 * max_order:
        raise ReconstructionError(
            f"need at least {2 * max_order} counts for total degree {max_order}, got {len(counts)}")
    rec = minimal_recurrence(counts)
    if len(rec) - 1 > max_order:
        raise ReconstructionError(
            f"counts need a recurrence of order {len(rec) - 1} > bound {max_order}; "
            "degree bound tight - supply more counts or raise the bound")
    L = len(counts)
    z = _zeta_series(counts, L)
    for total in range(0, max_order + 1):
        for db in range(0, total + 1):
            da = total - db
            # v of degree db with v(0)=1 such that (v * Z)_m = 0 for m > da
            rows = []
            rhs = []
            for m in range(da + 1, L + 1):
                rows.append([z[m - i] if m - i >= 0 else Fraction(0)
                             for i in range(1, db + 1)])
                rhs.append(-z[m])
            if db == 0:
                if any(r != 0 for r in rhs):
                    continue
                v = []
            else:
                v = _exact_solve(rows, rhs)
                if v is None:
                    continue
            vc = [Fraction(1)] + list(v)
            # consistency across all remaining series coefficients is built in
            # (rows covered every m <= L); now extract the numerator
            uc = []
            for m in range(0, da + 1):
                acc = Fraction(0)
                for i in range(0, min(db, m) + 1):
                    acc += vc[i] * z[m - i]
                uc.append(acc)
            if any(c.denominator != 1 for c in vc + uc):
                continue
            num = IntPolynomial(tuple(int(c) for c in uc))
            den = IntPolynomial(tuple(int(c) for c in vc))
            try:
                return ZetaFactorization.from_num_den(
                    num, den, counts=counts,
                    provenance={"method": "recurrence_reconstruct",
                                "max_order": max_order,
                                "minimal_recurrence_order": len(rec) - 1})
            except MathInconsistency:
                continue
    raise ReconstructionError(
        f"no rational function of total degree <= {max_order} matches the counts; "
        "degree bound tight - supply more counts or raise the bound")


def nontrivial_factor(delta: LatticePolytope, counts, q: int) -> IntPolynomial:
    """The interesting degree d(Delta)-1 factor of a regular toric
    hypersurface zeta function, from exact counts over F_{q^k}.

    Subtracts the universal torus factors prod_i (1 - q^i T)^{e_i} with
    e_i = (-1)^(n-i) C(n, i+1), then solves Newton's identities; a
    non-integral solution signals an irregular f or the wrong polytope.
    """
    n = delta.n
    D = normalized_volume(delta) - 1
    if len(counts) < D:
        raise ReconstructionError(f"need {D} counts for degree {D}, got {len(counts)}")
    sign = (-1) ** (n + 1)
    s = []
    for k in range(1, len(counts) + 1):
        triv = sum((-1) ** (n - i) * math.comb(n, i + 1) * q ** (i * k)
                   for i in range(n))
        s.append(sign * (counts[k - 1] + triv))
    P = poly_from_power_sums(s, D)
    # surplus counts re-verify the extraction
    ps = P.power_sums(len(counts))
    if ps != s:
        raise MathInconsistency(
            f"degree-{D} factor does not reproduce the surplus counts: {ps} vs {s}")
    return P


def reconstruct_with_known(counts, known_power_sums, unknown_degree: int,
                           sign_convention: str = "zero") -> IntPolynomial:
    """Extract one unknown factor after subtracting closed-form power sums.

    sign_convention "zero": the factor contributes -s_k to each count (it
    sits in the numerator of Z); "pole": contributes +s_k.
    """
    if sign_convention not in ("zero", "pole"):
        raise ZetamillError(f"unknown sign convention {sign_convention!r}")
    if len(counts) < unknown_degree:
        raise ReconstructionError(
            f"need {unknown_degree} counts, got {len(counts)}")
    sgn = -1 if sign_convention == "zero" else 1
    resid = [sgn * (int(c) - int(kps))
             for c, kps in zip(counts, known_power_sums)]
    P = poly_from_power_sums(resid, unknown_degree)
    if P.power_sums(len(resid)) != resid:
        raise MathInconsistency("known-part subtraction leaves inconsistent residual")
    return P


# ---------------------------------------------------------------------------
# Weil weights and functional equations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeilWeights:
    pure_weights: tuple | None   # sorted weights, or None when impure
    moduli: tuple                # |alpha_i| as floats, for reporting
    tolerance: float

    @property
    def is_pure_report(self):
        return self.pure_weights is not None


def _frac_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _frac_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and _frac_trim(a):
        if len(a) < len(b):
            break
        c = a[-1] / b[-1]
        q[len(a) - len(b)] = c
        for j in range(len(b)):
            a[len(a) - len(b) + j] -= c * b[j]
        a.pop()
    return q, _frac_trim(a)


def _frac_gcd(a, b):
    a = _frac_trim([Fraction(x) for x in a])
    b = _frac_trim([Fraction(x) for x in b])
    while b:
        a, b = b, _frac_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def squarefree_decomposition(P: IntPolynomial):
    """Yun decomposition over Q: [(coefficients, multiplicity)] with each
    square-free factor normalised to constant term 1 (Fraction lists)."""
    a = [Fraction(c) for c in P.coeffs]
    da = [i * a[i] for i in range(1, len(a))]
    g = _frac_gcd(a, da)
    w, _ = _frac_divmod(a, g)
    out = []
    i = 1
    while len(_frac_trim(list(w))) > 1:
        y = _frac_gcd(w, g)
        fac, _ = _frac_divmod(w, y)
        fac = _frac_trim(fac)
        if len(fac) > 1:
            out.append(([x / fac[0] for x in fac], i))
        w = y
        g = _frac_divmod(g, y)[0]
        i += 1
    return out


def weil_weights(P: IntPolynomial, q: int, tolerance: float = 1e-6) -> WeilWeights:
    """Weights w with |alpha_i| = q^(w/2) for the reciprocal roots of P.

    The polynomial is split into exact square-free parts first (repeated
    roots defeat iterative root finders), each part's roots computed to high
    precision; any modulus off every half-integer power of q by more than
    the relative tolerance yields an impure verdict, not an error.
    """
    if P.coeffs[0] != 1:
        raise ZetamillError("weil_weights needs P(0) = 1")
    if P.degree <= 0:
        return WeilWeights(pure_weights=(), moduli=(), tolerance=tolerance)
    digits = max(len(str(abs(c))) for c in P.coeffs)
    weights = []
    moduli = []
    pure = True
    with mpmath.workdps(40 + 2 * digits + 4 * P.degree):
        for norm, mult in squarefree_decomposition(P):
            coeffs = [mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)
                      for x in reversed(norm)]
            roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=400)
            for r in roots:
                alpha = 1 / abs(r)
                moduli.extend([float(alpha)] * mult)
                w = mpmath.mpf(2) * mpmath.log(alpha) / mpmath.log(q)
                w_int = int(mpmath.nint(w))
                target = mpmath.power(q, mpmath.mpf(w_int) / 2)
                if abs(alpha - target) > tolerance * target:
                    pure = False
                else:
                    weights.extend([w_int] * mult)
    if not pure:
        return WeilWeights(pure_weights=None, moduli=tuple(sorted(moduli)),
                           tolerance=tolerance)
    return WeilWeights(pure_weights=tuple(sorted(weights)),
                       moduli=tuple(sorted(moduli)), tolerance=tolerance)


@dataclass(frozen=True)
class FunctionalEquation:
    holds: bool
    sign: int | None

    def __bool__(self):
        return self.holds


def functional_equation_check(P: IntPolynomial, q: int, w: int, r: int) -> FunctionalEquation:
    """Exact check of T^r q^(w r / 2) P(1 / (q^w T)) = +- P(T)."""
    if P.degree > r:
        return FunctionalEquation(False, None)
    if (w * r) % 2 != 0:
        return FunctionalEquation(False, None)
    c = list(P.coeffs) + [0] * (r + 1 - len(P.coeffs))
    half = w * r // 2
    mirrored = []
    for i in range(r + 1):
        e = w * i - half
        val = Fraction(c[r - i]) * (Fraction(q) ** e)
        if val.denominator != 1:
            return FunctionalEquation(False, None)
        mirrored.append(int(val))
    sign = None
    for a, b in zip(c, mirrored):
        if a == 0 and b == 0:
            continue
        if b == 0 or a % b != 0 or abs(a) != abs(b):
            return FunctionalEquation(False, None)
        s = a // b
        if sign is None:
            sign = s
        elif s != sign:
            return FunctionalEquation(False, None)
    return FunctionalEquation(True, sign if sign is not None else 1)


def moment_zeta(family, d: int, counts, max_order: int) -> ZetaFactorization:
    """Moment zeta reconstruction; counts are M_d over successive extensions."""
    z = recurrence_reconstruct(counts, max_order)
    z.provenance.update({"kind": "moment_zeta", "d": d,
                         "family": getattr(family, "name", str(family))})
    return z


# ---------------------------------------------------------------------------
# one-parameter Calabi-Yau family (n = 2): trivial factors and R_d
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyTrivialFactors:
    A: tuple   # ((IntPolynomial, multiplicity), ...)
    S: tuple   # formal factored expression, never expanded against counts


def cy_trivial_factors(n: int, d: int, q: int) -> CyTrivialFactors:
    """Displayed trivial factors of the d-th moment zeta factorization for
    the x_1 + ... + x_n + 1/(x_1...x_n) family, by parity of n and d."""
    if n < 2 or d < 1:
        raise ZetamillError("need n >= 2 and d >= 1")
    if n % 2 == 0 and d % 2 == 0:
        A = ((binomial_factor(q ** (d * (n - 1) // 2)), 1),
             (binomial_factor(q ** (d * (n - 1) // 2 + 1)), 1),
             (binomial_factor(q ** (d * (n - 2) // 2 + 1)), 1))
    elif n % 2 == 0:
        A = ((binomial_factor(q ** (d * (n - 2) // 2 + 1)), 1),)
    elif d % 2 == 1:
        A = ((binomial_factor(q ** (d * (n - 1) // 2)), 1),)
    else:
        A = ((binomial_factor(q ** (d * (n - 1) // 2 + 1)), -1),)
    S = {}
    for k in range(0, (n - 2) // 2 + 1):
        S[d * k] = S.get(d * k, 0) + 1
        S[d * k + 1] = S.get(d * k + 1, 0) - 1
    for i in range(0, n):
        mult = (-1) ** (i + 1) * math.comb(n, i + 1)
        S[d * i + 1] = S.get(d * i + 1, 0) + mult
    S_factors = tuple((binomial_factor(q ** e), m)
                      for e, m in sorted(S.items()) if m != 0)
    return CyTrivialFactors(A=A, S=S_factors)


def _cy2_structure(q: int, k: int):
    """(Q, chi_k, s_k): extension size, Q mod 3 character, and the number of
    degenerate parameter values rational over F_{q^k}."""
    if q % 3 == 0:
        raise ZetamillError("the n = 2 family needs p not dividing 3")
    Q = q ** k
    chi_k = 1 if Q % 3 == 1 else -1
    s_k = 3 if chi_k == 1 else 1
    return Q, chi_k, s_k


def _cy2_junk_power_sum(d: int, q: int, k: int) -> int:
    """Weight-0 boundary eigenvalue power sums inside the d-th symmetric
    moment L-function of the n = 2 family (d >= 1).

    Three degenerate fibres contribute their node eigenvalues (split node:
    +1; non-split: -1, living in a conjugate pair over q = 2 mod 3), and the
    boundary of the parameter line contributes a single eigenvalue 1.
    Validated empirically against brute-force moments at several primes.
    """
    if d < 1:
        raise ZetamillError("junk power sums defined for d >= 1")
    if q % 3 == 1:
        return 4
    # q = 2 mod 3: rational node eigenvalue (-1)^d; conjugate pair {1, -1}
    return (-1) ** (d * k) + (-1) ** k + 2


def cy2_moment_known_power_sums(d: int, q: int, K: int,
                                r_prev: IntPolynomial = ONE):
    """Closed-form part of M_d(F_{q^k}) for k = 1..K for the n = 2 family:
    everything except the degree 2(d-1) moment factor's power sums.

    M_d(k) = known(k) + sum_i beta_{d,i}^k  with R_d = prod (1 - beta_i T).
    r_prev is R_{d-2} (R_d = 1 for d <= 1).
    """
    if d < 2:
        raise ZetamillError("known power sums defined for d >= 2")
    prev_ps = r_prev.power_sums(K) if not r_prev.is_one else [0] * K
    out = []
    for k in range(1, K + 1):
        Q, chi_k, s_k = _cy2_structure(q, k)
        main = Q ** (d + 1) - 2 * Q - s_k * (chi_k ** d) + _cy2_junk_power_sum(d, q, k)
        if d == 2:
            prev_part = Q * (Q - s_k)   # zeroth symmetric moment is #(good fibres)
        else:
            prev_part = -Q * (prev_ps[k - 1] + _cy2_junk_power_sum(d - 2, q, k))
        out.append(main + prev_part)
    return out


def extract_R_d(d: int, q: int, counts, r_prev: IntPolynomial = None) -> IntPolynomial:
    """The pure weight d+1, degree 2(d-1) moment factor R_d of the n = 2
    family over F_q, from exact moments M_d(F_{q^k}), k = 1..len(counts).

    With at least 2(d-1) counts the factor is solved outright by Newton's
    identities; with at least d-1 counts the functional equation at weight
    d+1 fills the upper half.  Degree, purity, and the functional equation
    are all checked; mismatches raise with the offending data.
    """
    if d <= 1:
        return ONE
    if r_prev is None:
        if d - 2 <= 1:
            r_prev = ONE
        else:
            raise ZetamillError(f"extract_R_d(d={d}) needs R_{d-2}")
    r = 2 * (d - 1)
    w = d + 1
    K = len(counts)
    known = cy2_moment_known_power_sums(d, q, K, r_prev)
    resid = [int(c) - kp for c, kp in zip(counts, known)]
    if K >= r:
        R = poly_from_power_sums(resid, r)
    elif K >= d - 1:
        R = _solve_with_functional_equation(resid, r, w, q)
    else:
        raise ReconstructionError(
            f"need at least {d - 1} moments to determine R_{d}, got {K}")
    if R.degree != r:
        raise MathInconsistency(f"R_{d} degree {R.degree} != {r}: {R}")
    if R.power_sums(K) != resid:
        raise MathInconsistency(
            f"R_{d} fails to reproduce the residual power sums: "
            f"{R.power_sums(K)} vs {resid}")
    ww = weil_weights(R, q)
    if ww.pure_weights != tuple([w] * r):
        raise MathInconsistency(
            f"R_{d} purity check failed: weights {ww.pure_weights}, moduli {ww.moduli}")
    fe = functional_equation_check(R, q, w, r)
    if not fe.holds:
        raise MathInconsistency(f"R_{d} violates its functional equation: {R}")
    return R


def _solve_with_functional_equation(resid, r, w, q):
    """Build a degree-r factor from r/2 power sums plus the weight-w
    functional equation c_{r-i} = sign * c_i q^{w(r/2 - i)}."""
    half = r // 2
    for sign in (1, -1):
        try:
            c = [Fraction(1)]
            s = list(resid)
            # Newton identities give c_1..c_half from s_1..s_half; then mirror
            for m in range(1, half + 1):
                acc = Fraction(s[m - 1])
                for i in range(1, m):
                    acc += c[i] * s[m - i - 1]
                c.append(-acc / m)
            full = list(c) + [Fraction(0)] * (r + 1 - len(c))
            for i in range(0, half):
                full[r - i] = sign * full[i] * Fraction(q) ** (w * (half - i))
            if any(x.denominator != 1 for x in full):
                continue
            cand = IntPolynomial(tuple(int(x) for x in full))
            if cand.power_sums(len(resid)) == list(resid):
                return cand
        except MathInconsistency:
            continue
    raise MathInconsistency(
        "no functional-equation-symmetric factor matches the residual moments")


# ---------------------------------------------------------------------------
# slope zeta functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlopeZeta:
    """prod over slopes s of (1 - U^s T)^(e_s), stored as slope -> exponent."""

    factors: tuple   # sorted ((slope Fraction, exponent int), ...)

    @staticmethod
    def from_dict(d) -> "SlopeZeta":
        items = tuple(sorted((Fraction(s), int(e)) for s, e in d.items() if e != 0))
        if any(s < 0 for s, _ in items):
            raise ZetamillError("negative slope in slope zeta")
        return SlopeZeta(items)

    def as_dict(self):
        return {s: e for s, e in self.factors}

    def __mul__(self, other):
        d = self.as_dict()
        for s, e in other.factors:
            d[s] = d.get(s, 0) + e
        return SlopeZeta.from_dict(d)

    def reciprocal(self):
        return SlopeZeta.from_dict({s: -e for s, e in self.factors})

    @property
    def is_identity(self):
        return not self.factors

    def total_slope_mass(self):
        return sum(s * e for s, e in self.factors)

    def to_json(self):
        return {"factors": [[f"{s.numerator}/{s.denominator}", e]
                            for s, e in self.factors]}


def _ordq(c: int, q: int) -> Fraction:
    if c == 0:
        raise ZetamillError("ord of zero")
    p, a = _prime_power(q)
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return Fraction(v, a)


def _prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            a = 0
            v = q
            while v % p == 0:
                v //= p
                a += 1
            if v != 1:
                raise ZetamillError(f"{q} is not a prime power")
            return p, a
    raise ZetamillError(f"{q} is not a prime power")


def poly_slopes(P: IntPolynomial, q: int):
    """Slopes of the reciprocal roots of P via its q-adic Newton polygon,
    returned as a list with multiplicities (horizontal lengths)."""
    pts = [(k, _ordq(c, q)) for k, c in enumerate(P.coeffs) if c != 0]
    np_poly = ConvexPolygonQ.from_points(pts)
    return np_poly.slope_multiset()


def slope_zeta(Z: ZetaFactorization, q: int) -> SlopeZeta:
    """Slope zeta of a factorization: each reciprocal zero/pole contributes
    (1 - U^slope T)^(-+1), slopes read off q-adic Newton polygons."""
    d = {}
    for s in poly_slopes(Z.numerator, q):
        d[s] = d.get(s, 0) + 1
    for s in poly_slopes(Z.denominator, q):
        d[s] = d.get(s, 0) - 1
    return SlopeZeta.from_dict(d)


# ---------------------------------------------------------------------------
# l-adic congruence scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceReport:
    l: int
    k_max: int
    passing: tuple            # candidates with zero violations, ascending
    smallest_passing: int | None
    violations: dict          # candidate -> first few violating tuples

    def to_json(self):
        return {"l": self.l, "k_max": self.k_max,
                "passing": list(self.passing),
                "smallest_passing": self.smallest_passing,
                "violations": {str(D): [list(v) for v in vs]
                               for D, vs in self.violations.items()}}


def congruence_scan(moments: dict, l: int, k_max: int, D_candidates) -> CongruenceReport:
    """Scan congruences M_{d1} = M_{d2} mod l^k for d1 = d2 mod D l^(k-1).

    moments maps d -> exact moment value.  Reports every candidate D with no
    violations across the supplied range, plus witnesses for the failures.
    """
    ds = sorted(moments)
    passing = []
    violations = {}
    for D in sorted(set(int(x) for x in D_candidates)):
        bad = []
        for k in range(1, k_max + 1):
            modulus = D * l ** (k - 1)
            power = l ** k
            for i, d1 in enumerate(ds):
                for d2 in ds[i + 1:]:
                    if (d2 - d1) % modulus == 0:
                        if (moments[d1] - moments[d2]) % power != 0:
                            bad.append((D, k, d1, d2,
                                        moments[d1] % power, moments[d2] % power))
        if bad:
            violations[D] = tuple(bad[:5])
        else:
            passing.append(D)
    return CongruenceReport(l=l, k_max=k_max, passing=tuple(passing),
                            smallest_passing=passing[0] if passing else None,
                            violations=violations)


# ---------------------------------------------------------------------------
# Euler factor tables
# ---------------------------------------------------------------------------

def euler_factor_table(recipe: str, d: int, primes, kmax: int = None):
    """Per-prime moment factors for a built-in family recipe.

    recipe "cy2": the two-variable family x1 + x2 + 1/(x1 x2) - y.  For
    d >= 2, rows carry the moment factor R_d with verdicts (degree, purity,
    functional equation); d = 1 rows carry the full total-space zeta.
    Primes dividing 3 are skipped with a reason; other per-prime failures
    are recorded, not fatal.
    """
    from .counting import cy_family, moment_sequence  # deferred: avoids cycle

    if recipe != "cy2":
        raise ZetamillError(f"unknown family recipe {recipe!r}")
    rows = []
    for p in sorted(set(int(x) for x in primes)):
        if p == 3:
            rows.append({"p": p, "d": d, "skipped": "p divides n+1 = 3"})
            continue
        try:
            fam = cy_family(2, p)
            if d == 1:
                counts = moment_sequence(fam, 1, 2)
                # total space is the full 2-torus: poles {1, q^2}, double zero q
                num = binomial_factor(p) * binomial_factor(p)
                den = binomial_factor(1) * binomial_factor(p * p)
                z = ZetaFactorization.from_num_den(num, den, counts=counts,
                                                   provenance={"p": p, "d": 1})
                rows.append({"p": p, "d": 1, "factor": list(num.coeffs),
                             "denominator": list(den.coeffs),
                             "verdicts": {"counts_match": True}})
                continue
            need = max(d - 1, 2)
            counts = moment_sequence(fam, d, need)
            prev = extract_R_d(d - 2, p, moment_sequence(fam, d - 2, max(d - 3, 2))) \
                if d - 2 >= 2 else ONE
            R = extract_R_d(d, p, counts, r_prev=prev)
            ww = weil_weights(R, p)
            fe = functional_equation_check(R, p, d + 1, 2 * (d - 1))
            rows.append({"p": p, "d": d, "factor": list(R.coeffs),
                         "verdicts": {"degree": R.degree == 2 * (d - 1),
                                      "pure_weight": list(ww.pure_weights or ()),
                                      "functional_equation": bool(fe),
                                      "trace": -R.coeffs[1]}})
        except ZetamillError as exc:
            rows.append({"p": p, "d": d, "error": str(exc)})
    return rows
