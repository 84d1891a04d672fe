"""q-adic Newton polygons, Hodge comparison, ordinarity, and sampled
generic Newton polygons.

The q-adic Newton polygon of P = 1 + c_1 T + ... is the lower convex hull
of (k, ord_q(c_k)); its slopes are the q-adic valuations of the reciprocal
roots.  Comparing with the Hodge polygon of the Newton polytope gives the
ordinarity verdict; sampling random regular polynomials estimates the
generic polygon from above (reported as sampled, never as proven).
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .config import effective_cap
from .counting import count_points
from .errors import MathInconsistency, ZetamillError
from .ffield import make_field
from .lattice import LatticePolytope, hodge_numbers, lattice_points, normalized_volume
from .laurent import LaurentPoly, newton_polytope
from .polygons import ConvexPolygonQ, PolygonComparison, lies_above as _poly_lies_above
from .regularity import RegularityVerdict, is_delta_regular
from .zetareconstruct import IntPolynomial, _ordq, nontrivial_factor


def newton_polygon_of(P: IntPolynomial, q: int) -> ConvexPolygonQ:
    """Lower hull of (k, ord_q(c_k)); zero coefficients contribute no point."""
    if P.coeffs[0] != 1:
        raise ZetamillError("Newton polygon needs P(0) = 1")
    pts = [(k, _ordq(c, q)) for k, c in enumerate(P.coeffs) if c != 0]
    return ConvexPolygonQ.from_points(pts)


def slope_multiset(np_poly: ConvexPolygonQ):
    """(slope, horizontal length) pairs; lengths sum to the degree."""
    return np_poly.slopes()


def lies_above(upper: ConvexPolygonQ, lower: ConvexPolygonQ) -> PolygonComparison:
    return _poly_lies_above(upper, lower)


@dataclass(frozen=True)
class OrdinarityVerdict:
    ordinary: bool
    NP: ConvexPolygonQ
    HP: ConvexPolygonQ
    factor: IntPolynomial
    comparison: PolygonComparison
    regularity: RegularityVerdict

    def __bool__(self):
        return self.ordinary

    def to_json(self):
        return {"ordinary": self.ordinary,
                "newton_polygon": self.NP.to_json(),
                "hodge_polygon": self.HP.to_json(),
                "factor": self.factor.to_json(),
                "regular_up_to": self.regularity.bound}


def is_ordinary(f: LaurentPoly, q: int, counts, extension_bound: int = 2) -> OrdinarityVerdict:
    """Ordinary means Newton polygon equals Hodge polygon.

    Checks regularity first (bounded; failure raises with the witness), then
    extracts the interesting factor from the counts and compares polygons.
    The polygon inequality with matching endpoints must hold for regular f;
    a violation is reported as an inconsistency, not a verdict.
    """
    reg = is_delta_regular(f, extension_bound)
    if not reg.regular:
        raise ZetamillError(
            f"f is not regular for its Newton polytope: witness {reg.witness} "
            f"over extension {reg.extension} on face {list(reg.face.vertices)}")
    delta = newton_polytope(f)
    hp = hodge_numbers(delta).HP
    P = nontrivial_factor(delta, counts, q)
    np_poly = newton_polygon_of(P, q)
    cmp = lies_above(np_poly, hp)
    if not (cmp.above and cmp.endpoints_match):
        raise MathInconsistency(
            f"Newton polygon {np_poly.vertices} fails to dominate the Hodge "
            f"polygon {hp.vertices} with matching endpoints; counts or "
            "regularity are inconsistent")
    return OrdinarityVerdict(ordinary=(np_poly.vertices == hp.vertices),
                             NP=np_poly, HP=hp, factor=P, comparison=cmp,
                             regularity=reg)


@dataclass(frozen=True)
class GnpSample:
    polygon: ConvexPolygonQ        # pointwise minimum over the regular samples
    hodge: ConvexPolygonQ
    trials: int
    regular_samples: int
    attaining_fraction: Fraction   # share of regular samples equal to the minimum
    sample_polygons: tuple

    @property
    def equals_hodge(self):
        return self.polygon.vertices == self.hodge.vertices

    def to_json(self):
        return {"sampled_gnp": self.polygon.to_json(),
                "hodge_polygon": self.hodge.to_json(),
                "trials": self.trials,
                "regular_samples": self.regular_samples,
                "attaining_fraction":
                    f"{self.attaining_fraction.numerator}/{self.attaining_fraction.denominator}",
                "equals_hodge": self.equals_hodge}


def gnp_sample(delta: LatticePolytope, p: int, trials: int, seed: int,
               field_degree: int = 1, extension_bound: int = 2,
               cap=None, threads: int = 1) -> GnpSample:
    """Sampled generic Newton polygon: the pointwise-lowest Newton polygon
    over random regular polynomials with Newton polytope delta.

    Coefficients are uniform over F_{p^field_degree} with nonzero vertex
    coefficients; irregular samples are discarded.  Each trial derives its
    own RNG stream from (seed, trial), so results do not depend on
    scheduling.  The output upper-bounds the true generic polygon.
    """
    if trials < 1:
        raise ZetamillError("need at least one trial")
    cap = effective_cap(cap)
    E = make_field(p, field_degree)
    q_eff = E.order
    support = sorted(lattice_points(delta, 1))
    vset = set(delta.vertices)
    D = normalized_volume(delta) - 1
    hp = hodge_numbers(delta).HP

    def one_trial(t):
        rng = random.Random((seed, t))
        terms = {}
        for u in support:
            if u in vset:
                terms[u] = E.from_lex_rank(rng.randrange(1, q_eff))
            else:
                c = E.from_lex_rank(rng.randrange(q_eff))
                if any(c):
                    terms[u] = c
        f = LaurentPoly(n=delta.n, field=E, terms=terms)
        reg = is_delta_regular(f, extension_bound, cap=cap)
        if not reg.regular:
            return None
        counts = [count_points(f, q_eff, k, cap=cap) for k in range(1, D + 1)]
        P = nontrivial_factor(newton_polytope(f), counts, q_eff)
        np_poly = newton_polygon_of(P, q_eff)
        cmp = lies_above(np_poly, hp)
        if not (cmp.above and cmp.endpoints_match):
            raise MathInconsistency(
                f"sampled Newton polygon {np_poly.vertices} lies below the "
                f"Hodge polygon {hp.vertices}")
        return np_poly

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_trial, range(trials)))
    else:
        results = [one_trial(t) for t in range(trials)]
    polys = [r for r in results if r is not None]
    if not polys:
        raise ZetamillError(f"all {trials} samples were irregular")
    xs = sorted({v[0] for poly in polys for v in poly.vertices})
    min_pts = [(x, min(poly.value_at(x) for poly in polys)) for x in xs]
    gnp = ConvexPolygonQ.from_points(min_pts)
    attain = sum(1 for poly in polys if poly.vertices == gnp.vertices)
    return GnpSample(polygon=gnp, hodge=hp, trials=trials,
                     regular_samples=len(polys),
                     attaining_fraction=Fraction(attain, len(polys)),
                     sample_polygons=tuple(polys))
