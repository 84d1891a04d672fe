"""Exact lattice-polytope combinatorics.

Convex hulls, face lattices, dilate lattice-point counts W(k), normalized
volume, Hodge numbers and the Hodge polygon, polar duals and reflexivity,
semigroup exponents, and verification of convex (regular) triangulations.

Everything here runs in exact rational arithmetic (Fraction); verdicts are
exact, no floating point anywhere in this module.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .config import DEFAULT
from .errors import CapExceeded, MathInconsistency, ZetamillError
from .polygons import ConvexPolygonQ


# ---------------------------------------------------------------------------
# exact linear algebra over Q
# ---------------------------------------------------------------------------

def _rref(rows):
    """Reduced row echelon form; returns (rref rows, pivot column list)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _rank(rows):
    if not rows:
        return 0
    return len(_rref(rows)[1])


def _nullspace(rows, ncols):
    """Basis of the right nullspace of the given rows (ncols columns)."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -m[ri][fc]
        basis.append(v)
    return basis


def _solve(rows, rhs):
    """One exact solution of rows * x = rhs, or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = _rref(aug)
    for row in m:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for ri, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = m[ri][-1]
    return x


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector (gcd 1)."""
    den = math.lcm(*[f.denominator for f in vec]) if vec else 1
    ints = [int(f * den) for f in vec]
    g = math.gcd(*ints) if any(ints) else 1
    return tuple(v // g for v in ints)


# ---------------------------------------------------------------------------
# rational hull core (shared by lattice polytopes and polar duals)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _HullData:
    points: tuple            # deduped input points (Fraction tuples), lex-sorted
    dim: int
    vertex_indices: tuple    # indices into points
    facets: tuple            # (normal, offset): normal . x >= offset, integer primitive
    vertex_facets: tuple     # per vertex: frozenset of facet indices containing it

    @property
    def vertices(self):
        return tuple(self.points[i] for i in self.vertex_indices)


_HULL_CANDIDATE_CAP = 2 * 10**6


def _hull_full_dim(points):
    """Facet enumeration for a full-dimensional point set by exhaustive
    hyperplane search over d-subsets; exact and deterministic."""
    d = len(points[0])
    m = len(points)
    if math.comb(m, d) > _HULL_CANDIDATE_CAP:
        raise CapExceeded("too many candidate facet hyperplanes",
                          estimated=math.comb(m, d), cap=_HULL_CANDIDATE_CAP)
    facets = {}
    for subset in combinations(range(m), d):
        base = points[subset[0]]
        diffs = [[points[i][j] - base[j] for j in range(d)] for i in subset[1:]]
        ns = _nullspace(diffs, d)
        if len(ns) != 1:
            continue  # affinely dependent subset
        a = _primitive(ns[0])
        b = sum(ai * xi for ai, xi in zip(a, base))
        lo = hi = False
        for pt in points:
            s = sum(ai * xi for ai, xi in zip(a, pt)) - b
            if s > 0:
                hi = True
            elif s < 0:
                lo = True
            if lo and hi:
                break
        if lo and hi:
            continue
        if lo:  # points lie on the <= side; flip inward
            a = tuple(-x for x in a)
            b = -b
        facets[(a, b)] = True
    facet_list = sorted(facets)
    vertex_facets = []
    vertex_indices = []
    for i, pt in enumerate(points):
        active = frozenset(
            fi for fi, (a, b) in enumerate(facet_list)
            if sum(ai * xi for ai, xi in zip(a, pt)) == b)
        vertex_facets.append(active)
        normals = [facet_list[fi][0] for fi in active]
        if normals and _rank(normals) == d:
            vertex_indices.append(i)
    vf = tuple(vertex_facets[i] for i in vertex_indices)
    return tuple(facet_list), tuple(vertex_indices), vf


class _AffineFrame:
    """Affine chart of the span of a point set: x = origin + B . y."""

    def __init__(self, origin, basis):
        self.origin = tuple(Fraction(x) for x in origin)
        self.basis = [tuple(Fraction(x) for x in b) for b in basis]  # r vectors in Q^n
        self.n = len(self.origin)
        self.r = len(self.basis)
        cols = [[self.basis[j][i] for j in range(self.r)] for i in range(self.n)]
        self._cols = cols

    def to_chart(self, x):
        """Chart coordinates of x, or None when x is off the span."""
        rhs = [Fraction(xi) - oi for xi, oi in zip(x, self.origin)]
        return _solve(self._cols, rhs)

    def to_ambient(self, y):
        out = list(self.origin)
        for j, c in enumerate(y):
            for i in range(self.n):
                out[i] += c * self.basis[j][i]
        return tuple(out)


def _hull_data(raw_points):
    if not raw_points:
        raise ZetamillError("convex hull of an empty point set")
    pts = sorted({tuple(Fraction(x) for x in p) for p in raw_points})
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ZetamillError("points of mixed dimension")
    origin = pts[0]
    basis = []
    for p in pts[1:]:
        cand = [tuple(pi - oi for pi, oi in zip(p, origin))]
        if _rank([list(b) for b in basis] + [list(c) for c in cand]) > len(basis):
            basis.append(cand[0])
    r = len(basis)
    if r == 0:
        return _HullData(points=tuple(pts), dim=0, vertex_indices=(0,),
                         facets=(), vertex_facets=(frozenset(),)), None
    if r == n:
        frame = None
        chart_pts = pts
    else:
        frame = _AffineFrame(origin, basis)
        chart_pts = [tuple(frame.to_chart(p)) for p in pts]
    facets, vidx, vf = _hull_full_dim(chart_pts)
    return _HullData(points=tuple(pts), dim=r, vertex_indices=vidx,
                     facets=facets, vertex_facets=vf), frame


# ---------------------------------------------------------------------------
# lattice polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """A nonempty face of a polytope: the vertex set cut out by a collection
    of supporting facet hyperplanes (empty collection = the polytope itself)."""

    halfspace_indices: frozenset
    vertex_indices: tuple
    vertices: tuple
    dim: int


class LatticePolytope:
    """Polytope with integer vertices; immutable after construction.

    For a full-dimensional polytope ``halfspaces`` lives in the ambient
    space: Delta = {x : a . x >= b for all (a, b)}.  Lower-dimensional
    polytopes carry the same data in an affine chart of their span, plus
    the ambient equations cutting that span.
    """

    def __init__(self, points):
        hull, frame = _hull_data(points)
        self.n = len(hull.points[0])
        self.dim = hull.dim
        self._hull = hull
        self._frame = frame
        if any(c.denominator != 1 for v in hull.vertices for c in v):
            raise ZetamillError("vertices are not integral")
        self.vertices = tuple(tuple(int(c) for c in v) for v in hull.vertices)
        self._faces_cache = None

    # -- geometry ---------------------------------------------------------------

    @property
    def halfspaces(self):
        """Inward halfspaces (a, b), ambient when dim == n, else in the chart."""
        return self._hull.facets

    @property
    def is_full_dim(self):
        return self.dim == self.n

    def _chart_point(self, x):
        if self.is_full_dim:
            return tuple(Fraction(c) for c in x)
        if self.dim == 0:
            return () if tuple(Fraction(c) for c in x) == self._hull.points[0] else None
        return self._frame.to_chart(x)

    def contains(self, x, dilation=1):
        """Exact membership of x in dilation * Delta."""
        if self.is_full_dim:
            return all(sum(a_i * Fraction(x_i) for a_i, x_i in zip(a, x)) >= b * dilation
                       for a, b in self._hull.facets)
        if self.dim == 0:
            return all(Fraction(xi) == dilation * pi
                       for xi, pi in zip(x, self._hull.points[0]))
        y = self._frame.to_chart(tuple(Fraction(xi) / dilation for xi in x))
        if y is None:
            return False
        return all(sum(a_i * y_i for a_i, y_i in zip(a, y)) >= b
                   for a, b in self._hull.facets)

    def bounding_box(self):
        los = [min(v[i] for v in self.vertices) for i in range(self.n)]
        his = [max(v[i] for v in self.vertices) for i in range(self.n)]
        return los, his

    # -- faces ------------------------------------------------------------------

    def faces(self):
        """All nonempty faces, including the polytope itself; deterministic order
        (increasing dimension, then lex on vertex index sets)."""
        if self._faces_cache is not None:
            return self._faces_cache
        hull = self._hull
        nverts = len(hull.vertex_indices)
        all_idx = tuple(range(nverts))
        facet_verts = []
        for fi in range(len(hull.facets)):
            facet_verts.append(frozenset(v for v in range(nverts)
                                         if fi in hull.vertex_facets[v]))
        seen = {}
        top_key = frozenset(all_idx)
        seen[top_key] = frozenset()
        work = [top_key]
        while work:
            cur = work.pop()
            for fv in facet_verts:
                nxt = cur & fv
                if nxt and nxt not in seen:
                    seen[nxt] = frozenset(fi for fi in range(len(hull.facets))
                                          if nxt <= facet_verts[fi])
                    work.append(nxt)
        faces = []
        for vset, hs in seen.items():
            vidx = tuple(sorted(vset))
            verts = tuple(self.vertices[i] for i in vidx)
            if len(verts) == 1:
                fdim = 0
            else:
                diffs = [[verts[i][j] - verts[0][j] for j in range(self.n)]
                         for i in range(1, len(verts))]
                fdim = _rank(diffs)
            faces.append(Face(halfspace_indices=hs, vertex_indices=vidx,
                              vertices=verts, dim=fdim))
        faces.sort(key=lambda f: (f.dim, f.vertex_indices))
        self._faces_cache = tuple(faces)
        return self._faces_cache

    def point_on_face(self, face: Face, x) -> bool:
        """Whether a point of Delta lies on the given face."""
        if not self.contains(x):
            return False
        if not face.halfspace_indices:
            return True
        y = self._chart_point(x)
        if y is None:
            return False
        for fi in face.halfspace_indices:
            a, b = self._hull.facets[fi]
            if sum(a_i * y_i for a_i, y_i in zip(a, y)) != b:
                return False
        return True

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        return {"n": self.n, "vertices": [list(v) for v in self.vertices]}

    @staticmethod
    def from_json(obj) -> "LatticePolytope":
        return LatticePolytope([tuple(v) for v in obj["vertices"]])

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"


def convex_hull(points) -> LatticePolytope:
    """Convex hull of integer points: minimal vertex set plus exact halfspace
    data, deterministic (lex-ordered) across runs."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ZetamillError("empty point set")
    if any(not all(isinstance(c, int) or Fraction(c).denominator == 1 for c in p)
           for p in pts):
        raise ZetamillError("lattice polytope needs integer points")
    if len(pts[0]) > 6:
        raise CapExceeded("ambient dimension above configured cap 6")
    return LatticePolytope(pts)


def enumerate_faces(delta: LatticePolytope):
    return list(delta.faces())


# ---------------------------------------------------------------------------
# Ehrhart-style counts, Hodge numbers, Hodge polygon
# ---------------------------------------------------------------------------

def lattice_points(delta: LatticePolytope, dilation=1, cap=None):
    """All integer points of dilation * Delta by bounding-box scan."""
    cap = DEFAULT.lattice_scan_cap if cap is None else cap
    los, his = delta.bounding_box()
    size = 1
    ranges = []
    for lo, hi in zip(los, his):
        lo, hi = min(lo * dilation, hi * dilation), max(lo * dilation, hi * dilation)
        ranges.append(range(lo, hi + 1))
        size *= len(ranges[-1])
    if size > cap:
        raise CapExceeded(f"dilate scan of {size} box points exceeds cap",
                          estimated=size, cap=cap)
    out = []
    for x in product(*ranges):
        if delta.contains(x, dilation=dilation):
            out.append(x)
    return out


def dilate_lattice_count(delta: LatticePolytope, k: int, cap=None) -> int:
    """W(k): number of lattice points in the k-th dilate (the height-k slice
    of the cone over {1} x Delta).  W(0) = 1."""
    if k < 0:
        raise ZetamillError("dilation must be >= 0")
    if k == 0:
        return 1
    return len(lattice_points(delta, dilation=k, cap=cap))


def normalized_volume(delta: LatticePolytope) -> int:
    """d(Delta) = n! Vol(Delta), via the n-th finite difference of W at 0."""
    if not delta.is_full_dim:
        raise ZetamillError("normalized volume needs a full-dimensional polytope")
    n = delta.n
    w = [dilate_lattice_count(delta, k) for k in range(n + 1)]
    d = sum((-1) ** (n - i) * math.comb(n, i) * w[i] for i in range(n + 1))
    if d <= 0:
        raise MathInconsistency(f"normalized volume came out {d}")
    return d


@dataclass(frozen=True)
class HodgeData:
    W: tuple       # W(0..n+1)
    h: tuple       # h(0..n)
    d: int         # normalized volume, = sum of h
    HP: ConvexPolygonQ


def hodge_numbers(delta: LatticePolytope) -> HodgeData:
    """Hodge numbers h(k) from alternating sums of dilate counts.

    h(k) = sum_i (-1)^i C(n+1, i) W(k - i); validated against h >= 0 and
    sum h = n! Vol, which pins the binomial convention.
    """
    if not delta.is_full_dim:
        raise ZetamillError("Hodge numbers need a full-dimensional polytope")
    n = delta.n
    w = [dilate_lattice_count(delta, k) for k in range(n + 2)]
    # W grows as a degree-n polynomial: its (n+1)-st difference must vanish
    diff = sum((-1) ** (n + 1 - i) * math.comb(n + 1, i) * w[i] for i in range(n + 2))
    if diff != 0:
        raise MathInconsistency("dilate counts are not a degree-n polynomial")
    h = []
    for k in range(n + 1):
        h.append(sum((-1) ** i * math.comb(n + 1, i) * w[k - i]
                     for i in range(k + 1)))
    d = normalized_volume(delta)
    if any(x < 0 for x in h):
        raise MathInconsistency(f"negative Hodge number in {h}")
    if sum(h) != d:
        raise MathInconsistency(f"sum of Hodge numbers {sum(h)} != volume {d}")
    hp = _hodge_polygon(h, n)
    return HodgeData(W=tuple(w), h=tuple(h), d=d, HP=hp)


def _hodge_polygon(h, n) -> ConvexPolygonQ:
    return ConvexPolygonQ.from_slopes([(k - 1, h[k]) for k in range(1, n + 1)])


def hodge_polygon(data: HodgeData) -> ConvexPolygonQ:
    """Polygon with a slope k-1 side of horizontal length h(k), k = 1..n."""
    return data.HP


# ---------------------------------------------------------------------------
# polar dual
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalPolytope:
    n: int
    vertices: tuple  # Fraction tuples, lex-sorted

    def to_json(self):
        return {"n": self.n,
                "vertices": [[f"{c.numerator}/{c.denominator}" for c in v]
                             for v in self.vertices]}


def polar_dual(delta: LatticePolytope):
    """Polar dual and reflexivity flag; requires 0 strictly interior.

    Dual vertices come one per facet a.x >= b as -a/b; the double dual is
    recomputed and checked to equal Delta exactly.
    """
    if not delta.is_full_dim:
        raise ZetamillError("polar dual needs a full-dimensional polytope")
    if not all(b < 0 for _, b in delta.halfspaces):
        raise ZetamillError("origin is not strictly interior")
    dual_verts = sorted(tuple(Fraction(ai, -b) for ai in a)
                        for a, b in delta.halfspaces)
    is_reflexive = all(c.denominator == 1 for v in dual_verts for c in v)
    # double dual check: facets of the dual recover the original vertices
    dual_hull, _ = _hull_data(dual_verts)
    double = sorted(tuple(Fraction(ai, -b) for ai in a) for a, b in dual_hull.facets)
    orig = sorted(tuple(Fraction(c) for c in v) for v in delta.vertices)
    if double != orig:
        raise MathInconsistency("double polar dual failed to recover the polytope")
    return RationalPolytope(n=delta.n, vertices=tuple(dual_verts)), is_reflexive


# ---------------------------------------------------------------------------
# semigroup exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemigroupExponents:
    I: int | None
    I_inf: int | None
    search_bound: int
    inf_threshold: int   # weight u0 from which "u >> 0" was taken to mean u0 >= this


def semigroup_exponents(delta: LatticePolytope, search_bound: int) -> SemigroupExponents:
    """Bounded search for the exponents of the cone over {1} x Delta.

    Tests D = 1..search_bound against every cone point u of weight
    u0 <= search_bound; membership D*u in the height-graded semigroup
    generated at height one is decided by memoized decomposition search.
    None means unresolved within the bound, not a verdict.
    """
    if not delta.is_full_dim:
        raise ZetamillError("semigroup exponents need a full-dimensional polytope")
    gens = sorted(lattice_points(delta, 1))
    cone_pts = []
    for k in range(1, search_bound + 1):
        cone_pts.extend((k, v) for v in sorted(lattice_points(delta, k)))
    memo = {}

    def decomposes(v, count):
        """v expressible as a sum of exactly count generators."""
        key = (v, count)
        res = memo.get(key)
        if res is not None:
            return res
        if count == 0:
            res = all(c == 0 for c in v)
        elif not delta.contains(v, dilation=count):
            res = False
        else:
            res = False
            for g in gens:
                w = tuple(vi - gi for vi, gi in zip(v, g))
                if decomposes(w, count - 1):
                    res = True
                    break
        memo[key] = res
        return res

    threshold = (search_bound + 1) // 2

    def smallest_d(points):
        for D in range(1, search_bound + 1):
            if all(decomposes(tuple(D * c for c in v), D * k) for k, v in points):
                return D
        return None

    I = smallest_d(cone_pts)
    I_inf = smallest_d([(k, v) for k, v in cone_pts if k >= threshold])
    return SemigroupExponents(I=I, I_inf=I_inf, search_bound=search_bound,
                              inf_threshold=threshold)


# ---------------------------------------------------------------------------
# convex triangulation verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangulationVerdict:
    ok: bool
    reason: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _simplex_volume(points):
    """Normalized volume n! Vol of an n-simplex (integer determinant)."""
    base = points[0]
    rows = [[Fraction(p[i] - base[i]) for i in range(len(base))] for p in points[1:]]
    # Bareiss-free: fraction Gaussian elimination determinant
    n = len(rows)
    det = Fraction(1)
    m = [row[:] for row in rows]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    v = abs(det)
    assert v.denominator == 1
    return int(v)


def _affine_lift(points, heights):
    """Coefficients (c, c0) of the affine function through the lifted simplex."""
    n = len(points[0])
    rows = [[Fraction(c) for c in p] + [Fraction(1)] for p in points]
    rhs = [heights[p] for p in points]
    sol = _solve(rows, rhs)
    if sol is None:
        raise MathInconsistency("degenerate simplex in affine lift")
    return sol


def _cell_halfspaces(points):
    hull, _ = _hull_data(points)
    return hull.facets


def _hpolytope_vertices(halfspaces, n):
    """Vertex set of an H-polytope by basic-solution enumeration (small n)."""
    verts = set()
    for subset in combinations(range(len(halfspaces)), n):
        rows = [list(map(Fraction, halfspaces[i][0])) for i in subset]
        rhs = [Fraction(halfspaces[i][1]) for i in subset]
        if _rank(rows) < n:
            continue
        x = _solve(rows, rhs)
        if x is None:
            continue
        if all(sum(a_i * x_i for a_i, x_i in zip(a, x)) >= b for a, b in halfspaces):
            verts.add(tuple(x))
    return verts


def verify_convex_triangulation(delta: LatticePolytope, simplices, heights) -> TriangulationVerdict:
    """Check that the given cells triangulate Delta and that the height lift
    is affine per cell and strictly convex across every interior facet.

    simplices: list of cells, each a list of integer points.
    heights: map point tuple -> Fraction-convertible height.
    Returns pass, or the first violated condition with a witness.
    """
    if not delta.is_full_dim:
        return TriangulationVerdict(False, "polytope is not full-dimensional")
    n = delta.n
    cells = [tuple(tuple(int(c) for c in p) for p in cell) for cell in simplices]
    hmap = {tuple(int(c) for c in pt): Fraction(hv) for pt, hv in heights.items()}

    # (a) each cell an n-simplex with integral vertices inside Delta
    for ci, cell in enumerate(cells):
        if len(cell) != n + 1:
            return TriangulationVerdict(False, "cell is not an n-simplex", (ci, cell))
        if len(set(cell)) != n + 1 or _simplex_volume(cell) == 0:
            return TriangulationVerdict(False, "cell is degenerate", (ci, cell))
        for p in cell:
            if not delta.contains(p):
                return TriangulationVerdict(False, "cell vertex outside polytope", (ci, p))
            if p not in hmap:
                return TriangulationVerdict(False, "missing height", (ci, p))

    # (b) cells cover Delta with pairwise common-face intersections
    vol = sum(_simplex_volume(cell) for cell in cells)
    dvol = normalized_volume(delta)
    if vol != dvol:
        return TriangulationVerdict(False, "cell volumes do not sum to the polytope volume",
                                    (vol, dvol))
    facet_count = {}
    for ci, cell in enumerate(cells):
        for drop in range(n + 1):
            key = frozenset(cell[:drop] + cell[drop + 1:])
            facet_count.setdefault(key, []).append((ci, cell[drop]))
    for key, owners in facet_count.items():
        if len(owners) > 2:
            return TriangulationVerdict(False, "facet shared by more than two cells",
                                        (tuple(sorted(key)), tuple(o[0] for o in owners)))
        if len(owners) == 1:
            # boundary facet: all its points must lie on one facet of Delta
            pts = list(key)
            on_boundary = any(
                all(sum(a_i * Fraction(x_i) for a_i, x_i in zip(a, p)) == b for p in pts)
                for a, b in (delta.halfspaces if delta.is_full_dim else ()))
            if not on_boundary:
                return TriangulationVerdict(False, "unmatched interior facet",
                                            (tuple(sorted(key)), owners[0][0]))
    cell_hs = [_cell_halfspaces(cell) for cell in cells]
    for ci, cj in combinations(range(len(cells)), 2):
        inter = _hpolytope_vertices(cell_hs[ci] + cell_hs[cj], n)
        if not inter:
            continue
        shared = set(map(lambda p: tuple(map(Fraction, p)), set(cells[ci]) & set(cells[cj])))
        if not inter <= shared:
            return TriangulationVerdict(False, "cells do not meet in a common face", (ci, cj))

    # (c) strict convexity of the lift across interior facets
    lifts = [_affine_lift(cell, hmap) for cell in cells]
    for key, owners in facet_count.items():
        if len(owners) != 2:
            continue
        (ci, _), (cj, wj) = owners
        lift_i = lifts[ci]
        val = sum(c * Fraction(x) for c, x in zip(lift_i[:-1], wj)) + lift_i[-1]
        if not val < hmap[wj]:
            return TriangulationVerdict(False, "lift not strictly convex across facet",
                                        (tuple(sorted(key)), wj))
    return TriangulationVerdict(True)


def ordinarity_prediction(simplices, p: int):
    """lcm of the cell volumes and the p = 1 mod lcm ordinarity prediction.

    A True verdict predicts ordinarity; False asserts nothing.
    """
    vols = []
    for s in simplices:
        if isinstance(s, LatticePolytope):
            vols.append(normalized_volume(s))
        else:
            vols.append(_simplex_volume([tuple(p_) for p_ in s]))
    ell = math.lcm(*vols) if vols else 1
    return ell, (p % ell) == 1 % ell
