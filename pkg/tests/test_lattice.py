from fractions import Fraction

import pytest

from zetamill.errors import ZetamillError
from zetamill.lattice import (
    LatticePolytope,
    convex_hull,
    dilate_lattice_count,
    enumerate_faces,
    hodge_numbers,
    hodge_polygon,
    lattice_points,
    normalized_volume,
    ordinarity_prediction,
    polar_dual,
    semigroup_exponents,
    verify_convex_triangulation,
)

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
CY_TRIANGLE = [(1, 0), (0, 1), (-1, -1)]
SIMPLEX4 = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, 1, 1, 1)]


def test_hull_unit_square():
    P = convex_hull(SQUARE)
    assert sorted(P.vertices) == sorted(map(tuple, SQUARE))
    assert P.dim == 2
    assert len(P.halfspaces) == 4


def test_hull_drops_interior_points():
    P = convex_hull([(0,), (2,), (1,)])
    assert P.vertices == ((0,), (2,))
    T = convex_hull(CY_TRIANGLE + [(0, 0)])
    assert sorted(T.vertices) == sorted(CY_TRIANGLE)


def test_hull_empty_raises():
    with pytest.raises(ZetamillError):
        convex_hull([])


def test_hull_lower_dimensional():
    # segment embedded in the plane
    P = convex_hull([(0, 0), (2, 2), (1, 1)])
    assert P.dim == 1
    assert sorted(P.vertices) == [(0, 0), (2, 2)]
    assert P.contains((1, 1))
    assert not P.contains((1, 0))


def test_face_counts():
    assert len(enumerate_faces(convex_hull(SQUARE))) == 9
    assert len(enumerate_faces(convex_hull([(0,), (2,)]))) == 3
    assert len(enumerate_faces(convex_hull(CY_TRIANGLE))) == 7


def test_face_lattice_structure():
    faces = enumerate_faces(convex_hull(SQUARE))
    dims = sorted(f.dim for f in faces)
    assert dims == [0, 0, 0, 0, 1, 1, 1, 1, 2]
    top = [f for f in faces if f.dim == 2]
    assert len(top) == 1 and len(top[0].vertices) == 4


def test_dilate_counts():
    assert dilate_lattice_count(convex_hull(SQUARE), 2) == 9
    T = convex_hull(CY_TRIANGLE)
    assert dilate_lattice_count(T, 0) == 1
    assert dilate_lattice_count(T, 1) == 4   # 3 vertices + origin
    assert dilate_lattice_count(T, 2) == 10


def test_dilate_count_oracle_small_cases():
    # brute-force oracle on a 3d simplex: W(k) = C(k+3, 3)
    S = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    for k in range(5):
        expected = (k + 1) * (k + 2) * (k + 3) // 6
        assert dilate_lattice_count(S, k) == expected


def test_normalized_volume():
    assert normalized_volume(convex_hull(SQUARE)) == 2
    assert normalized_volume(convex_hull(CY_TRIANGLE)) == 3
    assert normalized_volume(convex_hull(SIMPLEX4)) == 4


def test_normalized_volume_rejects_degenerate():
    with pytest.raises(ZetamillError):
        normalized_volume(convex_hull([(0, 0), (1, 1)]))


def test_hodge_numbers_examples():
    H = hodge_numbers(convex_hull([(0,), (1,)]))
    assert H.h == (1, 0) and H.d == 1

    H = hodge_numbers(convex_hull([(-1,), (2,)]))
    assert H.h == (1, 2) and H.d == 3
    assert H.W[:2] == (1, 4)  # W(k) = 3k + 1

    H = hodge_numbers(convex_hull(CY_TRIANGLE))
    assert H.h == (1, 1, 1) and H.d == 3
    assert H.W[:3] == (1, 4, 10)


def test_hodge_polygon_vertices():
    H = hodge_numbers(convex_hull(CY_TRIANGLE))
    hp = hodge_polygon(H)
    assert hp.vertices == ((0, 0), (1, 0), (2, 1))

    H = hodge_numbers(convex_hull([(-1,), (2,)]))
    assert hodge_polygon(H).vertices == ((0, 0), (2, 0))

    H = hodge_numbers(convex_hull([(0,), (1,)]))
    assert hodge_polygon(H).vertices == ((0, 0),)


def test_hodge_sum_identity_battery():
    polys = [SQUARE, CY_TRIANGLE, SIMPLEX4,
             [(0, 0), (2, 0), (0, 2)],
             [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
             [(-1, -1), (1, 0), (0, 1), (1, 1)]]
    for pts in polys:
        P = convex_hull(pts)
        H = hodge_numbers(P)
        assert sum(H.h) == normalized_volume(P)


def test_polar_dual_cross_polytope():
    cross = convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    dual, reflexive = polar_dual(cross)
    assert reflexive
    assert sorted(dual.vertices) == sorted(
        [(Fraction(-1), Fraction(-1)), (Fraction(-1), Fraction(1)),
         (Fraction(1), Fraction(-1)), (Fraction(1), Fraction(1))])


def test_polar_dual_cy_triangle():
    dual, reflexive = polar_dual(convex_hull(CY_TRIANGLE))
    assert reflexive
    assert sorted(tuple(map(int, v)) for v in dual.vertices) == \
        sorted([(2, -1), (-1, 2), (-1, -1)])


def test_polar_dual_scaled_square_not_reflexive():
    big = convex_hull([(2, 2), (2, -2), (-2, 2), (-2, -2)])
    dual, reflexive = polar_dual(big)
    assert not reflexive
    assert sorted(dual.vertices) == sorted(
        [(Fraction(1, 2), Fraction(0)), (Fraction(-1, 2), Fraction(0)),
         (Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(-1, 2))])


def test_polar_dual_needs_interior_origin():
    with pytest.raises(ZetamillError):
        polar_dual(convex_hull(SQUARE))


def test_semigroup_exponents_unimodular():
    simplex = convex_hull([(0, 0), (1, 0), (0, 1)])
    res = semigroup_exponents(simplex, search_bound=4)
    assert res.I == 1
    assert res.I_inf == 1


def test_semigroup_exponents_square():
    res = semigroup_exponents(convex_hull(SQUARE), search_bound=4)
    assert res.I == 1


def test_star_decomposition_passes():
    cells = [[(0, 0), (1, 0), (0, 1)],
             [(0, 0), (1, 0), (-1, -1)],
             [(0, 0), (0, 1), (-1, -1)]]
    heights = {(0, 0): 0, (1, 0): 1, (0, 1): 1, (-1, -1): 1}
    verdict = verify_convex_triangulation(convex_hull(CY_TRIANGLE), cells, heights)
    assert verdict.ok, verdict


def test_flat_diagonal_cut_fails():
    cells = [[(0, 0), (1, 0), (1, 1)], [(0, 0), (0, 1), (1, 1)]]
    heights = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0}
    verdict = verify_convex_triangulation(convex_hull(SQUARE), cells, heights)
    assert not verdict.ok
    assert "convex" in verdict.reason


def test_bad_cover_fails():
    cells = [[(0, 0), (1, 0), (1, 1)]]
    heights = {(0, 0): 0, (1, 0): 1, (1, 1): 2}
    verdict = verify_convex_triangulation(convex_hull(SQUARE), cells, heights)
    assert not verdict.ok


def test_parallel_cut_with_paraboloid_heights():
    # parallel-hyperplane cut of 2 * (unit simplex); the x -> sum x_i^2 lift is
    # flat across the lattice square's diagonal, so strict convexity fails there
    big = convex_hull([(0, 0), (2, 0), (0, 2)])
    cells = [[(0, 0), (1, 0), (0, 1)],
             [(1, 0), (0, 1), (1, 1)],
             [(1, 0), (2, 0), (1, 1)],
             [(0, 1), (1, 1), (0, 2)]]
    pts = {p for cell in cells for p in cell}
    heights = {p: p[0] ** 2 + p[1] ** 2 for p in pts}
    verdict = verify_convex_triangulation(big, cells, heights)
    assert not verdict.ok
    assert "convex" in verdict.reason
    # volumes do cover, so the failure is purely about the lift
    assert sum(1 for _ in cells) == 4


def test_parallel_cut_with_convex_heights_passes():
    big = convex_hull([(0, 0), (2, 0), (0, 2)])
    cells = [[(0, 0), (1, 0), (0, 1)],
             [(1, 0), (0, 1), (1, 1)],
             [(1, 0), (2, 0), (1, 1)],
             [(0, 1), (1, 1), (0, 2)]]
    # lift strictly convex for this cut: raise the midpoint above the diagonal
    # plane (> 2) but below the outer supports (< 4)
    heights = {(0, 0): 0, (1, 0): 1, (0, 1): 1, (1, 1): Fraction(9, 4),
               (2, 0): 4, (0, 2): 4}
    verdict = verify_convex_triangulation(big, cells, heights)
    assert verdict.ok, verdict


def test_ordinarity_prediction():
    lcm, ordinary = ordinarity_prediction(
        [[(0, 0), (1, 0), (0, 1)], [(0, 0), (1, 0), (-1, -1)], [(0, 0), (0, 1), (-1, -1)]],
        p=5)
    assert lcm == 1 and ordinary

    lcm, ordinary = ordinarity_prediction([convex_hull(SIMPLEX4)], p=7)
    assert lcm == 4 and not ordinary  # 7 = 3 mod 4

    lcm, ordinary = ordinarity_prediction([convex_hull(CY_TRIANGLE)], p=7)
    assert lcm == 3 and ordinary  # 7 = 1 mod 3


def test_lattice_points_listing():
    T = convex_hull(CY_TRIANGLE)
    assert sorted(lattice_points(T)) == [(-1, -1), (0, 0), (0, 1), (1, 0)]


def test_json_roundtrip():
    P = convex_hull(SIMPLEX4)
    again = LatticePolytope.from_json(P.to_json())
    assert again == P
