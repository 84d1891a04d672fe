import pytest

from zetamill.errors import ZetamillError
from zetamill.ffield import FieldElem, make_field
from zetamill.laurent import (
    LaurentPoly,
    ParseError,
    evaluate,
    face_restrict,
    last_var_decomposition,
    make_laurent,
    newton_polytope,
    parse_laurent,
    substitute_last,
    toric_partial,
)

F7 = make_field(7, 1)
F5 = make_field(5, 1)


def fe(*cs):
    return FieldElem(tuple(cs))


def test_parse_cy_fibre():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1 - 3", 2, F7)
    assert set(f.terms) == {(1, 0), (0, 1), (-1, -1), (0, 0)}
    assert f.terms[(0, 0)] == (4,)  # -3 mod 7
    assert f.terms[(-1, -1)] == (1,)


def test_parse_cancellation_gives_zero():
    f = parse_laurent("x1 - x1", 1, F7)
    assert f.is_zero


def test_parse_single_term():
    f = parse_laurent("2*x1^2*x2^-3", 2, F5)
    assert f.terms == {(2, -3): (2,)}


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_laurent("x1 + @", 1, F7)
    with pytest.raises(ParseError):
        parse_laurent("x3", 2, F7)
    with pytest.raises(ParseError):
        parse_laurent("x1 +", 1, F7)


def test_parse_alias_for_family_parameter():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1 - y", 3, F7, aliases={"y": 3})
    assert (0, 0, 1) in f.terms
    assert f.terms[(0, 0, 1)] == (6,)


def test_evaluate_examples():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1", 2, F7)
    assert evaluate(f, (fe(1), fe(1))) == fe(3)

    g = parse_laurent("x1 - 1", 1, F7)
    assert evaluate(g, (fe(1),)) == fe(0)

    h = parse_laurent("x1 + x2 + x1^-1*x2^-1 - 3", 2, F7)
    assert evaluate(h, (fe(1), fe(1))) == fe(0)


def test_evaluate_rejects_zero_coordinate():
    f = parse_laurent("x1^-1", 1, F7)
    with pytest.raises(ZeroDivisionError):
        evaluate(f, (fe(0),))


def test_evaluate_in_extension():
    F49 = make_field(7, 2)
    f = parse_laurent("x1^2 + 1", 1, F7)
    # t in F_49 = F_7[t]/(t^2+1) satisfies t^2 + 1 = 0
    assert evaluate(f, (FieldElem((0, 1)),), F49) == FieldElem((0, 0))


def test_newton_polytope_examples():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1 - 3", 2, F7)
    assert sorted(newton_polytope(f).vertices) == sorted([(1, 0), (0, 1), (-1, -1)])

    single = parse_laurent("4*x1^2*x2", 2, F7)
    P = newton_polytope(single)
    assert P.vertices == ((2, 1),) and P.dim == 0

    sq = parse_laurent("1 + x1 + x2 + 3*x1*x2", 2, F7)
    assert sorted(newton_polytope(sq).vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_newton_polytope_of_zero_raises():
    with pytest.raises(ZetamillError):
        newton_polytope(LaurentPoly(n=1, field=F7, terms={}))


def test_face_restrict():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1", 2, F7)
    delta = newton_polytope(f)
    faces = delta.faces()

    whole = [fc for fc in faces if fc.dim == 2][0]
    assert face_restrict(f, whole, delta).terms == f.terms

    vert = [fc for fc in faces if fc.vertices == ((1, 0),)][0]
    assert face_restrict(f, vert, delta).terms == {(1, 0): (1,)}

    edge = [fc for fc in faces if fc.dim == 1
            and set(fc.vertices) == {(1, 0), (0, 1)}][0]
    assert set(face_restrict(f, edge, delta).terms) == {(1, 0), (0, 1)}


def test_face_restrict_wrong_face_rejected():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1", 2, F7)
    g = parse_laurent("1 + x1 + x2", 2, F7)
    foreign = [fc for fc in newton_polytope(g).faces() if fc.dim == 0
               and fc.vertices == ((0, 0),)][0]
    with pytest.raises(ZetamillError):
        face_restrict(f, foreign)


def test_face_restrict_idempotent_along_chain():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1 + 2", 2, F7)
    delta = newton_polytope(f)
    for face in delta.faces():
        g = face_restrict(f, face, delta)
        assert face_restrict(g, face, delta).terms == g.terms


def test_toric_partial_examples():
    f = parse_laurent("x1 + x2", 2, F7)
    assert toric_partial(f, 1).terms == {(1, 0): (1,)}

    g = parse_laurent("x1^7", 1, F7)
    assert toric_partial(g, 1).is_zero  # exponent 7 = 0 mod 7

    h = parse_laurent("x1 + x2 + x1^-1*x2^-1", 2, F7)
    d2 = toric_partial(h, 2)
    assert d2.terms == {(0, 1): (1,), (-1, -1): (6,)}


def test_toric_partial_monomial_identity():
    # x_i d/dx_i (X^u) = u_i X^u, checked termwise over several fields
    for F in (F5, F7, make_field(2, 2)):
        f = make_laurent(2, F, {(3, -2): 1, (0, 4): 1, (-1, 1): 1})
        for i in (1, 2):
            df = toric_partial(f, i)
            for u in f.terms:
                expected = F.scale(u[i - 1], f.terms[u])
                got = df.terms.get(u, F.zero())
                assert got == expected


def test_newton_polytope_scalar_invariance():
    f = parse_laurent("x1 + 2*x2 + 3*x1^-1*x2^-1", 2, F7)
    g = make_laurent(2, F7, {u: F7.scale(5, c) for u, c in f.terms.items()})
    assert newton_polytope(f).vertices == newton_polytope(g).vertices


def test_substitute_last():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1 - y", 3, F7, aliases={"y": 3})
    fib = substitute_last(f, fe(3))
    assert fib.n == 2
    assert fib.terms[(0, 0)] == (4,)  # -3 mod 7


def test_last_var_decomposition():
    f = parse_laurent("x1 + x2 + x1^-1*x2^-1", 2, F7)
    shift, layers = last_var_decomposition(f)
    assert shift == 1
    assert set(layers) == {0, 1, 2}
    assert layers[2].terms == {(0,): (1,)}        # x2^2 coefficient: x1... cleared
    assert layers[0].terms == {(-1,): (1,)}       # x1^-1
    assert layers[1].terms == {(1,): (1,)}        # x1
