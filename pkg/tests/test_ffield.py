import random

import pytest

from zetamill.errors import ZetamillError
from zetamill.ffield import (
    FieldElem,
    embed,
    frobenius_power,
    in_subfield,
    invert,
    make_field,
    trace_to_prime,
)


def test_make_field_prime_field_uses_t():
    F = make_field(7, 1)
    assert F.modulus == (0, 1)
    assert F.order == 7


def test_make_field_canonical_moduli():
    # first irreducible in ascending coefficient order, constant term most significant
    assert make_field(2, 2).modulus == (1, 1, 1)      # t^2 + t + 1
    assert make_field(7, 2).modulus == (1, 0, 1)      # t^2 + 1 (-1 is a non-residue mod 7)


def test_make_field_deterministic():
    assert make_field(5, 3) is make_field(5, 3)
    assert make_field(5, 3).modulus == make_field(5, 3).modulus


def test_make_field_rejects_bad_input():
    with pytest.raises(ZetamillError):
        make_field(6, 1)
    with pytest.raises(ZetamillError):
        make_field(7, 0)


def test_modulus_is_irreducible_by_exhaustive_root_and_factor_scan():
    # independent check: for quadratics/cubics irreducible <=> no root
    for p, k in [(2, 2), (3, 2), (7, 2), (2, 3), (5, 3)]:
        F = make_field(p, k)
        m = F.modulus
        for x in range(p):
            val = sum(c * x**i for i, c in enumerate(m)) % p
            assert val != 0, f"modulus of F_{p}^{k} has root {x} in F_{p}"


def test_invert_examples():
    F7 = make_field(7, 1)
    assert invert(FieldElem((3,)), F7) == FieldElem((5,))
    assert invert(FieldElem((1,)), F7) == FieldElem((1,))
    F4 = make_field(2, 2)
    t = FieldElem((0, 1))
    assert invert(t, F4) == FieldElem((1, 1))  # t(t+1) = t^2+t = 1 mod t^2+t+1


def test_invert_zero_raises():
    F = make_field(5, 2)
    with pytest.raises(ZeroDivisionError):
        invert(FieldElem((0, 0)), F)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (5, 2), (7, 1), (2, 4), (3, 3)])
def test_inverse_involution_full_enumeration(p, k):
    F = make_field(p, k)
    one = F.one()
    for x in F.units():
        xi = F.inv(x)
        assert F.mul(x, xi) == one
        assert F.inv(xi) == x


def test_frobenius_examples():
    F4 = make_field(2, 2)
    t = FieldElem((0, 1))
    assert frobenius_power(t, F4, 2, 0) == t
    assert frobenius_power(t, F4, 2, 1) == FieldElem((1, 1))  # t^2 = t+1
    F7 = make_field(7, 1)
    for c in range(7):
        x = FieldElem((c,))
        assert frobenius_power(x, F7, 7, 1) == x  # Fermat


def test_frobenius_rejects_non_power_base():
    F = make_field(3, 2)
    with pytest.raises(ZetamillError):
        frobenius_power(FieldElem((1, 0)), F, 2, 1)


def test_frobenius_is_automorphism_random_pairs():
    rng = random.Random(7)
    for p, k in [(3, 3), (5, 2), (2, 4)]:
        F = make_field(p, k)
        for _ in range(25):
            x = F.from_lex_rank(rng.randrange(F.order))
            y = F.from_lex_rank(rng.randrange(F.order))
            fx = F.pow(x, p)
            fy = F.pow(y, p)
            assert F.pow(F.add(x, y), p) == F.add(fx, fy)
            assert F.pow(F.mul(x, y), p) == F.mul(fx, fy)


def test_in_subfield_examples():
    F4 = make_field(2, 2)
    t = FieldElem((0, 1))
    assert not in_subfield(t, F4, 2, 1)
    assert in_subfield(t, F4, 2, 2)
    assert in_subfield(FieldElem((1, 0)), F4, 2, 1)  # prime field element


def test_in_subfield_counts_are_exact():
    # #{x in F_{p^k} : x in F_{p^d}} = p^d whenever d | k
    for p, k, d in [(2, 4, 2), (2, 4, 1), (3, 2, 1), (5, 2, 1), (2, 6, 3)]:
        F = make_field(p, k)
        n = sum(1 for x in F.elements() if in_subfield(FieldElem(x), F, p, d))
        assert n == p**d


def test_in_subfield_incompatible_degrees():
    F = make_field(2, 4)
    with pytest.raises(ZetamillError):
        in_subfield(FieldElem((0, 1, 0, 0)), F, 2, 3)


def test_embed_examples():
    F7 = make_field(7, 1)
    F49 = make_field(7, 2)
    assert embed(FieldElem((3,)), F7, F49) == FieldElem((3, 0))
    assert embed(FieldElem((0,)), F7, F49) == FieldElem((0, 0))

    F4 = make_field(2, 2)
    F16 = make_field(2, 4)
    img = embed(FieldElem((0, 1)), F4, F16)
    # oracle: enumerate all roots of t^2+t+1 in F_16, image must be the lex-least
    roots = [x for x in F16.elements()
             if F16.is_zero(F16.eval_poly(F4.modulus, x))]
    assert img.coeffs in roots
    assert img.coeffs == min(roots)
    assert len(roots) == 2


def test_embed_is_field_homomorphism():
    rng = random.Random(11)
    F4 = make_field(2, 2)
    F16 = make_field(2, 4)
    F9 = make_field(3, 2)
    F81 = make_field(3, 4)
    for frm, into in [(F4, F16), (F9, F81)]:
        for _ in range(30):
            x = frm.from_lex_rank(rng.randrange(frm.order))
            y = frm.from_lex_rank(rng.randrange(frm.order))
            ex = embed(FieldElem(x), frm, into).coeffs
            ey = embed(FieldElem(y), frm, into).coeffs
            assert embed(FieldElem(frm.mul(x, y)), frm, into).coeffs == into.mul(ex, ey)
            assert embed(FieldElem(frm.add(x, y)), frm, into).coeffs == into.add(ex, ey)


def test_embed_rejects_non_divisible_degrees():
    with pytest.raises(ZetamillError):
        embed(FieldElem((0, 1)), make_field(2, 2), make_field(2, 3))


def test_trace_examples():
    F4 = make_field(2, 2)
    assert trace_to_prime(FieldElem((0, 0)), F4) == 0
    assert trace_to_prime(FieldElem((1, 0)), F4) == 0  # 1 + 1 in char 2
    assert trace_to_prime(FieldElem((0, 1)), F4) == 1  # t + (t+1)


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2), (7, 2)])
def test_trace_zero_count(p, k):
    F = make_field(p, k)
    n = sum(1 for x in F.elements() if trace_to_prime(FieldElem(x), F) == 0)
    assert n == p ** (k - 1)


def test_pack_unpack_roundtrip():
    F = make_field(5, 3)
    for x in F.elements():
        assert F.unpack(F.pack(x)) == x


def test_lex_enumeration_order():
    F = make_field(3, 2)
    elems = list(F.elements())
    assert elems == sorted(elems)
    assert elems[0] == (0, 0)
    assert F.from_lex_rank(F.lex_rank((2, 1))) == (2, 1)
