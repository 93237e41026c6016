"""Finite field arithmetic: table integrity, axioms, Frobenius, roots."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picss.gf import (FieldDescriptor, FieldError, SUPPORTED_PRIMES,
                      artin_schreier_roots, field_ops, has_primitive_cube_root,
                      parse_field)


def poly_mul_mod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            res[i + j] = (res[i + j] + ca * cb) % p
    deg = len(mod) - 1
    for k in range(len(res) - 1, deg - 1, -1):
        c = res[k]
        if c:
            for i in range(len(mod)):
                res[k - deg + i] = (res[k - deg + i] - c * mod[i]) % p
    return res[:deg]


def x_power(e, mod, p):
    deg = len(mod) - 1
    result = [1] + [0] * (deg - 1)
    base = poly_mul_mod([0, 1], [1] + [0] * (deg - 1), mod, p) if deg == 1 \
        else [0, 1] + [0] * (deg - 2)
    while e:
        if e & 1:
            result = poly_mul_mod(result, base, mod, p)
        base = poly_mul_mod(base, base, mod, p)
        e >>= 1
    return result


@pytest.mark.parametrize("p", SUPPORTED_PRIMES)
@pytest.mark.parametrize("m", range(2, 17))
def test_modulus_table_irreducible(p, m):
    """x^(p^m) = x mod f, and x^(p^(m/q)) != x for prime divisors q of m."""
    field = FieldDescriptor(p, m)
    mod = field.modulus()
    x = [0, 1] + [0] * (m - 2)
    assert x_power(p ** m, mod, p) == x
    q = 2
    divisors = []
    mm = m
    while mm > 1:
        while mm % q == 0:
            divisors.append(q)
            mm //= q
        q += 1
    for q in set(divisors):
        assert x_power(p ** (m // q), mod, p) != x


def test_parse_field():
    assert parse_field("GF(4)") == FieldDescriptor(2, 2)
    assert parse_field("GF(2^5)") == FieldDescriptor(2, 5)
    assert parse_field("gf(27)") == FieldDescriptor(3, 3)
    with pytest.raises(FieldError):
        parse_field("GF(6)")
    with pytest.raises(FieldError):
        parse_field("F4")


def test_descriptor_validation():
    with pytest.raises(FieldError):
        FieldDescriptor(4, 1)
    with pytest.raises(FieldError):
        FieldDescriptor(11, 1)
    with pytest.raises(FieldError):
        FieldDescriptor(2, 0)
    with pytest.raises(FieldError):
        FieldDescriptor(2, 17)


def test_f2_and_f4_arithmetic():
    F2 = FieldDescriptor(2, 1)
    one = F2.one()
    assert (one + one).is_zero()
    F4 = FieldDescriptor(2, 2)
    w = F4.gen()
    assert w + w * w == F4.one()            # w + w^2 = 1
    assert w * w == w + F4.one()            # w^2 = w + 1
    assert str(w * w) == "w+1"
    a = F4.from_int(3)
    assert a + F4.zero() == a
    assert a * F4.one() == a


def test_f3_arithmetic():
    F3 = FieldDescriptor(3, 1)
    two = F3.from_int(2)
    assert two * two == F3.one()


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5),
                                 (2, 6), (3, 1), (3, 2), (3, 3), (5, 1),
                                 (5, 2), (7, 1), (7, 2)])
def test_field_axioms_exhaustive_small(p, m):
    """Associativity, distributivity, inverses on all of GF(p^m), q <= 64."""
    field = FieldDescriptor(p, m)
    if field.order > 64:
        pytest.skip("exhaustive check capped at 64 elements")
    elems = list(field.elements())
    for a in elems:
        assert a + field.zero() == a
        assert a * field.one() == a
        assert (a + (-a)).is_zero()
        if not a.is_zero():
            assert a * a.inv() == field.one()
    for a in elems:
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            for c in elems[:8]:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


@given(st.sampled_from([(2, 4), (2, 8), (3, 4), (5, 3), (7, 2)]),
       st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=200, deadline=None)
def test_frobenius_is_a_field_map(pm, na, nb):
    field = FieldDescriptor(*pm)
    a = field.from_int(na % field.order)
    b = field.from_int(nb % field.order)
    assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
    assert (a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1)
    assert a.frobenius(field.m) == a
    assert a.frobenius(0) == a


def test_frobenius_prime_field_fixed():
    F2 = FieldDescriptor(2, 1)
    assert F2.one().frobenius(5) == F2.one()


def test_cross_field_operations_error():
    a = FieldDescriptor(2, 1).one()
    b = FieldDescriptor(2, 2).one()
    with pytest.raises(FieldError):
        a + b
    with pytest.raises(FieldError):
        a * b


def test_inversion_of_zero_errors():
    with pytest.raises(FieldError):
        FieldDescriptor(3, 1).zero().inv()


@pytest.mark.parametrize("m", range(1, 17))
def test_cube_root_iff_m_even_char2(m):
    assert has_primitive_cube_root(FieldDescriptor(2, m)) == (m % 2 == 0)


def test_cube_root_examples():
    assert not has_primitive_cube_root(FieldDescriptor(2, 1))
    assert has_primitive_cube_root(FieldDescriptor(2, 2))
    assert not has_primitive_cube_root(FieldDescriptor(3, 1))


def test_artin_schreier_examples():
    F2 = FieldDescriptor(2, 1)
    assert artin_schreier_roots(F2.zero()) == {F2.zero(), F2.one()}
    assert artin_schreier_roots(F2.one()) == set()
    F4 = FieldDescriptor(2, 2)
    w = F4.gen()
    assert artin_schreier_roots(F4.one()) == {w, w + F4.one()}
    with pytest.raises(FieldError):
        artin_schreier_roots(FieldDescriptor(3, 1).one())


@pytest.mark.parametrize("m", range(1, 7))
def test_artin_schreier_image_is_index_two_subgroup(m):
    """{c : roots exist} = image of x -> x^2 + x, an index-2 subgroup."""
    field = FieldDescriptor(2, m)
    solvable = {c for c in field.elements() if artin_schreier_roots(c)}
    image = {x * x + x for x in field.elements()}
    assert solvable == image
    assert len(solvable) * 2 == field.order
    for a in solvable:
        for b in list(solvable)[:8]:
            assert a + b in solvable
    for c in field.elements():
        roots = artin_schreier_roots(c)
        assert len(roots) in (0, 2)
        for r in roots:
            assert r * r + r == c


def test_field_ops_tables_match_elements():
    for pm in ((2, 3), (3, 2), (5, 1)):
        field = FieldDescriptor(*pm)
        ops = field_ops(field)
        for i in range(field.order):
            for j in range(field.order):
                a, b = ops.decode(i), ops.decode(j)
                assert ops.decode(ops.add[i][j]) == a + b
                assert ops.decode(ops.mul[i][j]) == a * b
        for i in range(1, field.order):
            assert ops.decode(ops.inv[i]) == ops.decode(i).inv()
