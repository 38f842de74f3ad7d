import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagsemi.algebra import (
    GaloisField,
    gf_build,
    gr_build,
    gr_matrix_is_unimodular,
    hensel_lift,
    is_irreducible,
    least_irreducible,
    parse_ring_spec,
    poly_divmod,
    poly_mul,
    teichmuller_set,
)
from diagsemi.errors import CapExceeded, DivisionByZero, NotPrime, ParseError

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]


def test_prime_field_modulus():
    assert gf_build(2).modulus == (0, 1)


def test_gf4_modulus_and_product():
    f = gf_build(2, 2)
    assert f.modulus == (1, 1, 1)
    x = f.generator
    assert f.mul(x, x) == f.add(x, f.one)


def test_gf9_modulus():
    f = gf_build(3, 2)
    assert f.modulus == (1, 0, 1)
    assert all(f.mul(a, f.inv(a)) == f.one for a in range(1, 9))


def test_least_irreducible_is_least():
    # lexicographic on (c0, ..., c_{d-1}); nothing smaller is irreducible
    for p, d in [(2, 3), (3, 2), (5, 2), (2, 4)]:
        f = least_irreducible(p, d)
        assert is_irreducible(f, p)
        for coeffs in itertools.product(range(p), repeat=d):
            if list(coeffs) == list(f[:-1]):
                break
            assert not is_irreducible(list(coeffs) + [1], p)


def test_gf5_inverse():
    f = gf_build(5)
    assert f.inv(2) == 3
    with pytest.raises(DivisionByZero):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        f.div(1, 0)


def test_errors():
    with pytest.raises(NotPrime):
        gf_build(4)
    with pytest.raises(CapExceeded):
        gf_build(2, 30)
    with pytest.raises(ParseError):
        parse_ring_spec("gf:6")
    with pytest.raises(ParseError):
        parse_ring_spec("gr:4^2:2")
    with pytest.raises(ParseError):
        parse_ring_spec("field")


def test_parse_ring_spec():
    assert parse_ring_spec("gf:9") == gf_build(3, 2)
    r = parse_ring_spec("gr:2^2:2")
    assert (r.p, r.e, r.d, r.size) == (2, 2, 2, 16)


@pytest.mark.parametrize("p, d", FIELDS)
def test_field_axioms(p, d):
    f = gf_build(p, d)
    for a in range(1, f.q):
        assert f.pow(a, f.q - 1) == f.one
        assert f.mul(a, f.inv(a)) == f.one


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=50, deadline=None)
def test_field_ring_laws(pd, data):
    f = gf_build(*pd)
    a, b, c = (data.draw(st.integers(0, f.q - 1)) for _ in range(3))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, b) == f.mul(b, a)
    assert f.sub(f.add(a, b), b) == a


def test_det():
    f = gf_build(5)
    assert f.det([[1, 2], [3, 4]]) == (4 - 6) % 5
    assert f.det([[1, 2], [2, 4]]) == 0


# --- Galois rings -------------------------------------------------------------

def test_gr42_modulus_lifts_itself():
    r = gr_build(2, 2, 2)
    assert r.modulus == (1, 1, 1)


def test_gr_degenerate():
    r = gr_build(2, 1, 1)
    assert r.size == 2 and r.teichmuller == (0, 1)


def test_z25_teichmuller():
    r = gr_build(5, 2, 1)
    t = r.teichmuller
    assert sorted(t) == [0, 1, 7, 18, 24]
    # every x with x^5 = x, found by exhaustive scan
    assert sorted(t) == [x for x in range(25) if pow(x, 5, 25) == x]
    units = [x for x in t if x]
    assert sorted(r.mul(a, b) for a in units for b in [7]) == sorted(units)  # closed, cyclic of order 4
    assert r.pow(7, 4) == 1 and r.pow(7, 2) != 1


def test_gr42_teichmuller():
    r = gr_build(2, 2, 2)
    t = r.teichmuller
    assert len(t) == 4 and t[0] == 0 and t[1] == r.one
    w = t[2]
    assert r.pow(w, 3) == r.one
    assert r.add(r.add(r.mul(w, w), w), r.one) == 0
    assert r.to_coeffs(r.mul(w, w)) == (3, 3)


@pytest.mark.parametrize("p, e, d", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (5, 2, 1), (2, 2, 3), (3, 3, 1)])
def test_teichmuller_properties(p, e, d):
    r = gr_build(p, e, d)
    t = teichmuller_set(r)
    assert len(t) == r.q
    assert all(r.pow(u, r.q) == u for u in t)
    assert [r.reduce(u) for u in t] == list(range(r.q))
    # multiplicatively closed
    ts = set(t)
    assert all(r.mul(a, b) in ts for a in t for b in t)


@pytest.mark.parametrize("p, d", [(2, 2), (3, 2), (2, 3)])
def test_teichmuller_e1_is_whole_field(p, d):
    r = gr_build(p, 1, d)
    assert sorted(r.teichmuller) == list(range(p**d))


@pytest.mark.parametrize("p, e, d", [(2, 2, 2), (3, 2, 2), (2, 3, 3), (5, 3, 2)])
def test_hensel_lift_divides(p, e, d):
    f = least_irreducible(p, d)
    big = hensel_lift(f, p, e)
    mod = p**e
    assert [c % p for c in big] == list(f)
    q = p**d
    xq_minus_x = [0, mod - 1] + [0] * (q - 2) + [1]
    _, rem = poly_divmod(xq_minus_x, big, mod)
    assert not any(rem)


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_ring_unit_inverse(data):
    r = gr_build(*data.draw(st.sampled_from([(2, 2, 2), (3, 2, 1), (2, 3, 2)])))
    a = data.draw(st.integers(0, r.size - 1))
    if r.is_unit(a):
        assert r.mul(a, r.inv(a)) == r.one
    else:
        with pytest.raises(DivisionByZero):
            r.inv(a)


def test_unimodular():
    r = gr_build(2, 2, 2)
    one = r.one
    assert gr_matrix_is_unimodular(r, [[one, 0, 0], [0, one, 0], [0, 0, one]])
    assert not gr_matrix_is_unimodular(r, [[one, 0, 0], [0, 0, 0], [0, 0, one]])
    t = r.teichmuller
    vander = [[one, u, r.mul(u, u)] for u in t[1:4]]
    assert gr_matrix_is_unimodular(r, vander)
    # 2 is not a unit in Z4
    assert not gr_matrix_is_unimodular(r, [[r.embed(2)]])


def test_additive_index_round_trip():
    r = gr_build(2, 2, 2)
    spec = r.additive_spec()
    assert spec.cyclic_orders == (4, 4)
    assert [r.from_additive_index(r.additive_index(a)) for a in range(16)] == list(range(16))


def test_multiplication_matrix():
    r = gr_build(3, 2, 2)
    for a in [r.generator, r.embed(2), 17]:
        mat = r.multiplication_matrix(a)
        for x in range(0, r.size, 7):
            cx = r.to_coeffs(x)
            got = tuple(sum(m * c for m, c in zip(row, cx)) % r.char for row in mat)
            assert got == r.to_coeffs(r.mul(a, x))


def test_poly_mul_mod():
    assert list(poly_mul([1, 1], [1, 1], 2)) == [1, 0, 1]


def test_field_is_field_instance():
    assert isinstance(gf_build(3, 2), GaloisField)
