import pytest
from hypothesis import given, strategies as st

from skeinlab.laurent import (
    Gaussian, LaurentPoly, LaurentPoly2, PolyError, parse, parse2, poly_substitute, render, render2,
)

terms = st.dictionaries(st.integers(-12, 12).map(lambda e: 2 * e), st.integers(-5, 5), max_size=6)
polys = terms.map(LaurentPoly)
terms2 = st.dictionaries(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), st.integers(-5, 5), max_size=6)
polys2 = terms2.map(LaurentPoly2)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero()


@given(polys)
def test_render_parse_roundtrip(p):
    assert parse(render(p)) == p


@given(polys)
def test_json_roundtrip(p):
    assert LaurentPoly.from_json(p.to_json()) == p


@given(polys2)
def test_render2_parse2_roundtrip(p):
    assert parse2(render2(p)) == p


@given(polys, polys)
def test_divexact_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_divexact_rejects_remainder():
    with pytest.raises(PolyError):
        parse("A^2 + 1").divexact(parse("A^2 - 1"))


@given(polys)
def test_substitute_inverse_is_involution(p):
    assert p.substitute_inverse().substitute_inverse() == p


def test_half_integer_exponents_render():
    p = parse("q^1/2 - q^-3/2", var="q")
    assert render(p) == "q^1/2 - q^-3/2"
    assert p.coefficient_sum() == 0


def test_zero_and_constants():
    assert render(LaurentPoly.zero()) == "0"
    assert parse("3") == LaurentPoly.constant(3)
    assert LaurentPoly.one() * parse("A^4 - 2") == parse("A^4 - 2")


def test_power():
    d = parse("-A^2 - A^-2")
    assert d ** 2 == parse("A^4 + 2 + A^-4")
    assert d ** 0 == LaurentPoly.one()


def test_gaussian_arithmetic():
    i = Gaussian(0, 1)
    assert i * i == Gaussian(-1, 0)
    assert (Gaussian(3, 4) * Gaussian(1, -2)).divexact(Gaussian(1, -2)) == Gaussian(3, 4)


def test_substitution_hopf_unlink_value():
    # delta_H = -(l + l^-1)/m goes to -(q^1/2 + q^-1/2) under the Jones map
    d = LaurentPoly2({(1, -1): -1, (-1, -1): -1})
    got = poly_substitute(d, {-2: (0, 1)}, {-1: (0, 1), 1: (0, -1)}, var="q")
    assert got == parse("-q^1/2 - q^-1/2", var="q")


def test_substitution_rejects_imaginary_residue():
    with pytest.raises(PolyError):
        poly_substitute(LaurentPoly2({(1, 0): 1}), {0: (0, 1)}, {1: (0, 1), -1: (0, -1)}, var="t")
