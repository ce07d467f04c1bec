from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from unitri.polycore import (
    ONE, X, ZERO, Poly, f_from_h, h_from_f, involution, is_symmetric, r_section,
    reverse, symmetric_decompose,
)

from conftest import polys, windowed


def test_trimming_and_degree():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]) == ZERO
    assert ZERO.degree == -1
    assert Poly([3]).degree == 0
    assert Poly([0, 0, 5]).degree == 2


def test_exact_arithmetic():
    p = Poly([Fraction(1, 3), 1])
    assert (p * 3).coeffs == (1, 3)
    assert (X + 1) ** 3 == Poly([1, 3, 3, 1])
    q, r = divmod(Poly([1, 3, 3, 1]), Poly([1, 1]))
    assert q == Poly([1, 2, 1]) and r == ZERO
    assert Poly([-2, 0, 1])(Fraction(3, 2)) == Fraction(1, 4)
    with pytest.raises(TypeError):
        Poly([1, 2.5])


def test_str_and_json():
    assert str(Poly([1, 12, 3])) == "1 + 12x + 3x^2"
    p = Poly([Fraction(1, 2), 0, -3])
    assert Poly.from_json(p.to_json()) == p
    assert p.to_json() == ["1/2", "0", "-3"]


def test_immutable():
    with pytest.raises(AttributeError):
        X.coeffs = (1,)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO


@given(polys(), polys(max_degree=4))
def test_division(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_h_from_f_examples():
    assert h_from_f(Poly([1, 3, 2]), 2) == Poly([1, 1])
    for n in range(6):
        assert h_from_f((X + 1) ** n, n) == ONE
    assert h_from_f(Poly([1, 15, 30, 16]), 3) == Poly([1, 12, 3])


def test_f_from_h_examples():
    assert f_from_h(ONE, 2) == (X + 1) ** 2
    assert f_from_h(Poly([1, 1]), 2) == Poly([1, 3, 2])


def test_window_errors():
    with pytest.raises(ValueError):
        h_from_f(Poly([1, 1, 1]), 1)
    with pytest.raises(ValueError):
        f_from_h(Poly([1, 1, 1]), 1)
    with pytest.raises(ValueError):
        reverse(Poly([1, 1, 1]), 1)


@given(windowed())
def test_round_trips(pn):
    p, n = pn
    assert f_from_h(h_from_f(p, n), n) == p
    assert h_from_f(f_from_h(p, n), n) == p
    assert reverse(reverse(p, n), n) == p
    assert involution(involution(p)) == p


def test_reverse_and_involution():
    assert reverse(Poly([1, 2]), 3) == Poly([0, 0, 2, 1])
    assert involution(X) == Poly([-1, -1])


def test_r_section():
    g = Poly(range(1, 11))
    assert r_section(g, 3, 0) == Poly([1, 4, 7, 10])
    assert r_section(g, 3, 2) == Poly([3, 6, 9])
    assert r_section(g, 1, 0) == g
    with pytest.raises(ValueError):
        r_section(g, 0, 0)
    with pytest.raises(ValueError):
        r_section(g, 3, 3)


@given(polys(max_degree=12), st.integers(1, 5))
def test_r_sections_reassemble(g, r):
    total = ZERO
    for i in range(r):
        sec = r_section(g, r, i)
        total = total + sec.compose(Poly.monomial(r)).shift(i)
    assert total == g


def test_symmetric_decomposition_examples():
    dec = symmetric_decompose(Poly([1, 4, 1]), 2)
    assert dec.a == Poly([1, 4, 1]) and dec.b == ZERO
    dec = symmetric_decompose(Poly([1, 12, 3]), 2)
    assert dec.a == Poly([1, 10, 1]) and dec.b == Poly([2, 2])
    with pytest.raises(ValueError):
        symmetric_decompose(Poly([1, 1, 1]), 1)


@given(windowed())
def test_symmetric_decomposition_properties(pn):
    g, n = pn
    dec = symmetric_decompose(g, n)
    assert dec.reconstruct() == g
    assert is_symmetric(dec.a, n)
    if n >= 1:
        assert is_symmetric(dec.b, n - 1)
    else:
        assert dec.b == ZERO
