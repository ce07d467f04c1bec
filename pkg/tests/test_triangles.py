from math import comb, factorial

import pytest

from unitri.colored import eulerian
from unitri.polycore import ONE, X, Poly, involution, reverse
from unitri.scomplex import colored_barycentric_subdivide, extract_triangle, simplex
from unitri.triangles import (
    FTriangle, build, compose, derive, interior_from_carriers, stirling2, triangle_barycentric,
    triangle_colored_barycentric, triangle_edgewise, triangle_interval, triangle_sdrs,
    triangle_trivial, validate,
)

D = 6


def catalog(d=D):
    return [
        triangle_trivial(d),
        triangle_barycentric(d),
        *(triangle_edgewise(r, d) for r in (1, 2, 3, 4, 5)),
        *(triangle_colored_barycentric(r, d) for r in (1, 2, 3)),
        triangle_interval(d),
        triangle_sdrs(3, 1, d),
        triangle_sdrs(4, 2, d),
    ]


def subdivided_edge(r):
    return FTriangle(((1,), (1, 1), (1, r + 1, r)))


@pytest.mark.parametrize("r", range(2, 7))
def test_subdivided_edge_derivations(r):
    Dt = derive(subdivided_edge(r))
    assert Dt.h[2] == Poly([1, r - 1])
    assert Dt.h_int[2] == Poly([0, r - 1, 1])
    assert Dt.f_int[2] == Poly([0, r - 1, r])
    assert Dt.local[2] == Poly([0, r - 1])


def test_trivial_triangle():
    F = triangle_trivial(4)
    assert F.rows[:3] == ((1,), (1, 1), (1, 2, 1))
    Dt = derive(F)
    assert all(h == ONE for h in Dt.h)
    assert Dt.local[0] == ONE
    assert all(loc.is_zero() for loc in Dt.local[1:])


def test_barycentric_rows():
    F = triangle_barycentric(8)
    Dt = derive(F)
    assert Dt.f_int[2] == Poly([0, 1, 2])
    assert F.f_poly(2) == Poly([1, 3, 2])
    for n in range(1, 9):
        assert Dt.h[n] == eulerian(n)
        for k in range(n + 1):
            assert Dt.f_int[n][k] == factorial(k) * stirling2(n, k)


def test_edgewise_rows():
    F = triangle_edgewise(4, 3)
    Dt = derive(F)
    assert Dt.h[3] == Poly([1, 12, 3])
    assert F.f_poly(3) == Poly([1, 15, 30, 16])
    assert Dt.local[3] == Poly([0, 3, 3])
    assert triangle_edgewise(1, 5) == triangle_trivial(5)
    G = triangle_edgewise(2, 8)
    for n in range(9):
        assert derive(G).h[n] == Poly([comb(n, 2 * k) for k in range(n // 2 + 1)])


def test_compose_identities():
    d = 5
    T, B = triangle_trivial(d), triangle_barycentric(d)
    for F in (B, triangle_edgewise(3, d), triangle_sdrs(3, 1, d)):
        assert compose(T, F) == F
        assert compose(F, T) == F
    assert compose(B, triangle_edgewise(1, d)) == B
    assert compose(B, triangle_edgewise(2, d)).f_poly(2) == Poly([1, 5, 4])
    with pytest.raises(ValueError):
        compose(T, triangle_trivial(d + 1))


def test_compose_matches_explicit_construction():
    for r in (2, 3):
        S = colored_barycentric_subdivide(simplex(3), r)
        assert extract_triangle(S).rows == triangle_colored_barycentric(r, 3).rows


def test_compose_associative():
    d = 4
    tris = [triangle_barycentric(d), triangle_edgewise(2, d), triangle_edgewise(3, d),
            triangle_sdrs(3, 1, d)]
    for a in tris:
        for b in tris:
            for c in tris:
                assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_colored_and_interval():
    assert triangle_colored_barycentric(1, 5) == triangle_barycentric(5)
    assert triangle_interval(5) == triangle_colored_barycentric(2, 5)


def test_sdrs_special_cases():
    assert triangle_sdrs(2, 1, 6) == triangle_barycentric(6)
    assert triangle_sdrs(6, 5, 6) == triangle_edgewise(6, 6)
    assert triangle_sdrs(4, 3, 4) == triangle_edgewise(4, 4)
    for r in (3, 4):
        assert triangle_sdrs(r, 2, 6).rows[:4] == triangle_edgewise(r, 6).rows[:4]
    with pytest.raises(ValueError):
        triangle_sdrs(2, 2, 3)
    with pytest.raises(ValueError):
        triangle_sdrs(3, 0, 3)


@pytest.mark.parametrize("F", catalog(), ids=lambda F: F.label())
def test_catalog_is_valid(F):
    assert validate(F, strict=True) == []


@pytest.mark.parametrize("F", catalog(), ids=lambda F: F.label())
def test_derived_identities(F):
    Dt = derive(F)
    for n in range(F.d + 1):
        assert Dt.h_int[n] == reverse(Dt.h[n], n)
        sign = -1 if n % 2 else 1
        assert involution(Dt.f_int[n]) == F.f_poly(n) * sign
        assert interior_from_carriers(F, n) == Dt.f_int[n]
        assert sum((Dt.local[k] * comb(n, k) for k in range(n + 1)), Poly()) == Dt.h[n]
        if n >= 1:
            assert Dt.h[n][n - 1] == F(1, n) - sum(comb(n, m) * Dt.f_int[m][1] for m in range(n))


def test_corrupted_triangle_is_flagged():
    rows = [list(r) for r in triangle_barycentric(3).rows]
    rows[2][1] += 1
    bad = FTriangle(tuple(map(tuple, rows)))
    problems = validate(bad)
    assert problems
    assert any("reciprocity" in p for p in problems)
    assert any(p.startswith("row 2") for p in problems)


def test_shape_and_entry_validation():
    with pytest.raises(ValueError):
        FTriangle(((1,), (1,)))
    with pytest.raises(ValueError):
        FTriangle(((1,), (1, -1)))
    assert validate(FTriangle(((2,),)))


def test_strict_flags_non_refinement():
    F = FTriangle(((1,), (1, 2)))
    assert any("f(1,1)" in p for p in validate(F, strict=True))


def test_json_round_trip_and_extension():
    F = build("edgewise", 3, r=4)
    G = FTriangle.from_json(F.to_json())
    assert G == F and G.name == "edgewise" and G.params == {"r": 4}
    assert F.extended(5) == triangle_edgewise(4, 5)
    assert F.extended(5).truncated(3) == F
    with pytest.raises(ValueError):
        FTriangle.from_json({"d": 2, "rows": [[1], [1, 1]]})
    with pytest.raises(ValueError):
        build("nope", 3)
    with pytest.raises(ValueError):
        build("edgewise", 3)


def test_derivation_uses_exact_integers():
    for F in catalog():
        for p in derive(F).h + derive(F).f_int:
            assert p.is_integral()
    assert X.degree == 1
