import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unitri.colored import a_plus, ascent_word_poly, eulerian
from unitri.polycore import ONE, X, ZERO, Poly
from unitri.rootcert import (
    NOT_REAL_ROOTED, REAL_ROOTED, ZERO_POLYNOMIAL, RootInterval, SturmChain,
    ball_sd_decomposition_check, binomial_sections, check_assumptions, check_conclusions,
    interlaces, interlacing_sequence, is_real_rooted, isolate_roots, refine, sample_inputs,
    squarefree_factors, squarefree_part, symmetric_decomposition_certificate,
)
from unitri.transform import boundary_h, p_poly_recurrence
from unitri.triangles import (
    derive, triangle_barycentric, triangle_colored_barycentric, triangle_edgewise, triangle_sdrs,
)


def linear_product(roots):
    p = ONE
    for a in roots:
        p = p * Poly([-Fraction(a), 1])
    return p


def test_yun_factors():
    p = (X + 1) ** 3 * (X - 2) * (X ** 2 + 1) ** 2
    fs = dict((i, a) for a, i in squarefree_factors(p * 5))
    assert fs[1] == X - 2
    assert fs[2] == X ** 2 + 1
    assert fs[3] == X + 1
    assert squarefree_part(p) == (X + 1) * (X - 2) * (X ** 2 + 1)


def test_real_rooted_examples():
    assert is_real_rooted(Poly([1, 4, 1])).verdict == REAL_ROOTED
    cert = is_real_rooted(boundary_h(triangle_edgewise(2, 5), 5))
    assert cert.verdict == NOT_REAL_ROOTED
    assert cert.witness is not None and cert.witness.degree >= 1
    assert is_real_rooted(ONE).verdict == REAL_ROOTED
    assert is_real_rooted(ZERO).verdict == ZERO_POLYNOMIAL
    assert bool(is_real_rooted(ZERO))


def test_isolation_examples():
    ivs = isolate_roots(X ** 2 - 2)
    assert len(ivs) == 2
    fine = refine(X ** 2 - 2, ivs[1], Fraction(1, 10 ** 9))
    assert fine.width < Fraction(1, 10 ** 9)
    assert fine.lo ** 2 < 2 < fine.hi ** 2
    pts = isolate_roots(X * (X - 1))
    assert [(iv.lo, iv.hi) for iv in pts] == [(0, 0), (1, 1)]
    a4 = isolate_roots(eulerian(4))
    assert len(a4) == 3 and all(iv.hi <= 0 for iv in a4)
    with pytest.raises(ValueError):
        isolate_roots(ZERO)


def test_certificate_json():
    cert = is_real_rooted((X + 1) ** 2 * X)
    js = cert.to_json()
    assert js["verdict"] == REAL_ROOTED
    assert js["intervals"] == [[["-1", "-1"], 2], [["0", "0"], 1]]


def _grid_sign_changes(p, lo, hi, steps):
    xs = [lo + (hi - lo) * Fraction(i, steps) for i in range(steps + 1)]
    count, prev = 0, p.sign_at(xs[0])
    for x in xs[1:]:
        s = p.sign_at(x)
        if s and prev and s != prev:
            count += 1
        if s:
            prev = s
    return count


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6, unique=True),
       st.integers(0, 2))
def test_sturm_counts_match_grid(roots, extra):
    # roots are integers, so a grid of step 1/2 offset by 1/4 separates them
    p = linear_product(roots) * (X ** 2 + 1) ** extra
    q = squarefree_part(p)
    assert SturmChain(q).total() == len(roots)
    shifted = p.compose(X + Fraction(1, 4))
    assert _grid_sign_changes(shifted, Fraction(-22), Fraction(22), 88) == len(roots)
    ivs = isolate_roots(p)
    assert len(ivs) == len(roots)
    assert all(a.hi <= b.lo for a, b in zip(ivs, ivs[1:]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5),
       st.lists(st.integers(-6, 6), min_size=0, max_size=6))
def test_interlacing_matches_direct_comparison(fr, gr):
    f, g = linear_product(fr), linear_product(gr)
    a = sorted(fr, reverse=True)
    b = sorted(gr, reverse=True)
    if len(b) in (len(a), len(a) + 1):
        direct = all(b[i] >= a[i] for i in range(len(a))) and \
            all(a[i] >= b[i + 1] for i in range(len(a)) if i + 1 < len(b))
    else:
        direct = False
    if f.degree == 0 and g.degree <= 1:
        direct = True
    assert interlaces(f, g).result == direct


def test_interlacing_conventions():
    assert interlaces(ZERO, X ** 3 + 1)
    assert interlaces(X ** 2 + 1, ZERO)
    assert interlaces(Poly([3]), X + 5)
    assert interlaces(Poly([3]), Poly([7]))
    assert not interlaces(Poly([3]), (X + 1) * (X + 2))
    assert not interlaces(X ** 2 + 1, (X + 1) ** 3)
    assert not interlaces(X + 1, X ** 3)


def test_eulerian_interlacing():
    for n in range(2, 9):
        assert interlaces(eulerian(n - 1), eulerian(n))


def test_binomial_section_interlacing():
    for n in range(1, 9):
        even, odd = binomial_sections(n)
        assert is_real_rooted(even)
        assert interlaces(odd, even), n


def test_sum_preserves_interlacing():
    rng = random.Random(7)
    for _ in range(30):
        base = sorted(rng.sample(range(-30, 0), 3))
        f = linear_product(base)
        g = linear_product([base[0] - 1, (base[0] + base[1]) / 2, (base[1] + base[2]) / 2,
                            base[2] + Fraction(1, 2)])
        h = linear_product([base[0] - 2, base[0] + Fraction(1, 3), base[1] + Fraction(1, 3),
                            base[2] + Fraction(1, 3)])
        assert interlaces(f, g) and interlaces(f, h)
        assert interlaces(f, g + h)


def test_sequences():
    B = triangle_barycentric(6)
    for n in range(1, 7):
        Q = [p_poly_recurrence(B, n, k) for k in range(n + 1)]
        assert interlacing_sequence(Q).passed
        assert interlacing_sequence(Q, exhaustive=False).passed
    assert interlacing_sequence([X + 1]).passed
    E = triangle_edgewise(2, 4)
    assert not interlacing_sequence([p_poly_recurrence(E, 4, k) for k in range(5)]).passed


@pytest.mark.parametrize("F", [triangle_barycentric(6), triangle_edgewise(4, 3),
                               triangle_sdrs(3, 1, 4)], ids=lambda F: F.label())
def test_previous_row_sequences(F):
    for n in range(2, F.d + 1):
        seq = [p_poly_recurrence(F, n - 1, i) for i in range(n)]
        seq.append(p_poly_recurrence(F, n, 0) - boundary_h(F, n))
        assert check_assumptions(F, n).passed
        assert interlacing_sequence(seq).passed


def test_assumption_regimes():
    for n in range(2, 9):
        rep = check_assumptions(triangle_barycentric(n), n)
        assert rep.passed
        assert all("identically zero" in c.details for c in rep.children[1].children)
    for r, n in [(3, 3), (4, 3), (4, 4), (5, 4)]:
        assert check_assumptions(triangle_edgewise(r, n), n).passed
    rep = check_assumptions(triangle_edgewise(2, 5), 5)
    assert not rep.passed
    first = [c for c in rep.children[1].children if not c.passed][0]
    assert first.name == "m=3"
    assert "-1 < 0" in first.details[0]


def test_conclusions_examples():
    assert check_conclusions(triangle_barycentric(5), 5, samples=40).passed
    assert check_conclusions(triangle_edgewise(4, 3), 3, samples=40).passed
    assert check_conclusions(triangle_sdrs(3, 1, 4), 4, samples=40).passed
    bad = check_conclusions(triangle_edgewise(2, 5), 5, samples=10)
    assert not bad.passed


def test_conclusions_deterministic_and_parallel():
    F = triangle_barycentric(4)
    a = check_conclusions(F, 4, samples=24, seed=3, workers=1).to_dict()
    b = check_conclusions(F, 4, samples=24, seed=3, workers=2).to_dict()
    assert a == b
    assert sample_inputs(4, 10, 3) == sample_inputs(4, 10, 3)
    assert sample_inputs(4, 10, 3) != sample_inputs(4, 10, 4)


def test_symmetric_decompositions():
    for n in range(2, 6):
        for r in (1, 2, 3):
            g = derive(triangle_colored_barycentric(r, n)).h[n]
            assert symmetric_decomposition_certificate(g, n - 1).passed
    rep = symmetric_decomposition_certificate(Poly([1, 4, 1]), 2)
    assert rep.passed and rep.data["b"] == []
    for n in range(1, 6):
        assert symmetric_decomposition_certificate(ascent_word_poly(n, n + 1), n).passed
        assert symmetric_decomposition_certificate(a_plus(n, 2), n - 1).passed
    with pytest.raises(ValueError):
        symmetric_decomposition_certificate(X ** 3, 2)
    assert not symmetric_decomposition_certificate(Poly([1, 0, 1]), 2).passed


def test_ball_checks():
    assert ball_sd_decomposition_check([1, 0, 0, 0], 3).passed
    assert ball_sd_decomposition_check([1, 12, 3, 0], 3).passed
    assert ball_sd_decomposition_check([1, 1, 0, 0], 3).passed
    assert ball_sd_decomposition_check([1, 1, 0], 2).passed
    rep = ball_sd_decomposition_check([1, 1, 1], 2)
    assert not rep.passed
    assert any("not a ball" in f for f in rep.failures())
    with pytest.raises(ValueError):
        ball_sd_decomposition_check([1, 1], 2)


def test_root_interval_json():
    assert RootInterval(Fraction(-1, 2), Fraction(0), 2).to_json() == [["-1/2", "0"], 2]
