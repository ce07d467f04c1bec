"""Exact real-rootedness and interlacing certificates.

Everything runs over the rationals: squarefree factors come from Yun's
algorithm, distinct real roots are counted with Sturm chains and isolated
by bisection.  Isolating intervals are open ``(lo, hi)`` unless
``lo == hi``, in which case the root is the rational ``lo`` itself.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Sequence

from .polycore import Poly, as_poly, is_symmetric, symmetric_decompose
from .report import Report
from .transform import apply_h, boundary_h, operator_D
from .triangles import FTriangle, derive, triangle_barycentric

REAL_ROOTED = "real-rooted"
NOT_REAL_ROOTED = "not-real-rooted"
ZERO_POLYNOMIAL = "zero-polynomial"


def squarefree_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic ``(a_i, i)`` with ``p = lc * prod a_i^i``, nonconstant ``a_i`` only."""
    p = as_poly(p)
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a = p.gcd(dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree >= 1:
        ai = b.gcd(d)
        if ai.degree >= 1:
            out.append((ai, i))
        b = b.exact_div(ai)
        c = d.exact_div(ai)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    p = as_poly(p)
    if p.degree < 1:
        return p.monic()
    return p.exact_div(p.gcd(p.derivative())).monic()


class SturmChain:
    """Sturm chain of a squarefree polynomial of positive degree."""

    def __init__(self, q: Poly):
        if q.degree < 1:
            raise ValueError("Sturm chain needs a nonconstant polynomial")
        chain = [q, q.derivative()]
        while True:
            r = chain[-2] % chain[-1]
            if not r:
                break
            # positive rescaling keeps signs and tames coefficient growth
            chain.append(-r * (1 / abs(r.leading)))
        if chain[-1].degree > 0:
            raise ValueError("polynomial is not squarefree")
        self.q = q
        self.chain = chain

    @staticmethod
    def _variations(signs) -> int:
        count, last = 0, 0
        for s in signs:
            if s:
                if last and s != last:
                    count += 1
                last = s
        return count

    def variations(self, x: Fraction) -> int:
        return self._variations(p.sign_at(x) for p in self.chain)

    def variations_inf(self, positive: bool) -> int:
        signs = []
        for p in self.chain:
            s = 1 if p.leading > 0 else -1
            if not positive and p.degree & 1:
                s = -s
            signs.append(s)
        return self._variations(signs)

    def total(self) -> int:
        """Number of distinct real roots."""
        return self.variations_inf(False) - self.variations_inf(True)

    def count_open(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in the open interval ``(a, b)``; endpoints may be roots."""
        return self.variations(a) - self.variations(b) - (1 if self.q(b) == 0 else 0)

    def count_in(self, lo: Fraction, hi: Fraction) -> int:
        if lo == hi:
            return 1 if self.q(lo) == 0 else 0
        return self.count_open(lo, hi)


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json(self) -> list:
        return [[str(self.lo), str(self.hi)], self.multiplicity]


def root_bound(q: Poly) -> Fraction:
    """Cauchy bound: every root has absolute value below this."""
    lc = abs(q.leading)
    return 1 + max(abs(c) / lc for c in q.coeffs[:-1])


def _isolate_squarefree(q: Poly, chain: SturmChain) -> list[tuple[Fraction, Fraction]]:
    B = root_bound(q)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B, chain.count_open(-B, B))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if q(m) == 0:
            out.append((m, m))
        left = chain.count_open(a, m)
        stack.append((a, m, left))
        stack.append((m, b, c - left - (1 if q(m) == 0 else 0)))
    out.sort()
    return out


def _integer_leading(q: Poly) -> int:
    """Leading coefficient of the primitive integer multiple of ``q``."""
    den = lcm(*(c.denominator for c in q.coeffs))
    ints = [int(c * den) for c in q.coeffs]
    return abs(ints[-1]) // gcd(*ints)


def _halve(q: Poly, chain: SturmChain, lo: Fraction, hi: Fraction):
    """One bisection step on an interval holding one simple root of ``q``.

    Returns the new ``(lo, hi)``, or ``(m, m)`` when the midpoint is the root.
    """
    m = (lo + hi) / 2
    sm = q.sign_at(m)
    if sm == 0:
        return m, m
    s_lo, s_hi = q.sign_at(lo), q.sign_at(hi)
    if s_lo:
        return (m, hi) if sm == s_lo else (lo, m)
    if s_hi:
        return (lo, m) if sm == s_hi else (m, hi)
    return (lo, m) if chain.count_open(lo, m) else (m, hi)


def _snap(q: Poly, chain: SturmChain, lo: Fraction, hi: Fraction, L: int):
    """Return the root as a point if it is rational, else the interval unchanged.

    A rational root has denominator dividing ``L``; two distinct such
    fractions are at least ``1/L^2`` apart, so once the interval is that
    narrow the closest candidate to its midpoint is the only one left.
    """
    a, b = lo, hi
    limit = Fraction(1, L * L)
    while b - a >= limit:
        a, b = _halve(q, chain, a, b)
        if a == b:
            return a, a
    c = ((a + b) / 2).limit_denominator(L)
    if a < c < b and q(c) == 0:
        return c, c
    return lo, hi


def isolate_roots(p: Poly, snap: bool = True) -> list[RootInterval]:
    """Disjoint isolating intervals of all distinct real roots, ascending.

    With ``snap`` every rational root is reported as a point interval.
    """
    p = as_poly(p)
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree < 1:
        return []
    q = squarefree_part(p)
    chain = SturmChain(q)
    raw = _isolate_squarefree(q, chain)
    if snap:
        L = _integer_leading(q)
        raw = [iv if iv[0] == iv[1] else _snap(q, chain, iv[0], iv[1], L) for iv in raw]
    factors = [(SturmChain(a), i) for a, i in squarefree_factors(p)]
    out = []
    for lo, hi in raw:
        mult = sum(i for ch, i in factors if ch.count_in(lo, hi))
        out.append(RootInterval(lo, hi, mult))
    return out


def refine(p: Poly, iv: RootInterval, width: Fraction) -> RootInterval:
    """Shrink an isolating interval of ``p`` below ``width`` (points stay points)."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if iv.is_point:
        return iv
    q = squarefree_part(p)
    chain = SturmChain(q)
    lo, hi = iv.lo, iv.hi
    if chain.count_open(lo, hi) != 1:
        raise ValueError("interval does not isolate exactly one root")
    while hi - lo >= width:
        lo, hi = _halve(q, chain, lo, hi)
    return RootInterval(lo, hi, iv.multiplicity)


@dataclass(frozen=True)
class RootCertificate:
    verdict: str
    intervals: tuple[RootInterval, ...] = ()
    witness: Poly | None = None
    degree: int = -1

    @property
    def real_rooted(self) -> bool:
        return self.verdict != NOT_REAL_ROOTED

    def __bool__(self) -> bool:
        return self.real_rooted

    def to_json(self) -> dict:
        out = {"verdict": self.verdict,
               "intervals": [iv.to_json() for iv in self.intervals]}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def is_real_rooted(p, intervals: bool = True) -> RootCertificate:
    """Certify whether every complex root of ``p`` is real (zero counts as real-rooted).

    Without ``intervals`` only the verdict is computed (Sturm counts of the
    squarefree factors), which is all the sampling harness needs.
    """
    p = as_poly(p)
    if p.is_zero():
        return RootCertificate(ZERO_POLYNOMIAL)
    if p.degree == 0:
        return RootCertificate(REAL_ROOTED, (), None, 0)
    for a, _ in squarefree_factors(p):
        if SturmChain(a).total() < a.degree:
            return RootCertificate(NOT_REAL_ROOTED, (), a, p.degree)
    if not intervals:
        return RootCertificate(REAL_ROOTED, (), None, p.degree)
    ivs = tuple(isolate_roots(p))
    assert sum(iv.multiplicity for iv in ivs) == p.degree
    return RootCertificate(REAL_ROOTED, ivs, None, p.degree)


@dataclass
class InterlacingVerdict:
    result: bool
    alignment: list[dict] = field(default_factory=list)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.result

    def to_json(self) -> dict:
        return {"result": self.result, "reason": self.reason, "alignment": self.alignment}


def _merged_roots(f: Poly, g: Poly) -> list[tuple[RootInterval, int, int]]:
    """Distinct real roots of ``f g`` ascending, with multiplicities in f and g."""
    both = isolate_roots(f * g)
    ff = [(SturmChain(a), i) for a, i in squarefree_factors(f)]
    gf = [(SturmChain(a), i) for a, i in squarefree_factors(g)]
    out = []
    for iv in both:
        mf = sum(i for ch, i in ff if ch.count_in(iv.lo, iv.hi))
        mg = sum(i for ch, i in gf if ch.count_in(iv.lo, iv.hi))
        out.append((iv, mf, mg))
    return out


def interlaces(f, g) -> InterlacingVerdict:
    """Does ``f`` interlace ``g``?  With roots sorted decreasingly,
    ``beta_1 >= alpha_1 >= beta_2 >= alpha_2 >= ...`` (alpha for f, beta for g).

    The zero polynomial interlaces and is interlaced by everything;
    constants interlace every polynomial of degree at most one.
    """
    f, g = as_poly(f), as_poly(g)
    if f.is_zero() or g.is_zero():
        return InterlacingVerdict(True, [], "zero polynomial convention")
    for name, p in (("first", f), ("second", g)):
        if not is_real_rooted(p, intervals=False):
            return InterlacingVerdict(False, [], f"{name} polynomial {p} is not real-rooted")
    if f.degree == 0 and g.degree <= 1:
        return InterlacingVerdict(True, [], "constant convention")
    if g.degree not in (f.degree, f.degree + 1):
        return InterlacingVerdict(False, [], f"degrees {f.degree}, {g.degree} cannot interlace")
    merged = _merged_roots(f, g)
    alignment = [{"interval": [str(iv.lo), str(iv.hi)], "mult_f": mf, "mult_g": mg}
                 for iv, mf, mg in merged]
    alpha: list[int] = []
    beta: list[int] = []
    for rank in range(len(merged) - 1, -1, -1):
        _, mf, mg = merged[rank]
        alpha += [rank] * mf
        beta += [rank] * mg
    for i, a in enumerate(alpha):
        if beta[i] < a:
            return InterlacingVerdict(False, alignment, f"root {i + 1} of f exceeds root {i + 1} of g")
        if i + 1 < len(beta) and beta[i + 1] > a:
            return InterlacingVerdict(False, alignment, f"root {i + 2} of g exceeds root {i + 1} of f")
    return InterlacingVerdict(True, alignment, "roots alternate")


def interlacing_sequence(polys: Sequence, exhaustive: bool = True) -> Report:
    """Is every earlier polynomial interlacing every later one?

    Without ``exhaustive`` only consecutive pairs and (first, last) are
    checked, which suffices for real-rooted sequences.
    """
    polys = [as_poly(p) for p in polys]
    rep = Report("interlacing sequence")
    if exhaustive:
        pairs = [(i, j) for i in range(len(polys)) for j in range(i + 1, len(polys))]
    else:
        pairs = [(i, i + 1) for i in range(len(polys) - 1)]
        if len(polys) > 2:
            pairs.append((0, len(polys) - 1))
    for i, j in pairs:
        v = interlaces(polys[i], polys[j])
        rep.check(v.result, f"g_{i} = {polys[i]} does not interlace g_{j} = {polys[j]}: {v.reason}")
    return rep


def _need_size(F: FTriangle, n: int) -> None:
    if n > F.d:
        raise ValueError(f"n={n} exceeds triangle size {F.d}")


def check_assumptions(F: FTriangle, n: int) -> Report:
    """Hypotheses of the real-rootedness criterion, per row ``m``."""
    _need_size(F, n)
    h = derive(F).h
    rep = Report(f"assumptions {F.label()} n={n}")
    first = Report("rows real-rooted: h(sigma_m), 2 <= m < n")
    for m in range(2, n):
        ok = is_real_rooted(h[m], intervals=False).real_rooted
        first.check(ok, f"m={m}: {h[m]} is not real-rooted")
    rep.add(first)
    second = Report("boundary gaps: h(sigma_m) - h(boundary sigma_m), 2 <= m <= n")
    for m in range(2, n + 1):
        gap = h[m] - boundary_h(F, m)
        child = Report(f"m={m}")
        child.data["gap"] = gap.to_json()
        if gap.is_zero():
            child.note("identically zero")
        else:
            neg = [(j, c) for j, c in enumerate(gap.coeffs) if c < 0]
            if neg:
                j, c = neg[0]
                child.fail(f"coefficient of x^{j} in {gap} is {c} < 0")
            else:
                child.check(gap.degree == m - 1, f"degree {gap.degree} != {m - 1}")
                child.check(is_real_rooted(gap, intervals=False).real_rooted, f"{gap} is not real-rooted")
                v = interlaces(h[m - 1], gap)
                child.check(v.result, f"h(sigma_{m - 1}) = {h[m - 1]} "
                                      f"does not interlace {gap}: {v.reason}")
        second.add(child)
    rep.add(second)
    return rep


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("UNITRI_THREADS", "1")))
    except ValueError:
        return 1


def sample_inputs(n: int, samples: int, seed: int) -> list[tuple[str, Poly]]:
    """Deterministic corner cases, adversarial shapes, then uniform samples.

    Sample ``i`` draws from its own generator seeded by ``(seed, i)`` so the
    list does not depend on evaluation order.
    """
    cases: list[tuple[str, Poly]] = [(f"x^{k}", Poly.monomial(k)) for k in range(n + 1)]
    cases.append(("all-ones", Poly([1] * (n + 1))))
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        kind = i % 4
        if kind == 1:
            support = rng.sample(range(n + 1), k=min(2, n + 1))
            coeffs = [rng.randint(1, 1000) if j in support else 0 for j in range(n + 1)]
        elif kind == 2:
            coeffs = [rng.choice((1, 10**6)) for _ in range(n + 1)]
        elif kind == 3:
            half = [rng.randint(0, 1000) for _ in range(n // 2 + 1)]
            coeffs = [half[min(j, n - j)] for j in range(n + 1)]
        else:
            coeffs = [rng.randint(0, 1000) for _ in range(n + 1)]
        cases.append((f"sample {i}", Poly(coeffs)))
    return cases


def _check_case(args) -> str | None:
    F, n, label, h = args
    out = operator_D(F, h, n)
    if not is_real_rooted(out, intervals=False).real_rooted:
        return f"{label}: D({h}) = {out} is not real-rooted"
    return None


def check_conclusions(F: FTriangle, n: int, samples: int = 200, seed: int = 0,
                      workers: int | None = None) -> Report:
    """Falsification harness for the conclusions of the real-rootedness criterion.

    The operator check is sampled, so a pass means no counterexample was found.
    """
    _need_size(F, n)
    if n < 1:
        raise ValueError("conclusions need n >= 1")
    workers = default_workers() if workers is None else workers
    rep = Report(f"conclusions {F.label()} n={n}")
    cases = sample_inputs(n, samples, seed)
    jobs = [(F, n, label, h) for label, h in cases]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_check_case, jobs, chunksize=16))
    else:
        results = [_check_case(j) for j in jobs]
    a = Report("D_(F,n)(h) real-rooted for nonnegative h")
    for msg in results:
        if msg:
            a.fail(msg)
    a.note(f"no counterexample found in {len(cases)} inputs" if a.passed
           else f"{len(a.details)} counterexamples in {len(cases)} inputs")
    rep.add(a)

    h = derive(F).h
    hb = boundary_h(F, n)
    b = Report("h(sigma_n), h(boundary sigma_n) real-rooted and interlaced by h(sigma_(n-1))")
    for name, p in (("h(sigma_n)", h[n]), ("h(boundary sigma_n)", hb)):
        b.check(is_real_rooted(p, intervals=False).real_rooted, f"{name} = {p} is not real-rooted")
        v = interlaces(h[n - 1], p)
        b.check(v.result, f"h(sigma_{n - 1}) does not interlace {name} = {p}: {v.reason}")
    rep.add(b)
    rep.add(symmetric_decomposition_certificate(h[n], n - 1))
    return rep


def symmetric_decomposition_certificate(g, n: int) -> Report:
    """Nonnegative real-rooted symmetric decomposition of ``g`` with respect to ``n``."""
    g = as_poly(g)
    dec = symmetric_decompose(g, n)
    rep = Report(f"symmetric decomposition of {g} w.r.t. {n}")
    rep.data = {"a": dec.a.to_json(), "b": dec.b.to_json()}
    assert dec.reconstruct() == g
    assert is_symmetric(dec.a, n) and is_symmetric(dec.b, n - 1)
    for name, p in (("a", dec.a), ("b", dec.b)):
        rep.check(p.is_nonnegative(), f"{name} = {p} has a negative coefficient")
        cert = is_real_rooted(p)
        rep.check(cert.real_rooted, f"{name} = {p} is not real-rooted")
        rep.data[f"{name}_certificate"] = cert.to_json()
    return rep


def ball_sd_decomposition_check(hvec: Sequence, n: int) -> Report:
    """Barycentric subdivision of a triangulated ``(n-1)``-ball: decomposition w.r.t. ``n-1``."""
    h = [Fraction(c) for c in hvec]
    if len(h) != n + 1:
        raise ValueError(f"h-vector has length {len(h)}, expected {n + 1}")
    rep = Report(f"ball check h={[str(c) for c in h]}")
    pre = Report("partial sums h_n + ... + h_(n-j) <= h_0 + ... + h_j")
    for j in range(n // 2 + 1):
        top = sum(h[n - i] for i in range(j + 1))
        bottom = sum(h[i] for i in range(j + 1))
        pre.check(top <= bottom, f"j={j}: {top} > {bottom}")
    rep.add(pre)
    if h[n] != 0:
        rep.fail(f"h_n = {h[n]} != 0; input is likely not a ball")
        return rep
    hsd = apply_h(triangle_barycentric(n), h, n)
    rep.data["h_sd"] = hsd.to_json()
    rep.add(symmetric_decomposition_certificate(hsd, n - 1))
    return rep


def binomial_sections(n: int) -> tuple[Poly, Poly]:
    """``(sum C(n,2k) x^k, sum C(n,2k+1) x^k)``."""
    even = Poly([comb(n, 2 * k) for k in range(n // 2 + 1)])
    odd = Poly([comb(n, 2 * k + 1) for k in range((n - 1) // 2 + 1)]) if n else Poly()
    return even, odd
