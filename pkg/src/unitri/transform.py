"""How a uniform triangulation transforms h-vectors.

For an f-triangle ``F`` and ``n <= d`` the polynomials ``p_{F,n,k}(x)``
(``0 <= k <= n``) satisfy ``h(Delta', x) = sum_k h_k(Delta) p_{F,n,k}(x)``
for every ``(n-1)``-dimensional complex ``Delta`` and every F-uniform
triangulation ``Delta'``.  Two independent routes compute them: the closed
formula over local h-polynomials and the recurrence
``p_{n,k} = p_{n,k-1} + (x - 1) p_{n-1,k-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .polycore import Poly, as_poly, f_from_h, h_from_f, involution, reverse, r_section
from .report import Report
from .triangles import FTriangle, apply_interior, derive

__all__ = [
    "ConsistencyError",
    "CoeffTable",
    "p_poly_formula",
    "p_poly_recurrence",
    "p_poly_conjugation",
    "coeff_table",
    "apply_h",
    "operator_E",
    "operator_D",
    "boundary_h",
    "boundary_h_direct",
    "boundary_gap",
    "kernel_expanded",
    "kernel_closed",
    "long_recurrence",
    "sd_power_series_check",
    "reciprocity_commutes",
    "edgewise_D",
    "audit_table",
    "audit_report",
]

_X_MINUS_1 = Poly([-1, 1])
_ONE_MINUS_X = Poly([1, -1])


class ConsistencyError(AssertionError):
    """Two computation routes that must agree did not."""


def _check_nk(F: FTriangle, n: int, k: int) -> None:
    if not 0 <= n <= F.d:
        raise ValueError(f"n={n} outside 0..{F.d} for triangle of size {F.d}")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")


def kernel_closed(n: int, k: int, r: int) -> Poly:
    """``sum_i C(n-k, i) C(k, r-i) x^(k-r+i)``."""
    out = Poly()
    for i in range(r + 1):
        c = comb(n - k, i) * comb(k, r - i) if r - i <= k else 0
        if c:
            out = out + Poly.monomial(k - r + i, c)
    return out


def kernel_expanded(n: int, k: int, r: int) -> Poly:
    """``sum_m C(m, r) C(n-k, m-k) x^(m-r) (1-x)^(n-m)``, term by term."""
    out = Poly()
    for m in range(max(r, k), n + 1):
        c = comb(m, r) * comb(n - k, m - k)
        if c:
            out = out + (_ONE_MINUS_X ** (n - m)).shift(m - r) * c
    return out


def p_poly_formula(F: FTriangle, n: int, k: int) -> Poly:
    """``sum_r local(sigma_r) * kernel_closed(n, k, r)``."""
    _check_nk(F, n, k)
    local = derive(F).local
    out = Poly()
    for r in range(n + 1):
        if local[r]:
            out = out + local[r] * kernel_closed(n, k, r)
    return out


@lru_cache(maxsize=128)
def _recurrence_rows(F: FTriangle) -> tuple[tuple[Poly, ...], ...]:
    h = derive(F).h
    rows: list[tuple[Poly, ...]] = []
    for n in range(F.d + 1):
        row = [h[n]]
        for k in range(1, n + 1):
            row.append(row[k - 1] + _X_MINUS_1 * rows[n - 1][k - 1])
        rows.append(tuple(row))
    return tuple(rows)


def p_poly_recurrence(F: FTriangle, n: int, k: int) -> Poly:
    """Row-by-row recurrence seeded with ``p_{n,0} = h_F(sigma_n)``."""
    _check_nk(F, n, k)
    return _recurrence_rows(F)[n][k]


def p_poly_conjugation(F: FTriangle, n: int, k: int) -> Poly:
    """h-polynomial associated to ``E_F(x^k (1+x)^(n-k))``."""
    _check_nk(F, n, k)
    f = Poly([1, 1]) ** (n - k) * Poly.monomial(k)
    return h_from_f(apply_interior(F, f), n)


def operator_E(F: FTriangle, p) -> Poly:
    """Subdivision operator: linear extension of ``x^m -> f_int_F(sigma_m)``."""
    return apply_interior(F, as_poly(p))


def apply_h(F: FTriangle, hvec, n: int) -> Poly:
    """h-polynomial of any F-uniform triangulation of a complex with h-vector ``hvec``."""
    coeffs = hvec.padded(n) if isinstance(hvec, Poly) else [Fraction(c) for c in hvec]
    if len(coeffs) != n + 1:
        raise ValueError(f"h-vector has length {len(coeffs)}, expected n+1 = {n + 1}")
    _check_nk(F, n, 0)
    rows = _recurrence_rows(F)[n]
    out = Poly()
    for k, c in enumerate(coeffs):
        if c:
            out = out + rows[k] * c
    return out


def operator_D(F: FTriangle, h, n: int) -> Poly:
    """h-side subdivision operator, computed two ways and cross-checked."""
    h = as_poly(h)
    if h.degree > n:
        raise ValueError(f"degree {h.degree} exceeds n={n}")
    direct = apply_h(F, h, n)
    conj = h_from_f(apply_interior(F, f_from_h(h, n)), n)
    if direct != conj:
        raise ConsistencyError(f"D_(F,{n})({h}): coefficient sum {direct} != conjugation {conj}")
    return direct


def boundary_h(F: FTriangle, n: int) -> Poly:
    """h-polynomial of the triangulated boundary of ``sigma_n``: ``sum_k p_{n-1,k}``."""
    if n < 1:
        raise ValueError("the boundary of sigma_0 is undefined; need n >= 1")
    _check_nk(F, n - 1, 0)
    out = Poly()
    for p in _recurrence_rows(F)[n - 1]:
        out = out + p
    return out


def boundary_h_direct(F: FTriangle, n: int) -> Poly:
    """Same polynomial, by counting faces of the boundary through carriers."""
    if n < 1:
        raise ValueError("need n >= 1")
    f_int = derive(F).f_int
    f = Poly()
    for m in range(n):
        f = f + f_int[m] * comb(n, m)
    return h_from_f(f, n - 1)


def boundary_gap(F: FTriangle, n: int) -> Poly:
    """``h_F(sigma_n) - h_F(boundary sigma_n)``; may have negative coefficients."""
    return derive(F).h[n] - boundary_h(F, n)


def long_recurrence(F: FTriangle, n: int, k: int) -> Poly:
    """``x sum_{i<k} p_{n-1,i} + sum_{i=k}^{n} p_{n-1,i}`` with ``p_{n-1,n}`` the boundary gap."""
    _check_nk(F, n, k)
    if n == 0:
        return derive(F).h[0]
    prev = list(_recurrence_rows(F)[n - 1]) + [boundary_gap(F, n)]
    low = Poly()
    for i in range(k):
        low = low + prev[i]
    high = Poly()
    for i in range(k, n + 1):
        high = high + prev[i]
    return low.shift(1) + high


@dataclass
class CoeffTable:
    """Matrix ``p[k][j]`` of coefficients for one row parameter ``n``."""

    triangle: FTriangle
    n: int
    polys: tuple[Poly, ...]
    gap: Poly | None
    violations: list[str] = field(default_factory=list)

    @property
    def p(self) -> list[list[Fraction]]:
        return [list(q.padded(self.n)) for q in self.polys]

    def entry(self, k: int, j: int) -> Fraction:
        return self.polys[k][j]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_csv(self) -> str:
        lines = ["n,k,j,p"]
        for k, q in enumerate(self.polys):
            for j, c in enumerate(q.padded(self.n)):
                lines.append(f"{self.n},{k},{j},{c}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "triangle": self.triangle.label(),
            "n": self.n,
            "p": [q.to_json() for q in self.polys],
            "boundary_gap": self.gap.to_json() if self.gap is not None else None,
            "violations": list(self.violations),
        }


def coeff_table(F: FTriangle, n: int, check: bool = True) -> CoeffTable:
    """All ``p_{F,n,k}`` with a structured audit of their invariants.

    The recurrence is the production route; with ``check`` the closed
    formula is evaluated too and any disagreement is a violation.
    """
    _check_nk(F, n, 0)
    polys = _recurrence_rows(F)[n]
    gap = boundary_gap(F, n) if n >= 1 else None
    table = CoeffTable(F, n, polys, gap)
    if check:
        table.violations.extend(audit_table(F, n, polys))
    return table


def audit_table(F: FTriangle, n: int, polys: Sequence[Poly]) -> list[str]:
    out: list[str] = []
    D = derive(F)
    facets = D.h[n](1)
    for k, q in enumerate(polys):
        if not q.is_integral() or not q.is_nonnegative():
            out.append(f"p_(n={n},k={k}) = {q} is not a nonnegative integer polynomial")
        if q.degree > n:
            out.append(f"p_(n={n},k={k}) has degree {q.degree} > n")
        if q(1) != facets:
            out.append(f"row sum k={k}: {q(1)} != h(sigma_{n}, 1) = {facets}")
        if q.degree <= n and reverse(q, n) != polys[n - k]:
            out.append(f"symmetry p(n,{k},j) = p(n,{n - k},n-j) fails")
        if k >= 1 and q.degree < polys[k - 1].degree:
            out.append(f"degree drops from k={k - 1} to k={k}")
        formula = p_poly_formula(F, n, k)
        if formula != q:
            out.append(f"k={k}: closed formula {formula} != recurrence {q}")
    if polys[0] != D.h[n]:
        out.append(f"row k=0 {polys[0]} != h-triangle row {D.h[n]}")
    col = Poly()
    for q in polys:
        col = col + q
    if n + 1 <= F.d:
        expected = boundary_h_direct(F, n + 1)
        if col != expected:
            out.append(f"column sums {col} != h(boundary sigma_{n + 1}) = {expected}")
    return out


def sd_power_series_check(hvec: Sequence, n: int, M: int) -> bool:
    """Compare both sides of the barycentric generating-function identity through ``x^M``.

    Left: ``sum_m (sum_i h_i m^i (m+1)^(n-i)) x^m``.  Right: the series of
    ``h(sd Delta, x) / (1-x)^(n+1)``, where ``h(sd Delta)`` comes from
    :func:`apply_h` with the barycentric triangle.
    """
    from .triangles import triangle_barycentric

    h = [Fraction(c) for c in hvec]
    if len(h) != n + 1:
        raise ValueError(f"h-vector has length {len(h)}, expected {n + 1}")
    lhs = [sum(hi * m ** i * (m + 1) ** (n - i) for i, hi in enumerate(h)) for m in range(M + 1)]
    num = apply_h(triangle_barycentric(n), h, n)
    rhs = [sum(num[t] * comb(m - t + n, n) for t in range(min(m, num.degree) + 1))
           for m in range(M + 1)]
    return lhs == rhs


def reciprocity_commutes(F: FTriangle, m: int) -> bool:
    """``E_F(I(x^m)) == I(E_F(x^m))`` for the involution ``I(x) = -1 - x``."""
    mono = Poly.monomial(m)
    return operator_E(F, involution(mono)) == involution(operator_E(F, mono))


def edgewise_D(h, n: int, r: int) -> Poly:
    """``((1 + x + ... + x^(r-1))^n h(x))^<r,0>``."""
    return r_section(Poly([1] * r) ** n * as_poly(h), r, 0)


def audit_report(F: FTriangle, n_max: int | None = None) -> Report:
    """Per-row audit of every coefficient-table invariant up to ``n_max``."""
    n_max = F.d - 1 if n_max is None else n_max
    rep = Report(f"coefficient audit {F.label()}")
    for n in range(n_max + 1):
        t = coeff_table(F, n)
        child = Report(f"n={n}")
        for v in t.violations:
            child.fail(v)
        rep.add(child)
    return rep
