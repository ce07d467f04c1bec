"""f-triangles of uniform triangulations and their derived triangles.

An f-triangle of size ``d`` records, for ``0 <= i <= j <= d``, the number
``f(i, j)`` of ``(i-1)``-dimensional faces in the triangulation of any
``(j-1)``-dimensional face.  Row ``n`` is the f-polynomial of the
triangulated simplex ``sigma_n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Any, Callable

from .polycore import Poly, f_from_h, h_from_f, involution, r_section, reverse

__all__ = [
    "FTriangle",
    "DerivedTriangles",
    "derive",
    "interior_from_carriers",
    "apply_interior",
    "triangle_trivial",
    "triangle_barycentric",
    "triangle_edgewise",
    "triangle_colored_barycentric",
    "triangle_interval",
    "triangle_sdrs",
    "compose",
    "validate",
    "CATALOG",
    "build",
    "stirling2",
]


@dataclass(frozen=True)
class FTriangle:
    """Triangular array of face counts; ``rows[n]`` has length ``n + 1``.

    Equality and hashing look only at the rows, so an alias such as the
    interval triangle compares equal to the 2-colored barycentric one.
    """

    rows: tuple[tuple[int, ...], ...]
    name: str = field(default="custom", compare=False)
    params: dict[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows:
            raise ValueError("an f-triangle needs at least row 0")
        for n, row in enumerate(rows):
            if len(row) != n + 1:
                raise ValueError(f"row {n} has length {len(row)}, expected {n + 1}")
            for i, v in enumerate(row):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise TypeError(f"entry f({i},{n}) = {v!r} is not an integer")
                if v < 0:
                    raise ValueError(f"entry f({i},{n}) = {v} is negative")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def d(self) -> int:
        return len(self.rows) - 1

    def __call__(self, i: int, j: int) -> int:
        return self.rows[j][i]

    def f_poly(self, n: int) -> Poly:
        return Poly(self.rows[n])

    def label(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})"

    def truncated(self, d: int) -> FTriangle:
        if d > self.d:
            raise ValueError(f"cannot truncate size {self.d} to larger size {d}")
        return FTriangle(self.rows[: d + 1], self.name, self.params)

    def extended(self, d: int) -> FTriangle:
        """Same triangle at size ``d``; rebuilt from the catalog when growing."""
        if d <= self.d:
            return self.truncated(d)
        if self.name not in CATALOG:
            raise ValueError(f"custom triangle {self.name!r} cannot be extended")
        return build(self.name, d, **self.params)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": dict(self.params),
            "d": self.d,
            "rows": [list(r) for r in self.rows],
        }

    @classmethod
    def from_json(cls, data) -> FTriangle:
        if isinstance(data, str):
            data = json.loads(data)
        rows = data["rows"]
        if "d" in data and data["d"] != len(rows) - 1:
            raise ValueError(f"declared d={data['d']} but {len(rows)} rows given")
        return cls(tuple(tuple(r) for r in rows), data.get("name", "custom"),
                   data.get("params") or {})


@dataclass(frozen=True)
class DerivedTriangles:
    """Row ``n`` of each array as a polynomial in x (index = row)."""

    h: tuple[Poly, ...]
    f_int: tuple[Poly, ...]
    h_int: tuple[Poly, ...]
    local: tuple[Poly, ...]

    @property
    def d(self) -> int:
        return len(self.h) - 1

    def to_json(self) -> dict[str, list[list[str]]]:
        def rows(polys):
            return [[str(c) for c in p.padded(n)] for n, p in enumerate(polys)]

        return {"h": rows(self.h), "f_interior": rows(self.f_int),
                "h_interior": rows(self.h_int), "local_h": rows(self.local)}


@lru_cache(maxsize=256)
def derive(F: FTriangle) -> DerivedTriangles:
    """h, interior f, interior h and local h triangles, row by row."""
    h = tuple(h_from_f(F.f_poly(n), n) for n in range(F.d + 1))
    h_int = tuple(reverse(h[n], n) for n in range(F.d + 1))
    f_int = tuple(f_from_h(h_int[n], n) for n in range(F.d + 1))
    local = []
    for n in range(F.d + 1):
        acc = Poly()
        for k in range(n + 1):
            term = h[k] * comb(n, k)
            acc = acc - term if (n - k) & 1 else acc + term
        local.append(acc)
    return DerivedTriangles(h, f_int, h_int, tuple(local))


def interior_from_carriers(F: FTriangle, n: int) -> Poly:
    """Interior f-polynomial by inclusion-exclusion over carriers.

    Every face of the triangulated ``sigma_n`` has a unique carrier, so
    ``f(sigma_n) = sum_m C(n, m) f_int(sigma_m)``; this inverts that sum.
    Unlike ``derive`` it uses all rows up to ``n``, not row ``n`` alone.
    """
    acc = Poly()
    for m in range(n + 1):
        term = F.f_poly(m) * comb(n, m)
        acc = acc - term if (n - m) & 1 else acc + term
    return acc


def apply_interior(G: FTriangle, p: Poly) -> Poly:
    """Linear map ``x^m -> f_int_G(sigma_m, x)``."""
    if p.degree > G.d:
        raise ValueError(f"degree {p.degree} exceeds triangle size {G.d}")
    fi = derive(G).f_int
    acc = Poly()
    for m, c in enumerate(p.coeffs):
        if c:
            acc = acc + fi[m] * c
    return acc


def _from_f_polys(polys: list[Poly], name: str, params: dict) -> FTriangle:
    rows = []
    for n, p in enumerate(polys):
        rows.append(tuple(p.int_coeffs(n)))
    return FTriangle(tuple(rows), name, params)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind."""
    return _stirling2(n, k)


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def triangle_trivial(d: int) -> FTriangle:
    """The identity triangulation: ``f(i, n) = C(n, i)``."""
    _nonneg(d)
    return FTriangle(tuple(tuple(comb(n, i) for i in range(n + 1)) for n in range(d + 1)),
                     "trivial", {})


def triangle_barycentric(d: int) -> FTriangle:
    _nonneg(d)
    f_int = [Poly([factorial(k) * stirling2(m, k) for k in range(m + 1)])
             for m in range(d + 1)]
    polys = []
    for n in range(d + 1):
        acc = Poly()
        for m in range(n + 1):
            acc = acc + f_int[m] * comb(n, m)
        polys.append(acc)
    return _from_f_polys(polys, "barycentric", {})


def triangle_edgewise(r: int, d: int) -> FTriangle:
    """r-fold edgewise subdivision, built from its h-polynomials.

    ``h(sigma_n) = ((1 + x + ... + x^(r-1))^n)^<r,0>``.
    """
    if r < 1:
        raise ValueError("edgewise subdivision needs r >= 1")
    _nonneg(d)
    base = Poly([1] * r)
    polys = []
    for n in range(d + 1):
        h = r_section(base ** n, r, 0)
        f = f_from_h(h, n)
        assert f.is_integral() and f.is_nonnegative(), f"edgewise row {n}: {f}"
        polys.append(f)
    return _from_f_polys(polys, "edgewise", {"r": r})


def compose(F_inner: FTriangle, G_outer: FTriangle) -> FTriangle:
    """Triangle of the triangulation obtained by refining every F-cell by G."""
    if F_inner.d != G_outer.d:
        raise ValueError(f"size mismatch: {F_inner.d} vs {G_outer.d}")
    polys = [apply_interior(G_outer, F_inner.f_poly(n)) for n in range(F_inner.d + 1)]
    name = f"{F_inner.label()}*{G_outer.label()}"
    return _from_f_polys(polys, name, {})


def triangle_colored_barycentric(r: int, d: int) -> FTriangle:
    """r-fold edgewise subdivision of the barycentric subdivision."""
    if r < 1:
        raise ValueError("colored barycentric subdivision needs r >= 1")
    T = compose(triangle_barycentric(d), triangle_edgewise(r, d))
    return FTriangle(T.rows, "colored", {"r": r})


def triangle_interval(d: int) -> FTriangle:
    """Interval triangulation; shares its f-triangle with 2-colored barycentric."""
    return FTriangle(triangle_colored_barycentric(2, d).rows, "interval", {})


def triangle_sdrs(r: int, s: int, d: int) -> FTriangle:
    """Edgewise on the s-skeleton, then cone every higher face over its boundary.

    Rows ``n <= s + 1`` (faces of dimension at most ``s``) are edgewise rows.
    Higher rows: the boundary of ``sigma_n`` is already triangulated with
    f-polynomial ``sum_{i<n} C(n, i) f_int(sigma_i)``; coning multiplies by
    ``1 + x``.
    """
    if not 1 <= s < r:
        raise ValueError(f"sd_(r,s) needs 1 <= s < r, got r={r}, s={s}")
    _nonneg(d)
    esd = triangle_edgewise(r, min(d, s + 1))
    polys: list[Poly] = []
    f_int: list[Poly] = []
    for n in range(d + 1):
        if n <= s + 1:
            f = esd.f_poly(n)
        else:
            boundary = Poly()
            for i in range(n):
                boundary = boundary + f_int[i] * comb(n, i)
            f = boundary * Poly([1, 1])
        interior = f
        for i in range(n):
            interior = interior - f_int[i] * comb(n, i)
        polys.append(f)
        f_int.append(interior)
    return _from_f_polys(polys, "sdrs", {"r": r, "s": s})


def _nonneg(d: int) -> None:
    if d < 0:
        raise ValueError(f"size must be nonnegative, got {d}")


CATALOG: dict[str, Callable[..., FTriangle]] = {
    "trivial": lambda d: triangle_trivial(d),
    "barycentric": lambda d: triangle_barycentric(d),
    "edgewise": lambda d, r: triangle_edgewise(r, d),
    "colored": lambda d, r: triangle_colored_barycentric(r, d),
    "interval": lambda d: triangle_interval(d),
    "sdrs": lambda d, r, s: triangle_sdrs(r, s, d),
}


def build(name: str, d: int, **params: int) -> FTriangle:
    """Catalog constructor by name, e.g. ``build("edgewise", 3, r=4)``."""
    try:
        ctor = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown catalog triangle {name!r}") from None
    try:
        return ctor(d, **params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name!r}: {params}") from exc


def validate(F: FTriangle, strict: bool = False) -> list[str]:
    """Violated triangle identities, as human-readable strings.

    Strict mode adds the checks that only hold for actual triangulations:
    refinement of the trivial triangle, integrality, and symmetry and
    nonnegativity of the local h-polynomials.
    """
    out: list[str] = []
    D = derive(F)
    for n in range(F.d + 1):
        if F(0, n) != 1:
            out.append(f"row {n}: f(0,{n}) = {F(0, n)}, the empty face must be counted once")
        f = F.f_poly(n)
        if f_from_h(D.h[n], n) != f:
            out.append(f"row {n}: f -> h -> f round trip failed")
        carrier_int = interior_from_carriers(F, n)
        if carrier_int != D.f_int[n]:
            out.append(f"row {n}: interior f by carriers {carrier_int} differs from "
                       f"the reversed-h route {D.f_int[n]}")
        sign = -1 if n & 1 else 1
        if involution(carrier_int) != f * sign:
            out.append(f"row {n}: reciprocity f_int(-1-x) = (-1)^n f(x) fails "
                       f"({involution(carrier_int)} vs {f * sign})")
        rebuilt = Poly()
        for k in range(n + 1):
            rebuilt = rebuilt + D.local[k] * comb(n, k)
        if rebuilt != D.h[n]:
            out.append(f"row {n}: h is not the binomial sum of local h-polynomials")
    if strict:
        if F.d >= 1 and F(1, 1) != 1:
            out.append(f"strict: f(1,1) = {F(1, 1)}, a point cannot be subdivided")
        for n in range(F.d + 1):
            for i in range(n + 1):
                if F(i, n) < comb(n, i):
                    out.append(f"strict: f({i},{n}) = {F(i, n)} < C({n},{i})")
            loc = D.local[n]
            if not loc.is_nonnegative():
                out.append(f"strict: local h row {n} = {loc} has a negative coefficient")
            if reverse(loc, n) != loc:
                out.append(f"strict: local h row {n} = {loc} is not symmetric about {n}/2")
            for name, p in (("h", D.h[n]), ("interior f", D.f_int[n])):
                if not p.is_integral():
                    out.append(f"strict: {name} row {n} = {p} is not integral")
            if n >= 1 and D.h[n][n - 1] != D.f_int[n][1]:
                out.append(f"strict: top h coefficient of row {n} is {D.h[n][n - 1]}, "
                           f"expected interior vertex count {D.f_int[n][1]}")
    return out

