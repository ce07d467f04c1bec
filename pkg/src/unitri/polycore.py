"""Exact univariate polynomials over the rationals.

Polynomials are dense, immutable and stored low-to-high:
``Poly([1, 12, 3])`` is ``1 + 12x + 3x^2``.  The zero polynomial stores
no coefficients and has degree -1.

Besides ring arithmetic this module holds the face-enumeration transforms
that every other module relies on: the f <-> h change of basis with respect
to an explicit window ``n``, coefficient reversal, the involution
``x -> -1 - x``, r-sections and the symmetric decomposition
``g = a + x b``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c.strip())
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class Poly:
    """Dense polynomial with exact rational coefficients.

    Invariant: the last stored coefficient is nonzero (empty for zero).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def const(cls, c: Number) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> Poly:
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    # -- basic accessors ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def padded(self, n: int) -> tuple[Fraction, ...]:
        """Coefficients 0..n; raises if the degree exceeds ``n``."""
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds window {n}")
        return self.coeffs + (Fraction(0),) * (n + 1 - len(self.coeffs))

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def int_coeffs(self, n: int | None = None) -> list[int]:
        cs = self.coeffs if n is None else self.padded(n)
        if any(c.denominator != 1 for c in cs):
            raise ValueError(f"non-integral coefficients in {self}")
        return [int(c) for c in cs]

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _coerce(other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> Poly:
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly((0,) * k + self.coeffs)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dl, lc = other.degree, other.leading
        if len(rem) <= dl:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dl)
        for i in range(len(rem) - 1, dl - 1, -1):
            c = rem[i] / lc
            quot[i - dl] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i - dl + j] -= c * b
        return Poly(quot), Poly(rem[:dl])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: Poly) -> Poly:
        return self(inner)

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self * (1 / self.leading)

    def gcd(self, other: Poly) -> Poly:
        """Monic gcd (zero if both are zero)."""
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    # -- display and serialization ----------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                coef = "" if mag == 1 else str(mag)
                body = coef + ("x" if i == 1 else f"x^{i}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> Poly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(str(c) if not isinstance(c, (int, Fraction)) else c for c in data)


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


def as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    return Poly(p)


def _check_window(p: Poly, n: int, what: str) -> None:
    if n < 0:
        raise ValueError(f"{what}: window must be nonnegative, got {n}")
    if p.degree > n:
        raise ValueError(f"{what}: degree {p.degree} exceeds window n={n}")


def h_from_f(f, n: int) -> Poly:
    """``(1-x)^n f(x/(1-x))`` expanded; requires ``deg f <= n``."""
    f = as_poly(f)
    _check_window(f, n, "h_from_f")
    out = [Fraction(0)] * (n + 1)
    for i, fi in enumerate(f.coeffs):
        if fi:
            for j in range(i, n + 1):
                t = comb(n - i, j - i)
                out[j] += -fi * t if (j - i) & 1 else fi * t
    return Poly(out)


def f_from_h(h, n: int) -> Poly:
    """``(1+x)^n h(x/(1+x))``; inverse of :func:`h_from_f` for the same ``n``."""
    h = as_poly(h)
    _check_window(h, n, "f_from_h")
    out = [Fraction(0)] * (n + 1)
    for i, hi in enumerate(h.coeffs):
        if hi:
            for j in range(i, n + 1):
                out[j] += hi * comb(n - i, j - i)
    return Poly(out)


def reverse(p, n: int) -> Poly:
    """``x^n p(1/x)``: coefficient reversal inside the window ``0..n``."""
    p = as_poly(p)
    _check_window(p, n, "reverse")
    return Poly(reversed(p.padded(n)))


def involution(p) -> Poly:
    """``p(-1-x)``; an algebra automorphism of Q[x] of order two."""
    return as_poly(p)(Poly([-1, -1]))


def r_section(g, r: int, i: int) -> Poly:
    """Coefficients of ``x^(r m + i)`` in ``g``, reindexed by ``m``."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    if not 0 <= i < r:
        raise ValueError(f"section index {i} outside 0..{r - 1}")
    return Poly(as_poly(g).coeffs[i::r])


def is_symmetric(p, n: int) -> bool:
    """True when ``p`` is symmetric with center ``n/2`` (zero counts)."""
    p = as_poly(p)
    if n < 0:
        return p.is_zero()
    if p.degree > n:
        return False
    return reverse(p, n) == p


@dataclass(frozen=True)
class SymmetricDecomposition:
    """``g = a + x b`` with ``a`` centered at n/2 and ``b`` at (n-1)/2."""

    a: Poly
    b: Poly
    n: int

    def reconstruct(self) -> Poly:
        return self.a + self.b.shift(1)


def symmetric_decompose(g, n: int) -> SymmetricDecomposition:
    """Unique decomposition of ``g`` with respect to ``n``.

    Reversing within the window gives ``x^n g(1/x) = a + b``, so
    ``g - x^n g(1/x) = (x - 1) b``.
    """
    g = as_poly(g)
    _check_window(g, n, "symmetric_decompose")
    b = (g - reverse(g, n)).exact_div(Poly([-1, 1]))
    a = g - b.shift(1)
    return SymmetricDecomposition(a, b, n)
