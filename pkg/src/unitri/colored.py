"""Permutation-enumeration oracles: colored descents, Eulerian polynomials, ascent words.

These count objects directly and share no code with the triangle formulas
they are compared against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterator

from .polycore import Poly

DEFAULT_MAX_PERMS = 10**7


class EnumerationCapExceeded(RuntimeError):
    """Raised instead of starting an enumeration larger than the cap."""


def _guard(count: int, cap: int | None, what: str) -> None:
    cap = DEFAULT_MAX_PERMS if cap is None else cap
    if count > cap:
        raise EnumerationCapExceeded(f"{what}: {count} objects exceeds cap {cap}")


@dataclass(frozen=True)
class ColoredPermutation:
    """``tau`` is a permutation of 1..n, ``eps[i]`` the color of ``tau[i]``."""

    tau: tuple[int, ...]
    eps: tuple[int, ...]
    r: int = 1

    def __post_init__(self):
        n = len(self.tau)
        if sorted(self.tau) != list(range(1, n + 1)):
            raise ValueError(f"{self.tau} is not a permutation of 1..{n}")
        if len(self.eps) != n:
            raise ValueError("one color per position is required")
        if any(not 0 <= c < self.r for c in self.eps):
            raise ValueError(f"colors must lie in 0..{self.r - 1}")


def descents(w: ColoredPermutation) -> int:
    """Descents with the sentinel ``tau(n+1) = n+1`` of color 0."""
    return _des(w.tau, w.eps)


def _des(tau, eps) -> int:
    n = len(tau)
    count = 0
    for i in range(n):
        if i + 1 < n:
            nt, ne = tau[i + 1], eps[i + 1]
        else:
            nt, ne = n + 1, 0
        if eps[i] > ne or (eps[i] == ne and tau[i] > nt):
            count += 1
    return count


def colored_permutations(n: int, r: int, first_color_zero: bool = False
                         ) -> Iterator[ColoredPermutation]:
    """Lexicographic iterator over ``Z_r wr S_n``."""
    for tau in permutations(range(1, n + 1)):
        for eps in product(range(r), repeat=n):
            if first_color_zero and n and eps[0]:
                continue
            yield ColoredPermutation(tau, eps, r)


def a_plus(n: int, r: int, max_perms: int | None = None) -> Poly:
    """Descent polynomial over colored permutations whose first entry has color 0."""
    if n < 1 or r < 1:
        raise ValueError("a_plus needs n, r >= 1")
    _guard(factorial(n) * r ** (n - 1), max_perms, f"A+_({n},{r})")
    counts = [0] * (n + 1)
    for tau in permutations(range(1, n + 1)):
        for tail in product(range(r), repeat=n - 1):
            counts[_des(tau, (0,) + tail)] += 1
    return Poly(counts)


def q_table(n: int, r: int, max_perms: int | None = None) -> list[list[int]]:
    """``q[k][j]``: colored permutations of ``n+1`` letters with first and last
    entries of color 0, last entry ``n+1-k`` and ``j`` descents."""
    m = n + 1
    _guard(factorial(m) * r ** max(m - 2, 0), max_perms, f"q-table n={n}, r={r}")
    q = [[0] * (n + 1) for _ in range(n + 1)]
    for tau in permutations(range(1, m + 1)):
        k = m - tau[-1]
        if m == 1:
            q[k][_des(tau, (0,))] += 1
            continue
        for mid in product(range(r), repeat=m - 2):
            d = _des(tau, (0,) + mid + (0,))
            if d <= n:
                q[k][d] += 1
    return q


def q_count(n: int, k: int, j: int, r: int, max_perms: int | None = None) -> int:
    if not (0 <= k <= n and 0 <= j <= n):
        raise ValueError("need 0 <= k, j <= n")
    return _q_table_cached(n, r, max_perms)[k][j]


@lru_cache(maxsize=64)
def _q_table_cached(n: int, r: int, max_perms: int | None) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in q_table(n, r, max_perms))


def ascent_word_poly(n: int, r: int, max_words: int | None = None) -> Poly:
    """``sum over w in {0..r-1}^n of x^asc(w)`` with ``w_0 = 0``."""
    if n < 1 or r < 1:
        raise ValueError("ascent_word_poly needs n, r >= 1")
    _guard(r ** n, max_words, f"words of length {n} over {r} letters")
    counts = [0] * (n + 1)
    for w in product(range(r), repeat=n):
        prev, asc = 0, 0
        for letter in w:
            if prev < letter:
                asc += 1
            prev = letter
        counts[asc] += 1
    return Poly(counts)


ENUMERATION_LIMIT = 9


@lru_cache(maxsize=None)
def eulerian(n: int) -> Poly:
    """Descent polynomial of ``S_n``; enumerated up to n = 9, recurrence beyond."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= ENUMERATION_LIMIT:
        return eulerian_enumerated(n)
    prev = eulerian(n - 1)
    return Poly([1, n - 1]) * prev + Poly([0, 1, -1]) * prev.derivative()


def eulerian_enumerated(n: int) -> Poly:
    counts = [0] * max(n, 1)
    for tau in permutations(range(1, n + 1)):
        counts[sum(tau[i] > tau[i + 1] for i in range(n - 1))] += 1
    return Poly(counts)
