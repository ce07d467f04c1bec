"""Explicit simplicial complexes and subdivisions, used as a brute-force oracle.

Faces are frozensets of vertex labels.  A :class:`Subdivision` pairs a base
complex with the subdividing complex and records the carrier (a face of
the base) of each new vertex; the carrier of a face is the union of the
carriers of its vertices.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from math import factorial
from typing import Any, Callable, Hashable, Iterable, Sequence

import networkx as nx

from .polycore import Poly, h_from_f, reverse
from .report import Report
from .triangles import FTriangle

DEFAULT_MAX_FACES = 10**6

Face = frozenset


class FaceCapExceeded(RuntimeError):
    """A construction would produce more faces than allowed."""


def _check_cap(estimate: int, cap: int | None, what: str) -> None:
    cap = DEFAULT_MAX_FACES if cap is None else cap
    if estimate > cap:
        raise FaceCapExceeded(f"{what}: about {estimate} faces exceeds cap {cap}")


class SimplicialComplex:
    """Finite abstract simplicial complex given by its facets.

    ``vertices`` fixes a linear order (needed by edgewise subdivision).
    Non-maximal facets passed in are dropped.  The empty complex ``{{}}``
    is ``SimplicialComplex([[]])``.
    """

    def __init__(self, facets: Iterable[Iterable[Hashable]],
                 vertices: Sequence[Hashable] | None = None):
        fs = {frozenset(f) for f in facets}
        if not fs:
            fs = {frozenset()}
        by_size = sorted(fs, key=len, reverse=True)
        maximal: list[frozenset] = []
        for f in by_size:
            if not any(f < g for g in maximal):
                maximal.append(f)
        self.facets: frozenset[frozenset] = frozenset(maximal)
        used = set().union(*self.facets)
        if vertices is None:
            try:
                vertices = sorted(used)
            except TypeError:
                vertices = sorted(used, key=repr)
        else:
            vertices = list(vertices)
            if set(vertices) != used:
                raise ValueError("vertex list does not match the facets' vertices")
            if len(vertices) != len(used):
                raise ValueError("duplicate vertices")
        self.vertices: tuple = tuple(vertices)

    @cached_property
    def faces(self) -> frozenset[frozenset]:
        out: set[frozenset] = set()
        for f in self.facets:
            items = tuple(f)
            for k in range(len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, k))
        return frozenset(out)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.faces

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, facets={len(self.facets)})"

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def skeleton(self, k: int) -> SimplicialComplex:
        """Faces of dimension at most ``k``."""
        fs = [f for f in self.faces if len(f) <= k + 1]
        order = [v for v in self.vertices if any(v in f for f in fs)]
        return SimplicialComplex(fs, order)

    def to_json(self) -> dict[str, Any]:
        order = {v: i for i, v in enumerate(self.vertices)}
        facets = sorted((sorted(f, key=order.__getitem__) for f in self.facets),
                        key=lambda f: [order[v] for v in f])
        return {"vertices": [label_json(v) for v in self.vertices],
                "facets": [[label_json(v) for v in f] for f in facets]}

    @classmethod
    def from_json(cls, data) -> SimplicialComplex:
        if isinstance(data, str):
            data = json.loads(data)
        facets = [[_hashable(v) for v in f] for f in data["facets"]]
        verts = data.get("vertices")
        if verts is not None:
            verts = [_hashable(v) for v in verts]
            used = set().union(*map(set, facets)) if facets else set()
            verts = [v for v in verts if v in used]
        return cls(facets, verts)


def _hashable(v):
    return tuple(_hashable(x) for x in v) if isinstance(v, list) else v


def label_json(v):
    if isinstance(v, (frozenset, set)):
        return sorted((label_json(x) for x in v), key=repr)
    if isinstance(v, tuple):
        return [label_json(x) for x in v]
    return v


def label_str(v) -> str:
    return json.dumps(label_json(v), separators=(",", ":"))


def simplex(n: int) -> SimplicialComplex:
    """The full simplex ``sigma_n`` on vertices 1..n."""
    return SimplicialComplex([range(1, n + 1)], list(range(1, n + 1)) or None)


def simplex_boundary(n: int) -> SimplicialComplex:
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    verts = list(range(1, n + 1))
    return SimplicialComplex(combinations(verts, n - 1), None if n == 1 else verts)


def two_triangles() -> SimplicialComplex:
    """Two triangles sharing the edge {2, 3}."""
    return SimplicialComplex([(1, 2, 3), (2, 3, 4)])


def f_vector(K: SimplicialComplex) -> list[int]:
    """``(f_{-1}, f_0, ..., f_{dim})``."""
    counts = Counter(len(f) for f in K.faces)
    return [counts.get(i, 0) for i in range(K.dim + 2)]


def f_poly(K: SimplicialComplex) -> Poly:
    return Poly(f_vector(K))


def h_vector(K: SimplicialComplex) -> list:
    n = K.dim + 1
    return list(h_from_f(f_poly(K), n).padded(n))


def h_poly(K: SimplicialComplex) -> Poly:
    return h_from_f(f_poly(K), K.dim + 1)


@dataclass
class Subdivision:
    base: SimplicialComplex
    total: SimplicialComplex
    carrier_of_vertex: dict

    def carrier(self, face: Iterable) -> frozenset:
        out: frozenset = frozenset()
        for v in face:
            out = out | self.carrier_of_vertex[v]
        return out

    @cached_property
    def carriers(self) -> dict[frozenset, frozenset]:
        return {G: self.carrier(G) for G in self.total.faces}

    def restriction_faces(self, F: Iterable) -> list[frozenset]:
        F = frozenset(F)
        return [G for G, c in self.carriers.items() if c <= F]

    def restriction_f(self, F: Iterable) -> Poly:
        counts = Counter(len(G) for G in self.restriction_faces(F))
        return Poly([counts.get(i, 0) for i in range(len(frozenset(F)) + 1)])

    def problems(self) -> list[str]:
        """Structural sanity: carriers are base faces; restrictions are pure."""
        out = []
        base_faces = self.base.faces
        for G, c in self.carriers.items():
            if c not in base_faces:
                out.append(f"carrier {sorted(map(repr, c))} of a face is not a base face")
        for F in base_faces:
            faces = self.restriction_faces(F)
            top = max(len(G) for G in faces)
            if top != len(F):
                out.append(f"restriction to {sorted(map(repr, F))} has dimension {top - 1}")
                continue
            tops = [G for G in faces if len(G) == top]
            covered = set().union(*tops) if tops else set()
            stray = [G for G in faces if not any(G <= T for T in tops)]
            if stray or not covered >= set().union(*faces):
                out.append(f"restriction to {sorted(map(repr, F))} is not pure")
        return out

    def to_json(self) -> dict[str, Any]:
        out = {"base": self.base.to_json()}
        out.update(self.total.to_json())
        out["carriers"] = {label_str(v): [label_json(b) for b in self._ordered(c)]
                           for v, c in self.carrier_of_vertex.items()}
        return out

    def _ordered(self, c):
        order = {v: i for i, v in enumerate(self.base.vertices)}
        return sorted(c, key=order.__getitem__)


def identity_subdivision(K: SimplicialComplex) -> Subdivision:
    return Subdivision(K, K, {v: frozenset([v]) for v in K.vertices})


def barycentric_subdivide(K: SimplicialComplex, max_faces: int | None = None) -> Subdivision:
    """Order complex of the poset of nonempty faces; vertex labels are faces."""
    est = sum(factorial(len(F)) * 2 ** len(F) for F in K.facets)
    _check_cap(est, max_faces, "barycentric subdivision")
    facets = []
    for F in K.facets:
        for perm in permutations(sorted(F, key=K.vertices.index)):
            facets.append([frozenset(perm[:i]) for i in range(1, len(perm) + 1)])
    order = sorted((G for G in K.faces if G),
                   key=lambda G: (len(G), sorted(K.vertices.index(v) for v in G)))
    total = SimplicialComplex(facets, order if facets and any(facets) else None)
    return Subdivision(K, total, {G: G for G in total.vertices})


def _compositions(m: int, r: int):
    """Ordered tuples of ``m`` nonnegative ints summing to ``r``."""
    if m == 0:
        if r == 0:
            yield ()
        return
    if m == 1:
        yield (r,)
        return
    for first in range(r + 1):
        for rest in _compositions(m - 1, r - first):
            yield (first,) + rest


def edgewise_subdivide(K: SimplicialComplex, r: int, max_faces: int | None = None) -> Subdivision:
    """r-fold edgewise subdivision relative to the vertex order of ``K``.

    Vertices are maps ``V -> N`` with support in ``K`` summing to ``r``,
    labelled by their nonzero ``(vertex, value)`` pairs in vertex order.
    Faces are the sets of such maps whose support union is a face and whose
    partial-sum vectors pairwise differ by a 0/1 vector.
    """
    if r < 1:
        raise ValueError("edgewise subdivision needs r >= 1")
    dims = [len(F) - 1 for F in K.facets]
    est = sum(r ** max(k, 0) * 2 ** (k + 1) for k in dims)
    _check_cap(est, max_faces, f"{r}-fold edgewise subdivision")
    index = {v: i for i, v in enumerate(K.vertices)}
    found: set[frozenset] = set()
    for F in K.facets:
        verts = sorted(F, key=index.__getitem__)
        m = len(verts)
        if m == 0:
            found.add(frozenset())
            continue
        labels = {}
        for comp in _compositions(m, r):
            label = tuple((verts[i], c) for i, c in enumerate(comp) if c)
            partial, acc = [], 0
            for c in comp:
                acc += c
                partial.append(acc)
            labels[label] = tuple(partial)
        G = nx.Graph()
        G.add_nodes_from(labels)
        items = list(labels.items())
        for a in range(len(items)):
            la, pa = items[a]
            for b in range(a + 1, len(items)):
                lb, pb = items[b]
                diff = [x - y for x, y in zip(pa, pb)]
                if all(d in (0, 1) for d in diff) or all(d in (0, -1) for d in diff):
                    G.add_edge(la, lb)
        for clique in nx.find_cliques(G):
            found.add(frozenset(clique))
    vertex_set = set().union(*found)
    order = sorted(vertex_set, key=lambda lab: [(index[v], -c) for v, c in lab])
    total = SimplicialComplex(found, order or None)
    carriers = {lab: frozenset(v for v, _ in lab) for lab in total.vertices}
    return Subdivision(K, total, carriers)


def refine(outer: Callable[[SimplicialComplex], Subdivision], S: Subdivision) -> Subdivision:
    """Subdivide ``S.total`` again and compose carriers back to ``S.base``."""
    T = outer(S.total)
    carriers = {v: S.carrier(c) for v, c in T.carrier_of_vertex.items()}
    return Subdivision(S.base, T.total, carriers)


def colored_barycentric_subdivide(K: SimplicialComplex, r: int,
                                  max_faces: int | None = None) -> Subdivision:
    S = barycentric_subdivide(K, max_faces)
    return refine(lambda L: edgewise_subdivide(L, r, max_faces), S)


def sdrs_subdivide(K: SimplicialComplex, r: int, s: int,
                   max_faces: int | None = None) -> Subdivision:
    """Edgewise on the s-skeleton, then cone each higher face over its boundary."""
    if not 1 <= s < r:
        raise ValueError(f"sd_(r,s) needs 1 <= s < r, got r={r}, s={s}")
    low = edgewise_subdivide(K.skeleton(s), r, max_faces)
    restr: dict[frozenset, set[frozenset]] = {}
    for F in sorted(K.faces, key=len):
        if len(F) <= s + 1:
            restr[F] = set(low.restriction_faces(F))
        else:
            boundary: set[frozenset] = set()
            for v in F:
                boundary |= restr[F - {v}]
            apex = ("apex", tuple(sorted(F, key=K.vertices.index)))
            restr[F] = boundary | {G | {apex} for G in boundary}
        _check_cap(len(restr[F]), max_faces, "sd_(r,s) subdivision")
    faces = set().union(*(restr[F] for F in K.facets))
    carriers = dict(low.carrier_of_vertex)
    for F in K.faces:
        if len(F) > s + 1:
            carriers[("apex", tuple(sorted(F, key=K.vertices.index)))] = F
    used = set().union(*faces)
    apexes = sorted((v for v in carriers if v not in low.carrier_of_vertex),
                    key=lambda a: (len(a[1]), [K.vertices.index(x) for x in a[1]]))
    order = [v for v in list(low.total.vertices) + apexes if v in used]
    total = SimplicialComplex(faces, order or None)
    return Subdivision(K, total, {v: carriers[v] for v in total.vertices})


CONSTRUCTORS: dict[str, Callable[..., Subdivision]] = {
    "trivial": lambda K, **_: identity_subdivision(K),
    "barycentric": lambda K, max_faces=None, **_: barycentric_subdivide(K, max_faces),
    "edgewise": lambda K, r, max_faces=None, **_: edgewise_subdivide(K, r, max_faces),
    "colored": lambda K, r, max_faces=None, **_: colored_barycentric_subdivide(K, r, max_faces),
    "interval": lambda K, max_faces=None, **_: colored_barycentric_subdivide(K, 2, max_faces),
    "sdrs": lambda K, r, s, max_faces=None, **_: sdrs_subdivide(K, r, s, max_faces),
}


def subdivide(name: str, K: SimplicialComplex, max_faces: int | None = None, **params) -> Subdivision:
    """Explicit catalog construction by name (interval uses the 2-colored model)."""
    try:
        ctor = CONSTRUCTORS[name]
    except KeyError:
        raise ValueError(f"no explicit construction for {name!r}") from None
    return ctor(K, max_faces=max_faces, **params)


def extract_triangle(S: Subdivision, name: str = "extracted") -> FTriangle:
    """f-triangle read off a subdivided simplex, one face per dimension."""
    V = S.base.vertices
    if frozenset(V) not in S.base.facets or len(S.base.facets) != 1:
        raise ValueError("extract_triangle needs a simplex as base")
    rows = []
    for n in range(len(V) + 1):
        rows.append(tuple(int(c) for c in S.restriction_f(V[:n]).padded(n)))
    return FTriangle(tuple(rows), name, {})


def uniformity_check(S: Subdivision, F: FTriangle) -> Report:
    """Compare every restriction of ``S`` with the matching row of ``F``."""
    rep = Report(f"uniformity vs {F.label()}")
    if S.base.dim >= F.d:
        return rep.fail(f"base dimension {S.base.dim} needs triangle size > {S.base.dim}, got {F.d}")
    for face in sorted(S.base.faces, key=lambda G: (len(G), sorted(map(repr, G)))):
        n = len(face)
        got = S.restriction_f(face)
        want = F.f_poly(n)
        if got != want:
            where = sorted(map(repr, face))
            rep.fail(f"face {where}: restriction has f = {got}, row {n} says {want}")
    return rep


def _simplex_base(S: Subdivision) -> tuple:
    V = S.base.vertices
    if len(S.base.facets) != 1 or frozenset(V) not in S.base.facets:
        raise ValueError("operation requires the base to be a simplex")
    return V


def interior_face_counts(S: Subdivision) -> list[int]:
    """Faces whose carrier is the whole base simplex, by number of vertices."""
    V = frozenset(_simplex_base(S))
    counts = Counter(len(G) for G, c in S.carriers.items() if c == V)
    return [counts.get(i, 0) for i in range(len(V) + 1)]


def local_h(S: Subdivision) -> Poly:
    """Alternating sum of restriction h-polynomials over subsets of the base."""
    V = _simplex_base(S)
    n = len(V)
    acc = Poly()
    for size in range(n + 1):
        for F in combinations(V, size):
            h = h_from_f(S.restriction_f(F), size)
            acc = acc - h if (n - size) & 1 else acc + h
    return acc


@dataclass
class RelativeComplex:
    total: SimplicialComplex
    removed: frozenset = field(default_factory=frozenset)
    n: int | None = None

    def __post_init__(self):
        faces = self.total.faces
        for G in self.removed:
            if G not in faces:
                raise ValueError("removed faces must belong to the complex")
            if G and any(frozenset(c) not in self.removed for c in combinations(G, len(G) - 1)):
                raise ValueError("removed faces must form a subcomplex")
        if self.n is None:
            self.n = self.total.dim + 1

    def f_poly(self) -> Poly:
        counts = Counter(len(G) for G in self.total.faces if G not in self.removed)
        return Poly([counts.get(i, 0) for i in range(self.n + 1)])

    def h_poly(self) -> Poly:
        return h_from_f(self.f_poly(), self.n)


def base_facets(S: Subdivision) -> list[frozenset]:
    """Facets of the base simplex, in lexicographic order of sorted vertex indices."""
    V = _simplex_base(S)
    fs = [tuple(v for v in V if v != w) for w in V]
    fs.sort(key=lambda f: [V.index(v) for v in f])
    return [frozenset(f) for f in fs]


def relative_by_facets(S: Subdivision, chosen: Iterable[frozenset]) -> RelativeComplex:
    chosen = [frozenset(c) for c in chosen]
    removed = frozenset(G for G, c in S.carriers.items() if any(c <= F for F in chosen))
    return RelativeComplex(S.total, removed, len(S.base.vertices))


def gamma_nk(S: Subdivision, k: int, chosen: Sequence[frozenset] | None = None) -> RelativeComplex:
    """Remove every face carried by one of ``k`` facets of the base simplex.

    Default choice: the lexicographically first ``k`` facets.
    """
    facets = base_facets(S)
    n = len(facets)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    if chosen is None:
        chosen = facets[:k]
    elif len(chosen) != k:
        raise ValueError("chosen facet list must have length k")
    return relative_by_facets(S, chosen)


def relative_symmetry_check(S: Subdivision, chosen: Iterable[frozenset]) -> Report:
    """``x^n h(D / G, 1/x) = h(D / G-bar, x)`` where G-bar uses the other facets."""
    chosen = [frozenset(c) for c in chosen]
    facets = base_facets(S)
    if any(c not in facets for c in chosen):
        raise ValueError("chosen sets must be facets of the base simplex")
    rest = [F for F in facets if F not in chosen]
    n = len(S.base.vertices)
    left = relative_by_facets(S, chosen).h_poly()
    right = relative_by_facets(S, rest).h_poly()
    rep = Report(f"relative symmetry, {len(chosen)} of {n} facets removed")
    rep.check(reverse(left, n) == right, f"reverse({left}) != {right}")
    rep.data = {"h": left.to_json(), "h_complement": right.to_json()}
    return rep


def fbasic_check(S: Subdivision, F: FTriangle) -> bool:
    """``f_{j-1}(total) = sum_m f_{m-1}(base) f_int(j, m)``."""
    from .triangles import derive

    fi = derive(F).f_int
    base_f = f_vector(S.base)
    n = S.base.dim + 1
    predicted = Poly()
    for m, c in enumerate(base_f):
        predicted = predicted + fi[m] * c
    return predicted == Poly(f_vector(S.total) + [0] * (n + 1 - len(f_vector(S.total))))
