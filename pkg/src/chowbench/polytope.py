"""Exact rational polytopes: hulls, faces, slices, truncations, sums."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import exactnum as en
from .fan import Fan
from .kernels import extreme_rays

Point = tuple[Fraction, ...]

AMBIENT = "M"

# above this many distinct input points, hull() seeds with extreme points
# found along random directions and then verifies the rest
_SEED_THRESHOLD = 48


class LevelOutOfRange(ValueError):
    pass


class NotFullDimensional(ValueError):
    pass


class ChartMismatch(ValueError):
    pass


class EmptyPolytope(ValueError):
    pass


def _point(p) -> Point:
    return tuple(en.as_rational(x) for x in p)


@dataclass(frozen=True)
class AffineChart:
    """Coordinates on the level set ``{x : nu . x = level}``.

    ``basepoint`` satisfies ``nu . basepoint = 1``; the level set is
    ``level * basepoint + span(kernel_basis)`` and chart coordinates are the
    coefficients on ``kernel_basis``.
    """

    nu: tuple[int, ...]
    level: Fraction
    basepoint: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]

    @classmethod
    def at(cls, nu: Sequence[int], level) -> "AffineChart":
        nu = tuple(int(x) for x in nu)
        p, kernel = en.unimodular_completion(nu)
        cols = list(kernel) + [p]
        m = en.transpose(cols)
        inv = en.integer_inverse(m)
        return cls(nu, en.as_rational(level), p, kernel, inv)

    @property
    def tag(self) -> str:
        return "M'[" + ",".join(map(str, self.nu)) + "]"

    @property
    def dim(self) -> int:
        return len(self.kernel_basis)

    def forward(self, x: Sequence) -> Point:
        x = _point(x)
        y = [en.dot(row, x) for row in self.inverse]
        if y[-1] != self.level:
            raise ValueError(f"point {x} is not on level {self.level}")
        return tuple(y[:-1])

    def backward(self, c: Sequence) -> Point:
        c = _point(c)
        n = len(self.nu)
        out = [self.level * self.basepoint[i] for i in range(n)]
        for coef, k in zip(c, self.kernel_basis):
            if coef:
                for i in range(n):
                    out[i] += coef * k[i]
        return tuple(out)

    def at_level(self, level) -> "AffineChart":
        return AffineChart(self.nu, en.as_rational(level), self.basepoint,
                           self.kernel_basis, self.inverse)


def _common_denominator_ints(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    den = 1
    for p in points:
        for x in p:
            den = lcm(den, x.denominator)
    return [tuple(int(x * den) for x in p) for p in points], den


def _facets_of_ints(points: Sequence[Sequence[int]], k: int) -> list[tuple[tuple[int, ...], int]]:
    """Facets ``h . x + b >= 0`` (h primitive, b integral) of a
    full-dimensional integer point set in Z^k."""
    rays, _ = extreme_rays([(1,) + tuple(p) for p in points], k + 1)
    out = []
    for y in rays:
        b, h = y[0], y[1:]
        g = en.vector_gcd(h)
        out.append((tuple(x // g for x in h), b // g if b % g == 0 else Fraction(b, g)))
    return out


def _slacks(facets, points) -> list[list]:
    """Matrix of ``h . p + b``, one row per facet."""
    if not facets or not points:
        return [[] for _ in facets]
    bound = (max(abs(x) for h, _ in facets for x in h) * max(abs(x) for p in points for x in p)
             * len(points[0]) + max(abs(b) for _, b in facets))
    integral = all(isinstance(b, int) for _, b in facets)
    if integral and bound < 2 ** 62:
        H = np.array([h for h, _ in facets], dtype=np.int64)
        B = np.array([b for _, b in facets], dtype=np.int64)
        X = np.array(points, dtype=np.int64)
        return (H @ X.T + B[:, None]).tolist()
    return [[sum(a * x for a, x in zip(h, p)) + b for p in points] for h, b in facets]


def _seeded_facets(points: Sequence[Sequence[int]], k: int, seed: int = 0):
    """Facets of conv(points), seeded from random-direction extreme points.

    Exact: the loop only stops once every input point satisfies every facet
    of the hull of the current seed set.
    """
    rng = random.Random(seed)
    chosen: set[int] = set()
    # affinely independent starter set
    diffs: list[list[int]] = []
    chosen.add(0)
    for i in range(1, len(points)):
        cand = diffs + [[a - b for a, b in zip(points[i], points[0])]]
        if en.rank(cand) > len(diffs):
            diffs = cand
            chosen.add(i)
            if len(diffs) == k:
                break
    span = 1 << 20
    X = np.array(points, dtype=object)
    for _ in range(max(64, 8 * k * k)):
        c = np.array([rng.randint(-span, span) for _ in range(k)], dtype=object)
        vals = list(X.dot(c))
        chosen.add(max(range(len(points)), key=vals.__getitem__))
        chosen.add(min(range(len(points)), key=vals.__getitem__))
    while True:
        facets = _facets_of_ints([points[i] for i in sorted(chosen)], k)
        added = False
        for row in _slacks(facets, points):
            j = min(range(len(row)), key=row.__getitem__)
            if row[j] < 0:
                chosen.add(j)
                added = True
        if not added:
            return facets


class LatticePolytope:
    """Convex hull of finitely many rational points, with cached H-data.

    Facets are stored as ``(normal, offset)`` with ``normal . x >= -offset``;
    normals are primitive integer vectors.  For lower-dimensional polytopes
    the facets are relative to the affine hull, which is recorded in
    ``equations`` as ``(normal, value)`` pairs with ``normal . x = value``.
    """

    def __init__(self, vertices, facets, equations, intrinsic_dim, incidence,
                 lattice_tag: str = AMBIENT, chart: AffineChart | None = None,
                 normalization=None):
        self.vertices: tuple[Point, ...] = tuple(vertices)
        self.ambient_dim = len(self.vertices[0]) if self.vertices else 0
        self.facets = tuple(facets)
        self.equations = tuple(equations)
        self.intrinsic_dim = intrinsic_dim
        self.incidence: tuple[frozenset[int], ...] = tuple(incidence)
        self.lattice_tag = lattice_tag
        self.chart = chart
        self.normalization = normalization

    def __repr__(self):
        return (f"LatticePolytope(dim={self.intrinsic_dim}, ambient={self.ambient_dim}, "
                f"vertices={len(self.vertices)}, facets={len(self.facets)}, "
                f"lattice={self.lattice_tag})")

    def __eq__(self, other):
        return (isinstance(other, LatticePolytope) and self.lattice_tag == other.lattice_tag
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.lattice_tag, self.vertices))

    @property
    def is_full_dimensional(self) -> bool:
        return self.intrinsic_dim == self.ambient_dim

    def contains(self, x) -> bool:
        x = _point(x)
        return (all(en.dot(h, x) + b >= 0 for h, b in self.facets)
                and all(en.dot(e, x) == c for e, c in self.equations))

    @cached_property
    def vertex_facets(self) -> tuple[int, ...]:
        """Per vertex, a bitmask of the facets containing it."""
        masks = [0] * len(self.vertices)
        for f, verts in enumerate(self.incidence):
            for v in verts:
                masks[v] |= 1 << f
        return tuple(masks)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Vertex index pairs spanning edges (combinatorial adjacency test)."""
        n = len(self.vertices)
        if self.intrinsic_dim <= 0:
            return ()
        if self.intrinsic_dim == 1:
            return ((0, 1),)
        masks = self.vertex_facets
        need = self.intrinsic_dim - 1
        out = []
        for u in range(n):
            for v in range(u + 1, n):
                common = masks[u] & masks[v]
                if common.bit_count() < need:
                    continue
                if any(w != u and w != v and masks[w] & common == common for w in range(n)):
                    continue
                out.append((u, v))
        return tuple(out)

    @cached_property
    def face_lattice(self) -> "FaceLattice":
        return face_lattice(self)

    def f_vector(self) -> tuple[int, ...]:
        return self.face_lattice.f_vector()

    def values(self, functional: Sequence) -> tuple[Fraction, ...]:
        return tuple(en.dot(functional, v) for v in self.vertices)

    def scaled(self, s) -> "LatticePolytope":
        s = en.as_rational(s)
        if s <= 0:
            raise ValueError("scale must be positive")
        verts = [tuple(s * x for x in v) for v in self.vertices]
        facets = [(h, b * s) for h, b in self.facets]
        eqs = [(e, c * s) for e, c in self.equations]
        # chart coordinates scale with the level: s (K c + a p0) = K (s c) + (s a) p0
        chart = self.chart.at_level(self.chart.level * s) if self.chart else None
        return LatticePolytope(verts, facets, eqs, self.intrinsic_dim, self.incidence,
                               self.lattice_tag, chart)

    def translated(self, t) -> "LatticePolytope":
        t = _point(t)
        verts = [tuple(a + b for a, b in zip(v, t)) for v in self.vertices]
        facets = [(h, b - en.dot(h, t)) for h, b in self.facets]
        eqs = [(e, c + en.dot(e, t)) for e, c in self.equations]
        return LatticePolytope(verts, facets, eqs, self.intrinsic_dim, self.incidence,
                               self.lattice_tag, self.chart)


def _nullspace_int(rows: Sequence[Sequence], n: int) -> list[tuple[int, ...]]:
    red, piv = en.rref(rows) if rows else ((), ())
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(en.primitive_direction(v))
    return basis


def hull(points: Iterable, lattice_tag: str = AMBIENT, chart: AffineChart | None = None,
         seed: int = 0) -> LatticePolytope:
    """Convex hull of a nonempty list of rational points."""
    pts = sorted({_point(p) for p in points})
    if not pts:
        raise EmptyPolytope("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points have different dimensions")
    ints, den = _common_denominator_ints(pts)
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, ints[0])) for p in ints[1:]]
    red, piv = en.rref(diffs) if diffs else ((), ())
    k = len(piv)
    equations = sorted((e, en.dot(e, base)) for e in _nullspace_int(red, n))
    if k == 0:
        return LatticePolytope([base], [], equations, 0, [], lattice_tag, chart)
    proj = [tuple(p[c] for c in piv) for p in ints]
    if len(proj) > _SEED_THRESHOLD:
        facets_k = _seeded_facets(proj, k, seed)
    else:
        facets_k = _facets_of_ints(proj, k)
    slack = _slacks(facets_k, proj)
    masks = [0] * len(proj)
    for f, row in enumerate(slack):
        bit = 1 << f
        for i, s in enumerate(row):
            if s == 0:
                masks[i] |= bit
    # a point is a vertex iff the normals of its tight facets have rank k;
    # points sharing a tight set lie in a common face of positive dimension
    count: dict[int, int] = {}
    for m in masks:
        count[m] = count.get(m, 0) + 1
    vert_idx = []
    for i, m in enumerate(masks):
        if count[m] > 1 or m.bit_count() < k:
            continue
        normals = [facets_k[f][0] for f in range(len(facets_k)) if m >> f & 1]
        if en.rank(normals) == k:
            vert_idx.append(i)
    remap = {old: new for new, old in enumerate(vert_idx)}
    vertices = [pts[i] for i in vert_idx]
    facets = []
    for f, (h, b) in enumerate(facets_k):
        amb = [0] * n
        for c, x in zip(piv, h):
            amb[c] = x
        inc = frozenset(remap[i] for i in vert_idx if masks[i] >> f & 1)
        facets.append((tuple(amb), Fraction(b) / den, inc))
    facets.sort(key=lambda f: (f[0], f[1]))
    return LatticePolytope(vertices, [(h, b) for h, b, _ in facets], equations, k,
                           [inc for _, _, inc in facets], lattice_tag, chart)


@dataclass(frozen=True)
class FaceLattice:
    """Faces as sorted vertex-index tuples, graded by dimension."""

    faces_by_dim: dict[int, tuple[tuple[int, ...], ...]]

    def f_vector(self) -> tuple[int, ...]:
        top = max(self.faces_by_dim)
        return tuple(len(self.faces_by_dim.get(d, ())) for d in range(0, top))

    def faces(self, dim: int) -> tuple[tuple[int, ...], ...]:
        return self.faces_by_dim.get(dim, ())

    def all_faces(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(d, f) for d in sorted(self.faces_by_dim) for f in self.faces_by_dim[d]]

    def covers(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Pairs (G, F) with G a facet of the face F."""
        out = []
        for d in sorted(self.faces_by_dim):
            if d - 1 not in self.faces_by_dim:
                continue
            for f in self.faces_by_dim[d]:
                fs = set(f)
                for g in self.faces_by_dim[d - 1]:
                    if fs.issuperset(g):
                        out.append((g, f))
        return out


def face_lattice(P: LatticePolytope) -> FaceLattice:
    """All faces, including the empty face and P itself."""
    k = P.intrinsic_dim
    nv = len(P.vertices)
    full = frozenset(range(nv))
    by_dim: dict[int, set[frozenset[int]]] = {-1: {frozenset()}, k: {full}}
    if k == 0:
        return FaceLattice({-1: ((),), 0: ((0,),)})
    normals = [h for h, _ in P.facets]
    facet_sets = list(P.incidence)
    # close the facet family under intersection; dim = k - rank(normals of
    # facets containing the face)
    seen: dict[frozenset[int], int] = {full: k}
    frontier = [full]
    while frontier:
        nxt = []
        for face in frontier:
            for fs in facet_sets:
                g = face & fs
                if g == face or g in seen:
                    continue
                if not g:
                    continue
                containing = [normals[i] for i, s in enumerate(facet_sets) if g <= s]
                d = k - en.rank(containing)
                seen[g] = d
                nxt.append(g)
        frontier = nxt
    for face, d in seen.items():
        by_dim.setdefault(d, set()).add(face)
    return FaceLattice({d: tuple(sorted(tuple(sorted(f)) for f in fs))
                        for d, fs in sorted(by_dim.items())})


def _check_range(P: LatticePolytope, nu, a, b=None):
    vals = P.values(nu)
    lo, hi = min(vals), max(vals)
    if b is None:
        if not lo <= a <= hi:
            raise LevelOutOfRange(f"LevelOutOfRange: level {a} outside [{lo}, {hi}]")
    return lo, hi


def _edge_crossings(P: LatticePolytope, nu, level: Fraction) -> list[Point]:
    vals = P.values(nu)
    out = [v for v, x in zip(P.vertices, vals) if x == level]
    for u, w in P.edges:
        xu, xw = vals[u], vals[w]
        if (xu - level) * (xw - level) < 0:
            t = (level - xu) / (xw - xu)
            pu, pw = P.vertices[u], P.vertices[w]
            out.append(tuple(a + t * (b - a) for a, b in zip(pu, pw)))
    return out


def slice_at(P: LatticePolytope, nu: Sequence[int], a) -> LatticePolytope:
    """``P ∩ {nu = a}`` in quotient-chart coordinates."""
    a = en.as_rational(a)
    nu = en.primitive_vector(nu)
    _check_range(P, nu, a)
    chart = AffineChart.at(nu, a)
    pts = [chart.forward(p) for p in _edge_crossings(P, nu, a)]
    return hull(pts, chart.tag, chart)


def truncate_between(P: LatticePolytope, nu: Sequence[int], a, b) -> LatticePolytope:
    """``P ∩ {a <= nu <= b}`` in the coordinates of P."""
    a, b = en.as_rational(a), en.as_rational(b)
    if not a < b:
        raise ValueError("truncate_between needs a < b")
    vals = P.values(nu)
    lo, hi = min(vals), max(vals)
    if b < lo or a > hi:
        raise EmptyPolytope(f"[{a}, {b}] does not meet nu(P) = [{lo}, {hi}]")
    pts = [v for v, x in zip(P.vertices, vals) if a <= x <= b]
    for level in (a, b):
        if lo < level < hi:
            pts.extend(_edge_crossings(P, nu, level))
    return hull(pts, P.lattice_tag, P.chart)


def _same_chart(P: LatticePolytope, Q: LatticePolytope):
    if P.lattice_tag != Q.lattice_tag or P.ambient_dim != Q.ambient_dim:
        raise ChartMismatch(f"cannot add polytopes in {P.lattice_tag} and {Q.lattice_tag}")


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """``conv{p + q}`` over vertex pairs."""
    _same_chart(P, Q)
    pts = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    chart = P.chart if P.chart is None or Q.chart is None else P.chart.at_level(
        P.chart.level + Q.chart.level)
    return hull(pts, P.lattice_tag, chart)


def minkowski_sum_all(polys: Sequence[LatticePolytope]) -> LatticePolytope:
    out = polys[0]
    for q in polys[1:]:
        out = minkowski_sum(out, q)
    return out


@dataclass(frozen=True)
class Normalization:
    translation: Point
    scale: Fraction


def canonicalize(P: LatticePolytope) -> LatticePolytope:
    """Translate the lexicographically smallest vertex to the origin, then
    scale by the smallest positive rational making every vertex integral."""
    shift = tuple(-x for x in P.vertices[0])
    T = P.translated(shift)
    content = en.rational_content(x for v in T.vertices for x in v)
    scale = Fraction(1) if content == 0 else 1 / content
    out = T.scaled(scale) if scale != 1 else T
    # keep the source chart: a point c of the result is chart.backward(c / scale - shift)
    out.chart = P.chart
    out.normalization = Normalization(shift, scale)
    return out


def normal_fan(P: LatticePolytope) -> Fan:
    """Inner normal fan: rays are facet normals, one maximal cone per vertex."""
    if not P.is_full_dimensional:
        raise NotFullDimensional(
            f"NotFullDimensional: polytope has dim {P.intrinsic_dim} in ambient {P.ambient_dim}")
    rays = [h for h, _ in P.facets]
    masks = P.vertex_facets
    cones = [frozenset(f for f in range(len(rays)) if m >> f & 1) for m in masks]
    return Fan(rays, cones, P.ambient_dim, complete=True)


def lattice_length(u: Sequence, w: Sequence) -> Fraction:
    """Lattice length of the segment [u, w] (rational endpoints allowed)."""
    return en.rational_content(b - a for a, b in zip(u, w))


def cube(n: int) -> LatticePolytope:
    from itertools import product

    return hull(product((0, 1), repeat=n))
