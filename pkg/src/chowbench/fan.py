"""Rational polyhedral fans: smoothness, refinement, star subdivision and
classification of toric morphisms between complete fans."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from . import exactnum as en
from .kernels import extreme_rays

Ray = tuple[int, ...]


class LatticeMismatch(ValueError):
    pass


class NotARefinement(ValueError):
    pass


def _cone_facets(rays: Sequence[Ray], d: int) -> tuple[Ray, ...]:
    """Inner facet normals of the full-dimensional cone spanned by ``rays``."""
    normals, _ = extreme_rays(rays, d)
    return tuple(sorted(normals))


class Fan:
    """A fan given by primitive rays and maximal cones (sets of ray indices).

    Rays and cones are stored in a canonical order (rays sorted
    lexicographically, cones as sorted index tuples, sorted), so two fans with
    the same rays and cones compare equal regardless of input order.
    """

    def __init__(self, rays: Iterable[Sequence[int]], cones: Iterable[Iterable[int]],
                 lattice_dim: int, complete: bool = True):
        rays = [en.primitive_vector(r) for r in rays]
        if any(len(r) != lattice_dim for r in rays):
            raise ValueError("ray dimension does not match lattice_dim")
        order = sorted(range(len(rays)), key=lambda i: rays[i])
        new_index = {old: new for new, old in enumerate(order)}
        self.rays: tuple[Ray, ...] = tuple(rays[i] for i in order)
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("rays must be pairwise distinct")
        cone_set = {tuple(sorted(new_index[i] for i in c)) for c in cones}
        self.cones: tuple[tuple[int, ...], ...] = tuple(sorted(cone_set))
        self.lattice_dim = lattice_dim
        self.complete = complete
        self._facets: dict[int, tuple[Ray, ...]] = {}

    def __repr__(self):
        return f"Fan(dim={self.lattice_dim}, rays={len(self.rays)}, cones={len(self.cones)})"

    def key(self):
        return (self.lattice_dim, self.rays, tuple(tuple(self.rays[i] for i in c) for c in self.cones))

    def __eq__(self, other):
        return isinstance(other, Fan) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def cone_rays(self, c: int) -> tuple[Ray, ...]:
        return tuple(self.rays[i] for i in self.cones[c])

    def cone_facets(self, c: int) -> tuple[Ray, ...]:
        if c not in self._facets:
            self._facets[c] = _cone_facets(self.cone_rays(c), self.lattice_dim)
        return self._facets[c]

    def cone_contains(self, c: int, v: Sequence) -> bool:
        return all(en.dot(h, v) >= 0 for h in self.cone_facets(c))

    def cone_interior_contains(self, c: int, v: Sequence) -> bool:
        return all(en.dot(h, v) > 0 for h in self.cone_facets(c))

    def interior_point(self, c: int) -> Ray:
        rays = self.cone_rays(c)
        return tuple(sum(col) for col in zip(*rays))

    def cone_faces_rays(self, c: int) -> list[frozenset[int]]:
        """Facets of maximal cone c, as sets of ray indices."""
        idx = self.cones[c]
        out = []
        for h in self.cone_facets(c):
            out.append(frozenset(i for i in idx if en.dot(h, self.rays[i]) == 0))
        return out

    def minimal_cone(self, v: Sequence[int]) -> frozenset[int] | None:
        """Ray indices of the smallest cone of the fan containing v."""
        for c in range(len(self.cones)):
            if self.cone_contains(c, v):
                tight = [h for h in self.cone_facets(c) if en.dot(h, v) == 0]
                return frozenset(i for i in self.cones[c]
                                 if all(en.dot(h, self.rays[i]) == 0 for h in tight))
        return None

    def ray_index(self, r: Sequence[int]) -> int | None:
        try:
            return self.rays.index(tuple(r))
        except ValueError:
            return None


def is_smooth(F: Fan) -> tuple[bool, list[tuple[Ray, ...]]]:
    """True iff every maximal cone is generated by a lattice basis."""
    bad = []
    for c in range(len(F.cones)):
        rays = F.cone_rays(c)
        if F.lattice_dim == 0:
            continue
        if not en.is_lattice_basis(rays):
            bad.append(rays)
    return not bad, bad


def _check_lattice(F1: Fan, F2: Fan):
    if F1.lattice_dim != F2.lattice_dim:
        raise LatticeMismatch(f"fans live in lattices of rank {F1.lattice_dim} and {F2.lattice_dim}")


def _containing_cone(F: Fan, fine: Fan, c: int) -> int | None:
    p = fine.interior_point(c)
    rays = fine.cone_rays(c)
    for k in range(len(F.cones)):
        if F.cone_interior_contains(k, p) and all(F.cone_contains(k, r) for r in rays):
            return k
    return None


def refines(fine: Fan, coarse: Fan) -> bool:
    """Every maximal cone of ``fine`` lies in some maximal cone of ``coarse``."""
    _check_lattice(fine, coarse)
    return all(_containing_cone(coarse, fine, c) is not None for c in range(len(fine.cones)))


def fans_equal(F1: Fan, F2: Fan) -> bool:
    _check_lattice(F1, F2)
    return F1.key() == F2.key()


def _separated(F1: Fan, c1: int, F2: Fan, c2: int) -> bool:
    """Cheap sufficient test that two cones meet in a lower-dimensional set."""
    r1, r2 = F1.cone_rays(c1), F2.cone_rays(c2)
    for h in F2.cone_facets(c2):
        if all(en.dot(h, r) <= 0 for r in r1):
            return True
    for h in F1.cone_facets(c1):
        if all(en.dot(h, r) <= 0 for r in r2):
            return True
    return False


def intersect_cones(F1: Fan, c1: int, F2: Fan, c2: int) -> list[Ray] | None:
    """Extreme rays of σ1 ∩ σ2 if the intersection is full-dimensional."""
    d = F1.lattice_dim
    if _separated(F1, c1, F2, c2):
        return None
    rows = list(F1.cone_facets(c1)) + list(F2.cone_facets(c2))
    rays, _ = extreme_rays(rows, d)
    if len(rays) < d or en.rank(rays) < d:
        return None
    return sorted(rays)


def common_refinement(F1: Fan, F2: Fan) -> Fan:
    """Fan of full-dimensional intersections σ1 ∩ σ2."""
    _check_lattice(F1, F2)
    d = F1.lattice_dim
    if refines(F1, F2):
        return F1
    if refines(F2, F1):
        return F2
    ray_ids: dict[Ray, int] = {}
    cones = []
    for c1 in range(len(F1.cones)):
        for c2 in range(len(F2.cones)):
            rays = intersect_cones(F1, c1, F2, c2)
            if rays is None:
                continue
            cones.append([ray_ids.setdefault(r, len(ray_ids)) for r in rays])
    rays = sorted(ray_ids, key=ray_ids.get)
    return Fan(rays, cones, d, complete=F1.complete and F2.complete)


def star_subdivide(F: Fan, r: Sequence[int]) -> Fan:
    """Star subdivision of F at the primitive vector r."""
    r = en.primitive_vector(r)
    if F.ray_index(r) is not None:
        return F
    tau = F.minimal_cone(r)
    if tau is None:
        raise ValueError(f"{r} is not in the support of the fan")
    rays = list(F.rays)
    new = len(rays)
    rays.append(r)
    cones = []
    for c, idx in enumerate(F.cones):
        if not tau <= set(idx):
            cones.append(list(idx))
            continue
        for facet in F.cone_faces_rays(c):
            if not tau <= facet:
                cones.append(sorted(facet) + [new])
    return Fan(rays, cones, F.lattice_dim, F.complete)


class MorphismKind(str, Enum):
    ISOMORPHISM = "Isomorphism"
    SMOOTH_BLOWUP = "SmoothBlowup"
    REFINEMENT = "Refinement"


@dataclass(frozen=True)
class BlowupCenter:
    cone: tuple[Ray, ...]
    ray: Ray

    @property
    def dim(self) -> int:
        """Dimension of the cone, i.e. the codimension of the center stratum."""
        return len(self.cone)


@dataclass(frozen=True)
class MorphismClassification:
    kind: MorphismKind
    centers: tuple[BlowupCenter, ...] = ()
    reason: str = ""


def _share_cone(F: Fan, a: frozenset[int], b: frozenset[int]) -> bool:
    both = a | b
    return any(both <= set(c) for c in F.cones)


def classify_morphism(source: Fan, target: Fan) -> MorphismClassification:
    """Decide whether the toric morphism ``X(source) -> X(target)`` is an
    isomorphism, a blowup along a disjoint union of smooth orbit closures,
    or some other refinement."""
    _check_lattice(source, target)
    if not refines(source, target):
        raise NotARefinement("NotARefinement: source fan does not refine target fan")
    if fans_equal(source, target):
        return MorphismClassification(MorphismKind.ISOMORPHISM)
    Refinement = MorphismKind.REFINEMENT
    if any(source.ray_index(r) is None for r in target.rays):
        return MorphismClassification(Refinement, reason="target ray missing from source")
    new_rays = [r for r in source.rays if target.ray_index(r) is None]
    if not new_rays:
        return MorphismClassification(Refinement, reason="cones subdivided without new rays")
    centers = []
    taus = []
    for r in new_rays:
        tau = target.minimal_cone(r)
        gens = [target.rays[i] for i in sorted(tau)]
        if len(gens) < 2 or not en.is_saturated_set(gens):
            return MorphismClassification(Refinement, reason=f"center cone of {r} is not smooth")
        if tuple(sum(col) for col in zip(*gens)) != r:
            return MorphismClassification(Refinement,
                                          reason=f"{r} is not the sum of its cone's generators")
        taus.append(tau)
        centers.append(BlowupCenter(tuple(gens), r))
    for a, b in combinations(range(len(taus)), 2):
        if _share_cone(target, taus[a], taus[b]):
            return MorphismClassification(Refinement, reason="blowup centers intersect")
    forward = target
    for c in centers:
        forward = star_subdivide(forward, c.ray)
    backward = target
    for c in reversed(centers):
        backward = star_subdivide(backward, c.ray)
    if not fans_equal(forward, backward):
        return MorphismClassification(Refinement, reason="star subdivisions do not commute")
    if not fans_equal(forward, source):
        return MorphismClassification(Refinement, reason="not a simultaneous star subdivision")
    return MorphismClassification(MorphismKind.SMOOTH_BLOWUP, tuple(centers))


def projective_space_fan(n: int) -> Fan:
    """Fan of P^n: rays e_1..e_n and -(e_1+...+e_n)."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [set(range(n + 1)) - {k} for k in range(n + 1)]
    return Fan(rays, cones, n)
