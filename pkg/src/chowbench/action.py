"""Combinatorial analysis of a one-parameter subgroup acting on a polarized
toric variety X(Δ): weights, fixed faces, BB closures and the hypotheses
(equalization, B-type, bordism, Condition ⋆) used by the quotient diagram.

Fixed components are modelled as maximal faces of Δ on which ν is constant,
and the closure B+(Y) as the union of faces whose ν-maximizing face lies in
Y (B−(Y) dually with ν-minimizing faces).  Both are a combinatorial model,
cross-checked at runtime against the normal-bundle ranks ν±.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import exactnum as en
from .fan import is_smooth
from .polytope import LatticePolytope, hull, lattice_length, normal_fan


class TrivialAction(ValueError):
    pass


class NotEqualized(ValueError):
    pass


class NotFixed(ValueError):
    pass


class NonPrimitiveWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FixedComponent:
    """A connected fixed component: one or more ν-constant faces of Δ."""

    weight: int
    faces: tuple[tuple[int, ...], ...]
    vertices: tuple[int, ...]
    dim: int


@dataclass(frozen=True)
class BBClosure:
    sign: str
    faces: tuple[tuple[int, ...], ...]
    codim: int
    nu_pm: int


@dataclass(frozen=True)
class EdgeReport:
    vertices: tuple[int, int]
    direction: tuple[int, ...]
    pairing: int
    lattice_length: Fraction
    weight_difference: Fraction


class ActionInput:
    """A full-dimensional polytope Δ with a primitive covector ν.

    Non-primitive ν is divided by its gcd (with a warning); weights are
    normalized so the smallest vertex weight is 0.
    """

    def __init__(self, polytope: LatticePolytope, nu: Sequence[int]):
        nu = tuple(int(x) for x in nu)
        if len(nu) != polytope.ambient_dim:
            raise ValueError("nu length does not match the polytope dimension")
        if not polytope.is_full_dimensional:
            raise ValueError("Δ must be full-dimensional")
        g = en.vector_gcd(nu)
        if g == 0:
            raise TrivialAction("TrivialAction: nu is zero")
        if g != 1:
            warnings.warn(f"nu={nu} is not primitive; re-parametrized to "
                          f"{tuple(x // g for x in nu)}", NonPrimitiveWarning, stacklevel=2)
            nu = tuple(x // g for x in nu)
        self.polytope = polytope
        self.nu = nu
        self.reparametrized_by = g
        raw = polytope.values(nu)
        if len(set(raw)) == 1:
            raise TrivialAction("TrivialAction: nu is constant on Δ")
        self.offset = min(raw)
        self.weights: tuple[Fraction, ...] = tuple(x - self.offset for x in raw)

    @classmethod
    def from_points(cls, points, nu) -> "ActionInput":
        return cls(hull(points), nu)

    @cached_property
    def critical_values(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.weights)))

    def level(self, normalized) -> Fraction:
        """Raw ν-level of a normalized weight."""
        return en.as_rational(normalized) + self.offset


def critical_values(inp: ActionInput) -> tuple[Fraction, ...]:
    return inp.critical_values


def _constant_faces(inp: ActionInput) -> list[tuple[int, tuple[int, ...]]]:
    fl = inp.polytope.face_lattice
    w = inp.weights
    out = []
    for d, f in fl.all_faces():
        if d >= 0 and len({w[v] for v in f}) == 1:
            out.append((d, f))
    return out


def fixed_faces(inp: ActionInput) -> list[FixedComponent]:
    """Maximal ν-constant faces, merged into connected components."""
    const = _constant_faces(inp)
    sets = [(d, frozenset(f)) for d, f in const]
    maximal = [(d, s) for d, s in sets if not any(s < t for _, t in sets)]
    # union-find over shared vertices
    comps: list[list[tuple[int, frozenset[int]]]] = []
    for item in maximal:
        hit = [c for c in comps if any(item[1] & s for _, s in c)]
        merged = [item]
        for c in hit:
            merged.extend(c)
            comps.remove(c)
        comps.append(merged)
    out = []
    for c in comps:
        verts = sorted(set().union(*(s for _, s in c)))
        out.append(FixedComponent(
            weight=inp.weights[verts[0]],
            faces=tuple(sorted(tuple(sorted(s)) for _, s in c)),
            vertices=tuple(verts),
            dim=max(d for d, _ in c),
        ))
    out.sort(key=lambda y: (y.weight, y.vertices))
    return out


def _edge_data(inp: ActionInput) -> list[EdgeReport]:
    P = inp.polytope
    out = []
    for u, v in P.edges:
        pu, pv = P.vertices[u], P.vertices[v]
        diff = tuple(b - a for a, b in zip(pu, pv))
        direction = en.primitive_direction(diff)
        out.append(EdgeReport((u, v), direction, en.dot(direction, inp.nu),
                              lattice_length(pu, pv), inp.weights[v] - inp.weights[u]))
    return out


def equalization_check(inp: ActionInput) -> tuple[bool, list[tuple[EdgeReport, int]]]:
    """Equalized iff every edge direction pairs with ν in {-1, 0, 1}.

    Returns the offending edges with their isotropy order |<u, ν>|.
    """
    bad = [(e, abs(e.pairing)) for e in _edge_data(inp) if abs(e.pairing) > 1]
    return not bad, bad


def amfm_check(inp: ActionInput) -> tuple[bool, list[EdgeReport]]:
    """Lattice length of every non-fixed edge equals its weight difference."""
    ok, _ = equalization_check(inp)
    if not ok:
        raise NotEqualized("NotEqualized: the action has edges with nontrivial isotropy")
    edges = [e for e in _edge_data(inp) if e.pairing != 0]
    passed = all(e.lattice_length == abs(e.weight_difference) for e in edges)
    return passed, edges


def _extremal_face(inp: ActionInput, face: Sequence[int], sign: int) -> frozenset[int]:
    w = inp.weights
    vals = [w[v] for v in face]
    best = max(vals) if sign > 0 else min(vals)
    return frozenset(v for v in face if w[v] == best)


def _edges_at(inp: ActionInput, component: FixedComponent) -> tuple[int, int]:
    """Edges leaving the component at its first vertex, as (rising, falling)."""
    verts = set(component.vertices)
    v = component.vertices[0]
    up = down = 0
    for a, b in inp.polytope.edges:
        if v not in (a, b):
            continue
        other = b if a == v else a
        if other in verts:
            continue
        d = inp.weights[other] - inp.weights[v]
        if d > 0:
            up += 1
        elif d < 0:
            down += 1
    return up, down


def bb_closures(inp: ActionInput, component: FixedComponent, sign: str) -> BBClosure:
    """Closure of the + or − BB cell of a fixed component.

    ``+``: faces whose ν-maximizing face lies in the component (orbits with
    source there); ``-``: faces whose ν-minimizing face lies there.  ``nu_pm``
    counts edges at a vertex of the component pairing positively (``+``) or
    negatively (``-``) with ν, i.e. the rank of N±.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    if component not in fixed_faces(inp):
        raise NotFixed("component is not a fixed component of this action")
    verts = set(component.vertices)
    ext = 1 if sign == "+" else -1
    faces = []
    for d, f in inp.polytope.face_lattice.all_faces():
        if d < 0:
            continue
        if _extremal_face(inp, f, ext) <= verts:
            faces.append((d, f))
    top = max(d for d, _ in faces)
    up, down = _edges_at(inp, component)
    return BBClosure(sign, tuple(f for _, f in faces), inp.polytope.intrinsic_dim - top,
                     up if sign == "+" else down)


@dataclass(frozen=True)
class ConditionStarReport:
    condition_star: bool
    all_inner: bool
    bordism: bool
    b_type: bool
    per_weight: dict


def _is_b_type(inp: ActionInput, comps: list[FixedComponent]) -> bool:
    top = inp.polytope.intrinsic_dim
    a = inp.critical_values
    ext = [c for c in comps if c.weight in (a[0], a[-1])]
    return all(c.dim == top - 1 for c in ext)


def condition_star(inp: ActionInput) -> ConditionStarReport:
    """Condition (⋆): both BB-closure codims > 1 at weights a_i, 2 <= i <= r-2.

    Also reports the stronger hypothesis (all inner weights) and the bordism
    test ν±(Y) = codim B±(Y) >= 2 on inner components of a B-type action.
    """
    a = inp.critical_values
    r = len(a) - 1
    comps = fixed_faces(inp)
    per_weight = {}
    star = inner = bordism = True
    for y in comps:
        i = a.index(y.weight)
        if i in (0, r):
            continue
        plus, minus = bb_closures(inp, y, "+"), bb_closures(inp, y, "-")
        good = plus.codim > 1 and minus.codim > 1
        per_weight.setdefault(i, []).append({
            "weight": y.weight, "vertices": y.vertices,
            "codim_plus": plus.codim, "codim_minus": minus.codim,
            "nu_plus": plus.nu_pm, "nu_minus": minus.nu_pm,
        })
        inner &= good
        if 2 <= i <= r - 2:
            star &= good
        bordism &= (plus.nu_pm == plus.codim >= 2 and minus.nu_pm == minus.codim >= 2)
    b_type = _is_b_type(inp, comps)
    return ConditionStarReport(star, inner, b_type and bordism, b_type, per_weight)


@dataclass
class ActionAnalysis:
    vertex_weights: tuple[Fraction, ...]
    critical_values: tuple[Fraction, ...]
    criticality: int
    bandwidth: Fraction
    fixed_faces: list[FixedComponent]
    bb_plus: list[BBClosure]
    bb_minus: list[BBClosure]
    polytope_smooth: bool
    equalized: bool
    offending_edges: list[tuple[EdgeReport, int]]
    amfm: bool | None
    b_type: bool
    bordism: bool
    condition_star: bool
    all_inner_codim_ok: bool
    nu: tuple[int, ...]
    reparametrized_by: int
    normal_bundle_identity: bool = field(default=True)


def analyze(inp: ActionInput) -> ActionAnalysis:
    comps = fixed_faces(inp)
    plus = [bb_closures(inp, y, "+") for y in comps]
    minus = [bb_closures(inp, y, "-") for y in comps]
    equalized, bad = equalization_check(inp)
    amfm = amfm_check(inp)[0] if equalized else None
    star = condition_star(inp)
    smooth = is_smooth(normal_fan(inp.polytope))[0]
    dim = inp.polytope.intrinsic_dim
    identity = all(p.nu_pm + m.nu_pm + y.dim == dim for y, p, m in zip(comps, plus, minus))
    a = inp.critical_values
    return ActionAnalysis(
        vertex_weights=inp.weights,
        critical_values=a,
        criticality=len(a) - 1,
        bandwidth=a[-1] - a[0],
        fixed_faces=comps,
        bb_plus=plus,
        bb_minus=minus,
        polytope_smooth=smooth,
        equalized=equalized,
        offending_edges=bad,
        amfm=amfm,
        b_type=star.b_type,
        bordism=star.bordism,
        condition_star=star.condition_star,
        all_inner_codim_ok=star.all_inner,
        nu=inp.nu,
        reparametrized_by=inp.reparametrized_by,
        normal_bundle_identity=identity if smooth else True,
    )
