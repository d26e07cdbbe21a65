"""GIT slices, prunings, Chow-quotient polytopes and the quotient diagram.

Node (i, j) of the diagram, 0 <= i < j <= r, is the Chow quotient of the
pruning Δ ∩ {τ− <= ν <= τ+} with τ− in (a_i, a_{i+1}) and τ+ in
(a_{j-1}, a_j).  Wall nodes (i, i) are the semigeometric slices at a_i.
"""

from __future__ import annotations

import os
import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .action import ActionInput, NotEqualized, equalization_check
from .fan import (Fan, MorphismClassification, MorphismKind, NotARefinement,
                  classify_morphism, common_refinement, fans_equal, is_smooth)
from .polytope import (LatticePolytope, canonicalize, minkowski_sum_all, normal_fan,
                       slice_at, truncate_between)


class IndexOutOfRange(IndexError):
    pass


def _threads() -> int:
    raw = os.environ.get("CHOWBENCH_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def _check_pair(inp: ActionInput, i: int, j: int, allow_wall: bool = False):
    r = len(inp.critical_values) - 1
    lo_ok = 0 <= i <= r and 0 <= j <= r
    if not lo_ok or j < i or (i == j and not allow_wall):
        raise IndexOutOfRange(f"chamber ({i}, {j}) out of range for r = {r}")


def chamber_representative(inp: ActionInput, i: int, j: int, spread=Fraction(1, 2)):
    """Normalized (τ−, τ+) inside chamber (i, j).

    For j - i >= 2 both are interval midpoints when spread = 1/2.  For
    j = i + 1 both levels share one interval, so they sit at the points
    dividing it in ratio (1 - spread)/2 : spread : (1 - spread)/2.
    """
    a = inp.critical_values
    _check_pair(inp, i, j)
    spread = Fraction(spread)
    if j == i + 1:
        gap = a[j] - a[i]
        off = (1 - spread) / 2 * gap
        return a[i] + off, a[j] - off
    t_minus = a[i] + spread * (a[i + 1] - a[i])
    t_plus = a[j] - spread * (a[j] - a[j - 1])
    return t_minus, t_plus


@dataclass
class ChamberGrid:
    r: int
    chambers: dict[tuple[int, int], tuple[Fraction, Fraction]]
    walls: dict[int, Fraction]
    invariance: dict[tuple[int, int], bool] = field(default_factory=dict)

    def __len__(self):
        return len(self.chambers)


def pruning_at(inp: ActionInput, t_minus, t_plus) -> LatticePolytope:
    """Truncation of Δ between two normalized levels."""
    return truncate_between(inp.polytope, inp.nu, inp.level(t_minus), inp.level(t_plus))


def pruning(inp: ActionInput, i: int, j: int) -> LatticePolytope:
    t_minus, t_plus = chamber_representative(inp, i, j)
    return pruning_at(inp, t_minus, t_plus)


def chamber_grid(inp: ActionInput, certify: bool = True) -> ChamberGrid:
    """All chambers with representatives, optionally certifying that a second
    representative gives a normally equivalent pruning."""
    a = inp.critical_values
    r = len(a) - 1
    chambers = {(i, j): chamber_representative(inp, i, j)
                for i in range(r) for j in range(i + 1, r + 1)}
    grid = ChamberGrid(r, chambers, {i: a[i] for i in range(r + 1)})
    if certify:
        for (i, j), (tm, tp) in chambers.items():
            alt = chamber_representative(inp, i, j, Fraction(1, 3))
            f1 = normal_fan(pruning_at(inp, tm, tp))
            f2 = normal_fan(pruning_at(inp, *alt))
            grid.invariance[(i, j)] = fans_equal(f1, f2)
    return grid


def random_representative(inp: ActionInput, i: int, j: int, rng: random.Random,
                          denominator: int = 997) -> tuple[Fraction, Fraction]:
    """Random rational (τ−, τ+) strictly inside chamber (i, j)."""
    a = inp.critical_values

    def inside(lo, hi):
        return lo + (hi - lo) * Fraction(rng.randint(1, denominator - 1), denominator)

    if j == i + 1:
        x, y = inside(a[i], a[j]), inside(a[i], a[j])
        while x == y:
            y = inside(a[i], a[j])
        return min(x, y), max(x, y)
    return inside(a[i], a[i + 1]), inside(a[j - 1], a[j])


@dataclass
class QuotientPolytope:
    polytope: LatticePolytope
    fan: Fan | None


def _slice(inp: ActionInput, P: LatticePolytope, t) -> LatticePolytope:
    return slice_at(P, inp.nu, inp.level(t))


def _with_fan(P: LatticePolytope) -> QuotientPolytope:
    return QuotientPolytope(P, normal_fan(P) if P.is_full_dimensional else None)


def git_quotient(inp: ActionInput, i: int, j: int) -> QuotientPolytope:
    """Slice at a_i (wall, j = i) or at the midpoint of (a_i, a_{i+1})."""
    a = inp.critical_values
    if j == i:
        _check_pair(inp, i, i, allow_wall=True)
        return _with_fan(_slice(inp, inp.polytope, a[i]))
    if j != i + 1:
        raise IndexOutOfRange("git_quotient needs j in {i, i+1}")
    _check_pair(inp, i, j)
    return _with_fan(_slice(inp, inp.polytope, (a[i] + a[j]) / 2))


def fiber_polytope(inp: ActionInput, P: LatticePolytope) -> LatticePolytope:
    """Σ_k (c_{k+1} - c_k) · slice(P, midpoint_k) over all vertex levels c_k of P."""
    levels = sorted(set(P.values(inp.nu)))
    parts = []
    for lo, hi in zip(levels, levels[1:]):
        S = slice_at(P, inp.nu, (lo + hi) / 2)
        parts.append(S.scaled(hi - lo))
    return canonicalize(minkowski_sum_all(parts))


def chow_fiber_polytope(inp: ActionInput, i: int, j: int) -> QuotientPolytope:
    _check_pair(inp, i, j)
    if not equalization_check(inp)[0]:
        warnings.warn("action is not equalized; fiber polytope is raw data only", stacklevel=2)
    return _with_fan(fiber_polytope(inp, pruning(inp, i, j)))


def chow_minkowski_polytope(inp: ActionInput, i: int, j: int) -> QuotientPolytope:
    """Σ_{k=i..j} slice(Δ, a_k): the polytope of the tensor product of the
    pulled-back wall bundles."""
    _check_pair(inp, i, j)
    a = inp.critical_values
    parts = [_slice(inp, inp.polytope, a[k]) for k in range(i, j + 1)]
    return _with_fan(canonicalize(minkowski_sum_all(parts)))


ROLE_SEMIGEOMETRIC = "GIT_semigeometric"
ROLE_GEOMETRIC = "GIT_geometric"
ROLE_CHOW = "Chow"


@dataclass
class Node:
    i: int
    j: int
    role: str
    polytope: LatticePolytope
    fan: Fan | None
    smooth: bool | None
    singular_cones: list = field(default_factory=list)
    minkowski_fan: Fan | None = None


@dataclass
class Edge:
    label: str  # "s" or "d"
    source: tuple[int, int]
    target: tuple[int, int]
    classification: MorphismClassification | None
    diagnostic: str = ""


@dataclass
class QuotientDiagram:
    r: int
    nodes: dict[tuple[int, int], Node]
    edges: list[Edge]
    squares: dict[tuple[int, int], bool]
    cross_validation: dict[tuple[int, int], bool]
    top_identification: bool
    bottom_row: dict[tuple[int, int], bool]

    def node(self, i, j) -> Node:
        return self.nodes[(i, j)]

    def edge(self, source, target) -> Edge:
        for e in self.edges:
            if e.source == tuple(source) and e.target == tuple(target):
                return e
        raise KeyError((source, target))


def _build_node(inp: ActionInput, i: int, j: int, cross_validate: bool) -> Node:
    if i == j:
        q = git_quotient(inp, i, i)
        role = ROLE_SEMIGEOMETRIC
    else:
        q = chow_fiber_polytope(inp, i, j)
        role = ROLE_GEOMETRIC if j == i + 1 else ROLE_CHOW
    smooth, bad = (None, [])
    if q.fan is not None:
        smooth, bad = is_smooth(q.fan)
    node = Node(i, j, role, q.polytope, q.fan, smooth, bad)
    if cross_validate and i < j:
        node.minkowski_fan = chow_minkowski_polytope(inp, i, j).fan
    return node


def _classify(src: Node, tgt: Node, label: str) -> Edge:
    try:
        cls = classify_morphism(src.fan, tgt.fan)
        return Edge(label, (src.i, src.j), (tgt.i, tgt.j), cls)
    except NotARefinement as exc:
        return Edge(label, (src.i, src.j), (tgt.i, tgt.j), None, str(exc))


def build_diagram(inp: ActionInput, force: bool = False, check_squares: bool = True,
                  cross_validate: bool = True) -> QuotientDiagram:
    """Every node, classified s/d edge, rhombus verdict and cross-check."""
    equalized, bad = equalization_check(inp)
    if not equalized and not force:
        detail = ", ".join(f"{e.vertices}:{order}" for e, order in bad)
        raise NotEqualized(f"NotEqualized: edges with nontrivial isotropy {detail}")
    if not equalized:
        warnings.warn("building the diagram of a non-equalized action; results are raw data",
                      stacklevel=2)
    r = len(inp.critical_values) - 1
    keys = [(i, j) for i in range(r + 1) for j in range(i, r + 1)]
    workers = _threads()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                built = list(pool.map(lambda k: _build_node(inp, *k, cross_validate), keys))
        else:
            built = [_build_node(inp, i, j, cross_validate) for i, j in keys]
    nodes = dict(zip(keys, built))

    edges = []
    for i in range(r + 1):
        for j in range(i + 2, r + 1):
            top = nodes[(i, j)]
            edges.append(_classify(top, nodes[(i, j - 1)], "s"))
            edges.append(_classify(top, nodes[(i + 1, j)], "d"))

    squares = {}
    if check_squares:
        for i in range(r + 1):
            for j in range(i + 2, r + 1):
                left, right = nodes[(i, j - 1)].fan, nodes[(i + 1, j)].fan
                squares[(i, j)] = fans_equal(nodes[(i, j)].fan, common_refinement(left, right))

    cross = {}
    if cross_validate:
        for (i, j), node in nodes.items():
            if i < j:
                cross[(i, j)] = fans_equal(node.fan, node.minkowski_fan)

    whole = normal_fan(fiber_polytope(inp, inp.polytope))
    top_ok = fans_equal(whole, nodes[(0, r)].fan)

    bottom = {}
    for i in range(r):
        bottom[(i, i + 1)] = fans_equal(nodes[(i, i + 1)].fan, git_quotient(inp, i, i + 1).fan)
    return QuotientDiagram(r, nodes, edges, squares, cross, top_ok, bottom)


@dataclass(frozen=True)
class CenterStratum:
    cone: tuple[tuple[int, ...], ...]
    ray: tuple[int, ...]
    cone_dim: int
    stratum_dim: int
    group: int


def centers_report(diagram: QuotientDiagram) -> dict[tuple[tuple[int, int], tuple[int, int]],
                                                     list[CenterStratum]]:
    """Blowup centers per edge; non-blowup edges map to an empty list.

    Centers of one blowup are pairwise disjoint strata, so each forms its own
    connected group.
    """
    out = {}
    for e in diagram.edges:
        centers = []
        cls = e.classification
        if cls is not None and cls.kind is MorphismKind.SMOOTH_BLOWUP:
            dim = diagram.nodes[e.target].fan.lattice_dim
            for g, c in enumerate(cls.centers):
                centers.append(CenterStratum(c.cone, c.ray, c.dim, dim - c.dim, g))
        out[(e.source, e.target)] = centers
    return out
