import random
from fractions import Fraction
from itertools import product

import pytest

from chowbench import polytope as pt
from chowbench.examples import BRUS_VERTICES, cube_vertices
from chowbench.fan import is_smooth

import oracles


def facet_set(P):
    return {(h, -b) for h, b in P.facets}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cube_hull(n):
    P = pt.hull(cube_vertices(n))
    assert len(P.vertices) == 2 ** n and len(P.facets) == 2 * n
    assert P.is_full_dimensional


def test_hull_drops_interior_points():
    P = pt.hull([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0), (Fraction(1, 3), Fraction(1, 3))])
    assert P.vertices == ((0, 0), (0, 2), (2, 0))
    assert facet_set(P) == oracles.facets(P.vertices)


def test_hull_matches_oracle_on_random_sets():
    rng = random.Random(7)
    for _ in range(25):
        k = rng.choice([2, 3])
        pts = [tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(rng.randint(k + 2, 12))]
        if oracles.rank([[a - b for a, b in zip(p, pts[0])] for p in pts]) < k:
            continue
        P = pt.hull(pts)
        assert facet_set(P) == oracles.facets(pts)
        assert sorted(P.vertices) == oracles.vertices(pts)


def test_seeded_hull_agrees_with_plain():
    rng = random.Random(3)
    pts = [tuple(rng.randint(-20, 20) for _ in range(3)) for _ in range(150)]
    seeded = pt.hull(pts)
    plain_facets = pt._facets_of_ints(pts, 3)
    assert {h for h, _ in seeded.facets} == {h for h, _ in plain_facets}


def test_lower_dimensional_hull():
    P = pt.hull([(0, 0, 1), (1, 0, 0), (0, 1, 0)])
    assert P.intrinsic_dim == 2 and not P.is_full_dimensional
    assert P.equations == (((1, 1, 1), 1),)
    assert len(P.facets) == 3
    with pytest.raises(pt.NotFullDimensional):
        pt.normal_fan(P)


def test_empty_hull():
    with pytest.raises(pt.EmptyPolytope):
        pt.hull([])


def test_face_lattice_cube():
    P = pt.hull(cube_vertices(3))
    assert P.f_vector() == (8, 12, 6)
    assert len(P.edges) == 12
    fl = P.face_lattice
    # empty<vertex, vertex<edge, edge<square, square<cube
    assert len(fl.covers()) == 8 + 12 * 2 + 6 * 4 + 6


def test_brus_hull():
    P = pt.hull(BRUS_VERTICES)
    assert len(P.vertices) == 26
    assert P.f_vector() == (26, 52, 36, 10)
    assert is_smooth(pt.normal_fan(P))[0]


def test_chart_roundtrip():
    c = pt.AffineChart.at((1, 1, 1), 2)
    assert c.dim == 2 and c.tag == "M'[1,1,1]"
    for x in [(2, 0, 0), (1, 1, 0), (0, Fraction(1, 2), Fraction(3, 2))]:
        assert c.backward(c.forward(x)) == x
    with pytest.raises(ValueError):
        c.forward((1, 0, 0))


def test_slice_cube_levels():
    P = pt.hull(cube_vertices(3))
    tri = pt.slice_at(P, (1, 1, 1), 1)
    assert len(tri.vertices) == 3 and tri.intrinsic_dim == 2
    assert {tri.chart.backward(v) for v in tri.vertices} == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    hexagon = pt.slice_at(P, (1, 1, 1), Fraction(3, 2))
    assert len(hexagon.vertices) == 6
    point = pt.slice_at(P, (1, 1, 1), 0)
    assert point.intrinsic_dim == 0
    with pytest.raises(pt.LevelOutOfRange):
        pt.slice_at(P, (1, 1, 1), 4)


def test_truncate_between():
    P = pt.hull(cube_vertices(3))
    T = pt.truncate_between(P, (1, 1, 1), Fraction(1, 2), Fraction(5, 2))
    assert len(T.vertices) == 12 and len(T.facets) == 8
    seg = pt.truncate_between(pt.hull([(0,), (1,)]), (1,), Fraction(1, 4), Fraction(3, 4))
    assert seg.vertices == ((Fraction(1, 4),), (Fraction(3, 4),))
    with pytest.raises(pt.EmptyPolytope):
        pt.truncate_between(P, (1, 1, 1), 5, 6)


def test_minkowski_sum_and_chart_mismatch():
    a = pt.hull([(0, 0), (1, 0)])
    b = pt.hull([(0, 0), (0, 1)])
    assert pt.minkowski_sum(a, b).vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    s1 = pt.slice_at(pt.hull(cube_vertices(3)), (1, 1, 1), 1)
    s2 = pt.slice_at(pt.hull(cube_vertices(3)), (1, 1, 0), 1)
    with pytest.raises(pt.ChartMismatch):
        pt.minkowski_sum(s1, s2)


def test_canonicalize_records_normalization():
    P = pt.hull([(Fraction(-1, 2),) * 3, (Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2)),
                 (Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2)),
                 (Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2))])
    C = pt.canonicalize(P)
    assert C.vertices[0] == (0, 0, 0)
    assert all(x.denominator == 1 for v in C.vertices for x in v)
    t, s = C.normalization.translation, C.normalization.scale
    assert {tuple(x / s - y for x, y in zip(v, t)) for v in C.vertices} == set(P.vertices)


def test_normal_fan_square():
    F = pt.normal_fan(pt.hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert F.rays == ((-1, 0), (0, -1), (0, 1), (1, 0))
    assert len(F.cones) == 4 and is_smooth(F)[0]


def test_lattice_length():
    assert pt.lattice_length((0, 0, 0, 0), (0, 0, 0, 4)) == 4
    assert pt.lattice_length((0,), (2,)) == 2
    assert pt.lattice_length((0, 0), (2, 4)) == 2
    assert pt.lattice_length((0, 0), (Fraction(1, 2), 0)) == Fraction(1, 2)


def test_scaled_keeps_chart_consistent():
    S = pt.slice_at(pt.hull(cube_vertices(3)), (1, 1, 1), 1)
    T = S.scaled(3)
    assert {T.chart.backward(v) for v in T.vertices} == {(3, 0, 0), (0, 3, 0), (0, 0, 3)}


def test_translated_contains():
    P = pt.hull(product((0, 2), repeat=2)).translated((1, 1))
    assert P.contains((2, 2)) and not P.contains((0, 0))
