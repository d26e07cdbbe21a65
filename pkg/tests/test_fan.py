import pytest

from chowbench import fan as fn
from chowbench.polytope import hull, normal_fan

import oracles


def p2():
    return fn.projective_space_fan(2)


def test_projective_space_is_smooth():
    for n in (1, 2, 3):
        F = fn.projective_space_fan(n)
        assert fn.is_smooth(F)[0]
        assert len(F.cones) == n + 1


def test_singular_cone_reported():
    F = fn.Fan([(1, 0), (1, 2), (-1, -1)], [(0, 1), (1, 2), (2, 0)], 2)
    ok, bad = fn.is_smooth(F)
    assert not ok and bad == [((1, 0), (1, 2))]
    assert oracles.det([(1, 0), (1, 2)]) == 2


def test_fan_equality_ignores_input_order():
    a = fn.Fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)], 2)
    b = fn.Fan([(-1, -1), (0, 1), (1, 0)], [(2, 1), (0, 1), (2, 0)], 2)
    assert a == b and fn.fans_equal(a, b) and hash(a) == hash(b)


def test_lattice_mismatch():
    with pytest.raises(fn.LatticeMismatch):
        fn.fans_equal(p2(), fn.projective_space_fan(3))


def test_star_subdivision_of_p2_is_blowup():
    F = p2()
    G = fn.star_subdivide(F, (1, 1))
    assert len(G.rays) == 4 and len(G.cones) == 4
    c = fn.classify_morphism(G, F)
    assert c.kind is fn.MorphismKind.SMOOTH_BLOWUP
    assert len(c.centers) == 1 and c.centers[0].dim == 2 and c.centers[0].ray == (1, 1)


def test_classify_isomorphism_and_errors():
    F = p2()
    assert fn.classify_morphism(F, F).kind is fn.MorphismKind.ISOMORPHISM
    square = normal_fan(hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    with pytest.raises(fn.NotARefinement, match="NotARefinement"):
        fn.classify_morphism(F, square)


def test_weighted_subdivision_is_refinement():
    F = p2()
    G = fn.star_subdivide(F, (1, 2))
    c = fn.classify_morphism(G, F)
    assert c.kind is fn.MorphismKind.REFINEMENT


def test_intersecting_centers_are_refinement():
    # the two centers are curves meeting at a fixed point of P3
    F = fn.projective_space_fan(3)
    G = fn.star_subdivide(fn.star_subdivide(F, (1, 1, 0)), (1, 0, 1))
    c = fn.classify_morphism(G, F)
    assert c.kind is fn.MorphismKind.REFINEMENT


def test_disjoint_point_blowups():
    # P2 blown up at the three torus-fixed points is the hexagon fan
    F = p2()
    G = F
    for r in [(1, 1), (-1, 0), (0, -1)]:
        G = fn.star_subdivide(G, r)
    hexagon = normal_fan(hull([(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)]))
    assert G == hexagon
    c = fn.classify_morphism(G, F)
    assert c.kind is fn.MorphismKind.SMOOTH_BLOWUP and len(c.centers) == 3


def test_common_refinement_square_and_p2():
    square = normal_fan(hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    R = fn.common_refinement(square, p2())
    assert fn.refines(R, square) and fn.refines(R, p2())
    assert set(R.rays) == {(1, 0), (0, 1), (-1, 0), (0, -1), (-1, -1)}
    assert fn.common_refinement(R, square) == R


def test_minimal_cone():
    F = p2()
    assert F.minimal_cone((1, 1)) == frozenset({F.ray_index((1, 0)), F.ray_index((0, 1))})
    assert F.minimal_cone((2, 0)) == frozenset({F.ray_index((1, 0))})
