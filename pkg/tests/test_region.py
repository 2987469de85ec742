"""Convex angle region: polytope construction, LP analysis, sampling."""

import math

from isodelaunay import angles, origami, region


def build(o, include_delaunay=True):
    g = origami.build_origami_graph(o)
    iota = origami.canonical_matching(o)
    return g, region.build_polytope(g, iota, include_delaunay=include_delaunay)


def test_opposite_corner(torus_graph):
    # the corner across the triangle from a half-edge
    assert region.opposite_corner(torus_graph, ("f1-", 0)) == ("f1-", 1)
    assert region.opposite_corner(torus_graph, ("f1-", 2)) == ("f1-", 0)


def test_delaunay_sum_equilateral(square_l, square_l_graph):
    theta = origami.equilateral_angles(square_l)
    for e in square_l_graph.edges:
        assert abs(region.delaunay_sum(square_l_graph, theta, e) - 2 * math.pi / 3) < 1e-12
    assert region.in_delaunay_region(square_l_graph, theta)


def test_standard_angles_on_delaunay_boundary(square_l, square_l_graph):
    # diagonals of squares are cocircular: sum exactly pi, outside the open region
    theta = origami.standard_angles(square_l)
    sums = [region.delaunay_sum(square_l_graph, theta, e) for e in square_l_graph.edges]
    assert any(abs(s - math.pi) < 1e-12 for s in sums)
    assert not region.in_delaunay_region(square_l_graph, theta)


def test_analyze_feasible_dimensions(torus, square_l, prym):
    for o, dim in [(torus, 2), (square_l, 6), (prym, 10)]:
        _, poly = build(o)
        report = region.analyze(poly)
        assert report.feasible
        assert report.dimension == dim
        assert report.slack > 0
        assert poly.slack(report.interior_point) > 0
        assert poly.equality_residual(report.interior_point) < 1e-9


def test_equilateral_point_maximizes_slack(square_l):
    g, poly = build(square_l)
    report = region.analyze(poly)
    theta = origami.equilateral_angles(square_l)
    assert abs(report.slack - math.pi / 3) < 1e-9
    assert poly.slack(theta) >= report.slack - 1e-9


def test_samples_satisfy_all_constraints(square_l):
    g, poly = build(square_l)
    pts = region.sample(poly, 25, seed=3)
    assert len(pts) == 25
    for theta in pts:
        angles.validate_angles(g, theta)
        assert poly.slack(theta) > 0
        assert poly.equality_residual(theta) < 1e-9
        assert region.in_delaunay_region(g, theta)


def test_sampling_is_deterministic(square_l):
    _, poly = build(square_l)
    a = region.sample(poly, 5, seed=7)
    b = region.sample(poly, 5, seed=7)
    assert a == b
    c = region.sample(poly, 5, seed=8)
    assert a != c


def test_positivity_only_polytope_is_larger(square_l):
    g, full = build(square_l)
    _, open_poly = build(square_l, include_delaunay=False)
    assert len(open_poly.ineq_rows) < len(full.ineq_rows)
    assert region.analyze(open_poly).slack >= region.analyze(full).slack - 1e-12


def test_midpoint_stays_inside(square_l):
    g, poly = build(square_l)
    pts = region.sample(poly, 20, seed=11)
    for a, b in zip(pts[::2], pts[1::2]):
        mid = {c: (a[c] + b[c]) / 2 for c in a}
        assert poly.slack(mid) > 0
        assert region.in_delaunay_region(g, mid)


def test_circumcircle_cross_check_agreement():
    # (A, B, C, D): ccw triangle ABC sharing edge BC with D across the line
    far = (0.3 + 1.2j, 0 + 0j, 1 + 0j, 0.5 - 2j)  # D outside the circumcircle
    report = region.circumcircle_cross_check(far)
    assert not report["degenerate"]
    assert report["in_circle_outside"] and report["angle_sum"] < math.pi
    assert report["agree"]

    near = (0.3 + 1.2j, 0 + 0j, 1 + 0j, 0.5 - 0.05j)  # D inside the circumcircle
    report = region.circumcircle_cross_check(near)
    assert not report["degenerate"]
    assert not report["in_circle_outside"] and report["angle_sum"] > math.pi
    assert report["agree"]


def test_circumcircle_cross_check_cocircular():
    # four concyclic points around the circle through (0,0), (1,0), (0,1)
    d = 0.5 + (0.5 - math.sqrt(0.5)) * 1j
    report = region.circumcircle_cross_check((0 + 1j, 0 + 0j, 1 + 0j, d))
    assert report["degenerate"]
