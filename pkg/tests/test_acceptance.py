"""End-to-end acceptance checks for the whole library.

Each test prints exactly one PASS/FAIL line so the suite output doubles as a
release checklist.  Run with ``pytest -s tests/test_acceptance.py`` to see
the lines for passing criteria too.
"""

import math
import time

import pytest

from isodelaunay import (
    angles,
    develop,
    homology,
    matching,
    origami,
    region,
    ribbon,
    surgery,
)

TOL = 1e-9


def report(num: int, description: str, ok: bool) -> None:
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {description}")
    assert ok, f"criterion {num}: {description}"


def invariant_polytope(o, include_delaunay):
    g = origami.build_origami_graph(o)
    iota = origami.canonical_matching(o)
    return g, region.build_polytope(g, iota, include_delaunay=include_delaunay)


def test_criterion_01_square_l_golden(square_l, square_l_graph):
    g = square_l_graph
    sig = ribbon.stratum_signature(g, origami.standard_angles(square_l))
    ok = sig.genus == 2 and sig.zero_orders == (2,)
    ok = ok and len(homology.cycle_basis(g)) == 4
    iota = origami.canonical_matching(square_l)
    ok = ok and matching.verify_matching(g, iota).ok
    # horizontal core curve of the top square, exact integer coefficients
    alpha = {("f3-", 1): 1, ("f3-", 2): -1, ("f3+", 0): 1, ("f3+", 2): -1}
    ok = ok and homology.is_cycle(g, alpha)
    ok = ok and matching.apply_to_chain(iota, alpha) == homology.chain_neg(alpha)
    report(1, "square L: genus 2, (2), rank 4, matching negates a core curve", ok)


def test_criterion_02_staircase_has_no_matching(staircase, staircase_graph):
    net = origami.network(staircase)
    ok = not net.arboreal and net.cylinder_count == 6
    start = time.monotonic()
    res = matching.find_matchings(staircase_graph)
    elapsed = time.monotonic() - start
    ok = ok and res.complete and res.matchings == [] and elapsed < 60
    report(2, "six-square staircase: not arboreal, exhaustive search empty", ok)


def test_criterion_03_prym_golden(prym, prym_graph):
    sig = ribbon.stratum_signature(prym_graph, origami.standard_angles(prym))
    ok = sig.genus == 3 and sig.zero_orders == (4,)
    ok = ok and origami.network(prym).arboreal
    res = matching.find_matchings(prym_graph, limit=1)
    ok = ok and len(res.matchings) == 1
    report(3, "five-square Prym origami: genus 3, (4), arboreal, matching found", ok)


def test_criterion_04_arboreal_sweep():
    mismatches = 0
    for s in range(1, 6):
        for o in origami.transitive_pairs_up_to_relabeling(s):
            net = origami.network(o)
            if not net.geometrically_simple:
                continue
            g = origami.build_origami_graph(o)
            arboreal = net.arboreal
            identity = net.cylinder_count == o.squares + 1
            exists = bool(matching.find_matchings(g, limit=1).matchings)
            if not (arboreal == identity == exists):
                mismatches += 1
    report(4, "sweep to 5 squares: arboreal = tree count = matching exists", mismatches == 0)


def test_criterion_05_constant_holonomy(torus, square_l, prym):
    ok = True
    for o in (torus, square_l, prym):
        g = origami.build_origami_graph(o)
        iota = origami.canonical_matching(o)
        rep = matching.check_constant_holonomy(g, iota, samples=100, seed=0, tol=TOL)
        ok = ok and rep["ok"] and rep["max_deviation"] < TOL
        ok = ok and rep["max_modulus_deviation"] < TOL
    report(5, "holonomy constant of modulus 1 across 100 invariant samples each", ok)


def test_criterion_06_invariant_angles_develop(torus, square_l, prym):
    ok = True
    for o in (torus, square_l, prym):
        g, poly = invariant_polytope(o, include_delaunay=False)
        for theta in region.sample(poly, 25, seed=1):
            ok = ok and angles.is_trivial_holonomy(g, theta, tol=TOL)
            surface = develop.develop(g, theta, tol=TOL)  # raises on obstruction
            surface.check(TOL)
    report(6, "every sampled invariant angle vector is holonomy-free and develops", ok)


def test_criterion_07_region_is_convex(square_l):
    g, poly = invariant_polytope(square_l, include_delaunay=True)
    pts = region.sample(poly, 2000, seed=2)
    ok = True
    for a, b in zip(pts[:1000], pts[1000:]):
        mid = {c: (a[c] + b[c]) / 2 for c in a}
        if poly.slack(mid) <= 0:
            ok = False
            break
        surface = develop.develop(g, mid, tol=TOL)
        if not develop.is_geometric_delaunay(surface, tol=TOL):
            ok = False
            break
    report(7, "1000 midpoints of Delaunay region samples stay strictly inside", ok)


def test_criterion_08_develop_round_trip(torus, square_l, prym):
    worst = 0.0
    for o in (torus, square_l, prym):
        g, poly = invariant_polytope(o, include_delaunay=False)
        for theta in region.sample(poly, 100, seed=3):
            back = develop.angles_of(develop.develop(g, theta))
            worst = max(worst, max(abs(back[c] - theta[c]) for c in theta))
    report(8, f"angles round trip through periods (worst error {worst:.2e})", worst < TOL)


def test_criterion_09_region_dimensions(torus, square_l, prym):
    ok = True
    for o, dim in [(square_l, 6), (torus, 2), (prym, 10)]:
        _, poly = invariant_polytope(o, include_delaunay=True)
        ok = ok and region.analyze(poly).dimension == dim
    report(9, "region dimensions 6 / 2 / 10 by exact integer rank", ok)


def test_criterion_10_delaunay_predicates_agree():
    import numpy as np

    rng = np.random.default_rng(4)
    checked = disagreements = 0
    while checked < 10_000:
        a, b, c, d = (complex(x, y) for x, y in rng.uniform(-1, 1, size=(4, 2)))
        cross = ((b - a).conjugate() * (c - a)).imag
        if cross <= 0:  # need a ccw triangle abc
            a, b = b, a
        side = ((c - b).conjugate() * (d - b)).imag
        if side >= 0:  # need d across edge bc from a
            continue
        rep = region.circumcircle_cross_check((a, b, c, d), tol=TOL)
        if rep["degenerate"]:
            continue
        checked += 1
        disagreements += 0 if rep["agree"] else 1
    report(10, "in-circle sign matches opposite-angle sum on 10^4 quads", disagreements == 0)


def test_criterion_11_connected_sum(torus, torus_graph):
    h = ("f1-", 0)
    iota = origami.canonical_matching(torus)
    summed, glued = surgery.sum_matchings(torus_graph, h, iota, torus_graph, h, iota)
    info = ribbon.topology(summed)
    ok = info["genus"] == 1 and info["V"] == 2
    ok = ok and matching.verify_matching(summed, glued).ok
    ok = ok and info["rank_h1"] == 5
    report(11, "two square tori: genus 1, two marked points, glued matching, rank 5", ok)


def test_criterion_12_homology_core(torus_graph, square_l_graph, staircase_graph):
    graphs = [torus_graph, square_l_graph]
    graphs.append(
        surgery.connected_sum(torus_graph, ("f1-", 0), torus_graph, ("f1-", 0))
    )
    ok = True
    for g in graphs:
        assert len(g.face_ids) <= 8
        for alpha in homology.enumerate_simple_cycles(g):
            ok = ok and homology.p_map(homology.phi(g, alpha)) == alpha
    for g in (torus_graph, square_l_graph, staircase_graph):
        basis = homology.cycle_basis(g)
        for h in g.half_edges():
            v = homology.pairing_vector(g, basis, h)
            w = homology.pairing_vector(g, basis, ribbon.other_side(g, h))
            ok = ok and tuple(-x for x in v) == w
    report(12, "p after phi is the identity; pairing vectors negate across edges", ok)
