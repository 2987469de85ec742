"""Triangle matchings: verification, search, invariant angle space."""

from isodelaunay import homology, matching, origami, ribbon


def canonical(o):
    return origami.canonical_matching(o)


def test_verify_canonical_matchings(torus, square_l, prym):
    for o in (torus, square_l, prym):
        g = origami.build_origami_graph(o)
        report = matching.verify_matching(g, canonical(o))
        assert report.ok and report.problems == []
        assert report.is_involution


def test_matching_acts_by_minus_one_on_homology(square_l, square_l_graph):
    iota = canonical(square_l)
    for alpha in homology.cycle_basis(square_l_graph):
        assert matching.apply_to_chain(iota, alpha) == homology.chain_neg(alpha)


def test_verify_rejects_identity_map(square_l_graph):
    identity = {h: h for h in square_l_graph.half_edges()}
    assert not matching.verify_matching(square_l_graph, identity).ok


def test_verify_rejects_non_equivariant(square_l, square_l_graph):
    iota = dict(canonical(square_l))
    # swap two images: still a bijection, no longer slot-equivariant
    keys = sorted(iota)
    a, b = keys[0], keys[4]
    iota[a], iota[b] = iota[b], iota[a]
    assert not matching.verify_matching(square_l_graph, iota).ok


def test_find_matchings_square_l_contains_canonical(square_l, square_l_graph):
    res = matching.find_matchings(square_l_graph)
    assert res.complete
    assert canonical(square_l) in res.matchings


def test_find_matchings_staircase_empty(staircase_graph):
    res = matching.find_matchings(staircase_graph)
    assert res.complete and res.matchings == []


def test_find_matchings_respects_limit(torus_graph):
    res = matching.find_matchings(torus_graph, limit=1)
    assert len(res.matchings) == 1


def test_matching_json_round_trip(square_l):
    iota = canonical(square_l)
    again = matching.matching_from_json(matching.matching_to_json(iota))
    assert again == iota


def test_invariant_space_dimensions(torus, square_l, prym):
    for o, dim in [(torus, 2), (square_l, 6), (prym, 10)]:
        g = origami.build_origami_graph(o)
        space = matching.invariant_space(g, canonical(o))
        assert space.dimension == dim


def test_induced_angle_involution_is_involution(square_l, square_l_graph):
    sigma = matching.induced_angle_involution(canonical(square_l))
    assert sorted(sigma) == sorted(square_l_graph.half_edges())
    for c, image in sigma.items():
        assert sigma[image] == c


def test_constant_holonomy_on_invariant_angles(square_l, square_l_graph):
    report = matching.check_constant_holonomy(
        square_l_graph, canonical(square_l), samples=20, seed=1
    )
    assert report["ok"]
    assert report["max_deviation"] < 1e-9
    assert report["max_modulus_deviation"] < 1e-9


def test_hyperelliptic_compatibility_square_l(square_l, square_l_graph):
    # the elliptic involution of the L: squares 1<->1 (via half turn), 2<->3
    edge_map = {"b1": "b3", "b3": "b1", "b2": "b2", "l1": "l2", "l2": "l1", "l3": "l3",
                "d1": "d1", "d2": "d2", "d3": "d3"}
    face_map = {}
    for j in (1, 2, 3):
        face_map[f"f{j}-"] = f"f{j}+"
        face_map[f"f{j}+"] = f"f{j}-"
    assert matching.check_hyperelliptic_compatibility(square_l_graph, edge_map, face_map)


def test_search_prunes_with_pairing_vectors(prym_graph):
    # on a graph admitting a matching the search must stay exact: every
    # returned matching passes independent verification
    res = matching.find_matchings(prym_graph)
    assert res.complete and res.matchings
    for iota in res.matchings:
        assert matching.verify_matching(prym_graph, iota).ok
