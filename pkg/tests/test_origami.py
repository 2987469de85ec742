"""Square-tiled surface constructions and cylinder networks."""

import math

import pytest

from isodelaunay import angles, matching, origami, ribbon


def test_parse_permutation_cycle_notation():
    assert origami.parse_permutation("(12)", 3) == (2, 1, 3)
    assert origami.parse_permutation("(12)(3)", 3) == (2, 1, 3)
    assert origami.parse_permutation("()", 2) == (1, 2)
    assert origami.parse_permutation("(1 2 10)", 10)[0] == 2
    with pytest.raises(ValueError):
        origami.parse_permutation("(11)", 2)
    with pytest.raises(ValueError):
        origami.parse_permutation("(12", 2)


def test_from_spec_requires_transitivity():
    with pytest.raises(ValueError):
        origami.Origami.from_spec("h=(12);v=(12)(3)(4)")


def test_permutation_cycles():
    cycles = origami.permutation_cycles((2, 1, 3))
    assert sorted(map(sorted, cycles)) == [[1, 2], [3]]


def test_graph_shape(square_l_graph):
    # three squares: 9 edges, 6 triangles
    assert len(square_l_graph.edges) == 9
    assert len(square_l_graph.face_ids) == 6
    assert ribbon.validate(square_l_graph).ok


def test_standard_angles_right_isosceles(torus, torus_graph):
    theta = origami.standard_angles(torus)
    angles.validate_angles(torus_graph, theta)
    values = sorted(theta.values())
    assert values.count(math.pi / 2) == 2 and values.count(math.pi / 4) == 4


def test_equilateral_angles(square_l, square_l_graph):
    theta = origami.equilateral_angles(square_l)
    angles.validate_angles(square_l_graph, theta)
    assert all(abs(x - math.pi / 3) < 1e-15 for x in theta.values())


def test_network_golden(square_l, prym, staircase):
    net_l = origami.network(square_l)
    assert (len(net_l.horizontal), len(net_l.vertical)) == (2, 2)
    assert net_l.geometrically_simple and net_l.arboreal

    net_p = origami.network(prym)
    assert (len(net_p.horizontal), len(net_p.vertical)) == (3, 3)
    assert net_p.arboreal

    net_e = origami.network(staircase)
    # 3 + 3 = 6 != 6 + 1: tree count fails
    assert (len(net_e.horizontal), len(net_e.vertical)) == (3, 3)
    assert net_e.geometrically_simple and not net_e.arboreal


def test_arboreal_iff_cycle_count_identity():
    for s in range(1, 5):
        for o in origami.transitive_pairs_up_to_relabeling(s):
            net = origami.network(o)
            if not net.geometrically_simple:
                continue
            identity = net.cylinder_count == o.squares + 1
            assert net.arboreal == identity


def test_canonical_matching_valid_for_arboreal(square_l, prym):
    for o in (square_l, prym):
        g = origami.build_origami_graph(o)
        iota = origami.canonical_matching(o)
        assert matching.verify_matching(g, iota).ok


def test_canonical_matching_invalid_for_staircase(staircase, staircase_graph):
    iota = origami.canonical_matching(staircase)
    assert not matching.verify_matching(staircase_graph, iota).ok


def test_transitive_pair_class_counts():
    assert [len(origami.transitive_pairs_up_to_relabeling(s)) for s in range(1, 5)] == [
        1,
        3,
        7,
        26,
    ]
