"""Connected sums of ribbon graphs and of triangle matchings."""

from __future__ import annotations

from . import matching as matching_mod
from .ribbon import HalfEdge, TriRibbonGraph, he_key, require_valid


def is_nonseparating(graph: TriRibbonGraph, h: HalfEdge) -> bool:
    """True iff removing the edge-vertex of ``h`` leaves the graph connected."""
    require_valid(graph)
    removed = graph.edge_of(h)
    faces = sorted(graph._boundary)
    if len(faces) == 1:
        return True
    start = faces[0]
    reached = {("F", start)}
    stack = [("F", start)]
    while stack:
        kind, v = stack.pop()
        if kind == "F":
            nbrs = [("E", e) for e in graph._boundary[v] if e != removed]
        else:
            nbrs = [("F", f) for f, _ in graph._occurrences[v]]
        for nb in nbrs:
            if nb not in reached:
                reached.add(nb)
                stack.append(nb)
    return sum(1 for k, _ in reached if k == "F") == len(faces)


def _prefixed(graph: TriRibbonGraph, prefix: str) -> TriRibbonGraph:
    return TriRibbonGraph(
        [prefix + e for e in graph.edges],
        [(prefix + f, tuple(prefix + e for e in b)) for f, b in graph.faces],
    )


def connected_sum(
    left: TriRibbonGraph,
    h_left: HalfEdge,
    right: TriRibbonGraph,
    h_right: HalfEdge,
) -> TriRibbonGraph:
    """Swap the edge-endpoints of the two chosen half-edges.

    Identifiers are prefixed "L." and "R." to keep the union disjoint; the
    chosen half-edges must be nonseparating in their graphs.
    """
    for g, h in ((left, h_left), (right, h_right)):
        require_valid(g)
        if not is_nonseparating(g, h):
            raise ValueError(f"half-edge {he_key(h)} is separating; sum rejected")
    e_left = "L." + left.edge_of(h_left)
    e_right = "R." + right.edge_of(h_right)
    lg = _prefixed(left, "L.")
    rg = _prefixed(right, "R.")
    faces = []
    for g, target_face, target_slot, new_edge in (
        (lg, "L." + h_left[0], h_left[1] % 3, e_right),
        (rg, "R." + h_right[0], h_right[1] % 3, e_left),
    ):
        for f, b in g.faces:
            if f == target_face:
                b = tuple(new_edge if s == target_slot else b[s] for s in range(3))
            faces.append((f, b))
    graph = TriRibbonGraph(list(lg.edges) + list(rg.edges), faces)
    require_valid(graph)
    return graph


def sum_matchings(
    left: TriRibbonGraph,
    h_left: HalfEdge,
    iota_left: matching_mod.TriangleMatching,
    right: TriRibbonGraph,
    h_right: HalfEdge,
    iota_right: matching_mod.TriangleMatching,
) -> tuple[TriRibbonGraph, matching_mod.TriangleMatching]:
    """Sum two graphs and their matchings; the union map must verify."""
    for g, iota in ((left, iota_left), (right, iota_right)):
        if not matching_mod.verify_matching(g, iota):
            raise ValueError("input matching does not verify on its graph")
    graph = connected_sum(left, h_left, right, h_right)
    iota: matching_mod.TriangleMatching = {}
    for prefix, source in (("L.", iota_left), ("R.", iota_right)):
        for (f, s), (f1, s1) in source.items():
            iota[(prefix + f, s)] = (prefix + f1, s1)
    report = matching_mod.verify_matching(graph, iota)
    if not report:
        raise AssertionError(
            "sum of verified matchings failed verification (implementation fault): "
            + "; ".join(report.problems)
        )
    return graph, iota
