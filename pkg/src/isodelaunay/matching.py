"""Triangle matchings: verification, exhaustive search, induced structures.

A matching is a bijection on half-edges that commutes with the Z/3 slot
rotation and acts as -1 on every cycle.  As a map it is stored as a plain
dict (face, slot) -> (face, slot).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import homology
from .ribbon import (
    Corner,
    HalfEdge,
    TriRibbonGraph,
    he_key,
    other_side,
    parse_he_key,
    require_valid,
    vertex_orbits,
)

TriangleMatching = dict[HalfEdge, HalfEdge]


def matching_to_json(iota: TriangleMatching) -> dict:
    return {he_key(h): he_key(iota[h]) for h in sorted(iota)}


def matching_from_json(data: dict) -> TriangleMatching:
    return {parse_he_key(k): parse_he_key(v) for k, v in data.items()}


def apply_to_chain(iota: TriangleMatching, chain: homology.Chain1) -> homology.Chain1:
    out: homology.Chain1 = {}
    for h, coeff in chain.items():
        img = iota[(h[0], h[1] % 3)]
        out[img] = out.get(img, 0) + coeff
    return {k: v for k, v in sorted(out.items()) if v != 0}


@dataclass
class MatchingReport:
    ok: bool
    problems: list[str] = field(default_factory=list)
    is_involution: bool = False

    def __bool__(self):
        return self.ok


def verify_matching(
    graph: TriRibbonGraph,
    iota: TriangleMatching,
    basis: list[homology.Chain1] | None = None,
) -> MatchingReport:
    """Check bijectivity, Z/3-equivariance and the -1 action on a cycle basis."""
    require_valid(graph)
    problems = []
    hes = graph.half_edges()
    domain = set(iota)
    if domain != set(hes):
        problems.append("domain of the map is not the full half-edge set")
        return MatchingReport(False, problems)
    for h in hes:
        if iota[h] not in domain:
            problems.append(f"image {iota[h]} of {h} is not a half-edge")
            return MatchingReport(False, problems)
    if len(set(iota.values())) != len(hes):
        problems.append("map is not a bijection on half-edges")
    for f in sorted(graph._boundary):
        f1, s1 = iota[(f, 0)]
        for s in (1, 2):
            expect = (f1, (s1 + s) % 3)
            if iota[(f, s)] != expect:
                problems.append(
                    f"not Z/3-equivariant at {he_key((f, s))}: "
                    f"got {he_key(iota[(f, s)])}, expected {he_key(expect)}"
                )
    if not problems:
        if basis is None:
            basis = homology.cycle_basis(graph)
        for alpha in basis:
            if apply_to_chain(iota, alpha) != homology.chain_neg(alpha):
                problems.append(
                    f"does not act as -1 on the basis cycle through {min(alpha)}"
                )
                break
    is_involution = not problems and all(iota[iota[h]] == h for h in hes)
    return MatchingReport(not problems, problems, is_involution)


@dataclass
class SearchResult:
    matchings: list[TriangleMatching]
    complete: bool


def find_matchings(
    graph: TriRibbonGraph,
    limit: int | None = None,
    deadline: float | None = None,
) -> SearchResult:
    """Exhaustive backtracking search for triangle matchings.

    Candidates are face bijections with a per-face slot offset (the only
    Z/3-equivariant bijections of half-edges), pruned by the necessary
    condition that matched half-edges carry opposite pairing vectors.
    Deterministic order; ``limit`` caps the number of matchings returned and
    ``deadline`` (seconds) truncates the search, flagging incompleteness.
    """
    require_valid(graph)
    basis = homology.cycle_basis(graph)
    faces = sorted(graph._boundary)
    pv = {h: homology.pairing_vector(graph, basis, h) for h in graph.half_edges()}

    # for each source face, the compatible (target face, offset) assignments
    candidates: dict[str, list[tuple[str, int]]] = {}
    for f in faces:
        opts = []
        for f1 in faces:
            for off in range(3):
                if all(
                    pv[(f1, (s + off) % 3)] == tuple(-x for x in pv[(f, s)])
                    for s in range(3)
                ):
                    opts.append((f1, off))
        candidates[f] = opts

    found: list[TriangleMatching] = []
    used: set[str] = set()
    assignment: dict[str, tuple[str, int]] = {}
    start_time = time.monotonic()
    timed_out = False

    def ran_out() -> bool:
        return deadline is not None and time.monotonic() - start_time > deadline

    def backtrack(idx: int) -> bool:
        # returns True to stop the whole search
        nonlocal timed_out
        if ran_out():
            timed_out = True
            return True
        if idx == len(faces):
            iota = {
                (f, s): (t, (s + off) % 3)
                for f, (t, off) in assignment.items()
                for s in range(3)
            }
            if verify_matching(graph, iota, basis):
                found.append(iota)
                if limit is not None and len(found) >= limit:
                    return True
            return False
        f = faces[idx]
        for t, off in candidates[f]:
            if t in used:
                continue
            used.add(t)
            assignment[f] = (t, off)
            if backtrack(idx + 1):
                return True
            del assignment[f]
            used.discard(t)
        return False

    backtrack(0)
    return SearchResult(found, complete=not timed_out)


def induced_angle_involution(iota: TriangleMatching) -> dict[Corner, Corner]:
    """The corner map (f; e, e+1) -> (f'; e', e'+1) induced by equivariance."""
    return dict(iota)


@dataclass
class InvariantAngleSpace:
    """The linear equality system cutting out the invariant angle assignments.

    Rows are integer coefficient maps over corner variables; ``rhs_pi`` rows
    equal pi (face sums), the rest equal 0 (orbit equalities).
    """

    corners: list[Corner]
    face_sum_rows: list[dict[Corner, int]]
    orbit_rows: list[dict[Corner, int]]
    dimension: int


def _integer_rank(rows: list[dict], keys: list) -> int:
    """Exact rank of an integer matrix given as sparse rows."""
    idx = {k: i for i, k in enumerate(keys)}
    cols = [{} for _ in keys]
    for r, row in enumerate(rows):
        for k, v in row.items():
            if v:
                cols[idx[k]][r] = cols[idx[k]].get(r, 0) + v
    kernel = homology._integer_kernel([c for c in cols], list(range(len(keys))))
    return len(keys) - len(kernel)


def invariant_space(graph: TriRibbonGraph, iota: TriangleMatching) -> InvariantAngleSpace:
    """Equality system for invariant angle assignments, with its affine dimension."""
    report = verify_matching(graph, iota)
    if not report:
        raise ValueError("invariant_space requires a verified matching: " + "; ".join(report.problems))
    corners = graph.corners()
    face_rows = [{(f, s): 1 for s in range(3)} for f in sorted(graph._boundary)]
    orbit_rows = []
    seen = set()
    for c in corners:
        img = iota[c]
        if img == c or (img, c) in seen:
            continue
        seen.add((c, img))
        orbit_rows.append({c: 1, img: -1})
    rank = _integer_rank(face_rows + orbit_rows, corners)
    return InvariantAngleSpace(corners, face_rows, orbit_rows, len(corners) - rank)


def check_constant_holonomy(
    graph: TriRibbonGraph,
    iota: TriangleMatching,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
) -> dict:
    """Sample invariant angle assignments and compare their holonomies.

    All sampled points must agree with the barycenter's holonomy on every
    basis cycle within ``tol``, with unit modulus and phase a multiple of pi.
    Returns a report dict; a counterexample signals an implementation fault.
    """
    from . import angles as angles_mod
    from . import region

    basis = homology.cycle_basis(graph)
    poly = region.build_polytope(graph, iota, include_delaunay=False)
    thetas = region.sample(poly, samples, seed=seed)
    bary = angles_mod.constant_angles(graph)
    reference = [angles_mod.holonomy(graph, bary, a).value for a in basis]
    max_dev = 0.0
    max_mod_dev = 0.0
    counterexample = None
    for theta in thetas:
        for ref, alpha in zip(reference, basis):
            val = angles_mod.holonomy(graph, theta, alpha)
            max_dev = max(max_dev, abs(val.value - ref))
            max_mod_dev = max(max_mod_dev, abs(val.modulus - 1.0))
            if abs(val.value - ref) >= tol and counterexample is None:
                counterexample = theta
    return {
        "samples": len(thetas),
        "max_deviation": max_dev,
        "max_modulus_deviation": max_mod_dev,
        "ok": counterexample is None and max_mod_dev < tol,
        "counterexample": counterexample,
    }


def check_hyperelliptic_compatibility(
    graph: TriRibbonGraph,
    edge_map: dict[str, str],
    face_map: dict[str, str],
) -> bool:
    """Decide whether a simplicial involution certifies a triangle matching.

    ``edge_map`` and ``face_map`` are permutations of the edge and face
    identifiers.  The induced half-edge map must align boundaries by a slot
    rotation (orientation preserving); the vertex set must have size 1, or
    size 2 with the two vertices swapped; and the half-edge map must verify
    as a triangle matching.
    """
    require_valid(graph)
    if sorted(edge_map) != sorted(graph.edges) or sorted(edge_map.values()) != sorted(graph.edges):
        raise ValueError("edge_map is not a permutation of the edges")
    fids = sorted(graph._boundary)
    if sorted(face_map) != fids or sorted(face_map.values()) != fids:
        raise ValueError("face_map is not a permutation of the faces")

    # every consistent slot rotation per face; ambiguity from repeated edges
    # is resolved by trying all combinations
    per_face_offsets: list[list[int]] = []
    for f in fids:
        src = [edge_map[e] for e in graph._boundary[f]]
        dst = graph._boundary[face_map[f]]
        offs = [off for off in range(3) if all(src[s] == dst[(s + off) % 3] for s in range(3))]
        if not offs:
            return False
        per_face_offsets.append(offs)

    import itertools

    orbits = vertex_orbits(graph)
    orbit_of = {c: i for i, orbit in enumerate(orbits) for c in orbit}
    basis = homology.cycle_basis(graph)
    for combo in itertools.product(*per_face_offsets):
        iota = {
            (f, s): (face_map[f], (s + off) % 3)
            for f, off in zip(fids, combo)
            for s in range(3)
        }
        if len(orbits) == 1:
            vertex_ok = True
        elif len(orbits) == 2:
            vertex_ok = all(orbit_of[iota[c]] != orbit_of[c] for c in iota)
        else:
            vertex_ok = False
        if vertex_ok and verify_matching(graph, iota, basis):
            return True
    return False
