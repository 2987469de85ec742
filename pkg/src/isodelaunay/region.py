"""The Delaunay angle polytope and its analysis.

The region cut out by a matching is the set of invariant angle assignments
whose opposite-angle sum at every edge stays below pi.  Strict inequalities
are handled by slack maximization: the interior point reported by
``analyze`` maximizes the least slack, solved by a small dense two-phase
simplex with Bland's rule.  ``sample`` runs a hit-and-run walk inside the
equality-affine subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import homology, matching as matching_mod
from .angles import AngleAssignment, validate_angles
from .ribbon import Corner, TriRibbonGraph, other_side, require_valid


def opposite_corner(graph: TriRibbonGraph, h) -> Corner:
    """The corner of face h[0] opposite the edge of ``h`` (slot + 1)."""
    return (h[0], (h[1] + 1) % 3)


def delaunay_sum(graph: TriRibbonGraph, theta: AngleAssignment, edge: str) -> float:
    """Sum of the two angles opposite ``edge``."""
    occ = graph.occurrences(edge)
    if len(occ) != 2:
        raise KeyError(f"unknown or malformed edge {edge!r}")
    return sum(theta[opposite_corner(graph, h)] for h in occ)


def in_delaunay_region(graph: TriRibbonGraph, theta: AngleAssignment, tol: float = 1e-9) -> bool:
    validate_angles(graph, theta)
    return all(delaunay_sum(graph, theta, e) < math.pi - tol for e in graph.edges)


@dataclass
class RegionPolytope:
    corners: list[Corner]
    # equalities: sparse integer rows ax = b
    eq_rows: list[dict[Corner, float]]
    eq_rhs: list[float]
    # strict inequalities: rows with ax < b, slack b - ax to be kept positive
    ineq_rows: list[dict[Corner, float]]
    ineq_rhs: list[float]
    ineq_labels: list[str] = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.corners)

    def slack(self, theta: AngleAssignment) -> float:
        """Least inequality slack of a point (negative when violated)."""
        return min(
            b - sum(c * theta[k] for k, c in row.items())
            for row, b in zip(self.ineq_rows, self.ineq_rhs)
        )

    def equality_residual(self, theta: AngleAssignment) -> float:
        return max(
            abs(sum(c * theta[k] for k, c in row.items()) - b)
            for row, b in zip(self.eq_rows, self.eq_rhs)
        )


def build_polytope(
    graph: TriRibbonGraph,
    iota: matching_mod.TriangleMatching,
    include_delaunay: bool = True,
) -> RegionPolytope:
    """Constraint system over corner variables for a verified matching."""
    space = matching_mod.invariant_space(graph, iota)
    corners = space.corners
    eq_rows: list[dict] = [dict(r) for r in space.face_sum_rows]
    eq_rhs = [math.pi] * len(space.face_sum_rows)
    eq_rows += [dict(r) for r in space.orbit_rows]
    eq_rhs += [0.0] * len(space.orbit_rows)

    ineq_rows: list[dict] = []
    ineq_rhs: list[float] = []
    labels: list[str] = []
    for c in corners:  # theta(a) > 0  <=>  -theta(a) < 0
        ineq_rows.append({c: -1.0})
        ineq_rhs.append(0.0)
        labels.append(f"positivity {c[0]}/{c[1]}")
    if include_delaunay:
        for e in graph.edges:
            row: dict[Corner, float] = {}
            for h in graph.occurrences(e):
                opp = opposite_corner(graph, h)
                row[opp] = row.get(opp, 0.0) + 1.0
            ineq_rows.append(row)
            ineq_rhs.append(math.pi)
            labels.append(f"delaunay {e}")
    return RegionPolytope(corners, eq_rows, eq_rhs, ineq_rows, ineq_rhs, labels)


# ---------------------------------------------------------------------------
# dense two-phase simplex (Bland's rule), standard form: max c.x, Ax = b, x >= 0


def _simplex_standard(A: np.ndarray, b: np.ndarray, c: np.ndarray):
    m, n = A.shape
    A = A.copy()
    b = b.copy()
    for i in range(m):
        if b[i] < 0:
            A[i] *= -1.0
            b[i] *= -1.0
    # phase 1: artificials
    T = np.hstack([A, np.eye(m)])
    cost = np.concatenate([np.zeros(n), -np.ones(m)])
    basis = list(range(n, n + m))
    x = _simplex_core(T, b, cost, basis)
    if x is None or sum(x[n:]) > 1e-7:
        return None, None
    # drive artificials out of the basis where possible, then phase 2
    T2 = A
    cost2 = c
    basis2 = []
    for i, j in enumerate(basis):
        if j < n:
            basis2.append(j)
        else:
            row = T[i, :n]
            nz = np.flatnonzero(np.abs(row) > 1e-9)
            basis2.append(int(nz[0]) if len(nz) else -1)
    if -1 in basis2 or len(set(basis2)) != m:
        # degenerate rows: rebuild a basis greedily from scratch
        return _simplex_bigM(A, b, c)
    x = _simplex_core(T2, b, cost2, basis2)
    if x is None:
        return None, None
    return x, float(c @ x)


def _simplex_bigM(A: np.ndarray, b: np.ndarray, c: np.ndarray):
    m, n = A.shape
    M = 1e7 * (1.0 + np.abs(c).max())
    T = np.hstack([A, np.eye(m)])
    cost = np.concatenate([c, -M * np.ones(m)])
    basis = list(range(n, n + m))
    x = _simplex_core(T, b, cost, basis)
    if x is None or np.abs(x[n:]).sum() > 1e-6:
        return None, None
    return x[:n], float(c @ x[:n])


def _simplex_core(A: np.ndarray, b: np.ndarray, c: np.ndarray, basis: list[int]):
    """Revised simplex on a tableau copy; Bland's rule; returns x or None."""
    m, n = A.shape
    T = np.hstack([A.astype(float), b.astype(float).reshape(-1, 1)])
    # normalize to the given basis
    for i, j in enumerate(basis):
        piv = T[i, j]
        if abs(piv) < 1e-12:
            k = next(r for r in range(i, m) if abs(T[r, j]) > 1e-12)
            T[[i, k]] = T[[k, i]]
            piv = T[i, j]
        T[i] /= piv
        for r in range(m):
            if r != i and abs(T[r, j]) > 1e-14:
                T[r] -= T[r, j] * T[i]
    for _ in range(200000):
        z = c.copy().astype(float)
        for i, j in enumerate(basis):
            z -= c[j] * T[i, :n]
        entering = -1
        for j in range(n):
            if j not in basis and z[j] > 1e-9:
                entering = j
                break  # Bland: least index
        if entering < 0:
            x = np.zeros(n)
            for i, j in enumerate(basis):
                x[j] = T[i, n]
            return x
        ratios = []
        for i in range(m):
            if T[i, entering] > 1e-12:
                ratios.append((T[i, n] / T[i, entering], basis[i], i))
        if not ratios:
            return None  # unbounded
        _, _, leave_row = min(ratios, key=lambda t: (t[0], t[1]))
        piv = T[leave_row, entering]
        T[leave_row] /= piv
        for r in range(m):
            if r != leave_row and abs(T[r, entering]) > 1e-14:
                T[r] -= T[r, entering] * T[leave_row]
        basis[leave_row] = entering
    raise RuntimeError("simplex failed to terminate")


@dataclass
class RegionReport:
    feasible: bool
    slack: float
    interior_point: AngleAssignment | None
    dimension: int | None


def analyze(polytope: RegionPolytope) -> RegionReport:
    """Maximize the least inequality slack subject to the equalities.

    Feasible (with interior) iff the optimum slack is positive; the affine
    dimension is the variable count minus the exact rank of the equalities.
    """
    corners = polytope.corners
    cidx = {c: i for i, c in enumerate(corners)}
    nv = len(corners)
    n_ineq = len(polytope.ineq_rows)
    # variables: theta (nv), t, ineq slacks (n_ineq)
    n = nv + 1 + n_ineq
    rows = []
    rhs = []
    for row, b in zip(polytope.eq_rows, polytope.eq_rhs):
        r = np.zeros(n)
        for k, v in row.items():
            r[cidx[k]] += v
        rows.append(r)
        rhs.append(b)
    for i, (row, b) in enumerate(zip(polytope.ineq_rows, polytope.ineq_rhs)):
        r = np.zeros(n)
        for k, v in row.items():
            r[cidx[k]] += v
        r[nv] = 1.0  # a.x + t + s = b
        r[nv + 1 + i] = 1.0
        rows.append(r)
        rhs.append(b)
    A = np.array(rows)
    bvec = np.array(rhs)
    c = np.zeros(n)
    c[nv] = 1.0
    x, opt = _simplex_standard(A, bvec, c)
    dim = None
    if x is not None:
        int_rows = [{k: int(round(v)) for k, v in row.items()} for row in polytope.eq_rows]
        rank = matching_mod._integer_rank(int_rows, corners)
        dim = nv - rank
    if x is None:
        return RegionReport(False, float("-inf"), None, None)
    theta = {c_: float(x[cidx[c_]]) for c_ in corners}
    slack = float(opt)
    return RegionReport(slack > 0, slack, theta if slack > 0 else None, dim)


def sample(
    polytope: RegionPolytope,
    n: int,
    seed: int = 0,
    burn_in_per_dim: int = 50,
    stride: int = 10,
    margin: float = 1e-9,
) -> list[AngleAssignment]:
    """Hit-and-run samples from the interior, deterministic per seed.

    The walk lives in the affine subspace of the equalities; every returned
    point satisfies all strict inequalities with slack at least ``margin``.
    """
    if n == 0:
        return []
    report = analyze(polytope)
    if not report.feasible:
        raise ValueError("cannot sample from an infeasible polytope")
    corners = polytope.corners
    cidx = {c: i for i, c in enumerate(corners)}
    nv = len(corners)
    E = np.zeros((len(polytope.eq_rows), nv))
    for i, row in enumerate(polytope.eq_rows):
        for k, v in row.items():
            E[i, cidx[k]] += v
    # orthonormal nullspace basis of the equality matrix
    _, s, vt = np.linalg.svd(E)
    rank = int((s > 1e-10 * max(1.0, s[0] if len(s) else 1.0)).sum())
    N = vt[rank:].T  # nv x dim
    dim = N.shape[1]
    if dim == 0:
        return [dict(report.interior_point) for _ in range(n)]
    G = np.zeros((len(polytope.ineq_rows), nv))
    gb = np.array(polytope.ineq_rhs, dtype=float)
    for i, row in enumerate(polytope.ineq_rows):
        for k, v in row.items():
            G[i, cidx[k]] += v
    GN = G @ N

    rng = np.random.default_rng(seed)
    x = np.array([report.interior_point[c] for c in corners])
    out = []
    total_steps = burn_in_per_dim * dim + stride * n
    kept = 0
    for step in range(total_steps):
        d = rng.standard_normal(dim)
        d /= np.linalg.norm(d)
        direction = N @ d
        g_dir = GN @ d
        g_val = G @ x
        lo, hi = -np.inf, np.inf
        for gd, room in zip(g_dir, gb - margin - g_val):
            if gd > 1e-14:
                hi = min(hi, room / gd)
            elif gd < -1e-14:
                lo = max(lo, room / gd)
        if not (lo < hi):
            continue
        t = rng.uniform(lo, hi)
        x = x + t * direction
        if step >= burn_in_per_dim * dim and (step - burn_in_per_dim * dim) % stride == stride - 1:
            theta = {c: float(x[cidx[c]]) for c in corners}
            out.append(theta)
            kept += 1
            if kept >= n:
                break
    return out


# ---------------------------------------------------------------------------
# planar in-circle cross-check


def _incircle_det(a: complex, b: complex, c: complex, d: complex) -> float:
    """Positive iff d is inside the circumcircle of ccw triangle abc."""
    rows = []
    for p in (a, b, c):
        q = p - d
        rows.append([q.real, q.imag, q.real * q.real + q.imag * q.imag])
    m = np.array(rows)
    return float(np.linalg.det(m))


def _angle_at(p: complex, q: complex, r: complex) -> float:
    """Unsigned angle at p between segments pq and pr."""
    u, v = q - p, r - p
    return abs(math.atan2((u.conjugate() * v).imag, (u.conjugate() * v).real))


def circumcircle_cross_check(
    quad: tuple[complex, complex, complex, complex],
    tol: float = 1e-9,
) -> dict:
    """Agreement of the in-circle predicate with the opposite-angle criterion.

    ``quad`` is (A, B, C, D): triangle ABC counterclockwise sharing edge BC
    with the point D on the other side of line BC.  Near-degenerate cases
    (both indicators inside ``tol``) are flagged instead of judged.
    """
    a, b, c, d = quad
    angle_sum = _angle_at(a, b, c) + _angle_at(d, c, b)
    det = _incircle_det(a, b, c, d)
    scale = max(abs(b - a), abs(c - a), abs(d - a)) ** 4
    degenerate = abs(det) < tol * max(scale, 1.0) and abs(math.pi - angle_sum) < tol
    outside = det < 0
    return {
        "degenerate": degenerate,
        "in_circle_outside": outside,
        "angle_sum": angle_sum,
        "agree": degenerate or (outside == (angle_sum < math.pi)),
    }
