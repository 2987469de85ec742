"""Angle assignments and the combinatorial holonomy homomorphisms.

An angle assignment maps each corner (face, slot) to a value in (0, pi),
with the three corners of every face summing to pi.  Holonomy of a cycle
is the product over its corner decomposition of a rotation factor
exp(i * theta) and a dilation factor given by a ratio of sines; we
accumulate the phase as a real sum and the dilation in log space.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import homology
from .ribbon import Corner, TriRibbonGraph, he_key, parse_he_key

AngleAssignment = dict[Corner, float]

FACE_SUM_TOL = 1e-12


class InvalidAnglesError(ValueError):
    pass


def validate_angles(graph: TriRibbonGraph, theta: AngleAssignment) -> None:
    for f, _ in graph.faces:
        vals = [theta.get((f, s)) for s in range(3)]
        if any(v is None for v in vals):
            raise InvalidAnglesError(f"missing corner of face {f!r}")
        if any(not (0.0 < v < math.pi) for v in vals):
            raise InvalidAnglesError(f"corner of face {f!r} outside (0, pi): {vals}")
        if abs(sum(vals) - math.pi) > FACE_SUM_TOL:
            raise InvalidAnglesError(
                f"face {f!r} angles sum to {sum(vals)!r}, expected pi"
            )


def angles_to_json(theta: AngleAssignment) -> dict:
    return {he_key(c): v for c, v in sorted(theta.items())}


def angles_from_json(data: dict) -> AngleAssignment:
    return {parse_he_key(k): float(v) for k, v in data.items()}


def constant_angles(graph: TriRibbonGraph, value: float = math.pi / 3) -> AngleAssignment:
    return {c: value for c in graph.corners()}


@dataclass(frozen=True)
class HolonomyValue:
    log_modulus: float
    phase: float  # radians, not reduced

    @property
    def modulus(self) -> float:
        return math.exp(self.log_modulus)

    @property
    def value(self) -> complex:
        return cmath.rect(self.modulus, self.phase)

    def distance_to_one(self) -> float:
        return abs(self.value - 1.0)


def _phase_sum(theta: AngleAssignment, a: homology.AngleChain) -> float:
    return sum(coeff * theta[c] for c, coeff in a.items())


def _log_dilation_sum(theta: AngleAssignment, a: homology.AngleChain) -> float:
    total = 0.0
    for (f, slot), coeff in a.items():
        num = math.sin(theta[(f, (slot + 1) % 3)])
        den = math.sin(theta[(f, (slot + 2) % 3)])
        total += coeff * (math.log(num) - math.log(den))
    return total


def rotational(theta: AngleAssignment, a: homology.AngleChain) -> complex:
    """Unit complex exp(i * theta(a)), with theta extended linearly."""
    return cmath.rect(1.0, _phase_sum(theta, a))


def dilational(theta: AngleAssignment, a: homology.AngleChain) -> float:
    """Multiplicative extension of the opposite-sine ratio over the chain.

    On a single corner at slot s of face f this is
    sin(theta at slot s+1) / sin(theta at slot s+2).
    """
    return math.exp(_log_dilation_sum(theta, a))


def holonomy(graph: TriRibbonGraph, theta: AngleAssignment, cycle: homology.Chain1) -> HolonomyValue:
    """Total holonomy of a cycle: dilation times rotation of its corner chain."""
    a = homology.phi(graph, cycle)
    return HolonomyValue(_log_dilation_sum(theta, a), _phase_sum(theta, a))


def is_trivial_holonomy(
    graph: TriRibbonGraph,
    theta: AngleAssignment,
    basis: list[homology.Chain1] | None = None,
    tol: float = 1e-9,
) -> bool:
    """True iff holonomy is within ``tol`` of 1 on every basis cycle."""
    if basis is None:
        basis = homology.cycle_basis(graph)
    return all(holonomy(graph, theta, alpha).distance_to_one() < tol for alpha in basis)
