"""Deformations of a fixed combinatorial type and superabundancy."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import exact_linalg as xl
from .curve_model import TropicalCurve, assumption_a_violations, genus


@dataclass(frozen=True)
class DeformationSpace:
    """Kernel of the edge-direction constraints on vertex displacements.

    Coordinates are ordered vertex by vertex (sorted ids), ``n`` per vertex.
    """

    vertex_order: Tuple[str, ...]
    ambient_rank: int
    basis: Tuple[Tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def constraint_rows(curve: TropicalCurve) -> List[Tuple[int, ...]]:
    n = curve.ambient_rank
    order = list(curve.vertices)
    idx = {v: k for k, v in enumerate(order)}
    N = n * len(order)
    rows = []
    for e in curve.bounded_edges:
        a, b = idx[e.ends[0]], idx[e.ends[1]]
        if e.contracted:
            phis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        else:
            phis = xl.annihilator_basis([e.direction], n)
        for phi in phis:
            r = [0] * N
            for i in range(n):
                r[b * n + i] += phi[i]
                r[a * n + i] -= phi[i]
            rows.append(tuple(r))
    return rows


def deformation_space(curve: TropicalCurve) -> DeformationSpace:
    n = curve.ambient_rank
    order = tuple(curve.vertices)
    rows = constraint_rows(curve)
    N = n * len(order)
    basis = xl.kernel_basis(rows, N) if rows else [
        tuple(1 if i == j else 0 for j in range(N)) for i in range(N)
    ]
    return DeformationSpace(order, n, tuple(basis))


def expected_dimension(curve: TropicalCurve) -> int:
    """``e + (n - 3)(1 - g)``."""
    e = len(curve.unbounded_edges)
    return e + (curve.ambient_rank - 3) * (1 - genus(curve))


@dataclass(frozen=True)
class SuperabundanceReport:
    expected_dim: int
    actual_dim: int
    obstruction_dim: Optional[int]
    superabundant: bool
    identity_checked: bool
    identity_holds: Optional[bool]

    def to_dict(self):
        return {
            "expected_dim": self.expected_dim,
            "actual_dim": self.actual_dim,
            "obstruction_dim": self.obstruction_dim,
            "superabundant": self.superabundant,
            "identity_checked": self.identity_checked,
            "identity_holds": self.identity_holds,
        }


def superabundance_report(curve: TropicalCurve) -> SuperabundanceReport:
    """Expected against actual dimension, plus ``dim H`` when defined.

    The identity ``actual - dim H = expected`` is checked when the curve
    satisfies Assumption A and nothing is contracted (trivalent image). A
    failure there is an internal inconsistency and raises ``AssertionError``.
    """
    from .obstruction_space import dual_obstruction_basis

    exp = expected_dimension(curve)
    act = deformation_space(curve).dimension
    sat_a = not assumption_a_violations(curve)
    hdim = dual_obstruction_basis(curve, check=False).dimension if sat_a else None
    checked = sat_a and not any(e.contracted for e in curve.bounded_edges)
    holds = None
    if checked:
        holds = act - hdim == exp
        if not holds:
            raise AssertionError(
                f"dimension identity violated: actual {act} - dim H {hdim} != expected {exp}"
            )
    return SuperabundanceReport(exp, act, hdim, act > exp, checked, holds)
