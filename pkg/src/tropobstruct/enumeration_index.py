"""Affine constraints, incidence factors and lattice-index multiplicities.

The multiplicity of a marked curve is the index of the image of the
integral map

    Map(vertices, N) -> prod_bounded N/Zu_E x prod_i N/sat(Qu_i + L(A_i)) x Z^k

in its saturation, where the last factor collects differences of path
lengths of tied closest vertices (one per basis element of ``H`` that is
not absorbed by a four-valent exceptional vertex). For non-superabundant
curves the target has the same rank as the source and this is the usual
absolute determinant.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from . import exact_linalg as xl
from .curve_model import TropicalCurve, genus
from .errors import ConstraintMismatch, DegenerateDirection, NotGeneric, RankMismatch
from .moduli_space import expected_dimension
from .well_spacedness import Verdict, smoothability_verdict


@dataclass(frozen=True)
class AffineConstraint:
    """``point + span_Q(directions)``; directions are integral."""

    point: Tuple[Fraction, ...]
    directions: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(Fraction(x) for x in self.point))
        object.__setattr__(self, "directions", tuple(tuple(int(x) for x in d) for d in self.directions))
        n = len(self.point)
        if any(len(d) != n for d in self.directions):
            raise ConstraintMismatch("direction length differs from the point", ambient=n)

    @property
    def ambient_rank(self) -> int:
        return len(self.point)

    @property
    def dimension(self) -> int:
        return xl.rank(self.directions, self.ambient_rank) if self.directions else 0

    @property
    def codimension(self) -> int:
        """``d`` with ``dim A = n - d - 1``."""
        return self.ambient_rank - self.dimension - 1

    def lattice(self) -> List[Tuple[int, ...]]:
        """``L(A)`` intersected with the integer lattice."""
        return xl.saturation(list(self.directions), self.ambient_rank) if self.directions else []


@dataclass(frozen=True)
class ConstraintSet:
    constraints: Tuple[AffineConstraint, ...]

    @property
    def codimensions(self) -> Tuple[int, ...]:
        return tuple(a.codimension for a in self.constraints)

    def __len__(self):
        return len(self.constraints)

    def __getitem__(self, i):
        return self.constraints[i]


def constraint_set(curve: TropicalCurve, constraints: Sequence[AffineConstraint], check_total: bool = True) -> ConstraintSet:
    """Align constraints with the curve's markings.

    Raises:
        ConstraintMismatch: wrong count, wrong ambient rank, a negative
            codimension, or (with ``check_total``) a total codimension
            different from the expected dimension.
    """
    cs = ConstraintSet(tuple(constraints))
    if len(cs) != len(curve.markings):
        raise ConstraintMismatch("one constraint per marking is required", markings=len(curve.markings), constraints=len(cs))
    for i, a in enumerate(cs.constraints):
        if a.ambient_rank != curve.ambient_rank:
            raise ConstraintMismatch("constraint lives in another ambient space", index=i)
        if a.codimension < 0:
            raise ConstraintMismatch("constraint spans the whole space", index=i)
    if check_total and sum(cs.codimensions) != expected_dimension(curve):
        raise ConstraintMismatch(
            "total codimension differs from the expected dimension",
            total=sum(cs.codimensions), expected=expected_dimension(curve),
        )
    return cs


def transform_constraints(cs: ConstraintSet, T, t=None) -> ConstraintSet:
    """Apply ``x -> T x + t`` to every constraint."""
    out = []
    for a in cs.constraints:
        p = xl.mat_vec(T, a.point)
        if t is not None:
            p = xl.vec_add(p, t)
        out.append(AffineConstraint(p, tuple(tuple(int(x) for x in xl.mat_vec(T, d)) for d in a.directions)))
    return ConstraintSet(tuple(out))


# ---------------------------------------------------------------------------
# matching


@dataclass(frozen=True)
class MatchResult:
    matched: bool
    points: Tuple[Optional[Tuple[Fraction, ...]], ...]


def _edge_meets(curve, eid, a: AffineConstraint):
    """A point of ``h(E) ∩ A`` or ``None``."""
    e = curve.edges[eid]
    n = curve.ambient_rank
    p = curve.vertices[e.ends[0]]
    if e.contracted:
        u = (0,) * n
        T = Fraction(0)
    else:
        u = e.direction
        T = e.length if e.bounded else None
    L = a.lattice()
    rhs = xl.vec_sub(a.point, p)
    if not any(u) or xl.in_span(u, L, n):
        ok = xl.in_span(rhs, L, n) if L else not any(rhs)
        return tuple(p) if ok else None
    cols = [u] + list(L)
    M = [[c[i] for c in cols] for i in range(n)]
    sol = xl.solve(M, rhs, len(cols))
    if sol is None:
        return None
    t = sol[0]
    if t < 0 or (T is not None and t > T):
        return None
    return tuple(Fraction(x) + t * y for x, y in zip(p, u))


def match_constraints(curve: TropicalCurve, constraints) -> MatchResult:
    """Decide whether each marked edge meets its constraint, with witness points."""
    cs = constraints if isinstance(constraints, ConstraintSet) else ConstraintSet(tuple(constraints))
    if len(cs) != len(curve.markings):
        raise ConstraintMismatch("one constraint per marking is required", markings=len(curve.markings), constraints=len(cs))
    pts = tuple(_edge_meets(curve, eid, a) for eid, a in zip(curve.markings, cs.constraints))
    return MatchResult(all(p is not None for p in pts), pts)


# ---------------------------------------------------------------------------
# incidence factors


def delta_factor(curve: TropicalCurve, i: int, constraints) -> int:
    """``w(E_i) [ sat(Qu + L(A_i)) : Zu + L(A_i) ∩ Z^n ]``.

    Raises:
        DegenerateDirection: if the edge direction lies in ``L(A_i)``.
    """
    cs = constraints if isinstance(constraints, ConstraintSet) else ConstraintSet(tuple(constraints))
    n = curve.ambient_rank
    e = curve.edges[curve.markings[i]]
    u = e.direction
    L = cs[i].lattice()
    if u is None or (L and xl.in_span(u, L, n)):
        raise DegenerateDirection("marked edge is not transverse to its constraint", index=i, edge=e.id)
    sub = [u] + L
    return e.weight * xl.lattice_index(sub, xl.saturation(sub, n), n)


# ---------------------------------------------------------------------------
# the index map


@dataclass(frozen=True)
class IndexMap:
    """Rows of the assembled integral map, grouped by source."""

    columns: int
    edge_rows: Tuple[Tuple[int, ...], ...]
    marking_rows: Tuple[Tuple[int, ...], ...]
    length_rows: Tuple[Tuple[int, ...], ...]

    @property
    def rows(self):
        return self.edge_rows + self.marking_rows + self.length_rows


def _vertex_cols(curve):
    order = list(curve.vertices)
    n = curve.ambient_rank
    return {v: k * n for k, v in enumerate(order)}, n * len(order)


def _difference_row(curve, cols, N, a, b, phi, scale=1):
    n = curve.ambient_rank
    r = [Fraction(0)] * N
    for i in range(n):
        r[cols[b] + i] += scale * phi[i]
        r[cols[a] + i] -= scale * phi[i]
    return r


def _length_functional(u):
    """An integral covector taking the value 1 on the primitive vector ``u``."""
    n = len(u)
    acc, coeffs = 0, [0] * n
    for i, x in enumerate(u):
        if x == 0:
            continue
        s, t, acc = _egcd(acc, x)
        coeffs = [s * c for c in coeffs]
        coeffs[i] += t
    if acc < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t, old_r


def _path_length_row(curve, cols, N, vertex, pred):
    from .kuranishi_leading import path_to_loop

    row = [Fraction(0)] * N
    for eid in path_to_loop(curve, vertex, pred):
        e = curve.edges[eid]
        if e.contracted:
            continue
        a, b = e.ends
        phi = _length_functional(e.direction)
        r = _difference_row(curve, cols, N, a, b, phi, Fraction(1, e.weight))
        row = [x + y for x, y in zip(row, r)]
    return row


def index_map(curve: TropicalCurve, constraints, seed: int = None) -> IndexMap:
    """Assemble the integral map whose index is the multiplicity.

    Raises:
        NotGeneric: some basis element of ``H`` sees more than two tied
            closest vertices.
    """
    from .kuranishi_leading import _predecessors, adapted_steps
    from .curve_model import bouquet_decomposition

    cs = constraints if isinstance(constraints, ConstraintSet) else ConstraintSet(tuple(constraints))
    n = curve.ambient_rank
    cols, N = _vertex_cols(curve)
    edge_rows = []
    for e in curve.bounded_edges:
        a, b = e.ends
        phis = [tuple(int(i == j) for j in range(n)) for i in range(n)] if e.contracted else xl.annihilator_basis([e.direction], n)
        for phi in phis:
            edge_rows.append(tuple(int(x) for x in _difference_row(curve, cols, N, a, b, phi)))
    marking_rows = []
    for i, eid in enumerate(curve.markings):
        e = curve.edges[eid]
        sub = ([e.direction] if e.direction is not None else []) + cs[i].lattice()
        for phi in xl.annihilator_basis(sub, n) if sub else [tuple(int(k == j) for j in range(n)) for k in range(n)]:
            r = [0] * N
            for k in range(n):
                r[cols[e.ends[0]] + k] += phi[k]
            marking_rows.append(tuple(r))
    length_rows = []
    data = adapted_steps(curve, seed) if genus(curve) >= 1 else None
    if data is not None:
        steps, img, classes, dist, _ = data
        dec = bouquet_decomposition(curve)
        _, pred = _predecessors(curve, {v for b in dec.bouquets for v in b.vertices})
        for _, group, _ in steps:
            if len(group) <= 1:
                continue
            if len(group) > 2:
                raise NotGeneric("more than two closest vertices tie", vertices=list(group))
            reps = [min(img.vertices[iv].preimages, key=lambda x: (dist[x], x)) for iv in group]
            r1 = _path_length_row(curve, cols, N, reps[0], pred)
            r2 = _path_length_row(curve, cols, N, reps[1], pred)
            row = [x - y for x, y in zip(r1, r2)]
            den = lcm(*(x.denominator for x in row)) if row else 1
            length_rows.append(tuple(int(x * den) for x in row))
    return IndexMap(N, tuple(edge_rows), tuple(marking_rows), tuple(length_rows))


def lattice_multiplicity(curve: TropicalCurve, constraints, seed: int = None) -> int:
    """Index of the image of the assembled map in its saturation.

    Raises:
        RankMismatch: the map is not injective (constraints do not rigidify
            the curve); a kernel vector is attached as witness.
    """
    m = index_map(curve, constraints, seed)
    rows = list(m.rows)
    rk = xl.rank(rows, m.columns) if rows else 0
    if rk < m.columns:
        ker = xl.kernel_basis(rows, m.columns) if rows else [tuple(int(i == 0) for i in range(m.columns))]
        raise RankMismatch("assembled map is not injective", rank=rk, expected=m.columns, kernel=[list(ker[0])])
    inv = xl.smith_invariants(rows)
    out = 1
    for d in inv:
        out *= d
    return out


@dataclass(frozen=True)
class MultiplicityReport:
    lattice_index: int
    deltas: Tuple[int, ...]
    total_marked_weight: int

    @property
    def corrected(self) -> int:
        """``D * prod delta_i``."""
        out = self.lattice_index
        for d in self.deltas:
            out *= d
        return out

    @property
    def contribution(self) -> int:
        return self.total_marked_weight * self.corrected

    def to_dict(self):
        return {
            "lattice_index": self.lattice_index,
            "deltas": list(self.deltas),
            "corrected_index": self.corrected,
            "total_marked_weight": self.total_marked_weight,
            "contribution": self.contribution,
        }


def multiplicity_report(curve: TropicalCurve, constraints, seed: int = None) -> MultiplicityReport:
    from .curve_model import weights_summary

    D = lattice_multiplicity(curve, constraints, seed)
    deltas = tuple(delta_factor(curve, i, constraints) for i in range(len(curve.markings)))
    return MultiplicityReport(D, deltas, weights_summary(curve)["total_marked_weight"])


@dataclass(frozen=True)
class CountEntry:
    index: int
    contribution: int
    verdict: str
    reason: Optional[str]
    report: Optional[MultiplicityReport]

    def to_dict(self):
        return {
            "index": self.index,
            "contribution": self.contribution,
            "verdict": self.verdict,
            "reason": self.reason,
            "report": self.report.to_dict() if self.report else None,
        }


@dataclass(frozen=True)
class CountReport:
    total: int
    entries: Tuple[CountEntry, ...]

    def __int__(self):
        return self.total

    def to_dict(self):
        return {"total": self.total, "entries": [e.to_dict() for e in self.entries]}


def tropical_count(curves: Sequence[TropicalCurve], constraints, seed: int = None) -> CountReport:
    """Weighted count over a supplied list of marked curves.

    Curves that are not smoothable, or that do not meet the constraints,
    contribute zero and are listed with the reason.
    """
    entries = []
    total = 0
    for k, curve in enumerate(curves):
        verdict = smoothability_verdict(curve, seed).verdict
        if verdict != Verdict.SMOOTHABLE:
            entries.append(CountEntry(k, 0, verdict.value, "not smoothable", None))
            continue
        if not match_constraints(curve, constraints).matched:
            entries.append(CountEntry(k, 0, verdict.value, "does not match the constraints", None))
            continue
        rep = multiplicity_report(curve, constraints, seed)
        entries.append(CountEntry(k, rep.contribution, verdict.value, None, rep))
        total += rep.contribution
    return CountReport(total, tuple(entries))


def generic_constraints(curve: TropicalCurve, codims: Sequence[int], seed: int = 0, attempts: int = 50) -> ConstraintSet:
    """Random constraints through points of the marked edges, with the given codimensions.

    Each constraint passes through a point in the relative interior of its
    marked edge (one unit out for unbounded edges) and has a random
    integral direction space. Draws are repeated until the assembled map
    is injective.

    Raises:
        RankMismatch: no injective draw was found.
    """
    n = curve.ambient_rank
    last = None
    for attempt in range(attempts):
        rng = random.Random(seed * 7919 + attempt)
        out = []
        for eid, d in zip(curve.markings, codims):
            e = curve.edges[eid]
            p = curve.vertices[e.ends[0]]
            if e.direction is not None:
                t = Fraction(1, 2) * (e.length if e.bounded else 2)
                p = tuple(Fraction(x) + t * y for x, y in zip(p, e.direction))
            dim = n - d - 1
            dirs = []
            while len(dirs) < dim:
                v = tuple(rng.randint(-3, 3) for _ in range(n))
                if any(v) and xl.rank(dirs + [v] + ([e.direction] if e.direction else []), n) == len(dirs) + 1 + (1 if e.direction else 0):
                    dirs.append(v)
            out.append(AffineConstraint(p, tuple(dirs)))
        cs = ConstraintSet(tuple(out))
        try:
            lattice_multiplicity(curve, cs)
            return cs
        except RankMismatch as err:
            last = err
    raise last
