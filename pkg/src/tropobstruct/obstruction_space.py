"""The dual obstruction space ``H`` and the compatible-numbering solver.

Each bouquet is cut at its vertices that have three loop edges. The pieces
(segments) carry one covector each, annihilating the directions of the
segment. Along a segment the flag values alternate in sign: the flag of an
edge nearer the segment start gets ``+u`` and the far flag gets ``-u``.
At every cut vertex the incident flag values must sum to zero.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from . import exact_linalg as xl
from .curve_model import (
    BouquetDecomposition,
    TropicalCurve,
    assumption_a_violations,
    bouquet_decomposition,
)
from .errors import AssumptionAViolated, NotTrivalent


@dataclass(frozen=True)
class Segment:
    """A piece of a bouquet between cut vertices.

    ``edges`` is ordered from ``start`` to ``end``; ``orient[i]`` is +1 when
    ``edges[i]`` is traversed from ``ends[0]`` to ``ends[1]``. For a closed
    segment (a bouquet that is a single cycle) ``start == end``.
    """

    index: int
    bouquet: int
    edges: Tuple[str, ...]
    orient: Tuple[int, ...]
    vertices: Tuple[str, ...]
    start: str
    end: str
    closed: bool
    span: Tuple[Tuple[int, ...], ...]
    perp: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SegmentDecomposition:
    segments: Tuple[Segment, ...]
    cut_vertices: Tuple[str, ...]

    def segment_of_edge(self) -> Dict[str, int]:
        return {e: s.index for s in self.segments for e in s.edges}

    def segment_of_vertex(self, v: str) -> Optional[int]:
        """Segment containing ``v`` in its interior (``None`` for cut vertices)."""
        for s in self.segments:
            if v in s.vertices[1:-1] or (s.closed and v in s.vertices):
                return s.index
        return None


def segment_decomposition(curve: TropicalCurve, dec: BouquetDecomposition = None) -> SegmentDecomposition:
    dec = dec or bouquet_decomposition(curve)
    n = curve.ambient_rank
    ldeg = defaultdict(list)
    for eid in dec.loops:
        for v in curve.edges[eid].ends:
            ldeg[v].append(eid)
    cuts = sorted(v for v, es in ldeg.items() if len(es) >= 3)
    cutset = set(cuts)
    used = set()
    segments = []

    def walk(start, first):
        edges, orient, verts = [], [], [start]
        v, eid = start, first
        while True:
            e = curve.edges[eid]
            used.add(eid)
            edges.append(eid)
            orient.append(1 if e.ends[0] == v else -1)
            v = e.other_end(v)
            verts.append(v)
            if v in cutset or v == start:
                return edges, orient, verts
            nxt = [x for x in ldeg[v] if x != eid and x not in used]
            if not nxt:
                return edges, orient, verts
            eid = nxt[0]

    b_of = {v: i for i, b in enumerate(dec.bouquets) for v in b.vertices}
    raw = []
    for c in cuts:
        for eid in sorted(ldeg[c]):
            if eid in used:
                continue
            raw.append(walk(c, eid))
    for b in dec.bouquets:
        if any(eid not in used for eid in b.edges):
            start = min(b.vertices)
            first = sorted(x for x in ldeg[start] if x not in used)[0]
            raw.append(walk(start, first))
    raw.sort(key=lambda r: (b_of[r[2][0]], sorted(r[0])))
    for k, (edges, orient, verts) in enumerate(raw):
        span = [curve.edges[e].direction for e in edges]
        basis = xl.hermite_normal_form(xl.saturation(span, n), n)
        perp = xl.annihilator_basis(span, n)
        segments.append(
            Segment(
                k, b_of[verts[0]], tuple(edges), tuple(orient), tuple(verts),
                verts[0], verts[-1], verts[0] == verts[-1] and verts[0] not in cutset,
                tuple(basis), tuple(perp),
            )
        )
    return SegmentDecomposition(tuple(segments), tuple(cuts))


@dataclass(frozen=True)
class ObstructionBasis:
    """Basis of ``H``: each element assigns a covector to every segment.

    ``vectors[j][m]`` is the covector on segment ``m`` for basis element
    ``j``. ``global_covectors`` is filled when every element is constant
    across segments (always the case in genus one).
    """

    ambient_rank: int
    decomposition: SegmentDecomposition
    vectors: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def global_covectors(self):
        out = []
        for vec in self.vectors:
            vals = {u for u in vec}
            if len(vals) != 1:
                return None
            out.append(vec[0])
        return out

    def combine(self, coeffs: Sequence) -> Tuple[Tuple[Fraction, ...], ...]:
        """Rational combination ``sum c_j a_j`` as per-segment covectors."""
        n = self.ambient_rank
        m = len(self.decomposition.segments)
        out = [[Fraction(0)] * n for _ in range(m)]
        for c, vec in zip(coeffs, self.vectors):
            c = Fraction(c)
            for s in range(m):
                for i in range(n):
                    out[s][i] += c * vec[s][i]
        return tuple(tuple(r) for r in out)

    def flag_values(self, element) -> Dict[Tuple[str, str], Tuple]:
        """Flag-level values of an element given per segment."""
        vals = {}
        for seg in self.decomposition.segments:
            u = element[seg.index]
            for eid, o in zip(seg.edges, seg.orient):
                near, far = (0, 1) if o == 1 else (1, 0)
                vals[(eid, near)] = tuple(u)
                vals[(eid, far)] = tuple(-x for x in u)
        return vals


def _require_a(curve):
    bad = assumption_a_violations(curve)
    if bad:
        raise AssumptionAViolated("Assumption A fails", clause=bad[0]["clause"], witness=bad[0])


def dual_obstruction_basis(curve: TropicalCurve, check: bool = True) -> ObstructionBasis:
    """Compute ``H`` over the rationals.

    Unknowns are coordinates of each segment covector in an integral basis
    of the segment's annihilator; the equations are the vertex sums at cut
    vertices.
    """
    if check:
        _require_a(curve)
    n = curve.ambient_rank
    sd = segment_decomposition(curve)
    offsets = []
    total = 0
    for s in sd.segments:
        offsets.append(total)
        total += len(s.perp)
    rows = []
    for c in sd.cut_vertices:
        eq = [[Fraction(0)] * total for _ in range(n)]
        for s in sd.segments:
            sign = 0
            if s.start == c:
                sign += 1
            if s.end == c:
                sign -= 1
            if sign == 0:
                continue
            for j, phi in enumerate(s.perp):
                for i in range(n):
                    eq[i][offsets[s.index] + j] += sign * phi[i]
        rows.extend(eq)
    if total == 0:
        return ObstructionBasis(n, sd, ())
    kern = xl.kernel_basis(rows, total) if rows else [
        tuple(1 if i == j else 0 for j in range(total)) for i in range(total)
    ]
    vectors = []
    for k in kern:
        per_seg = []
        for s in sd.segments:
            u = [0] * n
            for j, phi in enumerate(s.perp):
                c = k[offsets[s.index] + j]
                u = [a + c * b for a, b in zip(u, phi)]
            per_seg.append(tuple(u))
        vectors.append(tuple(per_seg))
    vectors = _normalize_basis(vectors, n)
    return ObstructionBasis(n, sd, tuple(vectors))


def _normalize_basis(vectors, n):
    """Echelon-reduce the flattened basis so output is independent of solver order."""
    if not vectors:
        return []
    flat = [tuple(x for seg in v for x in seg) for v in vectors]
    R, _ = xl.rref(flat, len(flat[0]))
    m = len(vectors[0])
    out = []
    for row in R:
        ints = xl.clear_denominators(row)
        out.append(tuple(tuple(ints[s * n:(s + 1) * n]) for s in range(m)))
    return out


def obstruction_dimension(curve: TropicalCurve) -> int:
    return dual_obstruction_basis(curve).dimension


@dataclass(frozen=True)
class SupportSet:
    segments: Tuple[int, ...]
    edges: Tuple[str, ...]
    closed: bool


def support_of(basis: ObstructionBasis, element, curve: TropicalCurve = None) -> SupportSet:
    """Segments on which ``element`` is nonzero.

    ``element`` is either a per-segment covector tuple or a coefficient
    vector in the basis. The loop-closure property (no vertex with exactly
    one incident support edge) is checked and reported in ``closed``.
    """
    sd = basis.decomposition
    if element and not isinstance(element[0], (tuple, list)):
        element = basis.combine(element)
    segs = tuple(s.index for s in sd.segments if any(element[s.index]))
    edges = tuple(sorted(e for i in segs for e in sd.segments[i].edges))
    closed = True
    if curve is not None:
        count = defaultdict(int)
        for e in edges:
            for v in curve.edges[e].ends:
                count[v] += 1
        closed = all(c != 1 for c in count.values())
    return SupportSet(segs, edges, closed)


# ---------------------------------------------------------------------------
# compatible numberings


@dataclass(frozen=True)
class AbstractGraph:
    """A graph with bounded edges (pairs, repeats allowed) and unbounded legs."""

    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    legs: Dict[str, int]


def _as_abstract(obj) -> AbstractGraph:
    if isinstance(obj, AbstractGraph):
        return obj
    if isinstance(obj, TropicalCurve):
        legs = defaultdict(int)
        for e in obj.unbounded_edges:
            legs[e.ends[0]] += 1
        return AbstractGraph(
            tuple(obj.vertices), tuple(e.ends for e in obj.bounded_edges), dict(legs)
        )
    raise TypeError("expected a TropicalCurve or AbstractGraph")


def compatible_numbering_dim(graph) -> int:
    """Dimension of the space of compatible scalar numberings of the flags.

    Rules: at a vertex with fewer than two bounded edges every flag is 0; at
    a vertex with two bounded edges the leg flag is 0; at every vertex the
    three values sum to zero; on every bounded edge the two flag values sum
    to zero.
    """
    g = _as_abstract(graph)
    deg = defaultdict(int)
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    for v in g.vertices:
        if deg[v] + g.legs.get(v, 0) != 3:
            raise NotTrivalent("vertex is not trivalent", vertex=v, valence=deg[v] + g.legs.get(v, 0))
    # flag variables: two per bounded edge, one per leg
    var = {}
    for k, (a, b) in enumerate(g.edges):
        var[("e", k, 0)] = len(var)
        var[("e", k, 1)] = len(var)
    for v in g.vertices:
        for j in range(g.legs.get(v, 0)):
            var[("l", v, j)] = len(var)
    N = len(var)
    rows = []

    def row(entries):
        r = [0] * N
        for key, c in entries:
            r[var[key]] += c
        rows.append(r)

    at = defaultdict(list)
    for k, (a, b) in enumerate(g.edges):
        at[a].append(("e", k, 0))
        at[b].append(("e", k, 1))
        row([(("e", k, 0), 1), (("e", k, 1), 1)])
    for v in g.vertices:
        legs = [("l", v, j) for j in range(g.legs.get(v, 0))]
        s = len(at[v])
        if s <= 1:
            for key in at[v] + legs:
                row([(key, 1)])
        elif s == 2:
            for key in legs:
                row([(key, 1)])
        row([(key, 1) for key in at[v] + legs])
    if N == 0:
        return 0
    return N - xl.rank(rows, N)
