"""Path lengths, the loop slice, well-spacedness and the smoothability verdict.

Hyperplanes containing the loop are parametrized by nonzero elements of the
dual obstruction space. They are grouped into finitely many strata (flats of
the arrangement cut out by the conditions "this edge direction lies in the
hyperplane" and "this segment's covector vanishes"); every stratum is tested
at one generic rational point.
"""

import heapq
import math
import os
import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact_linalg as xl
from .curve_model import (
    TropicalCurve,
    _image_curve_unchecked,
    assumption_profile,
    bouquet_decomposition,
    complement_components,
    genus,
)
from .errors import NotAPath, ScopeError, StratificationError
from .obstruction_space import ObstructionBasis, dual_obstruction_basis

INF = math.inf
EXCEPTION_CLASSES = ("EXAMPLE1", "EXAMPLE2b")
DEFAULT_SEED = 1
MAX_FLATS = 4096
MAX_DRAWS = 64


def stratification_seed() -> int:
    """Seed for generic points; ``TROPIC_SEED`` overrides the default."""
    raw = os.environ.get("TROPIC_SEED")
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


# ---------------------------------------------------------------------------
# path lengths


def normalized_length(curve: TropicalCurve, eid: str) -> Fraction:
    """``r_E / w_E`` for a bounded edge (0 when contracted)."""
    e = curve.edges[eid]
    if not e.bounded:
        raise NotAPath("unbounded edge has no length", edge=eid)
    if e.contracted:
        return Fraction(0)
    return Fraction(e.length) / e.weight


def path_length(curve: TropicalCurve, path: Sequence[str]) -> Fraction:
    """Length of a path given by vertex ids.

    Consecutive vertices must be joined by a bounded edge or lie in the same
    contracted cluster. When several edges join them the smallest normalized
    length is used.

    Raises:
        NotAPath: if two consecutive vertices are not adjacent.
    """
    img = _image_curve_unchecked(curve)
    total = Fraction(0)
    for a, b in zip(path, path[1:]):
        for v in (a, b):
            if v not in curve.vertices:
                raise NotAPath("unknown vertex", vertex=v)
        if img.vertex_of[a] == img.vertex_of[b]:
            continue
        ca = set(img.vertices[img.vertex_of[a]].preimages)
        cb = set(img.vertices[img.vertex_of[b]].preimages)
        options = [
            normalized_length(curve, e.id)
            for e in curve.bounded_edges
            if not e.contracted and ({e.ends[0], e.ends[1]} & ca) and ({e.ends[0], e.ends[1]} & cb)
        ]
        if not options:
            raise NotAPath("vertices are not adjacent", start=a, end=b)
        total += min(options)
    return total


@dataclass(frozen=True)
class PathLengthTable:
    """Distances to the loops through the tree part.

    ``distances`` is keyed by image vertex; ``edge_lengths`` by edge id.
    ``integral`` records whether every integral length is a multiple of the
    weight (so all path lengths are integers).
    """

    distances: Dict[str, Fraction]
    edge_lengths: Dict[str, Fraction]
    integral: bool


def path_length_table(curve: TropicalCurve, dec=None) -> PathLengthTable:
    dec = dec or bouquet_decomposition(curve)
    img = _image_curve_unchecked(curve)
    edge_lengths = {e.id: normalized_length(curve, e.id) for e in curve.bounded_edges}
    integral = all(
        e.contracted or Fraction(e.length) % e.weight == 0 for e in curve.bounded_edges
    )
    sources = {v for b in dec.bouquets for v in b.vertices}
    dist = _dijkstra(curve, sources, edge_lengths)
    by_image = {}
    for v, d in dist.items():
        iv = img.vertex_of[v]
        if iv not in by_image or d < by_image[iv]:
            by_image[iv] = d
    return PathLengthTable(dict(sorted(by_image.items())), edge_lengths, integral)


def _dijkstra(curve, sources, edge_lengths):
    adj = defaultdict(list)
    for e in curve.bounded_edges:
        a, b = e.ends
        adj[a].append((b, edge_lengths[e.id]))
        adj[b].append((a, edge_lengths[e.id]))
    dist = {}
    heap = [(Fraction(0), v) for v in sorted(sources)]
    while heap:
        d, v = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        for w, l in adj[v]:
            if w not in dist:
                heapq.heappush(heap, (d + l, w))
    return dist


# ---------------------------------------------------------------------------
# the slice through the loop


@dataclass(frozen=True)
class GammaPrime:
    base_point: Tuple[Fraction, ...]
    direction_basis: Tuple[Tuple[int, ...], ...]
    vertices: Tuple[str, ...]
    edges: Tuple[str, ...]
    one_valent: Tuple[str, ...]

    @property
    def dimension(self) -> int:
        return len(self.direction_basis)


def gamma_prime(curve: TropicalCurve) -> GammaPrime:
    """Component of ``h(Gamma)`` inside the affine span of the loops containing them.

    Raises:
        ScopeError: for genus zero curves (there is no loop).
    """
    dec = bouquet_decomposition(curve)
    if not dec.bouquets:
        raise ScopeError("genus zero curve has no loop")
    n = curve.ambient_rank
    img = _image_curve_unchecked(curve)
    lverts = sorted({v for b in dec.bouquets for v in b.vertices})
    base = curve.vertices[lverts[0]]
    gens = [curve.edges[e].direction for e in dec.loops]
    gens += [xl.clear_denominators(xl.vec_sub(curve.vertices[v], base)) for v in lverts[1:]]
    gens = [g for g in gens if any(g)]
    basis = xl.hermite_normal_form(xl.saturation(gens, n), n) if gens else []
    start = sorted({img.vertex_of[v] for v in lverts})
    seen = set(start)
    used = set()
    stack = list(start)
    while stack:
        x = stack.pop()
        for e in img.incident(x):
            if not e.bounded or not xl.in_span(e.direction, basis, n):
                continue
            used.add(e.id)
            y = e.other_end(x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    for x in seen:
        for e in img.incident(x):
            if not e.bounded and xl.in_span(e.direction, basis, n):
                used.add(e.id)
    one_valent = sorted(
        x for x in seen
        if any(not xl.in_span(e.direction, basis, n) for e in img.incident(x))
    )
    return GammaPrime(tuple(base), tuple(basis), tuple(sorted(seen)), tuple(sorted(used)), tuple(one_valent))


# ---------------------------------------------------------------------------
# strata of hyperplanes


def _canon(d):
    d = tuple(d)
    for x in d:
        if x:
            return d if x > 0 else tuple(-y for y in d)
    return d


@dataclass(frozen=True)
class _Condition:
    label: Tuple
    rows: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Stratum:
    """A flat of the hyperplane arrangement together with a generic sample.

    ``flat`` is an echelon basis in coordinates relative to the basis of
    ``H``; ``sample`` is a generic integral point; ``covectors`` are the
    per-segment covectors of the sample.
    """

    flat: Tuple[Tuple[Fraction, ...], ...]
    sample: Tuple[int, ...]
    covectors: Tuple[Tuple[int, ...], ...]
    contained: Tuple[Tuple, ...]

    @property
    def dimension(self) -> int:
        return len(self.flat)


@dataclass
class _Context:
    curve: TropicalCurve
    dec: object
    basis: ObstructionBasis
    comps: List[Tuple[int, object]] = field(default_factory=list)
    conditions: List[_Condition] = field(default_factory=list)


def _context(curve: TropicalCurve, basis: ObstructionBasis = None) -> _Context:
    dec = bouquet_decomposition(curve)
    basis = basis or dual_obstruction_basis(curve)
    sd = basis.decomposition
    n = curve.ambient_rank
    ctx = _Context(curve, dec, basis)
    for comp in dec.complements:
        seg = sd.segment_of_vertex(comp.attachments[0]) if len(comp.attachments) == 1 else None
        ctx.comps.append((seg, comp))
    h = basis.dimension
    dirs_by_seg = defaultdict(set)
    for seg, comp in ctx.comps:
        if seg is None:
            continue
        for eid in comp.edges:
            e = curve.edges[eid]
            if e.direction is not None:
                dirs_by_seg[seg].add(_canon(e.direction))
    for s in sd.segments:
        for d in sorted(dirs_by_seg[s.index]):
            row = tuple(xl.dot(basis.vectors[j][s.index], d) for j in range(h))
            if any(row):
                ctx.conditions.append(_Condition(("edge", s.index, d), (row,)))
        rows = tuple(
            tuple(basis.vectors[j][s.index][k] for j in range(h)) for k in range(n)
        )
        rows = tuple(r for r in rows if any(r))
        if rows and len(sd.segments) > 1:
            ctx.conditions.append(_Condition(("segment", s.index), rows))
    return ctx


def _contains(cond: _Condition, flat) -> bool:
    return all(xl.dot(r, b) == 0 for r in cond.rows for b in flat)


def _intersect(flat, cond: _Condition, h: int):
    M = [[xl.dot(r, b) for b in flat] for r in cond.rows]
    ker = xl.kernel_basis(M, len(flat))
    out = []
    for k in ker:
        v = [Fraction(0)] * h
        for c, b in zip(k, flat):
            v = [x + c * y for x, y in zip(v, b)]
        out.append(v)
    if not out:
        return ()
    R, _ = xl.rref(out, h)
    return tuple(tuple(Fraction(x) for x in r) for r in R)


def _flats(ctx: _Context):
    h = ctx.basis.dimension
    if h == 0:
        return []
    top = tuple(tuple(Fraction(int(i == j)) for j in range(h)) for i in range(h))
    seen = {top}
    order = [top]
    queue = [top]
    while queue:
        nxt = []
        for F in queue:
            for cond in ctx.conditions:
                if _contains(cond, F):
                    continue
                G = _intersect(F, cond, h)
                if G and G not in seen:
                    seen.add(G)
                    order.append(G)
                    nxt.append(G)
                    if len(order) > MAX_FLATS:
                        raise StratificationError("too many strata", limit=MAX_FLATS)
        queue = nxt
    order.sort(key=lambda F: (-len(F), F))
    return order


def _generic_point(ctx: _Context, F, seed: int):
    h = ctx.basis.dimension
    avoid = [c for c in ctx.conditions if not _contains(c, F)]
    for attempt in range(MAX_DRAWS):
        rng = random.Random(seed * 1000003 + attempt)
        coeffs = [rng.choice([-1, 1]) * rng.randint(1, 97) for _ in F]
        v = [Fraction(0)] * h
        for c, b in zip(coeffs, F):
            v = [x + c * y for x, y in zip(v, b)]
        v = xl.clear_denominators(v)
        if all(any(xl.dot(r, v) != 0 for r in c.rows) for c in avoid):
            return v
    raise StratificationError("no generic point found", flat=[list(map(str, r)) for r in F], draws=MAX_DRAWS)


def _strata(ctx: _Context, seed: int = None) -> List[Stratum]:
    seed = stratification_seed() if seed is None else seed
    out = []
    for F in _flats(ctx):
        c = _generic_point(ctx, F, seed)
        cov = ctx.basis.combine(c)
        cov = tuple(tuple(int(x) for x in u) for u in cov)
        contained = tuple(cond.label for cond in ctx.conditions if _contains(cond, F))
        out.append(Stratum(F, tuple(c), cov, contained))
    return out


@dataclass(frozen=True)
class HyperplaneStratum:
    """A family of hyperplanes containing the loop slice, cutting the same subgraph.

    ``normal`` is the sample covector; ``contained_directions`` the edge
    directions lying in the hyperplane beyond the loop span.
    """

    normal: Tuple[int, ...]
    flat_dimension: int
    contained_directions: Tuple[Tuple[int, ...], ...]


def candidate_hyperplanes(curve: TropicalCurve, seed: int = None) -> List[HyperplaneStratum]:
    """Finite list of hyperplane strata for a genus one curve (empty when ``H = 0``)."""
    if genus(curve) != 1:
        raise ScopeError("hyperplane strata are defined for genus one", genus=genus(curve))
    ctx = _context(curve)
    out = []
    for st in _strata(ctx, seed):
        dirs = tuple(sorted(lab[2] for lab in st.contained if lab[0] == "edge"))
        out.append(HyperplaneStratum(xl.primitive_vector(st.covectors[0]), st.dimension, dirs))
    return out


# ---------------------------------------------------------------------------
# the test


class Branch(str, Enum):
    TWO_MINIMA = "TWO_MINIMA"
    FOUR_VALENT_EXCEPTION = "FOUR_VALENT_EXCEPTION"
    VACUOUS = "VACUOUS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class Entry:
    """One value in the minimum test.

    In genus one every candidate vertex is an entry of its own; in higher
    genus every complement component is one entry, whose value is the
    smallest candidate length (``INF`` when there is none).
    """

    segment: Optional[int]
    attachment: str
    value: object
    vertices: Tuple[str, ...]


@dataclass(frozen=True)
class WellSpacedWitness:
    stratum: Stratum
    entries: Tuple[Entry, ...]
    minimum: object
    branch: Branch
    minimizers: Tuple[str, ...]

    def to_dict(self):
        def val(x):
            return "inf" if x == INF else _fmt(x)

        return {
            "stratum_dimension": self.stratum.dimension,
            "sample": list(self.stratum.sample),
            "covectors": [list(u) for u in self.stratum.covectors],
            "entries": [
                {"segment": e.segment, "attachment": e.attachment, "value": val(e.value), "vertices": list(e.vertices)}
                for e in self.entries
            ],
            "minimum": val(self.minimum),
            "branch": self.branch.value,
            "minimizers": list(self.minimizers),
        }


def _fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _candidates(ctx: _Context, comp, u, img):
    """Image vertices of the slice of ``comp`` through its attachment with an edge leaving it."""
    curve = ctx.curve
    start = comp.attachments[0]
    comp_edges = set(comp.edges)

    def inside(e):
        return e.direction is None or xl.dot(u, e.direction) == 0

    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in curve.incident(v):
            if e.id not in comp_edges or not e.bounded or not inside(e):
                continue
            w = e.other_end(v)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    out = set()
    for v in seen:
        if v == start:
            continue
        if any(e.id in comp_edges and not inside(e) for e in curve.incident(v)):
            out.add(img.vertex_of[v])
    return sorted(out)


def _evaluate(ctx, st: Stratum, table, img, classes, per_vertex: bool) -> WellSpacedWitness:
    entries = []
    for seg, comp in ctx.comps:
        if seg is None:
            continue
        u = st.covectors[seg]
        cands = _candidates(ctx, comp, u, img) if any(u) else []
        if per_vertex:
            for c in cands:
                entries.append(Entry(seg, comp.attachments[0], table.distances[c], (c,)))
        else:
            if cands:
                m = min(table.distances[c] for c in cands)
                at = tuple(c for c in cands if table.distances[c] == m)
                entries.append(Entry(seg, comp.attachments[0], m, at))
            else:
                entries.append(Entry(seg, comp.attachments[0], INF, ()))
    finite = [e for e in entries if e.value != INF]
    if not finite:
        return WellSpacedWitness(st, tuple(entries), INF, Branch.VACUOUS, ())
    m = min(e.value for e in finite)
    attained = [e for e in finite if e.value == m]
    mins = tuple(sorted(v for e in attained for v in e.vertices))
    if len(attained) >= 2:
        branch = Branch.TWO_MINIMA
    elif all(classes.get(v) in EXCEPTION_CLASSES for v in attained[0].vertices):
        branch = Branch.FOUR_VALENT_EXCEPTION
    else:
        branch = Branch.FAIL
    return WellSpacedWitness(st, tuple(entries), m, branch, mins)


def _scope(curve, profile, dec):
    g = genus(curve)
    if not profile.satisfies_A:
        raise ScopeError("Assumption A fails", hypothesis="A", witness=profile.A_witnesses[0])
    if g == 0:
        raise ScopeError("genus zero curve", hypothesis="genus")
    if g == 1:
        if profile.max_valence > 4:
            raise ScopeError("image vertex of valence above four", hypothesis="valence")
        return "genus_one"
    if len(dec.bouquets) != 1:
        raise ScopeError("more than one bouquet", hypothesis="unique_bouquet", bouquets=len(dec.bouquets))
    if not profile.satisfies_C:
        raise ScopeError("Assumption C fails", hypothesis="C")
    return "unique_bouquet"


def well_spaced_check(curve: TropicalCurve, seed: int = None):
    """Run the minimum test on every stratum.

    Genus one curves need Assumption A and image valence at most four;
    higher genus curves need a unique bouquet and Assumption C.

    Returns:
        ``(passed, witnesses)`` with one witness per stratum.

    Raises:
        ScopeError: outside the supported hypotheses.
    """
    profile = assumption_profile(curve)
    dec = bouquet_decomposition(curve)
    kind = _scope(curve, profile, dec)
    ctx = _context(curve)
    img = _image_curve_unchecked(curve)
    table = path_length_table(curve, dec)
    witnesses = [
        _evaluate(ctx, st, table, img, profile.vertex_classes, kind == "genus_one")
        for st in _strata(ctx, seed)
    ]
    return all(w.branch != Branch.FAIL for w in witnesses), witnesses


# ---------------------------------------------------------------------------
# vanishing of the Kuranishi map


@dataclass(frozen=True)
class KZeroWitness:
    bouquet: int
    attachment: str
    segment: Optional[int]
    component_span: Tuple[Tuple[int, ...], ...]
    contained: bool


def kuranishi_zero_witnesses(curve: TropicalCurve) -> List[KZeroWitness]:
    n = curve.ambient_rank
    dec = bouquet_decomposition(curve)
    sd = dual_obstruction_basis(curve, check=False).decomposition
    seg_span = {s.index: s.span for s in sd.segments}
    out = []
    for bi, b in enumerate(dec.bouquets):
        for comp in complement_components(curve, set(b.edges), set(b.vertices)):
            att = comp.attachments[0] if len(comp.attachments) == 1 else None
            dirs = [curve.edges[e].direction for e in comp.edges if curve.edges[e].direction is not None]
            span = tuple(xl.hermite_normal_form(dirs, n)) if dirs else ()
            seg = sd.segment_of_vertex(att) if att is not None else None
            ok = seg is not None and all(xl.in_span(d, seg_span[seg], n) for d in dirs)
            out.append(KZeroWitness(bi, att if att is not None else ",".join(comp.attachments), seg, span, ok))
    return out


def kuranishi_zero_check(curve: TropicalCurve) -> bool:
    """True when every complement component's directions lie in its segment's span."""
    return all(w.contained for w in kuranishi_zero_witnesses(curve))


# ---------------------------------------------------------------------------
# verdict


class Verdict(str, Enum):
    SMOOTHABLE = "SMOOTHABLE"
    NOT_SMOOTHABLE = "NOT_SMOOTHABLE"
    UNDETERMINED = "UNDETERMINED"


class Rule(str, Enum):
    NON_SUPERABUNDANT = "NON_SUPERABUNDANT"
    KURANISHI_ZERO = "KURANISHI_ZERO"
    GENUS_ONE_IMMERSIVE = "GENUS_ONE_IMMERSIVE"
    GENUS_ONE_FOUR_VALENT = "GENUS_ONE_FOUR_VALENT"
    UNIQUE_BOUQUET = "UNIQUE_BOUQUET"
    NONE = "NONE"


@dataclass(frozen=True)
class SmoothabilityVerdict:
    verdict: Verdict
    rule: Rule
    witnesses: Tuple = ()
    failed_hypothesis: Optional[str] = None
    obstruction_dim: Optional[int] = None

    def to_dict(self):
        out = {
            "verdict": self.verdict.value,
            "rule": self.rule.value,
            "obstruction_dim": self.obstruction_dim,
            "failed_hypothesis": self.failed_hypothesis,
            "witnesses": [w.to_dict() for w in self.witnesses if hasattr(w, "to_dict")],
        }
        return out


def smoothability_verdict(curve: TropicalCurve, seed: int = None) -> SmoothabilityVerdict:
    """Decide smoothability where one of the implemented criteria applies.

    Order: ``H = 0``; vanishing Kuranishi map; genus one well-spacedness;
    unique-bouquet well-spacedness; otherwise ``UNDETERMINED`` naming the
    first hypothesis that failed.
    """
    profile = assumption_profile(curve)
    if not profile.satisfies_A:
        return SmoothabilityVerdict(Verdict.UNDETERMINED, Rule.NONE, (), "A")
    hdim = dual_obstruction_basis(curve).dimension
    if hdim == 0:
        return SmoothabilityVerdict(Verdict.SMOOTHABLE, Rule.NON_SUPERABUNDANT, (), None, 0)
    if kuranishi_zero_check(curve):
        return SmoothabilityVerdict(Verdict.SMOOTHABLE, Rule.KURANISHI_ZERO, (), None, hdim)
    dec = bouquet_decomposition(curve)
    try:
        kind = _scope(curve, profile, dec)
    except ScopeError as err:
        return SmoothabilityVerdict(Verdict.UNDETERMINED, Rule.NONE, (), err.details.get("hypothesis"), hdim)
    ok, wits = well_spaced_check(curve, seed)
    if kind == "genus_one":
        rule = Rule.GENUS_ONE_IMMERSIVE if profile.max_valence == 3 else Rule.GENUS_ONE_FOUR_VALENT
    else:
        rule = Rule.UNIQUE_BOUQUET
    verdict = Verdict.SMOOTHABLE if ok else Verdict.NOT_SMOOTHABLE
    return SmoothabilityVerdict(verdict, rule, tuple(wits), None, hdim)
