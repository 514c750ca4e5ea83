"""Tropical curves as weighted graphs with rational vertex positions.

A curve is described by a plain dict (the same shape as the JSON documents
read by the CLI)::

    {"ambient_rank": 2,
     "vertices": [{"id": "v", "position": ["0", "0"]}],
     "edges": [{"id": "e1", "weight": 1, "end": "v", "direction": [-1, 0]},
               {"id": "b1", "weight": 1, "ends": ["v", "w"]}],
     "markings": ["e1"]}

``validate_curve`` turns this into a :class:`TropicalCurve`. All derived data
(flags, directions, integral lengths) is computed once and the object is not
mutated afterwards.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact_linalg as xl
from .errors import (
    AssumptionAViolated,
    ContractedUnbounded,
    DanglingReference,
    Disconnected,
    InvalidCurve,
    NonRationalSlope,
    Unbalanced,
)

CONTRACTED = None


@dataclass(frozen=True)
class Edge:
    """An edge of the abstract graph.

    ``ends`` has two vertex ids for a bounded edge and one for an unbounded
    edge. ``direction`` is the primitive direction: for an unbounded edge it
    points away from its vertex, for a bounded edge it points from
    ``ends[0]`` to ``ends[1]`` and is ``None`` when the edge is contracted.
    ``length`` is the integral length of the image (``None`` if unbounded).
    """

    id: str
    weight: int
    ends: Tuple[str, ...]
    direction: Optional[Tuple[int, ...]]
    length: Optional[Fraction] = None

    @property
    def bounded(self) -> bool:
        return len(self.ends) == 2

    @property
    def contracted(self) -> bool:
        return self.bounded and self.direction is None

    def other_end(self, v: str) -> str:
        a, b = self.ends
        return b if v == a else a


@dataclass(frozen=True)
class Flag:
    vertex: str
    edge: str
    direction: Optional[Tuple[int, ...]]


@dataclass
class TropicalCurve:
    ambient_rank: int
    vertices: Dict[str, Tuple[Fraction, ...]]
    edges: Dict[str, Edge]
    markings: Tuple[str, ...] = ()
    flags: Tuple[Flag, ...] = field(default=(), repr=False)

    def flags_at(self, v: str) -> List[Flag]:
        return self._flags_at[v]

    def incident(self, v: str) -> List[Edge]:
        return [self.edges[f.edge] for f in self._flags_at[v]]

    @property
    def bounded_edges(self) -> List[Edge]:
        return [e for e in self.edges.values() if e.bounded]

    @property
    def unbounded_edges(self) -> List[Edge]:
        return [e for e in self.edges.values() if not e.bounded]

    def flag_direction(self, v: str, e: Edge):
        """Primitive direction of the flag ``(v, e)`` (``None`` if contracted)."""
        if e.direction is None:
            return None
        if e.bounded and v == e.ends[1] and e.ends[0] != e.ends[1]:
            return tuple(-x for x in e.direction)
        return e.direction

    def to_raw(self) -> dict:
        """Plain dict in the document layout (rationals as strings)."""
        verts = [
            {"id": v, "position": [_fmt(x) for x in p]} for v, p in self.vertices.items()
        ]
        edges = []
        for e in self.edges.values():
            if e.bounded:
                edges.append({"id": e.id, "weight": e.weight, "ends": list(e.ends)})
            else:
                edges.append(
                    {"id": e.id, "weight": e.weight, "end": e.ends[0], "direction": list(e.direction)}
                )
        return {
            "ambient_rank": self.ambient_rank,
            "vertices": verts,
            "edges": edges,
            "markings": list(self.markings),
        }


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _exact(x, where):
    if isinstance(x, bool):
        raise NonRationalSlope("boolean is not a coordinate", location=where)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise NonRationalSlope(f"not an exact rational: {x!r}", location=where)
    raise NonRationalSlope(f"coordinate must be exact (int or 'p/q'), got {x!r}", location=where)


def validate_curve(raw) -> TropicalCurve:
    """Parse and validate a curve description.

    Checks ids, weights, references, connectivity, rational slopes and
    balancing. Balancing is imposed on each cluster of vertices joined by
    contracted edges, which is the per-vertex condition when nothing is
    contracted.
    """
    if isinstance(raw, TropicalCurve):
        raw = raw.to_raw()
    if not isinstance(raw, dict):
        raise InvalidCurve("curve description must be a mapping")
    n = raw.get("ambient_rank")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidCurve("ambient_rank must be an integer >= 2", ambient_rank=n)
    vertices: Dict[str, Tuple[Fraction, ...]] = {}
    for k, v in enumerate(raw.get("vertices", [])):
        vid = v.get("id") if isinstance(v, dict) else None
        if not isinstance(vid, str) or not vid:
            raise InvalidCurve("vertex id must be a nonempty string", index=k)
        if vid in vertices:
            raise InvalidCurve("duplicate vertex id", vertex=vid)
        pos = v.get("position")
        if not isinstance(pos, (list, tuple)) or len(pos) != n:
            raise InvalidCurve("position length must equal ambient_rank", vertex=vid)
        vertices[vid] = tuple(_exact(x, f"vertex {vid}") for x in pos)
    if not vertices:
        raise InvalidCurve("curve has no vertices")
    edges: Dict[str, Edge] = {}
    for k, e in enumerate(raw.get("edges", [])):
        eid = e.get("id") if isinstance(e, dict) else None
        if not isinstance(eid, str) or not eid:
            raise InvalidCurve("edge id must be a nonempty string", index=k)
        if eid in edges:
            raise InvalidCurve("duplicate edge id", edge=eid)
        w = e.get("weight", 1)
        if not isinstance(w, int) or isinstance(w, bool) or w < 1:
            raise InvalidCurve("weight must be a positive integer", edge=eid)
        if "ends" in e:
            ends = e["ends"]
            if not isinstance(ends, (list, tuple)) or len(ends) != 2:
                raise InvalidCurve("bounded edge needs two ends", edge=eid)
            for x in ends:
                if not isinstance(x, str) or x not in vertices:
                    raise DanglingReference("edge references unknown vertex", edge=eid, vertex=x)
            a, b = ends
            if a == b:
                raise InvalidCurve("bounded edge with identical ends", edge=eid)
            disp = xl.vec_sub(vertices[b], vertices[a])
            if any(disp):
                d, lam = xl.rational_direction(disp)
                edges[eid] = Edge(eid, w, (a, b), d, lam)
            else:
                edges[eid] = Edge(eid, w, (a, b), None, Fraction(0))
        elif "end" in e:
            v = e["end"]
            if not isinstance(v, str) or v not in vertices:
                raise DanglingReference("edge references unknown vertex", edge=eid, vertex=v)
            d = e.get("direction")
            if not isinstance(d, (list, tuple)) or len(d) != n:
                raise InvalidCurve("direction length must equal ambient_rank", edge=eid)
            if any(isinstance(x, bool) or not isinstance(x, int) for x in d):
                raise NonRationalSlope("unbounded direction must be an integer vector", edge=eid)
            if not any(d):
                raise ContractedUnbounded("unbounded edge with zero direction", edge=eid)
            p = xl.primitive_vector(d)
            if tuple(p) != tuple(d):
                raise InvalidCurve(
                    "unbounded direction must be primitive; put the multiplicity in the weight",
                    edge=eid,
                )
            edges[eid] = Edge(eid, w, (v,), tuple(d), None)
        else:
            raise InvalidCurve("edge needs 'ends' or 'end'", edge=eid)
    markings = raw.get("markings", [])
    if not isinstance(markings, (list, tuple)):
        raise InvalidCurve("markings must be a list")
    for m in markings:
        if not isinstance(m, str) or m not in edges:
            raise DanglingReference("marking references unknown edge", edge=m)

    vertices = dict(sorted(vertices.items()))
    edges = dict(sorted(edges.items()))
    curve = TropicalCurve(n, vertices, edges, tuple(markings))
    flags_at = defaultdict(list)
    flags = []
    for e in edges.values():
        for v in e.ends:
            f = Flag(v, e.id, curve.flag_direction(v, e))
            flags_at[v].append(f)
            flags.append(f)
    curve.flags = tuple(flags)
    curve._flags_at = {v: flags_at.get(v, []) for v in vertices}

    for v, fl in curve._flags_at.items():
        if not fl:
            raise InvalidCurve("isolated vertex", vertex=v)
    if len(_components(list(vertices), [e.ends for e in edges.values() if e.bounded])) != 1:
        raise Disconnected("underlying graph is not connected")
    for cluster in contracted_clusters(curve):
        res = [0] * n
        for v in cluster:
            for f in curve._flags_at[v]:
                if f.direction is not None:
                    w = edges[f.edge].weight
                    res = [r + w * x for r, x in zip(res, f.direction)]
        if any(res):
            raise Unbalanced(
                "balancing fails", vertex=cluster[0], cluster=list(cluster), residual=res
            )
    return curve


def _components(nodes, pairs):
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups = defaultdict(list)
    for x in nodes:
        groups[find(x)].append(x)
    return [sorted(g) for _, g in sorted(groups.items())]


def contracted_clusters(curve: TropicalCurve) -> List[List[str]]:
    """Vertex sets joined by contracted edges (singletons when none)."""
    return _components(list(curve.vertices), [e.ends for e in curve.edges.values() if e.contracted])


def genus(curve: TropicalCurve) -> int:
    """First Betti number ``|bounded edges| - |vertices| + 1``."""
    return len(curve.bounded_edges) - len(curve.vertices) + 1


def degree_map(curve: TropicalCurve) -> Dict[Tuple[int, ...], int]:
    """Counts of ``w(E) u_(V,E)`` over unbounded edges, keys sorted."""
    c = Counter()
    for e in curve.unbounded_edges:
        c[tuple(e.weight * x for x in e.direction)] += 1
    return dict(sorted(c.items()))


def transform_curve(curve: TropicalCurve, T: Sequence[Sequence[int]], t: Sequence = None) -> TropicalCurve:
    """Apply ``x -> T x + t`` for an integer matrix ``T`` with nonzero determinant.

    For a non-unimodular ``T`` an unbounded direction ``T u`` may stop being
    primitive; its content moves into the weight. Bounded edge weights are
    multiplied the same way so balancing is preserved.
    """
    n = curve.ambient_rank
    t = tuple(Fraction(x) for x in (t or [0] * n))
    raw = curve.to_raw()
    for v in raw["vertices"]:
        p = tuple(Fraction(x) for x in v["position"])
        v["position"] = [_fmt(x) for x in xl.vec_add(xl.mat_vec(T, p), t)]
    for e in raw["edges"]:
        old = curve.edges[e["id"]]
        if old.direction is None:
            continue
        tu = xl.mat_vec(T, old.direction)
        g = xl.content(tu)
        e["weight"] = old.weight * g
        if "direction" in e:
            e["direction"] = [x // g for x in tu]
    return validate_curve(raw)


# ---------------------------------------------------------------------------
# loops, bouquets, complements


@dataclass(frozen=True)
class Bouquet:
    edges: Tuple[str, ...]
    vertices: Tuple[str, ...]
    betti: int


@dataclass(frozen=True)
class ComplementComponent:
    """A connected component of the complement of the loops.

    ``attachments`` lists the loop vertices met by its closure, and
    ``bouquets`` the indices of the bouquets they belong to.
    """

    edges: Tuple[str, ...]
    vertices: Tuple[str, ...]
    attachments: Tuple[str, ...]
    bouquets: Tuple[int, ...]


@dataclass(frozen=True)
class BouquetDecomposition:
    loops: Tuple[str, ...]
    bouquets: Tuple[Bouquet, ...]
    complements: Tuple[ComplementComponent, ...]

    def bouquet_of_vertex(self, v: str) -> Optional[int]:
        for i, b in enumerate(self.bouquets):
            if v in b.vertices:
                return i
        return None


def loop_edges(curve: TropicalCurve) -> List[str]:
    """Bounded edges whose removal lowers the first Betti number (non-bridges)."""
    adj = defaultdict(list)
    for e in curve.bounded_edges:
        a, b = e.ends
        adj[a].append((b, e.id))
        adj[b].append((a, e.id))
    disc, low, bridges = {}, {}, set()
    counter = [0]
    for root in curve.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == via:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        bridges.add(via)
    return sorted(e.id for e in curve.bounded_edges if e.id not in bridges)


def complement_components(curve: TropicalCurve, loop_set, loop_vertices) -> List[ComplementComponent]:
    """Components of the curve with the given loop edges and vertices removed.

    Two non-loop edges are in the same component when they share a vertex
    outside ``loop_vertices``.
    """
    others = [e for e in curve.edges.values() if e.id not in loop_set]
    ids = [e.id for e in others]
    pairs = []
    by_vertex = defaultdict(list)
    for e in others:
        for v in e.ends:
            if v not in loop_vertices:
                by_vertex[v].append(e.id)
    for v, es in by_vertex.items():
        for x in es[1:]:
            pairs.append((es[0], x))
    comps = []
    for group in _components(ids, pairs):
        gset = set(group)
        verts = sorted({v for eid in group for v in curve.edges[eid].ends if v not in loop_vertices})
        att = sorted({v for eid in group for v in curve.edges[eid].ends if v in loop_vertices})
        comps.append(ComplementComponent(tuple(sorted(gset)), tuple(verts), tuple(att), ()))
    return comps


def bouquet_decomposition(curve: TropicalCurve) -> BouquetDecomposition:
    """Loops, bouquets with Betti numbers, and complement components."""
    loops = loop_edges(curve)
    lset = set(loops)
    lverts = sorted({v for eid in loops for v in curve.edges[eid].ends})
    groups = _components(lverts, [curve.edges[eid].ends for eid in loops])
    bouquets = []
    for g in groups:
        gs = set(g)
        es = sorted(eid for eid in loops if curve.edges[eid].ends[0] in gs)
        bouquets.append(Bouquet(tuple(es), tuple(g), len(es) - len(g) + 1))
    vert_to_b = {v: i for i, b in enumerate(bouquets) for v in b.vertices}
    comps = []
    for c in complement_components(curve, lset, set(lverts)):
        bs = tuple(sorted({vert_to_b[v] for v in c.attachments}))
        comps.append(ComplementComponent(c.edges, c.vertices, c.attachments, bs))
    return BouquetDecomposition(tuple(loops), tuple(bouquets), tuple(comps))


# ---------------------------------------------------------------------------
# image curve and assumptions


@dataclass(frozen=True)
class ImageVertex:
    id: str
    position: Tuple[Fraction, ...]
    preimages: Tuple[str, ...]
    valence: int


@dataclass(frozen=True)
class ImageEdge:
    """An edge of ``h(Gamma)``.

    ``direction`` points from ``ends[0]``; ``length`` is ``None`` for
    unbounded edges. ``weights`` is the sorted weight multiset.
    """

    id: str
    ends: Tuple[str, ...]
    direction: Tuple[int, ...]
    length: Optional[Fraction]
    weights: Tuple[int, ...]
    preimages: Tuple[str, ...]

    @property
    def bounded(self) -> bool:
        return len(self.ends) == 2

    @property
    def w_s(self) -> int:
        return sum(self.weights)

    @property
    def w_m(self) -> int:
        out = 1
        for w in self.weights:
            out *= w
        return out

    def direction_from(self, iv: str):
        if self.bounded and iv == self.ends[1]:
            return tuple(-x for x in self.direction)
        return self.direction

    def other_end(self, iv: str) -> str:
        a, b = self.ends
        return b if iv == a else a


@dataclass(frozen=True)
class ImageCurve:
    vertices: Dict[str, ImageVertex]
    edges: Dict[str, ImageEdge]
    vertex_of: Dict[str, str]
    edge_of: Dict[str, str]

    def incident(self, iv: str) -> List[ImageEdge]:
        return [e for e in self.edges.values() if iv in e.ends]


def _image_curve_unchecked(curve: TropicalCurve) -> ImageCurve:
    clusters = contracted_clusters(curve)
    vertex_of = {}
    ivs = {}
    for cl in clusters:
        vid = cl[0]
        for v in cl:
            vertex_of[v] = vid
        val = sum(1 for v in cl for f in curve.flags_at(v) if f.direction is not None)
        ivs[vid] = ImageVertex(vid, curve.vertices[vid], tuple(cl), val)
    # group Gamma-edges with identical image
    groups = defaultdict(list)
    for e in curve.edges.values():
        if e.contracted:
            continue
        if e.bounded:
            a, b = vertex_of[e.ends[0]], vertex_of[e.ends[1]]
            key = ("b",) + tuple(sorted((a, b)))
        else:
            key = ("u", vertex_of[e.ends[0]], e.direction)
        groups[key].append(e)
    iedges = {}
    edge_of = {}
    for key, es in groups.items():
        es = sorted(es, key=lambda x: x.id)
        first = es[0]
        if first.bounded:
            a, b = vertex_of[first.ends[0]], vertex_of[first.ends[1]]
            d, lam = first.direction, first.length
            if a > b:
                a, b, d = b, a, tuple(-x for x in d)
            ie = ImageEdge(first.id, (a, b), d, lam, tuple(sorted(e.weight for e in es)), tuple(e.id for e in es))
        else:
            ie = ImageEdge(
                first.id, (vertex_of[first.ends[0]],), first.direction, None,
                tuple(sorted(e.weight for e in es)), tuple(e.id for e in es),
            )
        iedges[ie.id] = ie
        for e in es:
            edge_of[e.id] = ie.id
    return ImageCurve(dict(sorted(ivs.items())), dict(sorted(iedges.items())), vertex_of, edge_of)


def _interval(x, v, L):
    """Coordinate range of ``{x + t v : 0 <= t <= L}`` (``L = None``: ray)."""
    if L is None:
        if v > 0:
            return x, None
        if v < 0:
            return None, x
        return x, x
    y = x + v * L
    return min(x, y), max(x, y)


def _boxes_apart(p, d, T, q, e, S) -> bool:
    """Cheap test: some coordinate separates the two (closed) pieces."""
    for i in range(len(p)):
        lo1, hi1 = _interval(p[i], d[i], T)
        lo2, hi2 = _interval(q[i], e[i], S)
        if hi1 is not None and lo2 is not None and hi1 < lo2:
            return True
        if hi2 is not None and lo1 is not None and hi2 < lo1:
            return True
    return False


def _open_meets_closed(p, d, T, q, e, S) -> bool:
    """Does ``{p + t d : 0 < t < T}`` meet ``{q + s e : 0 <= s <= S}``?

    ``T`` or ``S`` may be ``None`` for a ray; ``e`` may be zero (a point).
    """
    n = len(p)
    if _boxes_apart(p, d, T, q, e, S):
        return False
    diff = xl.vec_sub(q, p)
    inf = None
    if any(e) and xl.rank([d, e], n) == 2:
        M = [[d[i], -e[i]] for i in range(n)]
        sol = xl.solve(M, diff, 2)
        if sol is None:
            return False
        t, s = sol
        if t <= 0 or (T is not inf and t >= T):
            return False
        if s < 0 or (S is not inf and s > S):
            return False
        return True
    # parallel or point: need collinearity
    if not xl.in_span(diff, [d], n):
        return False
    k = next(i for i in range(n) if d[i] != 0)

    def param(x):
        return Fraction(x[k]) / d[k]

    a = param(diff)
    if not any(e):
        lo, hi = a, a
    else:
        ratio = Fraction(e[k]) / d[k]
        if S is inf:
            lo, hi = (a, None) if ratio > 0 else (None, a)
        else:
            b = a + ratio * S
            lo, hi = min(a, b), max(a, b)
    # open (0, T) against closed [lo, hi] (None = unbounded)
    if hi is not None and hi <= 0:
        return False
    if T is not inf and lo is not None and lo >= T:
        return False
    return True


def _edge_geometry(curve, e: Edge):
    p = curve.vertices[e.ends[0]]
    if e.bounded:
        return p, xl.vec_sub(curve.vertices[e.ends[1]], p), Fraction(1)
    return p, tuple(Fraction(x) for x in e.direction), None


def assumption_a_violations(curve: TropicalCurve, decomposition: BouquetDecomposition = None) -> List[dict]:
    """Witnesses for each failing clause of Assumption A (empty if it holds)."""
    out = []
    for v in curve.vertices:
        if len(curve.flags_at(v)) != 3:
            out.append({"clause": "i", "vertex": v, "valence": len(curve.flags_at(v))})
    dec = decomposition or bouquet_decomposition(curve)
    lverts = {v for b in dec.bouquets for v in b.vertices}
    for e in curve.bounded_edges:
        if e.contracted and (e.id in dec.loops or set(e.ends) & lverts):
            out.append({"clause": "ii", "edge": e.id})
    clusters = contracted_clusters(curve)
    cl_of = {v: i for i, cl in enumerate(clusters) for v in cl}
    by_pos = defaultdict(list)
    for v, p in curve.vertices.items():
        by_pos[p].append(v)
    for p, vs in sorted(by_pos.items(), key=lambda kv: kv[1]):
        if len({cl_of[v] for v in vs}) > 1:
            out.append({"clause": "iii", "vertices": sorted(vs)})
    if curve.ambient_rank >= 3:
        es = [e for e in curve.edges.values() if not e.contracted]
        geo = {e.id: _edge_geometry(curve, e) for e in es}
        for e in es:
            p, d, T = geo[e.id]
            for f in es:
                if f.id == e.id:
                    continue
                if (not e.bounded and not f.bounded and e.direction == f.direction
                        and curve.vertices[e.ends[0]] == curve.vertices[f.ends[0]]):
                    continue
                q, g, S = geo[f.id]
                if _open_meets_closed(p, d, T, q, g, S):
                    out.append({"clause": "iv", "edge": e.id, "other": f.id})
                    break
            else:
                for v, pos in curve.vertices.items():
                    if v in e.ends:
                        continue
                    if _open_meets_closed(p, d, T, pos, (0,) * len(pos), Fraction(0)):
                        out.append({"clause": "iv", "edge": e.id, "vertex": v})
                        break
    return out


def image_curve(curve: TropicalCurve) -> ImageCurve:
    """The image ``h(Gamma)`` with merged edges and valences.

    Raises:
        AssumptionAViolated: with the first failing clause and its witness.
    """
    bad = assumption_a_violations(curve)
    if bad:
        raise AssumptionAViolated("Assumption A fails", clause=bad[0]["clause"], witness=bad[0])
    return _image_curve_unchecked(curve)


@dataclass(frozen=True)
class AssumptionProfile:
    trivalent: bool
    satisfies_A: bool
    A_witnesses: Tuple[dict, ...]
    max_valence: int
    vertex_classes: Dict[str, str]
    satisfies_C: bool

    def to_dict(self):
        return {
            "trivalent": self.trivalent,
            "satisfies_A": self.satisfies_A,
            "A_witnesses": list(self.A_witnesses),
            "max_image_valence": self.max_valence,
            "vertex_classes": dict(self.vertex_classes),
            "satisfies_C": self.satisfies_C,
        }


def _path_to_loop(img: ImageCurve, loop_ivs, start: str):
    """Image edges on the unique tree path from ``start`` back to the loops.

    Returns ``(attachment image vertex, [(image edge, vertex it leads to)])``
    ordered from the loop outward, or ``None`` if no loop is reachable
    without passing through another loop vertex.
    """
    if start in loop_ivs:
        return start, []
    prev = {start: None}
    queue = [start]
    hit = None
    while queue and hit is None:
        nxt = []
        for x in queue:
            for e in img.incident(x):
                if not e.bounded:
                    continue
                y = e.other_end(x)
                if y in prev:
                    continue
                prev[y] = (x, e)
                if y in loop_ivs:
                    hit = y
                    break
                nxt.append(y)
            if hit is not None:
                break
        queue = nxt
    if hit is None:
        return None
    path = []
    y = hit
    while prev[y] is not None:
        x, e = prev[y]
        path.append((e, x))
        y = x
    return hit, path


def classify_vertex(curve: TropicalCurve, img: ImageCurve, dec: BouquetDecomposition, iv: str) -> str:
    """Local class of a high-valence image vertex.

    ``EXAMPLE1`` when two Gamma-edges share an image edge there;
    ``EXAMPLE2a``/``EXAMPLE2b``/``EXAMPLE2c`` for four distinct image edges,
    split by how the three edges away from the loop sit relative to the span
    of the loop and the path leading to the vertex; ``EXAMPLE2`` when no
    unique loop is reachable; ``OTHER`` otherwise.
    """
    vert = img.vertices[iv]
    if vert.valence < 4:
        return "TRIVALENT"
    if vert.valence > 4:
        return "OTHER"
    inc = img.incident(iv)
    if len(inc) == 3 and any(len(e.weights) == 2 for e in inc):
        return "EXAMPLE1"
    if len(inc) != 4 or any(len(e.weights) != 1 for e in inc):
        return "OTHER"
    n = curve.ambient_rank
    if len(dec.bouquets) != 1:
        return "EXAMPLE2"
    b = dec.bouquets[0]
    loop_ivs = {img.vertex_of[v] for v in b.vertices}
    found = _path_to_loop(img, loop_ivs, iv)
    if found is None or not found[1]:
        return "EXAMPLE2"
    _, path = found
    span = [curve.edges[eid].direction for eid in b.edges]
    span += [e.direction for e, _ in path]
    base = xl.rank(span, n)
    e1 = path[0][0]
    others = [e for e in inc if e.id != e1.id]
    inside = [e for e in others if xl.in_span(e.direction, span, n)]
    if inside:
        return "EXAMPLE2a"
    extra = xl.rank(span + [e.direction for e in others], n) - base
    return "EXAMPLE2b" if extra == 1 else "EXAMPLE2c"


def assumption_profile(curve: TropicalCurve) -> AssumptionProfile:
    dec = bouquet_decomposition(curve)
    bad = assumption_a_violations(curve, dec)
    trivalent = not any(w["clause"] == "i" for w in bad)
    img = _image_curve_unchecked(curve)
    maxval = max(v.valence for v in img.vertices.values())
    classes = {}
    for iv, vert in img.vertices.items():
        if vert.valence >= 4:
            classes[iv] = classify_vertex(curve, img, dec, iv)
    sat_a = not bad
    sat_c = sat_a and maxval <= 4 and all(c in ("EXAMPLE1", "EXAMPLE2b") for c in classes.values())
    return AssumptionProfile(trivalent, sat_a, tuple(bad), maxval, classes, sat_c)


def weights_summary(curve: TropicalCurve) -> Dict[str, int]:
    """Total inner weight and total marked weight."""
    img = _image_curve_unchecked(curve)
    inner = 1
    for e in img.edges.values():
        if e.bounded:
            inner *= e.w_m
    marked = inner
    for m in curve.markings:
        marked *= curve.edges[m].weight
    return {"total_inner_weight": inner, "total_marked_weight": marked}
