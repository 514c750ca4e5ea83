"""Leading obstruction terms from exact coefficient data.

Along a path ``alpha = v_0, v_1, ..., v_N`` from an outlying vertex to the
loop every node carries a line ``k x + l z + m = 0``. The leading term of
the obstruction contributed by ``alpha`` is

    (k_0/m_0) * prod_{0<i<N} (l_i/m_i)(k_i/m_i) * (l_N/m_N) * t^M

with ``M`` the weight-normalized length of the path. An Example 1 (or
Example 2 (b)) vertex at ``alpha`` replaces ``k_0/m_0`` by ``a/b``.
Everything here is exact except :func:`tropicalization_lengths`, which is
the only place floats appear.
"""

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact_linalg as xl
from .curve_model import TropicalCurve, _image_curve_unchecked, assumption_profile, bouquet_decomposition, genus
from .errors import (
    DirectionsDoNotSpan,
    InvalidConfig,
    NonIntegralOrder,
    NonPositiveModulus,
    NotWellSpaced,
)
from .obstruction_space import ObstructionBasis, dual_obstruction_basis
from .well_spacedness import (
    EXCEPTION_CLASSES,
    _candidates,
    _context,
    normalized_length,
    path_length_table,
    stratification_seed,
    well_spaced_check,
)


@dataclass(frozen=True)
class PreLogPathConfig:
    """Coefficient data along one path.

    Attributes:
        coefficients: ``(k_i, l_i, m_i)`` for nodes ``0..N``; ``k_N`` and
            ``l_0`` are carried but do not enter the leading term.
        weights: weight of the edge from node ``i`` to node ``i+1``.
        lengths: integral length of that edge.
        example1: ``(a, b)`` when node 0 is a four-valent exceptional vertex.
        direction: primitive direction leaving the slice at node 0.
        segment: segment of the loop the path attaches to (higher genus).
    """

    coefficients: Tuple[Tuple[Fraction, Fraction, Fraction], ...]
    weights: Tuple[int, ...]
    lengths: Tuple[Fraction, ...]
    example1: Optional[Tuple[Fraction, Fraction]] = None
    direction: Tuple[int, ...] = ()
    segment: Optional[int] = None

    def __post_init__(self):
        coeffs = tuple(tuple(Fraction(x) for x in t) for t in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "lengths", tuple(Fraction(r) for r in self.lengths))
        if self.example1 is not None:
            object.__setattr__(self, "example1", tuple(Fraction(x) for x in self.example1))
        object.__setattr__(self, "direction", tuple(int(x) for x in self.direction))
        validate_config(self)

    @property
    def nodes(self) -> int:
        return len(self.coefficients)


def validate_config(cfg: PreLogPathConfig) -> None:
    """Raise ``InvalidConfig`` on shape mismatches or forbidden zeros."""
    N = cfg.nodes - 1
    if N < 1:
        raise InvalidConfig("a path needs at least one edge", nodes=cfg.nodes)
    if len(cfg.weights) != N or len(cfg.lengths) != N:
        raise InvalidConfig("need one weight and one length per edge", edges=N)
    for i, t in enumerate(cfg.coefficients):
        if len(t) != 3:
            raise InvalidConfig("coefficient triples must have three entries", node=i)
        if any(x == 0 for x in t):
            raise InvalidConfig("coefficients must be nonzero", node=i)
    if any(w < 1 for w in cfg.weights):
        raise InvalidConfig("weights must be positive")
    if any(r <= 0 for r in cfg.lengths):
        raise InvalidConfig("lengths must be positive")
    if cfg.example1 is not None and cfg.example1[1] == 0:
        raise InvalidConfig("b must be nonzero")


@dataclass(frozen=True)
class LeadingContribution:
    order: int
    coefficient: Fraction
    direction: Tuple[int, ...]
    segment: Optional[int] = None

    def to_dict(self):
        return {
            "order": self.order,
            "coefficient": _fmt(self.coefficient),
            "direction": list(self.direction),
            "segment": self.segment,
        }


def _fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def path_order(cfg: PreLogPathConfig) -> Fraction:
    return sum((r / w for r, w in zip(cfg.lengths, cfg.weights)), Fraction(0))


def leading_coefficient(cfg: PreLogPathConfig) -> Fraction:
    c = cfg.coefficients
    N = cfg.nodes - 1
    if cfg.example1 is not None:
        a, b = cfg.example1
        out = a / b
    else:
        out = c[0][0] / c[0][2]
    for i in range(1, N):
        k, l, m = c[i]
        out *= (l / m) * (k / m)
    out *= c[N][1] / c[N][2]
    return out


def leading_contribution(cfg: PreLogPathConfig) -> LeadingContribution:
    """Order and coefficient of the leading obstruction term of one path.

    Raises:
        NonIntegralOrder: when the normalized path length is not an integer.
    """
    M = path_order(cfg)
    if M.denominator != 1:
        raise NonIntegralOrder("path length is not an integer", order=_fmt(M))
    return LeadingContribution(int(M), leading_coefficient(cfg), cfg.direction, cfg.segment)


def zeta_twist(cfg: PreLogPathConfig, edge_index: int, root_order: int, lam) -> PreLogPathConfig:
    """Rescale across edge ``edge_index`` (from node ``i`` to ``i+1``).

    ``k_i`` is multiplied by ``lam`` and ``l_{i+1}`` divided by it; when node
    0 is exceptional, ``a`` plays the role of ``k_0``. ``root_order`` must
    equal the edge weight.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise InvalidConfig("twist factor must be nonzero")
    if not 0 <= edge_index < cfg.nodes - 1:
        raise InvalidConfig("edge index out of range", edge=edge_index)
    if root_order < 1 or root_order != cfg.weights[edge_index]:
        raise InvalidConfig("root order must equal the edge weight", edge=edge_index, weight=cfg.weights[edge_index])
    coeffs = [list(t) for t in cfg.coefficients]
    ex = cfg.example1
    if edge_index == 0 and ex is not None:
        ex = (ex[0] * lam, ex[1])
    else:
        coeffs[edge_index][0] *= lam
    coeffs[edge_index + 1][1] /= lam
    return replace(cfg, coefficients=tuple(tuple(t) for t in coeffs), example1=ex)


def rescale_component(cfg: PreLogPathConfig, node: int, lam) -> PreLogPathConfig:
    """Multiply the whole triple at ``node`` by ``lam``."""
    lam = Fraction(lam)
    coeffs = [tuple(t) for t in cfg.coefficients]
    coeffs[node] = tuple(lam * x for x in coeffs[node])
    return replace(cfg, coefficients=tuple(coeffs))


# ---------------------------------------------------------------------------
# pairing with H


@dataclass(frozen=True)
class PairingResult:
    order: Optional[int]
    sums: Tuple[Fraction, ...]
    by_order: Dict[int, Tuple[Fraction, ...]]

    @property
    def vanishes(self) -> bool:
        return all(s == 0 for s in self.sums)

    def to_dict(self):
        return {
            "order": self.order,
            "sums": [_fmt(s) for s in self.sums],
            "by_order": {str(k): [_fmt(s) for s in v] for k, v in sorted(self.by_order.items())},
            "vanishes": self.vanishes,
        }


def _covectors(H, contribution, j):
    if isinstance(H, ObstructionBasis):
        vec = H.vectors[j]
        if contribution.segment is not None:
            return vec[contribution.segment]
        glob = H.global_covectors
        if glob is None:
            raise InvalidConfig("contribution needs a segment for a non-constant basis element")
        return glob[j]
    return H[j]


def pair_with_H(contributions: Sequence[LeadingContribution], H) -> PairingResult:
    """Sum ``<a_j, d_i> c_i`` over contributions, grouped by order.

    ``H`` is an :class:`ObstructionBasis` or a plain list of covectors.
    ``sums`` holds the values at the minimal order.
    """
    h = H.dimension if isinstance(H, ObstructionBasis) else len(H)
    by_order = defaultdict(lambda: [Fraction(0)] * h)
    for c in contributions:
        row = by_order[c.order]
        for j in range(h):
            row[j] += xl.dot(_covectors(H, c, j), c.direction) * c.coefficient
    by_order = {k: tuple(v) for k, v in by_order.items()}
    if not by_order:
        return PairingResult(None, tuple(Fraction(0) for _ in range(h)), {})
    m = min(by_order)
    return PairingResult(m, by_order[m], by_order)


# ---------------------------------------------------------------------------
# the linear forms


@dataclass(frozen=True)
class LeadingFormSystem:
    """Linear forms in the first-order coefficient perturbations.

    ``variables`` are ``(node, kind)`` or ``(node, "l", incoming edge)``
    labels; each form maps a variable index to its coefficient.
    """

    variables: Tuple[Tuple, ...]
    forms: Tuple[Tuple[Fraction, ...], ...]
    covectors: Tuple[Tuple, ...]
    base_point: Dict[Tuple, Fraction] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        rows = [f for f in self.forms if any(f)]
        return xl.rank(rows, len(self.variables)) if rows else 0

    @property
    def codimension(self) -> int:
        return self.rank

    def to_dict(self):
        return {
            "variables": [":".join(str(x) for x in v) for v in self.variables],
            "forms": [[_fmt(x) for x in f] for f in self.forms],
            "rank": self.rank,
            "codimension": self.codimension,
        }


@dataclass
class _PathData:
    vertex: str
    monomial: Dict[Tuple, int]
    lead: Tuple
    direction: Tuple[int, ...]
    exceptional: bool


def _path_monomial(curve, img, vertex, pred, classes):
    """Monomial of the leading coefficient of the path from ``vertex`` to the loop."""
    nodes, edges = [vertex], []
    v = vertex
    while pred.get(v) is not None:
        w, eid = pred[v]
        edges.append(img.edge_of[eid])
        v = w
        if img.vertex_of[v] != img.vertex_of[nodes[-1]]:
            nodes.append(v)
        else:
            edges.pop()
    nodes = [img.vertex_of[x] for x in nodes]
    N = len(nodes) - 1
    mono = defaultdict(int)
    exc = classes.get(nodes[0]) in EXCEPTION_CLASSES
    if exc:
        lead = (nodes[0], "a")
        mono[lead] += 1
        mono[(nodes[0], "b")] -= 1
    else:
        lead = (nodes[0], "k")
        mono[lead] += 1
        mono[(nodes[0], "m")] -= 1
    for i in range(1, N):
        mono[(nodes[i], "l", edges[i - 1])] += 1
        mono[(nodes[i], "k")] += 1
        mono[(nodes[i], "m")] -= 2
    mono[(nodes[N], "l", edges[N - 1])] += 1
    mono[(nodes[N], "m")] -= 1
    return dict(mono), lead, exc


def _predecessors(curve, sources):
    """Shortest-path tree toward the loops (``vertex -> (parent, edge)``)."""
    import heapq

    lengths = {e.id: normalized_length(curve, e.id) for e in curve.bounded_edges}
    adj = defaultdict(list)
    for e in curve.bounded_edges:
        a, b = e.ends
        adj[a].append((b, e.id))
        adj[b].append((a, e.id))
    dist, pred = {}, {}
    heap = [(Fraction(0), v, None, None) for v in sorted(sources)]
    while heap:
        d, v, p, eid = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        pred[v] = None if p is None else (p, eid)
        for w, fid in sorted(adj[v], key=lambda x: x[1]):
            if w not in dist:
                heapq.heappush(heap, (d + lengths[fid], w, v, fid))
    return dist, pred


def _evaluate_monomial(mono, values):
    out = Fraction(1)
    for x, e in mono.items():
        out *= values[x] ** e
    return out


def _gradient(mono, values):
    grad = {}
    for x, e in mono.items():
        rest = Fraction(1)
        for y, f in mono.items():
            if y != x:
                rest *= values[y] ** f
        grad[x] = e * (values[x] ** (e - 1) if e != 1 else 1) * rest
    return grad


def _out_direction(curve, img, iv, inside):
    """Primitive direction of the first edge at image vertex ``iv`` leaving the slice.

    ``inside(iv, d)`` decides whether direction ``d`` stays in the slice at ``iv``.
    """
    for v in img.vertices[iv].preimages:
        for e in sorted(curve.incident(v), key=lambda e: e.id):
            if e.direction is not None and not inside(iv, e.direction):
                return curve.flag_direction(v, e)
    return None


def _random_values(variables, seed):
    rng = random.Random(seed)
    vals = {}
    for x in sorted(variables, key=repr):
        vals[x] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
    return vals


def _assemble(contribs, covector_of, values, solved):
    """Put the base point on the vanishing locus of one pairing and return the form."""
    pair = [(p, xl.dot(covector_of(p), p.direction)) for p in contribs]
    pair = [(p, c) for p, c in pair if c != 0]
    if not pair:
        return {}
    if len(pair) == 1 and pair[0][0].exceptional:
        values[pair[0][0].lead] = Fraction(0)
        solved.add(pair[0][0].lead)
    else:
        free = [(p, c) for p, c in pair if p.lead not in solved and p.monomial.get(p.lead) == 1]
        if free:
            p0, c0 = free[-1]
            others = sum(
                (c * _evaluate_monomial(p.monomial, values) for p, c in pair if p is not p0), Fraction(0)
            )
            values[p0.lead] = Fraction(1)
            q = _evaluate_monomial(p0.monomial, values)
            values[p0.lead] = -others / (c0 * q)
            solved.add(p0.lead)
    form = defaultdict(Fraction)
    for p, c in pair:
        for x, g in _gradient(p.monomial, values).items():
            form[x] += c * g
    return dict(form)


def adapted_steps(curve: TropicalCurve, seed: int = None):
    """Adapted basis of ``H`` with the closest vertices each element sees.

    Returns ``None`` when ``H = 0``; otherwise
    ``(steps, image, classes, distances, predecessors)`` where every step is
    ``(covector_of, vertices, inside)``.

    Raises:
        DirectionsDoNotSpan: edge directions do not span the ambient space.
        NotWellSpaced: the well-spacedness test fails.
    """
    n = curve.ambient_rank
    seed = stratification_seed() if seed is None else seed
    dirs = [e.direction for e in curve.edges.values() if e.direction is not None]
    if xl.rank(dirs, n) < n:
        raise DirectionsDoNotSpan("edge directions do not span", rank=xl.rank(dirs, n))
    H = dual_obstruction_basis(curve)
    if H.dimension == 0:
        return None
    ok, _ = well_spaced_check(curve, seed)
    if not ok:
        raise NotWellSpaced("curve is not well-spaced")
    dec = bouquet_decomposition(curve)
    img = _image_curve_unchecked(curve)
    classes = assumption_profile(curve).vertex_classes
    table = path_length_table(curve, dec)
    sources = {v for b in dec.bouquets for v in b.vertices}
    dist, pred = _predecessors(curve, sources)
    if genus(curve) == 1:
        steps = _genus_one_steps(curve, dec, img, table, n, seed)
    else:
        steps = _higher_genus_steps(curve, H, img, table, seed)
    return steps, img, classes, dist, pred


def tied_vertices(curve: TropicalCurve, seed: int = None) -> List[Tuple[str, ...]]:
    """Closest vertices seen by each adapted basis element (empty tuple when it couples trivially)."""
    data = adapted_steps(curve, seed)
    if data is None:
        return []
    return [tuple(group) for _, group, _ in data[0]]


def path_to_loop(curve: TropicalCurve, vertex: str, pred=None) -> List[str]:
    """Edge ids on the shortest path from ``vertex`` to the loops."""
    if pred is None:
        dec = bouquet_decomposition(curve)
        _, pred = _predecessors(curve, {v for b in dec.bouquets for v in b.vertices})
    out = []
    v = vertex
    while pred.get(v) is not None:
        v, eid = pred[v]
        out.append(eid)
    return out


def leading_form_system(curve: TropicalCurve, base_point: Dict = None, seed: int = None) -> LeadingFormSystem:
    """Leading linear forms of the Kuranishi map at a point of its zero locus.

    Genus one: the basis of ``H`` is adapted to the nested spans obtained by
    adding, step by step, the directions leaving the slice at the closest
    vertices. Unique-bouquet higher genus: the basis starts with the
    elements coupling trivially with every tree, then is extended by
    elements of minimal support.

    Raises:
        DirectionsDoNotSpan: edge directions do not span the ambient space.
        NotWellSpaced: the well-spacedness test fails.
    """
    seed = stratification_seed() if seed is None else seed
    data = adapted_steps(curve, seed)
    if data is None:
        return LeadingFormSystem((), (), ())
    steps, img, classes, dist, pred = data
    variables = set()
    plan = []
    for covector_of, cands, inside in steps:
        paths = []
        for iv in cands:
            v = min(img.vertices[iv].preimages, key=lambda x: (dist[x], x))
            mono, lead, exc = _path_monomial(curve, img, v, pred, classes)
            d = _out_direction(curve, img, iv, inside)
            paths.append(_PathData(iv, mono, lead, d, exc))
            variables.update(mono)
        plan.append((covector_of, paths))
    values = _random_values(variables, seed)
    if base_point:
        values.update({k: Fraction(v) for k, v in base_point.items()})
    solved = set()
    raw_forms, covs = [], []
    for covector_of, paths in plan:
        raw_forms.append(_assemble(paths, covector_of, values, solved))
        covs.append(covector_of(None))
    order = tuple(sorted(variables, key=repr))
    idx = {x: i for i, x in enumerate(order)}
    forms = []
    for f in raw_forms:
        row = [Fraction(0)] * len(order)
        for x, c in f.items():
            row[idx[x]] += c
        forms.append(tuple(row))
    return LeadingFormSystem(order, tuple(forms), tuple(covs), dict(sorted(values.items(), key=lambda kv: repr(kv[0]))))


def _generic_in(space, n, rng, avoid=()):
    """Random integral combination of ``space`` not annihilating any vector of ``avoid``."""
    for _ in range(64):
        v = [0] * n
        for b in space:
            c = rng.choice([-1, 1]) * rng.randint(1, 97)
            v = [x + c * y for x, y in zip(v, b)]
        v = xl.clear_denominators(v)
        if any(v) and all(xl.dot(v, a) != 0 for a in avoid):
            return tuple(v)
    raise NotWellSpaced("no generic covector found")


def _genus_one_steps(curve, dec, img, table, n, seed):
    rng = random.Random(seed)
    classes = assumption_profile(curve).vertex_classes
    W = [curve.edges[e].direction for e in dec.loops]
    W = xl.hermite_normal_form(xl.saturation(W, n), n)
    comps = dec.complements
    steps = []
    while len(W) < n:
        Wn = list(W)

        def inside(iv, d, Wn=Wn):
            return xl.in_span(d, Wn, n)

        cands = set()
        for comp in comps:
            cands.update(_slice_candidates(curve, comp, lambda d: inside(None, d), img))
        if not cands:
            raise DirectionsDoNotSpan("no vertex leaves the current span", span_rank=len(W))
        m = min(table.distances[c] for c in cands)
        minimal = sorted(c for c in cands if table.distances[c] == m)
        groups = defaultdict(list)
        lines = {}
        for c in minimal:
            d = _out_direction(curve, img, c, inside)
            key = tuple(tuple(r) for r in xl.hermite_normal_form(xl.saturation(list(Wn) + [d], n), n))
            groups[key].append(c)
            lines[key] = d
        keys = sorted(groups)
        for key in keys:
            others = list(Wn) + [lines[k] for k in keys if k != key]
            space = xl.annihilator_basis(others, n)
            a = _generic_in(space, n, rng, avoid=[lines[key]])
            group = groups[key]
            if len(group) == 1 and classes.get(group[0]) not in EXCEPTION_CLASSES:
                raise NotWellSpaced("unique closest vertex", vertex=group[0])

            def cov(_p, a=a):
                return a

            steps.append((cov, group, inside))
        W = xl.hermite_normal_form(xl.saturation(list(Wn) + [lines[k] for k in keys], n), n)
    return steps


def _slice_candidates(curve, comp, inside, img):
    start = comp.attachments[0]
    comp_edges = set(comp.edges)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in curve.incident(v):
            if e.id not in comp_edges or not e.bounded:
                continue
            if e.direction is not None and not inside(e.direction):
                continue
            w = e.other_end(v)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    out = set()
    for v in seen:
        if v != start and any(
            e.id in comp_edges and e.direction is not None and not inside(e.direction) for e in curve.incident(v)
        ):
            out.add(img.vertex_of[v])
    return out


def _higher_genus_steps(curve, H, img, table, seed):
    ctx = _context(curve, H)
    n = curve.ambient_rank
    h = H.dimension
    sd = H.decomposition
    busy = sorted({seg for seg, comp in ctx.comps if seg is not None and comp.vertices})
    rows = [
        tuple(H.vectors[j][s][k] for j in range(h)) for s in busy for k in range(n)
    ]
    trivial = xl.kernel_basis(rows, h) if rows else [tuple(int(i == j) for j in range(h)) for i in range(h)]
    chosen = [tuple(Fraction(x) for x in t) for t in trivial]
    # extend with one-dimensional flats cut out by segment vanishing
    seg_conds = [c for c in ctx.conditions if c.label[0] == "segment"]
    lines = []
    for c in seg_conds:
        ker = xl.kernel_basis(list(c.rows), h)
        if len(ker) == 1:
            lines.append(tuple(ker[0]))
    lines.sort(key=lambda v: (sum(1 for s in range(len(sd.segments)) if any(H.combine(v)[s])), v))
    extension = []
    for v in lines + [tuple(int(i == j) for j in range(h)) for i in range(h)]:
        if xl.rank(chosen + extension + [v], h) > len(chosen) + len(extension):
            extension.append(v)
    basis = extension + chosen
    classes = assumption_profile(curve).vertex_classes
    steps = []
    for coeffs in basis:
        cov = H.combine(coeffs)
        per_comp = []
        for seg, comp in ctx.comps:
            if seg is None or not any(cov[seg]):
                continue
            u = cov[seg]
            cands = _candidates(ctx, comp, u, img)
            if cands:
                m = min(table.distances[c] for c in cands)
                per_comp.append((m, seg, [c for c in cands if table.distances[c] == m]))
        seg_of = {}
        if per_comp:
            m = min(x[0] for x in per_comp)
            att = [x for x in per_comp if x[0] == m]
            if len(att) == 1 and not all(classes.get(v) in EXCEPTION_CLASSES for v in att[0][2]):
                raise NotWellSpaced("unique closest component", vertices=att[0][2])
            group = []
            for _, seg, vs in att:
                for v in vs:
                    seg_of[v] = seg
                    group.append(v)
        else:
            group = []

        def covector_of(p, cov=cov, seg_of=seg_of):
            if p is None:
                return cov
            return cov[seg_of[p.vertex]]

        def inside(iv, d, cov=cov, seg_of=seg_of):
            return xl.dot(cov[seg_of[iv]], d) == 0

        steps.append((covector_of, group, inside))
    return steps


# ---------------------------------------------------------------------------
# tropicalization with modulus


def tropicalization_lengths(coefficients: Sequence[Sequence], tau: float) -> List[float]:
    """Edge lengths ``(log|k_{i-1}/m_{i-1}| + log|l_i/m_i|) / log tau`` along a path.

    Raises:
        NonPositiveModulus: unless ``tau > 1``.
    """
    if not tau > 1:
        raise NonPositiveModulus("modulus must exceed 1", tau=tau)
    lt = math.log(tau)
    out = []
    for i in range(1, len(coefficients)):
        k0, _, m0 = (Fraction(x) for x in coefficients[i - 1])
        _, l1, m1 = (Fraction(x) for x in coefficients[i])
        out.append((_log_abs(k0 / m0) + _log_abs(l1 / m1)) / lt)
    return out


def _log_abs(q: Fraction) -> float:
    if q == 0:
        raise InvalidConfig("ratios must be nonzero")
    q = abs(q)
    return math.log(q.numerator) - math.log(q.denominator)


def tropical_path_length(cfg: PreLogPathConfig, tau: float) -> float:
    """``d(P)``: the sum of the tropicalized edge lengths along the path."""
    coeffs = list(cfg.coefficients)
    if cfg.example1 is not None:
        a, b = cfg.example1
        coeffs[0] = (a, coeffs[0][1], b)
    return sum(tropicalization_lengths(coeffs, tau))


def matching_residual(P: PreLogPathConfig, Q: PreLogPathConfig, c, tau: float) -> float:
    """``d(P) - d(Q) - log c / log tau``; zero when the two terms cancel with ratio ``c``."""
    if not tau > 1:
        raise NonPositiveModulus("modulus must exceed 1", tau=tau)
    return tropical_path_length(P, tau) - tropical_path_length(Q, tau) - _log_abs(Fraction(c)) / math.log(tau)


def cancellation_pair(tau: int, c, lengths=(2, 1)) -> Tuple[PreLogPathConfig, PreLogPathConfig]:
    """Two two-edge paths whose leading coefficients have ratio ``c``.

    Coefficient ratios are powers of ``tau`` matching the integral lengths,
    and the first path carries an extra factor ``c`` at its root.
    """
    tau = Fraction(tau)
    c = Fraction(c)
    r1, r2 = (Fraction(x) for x in lengths)
    # |k0/m0| * |l1/m1| = tau^r1 ; |k1/m1| * |l2/m2| = tau^r2
    base = [
        (tau ** int(r1), 1, 1),
        (1, 1, 1),
        (1, tau ** int(r2), 1),
    ]
    P = PreLogPathConfig(
        ((c * base[0][0], 1, 1), base[1], base[2]), (1, 1), (r1, r2), direction=(0, 0, -1)
    )
    Q = PreLogPathConfig(tuple(base), (1, 1), (r1, r2), direction=(0, 0, -1))
    return P, Q
