"""Independent reference computations.

None of these call into the package's linear algebra; they use sympy,
networkx or brute force so that agreement is meaningful.
"""

import itertools
from fractions import Fraction
from math import gcd

import networkx as nx
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def _gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, abs(int(v)))
    return g


def minors_gcd(M, k):
    """gcd of all ``k x k`` minors of an integer matrix."""
    m = sympy.Matrix(M)
    vals = []
    for rows in itertools.combinations(range(m.rows), k):
        for cols in itertools.combinations(range(m.cols), k):
            vals.append(m.extract(list(rows), list(cols)).det())
    return _gcd_all(vals)


def smith_by_minors(M):
    """Elementary divisors from ratios of minor gcds."""
    if not M or not any(any(r) for r in M):
        return []
    m = sympy.Matrix(M)
    r = m.rank()
    out = []
    prev = 1
    for k in range(1, r + 1):
        g = minors_gcd(M, k)
        out.append(g // prev)
        prev = g
    return out


def coset_count(M):
    """``[Z^n : M Z^n]`` for a square nonsingular integer matrix, by enumeration.

    Every class has a representative in ``[0, D)^n`` with ``D = |det M|``;
    ``x`` lies in the image iff ``adj(M) x`` is divisible by ``det M``.
    """
    m = sympy.Matrix(M)
    n = m.rows
    D = int(m.det())
    adj = m.adjugate()
    adj = [[int(adj[i, j]) for j in range(n)] for i in range(n)]
    A = abs(D)

    def key(x):
        return tuple((sum(adj[i][j] * x[j] for j in range(n))) % A for i in range(n))

    return len({key(x) for x in itertools.product(range(A), repeat=n)})


def _domain(M):
    rows = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in M]
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ)


def rational_rank(M, ncols):
    if not M:
        return 0
    return _domain(M).rank()


def nullspace(M, ncols):
    if not M:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    ns = _domain(M).nullspace().to_Matrix()
    return [tuple(Fraction(str(x)) for x in ns.row(i)) for i in range(ns.rows)]


def cycle_rank(curve):
    """First Betti number via networkx connected components."""
    g = nx.MultiGraph()
    g.add_nodes_from(curve.vertices)
    for e in curve.bounded_edges:
        g.add_edge(*e.ends)
    return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)


def non_bridges(curve):
    """Bounded edges whose removal keeps their ends connected."""
    out = []
    for e in curve.bounded_edges:
        g = nx.MultiGraph()
        g.add_nodes_from(curve.vertices)
        for f in curve.bounded_edges:
            if f.id != e.id:
                g.add_edge(*f.ends)
        if nx.has_path(g, *e.ends):
            out.append(e.id)
    return sorted(out)


def deformation_dimension(curve):
    """Dimension of vertex displacements keeping every bounded edge parallel.

    Uses 2x2 minors ``u_i d_j - u_j d_i = 0`` instead of annihilators.
    """
    n = curve.ambient_rank
    order = sorted(curve.vertices)
    idx = {v: k for k, v in enumerate(order)}
    N = n * len(order)
    rows = []
    for e in curve.bounded_edges:
        a, b = idx[e.ends[0]], idx[e.ends[1]]
        if e.direction is None:
            for i in range(n):
                r = [0] * N
                r[b * n + i] = 1
                r[a * n + i] = -1
                rows.append(r)
            continue
        u = e.direction
        for i, j in itertools.combinations(range(n), 2):
            r = [0] * N
            r[b * n + j] += u[i]
            r[a * n + j] -= u[i]
            r[b * n + i] -= u[j]
            r[a * n + i] += u[j]
            rows.append(r)
    return N - rational_rank(rows, N)


def flag_level_h_dimension(curve):
    """``dim H`` with one covector unknown per flag of a loop edge.

    Constraints: each flag value annihilates its edge direction, the two
    flag values of an edge sum to zero, and at every loop vertex the flag
    values sum to zero.
    """
    n = curve.ambient_rank
    loops = non_bridges(curve)
    var = {}
    for eid in loops:
        for side in (0, 1):
            var[(eid, side)] = len(var)
    N = n * len(var)
    if N == 0:
        return 0
    rows = []

    def unit(key, i, c=1):
        r = [0] * N
        r[var[key] * n + i] = c
        return r

    at = {}
    for eid in loops:
        e = curve.edges[eid]
        for side in (0, 1):
            r = [0] * N
            for i in range(n):
                r[var[(eid, side)] * n + i] = e.direction[i]
            rows.append(r)
            at.setdefault(e.ends[side], []).append((eid, side))
        for i in range(n):
            r = unit((eid, 0), i)
            r[var[(eid, 1)] * n + i] += 1
            rows.append(r)
    for v, flags in at.items():
        for i in range(n):
            r = [0] * N
            for key in flags:
                r[var[key] * n + i] += 1
            rows.append(r)
    return N - rational_rank(rows, N)


def direct_coefficient(cfg):
    """The leading coefficient written out as a single product."""
    c = cfg.coefficients
    N = len(c) - 1
    num = c[0][0] if cfg.example1 is None else cfg.example1[0]
    den = c[0][2] if cfg.example1 is None else cfg.example1[1]
    for i in range(1, N):
        num *= c[i][1] * c[i][0]
        den *= c[i][2] ** 2
    num *= c[N][1]
    den *= c[N][2]
    return Fraction(num) / Fraction(den)


def balancing_residuals(raw):
    """Weighted direction sums per vertex of a raw curve dict (no contractions)."""
    pos = {v["id"]: [Fraction(x) for x in v["position"]] for v in raw["vertices"]}
    n = raw["ambient_rank"]
    res = {v: [Fraction(0)] * n for v in pos}
    for e in raw["edges"]:
        w = e.get("weight", 1)
        if "ends" in e:
            a, b = e["ends"]
            d = [y - x for x, y in zip(pos[a], pos[b])]
            den = 1
            for x in d:
                den = den * x.denominator // gcd(den, x.denominator)
            ints = [int(x * den) for x in d]
            g = _gcd_all(ints)
            if g == 0:
                continue
            u = [x // g for x in ints]
            res[a] = [r + w * x for r, x in zip(res[a], u)]
            res[b] = [r - w * x for r, x in zip(res[b], u)]
        else:
            res[e["end"]] = [r + w * x for r, x in zip(res[e["end"]], e["direction"])]
    return res


def determinant(M):
    return int(sympy.Matrix(M).det())


def maximal_minors_gcd(rows):
    """gcd of the maximal minors of a tall integer matrix (columns fixed)."""
    from sympy.polys.domains import ZZ

    m = len(rows)
    k = len(rows[0])
    vals = []
    for drop in itertools.combinations(range(m), m - k):
        sub = [[ZZ(int(x)) for x in rows[i]] for i in range(m) if i not in drop]
        vals.append(DomainMatrix(sub, (k, k), ZZ).det())
    return _gcd_all(vals)
