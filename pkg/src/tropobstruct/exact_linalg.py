"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` and ``fractions.Fraction``
values, so there is no overflow and no rounding. Vectors are tuples and
matrices are lists of row tuples. Lattices are given by generator lists of
integer vectors (rows).
"""

from enum import Enum
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple, Union

from .errors import NotASublattice, ZeroVector

Vector = Tuple[int, ...]
Matrix = Sequence[Sequence]


class Index(Enum):
    """Marker returned by :func:`lattice_index` when ranks differ."""

    INFINITE = "INFINITE"

    def __repr__(self):
        return "Index.INFINITE"


INFINITE = Index.INFINITE


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive_vector(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries.

    Args:
        v: nonzero integer vector.

    Returns:
        The primitive vector pointing the same way.
    """
    g = content(v)
    if g == 0:
        raise ZeroVector("zero vector has no primitive direction", vector=list(v))
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence) -> Vector:
    """Scale a rational vector to a primitive integer vector (same sign).

    The zero vector is returned unchanged.
    """
    fr = [to_fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = content(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rational_direction(d: Sequence) -> Tuple[Vector, Fraction]:
    """Write a nonzero rational vector as ``lam * p`` with ``p`` primitive.

    Returns:
        ``(p, lam)`` with ``lam > 0``.
    """
    p = clear_denominators(d)
    if not any(p):
        raise ZeroVector("zero displacement", vector=[str(x) for x in d])
    i = next(k for k, x in enumerate(p) if x != 0)
    lam = to_fraction(d[i]) / p[i]
    return p, lam


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def mat_vec(M: Matrix, v: Sequence):
    return tuple(dot(row, v) for row in M)


def mat_mul(A: Matrix, B: Matrix):
    bt = list(zip(*B)) if B else []
    return [tuple(dot(row, col) for col in bt) for row in A]


def transpose(M: Matrix, ncols: int = None):
    if not M:
        return [tuple() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*M)]


def rref(M: Matrix, ncols: int = None):
    """Reduced row echelon form over the rationals.

    The elimination runs on primitive integer rows; pivot rows are divided
    by their pivots at the end (the reduced form is unique).

    Returns:
        ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    rows = []
    for r in M:
        fr = [to_fraction(x) for x in r]
        rows.append(list(clear_denominators(fr)) if any(x.denominator != 1 for x in fr) else [int(x) for x in fr])
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    rows = [r for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        a = p[c]
        for i in range(len(rows)):
            b = rows[i][c]
            if i != r and b:
                g = gcd(a, b)
                row = [(a // g) * x - (b // g) * y for x, y in zip(rows[i], p)]
                h = content(row)
                rows[i] = [x // h for x in row] if h > 1 else row
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = []
    for row, c in zip(rows[:r], pivots):
        a = row[c]
        out.append(tuple(Fraction(x, a) for x in row))
    return out, pivots


def rank(M: Matrix, ncols: int = None) -> int:
    """Rank over the rationals.

    Rows are scaled to integers and reduced by forward elimination, keeping
    each row primitive so entries stay small.
    """
    rows = []
    for r in M:
        fr = [to_fraction(x) for x in r]
        v = clear_denominators(fr) if any(x.denominator != 1 for x in fr) else [int(x) for x in fr]
        if any(v):
            rows.append(list(v))
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk]
        a = p[c]
        for i in range(rk + 1, len(rows)):
            b = rows[i][c]
            if b:
                g = gcd(a, b)
                row = [(a // g) * x - (b // g) * y for x, y in zip(rows[i], p)]
                h = content(row)
                rows[i] = [x // h for x in row] if h > 1 else row
        rk += 1
        if rk == len(rows):
            break
    return rk


def kernel_basis(M: Matrix, ncols: int = None) -> List[Vector]:
    """Basis of ``{x : Mx = 0}`` over the rationals.

    One vector per free column (ascending), scaled to a primitive integer
    vector. ``ncols`` is needed when ``M`` has no rows.
    """
    if ncols is None:
        if not M:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(M[0])
    R, pivots = rref(M, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(clear_denominators(x))
    return basis


def solve(M: Matrix, b: Sequence, ncols: int = None):
    """One rational solution of ``Mx = b`` or ``None`` when inconsistent."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return tuple(x)


def in_span(v: Sequence, gens: Matrix, n: int) -> bool:
    if not any(to_fraction(x) for x in v):
        return True
    if not gens:
        return False
    return rank(list(gens) + [tuple(v)], n) == rank(gens, n)


# ---------------------------------------------------------------------------
# integer row reduction


def _row_echelon_int(rows: List[List[int]], ncols: int, track: List[List[int]] = None):
    """Integer row echelon form by unimodular row operations.

    ``track`` (if given) receives the same row operations. Returns the pivot
    columns. Rows are modified in place; zero rows sink to the bottom.
    """
    r = 0
    pivots = []
    m = len(rows)
    for c in range(ncols):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if rows[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][c]))
            if i0 != r:
                rows[r], rows[i0] = rows[i0], rows[r]
                if track is not None:
                    track[r], track[i0] = track[i0], track[r]
            done = True
            for i in range(r + 1, m):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if track is not None:
                        track[i] = [a - q * b for a, b in zip(track[i], track[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if any(rows[i][c] != 0 for i in range(r, m)):
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
                if track is not None:
                    track[r] = [-a for a in track[r]]
            pivots.append(c)
            r += 1
    return pivots


def hermite_normal_form(gens: Matrix, n: int) -> List[Vector]:
    """Row Hermite normal form of the lattice generated by ``gens``.

    The result is the canonical basis: echelon shape, positive pivots,
    entries above each pivot reduced into ``[0, pivot)``.
    """
    rows = [[int(x) for x in g] for g in gens if any(int(x) for x in g)]
    if not rows:
        return []
    pivots = _row_echelon_int(rows, n)
    rows = rows[: len(pivots)]
    for k, c in enumerate(pivots):
        p = rows[k][c]
        for i in range(k):
            q = rows[i][c] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[k])]
    return [tuple(r) for r in rows]


lattice_basis = hermite_normal_form


def integer_kernel_basis(M: Matrix, n: int) -> List[Vector]:
    """Basis of the integer lattice ``{x in Z^n : Mx = 0}`` (saturated).

    Obtained by column reduction of ``M`` while tracking the unimodular
    transform; the columns that end up zero span the kernel.
    """
    rows = [[int(x) for x in col] for col in transpose(M, n)] if M else [[] for _ in range(n)]
    track = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    m = len(M)
    pivots = _row_echelon_int(rows, m, track) if m else []
    kern = track[len(pivots):]
    return hermite_normal_form(kern, n)


def annihilator_basis(vectors: Matrix, n: int) -> List[Vector]:
    """Saturated integer basis of ``{phi : phi(v) = 0 for all v in vectors}``."""
    vs = [tuple(v) for v in vectors]
    if not vs:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    vs = [clear_denominators(v) for v in vs]
    return integer_kernel_basis(vs, n)


def saturation(sub: Matrix, n: int) -> List[Vector]:
    """Basis of ``span_Q(sub)`` intersected with ``Z^n``."""
    vs = [clear_denominators(v) for v in sub if any(to_fraction(x) for x in v)]
    if not vs:
        return []
    perp = kernel_basis(vs, n)
    if not perp:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return integer_kernel_basis(perp, n)


def in_lattice(v: Sequence[int], basis: Matrix, n: int) -> bool:
    """Integral membership of ``v`` in the lattice spanned by ``basis``."""
    if not any(v):
        return True
    hnf = hermite_normal_form(basis, n)
    if not hnf:
        return False
    x = solve(transpose(hnf), list(v), len(hnf))
    if x is None:
        return False
    return all(c.denominator == 1 for c in x)


def same_lattice(A: Matrix, B: Matrix, n: int) -> bool:
    """Lattice equality by mutual integral membership of generators."""
    return all(in_lattice(a, B, n) for a in A) and all(in_lattice(b, A, n) for b in B)


def smith_invariants(M: Matrix) -> List[int]:
    """Elementary divisors ``d1 | d2 | ... | dr`` of an integer matrix.

    Zero divisors are dropped, so the length equals the rank.
    """
    A = [[int(x) for x in row] for row in M]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag = []
    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                return diag
            _, i, j = min(nz)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
    return diag


def lattice_index(sub: Matrix, ambient: Matrix, n: int = None) -> Union[int, Index]:
    """Index ``[<ambient> : <sub>]`` of lattices given by generators.

    Args:
        sub: generators of the smaller lattice.
        ambient: generators of the larger lattice.
        n: ambient rank (inferred from the generators when omitted).

    Returns:
        A positive integer, or ``INFINITE`` when ``sub`` has lower rank.

    Raises:
        NotASublattice: a generator of ``sub`` is outside ``<ambient>``.
    """
    if n is None:
        n = len((list(sub) + list(ambient))[0])
    amb = hermite_normal_form(ambient, n)
    coords = []
    for k, v in enumerate(sub):
        v = tuple(int(x) for x in v)
        if not any(v):
            continue
        if not amb:
            raise NotASublattice("generator outside the ambient span", generator=k)
        x = solve(transpose(amb), list(v), len(amb))
        if x is None:
            raise NotASublattice("generator outside the ambient span", generator=k)
        if any(c.denominator != 1 for c in x):
            raise NotASublattice("generator not an integral combination", generator=k)
        coords.append([int(c) for c in x])
    if len(amb) == 0:
        return 1
    inv = smith_invariants(coords) if coords else []
    if len(inv) < len(amb):
        return INFINITE
    out = 1
    for d in inv:
        out *= d
    return out


def is_integral(v: Sequence) -> bool:
    return all(to_fraction(x).denominator == 1 for x in v)
