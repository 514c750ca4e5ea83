"""Hand-built curves used by the tests, the demos and the shipped data files.

Where only directions and weights are prescribed, the positions below were
chosen to satisfy balancing and to avoid accidental overlaps; every builder
returns a raw dict that goes through :func:`validate_curve`.
"""

from fractions import Fraction
from typing import Dict, Sequence

from .curve_model import TropicalCurve, validate_curve


def build(n: int, positions: Dict[str, Sequence], bounded: Sequence, unbounded: Sequence,
          markings: Sequence[str] = ()) -> dict:
    """Assemble a raw curve dict.

    Args:
        n: ambient rank.
        positions: vertex id -> coordinates (ints, Fractions or 'p/q').
        bounded: tuples ``(id, a, b)`` or ``(id, a, b, weight)``.
        unbounded: tuples ``(id, v, direction)`` or ``(id, v, direction, weight)``.
        markings: marked edge ids.
    """
    def fmt(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    verts = [{"id": v, "position": [fmt(x) for x in p]} for v, p in positions.items()]
    edges = []
    for item in bounded:
        eid, a, b = item[:3]
        w = item[3] if len(item) > 3 else 1
        edges.append({"id": eid, "weight": w, "ends": [a, b]})
    for item in unbounded:
        eid, v, d = item[:3]
        w = item[3] if len(item) > 3 else 1
        edges.append({"id": eid, "weight": w, "end": v, "direction": list(d)})
    return {"ambient_rank": n, "vertices": verts, "edges": edges, "markings": list(markings)}


def _add(p, q, s=1):
    return tuple(Fraction(a) + Fraction(s) * Fraction(b) for a, b in zip(p, q))


def tropical_line() -> dict:
    return build(2, {"v": (0, 0)}, [], [
        ("e1", "v", (-1, 0)), ("e2", "v", (0, -1)), ("e3", "v", (1, 1)),
    ])


def planar_genus_one() -> dict:
    """A triangle loop in the plane with three ends (non-superabundant)."""
    return build(2, {"a": (0, 0), "b": (1, 0), "c": (0, 1)}, [
        ("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a"),
    ], [
        ("ea", "a", (-1, -1)), ("eb", "b", (2, -1)), ("ec", "c", (-1, 2)),
    ])


def square_loop_in_space(lengths=(1, 1, 1, 1)) -> dict:
    """Planar square in z = 0 inside three-space with four planar ends.

    The whole curve lies in the plane, so ``H`` is spanned by ``dz``.
    """
    a, b = lengths[0], lengths[1]
    pos = {"p1": (0, 0, 0), "p2": (a, 0, 0), "p3": (a, b, 0), "p4": (0, b, 0)}
    return build(3, pos, [
        ("s12", "p1", "p2"), ("s23", "p2", "p3"), ("s34", "p3", "p4"), ("s41", "p4", "p1"),
    ], [
        ("e1", "p1", (-1, -1, 0)), ("e2", "p2", (1, -1, 0)),
        ("e3", "p3", (1, 1, 0)), ("e4", "p4", (-1, 1, 0)),
    ])


def gamma1(x1=1, y2=2, s3=3, top=0, bottom=-1) -> dict:
    """Genus two curve with two horizontal tripods joined by three vertical edges."""
    T4 = (0, 0, top)
    T1, T2, T3 = (x1, 0, top), (0, -y2, top), (-s3, s3, top)
    B4 = (0, 0, bottom)
    B1, B2, B3 = (x1, 0, bottom), (0, -y2, bottom), (-s3, s3, bottom)
    pos = {"T1": T1, "T2": T2, "T3": T3, "T4": T4, "B1": B1, "B2": B2, "B3": B3, "B4": B4}
    bounded = [
        ("t1", "T4", "T1"), ("t2", "T4", "T2"), ("t3", "T4", "T3"),
        ("b1", "B4", "B1"), ("b2", "B4", "B2"), ("b3", "B4", "B3"),
        ("v1", "T1", "B1"), ("v2", "T2", "B2"), ("v3", "T3", "B3"),
    ]
    unbounded = [
        ("eT1", "T1", (1, 0, 1)), ("eB1", "B1", (1, 0, -1)),
        ("eT2", "T2", (0, -1, 1)), ("eB2", "B2", (0, -1, -1)),
        ("eT3", "T3", (-1, 1, 1)), ("eB3", "B3", (-1, 1, -1)),
    ]
    return build(3, pos, bounded, unbounded)


def gamma2(lam="1/2") -> dict:
    """The modification of ``gamma1`` at the vertical edge T2-B2.

    The ends at T2 and B2 are replaced by ``(-1,0,0)`` ends, and the vertical
    edge is moved off along ``(1,-1,0)`` to a new edge ``c-d``.
    """
    g = gamma1()
    pos = {v["id"]: tuple(Fraction(x) for x in v["position"]) for v in g["vertices"]}
    pos["c"] = _add(pos["T2"], (1, -1, 0), Fraction(lam))
    pos["d"] = _add(pos["B2"], (1, -1, 0), Fraction(lam))
    bounded = [
        ("t1", "T4", "T1"), ("t2", "T4", "T2"), ("t3", "T4", "T3"),
        ("b1", "B4", "B1"), ("b2", "B4", "B2"), ("b3", "B4", "B3"),
        ("v1", "T1", "B1"), ("v3", "T3", "B3"),
        ("tc", "T2", "c"), ("bd", "B2", "d"), ("cd", "c", "d"),
    ]
    unbounded = [
        ("eT1", "T1", (1, 0, 1)), ("eB1", "B1", (1, 0, -1)),
        ("eT2", "T2", (-1, 0, 0)), ("eB2", "B2", (-1, 0, 0)),
        ("ec", "c", (1, -1, 1)), ("ed", "d", (1, -1, -1)),
        ("eT3", "T3", (-1, 1, 1)), ("eB3", "B3", (-1, 1, -1)),
    ]
    return build(3, pos, bounded, unbounded)


# ---------------------------------------------------------------------------
# genus one cubics in three-space

_HEPT = {
    "w1": (2, 0, 0), "w2": (3, 1, 0), "w3": (3, 2, 0), "w4": (2, 3, 0),
    "w5": (1, 3, 0), "w6": (0, 2, 0), "w7": (0, 0, 0),
}


def cubic(tA=1, tB=1, tC=2, sA=1, sB=1, variant="plain") -> dict:
    """Genus one curve with a heptagonal loop in the plane z = 0.

    The loop vertices w2, w3, w4 carry the trees B, C, A leaving the plane;
    ``tA, tB, tC`` are the integral lengths of the edges from the loop.
    ``variant`` selects the local model at B: ``"plain"`` (trivalent),
    ``"example1"`` (two vertical ends merged over a contracted edge),
    ``"example2a"`` or ``"example2b"`` (four distinct edges over a
    contracted edge).
    """
    pos = dict(_HEPT)
    names = list(_HEPT)
    bounded = [(f"l{k + 1}", names[k - 1], names[k]) for k in range(7)]
    unbounded = [
        ("e1", "w1", (0, -1, 0)), ("e5", "w5", (0, 1, 0)),
        ("e6", "w6", (-1, 0, 0)), ("e7", "w7", (-1, -1, 0)),
    ]
    # tree A at w4, direction (0,1,0)
    pos["A"] = _add(pos["w4"], (0, 1, 0), tA)
    pos["A2"] = _add(pos["A"], (0, 1, 1), sA)
    bounded += [("pA", "w4", "A"), ("qA", "A", "A2")]
    unbounded += [("zA", "A", (0, 0, -1)), ("fA", "A2", (1, 1, 1)), ("gA", "A2", (-1, 0, 0))]
    # tree C at w3, direction (1,0,0)
    pos["C"] = _add(pos["w3"], (1, 0, 0), tC)
    bounded += [("pC", "w3", "C")]
    unbounded += [("zC", "C", (0, 0, -1)), ("fC", "C", (1, 0, 1))]
    # tree B at w2, direction (1,0,0)
    pos["B"] = _add(pos["w2"], (1, 0, 0), tB)
    bounded += [("pB", "w2", "B")]
    if variant == "plain":
        pos["B2"] = _add(pos["B"], (1, 0, 1), sB)
        bounded += [("qB", "B", "B2")]
        unbounded += [("zB", "B", (0, 0, -1)), ("fB", "B2", (1, 1, 1)), ("gB", "B2", (0, -1, 0))]
    else:
        pos["Bx"] = pos["B"]
        bounded += [("cB", "B", "Bx")]
        if variant == "example1":
            unbounded += [("zB", "B", (0, 0, -1)), ("zBx", "Bx", (0, 0, -1)), ("fB", "Bx", (1, 0, 2))]
        elif variant == "example2b":
            unbounded += [("zB", "B", (0, 0, -1)), ("fB", "Bx", (1, 1, 2)), ("gB", "Bx", (0, -1, -1))]
        elif variant == "example2a":
            unbounded += [("zB", "B", (0, 0, -1)), ("fB", "Bx", (1, 1, 1)), ("gB", "Bx", (0, -1, 0))]
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return build(3, pos, bounded, unbounded)


def cubic_weight(tA=1, tB=1, tC=2) -> TropicalCurve:
    """The genus one curve after ``diag(1, 2, 1)``; the edge from the loop to A gets weight 2."""
    from .curve_model import transform_curve

    return transform_curve(validate_curve(cubic(tA, tB, tC)), [[1, 0, 0], [0, 2, 0], [0, 0, 1]])


def cubic_example2c() -> dict:
    """The cubic lifted to four-space with an Example 2 (c) vertex at B."""
    raw = cubic(1, 1, 2, variant="plain")
    pos = {v["id"]: tuple(Fraction(x) for x in v["position"]) + (0,) for v in raw["vertices"]}
    pos.pop("B2")
    pos["Bx"] = pos["B"]
    bounded = [(e["id"], *e["ends"]) for e in raw["edges"] if "ends" in e and e["id"] != "qB"]
    bounded.append(("cB", "B", "Bx"))
    unbounded = [(e["id"], e["end"], tuple(e["direction"]) + (0,)) for e in raw["edges"]
                 if "end" in e and e["end"] not in ("B", "B2")]
    unbounded += [("zB", "B", (0, 0, -1, 0)), ("fB", "Bx", (1, 0, 1, 1)), ("gB", "Bx", (0, 0, 0, -1))]
    return build(4, pos, bounded, unbounded)


def _square_with_weighted_tree(rA, rB, A_variant="immersed", B_variant="plain") -> dict:
    pos = {"Q": (0, 0, 0), "P": (1, 2, 0), "R": (-1, 2, 0), "S": (-1, 0, 0)}
    bounded = [("qp", "Q", "P"), ("pr", "P", "R"), ("rs", "R", "S"), ("sq", "S", "Q")]
    unbounded = [("eQ", "Q", (0, -1, 0), 2), ("eS", "S", (-1, -1, 0))]
    pos["A"] = _add(pos["P"], (1, 1, 0), rA)
    bounded.append(("pA", "P", "A", 2))
    if A_variant == "immersed":
        unbounded += [("zA", "A", (0, 0, -1), 2), ("fA", "A", (1, 1, 1), 2)]
    else:
        pos["Ax"] = pos["A"]
        bounded.append(("cA", "A", "Ax"))
        unbounded += [("zA", "A", (0, 0, -1)), ("zAx", "Ax", (0, 0, -1)), ("fA", "Ax", (1, 1, 1), 2)]
    pos["B"] = _add(pos["R"], (-1, 1, 0), rB)
    bounded.append(("rB", "R", "B"))
    if B_variant == "plain":
        unbounded += [("zB", "B", (0, 0, -1)), ("fB", "B", (-1, 1, 1))]
    else:
        pos["Bx"] = pos["B"]
        bounded.append(("cB", "B", "Bx"))
        unbounded += [("zB", "B", (0, 0, -1)), ("zBx", "Bx", (0, 0, -1)), ("fB", "Bx", (-1, 1, 2))]
    return build(3, pos, bounded, unbounded)


def cubicmove_b_ii(r=2) -> dict:
    """Weight-2 edge to an immersed vertex A, same integral length as B's edge."""
    return _square_with_weighted_tree(r, r, "immersed", "plain")


def cubicmove_b_i(r=2) -> dict:
    """As ``cubicmove_b_ii`` but A is replaced by an Example 1 vertex."""
    return _square_with_weighted_tree(r, r, "example1", "plain")


def cubicmove_a(rA=4, rB=1) -> dict:
    """B (Example 1) strictly closer to the loop than A."""
    return _square_with_weighted_tree(rA, rB, "immersed", "example1")


# ---------------------------------------------------------------------------
# genus two


def genus2(r1=1, r2=1, nondef=None) -> dict:
    """Planar theta graph in z = 0 with two trees E1, E2 leaving the plane.

    With ``nondef`` set to a length, the end at Q2 is replaced by a bounded
    edge F1 of that length to a vertex whose ends leave the plane.
    """
    pos = {
        "P": (0, 0, 0), "Q": (0, 1, 0),
        "P1": (-1, 0, 0), "Q1": (-1, 2, 0),
        "P2": (1, -1, 0), "Q2": (1, 1, 0),
    }
    bounded = [
        ("pq", "P", "Q"),
        ("pp1", "P", "P1"), ("p1q1", "P1", "Q1"), ("q1q", "Q1", "Q"),
        ("pp2", "P", "P2"), ("p2q2", "P2", "Q2"), ("q2q", "Q2", "Q"),
    ]
    pos["al"] = _add(pos["P1"], (-1, -1, 0), r1)
    pos["al2"] = _add(pos["Q1"], (-1, 2, 0), r2)
    bounded += [("E1", "P1", "al"), ("E2", "Q1", "al2")]
    unbounded = [
        ("zal", "al", (0, 0, -1)), ("fal", "al", (-1, -1, 1)),
        ("zal2", "al2", (0, 0, -1)), ("fal2", "al2", (-1, 2, 1)),
        ("eP2", "P2", (1, -2, 0)),
    ]
    if nondef is None:
        unbounded.append(("eQ2", "Q2", (1, 1, 0)))
    else:
        pos["be"] = _add(pos["Q2"], (1, 1, 0), nondef)
        bounded.append(("F1", "Q2", "be"))
        unbounded += [("zbe", "be", (0, 0, -1)), ("fbe", "be", (1, 1, 1))]
    return build(3, pos, bounded, unbounded)


def superabundant_genus2(split=1) -> dict:
    """``gamma1`` with every end split into a bounded edge and two ends, then y reflected.

    The resulting ends have directions ``(0,0,1), (0,0,-1), (1,0,0),
    (0,1,0), (-1,-1,0)``.
    """
    base = validate_curve(gamma1())
    pos = {v: p for v, p in base.vertices.items()}
    bounded = [(e.id, *e.ends) for e in base.bounded_edges]
    unbounded = []
    for e in base.unbounded_edges:
        v = e.ends[0]
        d = e.direction
        new = f"m{e.id}"
        pos[new] = _add(pos[v], d, split)
        bounded.append((e.id, v, new))
        unbounded.append((f"h{e.id}", new, (d[0], d[1], 0)))
        unbounded.append((f"z{e.id}", new, (0, 0, d[2])))
    pos = {v: (p[0], -p[1], p[2]) for v, p in pos.items()}
    unbounded = [(i, v, (d[0], -d[1], d[2])) for i, v, d in unbounded]
    return build(3, pos, bounded, unbounded)


def two_bouquets() -> dict:
    """Genus two with two bouquets joined by a bridge (outside every theorem here).

    The left square lies in z = 0 and is superabundant; the right loop spans
    three-space.
    """
    pos = {
        "L1": (0, 0, 0), "L2": (1, 0, 0), "L3": (1, 1, 0), "L4": (0, 1, 0),
        "X": (2, 2, 0), "Y": (3, 3, 1), "R1": (4, 3, 1), "R3": (4, 3, 2), "R2": (3, 4, 2),
    }
    bounded = [
        ("l12", "L1", "L2"), ("l23", "L2", "L3"), ("l34", "L3", "L4"), ("l41", "L4", "L1"),
        ("br", "L3", "X"), ("xy", "X", "Y"),
        ("y1", "Y", "R1"), ("r13", "R1", "R3"), ("r32", "R3", "R2"), ("r2y", "R2", "Y"),
    ]
    unbounded = [
        ("eL1", "L1", (-1, -1, 0)), ("eL2", "L2", (1, -1, 0)), ("eL4", "L4", (-1, 1, 0)),
        ("zX", "X", (0, 0, -1)),
        ("eR1", "R1", (1, 0, -1)), ("eR3", "R3", (1, -1, 1)), ("eR2", "R2", (-1, 2, 1)),
    ]
    return build(3, pos, bounded, unbounded)


def unbalanced_line() -> dict:
    return build(2, {"v": (0, 0)}, [], [
        ("e1", "v", (-1, 0)), ("e2", "v", (0, -1)), ("e3", "v", (1, 0)),
    ])


def example1_local() -> dict:
    """Local Example 1 model: two weight-1 edges (weights w1, w2) over one image ray."""
    return example1_weights(1, 1)


def example1_weights(w1=1, w2=1) -> dict:
    pos = {"a": (0, 0, 0), "b": (0, 0, 0)}
    total = w1 + w2
    return build(3, pos, [("c", "a", "b")], [
        ("E1", "a", (-1, -1, 0), total), ("v1", "a", (0, 0, -1), w1),
        ("v2", "b", (0, 0, -1), w2), ("F", "b", (1, 1, 1), total),
    ])


def five_valent() -> dict:
    """Three trivalent vertices over one point (image valence five)."""
    pos = {"a": (0, 0, 0), "b": (0, 0, 0), "c": (0, 0, 0)}
    return build(3, pos, [("ab", "a", "b"), ("bc", "b", "c")], [
        ("e1", "a", (1, 0, 0)), ("e2", "a", (0, 1, 0)),
        ("e3", "b", (0, 0, 1)), ("e4", "c", (-1, -1, 0)), ("e5", "c", (0, 0, -1)),
    ])


CUBIC_MARKINGS = ("l1", "e5", "e6", "e7", "fA", "fB", "fC", "gA", "gB", "zA", "zB", "zC")


def cubic_marked() -> dict:
    """The cubic with twelve codimension-one markings.

    Only eleven of the ends are marked: marking all twelve leaves a
    one-parameter family (the heptagon shrinks while each planar end slides
    along itself), so the loop edge ``l1`` is marked instead of ``e1``.
    """
    raw = cubic()
    raw["markings"] = list(CUBIC_MARKINGS)
    return raw


def line_marked() -> dict:
    raw = tropical_line()
    raw["markings"] = ["e1", "e2"]
    return raw


CATALOG = {
    "line": tropical_line,
    "line_marked": line_marked,
    "planar_genus_one": planar_genus_one,
    "gamma1": gamma1,
    "gamma2": gamma2,
    "cubic": cubic,
    "cubic_marked": cubic_marked,
    "cubicnon_a": lambda: cubic(1, 2, 3),
    "cubicnon_b": lambda: cubic(2, 3, 1),
    "cubicweight2": lambda: cubic(2, 1, 3, variant="example1"),
    "cubic_example2b": lambda: cubic(2, 1, 3, variant="example2b"),
    "cubic_example2a": lambda: cubic(2, 1, 3, variant="example2a"),
    "cubic_example2c": cubic_example2c,
    "example1_local": example1_local,
    "five_valent": five_valent,
    "cubicmove_b_ii": cubicmove_b_ii,
    "cubicmove_b_i": cubicmove_b_i,
    "cubicmove_a": cubicmove_a,
    "cubic_weight": lambda: cubic_weight().to_raw(),
    "genus2": genus2,
    "genus2_nondef": lambda: genus2(1, 1, nondef=2),
    "superabundant_genus2": superabundant_genus2,
    "two_bouquets": two_bouquets,
    "unbalanced": unbalanced_line,
}


def load(name: str) -> TropicalCurve:
    return validate_curve(CATALOG[name]())


def constraint_documents() -> Dict[str, dict]:
    """Constraint documents shipped next to the curve documents."""
    from .cli_io import constraints_to_document
    from .enumeration_index import AffineConstraint, ConstraintSet, generic_constraints

    line = ConstraintSet((AffineConstraint((-1, 0), ()), AffineConstraint((0, -1), ())))
    cubic_cs = generic_constraints(load("cubic_marked"), [1] * len(CUBIC_MARKINGS), seed=3)
    return {
        "line_marked.constraints": constraints_to_document(line),
        "cubic_marked.constraints": constraints_to_document(cubic_cs),
    }


def prelog_documents() -> Dict[str, dict]:
    from .kuranishi_leading import cancellation_pair

    def doc(cfg):
        return {
            "coefficients": [[_fmt(x) for x in t] for t in cfg.coefficients],
            "weights": list(cfg.weights),
            "lengths": [_fmt(x) for x in cfg.lengths],
            "direction": list(cfg.direction),
            "example1": None,
            "segment": cfg.segment,
        }

    P, Q = cancellation_pair(10, Fraction(7, 3))
    return {"cancellation.prelog": {"paths": [doc(P), doc(Q)]}}


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def data_documents() -> Dict[str, dict]:
    """Every shipped document, keyed by file stem."""
    out = {name: builder() for name, builder in CATALOG.items()}
    out.update(constraint_documents())
    out.update(prelog_documents())
    out["line_count.manifest"] = {"curves": ["line_marked.json", "line_marked.json"]}
    return out


def serialize(doc: dict) -> str:
    import json

    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_data(directory) -> None:
    import os

    os.makedirs(directory, exist_ok=True)
    for name, doc in data_documents().items():
        with open(os.path.join(directory, name + ".json"), "w", encoding="utf-8") as fh:
            fh.write(serialize(doc))


if __name__ == "__main__":
    import os

    write_data(os.path.join(os.path.dirname(os.path.abspath(__file__)), "data"))
