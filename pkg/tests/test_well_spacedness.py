import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropobstruct import exact_linalg as xl
from tropobstruct import fixtures as F
from tropobstruct.curve_model import transform_curve, validate_curve
from tropobstruct.errors import NotAPath, ScopeError
from tropobstruct.fixtures import build
from tropobstruct.well_spacedness import (
    INF,
    Branch,
    Rule,
    Verdict,
    candidate_hyperplanes,
    gamma_prime,
    kuranishi_zero_check,
    normalized_length,
    path_length,
    path_length_table,
    smoothability_verdict,
    stratification_seed,
    well_spaced_check,
)

from generators import random_translation, random_unimodular

EXPECTED = {
    "line": (Verdict.SMOOTHABLE, Rule.NON_SUPERABUNDANT),
    "planar_genus_one": (Verdict.SMOOTHABLE, Rule.NON_SUPERABUNDANT),
    "gamma1": (Verdict.SMOOTHABLE, Rule.KURANISHI_ZERO),
    "gamma2": (Verdict.SMOOTHABLE, Rule.NON_SUPERABUNDANT),
    "cubic": (Verdict.SMOOTHABLE, Rule.GENUS_ONE_IMMERSIVE),
    "cubicnon_a": (Verdict.NOT_SMOOTHABLE, Rule.GENUS_ONE_IMMERSIVE),
    "cubicnon_b": (Verdict.NOT_SMOOTHABLE, Rule.GENUS_ONE_IMMERSIVE),
    "cubicweight2": (Verdict.SMOOTHABLE, Rule.GENUS_ONE_FOUR_VALENT),
    "cubic_example2b": (Verdict.SMOOTHABLE, Rule.GENUS_ONE_FOUR_VALENT),
    "cubic_example2a": (Verdict.NOT_SMOOTHABLE, Rule.GENUS_ONE_FOUR_VALENT),
    "cubic_example2c": (Verdict.NOT_SMOOTHABLE, Rule.GENUS_ONE_FOUR_VALENT),
    "cubicmove_b_ii": (Verdict.NOT_SMOOTHABLE, Rule.GENUS_ONE_IMMERSIVE),
    "cubicmove_b_i": (Verdict.SMOOTHABLE, Rule.GENUS_ONE_FOUR_VALENT),
    "cubicmove_a": (Verdict.SMOOTHABLE, Rule.GENUS_ONE_FOUR_VALENT),
    "cubic_weight": (Verdict.SMOOTHABLE, Rule.GENUS_ONE_IMMERSIVE),
    "genus2": (Verdict.SMOOTHABLE, Rule.UNIQUE_BOUQUET),
    "genus2_nondef": (Verdict.NOT_SMOOTHABLE, Rule.UNIQUE_BOUQUET),
    "superabundant_genus2": (Verdict.SMOOTHABLE, Rule.KURANISHI_ZERO),
    "two_bouquets": (Verdict.UNDETERMINED, Rule.NONE),
}


def _chain():
    """p0 -(length 3, weight 1)- p1 -(length 2, weight 2)- p2 in the plane."""
    pos = {"p0": (0, 0), "p1": (3, 0), "p2": (5, 2)}
    return validate_curve(build(2, pos, [("a", "p0", "p1"), ("b", "p1", "p2", 2)], [
        ("x1", "p0", (-1, 1)), ("x2", "p0", (0, -1)), ("y", "p1", (-1, -2)),
        ("z1", "p2", (1, 2)), ("z2", "p2", (1, 0)),
    ]))


def test_path_length_examples():
    c = _chain()
    assert path_length(c, ["p0", "p1"]) == 3
    assert path_length(c, ["p1", "p2"]) == 1
    assert path_length(c, ["p0", "p1", "p2"]) == 4


def test_path_length_rejects_non_path():
    with pytest.raises(NotAPath):
        path_length(_chain(), ["p0", "p2"])


def test_path_lengths_positive_and_additive_on_fixture():
    c = F.load("cubic")
    table = path_length_table(c)
    assert table.integral
    assert table.distances["A"] == 1 and table.distances["B"] == 1 and table.distances["C"] == 2
    assert table.distances["A2"] == table.distances["A"] + normalized_length(c, "qA")
    assert all(v > 0 for v in table.edge_lengths.values())


def test_gamma_prime_planar_curve():
    g = gamma_prime(F.load("planar_genus_one"))
    assert g.one_valent == ()
    assert g.dimension == 2
    assert candidate_hyperplanes(F.load("planar_genus_one")) == []


def test_gamma_prime_cubic():
    g = gamma_prime(F.load("cubic"))
    assert set(g.one_valent) == {"A", "B", "C"}


def test_codimension_one_has_one_stratum():
    hs = candidate_hyperplanes(F.load("cubic"))
    assert len(hs) == 1
    assert hs[0].normal in ((0, 0, 1), (0, 0, -1))


def _line_of(v):
    v = xl.primitive_vector(v)
    return max(v, tuple(-x for x in v))


def test_strata_match_enumeration_oracle():
    """Hyperplanes through the loop plane in four-space form a pencil.

    A member is special when it contains an extra edge direction or vertex;
    the strata are the special members plus one generic member.
    """
    c = F.load("cubic_example2c")
    g = gamma_prime(c)
    n = c.ambient_rank
    ann = xl.annihilator_basis(list(g.direction_basis), n)
    special = set()
    vectors = [e.direction for e in c.edges.values() if e.direction is not None]
    vectors += [xl.clear_denominators(xl.vec_sub(p, g.base_point)) for p in c.vertices.values()]
    for d in vectors:
        if not any(d) or xl.in_span(d, g.direction_basis, n):
            continue
        # the member of the pencil killing d
        a, b = (xl.dot(u, d) for u in ann)
        phi = [b * x - a * y for x, y in zip(ann[0], ann[1])]
        special.add(_line_of(phi))
    hs = candidate_hyperplanes(c)
    assert len(hs) == len(special) + 1
    assert {_line_of(h.normal) for h in hs if h.flat_dimension < 2} == special


def test_cubic_well_spaced_by_tie():
    ok, wits = well_spaced_check(F.load("cubic"))
    assert ok
    (w,) = wits
    assert w.branch == Branch.TWO_MINIMA
    assert set(w.minimizers) == {"A", "B"}


def test_cubicnon_fail():
    for name in ("cubicnon_a", "cubicnon_b"):
        ok, wits = well_spaced_check(F.load(name))
        assert not ok
        assert any(w.branch == Branch.FAIL for w in wits)


def test_cubicweight2_uses_four_valent_exception():
    ok, wits = well_spaced_check(F.load("cubicweight2"))
    assert ok
    assert [w.branch for w in wits] == [Branch.FOUR_VALENT_EXCEPTION]


def test_kuranishi_zero_examples():
    assert kuranishi_zero_check(F.load("superabundant_genus2"))
    assert kuranishi_zero_check(F.load("gamma1"))
    assert not kuranishi_zero_check(F.load("cubic"))


def test_kuranishi_zero_planar_ends():
    c = validate_curve(F.square_loop_in_space())
    assert kuranishi_zero_check(c)
    assert smoothability_verdict(c).rule == Rule.KURANISHI_ZERO


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_verdicts(name):
    v = smoothability_verdict(F.load(name))
    assert (v.verdict, v.rule) == EXPECTED[name]


def test_two_bouquets_names_failed_hypothesis():
    v = smoothability_verdict(F.load("two_bouquets"))
    assert v.failed_hypothesis == "unique_bouquet"
    with pytest.raises(ScopeError):
        well_spaced_check(F.load("two_bouquets"))


def test_kzero_implies_smoothable():
    for name in EXPECTED:
        c = F.load(name)
        if kuranishi_zero_check(c):
            assert smoothability_verdict(c).verdict == Verdict.SMOOTHABLE


def test_genus_one_without_h_is_vacuous():
    c = F.load("planar_genus_one")
    ok, wits = well_spaced_check(c)
    assert ok
    assert all(w.branch == Branch.VACUOUS for w in wits)


@pytest.mark.parametrize("r1,r2", [(1, 1), (2, 2), (3, 3), ("1/2", "1/2"), ("5/3", "5/3"),
                                   (1, 2), (2, 1), (3, "5/2"), ("1/2", "1/3"), (4, 1)])
def test_genus2_family(r1, r2):
    c = validate_curve(F.genus2(r1, r2))
    assert normalized_length(c, "E1") == Fraction(r1)
    assert normalized_length(c, "E2") == Fraction(r2)
    expect = Verdict.SMOOTHABLE if Fraction(r1) == Fraction(r2) else Verdict.NOT_SMOOTHABLE
    assert smoothability_verdict(c).verdict == expect


@pytest.mark.parametrize("f1", [1, 2, "1/2", 5, "7/3"])
def test_genus2_nondef(f1):
    c = validate_curve(F.genus2(1, 1, nondef=f1))
    assert smoothability_verdict(c).verdict == Verdict.NOT_SMOOTHABLE


def test_weight_transform_halves_normalized_length():
    base = F.load("cubic")
    c = F.load("cubic_weight")
    e = c.edges["pA"]
    assert e.weight == 2
    assert normalized_length(c, "pA") == Fraction(e.length) / 2
    assert normalized_length(c, "pA") == normalized_length(base, "pA")
    assert smoothability_verdict(c).verdict == Verdict.SMOOTHABLE


def test_seed_env(monkeypatch):
    monkeypatch.setenv("TROPIC_SEED", "17")
    assert stratification_seed() == 17
    monkeypatch.delenv("TROPIC_SEED")
    assert stratification_seed() == 1


@pytest.mark.parametrize("seed", [1, 2, 3, 99])
def test_verdict_independent_of_seed(seed):
    for name in ("cubic", "cubicnon_a", "cubic_example2c", "genus2", "genus2_nondef"):
        assert smoothability_verdict(F.load(name), seed).verdict == EXPECTED[name][0]


def test_inf_orders_above_rationals():
    assert INF > Fraction(10**9)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(EXPECTED)), st.integers(0, 10**6))
def test_verdict_unimodular_invariance(name, seed):
    rng = random.Random(seed)
    c = F.load(name)
    n = c.ambient_rank
    d = transform_curve(c, random_unimodular(rng, n), random_translation(rng, n))
    v, w = smoothability_verdict(c), smoothability_verdict(d)
    assert (v.verdict, v.rule) == (w.verdict, w.rule)
    assert kuranishi_zero_check(c) == kuranishi_zero_check(d)
