import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropobstruct import exact_linalg as xl
from tropobstruct import fixtures as F
from tropobstruct.curve_model import genus, transform_curve
from tropobstruct.moduli_space import (
    constraint_rows,
    deformation_space,
    expected_dimension,
    superabundance_report,
)
from tropobstruct.obstruction_space import obstruction_dimension

from generators import random_immersive_curve, random_translation, random_unimodular
from oracles import deformation_dimension, flag_level_h_dimension

TRIVALENT_A = [
    "line", "planar_genus_one", "gamma1", "gamma2", "cubic", "cubicnon_a", "cubicnon_b",
    "cubicmove_b_ii", "cubic_weight", "genus2", "genus2_nondef", "superabundant_genus2",
    "two_bouquets",
]


def test_line_dimension():
    c = F.load("line")
    assert deformation_space(c).dimension == 2
    assert expected_dimension(c) == 2


def test_gamma1_dimensions():
    c = F.load("gamma1")
    assert expected_dimension(c) == 6
    assert deformation_space(c).dimension == deformation_dimension(c) == 7


def test_example_superabundant_dimensions():
    c = F.load("superabundant_genus2")
    rep = superabundance_report(c)
    assert rep.expected_dim == 12
    assert rep.actual_dim == 13
    assert rep.obstruction_dim == 1
    assert rep.superabundant


def test_gamma_reports():
    r1 = superabundance_report(F.load("gamma1"))
    r2 = superabundance_report(F.load("gamma2"))
    assert r1.superabundant and r1.obstruction_dim == 1
    assert not r2.superabundant and r2.obstruction_dim == 0
    assert r1.identity_holds and r2.identity_holds


def test_report_skips_identity_with_contractions():
    rep = superabundance_report(F.load("example1_local"))
    assert not rep.identity_checked and rep.identity_holds is None


@pytest.mark.parametrize("name", TRIVALENT_A + ["example1_local", "five_valent", "cubicweight2"])
def test_translations_in_kernel(name):
    c = F.load(name)
    space = deformation_space(c)
    n = c.ambient_rank
    assert space.dimension >= n
    for i in range(n):
        shift = tuple(int(k % n == i) for k in range(n * len(c.vertices)))
        assert xl.in_span(shift, space.basis, len(shift))


@pytest.mark.parametrize("name", TRIVALENT_A + ["example1_local", "five_valent", "cubicweight2"])
def test_basis_keeps_directions_and_contractions(name):
    c = F.load(name)
    space = deformation_space(c)
    n = c.ambient_rank
    idx = {v: k for k, v in enumerate(space.vertex_order)}
    for vec in space.basis:
        for e in c.bounded_edges:
            a, b = idx[e.ends[0]], idx[e.ends[1]]
            disp = [vec[b * n + i] - vec[a * n + i] for i in range(n)]
            if e.contracted:
                assert not any(disp)
            else:
                assert xl.rank([disp, e.direction], n) <= 1
    assert space.dimension == deformation_dimension(c)


@pytest.mark.parametrize("name", TRIVALENT_A)
def test_dimension_identity_on_fixtures(name):
    c = F.load(name)
    e = len(c.unbounded_edges)
    n, g = c.ambient_rank, genus(c)
    assert deformation_dimension(c) - flag_level_h_dimension(c) == e + (n - 3) * (1 - g)
    assert deformation_space(c).dimension - obstruction_dimension(c) == expected_dimension(c)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_dimension_identity_random(seed):
    c = random_immersive_curve(random.Random(seed))
    act = deformation_space(c).dimension
    assert act == deformation_dimension(c)
    assert act - obstruction_dimension(c) == expected_dimension(c)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(TRIVALENT_A), st.integers(0, 10**6))
def test_dimension_unimodular_invariance(name, seed):
    rng = random.Random(seed)
    c = F.load(name)
    d = transform_curve(c, random_unimodular(rng, c.ambient_rank), random_translation(rng, c.ambient_rank))
    assert deformation_space(d).dimension == deformation_space(c).dimension


def test_constraint_rows_count():
    c = F.load("gamma1")
    # each non-contracted bounded edge contributes n - 1 rows
    assert len(constraint_rows(c)) == 9 * 2
