import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropobstruct import fixtures as F
from tropobstruct.curve_model import validate_curve
from tropobstruct.errors import (
    DirectionsDoNotSpan,
    InvalidConfig,
    NonIntegralOrder,
    NonPositiveModulus,
    NotWellSpaced,
)
from tropobstruct.fixtures import build
from tropobstruct.kuranishi_leading import (
    LeadingContribution,
    PreLogPathConfig,
    cancellation_pair,
    leading_contribution,
    leading_form_system,
    matching_residual,
    pair_with_H,
    rescale_component,
    tied_vertices,
    tropical_path_length,
    tropicalization_lengths,
    zeta_twist,
)
from tropobstruct.obstruction_space import dual_obstruction_basis
from tropobstruct.well_spacedness import path_length

from generators import random_prelog_config
from oracles import direct_coefficient


def _ones(N, weights=None, lengths=None):
    weights = weights or [1] * N
    lengths = lengths or [1] * N
    return PreLogPathConfig(tuple((1, 1, 1) for _ in range(N + 1)), weights, lengths, direction=(0, 0, 1))


def chain_curve(cfg):
    """A planar chain realizing the path: edge ``i`` along ``(1, 0)`` with the config's weight and length."""
    N = cfg.nodes - 1
    w = list(cfg.weights)
    xs = [Fraction(0)]
    for r in cfg.lengths:
        xs.append(xs[-1] + r)
    pos = {f"n{i}": (xs[i], 0) for i in range(N + 1)}
    bounded = [(f"b{i}", f"n{i}", f"n{i + 1}", w[i]) for i in range(N)]
    unbounded = []
    for i in range(N + 1):
        prev = w[i - 1] if i > 0 else 0
        nxt = w[i] if i < N else 0
        unbounded += [(f"d{i}", f"n{i}", (prev - nxt, -1)), (f"u{i}", f"n{i}", (0, 1))]
    return validate_curve(build(2, pos, bounded, unbounded))


def test_all_ones():
    lc = leading_contribution(_ones(3, lengths=[2, 1, 4]))
    assert lc.coefficient == 1
    assert lc.order == 7


def test_example1_with_a_zero_kills_term():
    cfg = PreLogPathConfig(((1, 1, 1), (2, 3, 5)), (1,), (2,), example1=(0, 3), direction=(0, 0, 1))
    assert leading_contribution(cfg).coefficient == 0


def test_example1_factor():
    cfg = PreLogPathConfig(((1, 1, 1), (2, 3, 5)), (1,), (2,), example1=(2, 7), direction=(0, 0, 1))
    assert leading_contribution(cfg).coefficient == Fraction(2, 7) * Fraction(3, 5)
    assert leading_contribution(cfg).coefficient == direct_coefficient(cfg)


def test_non_integral_order():
    cfg = PreLogPathConfig(((1, 1, 1), (1, 1, 1)), (2,), (3,), direction=(0, 0, 1))
    with pytest.raises(NonIntegralOrder):
        leading_contribution(cfg)


def test_invalid_configs():
    with pytest.raises(InvalidConfig):
        PreLogPathConfig(((1, 1, 0), (1, 1, 1)), (1,), (1,))
    with pytest.raises(InvalidConfig):
        PreLogPathConfig(((1, 1, 1), (1, 1, 1)), (1, 1), (1,))
    with pytest.raises(InvalidConfig):
        PreLogPathConfig(((1, 1, 1), (1, 1, 1)), (1,), (1,), example1=(1, 0))


def test_zeta_twist_examples():
    cfg = PreLogPathConfig(((2, 3, 5), (7, 11, 13), (17, 19, 23)), (1, 2), (1, 2), direction=(0, 0, 1))
    assert zeta_twist(cfg, 0, 1, 1) == cfg
    base = leading_contribution(cfg).coefficient
    assert leading_contribution(zeta_twist(cfg, 1, 2, -1)).coefficient == base
    assert leading_contribution(zeta_twist(cfg, 1, 2, Fraction(-5, 9))).coefficient == base
    with pytest.raises(InvalidConfig):
        zeta_twist(cfg, 1, 3, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_random_configs(seed):
    rng = random.Random(seed)
    cfg = random_prelog_config(rng)
    lc = leading_contribution(cfg)
    assert lc.coefficient == direct_coefficient(cfg)
    assert lc.order == path_length(chain_curve(cfg), [f"n{i}" for i in range(cfg.nodes)])
    lam = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
    node = rng.randrange(cfg.nodes)
    if cfg.example1 is None or node != 0:
        assert leading_contribution(rescale_component(cfg, node, lam)).coefficient == lc.coefficient
    i = rng.randrange(cfg.nodes - 1)
    twisted = zeta_twist(cfg, i, cfg.weights[i], lam)
    assert leading_contribution(twisted).coefficient == lc.coefficient


def test_pairing_cancellation():
    H = [(0, 0, 1)]
    d1, d2 = (1, 0, 2), (0, 1, -3)
    c1 = Fraction(5, 7)
    c2 = -c1 * Fraction(2) / Fraction(-3)
    res = pair_with_H([LeadingContribution(4, c1, d1), LeadingContribution(4, c2, d2)], H)
    assert res.order == 4 and res.vanishes


def test_pairing_single_contribution():
    res = pair_with_H([LeadingContribution(2, Fraction(3), (1, 0, 1))], [(0, 0, 1)])
    assert not res.vanishes
    assert res.sums == (Fraction(3),)


def test_pairing_in_plane_direction():
    H = dual_obstruction_basis(F.load("cubic"))
    res = pair_with_H([LeadingContribution(1, Fraction(9, 4), (1, 1, 0))], H)
    assert res.vanishes


def test_pairing_groups_orders():
    H = [(1, 0)]
    res = pair_with_H([LeadingContribution(3, Fraction(1), (1, 0)), LeadingContribution(2, Fraction(2), (1, 0))], H)
    assert res.order == 2
    assert res.sums == (Fraction(2),)
    assert res.by_order[3] == (Fraction(1),)


def test_form_system_cubic():
    c = F.load("cubic")
    s = leading_form_system(c)
    assert s.rank == 1 and s.codimension == 1
    assert len(s.forms) == dual_obstruction_basis(c).dimension
    assert tied_vertices(c) == [("A", "B")]


def test_form_system_empty_without_h():
    s = leading_form_system(F.load("planar_genus_one"))
    assert s.forms == () and s.codimension == 0


def test_form_system_genus2():
    c = F.load("genus2")
    s = leading_form_system(c)
    tied = tied_vertices(c)
    assert s.rank == 1
    assert [any(f) for f in s.forms] == [bool(t) for t in tied]
    assert sorted(bool(t) for t in tied) == [False, True]


def test_form_system_errors():
    with pytest.raises(NotWellSpaced):
        leading_form_system(F.load("cubicnon_a"))
    with pytest.raises(DirectionsDoNotSpan):
        leading_form_system(F.load("example1_local"))


def test_tropicalization_examples():
    tau = 10.0
    coeffs = [(tau ** 2, 1, 1), (1, tau ** 3, 1)]
    coeffs = [tuple(Fraction(x) for x in t) for t in coeffs]
    assert math.isclose(tropicalization_lengths(coeffs, tau)[0], 5.0, rel_tol=1e-12)
    assert tropicalization_lengths([(3, 1, -3), (1, -2, 2)], 7) == [0.0]
    with pytest.raises(NonPositiveModulus):
        tropicalization_lengths(coeffs, 1)


@pytest.mark.parametrize("tau", [10 ** 3, 10 ** 6])
def test_cancellation_pair_matching(tau):
    c = Fraction(7, 3)
    P, Q = cancellation_pair(tau, c)
    gap = tropical_path_length(P, tau) - tropical_path_length(Q, tau)
    target = math.log(7 / 3) / math.log(tau)
    assert abs(gap - target) <= 1e-9 * abs(target)
    assert abs(matching_residual(P, Q, c, tau)) <= 1e-9 * abs(target)
    lp, lq = leading_contribution(P), leading_contribution(Q)
    assert lp.order == lq.order
    assert lp.coefficient == c * lq.coefficient
