import numpy as np
import pytest

from rossonct.cayley import (
    BallBudgetError,
    UnreachableError,
    WeightedGroup,
    ball,
    l1_ball_coords,
    orbit_qie_check,
    signed_digit_cost,
    word_dist,
    zz_group,
)
from rossonct.experiments import norm_weighted_group
from rossonct.parabolic import example_lattices


def unit_zz():
    return zz_group([
        ("e1", (1, 0), 1.0), ("-e1", (-1, 0), 1.0),
        ("e2", (0, 1), 1.0), ("-e2", (0, -1), 1.0),
    ])


def test_generator_symmetry_enforced():
    with pytest.raises(ValueError):
        zz_group([("e1", (1, 0), 1.0)])
    with pytest.raises(ValueError):
        zz_group([("e1", (1, 0), 1.0), ("-e1", (-1, 0), 2.0)])
    with pytest.raises(ValueError):
        zz_group([("e1", (1, 0), 0.0), ("-e1", (-1, 0), 0.0)])


def test_word_dist_is_l1_for_unit_weights():
    G = unit_zz()
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = tuple(rng.integers(-4, 5, 2))
        b = tuple(rng.integers(-4, 5, 2))
        expect = abs(a[0] - b[0]) + abs(a[1] - b[1])
        assert word_dist(G, a, b, 30.0) == expect


def test_word_dist_metric_properties():
    G = zz_group([
        ("e1", (1, 0), 1.5), ("-e1", (-1, 0), 1.5),
        ("e2", (0, 1), 0.5), ("-e2", (0, -1), 0.5),
    ])
    rng = np.random.default_rng(1)
    pts = [tuple(rng.integers(-3, 4, 2)) for _ in range(6)]
    d = {(a, b): word_dist(G, a, b, 40.0) for a in pts for b in pts}
    for a in pts:
        assert d[a, a] == 0.0
        for b in pts:
            assert d[a, b] == pytest.approx(d[b, a])
            for c in pts:
                assert d[a, c] <= d[a, b] + d[b, c] + 1e-12


def test_word_dist_unreachable():
    G = unit_zz()
    with pytest.raises(UnreachableError):
        word_dist(G, (0, 0), (10, 10), 3.0)


def test_ball_sorted_and_inverse_closed():
    G = unit_zz()
    elems, dists = ball(G, 3.0)
    assert len(elems) == len(l1_ball_coords(3))
    assert np.all(np.diff(dists) >= 0)
    keys = set(elems)
    for g in elems:
        assert G.inv(g) in keys


def test_ball_budget_error():
    G = unit_zz()
    with pytest.raises(BallBudgetError):
        ball(G, 40.0, max_elements=100)


def test_signed_digit_cost():
    assert signed_digit_cost(0, 5) == 0
    assert signed_digit_cost(1, 5) == 1
    assert signed_digit_cost(32, 5) == 1
    assert signed_digit_cost(3, 5) == 2  # 4 - 1
    assert signed_digit_cost(7, 5) == 2  # 8 - 1
    assert signed_digit_cost(-7, 5) == 2


def test_norm_weighted_group_exact_dist_matches_dijkstra():
    # the closed-form distance 1 v ||g|| agrees with an honest search over
    # the truncated generating set extended to the full ball
    lat = example_lattices()["H"]
    G = norm_weighted_group(lat)
    coords, dists = G.enumerate_ball(2.5)
    full_gens = []
    for c, dc in zip(coords, dists):
        c = (int(c[0]), int(c[1]))
        if c != (0, 0):
            full_gens.append((str(c), c, float(dc)))
    H = zz_group(full_gens)
    for c, dc in zip(coords[:40], dists[:40]):
        c = (int(c[0]), int(c[1]))
        assert word_dist(H, (0, 0), c, 10.0) == pytest.approx(float(dc), abs=1e-9)


def test_orbit_qie_check_unit_scaling():
    # orbit norms equal to word distances give a width-1 corridor
    G = zz_group(
        [("e1", (1, 0), 1.0), ("-e1", (-1, 0), 1.0),
         ("e2", (0, 1), 1.0), ("-e2", (0, -1), 1.0)],
        orbit_norms=lambda elems: np.array(
            [abs(g[0]) + abs(g[1]) for g in elems], dtype=float),
    )
    fit = orbit_qie_check(G, 4.0)
    assert fit.mult_lo == pytest.approx(1.0)
    assert fit.mult_hi == pytest.approx(1.0)
    assert fit.width == pytest.approx(1.0)


def test_orbit_qie_check_requires_orbit():
    G = unit_zz()
    with pytest.raises(ValueError):
        orbit_qie_check(G, 3.0)
