import numpy as np
import pytest

from rossonct.experiments import orbit_word_path
from rossonct.fits import (
    DegenerateFitError,
    GroupPair,
    RejectedPathError,
    fit_affine,
    identity_pair,
    inverse_pair,
    morse_check,
    quasigeodesic_check,
    quasisymmetry_probe,
    verify_tukia1,
    verify_tukia2,
    witness_families,
)
from rossonct.model import HPoint, Model, distance, geodesic_points
from rossonct.parabolic import example_lattices


def test_fit_affine_recovers_line():
    xs = np.linspace(1.0, 20.0, 40)
    ys = 2.5 * xs + 0.7
    fit = fit_affine(xs, ys)
    assert fit.slope == pytest.approx(2.5, abs=1e-12)
    assert fit.offset == pytest.approx(0.7, abs=1e-10)
    assert fit.residual_max <= 1e-10
    assert fit.corridor_lo <= fit.corridor_hi


def test_fit_affine_degenerate():
    with pytest.raises(DegenerateFitError):
        fit_affine([1.0, 1.0, 1.0], [2.0, 3.0, 4.0])
    with pytest.raises(DegenerateFitError):
        fit_affine([1.0, 2.0], [1.0, 2.0])


def test_group_pair_validates_iso():
    lats = example_lattices()
    with pytest.raises(ValueError):
        GroupPair(lats["H"], lats["Hp"], np.array([[2, 0], [0, 1]]))
    GroupPair(lats["H"], lats["Hp"], np.array([[1, 1], [0, 1]]))


def test_inverse_pair_roundtrip():
    lats = example_lattices()
    pair = GroupPair(lats["H"], lats["Hpp"], np.array([[1, 2], [0, 1]]))
    inv = inverse_pair(pair)
    assert np.array_equal(inv.iso @ pair.iso, np.eye(2, dtype=np.int64))
    assert inv.source is pair.target and inv.target is pair.source


def test_verify_tukia1_finite_and_stable():
    lats = example_lattices()
    for name in ("H", "Hp", "Hpp"):
        pair = identity_pair(lats[name])
        f1 = verify_tukia1(pair, 30.0)
        f2 = verify_tukia1(pair, 60.0)
        assert 0 < f1.corridor_lo <= f1.corridor_hi < np.inf
        assert f2.corridor_hi / f2.corridor_lo <= 1.2 * (
            f1.corridor_hi / f1.corridor_lo)


def test_witness_families_cover_directions():
    lats = example_lattices()
    pair = GroupPair(lats["H"], lats["Hp"], np.eye(2, dtype=np.int64))
    labels = [label for label, _ in witness_families(pair, 10**4)]
    for want in ("dir(1,0)", "dir(0,1)", "dir(1,1)", "dir(1,-1)"):
        assert want in labels


def test_verify_tukia2_identity_holds():
    lats = example_lattices()
    for name in ("H", "Hp", "Hpp"):
        res = verify_tukia2(identity_pair(lats[name]), n_max=10**5)
        assert res.verdict == "holds"
        assert res.alpha == pytest.approx(1.0, abs=0.05)


def test_verify_tukia2_cross_pair_fails_with_witnesses():
    lats = example_lattices()
    res = verify_tukia2(
        GroupPair(lats["H"], lats["Hpp"], np.eye(2, dtype=np.int64)),
        n_max=10**5)
    assert res.verdict == "fails"
    assert res.gap >= 0.8
    assert res.witness_lo is not None and res.witness_hi is not None
    assert (res.witness_hi.fit.slope - res.witness_lo.fit.slope
            == pytest.approx(res.gap))


def test_quasisymmetry_probe_h_hpp():
    lats = example_lattices()
    pair = GroupPair(lats["H"], lats["Hpp"], np.eye(2, dtype=np.int64))
    probe = quasisymmetry_probe(pair, n_max=10**4)
    assert probe.verdict == "FAIL-QS"
    assert probe.witness_growth > 0


def test_quasisymmetry_probe_identity_no_divergence():
    lats = example_lattices()
    probe = quasisymmetry_probe(identity_pair(lats["Hpp"]), n_max=10**4)
    assert probe.verdict == "no-divergence"


def geodesic_path(n=20, span=6.0, jitter=0.0, seed=0):
    model = Model("R", 2, "e")
    rng = np.random.default_rng(seed)
    rep_x = np.zeros((3, 4))
    rep_x[0, 0] = 1.0
    x = HPoint(model, rep_x)
    rep_y = np.zeros((3, 4))
    rep_y[0, 0] = np.cosh(span)
    rep_y[1, 0] = np.sinh(span)
    y = HPoint(model, rep_y)
    ts = np.linspace(0.0, span, n)
    reps = geodesic_points(x, y, ts)
    # an off-axis target for jittering: never coincides with a path point
    rep_w = np.zeros((3, 4))
    rep_w[0, 0] = np.cosh(3.0)
    rep_w[2, 0] = np.sinh(3.0)
    w = HPoint(model, rep_w)
    pts = []
    for t, rep in zip(ts, reps):
        p = HPoint(model, rep)
        if jitter > 0:
            q = geodesic_points(p, w, np.array([rng.uniform(0, jitter)]))[0]
            p = HPoint(model, q)
        pts.append((float(t), p))
    return pts


def test_quasigeodesic_check_exact_geodesic():
    K = quasigeodesic_check(geodesic_path())
    assert K <= 1.0 + 1e-6


def test_quasigeodesic_check_monotone_param_required():
    path = geodesic_path()
    path[3], path[4] = (path[4][0], path[3][1]), (path[3][0], path[4][1])
    with pytest.raises(ValueError):
        quasigeodesic_check(path)


def test_quasigeodesic_check_cap():
    # collapse all points to one spot: bounded d against growing t forces a
    # large lower-bound constant
    path = geodesic_path()
    base = path[0][1]
    bad = [(t * 1e6, base) for t, _ in path]
    bad = [(t if i else 0.0, p) for i, (t, p) in enumerate(bad)]
    with pytest.raises(RejectedPathError):
        quasigeodesic_check(bad, K_cap=10.0)


def test_morse_check_geodesic_below_step():
    # path spacing matches the discretization step, so both Hausdorff
    # directions stay within one step
    path = geodesic_path(n=61)
    pts = [p for _, p in path]
    assert morse_check(pts, K=1.0, step=0.1) <= 0.1


def test_morse_check_jittered_geodesic():
    eps = 0.15
    path = geodesic_path(n=61, jitter=eps, seed=3)
    pts = [p for _, p in path]
    assert morse_check(pts, K=2.0, step=0.05) <= eps + 0.05 + 1e-9


def test_orbit_word_path_is_quasigeodesic():
    model = Model("C", 3, "f")
    path = orbit_word_path(model, 64)
    K = quasigeodesic_check(path)
    assert np.isfinite(K) and K >= 1.0
    H = morse_check([p for _, p in path], K, step=0.1)
    assert np.isfinite(H)
