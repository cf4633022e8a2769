import numpy as np
import pytest

from rossonct.algebra import qabs, qscalar, random_scalars
from rossonct.isometries import apply_isometry, norm_g
from rossonct.model import Model, distance
from rossonct.parabolic import (
    ConstraintError,
    EmptySubgroupError,
    NElement,
    SearchBallError,
    ThetaLattice,
    compose,
    dilation,
    example_lattices,
    heis_norm_model,
    pi_hom,
    r_functional,
    to_matrix,
    unipotent_norms,
)

MODEL = Model("C", 3, "f")


def nelem(a_im=0.0, v=(0.0, 0.0)):
    vv = np.zeros((2, 4))
    vv[0, 0], vv[1, 0] = v
    return NElement(MODEL, qscalar(0.0, a_im), vv)


def test_real_part_of_a_rejected():
    with pytest.raises(ConstraintError):
        NElement(MODEL, qscalar(0.5), np.zeros((2, 4)))


def test_compose_against_matrix_product():
    rng = np.random.default_rng(0)
    for field, d in (("C", 3), ("Q", 2)):
        model = Model(field, d, "f")
        for _ in range(50):
            a = random_scalars(rng, field, (2,))
            a[:, 0] = 0.0
            v = random_scalars(rng, field, (2, d - 1))
            n1 = NElement(model, a[0], v[0])
            n2 = NElement(model, a[1], v[1])
            lhs = to_matrix(compose(n1, n2)).matrix
            rhs = (to_matrix(n1) @ to_matrix(n2)).matrix
            assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_inverse_and_identity():
    n = nelem(0.7, (1.2, -0.4))
    e = compose(n, n.inverse())
    assert float(qabs(e.a)) <= 1e-12
    assert np.max(np.abs(e.v)) <= 1e-12


def test_power_law():
    n = nelem(0.3, (0.5, 0.2))
    m = n
    for k in range(2, 6):
        m = compose(m, n)
        p = n.power(k)
        assert np.max(np.abs(m.a - p.a)) <= 1e-10
        assert np.max(np.abs(m.v - p.v)) <= 1e-10


def test_noncommutativity_lands_in_center():
    # the commutator of generic elements is a pure a-translation
    n1 = nelem(0.0, (1.0, 0.0))
    n2q = Model("Q", 2, "f")
    v1 = np.zeros((1, 4))
    v1[0, 0] = 1.0
    v2 = np.zeros((1, 4))
    v2[0, 2] = 1.0  # j direction
    m1 = NElement(n2q, qscalar(0.0), v1)
    m2 = NElement(n2q, qscalar(0.0), v2)
    comm = compose(compose(m1, m2), compose(m1.inverse(), m2.inverse()))
    assert np.max(np.abs(comm.v)) <= 1e-12
    assert float(qabs(comm.a)) > 0.1


def test_pi_hom_is_vector_part():
    n = nelem(0.9, (0.3, 0.8))
    assert np.allclose(pi_hom(n), n.v)
    n12 = compose(nelem(0.1, (1.0, 0.0)), nelem(0.2, (0.0, 1.0)))
    assert np.allclose(pi_hom(n12), nelem(0, (1.0, 1.0)).v)


def test_dilation_norm():
    for lam in (2.0, 5.0):
        g = to_matrix(dilation(MODEL, lam))
        # axis through o: displacement of the basepoint equals log lam
        assert norm_g(g) == pytest.approx(np.log(lam), abs=1e-9)


def test_unipotent_norm_closed_form():
    # ||n(a, v)|| satisfies cosh||n|| = sqrt((4 + |v|^2 / 2)^2 + |a|^2) / 4
    rng = np.random.default_rng(1)
    a = random_scalars(rng, "C", (30,))
    a[:, 0] = 0.0
    v = random_scalars(rng, "C", (30, 2))
    norms = unipotent_norms(MODEL, a, v)
    vsq = np.sum(v * v, axis=(1, 2))
    expected = np.arccosh(
        np.sqrt((4.0 + vsq / 2.0) ** 2 + np.sum(a * a, axis=1)) / 4.0)
    assert np.max(np.abs(norms - expected)) <= 1e-9


def test_unipotent_norms_match_isometry_action():
    o = MODEL.origin()
    for n in (nelem(2.0, (0.0, 0.0)), nelem(0.0, (3.0, 1.0)), nelem(1.5, (0.7, 0.2))):
        g = to_matrix(n)
        batch = unipotent_norms(MODEL, n.a, n.v)
        assert float(batch) == pytest.approx(
            distance(o, apply_isometry(g, o)), abs=1e-10)


def test_heis_norm_model_cases():
    assert heis_norm_model(qscalar(0.0), np.zeros((2, 4))) == 0.0
    big_a = qscalar(0.0, 1e5)
    assert heis_norm_model(big_a, np.zeros((2, 4))) == pytest.approx(np.log(1e5))
    v = np.zeros((2, 4))
    v[0, 0] = 1e4
    assert heis_norm_model(qscalar(0.0), v) == pytest.approx(2 * np.log(1e4))


def test_theta_lattice_homomorphism():
    for lat in example_lattices().values():
        c1 = np.array([2, -1])
        c2 = np.array([-1, 3])
        lhs = compose(lat.element(c1), lat.element(c2))
        rhs = lat.element(c1 + c2)
        assert np.max(np.abs(lhs.a - rhs.a)) <= 1e-10
        assert np.max(np.abs(lhs.v - rhs.v)) <= 1e-10


def test_example_lattices_quasi_commutator():
    lats = example_lattices()
    assert np.array_equal(lats["H"].quasi_commutator_coords(), [1, 0])
    assert lats["Hp"].quasi_commutator_coords() is None
    assert lats["Hpp"].quasi_commutator_coords() is None


def test_lattice_norms_batch_consistent():
    lat = example_lattices()["H"]
    coords = np.array([[1, 0], [0, 1], [5, -3], [100, 7]], dtype=float)
    batch = lat.norms(coords)
    o = lat.model.origin()
    for c, expect in zip(coords, batch):
        g = to_matrix(lat.element(c))
        assert expect == pytest.approx(distance(o, apply_isometry(g, o)), abs=1e-9)


def test_embedding_shape_validated():
    with pytest.raises(ValueError):
        ThetaLattice("bad", np.eye(2))


def r_setup(h_coords):
    lat = example_lattices()["H"]

    def z_enum(ball):
        ks = np.arange(-int(ball), int(ball) + 1)
        return ks, np.abs(ks).astype(float)

    def dist_h(ks, h):
        return np.abs(h_coords[0] - ks) + abs(h_coords[1])

    return z_enum, dist_h


def test_r_functional_matches_brute_force():
    z_enum, dist_h = r_setup((8, 0))
    val = r_functional((8, 0), z_enum, dist_h, 40.0)
    ks = np.arange(-60, 61)
    with np.errstate(divide="ignore"):
        cand = np.maximum(
            0.0,
            np.maximum(2.0 * np.log(np.maximum(np.abs(8 - ks), 1e-300)),
                       np.log(np.maximum(np.abs(ks), 1e-300))))
    assert val == pytest.approx(float(np.min(cand)), abs=1e-12)


def test_r_functional_empty_subgroup():
    def z_empty(ball):
        return np.array([]), np.array([])

    with pytest.raises(EmptySubgroupError):
        r_functional((1, 1), z_empty, lambda z, h: np.array([]), 4.0)


def test_r_functional_boundary_retry_then_error():
    # distance decreasing in z forever pins the minimizer to the boundary
    def z_enum(ball):
        ks = np.arange(0, int(ball) + 1)
        return ks, ks.astype(float)

    def dist_h(ks, h):
        return 1e6 - ks.astype(float)

    with pytest.raises(SearchBallError):
        r_functional((0, 0), z_enum, dist_h, 8.0, max_retries=2)
