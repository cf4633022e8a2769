import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rossonct.algebra import (
    FieldMismatchError,
    check_in_field,
    mat_identity,
    mat_inv,
    mat_mul,
    mat_vec,
    qabs,
    qconj,
    qinv,
    qmul,
    qnormsq,
    qscalar,
    random_scalars,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
quat = st.tuples(finite, finite, finite, finite).map(lambda t: np.array(t))


@given(quat, quat, quat)
@settings(max_examples=200, deadline=None)
def test_mul_associative(a, b, c):
    lhs = qmul(qmul(a, b), c)
    rhs = qmul(a, qmul(b, c))
    scale = 1.0 + float(qabs(a) * qabs(b) * qabs(c))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@given(quat, quat)
@settings(max_examples=200, deadline=None)
def test_conj_antihomomorphism(a, b):
    lhs = qconj(qmul(a, b))
    rhs = qmul(qconj(b), qconj(a))
    assert np.max(np.abs(lhs - rhs)) <= 1e-9


@given(quat, quat)
@settings(max_examples=200, deadline=None)
def test_modulus_multiplicative(a, b):
    assert qabs(qmul(a, b)) == pytest.approx(qabs(a) * qabs(b), rel=1e-12, abs=1e-12)


@given(quat)
@settings(max_examples=200, deadline=None)
def test_inverse(a):
    if qabs(a) < 1e-6:
        return
    one = qmul(a, qinv(a))
    assert np.max(np.abs(one - qscalar(1.0))) <= 1e-10


def test_mul_noncommutative():
    i = qscalar(0, 1)
    j = qscalar(0, 0, 1)
    k = qscalar(0, 0, 0, 1)
    assert np.allclose(qmul(i, j), k)
    assert np.allclose(qmul(j, i), -k)


def test_normsq_is_conj_product():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(10, 4))
    prods = qmul(qconj(a), a)
    assert np.allclose(prods[:, 0], qnormsq(a))
    assert np.max(np.abs(prods[:, 1:])) <= 1e-12


def test_field_membership():
    assert check_in_field(qscalar(1.5), "R")
    assert not check_in_field(qscalar(1.5, 0.1), "R")
    assert check_in_field(qscalar(1.5, 0.1), "C")
    assert not check_in_field(qscalar(0, 0, 1), "C")
    assert check_in_field(qscalar(0, 0, 1), "Q")


def test_random_scalars_respect_field():
    rng = np.random.default_rng(0)
    for field in ("R", "C", "Q"):
        s = random_scalars(rng, field, (50,))
        assert s.shape == (50, 4)
        assert check_in_field(s, field)


def test_random_scalars_unknown_field():
    rng = np.random.default_rng(0)
    with pytest.raises((ValueError, FieldMismatchError, KeyError)):
        random_scalars(rng, "X", (3,))


def test_mat_mul_identity_and_assoc():
    rng = np.random.default_rng(1)
    A = rng.normal(size=(3, 3, 4))
    B = rng.normal(size=(3, 3, 4))
    C = rng.normal(size=(3, 3, 4))
    I = mat_identity(3)
    assert np.allclose(mat_mul(I, A), A)
    assert np.allclose(mat_mul(A, I), A)
    assert np.allclose(mat_mul(mat_mul(A, B), C), mat_mul(A, mat_mul(B, C)))


def test_mat_vec_compatible_with_mat_mul():
    rng = np.random.default_rng(2)
    A = rng.normal(size=(3, 3, 4))
    B = rng.normal(size=(3, 3, 4))
    x = rng.normal(size=(3, 4))
    assert np.allclose(mat_vec(mat_mul(A, B), x), mat_vec(A, mat_vec(B, x)))


def test_mat_inv_roundtrip():
    rng = np.random.default_rng(4)
    for _ in range(5):
        A = rng.normal(size=(3, 3, 4))
        Ainv = mat_inv(A)
        assert np.max(np.abs(mat_mul(A, Ainv) - mat_identity(3))) <= 1e-9
