"""Arithmetic for the base division algebras R, C, and the quaternions.

Every scalar is stored as four real components (w, x, y, z) regardless of the
field tag, so R and C are embedded as subalgebras of the quaternions and all
three fields share one set of code paths.  The array-level helpers (qmul,
qconj, ...) operate on numpy arrays whose last axis has length 4 and broadcast
over any leading axes; the Scalar / FVector wrappers give a tagged, checked
interface on top of them.

Scalars act on vectors from the right (right F-module convention), which is
what lets matrices with quaternion entries act on the left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FIELDS = ("R", "C", "Q")

# number of live real components per field tag
FIELD_DIM = {"R": 1, "C": 2, "Q": 4}


class FieldMismatchError(ValueError):
    """Raised when two operands carry different field tags."""


def check_same_field(tag1: str, tag2: str) -> None:
    if tag1 != tag2:
        raise FieldMismatchError(f"field tags differ: {tag1!r} vs {tag2!r}")


# ---------------------------------------------------------------------------
# array-level quaternion arithmetic, last axis = (w, x, y, z)
# ---------------------------------------------------------------------------

def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quaternion product on (..., 4) arrays, broadcasting leading axes."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def qre(a: np.ndarray) -> np.ndarray:
    return a[..., 0]


def qim(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 0] = 0.0
    return out


def qnormsq(a: np.ndarray) -> np.ndarray:
    return np.sum(a * a, axis=-1)


def qabs(a: np.ndarray) -> np.ndarray:
    return np.sqrt(qnormsq(a))


def qinv(a: np.ndarray) -> np.ndarray:
    n = qnormsq(a)
    return qconj(a) / n[..., None]


def qscalar(w: float = 0.0, x: float = 0.0, y: float = 0.0, z: float = 0.0) -> np.ndarray:
    return np.array([w, x, y, z], dtype=float)


QONE = qscalar(1.0)
QZERO = qscalar(0.0)
QI = qscalar(0.0, 1.0)
QJ = qscalar(0.0, 0.0, 1.0)
QK = qscalar(0.0, 0.0, 0.0, 1.0)


def check_in_field(a: np.ndarray, tag: str, tol: float = 0.0) -> bool:
    """True if the component array only uses coordinates allowed by the tag."""
    k = FIELD_DIM[tag]
    if k == 4:
        return True
    return bool(np.all(np.abs(np.asarray(a)[..., k:]) <= tol))


# ---------------------------------------------------------------------------
# tagged wrappers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    """An element of R, C, or the quaternions, tagged by field."""

    field: str
    c: np.ndarray  # shape (4,)

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ValueError(f"unknown field tag {self.field!r}")
        arr = np.asarray(self.c, dtype=float)
        if arr.shape != (4,):
            raise ValueError("scalar needs exactly 4 real components")
        if not check_in_field(arr, self.field):
            raise ValueError(f"components outside field {self.field}")
        object.__setattr__(self, "c", arr)

    @classmethod
    def real(cls, field: str, value: float) -> "Scalar":
        return cls(field, qscalar(float(value)))

    def __mul__(self, other: "Scalar") -> "Scalar":
        check_same_field(self.field, other.field)
        return Scalar(self.field, qmul(self.c, other.c))

    def __add__(self, other: "Scalar") -> "Scalar":
        check_same_field(self.field, other.field)
        return Scalar(self.field, self.c + other.c)

    def __sub__(self, other: "Scalar") -> "Scalar":
        check_same_field(self.field, other.field)
        return Scalar(self.field, self.c - other.c)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.c)

    def conj(self) -> "Scalar":
        return Scalar(self.field, qconj(self.c))

    def re(self) -> float:
        return float(self.c[0])

    def im_part(self) -> "Scalar":
        return Scalar(self.field, qim(self.c))

    def modulus(self) -> float:
        return float(qabs(self.c))

    def inverse(self) -> "Scalar":
        if self.modulus() == 0.0:
            raise ZeroDivisionError("scalar inverse of 0")
        return Scalar(self.field, qinv(self.c))

    def is_close(self, other: "Scalar", tol: float = 1e-12) -> bool:
        check_same_field(self.field, other.field)
        return bool(np.all(np.abs(self.c - other.c) <= tol))


@dataclass(frozen=True)
class FVector:
    """Ordered list of scalars over one field, acting as a right F-module."""

    field: str
    c: np.ndarray  # shape (n, 4)

    def __post_init__(self):
        arr = np.asarray(self.c, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError("vector components must have shape (n, 4)")
        if not check_in_field(arr, self.field):
            raise ValueError(f"components outside field {self.field}")
        object.__setattr__(self, "c", arr)

    def __len__(self) -> int:
        return self.c.shape[0]

    def __getitem__(self, i: int) -> Scalar:
        return Scalar(self.field, self.c[i])

    def __add__(self, other: "FVector") -> "FVector":
        check_same_field(self.field, other.field)
        return FVector(self.field, self.c + other.c)

    def rmul(self, a: Scalar) -> "FVector":
        """Right scalar action v * a."""
        check_same_field(self.field, a.field)
        return FVector(self.field, qmul(self.c, a.c))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.c * self.c)))


def random_scalars(rng: np.random.Generator, field: str, shape=(), scale: float = 1.0) -> np.ndarray:
    """Gaussian random scalars of the given field as a (..., 4) array."""
    out = np.zeros(tuple(shape) + (4,))
    k = FIELD_DIM[field]
    out[..., :k] = rng.normal(scale=scale, size=tuple(shape) + (k,))
    return out


# ---------------------------------------------------------------------------
# quaternion-entry matrices, shape (m, n, 4); vectors shape (..., n, 4)
# ---------------------------------------------------------------------------

def mat_vec(M: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(Mx)_i = sum_k M[i,k] * x[k]; x may carry leading batch axes."""
    # M: (m, n, 4), x: (..., n, 4) -> (..., m, 4)
    prod = qmul(M[..., :, :, :], x[..., None, :, :])  # (..., m, n, 4)
    return np.sum(prod, axis=-2)


def mat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of quaternion-entry matrices: (m,n,4) @ (n,p,4) -> (m,p,4)."""
    prod = qmul(A[:, :, None, :], B[None, :, :, :])  # (m, n, p, 4)
    return np.sum(prod, axis=1)


def mat_identity(n: int) -> np.ndarray:
    M = np.zeros((n, n, 4))
    M[np.arange(n), np.arange(n), 0] = 1.0
    return M


def _left_mult_matrix(q: np.ndarray) -> np.ndarray:
    """Real 4x4 matrix of left multiplication by q on (w, x, y, z) columns."""
    basis = np.eye(4)
    return np.stack([qmul(q, basis[k]) for k in range(4)], axis=-1)


def mat_inv(M: np.ndarray) -> np.ndarray:
    """Inverse of a quaternion-entry matrix via its real 4n x 4n embedding."""
    n = M.shape[0]
    if M.shape[1] != n:
        raise ValueError("matrix must be square")
    big = np.zeros((4 * n, 4 * n))
    for i in range(n):
        for j in range(n):
            big[4 * i:4 * i + 4, 4 * j:4 * j + 4] = _left_mult_matrix(M[i, j])
    big_inv = np.linalg.inv(big)
    out = np.zeros_like(M)
    # first column of each 4x4 block is the quaternion itself
    for i in range(n):
        for j in range(n):
            out[i, j] = big_inv[4 * i:4 * i + 4, 4 * j]
    return out
