"""Matrix isometries of H^d_F: projective action, displacement, classification.

An isometry is a (d+1)x(d+1) matrix over F preserving |B_Q| up to the
projective action.  Classification into elliptic / parabolic / loxodromic is
done by orbit growth along matrix squarings: loxodromic displacement grows
linearly in the power, parabolic like a logarithm, elliptic stays bounded.
Matrices are renormalized after each squaring (the action is projective) so
powers as large as 2^64 never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import check_in_field, mat_inv, mat_mul, mat_vec, qabs
from .model import BPoint, DegeneratePointError, HPoint, Model, dist_reps


class ClassificationError(RuntimeError):
    """Raised when the displacement estimate falls in the indeterminate band."""


@dataclass(frozen=True)
class ClassTag:
    """Classification verdict with its diagnostic witness."""

    kind: str  # 'elliptic' | 'parabolic' | 'loxodromic'
    witness: float  # orbit radius (elliptic) or translation-length estimate


@dataclass(frozen=True)
class Isometry:
    """A matrix over F acting projectively on H^d_F."""

    model: Model
    matrix: np.ndarray  # (d+1, d+1, 4)

    def __post_init__(self):
        arr = np.asarray(self.matrix, dtype=float)
        n = self.model.d + 1
        if arr.shape != (n, n, 4):
            raise ValueError("matrix has wrong shape for the model")
        if not check_in_field(arr, self.model.field):
            raise ValueError("matrix entries outside the model's field")
        object.__setattr__(self, "matrix", arr)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        self.model.check_compatible(other.model)
        return Isometry(self.model, mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "Isometry":
        return Isometry(self.model, mat_inv(self.matrix))

    def renormalized(self) -> "Isometry":
        """Divide by the largest entry modulus; projectively the same map."""
        s = float(np.max(qabs(self.matrix)))
        if s == 0.0:
            raise ValueError("zero matrix")
        return Isometry(self.model, self.matrix / s)


def identity_isometry(model: Model) -> Isometry:
    from .algebra import mat_identity

    return Isometry(model, mat_identity(model.d + 1))


def apply_isometry(g: Isometry, x):
    """Projective action on an HPoint or BPoint (preserves the Q-sign class)."""
    g.model.check_compatible(x.model)
    img = mat_vec(g.matrix, x.rep)
    nsq = float(np.sum(img * img))
    if nsq == 0.0:
        raise DegeneratePointError("image vector is numerically zero")
    img = img / np.sqrt(nsq)
    if isinstance(x, HPoint):
        return HPoint(g.model, img)
    return BPoint(g.model, img)


def apply_to_reps(g: Isometry, reps: np.ndarray) -> np.ndarray:
    """Matrix action on batched (..., d+1, 4) representative arrays."""
    return mat_vec(g.matrix, reps)


def norm_g(g: Isometry, base: HPoint | None = None) -> float:
    """Displacement ||g|| = d(base, g(base)); base defaults to the origin."""
    if base is None:
        base = g.model.origin()
    img = mat_vec(g.matrix, base.rep)
    return float(dist_reps(g.model, base.rep, img))


def _norm_scaled(model, matrix: np.ndarray, base: HPoint, log_q: float) -> float:
    """Displacement of base under a renormalized matrix whose images satisfy
    Q(M x) = Q(x) exp(2 log_q).  Avoids evaluating Q on the image, which for
    high parabolic powers is a catastrophically cancelling difference."""
    img = mat_vec(matrix, base.rep)
    b = float(qabs(model.bform(base.rep, img)))
    q = -float(model.quad(base.rep))
    c = b / q * np.exp(-log_q)
    return float(np.arccosh(max(c, 1.0)))


def classify(
    g: Isometry,
    base: HPoint | None = None,
    n_max: int = 64,
    tau_lox: float = 1e-3,
    r_ell: float = 1e-4,
) -> ClassTag:
    """Classify by displacement growth along the powers g^(2^k), k < n_max.

    loxodromic: stable per-power displacement > tau_lox;
    elliptic:   every sampled displacement <= r_ell;
    parabolic:  unbounded but sublinear growth.
    Estimates inside (tau_lox/2, tau_lox] raise ClassificationError instead of
    guessing.
    """
    if n_max < 8:
        raise ValueError("n_max must be at least 8")
    if base is None:
        base = g.model.origin()
    model = g.model
    # keep matrices renormalized (projective action) and track the scale so
    # Q(matrix . x) = Q(x) exp(2 log_q) stays exactly known; the initial scale
    # is measured on the base point, where no cancellation has set in yet
    s = float(np.max(qabs(g.matrix)))
    if s == 0.0:
        raise ValueError("zero matrix")
    matrix = g.matrix / s
    q_img = float(model.quad(mat_vec(matrix, base.rep)))
    q_base = float(model.quad(base.rep))
    if q_img >= 0.0:
        raise ClassificationError("base image not interior at the first power")
    log_q = 0.5 * np.log(q_img / q_base)
    norms = []
    exponent = 1.0
    for _ in range(n_max):
        nm = _norm_scaled(model, matrix, base, log_q)
        norms.append(nm)
        # far past any parabolic displacement at these exponents; stop before
        # cosh overflow
        if nm > 300.0:
            break
        matrix = mat_mul(matrix, matrix)
        s = float(np.max(qabs(matrix)))
        matrix = matrix / s
        log_q = 2.0 * log_q - np.log(s)
        exponent *= 2.0
    else:
        exponent /= 2.0  # loop ended without break: last norm used exponent/2
    est = norms[-1] / exponent
    if est > tau_lox:
        return ClassTag("loxodromic", est)
    if est > tau_lox / 2.0:
        raise ClassificationError(
            f"displacement estimate {est:.3g} in indeterminate band "
            f"({tau_lox / 2:.3g}, {tau_lox:.3g}]"
        )
    orbit_radius = max(norms)
    if orbit_radius <= r_ell:
        return ClassTag("elliptic", orbit_radius)
    return ClassTag("parabolic", orbit_radius)
