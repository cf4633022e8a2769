"""Projective models of the hyperbolic spaces H^d_F and their geometry.

Points are projective classes of vectors in F^(d+1) that are negative
(interior) or null (boundary) for the sesquilinear form B_Q.  Two coordinate
systems are supported: the 'e' basis, where B_Q = diag(-1, 1, ..., 1), and the
'f' basis adapted to the boundary point p = [f_0], where

    B_Q(x, y) = conj(x_0) y_1 + conj(x_1) y_0 + sum_{i>=2} conj(x_i) y_i.

Distances come from the projective formula

    cosh dist([x], [y]) = |B_Q(x, y)| / sqrt(|Q(x)| |Q(y)|),

geodesics from B_Q-orthonormal frames in the F-line spanned by the endpoints,
and boundary quantities (Gromov products, Busemann functions) from geodesic
rays truncated at a fixed depth T, which converges at rate e^(-T).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import (
    FIELD_DIM,
    FieldMismatchError,
    check_in_field,
    mat_vec,
    qabs,
    qconj,
    qmul,
    qscalar,
    random_scalars,
)

# tolerance policy: double precision with cosh amplification is good to
# roughly 40 units of distance; experiments stay under ~30
TAU_NULL_REL = 1e-9      # boundary membership, relative to ||rep||^2
TAU_SEP = 1e-9           # boundary-point distinctness
DIST_TOL = 1e-8          # geodesic placement tolerance
DEFAULT_RAY_DEPTH = 30.0


class ModelMismatchError(ValueError):
    """Raised when points from different models are combined."""


class DegeneratePointError(ValueError):
    """Raised for vectors that are not in the required Q-sign class."""


@dataclass(frozen=True)
class Model:
    """A hyperbolic space H^d_F in a fixed coordinate system."""

    field: str
    d: int
    coords: str = "e"  # 'e' or 'f'

    def __post_init__(self):
        if self.coords not in ("e", "f"):
            raise ValueError(f"unknown coordinate system {self.coords!r}")
        if self.d < 1:
            raise ValueError("dimension must be positive")

    # -- form evaluation; x, y are (..., d+1, 4) arrays ---------------------

    def bform(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """B_Q(x, y) as a (..., 4) scalar array, broadcasting leading axes."""
        xc = qconj(x)
        if self.coords == "e":
            terms = qmul(xc, y)
            out = np.sum(terms[..., 1:, :], axis=-2) - terms[..., 0, :]
        else:
            out = (
                qmul(xc[..., 0, :], y[..., 1, :])
                + qmul(xc[..., 1, :], y[..., 0, :])
                + np.sum(qmul(xc[..., 2:, :], y[..., 2:, :]), axis=-2)
            )
        return out

    def quad(self, x: np.ndarray) -> np.ndarray:
        """Q(x) = B_Q(x, x); real up to roundoff, returned as real array."""
        return self.bform(x, x)[..., 0]

    def origin_rep(self) -> np.ndarray:
        """Representative of the standard basepoint o = [e_0] = [2f_0 - f_1]."""
        rep = np.zeros((self.d + 1, 4))
        if self.coords == "e":
            rep[0, 0] = 1.0
        else:
            rep[0, 0] = 2.0
            rep[1, 0] = -1.0
        return rep

    def origin(self) -> "HPoint":
        return HPoint(self, self.origin_rep())

    def check_compatible(self, other: "Model") -> None:
        if self != other:
            raise ModelMismatchError(f"models differ: {self} vs {other}")

    # -- random interior points, vectorized --------------------------------

    def random_points(self, rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
        """(n, d+1, 4) reps of points at uniform random distance <= radius from o.

        Built as o cosh(t) + u sinh(t) with u a random unit vector that is
        B_Q-orthogonal to o, which is exact in any field.
        """
        w = random_scalars(rng, self.field, (n, self.d))
        norms = np.sqrt(np.sum(w * w, axis=(1, 2)))
        norms[norms == 0] = 1.0
        w /= norms[:, None, None]
        u = np.zeros((n, self.d + 1, 4))
        u[:, 1:, :] = w  # e-coords: B_Q(e0, u) = 0, Q(u) = 1
        t = rng.uniform(0.0, radius, size=n)
        reps = np.zeros((n, self.d + 1, 4))
        reps[:, 0, 0] = np.cosh(t)
        reps += u * np.sinh(t)[:, None, None]
        if self.coords == "f":
            reps = convert_reps(reps, e_to_f_matrix(self.d, inverse=True))
        return reps


def e_to_f_matrix(d: int, inverse: bool = False) -> np.ndarray:
    """Real change-of-basis matrix: x_e = C x_f with columns f_0, f_1, e_i.

    f_0 = (e_0 + e_1)/2, f_1 = e_1 - e_0, f_i = e_i for i >= 2.  With
    inverse=True, returns C^(-1) (e-coords to f-coords).
    """
    C = np.eye(d + 1)
    C[0, 0], C[1, 0] = 0.5, 0.5
    C[0, 1], C[1, 1] = -1.0, 1.0
    if inverse:
        C = np.linalg.inv(C)
    return C


def convert_reps(reps: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Apply a real (d+1)x(d+1) matrix to (..., d+1, 4) rep arrays."""
    return np.einsum("ij,...jk->...ik", C, reps)


@dataclass(frozen=True)
class HPoint:
    """Projective class of a Q-negative vector (an interior point)."""

    model: Model
    rep: np.ndarray  # (d+1, 4)

    def __post_init__(self):
        arr = np.asarray(self.rep, dtype=float)
        if arr.shape != (self.model.d + 1, 4):
            raise ValueError("representative has wrong shape")
        if not check_in_field(arr, self.model.field):
            raise FieldMismatchError("representative outside the model's field")
        q = self.model.quad(arr)
        if q >= 0:
            raise DegeneratePointError(f"Q(x) = {q:.3g} >= 0: not an interior point")
        object.__setattr__(self, "rep", arr)

    def normalized_rep(self) -> np.ndarray:
        """Representative scaled so Q = -1."""
        q = self.model.quad(self.rep)
        return self.rep / np.sqrt(-q)


@dataclass(frozen=True)
class BPoint:
    """Projective class of a nonzero Q-null vector (a boundary point)."""

    model: Model
    rep: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.rep, dtype=float)
        if arr.shape != (self.model.d + 1, 4):
            raise ValueError("representative has wrong shape")
        if not check_in_field(arr, self.model.field):
            raise FieldMismatchError("representative outside the model's field")
        nsq = float(np.sum(arr * arr))
        if nsq == 0.0:
            raise DegeneratePointError("zero vector is not a boundary point")
        q = self.model.quad(arr)
        if abs(q) > TAU_NULL_REL * nsq:
            raise DegeneratePointError(f"Q(x) = {q:.3g} not null within tolerance")
        object.__setattr__(self, "rep", arr)

    def same_point(self, other: "BPoint") -> bool:
        """Projective equality test via angular separation."""
        self.model.check_compatible(other.model)
        return boundary_separation(self, other) <= TAU_SEP


def boundary_separation(xi: BPoint, eta: BPoint) -> float:
    """Projective angular gap in [0, 1]; 0 iff the classes coincide.

    Uses 1 - |<x, y>_F| / (||x|| ||y||) with the Euclidean F-hermitian pairing,
    which vanishes exactly when y is a right scalar multiple of x.
    """
    x, y = xi.rep, eta.rep
    pairing = np.sum(qmul(qconj(x), y), axis=0)
    nx = np.sqrt(np.sum(x * x))
    ny = np.sqrt(np.sum(y * y))
    return float(1.0 - qabs(pairing) / (nx * ny))


@dataclass(frozen=True)
class Horoball:
    """Sublevel region of a Busemann function: {x : beta_xi(o, x) > t}."""

    center: BPoint
    t: float


# ---------------------------------------------------------------------------
# distances and Gromov products
# ---------------------------------------------------------------------------

def dist_reps(model: Model, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Distance between rep arrays (..., d+1, 4), broadcasting leading axes.

    The form values are evaluated in extended precision: Q on a rep with
    entries of size cosh(r) cancels squares of size cosh(r)^2 down to order 1,
    which in double precision leaves ~1e-8 absolute noise at r = 10.  The
    extra digits keep distances good to ~1e-11 through radius 10.
    """
    xl = np.asarray(x, dtype=np.longdouble)
    yl = np.asarray(y, dtype=np.longdouble)
    qx = model.quad(xl)
    qy = model.quad(yl)
    if np.any(qx >= 0) or np.any(qy >= 0):
        raise DegeneratePointError("Q >= 0: not an interior point")
    b = qabs(model.bform(xl, yl))
    c = b / np.sqrt(qx * qy)
    return np.arccosh(np.maximum(c, 1.0)).astype(float)


def distance(x: HPoint, y: HPoint) -> float:
    x.model.check_compatible(y.model)
    return float(dist_reps(x.model, x.rep, y.rep))


def gromov_product(x: HPoint, y: HPoint, base: HPoint) -> float:
    """<x|y>_base = (d(base,x) + d(base,y) - d(x,y)) / 2, clamped at 0."""
    x.model.check_compatible(y.model)
    x.model.check_compatible(base.model)
    val = 0.5 * (distance(base, x) + distance(base, y) - distance(x, y))
    return max(val, 0.0)


def gromov_product_reps(model, x, y, base) -> np.ndarray:
    val = 0.5 * (
        dist_reps(model, base, x) + dist_reps(model, base, y) - dist_reps(model, x, y)
    )
    return np.maximum(val, 0.0)


# ---------------------------------------------------------------------------
# geodesics
# ---------------------------------------------------------------------------

def _geodesic_endpoints(x: HPoint, y: HPoint):
    """Normalized endpoint reps (x0, y0) with Q = -1 and B_Q(x0, y0) real
    negative (= -cosh d), plus d(x, y)."""
    model = x.model
    x0 = x.normalized_rep()
    y0 = y.normalized_rep()
    b = model.bform(x0, y0)
    ab = float(qabs(b))
    d = float(np.arccosh(max(ab, 1.0)))
    if d <= DIST_TOL:
        raise DegeneratePointError("coincident points have no unique geodesic")
    # rotate y's representative so B_Q(x0, y0) is real and negative
    a = -qconj(b) / ab
    y0 = qmul(y0, a)
    return x0, y0, d


def geodesic_point(x: HPoint, y: HPoint, t: float) -> HPoint:
    """Point at distance t from x along the geodesic through x and y.

    t may lie outside [0, d(x,y)]; the geodesic extends to the full line.
    """
    x.model.check_compatible(y.model)
    return HPoint(x.model, geodesic_points(x, y, np.array([t]))[0])


def geodesic_points(x: HPoint, y: HPoint, ts: np.ndarray) -> np.ndarray:
    """(len(ts), d+1, 4) reps of gamma(t) for each t; batch geodesic_point.

    Inside [0, d] the symmetric interpolation
        gamma(t) = (x0 sinh(d - t) + y0 sinh t) / sinh d
    is used: all Q contributions share one sign, so no cancellation even when
    the frame terms individually dwarf the result.  Beyond the segment the
    frame form x0 cosh t + u sinh t extends the line.
    """
    x0, y0, d = _geodesic_endpoints(x, y)
    ts = np.asarray(ts, dtype=float)
    out = np.empty(ts.shape + x0.shape)
    # roundoff guard: callers legitimately pass t = d(x, y) computed to 1e-16
    tol = DIST_TOL * (1.0 + d)
    inside = (ts >= -tol) & (ts <= d + tol)
    if np.any(inside):
        ti = np.clip(ts[inside], 0.0, d)
        out[inside] = (
            x0[None] * np.sinh(d - ti)[:, None, None]
            + y0[None] * np.sinh(ti)[:, None, None]
        ) / np.sinh(d)
    if np.any(~inside):
        w = y0 - x0 * np.cosh(d)
        u = w / np.sqrt(x.model.quad(w))
        to = ts[~inside]
        out[~inside] = (
            x0[None] * np.cosh(to)[:, None, None]
            + u[None] * np.sinh(to)[:, None, None]
        )
    return out


def _ray_frame(base: HPoint, xi: BPoint):
    """Frame (x0, u) with gamma(t) = [x0 cosh t + u sinh t] -> xi as t -> inf."""
    model = base.model
    x0 = base.normalized_rep()
    z = xi.rep
    b = model.bform(x0, z)
    ab = float(qabs(b))
    if ab == 0.0:
        raise DegeneratePointError("boundary point pairs to zero with base")
    a = -qconj(b) / ab
    z = qmul(z, a) / ab  # now B_Q(x0, z) = -1
    u = z - x0
    return x0, u


def ray_point(base: HPoint, xi: BPoint, t: float) -> HPoint:
    """Point at distance t from base along the ray toward boundary point xi."""
    base.model.check_compatible(xi.model)
    x0, u = _ray_frame(base, xi)
    return HPoint(base.model, x0 * np.cosh(t) + u * np.sinh(t))


def extended_gromov(xi: BPoint, eta: BPoint, base: HPoint, T: float = DEFAULT_RAY_DEPTH) -> float:
    """Gromov product of two boundary points at an interior basepoint.

    Closed form: with base normalized to Q = -1,
        <xi|eta>_base = log(2 |B(base,xi)| |B(base,eta)| / |B(xi,eta)|) / 2,
    which is the exact limit of the product along the two rays; the truncated
    value at any depth T (see gromov_ray_estimate) agrees within C e^(-T).
    T is accepted for interface stability and does not affect the result.
    """
    if T <= 0:
        raise ValueError("truncation depth must be positive")
    xi.model.check_compatible(eta.model)
    xi.model.check_compatible(base.model)
    if boundary_separation(xi, eta) <= TAU_SEP:
        raise DegeneratePointError("boundary points coincide within tolerance")
    model = base.model
    x0 = base.normalized_rep()
    bx = float(qabs(model.bform(x0, xi.rep)))
    by = float(qabs(model.bform(x0, eta.rep)))
    bxy = float(qabs(model.bform(xi.rep, eta.rep)))
    if bx == 0.0 or by == 0.0:
        raise DegeneratePointError("boundary point pairs to zero with base")
    if bxy == 0.0:
        raise DegeneratePointError("boundary pairing vanished despite separation")
    return 0.5 * np.log(2.0 * bx * by / bxy)


def gromov_ray_estimate(xi: BPoint, eta: BPoint, base: HPoint, T: float = DEFAULT_RAY_DEPTH) -> float:
    """Gromov product of boundary points by ray truncation at depth T.

    Converges to extended_gromov at rate e^(-T); kept as an independent
    estimator for convergence checks.  Depths much beyond 17 lose precision to
    cancellation in Q along the ray.
    """
    if T <= 0:
        raise ValueError("truncation depth must be positive")
    if boundary_separation(xi, eta) <= TAU_SEP:
        raise DegeneratePointError("boundary points coincide within tolerance")
    gx = ray_point(base, xi, T)
    gy = ray_point(base, eta, T)
    return gromov_product(gx, gy, base)


def _gromov_mixed(y: HPoint, z_boundary: BPoint, base: HPoint) -> float:
    """<y | z>_base with y interior and z on the boundary (closed form)."""
    model = base.model
    x0 = base.normalized_rep()
    y0 = y.normalized_rep()
    bx = float(qabs(model.bform(x0, z_boundary.rep)))
    by = float(qabs(model.bform(y0, z_boundary.rep)))
    if bx == 0.0 or by == 0.0:
        raise DegeneratePointError("boundary point pairs to zero with base")
    return 0.5 * (distance(base, y) - np.log(by / bx))


def busemann(z, x: HPoint, y: HPoint) -> float:
    """beta_z(x, y) = <y|z>_x - <x|z>_y.

    For interior z this reduces to d(z, x) - d(z, y).  For boundary z the
    difference of mixed products collapses to the horofunction formula
    log(|B(z, x)| / |B(z, y)|) with x, y normalized to Q = -1.
    """
    x.model.check_compatible(y.model)
    if isinstance(z, HPoint):
        return distance(z, x) - distance(z, y)
    if not isinstance(z, BPoint):
        raise TypeError("z must be an HPoint or BPoint")
    x.model.check_compatible(z.model)
    model = x.model
    bx = float(qabs(model.bform(x.normalized_rep(), z.rep)))
    by = float(qabs(model.bform(y.normalized_rep(), z.rep)))
    if bx == 0.0 or by == 0.0:
        raise DegeneratePointError("boundary point pairs to zero with an argument")
    return float(np.log(bx / by))


def horoball_contains(H: Horoball, x: HPoint, base: HPoint) -> bool:
    """True iff x lies in the horoball, i.e. beta_center(base, x) > t."""
    return busemann(H.center, base, x) > H.t


# ---------------------------------------------------------------------------
# hyperbolicity estimation
# ---------------------------------------------------------------------------

def delta_estimate(model: Model, n_samples: int, seed: int, radius: float = 10.0) -> float:
    """Empirical four-point hyperbolicity constant.

    Max over sampled quadruples (x, y, z, w) of
    min(<x|y>_w, <y|z>_w) - <x|z>_w, clamped below at 0.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    worst = 0.0
    chunk = 20000
    done = 0
    while done < n_samples:
        n = min(chunk, n_samples - done)
        pts = model.random_points(rng, 4 * n, radius).reshape(n, 4, model.d + 1, 4)
        x, y, z, w = pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3]
        xy = gromov_product_reps(model, x, y, w)
        yz = gromov_product_reps(model, y, z, w)
        xz = gromov_product_reps(model, x, z, w)
        gap = np.minimum(xy, yz) - xz
        worst = max(worst, float(np.max(gap, initial=0.0)))
        done += n
    return max(worst, 0.0)
