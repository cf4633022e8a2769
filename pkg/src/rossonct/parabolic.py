"""The stabilizer of the boundary point p = [f_0]: unipotent arithmetic.

Works in f-coordinates, where the stabilizer J_p of p factors as
M_p A_p N_p (rotation x dilation x unipotent).  The unipotent part N_p is the
Heisenberg-type group of pairs (a, v) with a purely imaginary and v in
F^(d-1), multiplying by

    (a1, v1) (a2, v2) = (a1 + a2 + Im B_E(v2, v1), v1 + v2),

where B_E is the Euclidean hermitian form.  Discrete subgroups of N_p are
supplied as integer lattices with an explicit real embedding; their
displacement norms are evaluated in batch through the generic distance
formula on orbit representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import check_in_field, mat_identity, qabs, qconj, qim, qmul, qnormsq
from .isometries import Isometry
from .model import Model, dist_reps

IM_TOL = 1e-12


def bform_euclid(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """B_E(v, w) = sum_i conj(v_i) w_i on (..., n, 4) arrays."""
    return np.sum(qmul(qconj(v), w), axis=-2)


class ConstraintError(ValueError):
    """Raised when parameters violate the stabilizer constraints."""


def _check_unipotent_params(model: Model, a: np.ndarray, v: np.ndarray):
    if model.coords != "f":
        raise ValueError("unipotent elements live in f-coordinates")
    a = np.asarray(a, dtype=float)
    v = np.asarray(v, dtype=float)
    if a.shape != (4,):
        raise ValueError("a must be a single scalar (4 components)")
    if v.shape != (model.d - 1, 4):
        raise ValueError(f"v must have {model.d - 1} entries")
    if abs(a[0]) > IM_TOL:
        raise ConstraintError(f"Re(a) = {a[0]:.3g} must vanish")
    for arr in (a, v):
        if not check_in_field(arr, model.field):
            raise ConstraintError("components outside the model's field")
    return a, v


@dataclass(frozen=True)
class NElement:
    """n(a, v): the unipotent isometry fixing p, with a in Im(F), v in F^(d-1)."""

    model: Model
    a: np.ndarray  # (4,), purely imaginary
    v: np.ndarray  # (d-1, 4)

    def __post_init__(self):
        a, v = _check_unipotent_params(self.model, self.a, self.v)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)

    def inverse(self) -> "NElement":
        return NElement(self.model, -self.a, -self.v)

    def power(self, k: int) -> "NElement":
        # Im B_E(v, v) = Im ||v||^2 = 0, so powers are exactly (k a, k v)
        return NElement(self.model, k * self.a, k * self.v)

    def key(self):
        return tuple(np.round(self.a, 9)) + tuple(np.round(self.v.ravel(), 9))


def compose(n1: NElement, n2: NElement) -> NElement:
    """Group law of N_p; agrees with matrix multiplication of realizations."""
    n1.model.check_compatible(n2.model)
    a = n1.a + n2.a + qim(bform_euclid(n2.v, n1.v))
    return NElement(n1.model, a, n1.v + n2.v)


def pi_hom(n: NElement) -> np.ndarray:
    """The vector-part homomorphism n(a, v) -> v, with kernel Z_p = {n(a, 0)}."""
    return n.v


def to_matrix(elem) -> Isometry:
    """Matrix realization of an NElement or LanglandsElement in f-coordinates."""
    if isinstance(elem, NElement):
        return _n_matrix(elem.model, elem.a, elem.v)
    if isinstance(elem, LanglandsElement):
        return _langlands_matrix(elem)
    raise TypeError(f"cannot realize {type(elem).__name__} as a matrix")


def _n_matrix(model: Model, a: np.ndarray, v: np.ndarray) -> Isometry:
    d = model.d
    M = mat_identity(d + 1)
    vsq = float(np.sum(qnormsq(v)))
    M[0, 1] = a.copy()
    M[0, 1, 0] -= vsq / 2.0
    M[0, 2:] = -qconj(v)
    M[2:, 1] = v
    return Isometry(model, M)


@dataclass(frozen=True)
class LanglandsElement:
    """h_{lambda, a, v, m}: a general element of J_p with trivial Aut(F) part.

    lam > 0 gives the dilation (A_p) factor, a in Im(F) and v the unipotent
    data, and m a B_E-preserving rotation of F^(d-1) (M_p factor).
    """

    model: Model
    lam: float
    a: np.ndarray
    v: np.ndarray
    m: np.ndarray  # (d-1, d-1, 4)

    def __post_init__(self):
        if self.lam <= 0:
            raise ConstraintError("lambda must be positive")
        a, v = _check_unipotent_params(self.model, self.a, self.v)
        m = np.asarray(self.m, dtype=float)
        k = self.model.d - 1
        if m.shape != (k, k, 4):
            raise ValueError("rotation part has wrong shape")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "m", m)


def _langlands_matrix(h: LanglandsElement) -> Isometry:
    d = h.model.d
    M = np.zeros((d + 1, d + 1, 4))
    vsq = float(np.sum(qnormsq(h.v)))
    M[0, 0, 0] = h.lam
    M[0, 1] = h.a.copy()
    M[0, 1, 0] -= h.lam * vsq / 2.0
    # top-right block: -lam * v^dagger m
    vdm = np.sum(qmul(qconj(h.v)[:, None, :], h.m), axis=0)  # (d-1, 4)
    M[0, 2:] = -h.lam * vdm
    M[1, 1, 0] = 1.0 / h.lam
    M[2:, 1] = h.v
    M[2:, 2:] = h.m
    return Isometry(h.model, M)


def dilation(model: Model, lam: float) -> LanglandsElement:
    zero_a = np.zeros(4)
    zero_v = np.zeros((model.d - 1, 4))
    return LanglandsElement(model, lam, zero_a, zero_v, mat_identity(model.d - 1))


def heis_norm_model(a: np.ndarray, v: np.ndarray) -> float:
    """Model side of the displacement asymptotic: 0 v 2 log||v|| v log|a|."""
    a = np.asarray(a, dtype=float)
    v = np.asarray(v, dtype=float)
    out = 0.0
    vn = float(np.sqrt(np.sum(v * v)))
    if vn > 0.0:
        out = max(out, 2.0 * np.log(vn))
    an = float(qabs(a))
    if an > 0.0:
        out = max(out, np.log(an))
    return out


# ---------------------------------------------------------------------------
# batch orbit norms for unipotent elements
# ---------------------------------------------------------------------------

def unipotent_orbit_reps(model: Model, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Reps of n(a, v) . o for batched a (..., 4) and v (..., d-1, 4).

    The matrix action on o = (2, -1, 0, ...) gives
    (2 - a + ||v||^2 / 2, -1, -v) in f-coordinates.
    """
    a = np.asarray(a, dtype=float)
    v = np.asarray(v, dtype=float)
    batch = a.shape[:-1]
    reps = np.zeros(batch + (model.d + 1, 4))
    vsq = np.sum(qnormsq(v), axis=-1)
    reps[..., 0, :] = -a
    reps[..., 0, 0] += 2.0 + vsq / 2.0
    reps[..., 1, 0] = -1.0
    reps[..., 2:, :] = -v
    return reps


def unipotent_norms(model: Model, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Displacement d(o, n(a, v) . o), batched; uses the generic distance."""
    reps = unipotent_orbit_reps(model, a, v)
    o = model.origin_rep()
    return dist_reps(model, o, reps)


# ---------------------------------------------------------------------------
# integer lattices inside N_p (concrete discrete parabolic groups)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaLattice:
    """A rank-2 integer lattice in N_p of H^3_C, via theta(x, y, z) = n(xi, (y, z)).

    embed is the real 3x2 matrix taking integer coordinates c to the
    parameters (x, y, z); the group is abelian because the v-parts are real.
    """

    label: str
    embed: np.ndarray  # (3, 2)

    def __post_init__(self):
        arr = np.asarray(self.embed, dtype=float)
        if arr.shape != (3, 2):
            raise ValueError("embedding must be 3x2")
        object.__setattr__(self, "embed", arr)

    @property
    def model(self) -> Model:
        return Model("C", 3, "f")

    def params(self, coords: np.ndarray):
        """(a, v) component arrays for integer coordinate batch (..., 2)."""
        coords = np.asarray(coords, dtype=float)
        xyz = coords @ self.embed.T  # (..., 3)
        a = np.zeros(coords.shape[:-1] + (4,))
        a[..., 1] = xyz[..., 0]  # x * i
        v = np.zeros(coords.shape[:-1] + (2, 4))
        v[..., 0, 0] = xyz[..., 1]
        v[..., 1, 0] = xyz[..., 2]
        return a, v

    def element(self, c) -> NElement:
        a, v = self.params(np.asarray(c, dtype=float))
        return NElement(self.model, a, v)

    def norms(self, coords: np.ndarray) -> np.ndarray:
        """Displacement norms ||theta(c)|| for an integer coordinate batch."""
        a, v = self.params(coords)
        return unipotent_norms(self.model, a, v)

    def quasi_commutator_coords(self) -> np.ndarray | None:
        """Generator (in coordinates) of Z(H) = Ker(pi), read off the embedding.

        pi kills the v-part, so Z is the set of integer c with rows 1..2 of
        the embedding annihilating c.  For rank-2 lattices this is either
        trivial (None) or a single primitive integer direction.
        """
        V = self.embed[1:, :]
        for cand in ((1, 0), (0, 1), (1, 1), (1, -1)):
            c = np.array(cand, dtype=float)
            if np.all(np.abs(V @ c) < 1e-12):
                return np.array(cand, dtype=int)
        return None


def example_lattices() -> dict[str, ThetaLattice]:
    """The three pairwise-isomorphic rank-2 lattices used by the verifiers.

    Hp uses the lattice spanned by (1, 1) and (sqrt2, -sqrt2), which meets
    the coordinate axes only at the origin.
    """
    r2 = np.sqrt(2.0)
    return {
        "H": ThetaLattice("H", np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])),
        "Hp": ThetaLattice("Hp", np.array([[1.0, r2], [1.0, -r2], [0.0, 0.0]])),
        "Hpp": ThetaLattice("Hpp", np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])),
    }


# ---------------------------------------------------------------------------
# the word-metric functional of the additive displacement formula
# ---------------------------------------------------------------------------

class EmptySubgroupError(ValueError):
    pass


class SearchBallError(RuntimeError):
    """Minimizer pinned to the search boundary after all retries."""


def r_functional(
    h,
    z_enumerate,
    dist_H,
    z_ball: float,
    max_retries: int = 3,
) -> float:
    """min over z in the z_ball of  0 v 2 log dist_H(z, h) v log dist_Z(e, z).

    z_enumerate(ball) must return (elements, dist_Z array) for the subgroup Z,
    and dist_H(elements, h) the word distances to h, vectorized.  If the
    minimizer lands on the ball boundary the ball is doubled and the search
    retried, at most max_retries times.
    """
    if z_ball <= 0:
        raise ValueError("z_ball must be positive")
    for attempt in range(max_retries + 1):
        zs, dz = z_enumerate(z_ball)
        if len(dz) == 0:
            raise EmptySubgroupError("no subgroup elements in the search ball")
        dz = np.asarray(dz, dtype=float)
        dh = np.asarray(dist_H(zs, h), dtype=float)
        with np.errstate(divide="ignore"):
            term_h = np.where(dh > 0, 2.0 * np.log(np.maximum(dh, 1e-300)), -np.inf)
            term_z = np.where(dz > 0, np.log(np.maximum(dz, 1e-300)), -np.inf)
        vals = np.maximum(0.0, np.maximum(term_h, term_z))
        i = int(np.lexsort((dz, vals))[0])  # deterministic tie-break: smallest dz
        if dz[i] >= z_ball - 0.5 and attempt < max_retries:
            z_ball *= 2.0
            continue
        if dz[i] >= z_ball - 0.5:
            raise SearchBallError("minimizer stuck on the search-ball boundary")
        return float(vals[i])
    raise SearchBallError("unreachable")
