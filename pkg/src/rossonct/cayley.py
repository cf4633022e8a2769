"""Weighted Cayley metrics on finitely generated groups and ball enumeration.

A WeightedGroup packages a symmetric generating set with positive weights and
the group operations needed for uniform-cost search: multiplication, inverse,
and a canonical key used for hashing and for deterministic tie-breaking.
Distances are shortest paths in the weighted Cayley graph.  Groups may carry
optional fast paths (a closed-form distance or ball enumerator) that the
experiments use at scales where Dijkstra is impractical; the fast paths are
cross-checked against the search on small balls in the test suite.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable

import numpy as np


class UnreachableError(RuntimeError):
    """Target not reached within the radius cap (cap too small, not proof of
    non-generation)."""


class BallBudgetError(RuntimeError):
    """Ball enumeration exceeded the configured element budget."""


@dataclass
class WeightedGroup:
    """A group with a symmetric weighted generating set.

    mul/inv/identity define the group; key must return a hashable, totally
    ordered canonical form.  orbit_norms, exact_dist, and enumerate_ball are
    optional structure-specific fast paths.
    """

    generators: list[tuple[str, Any, float]]
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    key: Callable[[Any], Any]
    identity: Any
    exact_dist: Callable[[Any], float] | None = None
    enumerate_ball: Callable[[float], tuple[list, np.ndarray]] | None = None
    orbit_norms: Callable[[list], np.ndarray] | None = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("generating set is empty")
        weights = {}
        for label, g, w in self.generators:
            if w <= 0:
                raise ValueError(f"generator {label!r} has nonpositive weight")
            weights[self.key(g)] = w
        for label, g, w in self.generators:
            kinv = self.key(self.inv(g))
            if kinv not in weights or abs(weights[kinv] - w) > 1e-12:
                raise ValueError(
                    f"generating set not symmetric at {label!r}: missing or "
                    "reweighted inverse"
                )


def _dijkstra(G: WeightedGroup, radius: float, target_key=None, max_elements: int = 2_000_000):
    """Uniform-cost search from the identity; deterministic via key ordering."""
    start = G.identity
    dist = {G.key(start): (0.0, start)}
    heap = [(0.0, G.key(start), start)]
    while heap:
        d, k, g = heapq.heappop(heap)
        if d > dist[k][0]:
            continue
        if target_key is not None and k == target_key:
            return d
        for _, s, w in G.generators:
            nd = d + w
            if nd > radius:
                continue
            h = G.mul(g, s)
            hk = G.key(h)
            if hk not in dist or nd < dist[hk][0] - 1e-15:
                dist[hk] = (nd, h)
                if len(dist) > max_elements:
                    raise BallBudgetError(
                        f"ball enumeration exceeded {max_elements} elements"
                    )
                heapq.heappush(heap, (nd, hk, h))
    if target_key is not None:
        raise UnreachableError("target not reached within radius cap")
    return dist


def word_dist(G: WeightedGroup, g1, g2, radius_cap: float) -> float:
    """Shortest-path weight between g1 and g2, searched up to radius_cap."""
    if radius_cap <= 0:
        raise ValueError("radius_cap must be positive")
    target = G.mul(G.inv(g1), g2)
    tkey = G.key(target)
    if tkey == G.key(G.identity):
        return 0.0
    if G.exact_dist is not None:
        d = G.exact_dist(target)
        if d > radius_cap:
            raise UnreachableError("target beyond radius cap")
        return d
    return _dijkstra(G, radius_cap, target_key=tkey)


def ball(G: WeightedGroup, radius: float, max_elements: int = 2_000_000):
    """All elements at weighted distance <= radius, with their distances.

    Returns (elements, dists) sorted by (dist, key); closed under inverses by
    the symmetry of the generating set.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if G.enumerate_ball is not None:
        return G.enumerate_ball(radius)
    table = _dijkstra(G, radius, max_elements=max_elements)
    items = sorted(table.items(), key=lambda kv: (kv[1][0], kv[0]))
    elems = [g for _, (_, g) in items]
    dists = np.array([d for _, (d, _) in items])
    return elems, dists


@dataclass(frozen=True)
class QieFit:
    """Corridor constants for word distance vs orbit distance."""

    mult_lo: float
    mult_hi: float
    add: float
    n_samples: int
    radius: float

    @property
    def width(self) -> float:
        return self.mult_hi / self.mult_lo if self.mult_lo > 0 else np.inf


def orbit_qie_check(G: WeightedGroup, radius: float) -> QieFit:
    """Fit the corridor word_dist(e, g) ~ d(o, g.o) over the ball.

    By left-invariance on both sides, pairwise comparison reduces to
    comparison against the identity.  mult_lo / mult_hi bound the ratio
    orbit/word over samples with word distance >= 1; add absorbs the samples
    below that scale.
    """
    elems, dists = ball(G, radius)
    if G.orbit_norms is None:
        raise ValueError("group carries no orbit realization")
    orbit = np.asarray(G.orbit_norms(elems), dtype=float)
    dists = np.asarray(dists, dtype=float)
    mask = dists >= 1.0
    if not np.any(mask):
        return QieFit(1.0, 1.0, 0.0, len(elems), radius)
    ratios = orbit[mask] / dists[mask]
    add = float(np.max(orbit[~mask], initial=0.0))
    return QieFit(
        float(np.min(ratios)), float(np.max(ratios)), add, len(elems), radius
    )


# ---------------------------------------------------------------------------
# integer-lattice helpers used by the concrete parabolic groups
# ---------------------------------------------------------------------------

def zz_group(gen_steps: list[tuple[str, tuple[int, int], float]], **fast_paths) -> WeightedGroup:
    """Z^2 under addition with the given generator steps and weights."""
    gens = [(label, step, w) for label, step, w in gen_steps]
    return WeightedGroup(
        generators=gens,
        mul=lambda a, b: (a[0] + b[0], a[1] + b[1]),
        inv=lambda a: (-a[0], -a[1]),
        key=lambda a: a,
        identity=(0, 0),
        **fast_paths,
    )


def l1_ball_coords(radius: int) -> np.ndarray:
    """All integer pairs with |x| + |y| <= radius, in deterministic order."""
    out = []
    r = int(radius)
    for x in range(-r, r + 1):
        rem = r - abs(x)
        for y in range(-rem, rem + 1):
            out.append((x, y))
    return np.array(out, dtype=np.int64)


def signed_digit_cost(n: int, max_power: int) -> int:
    """Fewest signed powers of two (each <= 2^max_power) summing to n.

    Dynamic programming on |n|; this is the hop metric of the generating set
    {+-2^j : j <= max_power} on Z.
    """
    n = abs(int(n))
    if n == 0:
        return 0
    powers = [1 << j for j in range(max_power + 1)]
    # Dijkstra on integers 0..bound; bound is generous enough for minima
    bound = n + powers[-1]
    INF = np.iinfo(np.int64).max
    best = {n: 0}
    heap = [(0, n)]
    while heap:
        c, m = heapq.heappop(heap)
        if m == 0:
            return c
        if c > best.get(m, INF):
            continue
        for p in powers:
            for m2 in (m - p, abs(m - p)):
                m2 = abs(m2)
                if m2 <= bound and c + 1 < best.get(m2, INF):
                    best[m2] = c + 1
                    heapq.heappush(heap, (c + 1, m2))
    raise RuntimeError("unreachable: 1 is always a generator")
