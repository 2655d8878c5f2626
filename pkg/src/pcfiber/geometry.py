"""Point clouds, Cayley-Menger matrices, circumspheres and enclosing balls.

Every operation here is a pure function of an immutable :class:`PointCloud`.
Squared distances are computed once per cloud and every radius that only
depends on a pair of points is read from that table, so the Vietoris-Rips
and Čech values of an edge agree bit for bit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .exceptions import DegenerateSimplex
from .linalg import RANK_RTOL, numerical_rank
from .validation import check_edges, check_point_coords, check_simplex

SimplexKey = tuple[int, ...]

# relative slack when testing whether a point lies inside a ball
_INSIDE_RTOL = 1e-10


class PointCloud:
    """``n`` labelled, pairwise distinct points in ``R^d``.

    Parameters
    ----------
    coords : array-like of shape (n, d)
        Point coordinates. Exactly coincident points are rejected.
    """

    __slots__ = ("_coords", "_sq")

    def __init__(self, coords):
        X = check_point_coords(coords)
        X.setflags(write=False)
        diff = X[:, None, :] - X[None, :, :]
        sq = np.einsum("ijk,ijk->ij", diff, diff)
        sq = 0.5 * (sq + sq.T)
        np.fill_diagonal(sq, 0.0)
        sq.setflags(write=False)
        self._coords = X
        self._sq = sq

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def n(self) -> int:
        return self._coords.shape[0]

    @property
    def d(self) -> int:
        return self._coords.shape[1]

    @property
    def squared_distances(self) -> np.ndarray:
        """Read-only ``(n, n)`` table of squared distances."""
        return self._sq

    def subcloud(self, sigma: Sequence[int]) -> np.ndarray:
        return self._coords[list(sigma)]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"PointCloud(n={self.n}, d={self.d})"

    def __eq__(self, other):
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self._coords.shape == other._coords.shape and bool(np.all(self._coords == other._coords))

    def __hash__(self):
        return hash((self._coords.shape, self._coords.tobytes()))


def as_point_cloud(P) -> PointCloud:
    """Return ``P`` unchanged if it is a :class:`PointCloud`, else wrap it."""
    return P if isinstance(P, PointCloud) else PointCloud(P)


def squared_distance(P, i: int, j: int) -> float:
    P = as_point_cloud(P)
    i, j = int(i), int(j)
    if not (0 <= i < P.n and 0 <= j < P.n):
        raise IndexError(f"indices ({i}, {j}) out of range for n={P.n}")
    if i == j:
        raise ValueError("squared_distance needs two distinct indices")
    return float(P.squared_distances[i, j])


def half_distance(P: PointCloud, i: int, j: int) -> float:
    """Half the Euclidean distance; the filtration value of the edge ``{i, j}``."""
    return 0.5 * math.sqrt(P.squared_distances[i, j])


def cayley_menger(P, sigma: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
    """Bordered Cayley-Menger matrix and distance matrix of ``sigma(P)``.

    Returns ``(Delta, Lambda)`` where ``Lambda`` holds squared distances in the
    vertex order of ``sigma`` and ``Delta`` borders it with a zero corner and a
    row and column of ones.
    """
    P = as_point_cloud(P)
    key = check_simplex(sigma, P.n)
    lam = P.squared_distances[np.ix_(key, key)].copy()
    k = len(key)
    delta = np.ones((k + 1, k + 1))
    delta[0, 0] = 0.0
    delta[1:, 1:] = lam
    return delta, lam


def affine_rank(points: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """Dimension of the affine span of the rows of ``points``."""
    points = np.asarray(points, dtype=float)
    if len(points) <= 1:
        return 0
    return numerical_rank(points[1:] - points[0], rtol)


def is_affinely_independent(P, sigma: Iterable[int], rtol: float = RANK_RTOL) -> bool:
    P = as_point_cloud(P)
    key = check_simplex(sigma, P.n)
    if len(key) > P.d + 1:
        return False
    return affine_rank(P.subcloud(key), rtol) == len(key) - 1


def spans_ambient_space(P, rtol: float = RANK_RTOL) -> bool:
    P = as_point_cloud(P)
    return affine_rank(P.coords, rtol) == P.d


def _require_independent(P: PointCloud, key: SimplexKey) -> None:
    if not is_affinely_independent(P, key):
        raise DegenerateSimplex(f"simplex {key} is affinely dependent")


def circumradius_squared(P, sigma: Iterable[int]) -> float:
    """Squared radius of the minimal circumsphere, ``-det(Lambda) / (2 det(Delta))``.

    Raises
    ------
    DegenerateSimplex
        If ``sigma(P)`` is affinely dependent (decided by SVD rank of the
        difference vectors, not by the determinant magnitude).
    """
    P = as_point_cloud(P)
    key = check_simplex(sigma, P.n)
    _require_independent(P, key)
    if len(key) == 1:
        return 0.0
    delta, lam = cayley_menger(P, key)
    return float(-np.linalg.det(lam) / (2.0 * np.linalg.det(delta)))


def _circumsphere(P: PointCloud, idx: Sequence[int]):
    """Center and squared radius of the minimal circumsphere through ``idx``.

    The center is written as ``p0 + lam @ (p_i - p0)``; ``lam`` solves the
    Gram system built from squared distances, so the radius depends on the
    distance table only. Falls back to least squares for dependent inputs.
    """
    idx = list(idx)
    p0 = P.coords[idx[0]]
    if len(idx) == 1:
        return p0.copy(), 0.0
    sq = P.squared_distances
    a0 = sq[idx[0], idx[1:]]
    G = 0.5 * (a0[:, None] + a0[None, :] - sq[np.ix_(idx[1:], idx[1:])])
    b = 0.5 * a0
    try:
        lam = np.linalg.solve(G, b)
    except np.linalg.LinAlgError:
        lam = np.linalg.lstsq(G, b, rcond=None)[0]
    center = p0 + lam @ (P.coords[idx[1:]] - p0)
    r2 = float(lam @ G @ lam)
    return center, r2


def _inside(P: PointCloud, center, r2: float, i: int) -> bool:
    diff = P.coords[i] - center
    return float(diff @ diff) <= r2 * (1.0 + _INSIDE_RTOL)


def _mtf_ball(P: PointCloud, L: list, end: int, R: list, d: int):
    # move-to-front recursion; R holds points forced onto the boundary
    if R:
        center, r2 = _circumsphere(P, R)
    else:
        center, r2 = None, -1.0
    support = list(R)
    if len(R) == d + 1:
        return center, r2, support
    i = 0
    while i < end:
        p = L[i]
        if center is None or not _inside(P, center, r2, p):
            center, r2, support = _mtf_ball(P, L, i, R + [p], d)
            L.insert(0, L.pop(i))
        i += 1
    return center, r2, support


@dataclass(frozen=True)
class EnclosingBall:
    """Minimal enclosing ball of a sub-configuration."""

    center: np.ndarray
    radius: float
    support: SimplexKey


def _canonical_radius(P: PointCloud, support: SimplexKey) -> float:
    if len(support) == 1:
        return 0.0
    if len(support) == 2:
        return half_distance(P, *support)
    return math.sqrt(max(_circumsphere(P, support)[1], 0.0))


def _prune_support(P: PointCloud, key: SimplexKey, support: list, r2: float) -> list:
    support = sorted(support)
    changed = True
    while changed and len(support) > 1:
        changed = False
        for x in support:
            rest = [s for s in support if s != x]
            c, r2_rest = _circumsphere(P, rest)
            if r2_rest < r2 * (1.0 - 1e-9):
                continue
            if all(_inside(P, c, r2_rest, i) for i in key):
                support, r2 = rest, r2_rest
                changed = True
                break
    return support


def min_enclosing_ball(P, sigma: Iterable[int], seed: int = 0) -> EnclosingBall:
    """Smallest ball containing ``sigma(P)``.

    Randomized incremental construction with move-to-front; the boundary
    set found is then pruned to an inclusion-minimal support whose minimal
    circumsphere is the enclosing sphere. The returned radius is recomputed
    from the sorted support, so two simplices sharing a support get
    identical radii.
    """
    P = as_point_cloud(P)
    key = check_simplex(sigma, P.n)
    if len(key) == 1:
        return EnclosingBall(P.coords[key[0]].copy(), 0.0, key)
    L = list(key)
    random.Random(seed).shuffle(L)
    _, r2, support = _mtf_ball(P, L, len(L), [], P.d)
    support = tuple(_prune_support(P, key, support, r2))
    center, _ = _circumsphere(P, support)
    return EnclosingBall(center, _canonical_radius(P, support), support)


def min_enclosing_radius(P, sigma: Iterable[int]) -> float:
    return min_enclosing_ball(P, sigma).radius


def min_enclosing_support(P, sigma: Iterable[int]) -> SimplexKey:
    return min_enclosing_ball(P, sigma).support


def edge_length_measurement(P, edges: Iterable[Sequence[int]]) -> np.ndarray:
    """Squared edge lengths, in the order the edges are given."""
    P = as_point_cloud(P)
    E = check_edges(edges, P.n)
    if not E:
        return np.zeros(0)
    i, j = np.array(E).T
    return P.squared_distances[i, j].copy()


def rigidity_matrix(P, edges: Iterable[Sequence[int]]) -> np.ndarray:
    """Jacobian of :func:`edge_length_measurement`, shape ``(m, n*d)``."""
    P = as_point_cloud(P)
    E = check_edges(edges, P.n)
    n, d = P.n, P.d
    R = np.zeros((len(E), n * d))
    X = P.coords
    for row, (i, j) in enumerate(E):
        v = 2.0 * (X[i] - X[j])
        R[row, i * d:(i + 1) * d] = v
        R[row, j * d:(j + 1) * d] = -v
    return R


def circumradius_gradient(P, sigma: Iterable[int]) -> np.ndarray:
    """Gradient of :func:`circumradius_squared` with respect to all ``n*d`` coordinates.

    Uses ``d det(A) = det(A) tr(A^-1 dA)`` on both determinants of the
    ratio; blocks of vertices outside ``sigma`` are zero.
    """
    P = as_point_cloud(P)
    key = check_simplex(sigma, P.n)
    _require_independent(P, key)
    n, d = P.n, P.d
    grad = np.zeros(n * d)
    if len(key) == 1:
        return grad
    delta, lam = cayley_menger(P, key)
    f = -np.linalg.det(lam) / (2.0 * np.linalg.det(delta))
    M = np.linalg.inv(lam) - np.linalg.inv(delta)[1:, 1:]
    M = 0.5 * (M + M.T)
    X = P.subcloud(key)
    # sum_b M_ab (p_a - p_b) for every a, vectorized
    block = 4.0 * f * (M.sum(axis=1)[:, None] * X - M @ X)
    for a, v in enumerate(key):
        grad[v * d:(v + 1) * d] = block[a]
    return grad


def trivial_motions(P) -> np.ndarray:
    """Basis of infinitesimal rigid motions, as rows of length ``n*d``.

    ``d`` translations followed by ``d(d-1)/2`` infinitesimal rotations.
    """
    P = as_point_cloud(P)
    n, d = P.n, P.d
    rows = []
    for k in range(d):
        t = np.zeros((n, d))
        t[:, k] = 1.0
        rows.append(t.ravel())
    X = P.coords
    for a in range(d):
        for b in range(a + 1, d):
            r = np.zeros((n, d))
            r[:, a] = -X[:, b]
            r[:, b] = X[:, a]
            rows.append(r.ravel())
    return np.array(rows).reshape(len(rows), n * d)


def random_rigid_motion(P, rng: np.random.Generator) -> PointCloud:
    """Apply a random proper rotation and translation."""
    P = as_point_cloud(P)
    d = P.d
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    t = rng.uniform(-1.0, 1.0, size=d)
    return PointCloud(P.coords @ Q.T + t)


def diameter(P) -> float:
    P = as_point_cloud(P)
    return float(math.sqrt(P.squared_distances.max()))


def finite_difference_jacobian(fun: Callable[[np.ndarray], np.ndarray], x, step: float) -> np.ndarray:
    """Central-difference Jacobian of ``fun`` at ``x``; rows index outputs."""
    x = np.asarray(x, dtype=float)
    f0 = np.atleast_1d(fun(x))
    J = np.zeros((f0.size, x.size))
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        J[:, k] = (np.atleast_1d(fun(x + e)) - np.atleast_1d(fun(x - e))) / (2.0 * step)
    return J
