"""Circumsphere frameworks: hypergraph constraints on circumradii of sub-simplices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .exceptions import DegenerateSimplex, HypothesisViolated, InputError
from .geometry import (PointCloud, as_point_cloud, cayley_menger, circumradius_gradient,
                       is_affinely_independent)
from .linalg import RANK_RTOL, normalize_rows, numerical_rank
from .rigidity import RigidityStatus, check_rigidity_domain, rigidity_target_rank
from .validation import check_hyperedges, check_simplex


@dataclass(frozen=True)
class CircumsphereFramework:
    """Hyperedges (sizes ``2..d+1``) in a fixed order, plus a configuration."""

    n: int
    hyperedges: tuple
    config: PointCloud

    def __post_init__(self):
        P = as_point_cloud(self.config)
        object.__setattr__(self, "config", P)
        if self.n != P.n:
            raise InputError(f"hypergraph has {self.n} vertices but configuration has {P.n} points")
        object.__setattr__(self, "hyperedges", tuple(check_hyperedges(self.hyperedges, P.n, P.d)))

    @classmethod
    def from_hypergraph(cls, H, P) -> "CircumsphereFramework":
        return cls(H.n, H.hyperedges, P)

    @property
    def d(self) -> int:
        return self.config.d

    def degenerate_hyperedges(self) -> list:
        return [s for s in self.hyperedges if not is_affinely_independent(self.config, s)]


@dataclass(frozen=True)
class CircumVerdict:
    status: RigidityStatus
    rank: int
    target_rank: int

    @property
    def flex_dim(self) -> int:
        return self.target_rank - self.rank

    @property
    def is_rigid(self) -> bool:
        return self.status is RigidityStatus.RIGID

    def to_json(self) -> dict:
        return {"status": self.status.value, "rank": self.rank,
                "target_rank": self.target_rank, "flex_dim": self.flex_dim}


def circumsphere_residual(P, Q, sigma) -> float:
    """``det Delta_P det Lambda_Q - det Delta_Q det Lambda_P`` on ``sigma``.

    Zero exactly when ``sigma`` has the same circumradius in both
    configurations (for a pair: the same length).
    """
    P, Q = as_point_cloud(P), as_point_cloud(Q)
    if P.n != Q.n or P.d != Q.d:
        raise InputError("configurations must have the same shape")
    key = check_simplex(sigma, P.n)
    dP, lP = cayley_menger(P, key)
    dQ, lQ = cayley_menger(Q, key)
    return float(np.linalg.det(dP) * np.linalg.det(lQ) - np.linalg.det(dQ) * np.linalg.det(lP))


def circumsphere_jacobian(fw: CircumsphereFramework) -> np.ndarray:
    """Rows are circumradius-squared gradients, one per hyperedge, in order."""
    P = fw.config
    if not fw.hyperedges:
        return np.zeros((0, P.n * P.d))
    return np.vstack([circumradius_gradient(P, s) for s in fw.hyperedges])


def circumsphere_rigidity_test(fw: CircumsphereFramework, rtol: float = RANK_RTOL) -> CircumVerdict:
    """Rigid iff the (row-normalized) Jacobian reaches rank ``nd - d(d+1)/2``."""
    P = fw.config
    check_rigidity_domain(P)
    target = rigidity_target_rank(P.n, P.d)
    # rows of very different scale (tiny vs. large simplices) would skew the
    # relative threshold; rescaling a row does not change the rank
    rank = numerical_rank(normalize_rows(circumsphere_jacobian(fw)), rtol)
    status = RigidityStatus.RIGID if rank == target else RigidityStatus.FLEXIBLE
    return CircumVerdict(status, rank, target)


@dataclass(frozen=True)
class ConjectureReport:
    d: int
    n: int
    trials: int
    rigid: int
    rejects: int
    seed: int
    ranks: tuple = field(default=(), compare=False)

    @property
    def verdict(self) -> str:
        return "Supported" if self.rigid == self.trials else "Refuted"

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "trials": self.trials, "rigid": self.rigid,
                "rejects": self.rejects, "verdict": self.verdict, "seed": self.seed,
                "target_rank": rigidity_target_rank(self.n, self.d),
                "ranks": list(self.ranks)}


def conjecture_hypothesis_holds(d: int, n: int) -> bool:
    return math.comb(n, d + 1) >= d * n - d * (d + 1) // 2


def verify_conjecture_66(d: int, n: int, trials: int = 20, seed: int = 0,
                         max_rejects: int = 1000, rtol: float = RANK_RTOL) -> ConjectureReport:
    """Rank test of the complete ``(d+1)``-uniform hypergraph on random clouds.

    Trial ``t`` samples uniform ``[0, 1]`` coordinates from
    ``default_rng(seed + t)``; a sample with an affinely dependent hyperedge
    is redrawn from the same generator and counted as a reject.
    """
    if d < 1:
        raise InputError("d must be at least 1")
    if trials < 1:
        raise InputError("trials must be at least 1")
    if n < d + 1 or not conjecture_hypothesis_holds(d, n):
        raise HypothesisViolated(
            f"C({n}, {d + 1}) = {math.comb(n, d + 1)} < {d * n - d * (d + 1) // 2}")
    hyper = tuple(combinations(range(n), d + 1))
    rigid = rejects = 0
    ranks = []
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        while True:
            P = PointCloud(rng.uniform(0.0, 1.0, size=(n, d)))
            fw = CircumsphereFramework(n, hyper, P)
            try:
                if fw.degenerate_hyperedges():
                    raise DegenerateSimplex("sample has a degenerate hyperedge")
                verdict = circumsphere_rigidity_test(fw, rtol)
                break
            except DegenerateSimplex:
                rejects += 1
                if rejects > max_rejects:
                    raise
        ranks.append(verdict.rank)
        rigid += verdict.is_rigid
    return ConjectureReport(d, n, trials, rigid, rejects, seed, tuple(ranks))
