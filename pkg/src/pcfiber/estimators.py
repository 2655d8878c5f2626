"""scikit-learn style wrappers around the functional API.

Each estimator is fit on a single point cloud ``X`` of shape ``(n, d)``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .criticality import CriticalGraph, critical_structures_from
from .filtration import DEFAULT_SIMPLEX_BUDGET, DEFAULT_TIE_TOL, FiltrationKind, build_filtered_complex
from .fiber import identify
from .geometry import PointCloud
from .linalg import RANK_RTOL
from .persistence import compute_barcodes, default_max_degree
from .validation import check_point_coords


def _complex_and_barcode(X, filtration, max_degree, budget, for_critical=False):
    P = PointCloud(check_point_coords(X))
    kind = FiltrationKind.parse(filtration)
    md = default_max_degree(kind, P.n, P.d) if max_degree is None else max_degree
    if for_critical and kind is FiltrationKind.CECH:
        md = max(md, min(P.d, P.n - 1) - 1)
    F = build_filtered_complex(P, kind, md, budget)
    return P, F, compute_barcodes(F, md)


class PersistenceBarcodes(TransformerMixin, BaseEstimator):
    """Full barcode of a Vietoris-Rips or Čech filtration.

    ``transform`` returns rows ``(degree, birth, death)`` with ``inf`` for
    essential classes.
    """

    def __init__(self, filtration="vr", max_degree=None, budget=DEFAULT_SIMPLEX_BUDGET):
        self.filtration = filtration
        self.max_degree = max_degree
        self.budget = budget

    def fit(self, X, y=None):
        P, _, self.barcode_ = _complex_and_barcode(X, self.filtration, self.max_degree, self.budget)
        self.n_features_in_ = P.d
        self.n_points_ = P.n
        return self

    def transform(self, X):
        check_is_fitted(self, "barcode_")
        _, _, D = _complex_and_barcode(X, self.filtration, self.max_degree, self.budget)
        return D.to_array()

    def betti_curve(self, grid):
        """Betti numbers at each value of ``grid``, shape ``(len(grid), max_degree + 1)``."""
        check_is_fitted(self, "barcode_")
        return np.array([self.barcode_.betti_at(t) for t in np.asarray(grid, dtype=float)], dtype=int)


class CriticalStructure(TransformerMixin, BaseEstimator):
    """Critical graph (VR) or critical hypergraph (Čech).

    ``transform`` returns the vertex-hyperedge incidence matrix, shape
    ``(n, m)``, for the structure of ``X``.
    """

    def __init__(self, filtration="vr", tol=DEFAULT_TIE_TOL, max_degree=None, budget=DEFAULT_SIMPLEX_BUDGET):
        self.filtration = filtration
        self.tol = tol
        self.max_degree = max_degree
        self.budget = budget

    def _structure(self, X):
        P, F, D = _complex_and_barcode(X, self.filtration, self.max_degree, self.budget, for_critical=True)
        return P, critical_structures_from(P, F, D, self.tol)

    def fit(self, X, y=None):
        P, self.critical_ = self._structure(X)
        self.n_features_in_ = P.d
        return self

    def transform(self, X):
        check_is_fitted(self, "critical_")
        P, S = self._structure(X)
        edges = S.edges if isinstance(S, CriticalGraph) else S.hyperedges
        M = np.zeros((P.n, len(edges)), dtype=int)
        for col, e in enumerate(edges):
            M[list(e), col] = 1
        return M


class IdentifiabilityAnalyzer(BaseEstimator):
    """Fiber bounds, identifiability verdicts and genericity warnings for one cloud."""

    def __init__(self, filtration="vr", max_degree=None, tol=DEFAULT_TIE_TOL, rank_tol=RANK_RTOL,
                 trials=3, seed=0, budget=DEFAULT_SIMPLEX_BUDGET):
        self.filtration = filtration
        self.max_degree = max_degree
        self.tol = tol
        self.rank_tol = rank_tol
        self.trials = trials
        self.seed = seed
        self.budget = budget

    def fit(self, X, y=None):
        X = check_point_coords(X)
        self.report_ = identify(X, self.filtration, self.max_degree, self.tol, self.rank_tol,
                                self.trials, self.seed, self.budget)
        self.n_features_in_ = X.shape[1]
        return self

    @property
    def warnings_(self):
        check_is_fitted(self, "report_")
        return self.report_.genericity_flags
