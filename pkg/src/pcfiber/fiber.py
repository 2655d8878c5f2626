"""Identifiability verdicts and fiber-dimension bounds for persistence of point clouds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ._version import __version__
from .circumsphere import CircumsphereFramework, circumsphere_rigidity_test
from .criticality import (CriticalGraph, CriticalHypergraph, _critical_simplices, bounded_endpoints,
                          critical_edges, match_endpoint, merged_endpoint_pairs)
from .exceptions import AngleViolation, DegenerateSimplex, DomainError, InputError, NotApplicable
from .filtration import DEFAULT_SIMPLEX_BUDGET, DEFAULT_TIE_TOL, FiltrationKind, build_filtered_complex
from .geometry import (PointCloud, as_point_cloud, circumradius_gradient, half_distance,
                       is_affinely_independent, min_enclosing_ball)
from .linalg import RANK_RTOL, numerical_rank
from .persistence import compute_barcodes, default_max_degree
from .rigidity import Framework, ggr_2d, ggr_randomized, infinitesimal_rigidity_test

#: Placeholder for verdicts whose theorem hypotheses do not hold.
NOT_APPLICABLE = "n/a"

# subsets checked for affine dependence before the check is skipped
_AFFINE_SUBSET_BUDGET = 20_000


def fiber_dim_bounds(n: int, d: int, k: int) -> tuple[int, int]:
    """``(nd - k + 1, nd - n + 1)``: lower bound on the fiber dimension, upper bound on it."""
    for name, v in (("n", n), ("d", d), ("k", k)):
        if int(v) != v or v < 1:
            raise InputError(f"{name} must be a positive integer, got {v}")
    return n * d - k + 1, n * d - n + 1


class _Analysis:
    """Complex, barcode and endpoints of one filtration, computed once."""

    def __init__(self, P: PointCloud, kind, max_degree=None, tol=DEFAULT_TIE_TOL,
                 budget=DEFAULT_SIMPLEX_BUDGET):
        self.P = P
        self.kind = FiltrationKind.parse(kind)
        if max_degree is None:
            max_degree = default_max_degree(self.kind, P.n, P.d)
        if self.kind is FiltrationKind.CECH:
            # critical simplices go up to size d + 1
            max_degree = max(max_degree, min(P.d, P.n - 1) - 1)
        self.max_degree = max_degree
        self.tol = tol
        self.F = build_filtered_complex(P, self.kind, max_degree, budget)
        self.D = compute_barcodes(self.F, max_degree)
        self.endpoints = bounded_endpoints(self.D, tol)

    @property
    def k(self) -> int:
        return len(self.endpoints)

    def representatives(self) -> list[tuple[float, tuple]]:
        """First simplex in (dimension, lexicographic) order attaining each nonzero endpoint."""
        ends = [b for b in self.endpoints if b > 0]
        reps = {}
        for s, v in sorted(self.F.entries, key=lambda e: (len(e[0]), e[0])):
            if len(s) == 1:
                continue
            m = match_endpoint(v, ends, self.tol)
            if m is not None and m not in reps:
                reps[m] = s
        return [(b, reps[b]) for b in ends if b in reps]

    def gradient_row(self, key) -> np.ndarray:
        P = self.P
        if self.kind is FiltrationKind.VIETORIS_RIPS:
            sub = P.squared_distances[np.ix_(key, key)]
            a, b = np.unravel_index(np.argmax(sub), sub.shape)
            return _half_distance_gradient(P, key[a], key[b])
        support = self.F.supports[key]
        if len(support) == 2:
            return _half_distance_gradient(P, *support)
        rho = self.F.value_map()[key]
        return circumradius_gradient(P, support) / (2.0 * rho)

    def jacobian(self):
        reps = self.representatives()
        if not reps:
            return np.zeros((0, self.P.n * self.P.d)), reps
        return np.vstack([self.gradient_row(s) for _, s in reps]), reps

    def critical_graph(self) -> CriticalGraph:
        return CriticalGraph(self.P.n, tuple(sorted(critical_edges(self.P, self.D, self.tol))))

    def critical_hypergraph(self) -> CriticalHypergraph:
        return CriticalHypergraph(
            self.P.n, tuple(_critical_simplices(self.P, self.F.value_map(), self.D, self.tol)), self.P.d)


def _half_distance_gradient(P: PointCloud, i: int, j: int) -> np.ndarray:
    g = np.zeros(P.n * P.d)
    diff = P.coords[i] - P.coords[j]
    v = diff / (4.0 * half_distance(P, i, j))
    g[i * P.d:(i + 1) * P.d] = v
    g[j * P.d:(j + 1) * P.d] = -v
    return g


def local_fiber_dimension(P, kind="vr", max_degree: int | None = None, tol: float = DEFAULT_TIE_TOL,
                          rank_tol: float = RANK_RTOL, budget: int = DEFAULT_SIMPLEX_BUDGET) -> int:
    """``nd`` minus the rank of the stacked endpoint gradients.

    One row per nonzero bounded endpoint: the gradient of the filtration
    value of a representative simplex attaining it.
    """
    P = as_point_cloud(P)
    J, _ = _Analysis(P, kind, max_degree, tol, budget).jacobian()
    return P.n * P.d - numerical_rank(J, rank_tol)


def _vr_local(P: PointCloud, G: CriticalGraph, rank_tol: float) -> bool:
    return infinitesimal_rigidity_test(Framework(G, P), rank_tol).is_rigid


def _vr_global(P: PointCloud, G: CriticalGraph, trials: int, seed: int) -> bool:
    if P.d < 2 or P.n < P.d + 2:
        raise NotApplicable(f"needs d >= 2 and n >= d + 2, got n={P.n}, d={P.d}")
    if P.d == 2:
        return ggr_2d(G)
    return ggr_randomized(G, P.d, trials, seed)


def _cech_local(P: PointCloud, H: CriticalHypergraph, rank_tol: float) -> bool:
    fw = CircumsphereFramework.from_hypergraph(H, P)
    return circumsphere_rigidity_test(fw, rank_tol).is_rigid


def vr_local_identifiability(P, tol: float = DEFAULT_TIE_TOL, rank_tol: float = RANK_RTOL,
                             max_degree: int | None = None) -> bool:
    """Is the critical-graph framework ``(G_P, P)`` infinitesimally rigid?"""
    P = as_point_cloud(P)
    return _vr_local(P, _Analysis(P, "vr", max_degree, tol).critical_graph(), rank_tol)


def vr_global_identifiability_sufficient(P, trials: int = 3, seed: int = 0, tol: float = DEFAULT_TIE_TOL,
                                         max_degree: int | None = None) -> bool:
    """Is ``G_P`` generically globally rigid (sufficient for identifiability)?

    Raises NotApplicable unless ``d >= 2`` and ``n >= d + 2``. In the plane
    the combinatorial characterization is used; otherwise the randomized
    stress test with ``trials`` and ``seed``.
    """
    P = as_point_cloud(P)
    if P.d < 2 or P.n < P.d + 2:
        raise NotApplicable(f"needs d >= 2 and n >= d + 2, got n={P.n}, d={P.d}")
    return _vr_global(P, _Analysis(P, "vr", max_degree, tol).critical_graph(), trials, seed)


def cech_local_identifiability(P, tol: float = DEFAULT_TIE_TOL, rank_tol: float = RANK_RTOL,
                               max_degree: int | None = None) -> bool:
    """Is the circumsphere framework ``(H_P, P)`` rigid?"""
    P = as_point_cloud(P)
    return _cech_local(P, _Analysis(P, "cech", max_degree, tol).critical_hypergraph(), rank_tol)


@dataclass(frozen=True)
class GenericityWarning:
    code: str
    message: str
    items: tuple = ()

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "items": [list(x) if isinstance(x, tuple) else x
                                                                      for x in self.items]}

    def __str__(self):
        return f"{self.code}: {self.message}"


def _close(a, b, tol):
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


def _coincident_distances(P: PointCloud, tol: float) -> list[GenericityWarning]:
    pairs = sorted((P.squared_distances[i, j] ** 0.5, (i, j)) for i, j in combinations(range(P.n), 2))
    groups, cur = [], []
    for v, e in pairs:
        if cur and _close(v, cur[0][0], tol):
            cur.append((v, e))
            continue
        if len(cur) > 1:
            groups.append(cur)
        cur = [(v, e)]
    if len(cur) > 1:
        groups.append(cur)
    return [GenericityWarning("coincident_distances",
                              f"{len(g)} pairs share distance {g[0][0]:.12g}",
                              tuple(e for _, e in g)) for g in groups]


def _affine_dependence(P: PointCloud, extra=()) -> list[GenericityWarning]:
    m = min(P.n, P.d + 1)
    if m < 3 and not extra:
        return []
    if math.comb(P.n, m) <= _AFFINE_SUBSET_BUDGET:
        candidates = list(combinations(range(P.n), m)) if m >= 3 else []
    else:
        candidates = []
    candidates += [s for s in extra if s not in set(candidates)]
    bad = tuple(s for s in candidates if not is_affinely_independent(P, s))
    out = []
    if bad:
        out.append(GenericityWarning("affine_dependence",
                                     f"{len(bad)} point subsets are affinely dependent", bad))
    if math.comb(P.n, m) > _AFFINE_SUBSET_BUDGET:
        out.append(GenericityWarning("affine_check_partial",
                                     f"only critical simplices checked; C({P.n}, {m}) subsets is too many"))
    return out


def _cech_ties_and_supports(P: PointCloud, cech: _Analysis, tol: float) -> list[GenericityWarning]:
    F = cech.F
    out = []
    # ties between simplices with the same support are forced; others are not
    by_value = sorted(((v, F.supports[s], s) for s, v in F.entries if len(s) > 1), key=lambda t: t[0])
    unforced = []
    for (v1, s1, k1), (v2, s2, k2) in zip(by_value, by_value[1:]):
        if s1 != s2 and _close(v1, v2, tol):
            unforced.append((k1, k2))
    if unforced:
        out.append(GenericityWarning("unforced_cech_ties",
                                     f"{len(unforced)} enclosing-radius ties between different supports",
                                     tuple(unforced)))
    degenerate = []
    coords = P.coords
    for s, v in F.entries:
        if len(s) < 3:
            continue
        sup = F.supports[s]
        if len(sup) < 2:
            continue
        c = min_enclosing_ball(P, s).center
        for i in s:
            if i in sup:
                continue
            if abs(np.linalg.norm(coords[i] - c) - v) <= tol * (1.0 + v):
                degenerate.append(s)
                break
    if degenerate:
        out.append(GenericityWarning("support_degeneracy",
                                     f"{len(degenerate)} simplices have a non-support point on the enclosing sphere",
                                     tuple(degenerate)))
    return out


def _merged_endpoints(an: _Analysis) -> list[GenericityWarning]:
    merged = merged_endpoint_pairs(an.D, an.tol)
    if not merged:
        return []
    return [GenericityWarning("near_coincident_endpoints",
                              f"{len(merged)} {an.kind.value} endpoint pairs merged within tolerance",
                              tuple(merged))]


def genericity_diagnostics(P, tol: float = DEFAULT_TIE_TOL, max_degree: int | None = None,
                           _analyses: dict | None = None) -> list[GenericityWarning]:
    """Warnings for visible failures of genericity; empty for a random cloud.

    Checks coincident pairwise distances (which are also the only way
    Rips values can tie beyond forced ties), affinely dependent subsets of
    ``min(n, d+1)`` points, enclosing-radius ties between different
    supports, non-support points on an enclosing sphere, and endpoints
    merged by the tolerance.
    """
    P = as_point_cloud(P)
    an = dict(_analyses or {})
    for kind in ("vr", "cech"):
        if kind not in an:
            an[kind] = _Analysis(P, kind, max_degree, tol)
    out = _coincident_distances(P, tol)
    out += _affine_dependence(P, extra=an["cech"].critical_hypergraph().hyperedges)
    out += _cech_ties_and_supports(P, an["cech"], tol)
    out += _merged_endpoints(an["vr"]) + _merged_endpoints(an["cech"])
    return out


@dataclass
class IdentifiabilityReport:
    n: int
    d: int
    filtration: str
    k: int
    lower_bound: int
    upper_bound: int
    local_fiber_dim: int | None
    vr_locally_identifiable: object = None
    vr_globally_identifiable_sufficient: object = None
    cech_locally_identifiable: object = None
    genericity_flags: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    seed: int | None = None
    trials: int | None = None

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "n": self.n, "d": self.d, "filtration": self.filtration,
            "k": self.k,
            "fiber_dim_lower_bound": self.lower_bound,
            "fiber_dim_upper_bound": self.upper_bound,
            "local_fiber_dim": self.local_fiber_dim,
            "vr_locally_identifiable": self.vr_locally_identifiable,
            "vr_globally_identifiable_sufficient": self.vr_globally_identifiable_sufficient,
            "cech_locally_identifiable": self.cech_locally_identifiable,
            "genericity_flags": [w.to_json() if isinstance(w, GenericityWarning) else w
                                 for w in self.genericity_flags],
            "diagnostics": self.diagnostics,
            "seed": self.seed, "trials": self.trials,
        }


def _guarded(fn, flags: list, label: str):
    """Run a verdict; NotApplicable gives "n/a", domain failures give None plus a flag."""
    try:
        return fn()
    except NotApplicable:
        return NOT_APPLICABLE
    except (DomainError, DegenerateSimplex) as exc:
        flags.append(GenericityWarning("verdict_unavailable", f"{label}: {exc}"))
        return None


def identify_all(P, kinds=("vr", "cech"), max_degree: int | None = None, tol: float = DEFAULT_TIE_TOL,
                 rank_tol: float = RANK_RTOL, trials: int = 3, seed: int = 0,
                 budget: int = DEFAULT_SIMPLEX_BUDGET) -> dict:
    """One :class:`IdentifiabilityReport` per filtration kind, sharing all work.

    Every report carries all three verdicts; the fiber fields (``k``,
    bounds, local dimension) belong to the report's own filtration.
    """
    P = as_point_cloud(P)
    kinds = [FiltrationKind.parse(k).value for k in kinds]
    an = {k: _Analysis(P, k, max_degree, tol, budget) for k in ("vr", "cech")}
    flags = genericity_diagnostics(P, tol, max_degree, _analyses=an)

    G = an["vr"].critical_graph()
    H = an["cech"].critical_hypergraph()
    vr_local = _guarded(lambda: _vr_local(P, G, rank_tol), flags, "vr_locally_identifiable")
    vr_global = _guarded(lambda: _vr_global(P, G, trials, seed), flags, "vr_globally_identifiable_sufficient")
    cech_local = _guarded(lambda: _cech_local(P, H, rank_tol), flags, "cech_locally_identifiable")

    out = {}
    for kind in kinds:
        main = an[kind]
        own_flags = list(flags)
        lower, upper = fiber_dim_bounds(P.n, P.d, main.k)
        diagnostics = {"endpoints": main.endpoints, "critical_graph": G.to_json(),
                       "critical_hypergraph": H.to_json()}
        try:
            J, reps = main.jacobian()
            rank = numerical_rank(J, rank_tol)
            local = P.n * P.d - rank
            diagnostics.update(jacobian_rank=rank, representatives=[[b, list(s)] for b, s in reps])
        except DegenerateSimplex as exc:
            local = None
            own_flags.append(GenericityWarning("verdict_unavailable", f"local_fiber_dim: {exc}"))
        out[kind] = IdentifiabilityReport(P.n, P.d, kind, main.k, lower, upper, local,
                                          vr_local, vr_global, cech_local, own_flags, diagnostics,
                                          seed, trials)
    return out


def identify(P, kind="vr", max_degree: int | None = None, tol: float = DEFAULT_TIE_TOL,
             rank_tol: float = RANK_RTOL, trials: int = 3, seed: int = 0,
             budget: int = DEFAULT_SIMPLEX_BUDGET) -> IdentifiabilityReport:
    """Fiber bounds for ``kind`` plus all three identifiability verdicts and warnings."""
    kind = FiltrationKind.parse(kind).value
    return identify_all(P, (kind,), max_degree, tol, rank_tol, trials, seed, budget)[kind]


def generate_chain_cloud(n: int, radii, angles) -> PointCloud:
    """Planar chain with ``p[i+1] = p[i] + 2 r[i] (cos a[i], sin a[i])`` starting at the origin.

    Every step angle must lie strictly inside ``(-pi/4, pi/4)``; all
    pairwise direction angles are then checked as well.
    """
    if n < 1:
        raise InputError("n must be positive")
    radii = np.asarray(radii, dtype=float).reshape(-1)
    angles = np.asarray(angles, dtype=float).reshape(-1)
    if len(radii) != n - 1 or len(angles) != n - 1:
        raise InputError(f"need {n - 1} radii and angles, got {len(radii)} and {len(angles)}")
    if np.any(~np.isfinite(radii)) or np.any(radii <= 0):
        raise InputError("radii must be positive and finite")
    if np.any(~np.isfinite(angles)) or np.any(np.abs(angles) >= math.pi / 4):
        raise AngleViolation("step angles must lie strictly inside (-pi/4, pi/4)")
    steps = 2.0 * radii[:, None] * np.column_stack([np.cos(angles), np.sin(angles)])
    coords = np.vstack([np.zeros((1, 2)), np.cumsum(steps, axis=0)])
    for i, j in combinations(range(n), 2):
        v = coords[j] - coords[i]
        if not abs(math.atan2(v[1], v[0])) < math.pi / 4:
            raise AngleViolation(f"direction from point {i} to {j} is not within pi/4 of the x-axis")
    return PointCloud(coords)
