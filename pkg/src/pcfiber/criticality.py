"""Critical edges, the critical graph and the critical hypergraph of a point cloud."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import combinations

from .filtration import DEFAULT_TIE_TOL, FiltrationKind, build_filtered_complex
from .geometry import PointCloud, SimplexKey, as_point_cloud, half_distance
from .persistence import FullBarcode, compute_barcodes, default_max_degree
from .validation import check_edges, check_hyperedges


@dataclass(frozen=True)
class CriticalGraph:
    n: int
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(check_edges(self.edges, self.n))))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "CriticalGraph":
        return cls(int(data["n"]), tuple(tuple(e) for e in data["edges"]))

    def relabel(self, perm) -> "CriticalGraph":
        """Graph after vertex ``i`` is renamed ``perm[i]``."""
        return CriticalGraph(self.n, tuple(tuple(sorted((perm[i], perm[j]))) for i, j in self.edges))


@dataclass(frozen=True)
class CriticalHypergraph:
    n: int
    hyperedges: tuple
    d: int

    def __post_init__(self):
        keys = check_hyperedges(self.hyperedges, self.n, self.d)
        object.__setattr__(self, "hyperedges", tuple(sorted(keys, key=lambda s: (len(s), s))))

    @property
    def pairs(self) -> list:
        return [e for e in self.hyperedges if len(e) == 2]

    def to_json(self) -> dict:
        return {"n": self.n, "hyperedges": [list(e) for e in self.hyperedges]}

    @classmethod
    def from_json(cls, data: dict, d: int) -> "CriticalHypergraph":
        return cls(int(data["n"]), tuple(tuple(e) for e in data["hyperedges"]), d)

    def relabel(self, perm) -> "CriticalHypergraph":
        return CriticalHypergraph(
            self.n, tuple(tuple(sorted(perm[i] for i in e)) for e in self.hyperedges), self.d)


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * (1.0 + abs(b))


def raw_endpoints(D: FullBarcode) -> list[float]:
    """Every finite endpoint across all degrees, ascending, with 0 included."""
    vals = {0.0}
    for _, iv in D.intervals():
        vals.add(iv.birth)
        if iv.is_finite:
            vals.add(iv.death)
    return sorted(vals)


def bounded_endpoints(D: FullBarcode, tol: float = DEFAULT_TIE_TOL) -> list[float]:
    """Distinct finite endpoints, merged within ``tol * (1 + |value|)``, ascending.

    0 is always present (every vertex is born there), so ``k = len(result)``.
    """
    out = []
    for v in raw_endpoints(D):
        if out and _close(v, out[-1], tol):
            continue
        out.append(v)
    return out


def merged_endpoint_pairs(D: FullBarcode, tol: float = DEFAULT_TIE_TOL) -> list[tuple[float, float]]:
    """Pairs of distinct raw endpoints that :func:`bounded_endpoints` merged."""
    raw = raw_endpoints(D)
    return [(a, b) for a, b in zip(raw, raw[1:]) if _close(b, a, tol)]


def match_endpoint(value: float, endpoints: list[float], tol: float) -> float | None:
    """Nearest entry of the sorted ``endpoints`` within tolerance of ``value``, or None."""
    k = bisect.bisect_left(endpoints, value)
    best = None
    for c in endpoints[max(k - 1, 0):k + 1]:
        if _close(value, c, tol) and (best is None or abs(value - c) < abs(value - best)):
            best = c
    return best


def critical_edges(P, D: FullBarcode, tol: float = DEFAULT_TIE_TOL) -> set[tuple[int, int]]:
    """Pairs whose half-distance is a bounded endpoint of the VR barcode ``D``."""
    P = as_point_cloud(P)
    ends = [b for b in bounded_endpoints(D, tol) if b > 0]
    return {(i, j) for i, j in combinations(range(P.n), 2)
            if match_endpoint(half_distance(P, i, j), ends, tol) is not None}


def edge_endpoint_map(P, D: FullBarcode, tol: float = DEFAULT_TIE_TOL) -> dict:
    """Critical edge -> the (merged) endpoint its half-distance realizes."""
    P = as_point_cloud(P)
    ends = [b for b in bounded_endpoints(D, tol) if b > 0]
    out = {}
    for i, j in combinations(range(P.n), 2):
        m = match_endpoint(half_distance(P, i, j), ends, tol)
        if m is not None:
            out[(i, j)] = m
    return out


def critical_graph(P, max_degree: int | None = None, tol: float = DEFAULT_TIE_TOL) -> CriticalGraph:
    """The graph on ``[n]`` whose edges are the critical edges of ``P``."""
    P = as_point_cloud(P)
    if max_degree is None:
        max_degree = default_max_degree(FiltrationKind.VIETORIS_RIPS, P.n, P.d)
    F = build_filtered_complex(P, FiltrationKind.VIETORIS_RIPS, max_degree)
    D = compute_barcodes(F, max_degree)
    return CriticalGraph(P.n, tuple(sorted(critical_edges(P, D, tol))))


def _critical_simplices(P: PointCloud, radius: dict, D: FullBarcode, tol: float) -> list[SimplexKey]:
    ends = [b for b in bounded_endpoints(D, tol) if b > 0]
    out = []
    for key, r in radius.items():
        if not 2 <= len(key) <= P.d + 1:
            continue
        if match_endpoint(r, ends, tol) is None:
            continue
        # faces suffice: enclosing radius is monotone under inclusion
        margin = tol * (1.0 + abs(r))
        if all(r - radius[f] > margin for f in combinations(key, len(key) - 1)):
            out.append(key)
    return out


def critical_hypergraph(P, tol: float = DEFAULT_TIE_TOL, max_degree: int | None = None) -> CriticalHypergraph:
    """Simplices of size ``2..d+1`` whose enclosing radius is a Čech endpoint
    and strictly exceeds the radius of each proper face.

    Singletons are left out; they carry no constraint.
    """
    P = as_point_cloud(P)
    if max_degree is None:
        max_degree = default_max_degree(FiltrationKind.CECH, P.n, P.d)
    max_degree = max(max_degree, min(P.d, P.n - 1) - 1)
    F = build_filtered_complex(P, FiltrationKind.CECH, max_degree)
    D = compute_barcodes(F, max_degree)
    radius = F.value_map()
    return CriticalHypergraph(P.n, tuple(_critical_simplices(P, radius, D, tol)), P.d)


def critical_structures_from(P: PointCloud, F, D: FullBarcode, tol: float = DEFAULT_TIE_TOL):
    """Critical graph or hypergraph from an already computed complex and barcode."""
    if F.kind is FiltrationKind.VIETORIS_RIPS:
        return CriticalGraph(P.n, tuple(sorted(critical_edges(P, D, tol))))
    return CriticalHypergraph(P.n, tuple(_critical_simplices(P, F.value_map(), D, tol)), P.d)


def unrealized_endpoints(P, D: FullBarcode, kind, F=None, tol: float = DEFAULT_TIE_TOL) -> list[float]:
    """Nonzero bounded endpoints not realized by any critical edge / simplex.

    Empty for every input when the barcode came from ``P``.
    """
    P = as_point_cloud(P)
    kind = FiltrationKind.parse(kind)
    ends = [b for b in bounded_endpoints(D, tol) if b > 0]
    if kind is FiltrationKind.VIETORIS_RIPS:
        hit = set(edge_endpoint_map(P, D, tol).values())
    else:
        if F is None:
            F = build_filtered_complex(P, kind, D.max_degree)
        radius = F.value_map()
        hit = {match_endpoint(radius[s], ends, tol) for s in _critical_simplices(P, radius, D, tol)}
    return [b for b in ends if b not in hit]

