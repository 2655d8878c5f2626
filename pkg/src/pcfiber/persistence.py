"""Barcodes of filtered complexes over the two-element field."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .exceptions import InputError
from .filtration import FilteredComplex, build_filtered_complex
from .geometry import as_point_cloud


@dataclass(frozen=True, order=True)
class Interval:
    """Half-open interval ``[birth, death)``; ``death`` may be ``math.inf``."""

    birth: float
    death: float

    def __post_init__(self):
        if not self.birth < self.death:
            raise ValueError(f"empty interval [{self.birth}, {self.death})")

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.death)

    def contains(self, t: float) -> bool:
        return self.birth <= t < self.death

    def to_pair(self) -> list:
        return [self.birth, self.death if self.is_finite else "inf"]


def _sort_key(iv: Interval):
    return (iv.birth, -iv.death)


class Barcode(tuple):
    """Finite multiset of intervals, stored sorted by birth then decreasing death."""

    def __new__(cls, intervals: Iterable[Interval] = ()):
        return super().__new__(cls, sorted(intervals, key=_sort_key))

    @property
    def births(self) -> list[float]:
        return [iv.birth for iv in self]

    @property
    def deaths(self) -> list[float]:
        return [iv.death for iv in self]

    def finite_deaths(self) -> list[float]:
        return sorted(iv.death for iv in self if iv.is_finite)

    def to_json(self) -> list:
        return [iv.to_pair() for iv in self]

    @classmethod
    def from_json(cls, rows) -> "Barcode":
        out = []
        for row in rows:
            if isinstance(row, dict):
                b, dth = row["birth"], row["death"]
            else:
                b, dth = row
            out.append(Interval(float(b), math.inf if dth in ("inf", "Infinity") else float(dth)))
        return cls(out)


@dataclass(frozen=True)
class FullBarcode:
    """Barcodes in degrees ``0..max_degree``."""

    per_degree: dict
    max_degree: int

    def __getitem__(self, degree: int) -> Barcode:
        if degree > self.max_degree or degree < 0:
            raise KeyError(degree)
        return self.per_degree.get(degree, Barcode())

    def __iter__(self) -> Iterator[tuple[int, Barcode]]:
        for k in range(self.max_degree + 1):
            yield k, self[k]

    def intervals(self) -> Iterator[tuple[int, Interval]]:
        for k, bc in self:
            for iv in bc:
                yield k, iv

    def betti_at(self, t: float) -> list[int]:
        return [sum(iv.contains(t) for iv in bc) for _, bc in self]

    def to_json(self) -> dict:
        return {str(k): bc.to_json() for k, bc in self}

    @classmethod
    def from_json(cls, data: dict) -> "FullBarcode":
        per = {int(k): Barcode.from_json(v) for k, v in data.items()}
        return cls(per, max(per) if per else 0)

    def to_array(self) -> np.ndarray:
        """Rows ``(degree, birth, death)``; infinite deaths stay ``inf``."""
        rows = [(k, iv.birth, iv.death) for k, iv in self.intervals()]
        return np.array(rows, dtype=float).reshape(len(rows), 3)


def _boundary(simplex):
    return combinations(simplex, len(simplex) - 1)


def compute_barcodes(F: FilteredComplex, max_degree: int | None = None) -> FullBarcode:
    """Standard column reduction with clearing, columns as sets of row indices.

    The entry order of ``F`` is the reduction order. Columns are reduced from
    the top dimension down so that every pivot clears a column one
    dimension lower. Zero-length intervals are dropped.
    """
    if max_degree is None:
        max_degree = F.dim_cap
    if max_degree < 0:
        raise InputError("max_degree must be non-negative")
    simplices = [s for s, _ in F.entries]
    values = [v for _, v in F.entries]
    index = {s: i for i, s in enumerate(simplices)}
    dims = [len(s) - 1 for s in simplices]
    top = max(dims) if dims else 0

    columns: dict[int, set] = {}
    pivot_of: dict[int, int] = {}
    cleared: set = set()
    pairs = []
    for p in range(min(top, max_degree + 1), 0, -1):
        for j, s in enumerate(simplices):
            if dims[j] != p or j in cleared:
                continue
            try:
                col = {index[f] for f in _boundary(s)}
            except KeyError:
                raise InputError(f"a face of {s} is missing from the complex") from None
            while col:
                low = max(col)
                other = pivot_of.get(low)
                if other is None:
                    break
                col ^= columns[other]
            if col:
                low = max(col)
                if low > j:
                    raise InputError(f"face of {s} appears after it in the filtration")
                columns[j] = col
                pivot_of[low] = j
                cleared.add(low)
                pairs.append((low, j))

    per = {k: [] for k in range(max_degree + 1)}
    for i, j in pairs:
        k = dims[i]
        if k <= max_degree and values[i] < values[j]:
            per[k].append(Interval(values[i], values[j]))
    paired_neg = set(pivot_of.values())
    for i, s in enumerate(simplices):
        k = dims[i]
        if k > max_degree or i in cleared or i in paired_neg:
            continue
        # a simplex of dimension <= max_degree + 1 that was reduced but not
        # paired would be a cycle; only those up to max_degree count here
        per[k].append(Interval(values[i], math.inf))
    return FullBarcode({k: Barcode(v) for k, v in per.items()}, max_degree)


def default_max_degree(kind, n: int, d: int) -> int:
    """``d`` for Čech (union-of-balls homology vanishes above), ``n - 2`` for VR."""
    from .filtration import FiltrationKind
    kind = FiltrationKind.parse(kind)
    if kind is FiltrationKind.CECH:
        return max(0, min(d, n - 1))
    return max(0, n - 2)


def barcodes(P, kind="vr", max_degree: int | None = None, **kwargs) -> FullBarcode:
    """Full barcode of the Vietoris-Rips or Čech filtration of ``P``."""
    P = as_point_cloud(P)
    if max_degree is None:
        max_degree = default_max_degree(kind, P.n, P.d)
    F = build_filtered_complex(P, kind, max_degree, **kwargs)
    return compute_barcodes(F, max_degree)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def mst_edges(P) -> list[tuple[int, int]]:
    """Edges of a minimal spanning tree (Kruskal, ties broken lexicographically)."""
    P = as_point_cloud(P)
    sq = P.squared_distances
    cand = sorted((sq[i, j], i, j) for i, j in combinations(range(P.n), 2))
    uf = _UnionFind(P.n)
    out = []
    for _, i, j in cand:
        if uf.union(i, j):
            out.append((i, j))
            if len(out) == P.n - 1:
                break
    return out


def mst_edge_lengths(P) -> list[float]:
    """Ascending edge lengths of a minimal spanning tree of ``P``."""
    P = as_point_cloud(P)
    return sorted(math.sqrt(P.squared_distances[i, j]) for i, j in mst_edges(P))


def verify_mst_barcode_correspondence(P, max_rel_err: float = 1e-9) -> bool:
    """Do the MST edge lengths equal twice the finite degree-0 deaths?"""
    P = as_point_cloud(P)
    lengths = mst_edge_lengths(P)
    deaths = barcodes(P, "vr", max_degree=0)[0].finite_deaths()
    if len(lengths) != len(deaths):
        return False
    for a, b in zip(lengths, deaths):
        if abs(a - 2.0 * b) > max_rel_err * max(abs(a), 1e-300):
            return False
    return True


_DEGREE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def barcode_svg(barcode: FullBarcode, width: int = 480, bar_height: int = 10, gap: int = 4,
                title: str | None = None) -> str:
    """Static SVG with one horizontal bar per interval, colored by degree.

    Infinite bars run to the right margin and end in an arrow head.
    """
    items = list(barcode.intervals())
    finite = [v for _, iv in items for v in (iv.birth, iv.death) if math.isfinite(v)]
    hi = max(finite) if finite else 1.0
    hi = hi * 1.1 if hi > 0 else 1.0
    left, right, top = 40, 20, 24 if title else 8
    span = width - left - right
    height = top + len(items) * (bar_height + gap) + 24

    def x(v):
        return left + span * (min(v, hi) / hi)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    if title:
        out.append(f'<text x="{left}" y="16" font-family="sans-serif" font-size="12">{title}</text>')
    y = top
    for k, iv in items:
        color = _DEGREE_COLORS[k % len(_DEGREE_COLORS)]
        x0, x1 = x(iv.birth), x(iv.death)
        out.append(f'<rect class="bar" data-degree="{k}" x="{x0:.3f}" y="{y}" '
                   f'width="{max(x1 - x0, 0.5):.3f}" height="{bar_height}" fill="{color}"/>')
        if not iv.is_finite:
            ym = y + bar_height / 2
            out.append(f'<path d="M{x1:.3f},{y - 2} L{x1 + 8:.3f},{ym} L{x1:.3f},{y + bar_height + 2} Z" '
                       f'fill="{color}"/>')
        y += bar_height + gap
    axis_y = y + 4
    out.append(f'<line x1="{left}" y1="{axis_y}" x2="{left + span}" y2="{axis_y}" stroke="black"/>')
    out.append(f'<text x="{left}" y="{axis_y + 14}" font-family="sans-serif" font-size="10">0</text>')
    out.append(f'<text x="{left + span}" y="{axis_y + 14}" font-family="sans-serif" font-size="10" '
               f'text-anchor="end">{hi:.4g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
