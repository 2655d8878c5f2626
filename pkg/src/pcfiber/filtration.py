"""Vietoris-Rips and Čech filtered complexes on the full simplex ``K(n)``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .exceptions import ComplexTooLarge, InputError
from .geometry import PointCloud, SimplexKey, as_point_cloud, min_enclosing_ball
from .validation import check_simplex

DEFAULT_SIMPLEX_BUDGET = 2_000_000
DEFAULT_TIE_TOL = 1e-9


class FiltrationKind(str, enum.Enum):
    VIETORIS_RIPS = "vr"
    CECH = "cech"

    @classmethod
    def parse(cls, value) -> "FiltrationKind":
        if isinstance(value, cls):
            return value
        aliases = {"vr": cls.VIETORIS_RIPS, "rips": cls.VIETORIS_RIPS,
                   "vietoris-rips": cls.VIETORIS_RIPS, "vietorisrips": cls.VIETORIS_RIPS,
                   "cech": cls.CECH, "čech": cls.CECH}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise InputError(f"unknown filtration kind {value!r}") from None


def phi_vr(P, sigma: Iterable[int]) -> float:
    """Half the largest pairwise distance within ``sigma``; 0 for a vertex."""
    P = as_point_cloud(P)
    key = check_simplex(sigma, P.n)
    return _phi_vr(P, key)


def _phi_vr(P: PointCloud, key: SimplexKey) -> float:
    if len(key) == 1:
        return 0.0
    sub = P.squared_distances[np.ix_(key, key)]
    return 0.5 * math.sqrt(sub.max())


def phi_cech(P, sigma: Iterable[int]) -> float:
    """Minimal enclosing radius of ``sigma(P)``."""
    P = as_point_cloud(P)
    key = check_simplex(sigma, P.n)
    return min_enclosing_ball(P, key).radius


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices with filtration values, in filtration order.

    ``entries`` is a tuple of ``(simplex, value)``. Complexes built by
    :func:`build_filtered_complex` are sorted by (value, dimension,
    lexicographic vertices); any other face-respecting order is accepted
    by the persistence code as well.
    """

    entries: tuple
    dim_cap: int
    kind: FiltrationKind
    n: int
    supports: dict = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def simplices(self) -> list[SimplexKey]:
        return [s for s, _ in self.entries]

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.entries])

    def value_map(self) -> dict:
        return {s: v for s, v in self.entries}

    def validate(self) -> None:
        """Check face closure, vertex values and face monotonicity in entry order."""
        position = {}
        for pos, (s, v) in enumerate(self.entries):
            if len(s) == 1 and v != 0.0:
                raise InputError(f"vertex {s} has nonzero value {v}")
            for face in combinations(s, len(s) - 1) if len(s) > 1 else ():
                if face not in position:
                    raise InputError(f"face {face} of {s} missing or placed after it")
                if self.entries[position[face]][1] > v:
                    raise InputError(f"face {face} of {s} has larger value")
            position[s] = pos


def count_simplices(n: int, dim_cap: int) -> int:
    return sum(math.comb(n, k + 1) for k in range(min(dim_cap, n - 1) + 1))


def build_filtered_complex(P, kind="vr", max_degree: int = 1,
                           budget: int = DEFAULT_SIMPLEX_BUDGET) -> FilteredComplex:
    """All simplices of dimension ``<= min(max_degree + 1, n - 1)`` with their values.

    Raises
    ------
    ComplexTooLarge
        If the simplex count exceeds ``budget``.
    """
    P = as_point_cloud(P)
    kind = FiltrationKind.parse(kind)
    if max_degree < 0:
        raise InputError("max_degree must be non-negative")
    dim_cap = min(max_degree + 1, P.n - 1)
    total = count_simplices(P.n, dim_cap)
    if total > budget:
        raise ComplexTooLarge(f"{total} simplices exceed the budget of {budget}")

    rows = []
    supports = {} if kind is FiltrationKind.CECH else None
    for size in range(1, dim_cap + 2):
        for key in combinations(range(P.n), size):
            if kind is FiltrationKind.VIETORIS_RIPS:
                value = _phi_vr(P, key)
            else:
                ball = min_enclosing_ball(P, key)
                value = ball.radius
                supports[key] = ball.support
            rows.append((value, size, key))
    rows.sort()
    entries = tuple((key, value) for value, _, key in rows)
    return FilteredComplex(entries, dim_cap, kind, P.n, supports)


@dataclass(frozen=True)
class PreorderSignature:
    """Simplices grouped into ties, groups in increasing value order."""

    groups: tuple
    values: tuple

    def group_of(self) -> dict:
        return {s: g for g, members in enumerate(self.groups) for s in members}


def preorder_signature(F: FilteredComplex, tol: float = DEFAULT_TIE_TOL) -> PreorderSignature:
    """Partition simplices by value equality within ``tol * (1 + |value|)``.

    A group extends while values stay within tolerance of the group's first value.
    """
    ordered = sorted(F.entries, key=lambda e: (e[1], len(e[0]), e[0]))
    groups, values = [], []
    current, start = [], None
    for s, v in ordered:
        if start is not None and v - start <= tol * (1.0 + abs(start)):
            current.append(s)
            continue
        if current:
            groups.append(tuple(sorted(current)))
            values.append(start)
        current, start = [s], v
    if current:
        groups.append(tuple(sorted(current)))
        values.append(start)
    return PreorderSignature(tuple(groups), tuple(values))
