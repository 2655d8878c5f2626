"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from sklearn.utils import check_array

from .exceptions import InputError


def check_point_coords(X, *, copy: bool = True) -> np.ndarray:
    """Validate an ``(n, d)`` coordinate array.

    Rejects empty arrays, non-finite entries and exactly coincident points.
    Returns a float64 array (a copy unless ``copy=False``).
    """
    try:
        coords = check_array(
            X, dtype=np.float64, ensure_2d=True, ensure_min_samples=1,
            ensure_min_features=1, copy=copy,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _reject_duplicates(coords)
    return coords


def _reject_duplicates(coords: np.ndarray) -> None:
    n = coords.shape[0]
    if n < 2:
        return
    # exact equality only; near-duplicates are left to the genericity diagnostics
    order = np.lexsort(coords.T[::-1])
    s = coords[order]
    same = np.all(s[1:] == s[:-1], axis=1)
    if np.any(same):
        k = int(np.flatnonzero(same)[0])
        i, j = sorted((int(order[k]), int(order[k + 1])))
        raise InputError(f"points {i} and {j} coincide; point clouds need distinct points")


def check_simplex(vertices: Iterable[int], n: int) -> tuple[int, ...]:
    """Return ``vertices`` as a sorted tuple after checking bounds and duplicates."""
    key = tuple(sorted(int(v) for v in vertices))
    if not key:
        raise InputError("a simplex needs at least one vertex")
    if key[0] < 0 or key[-1] >= n:
        raise IndexError(f"simplex {key} has vertices outside [0, {n})")
    if any(a == b for a, b in zip(key, key[1:])):
        raise InputError(f"simplex {key} repeats a vertex")
    return key


def check_edges(edges: Iterable[Sequence[int]], n: int) -> list[tuple[int, int]]:
    """Normalize an edge list to ``(i, j)`` pairs with ``i < j``; order is kept."""
    out = []
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise InputError(f"edge {tuple(e)} does not have two endpoints")
        i, j = check_simplex(e, n)
        if (i, j) in seen:
            raise InputError(f"edge {(i, j)} listed twice")
        seen.add((i, j))
        out.append((i, j))
    return out


def check_hyperedges(hyperedges: Iterable[Iterable[int]], n: int, d: int) -> list[tuple[int, ...]]:
    """Normalize hyperedges and enforce the size window ``2 <= |e| <= d + 1``."""
    out = []
    seen = set()
    for e in hyperedges:
        key = check_simplex(e, n)
        if not 2 <= len(key) <= d + 1:
            raise InputError(f"hyperedge {key} must have between 2 and {d + 1} vertices")
        if key in seen:
            raise InputError(f"hyperedge {key} listed twice")
        seen.add(key)
        out.append(key)
    return out


def check_positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0:
        raise InputError(f"{name} must be positive, got {value!r}")
    return value
