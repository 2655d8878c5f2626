"""Numerical rank and kernel helpers for small dense matrices."""

import numpy as np

#: Singular values at or below ``RANK_RTOL * s_max`` count as zero.
RANK_RTOL = 1e-8


def numerical_rank(A, rtol: float = RANK_RTOL) -> int:
    """Rank of ``A`` from its singular values, relative to the largest one.

    Empty and all-zero matrices have rank 0.
    """
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def left_null_space(A, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis (as columns) of ``{w : A.T @ w = 0}``."""
    A = np.asarray(A, dtype=float)
    m = A.shape[0]
    if A.size == 0:
        return np.eye(m)
    U, s, _ = np.linalg.svd(A, full_matrices=True)
    r = int(np.count_nonzero(s > rtol * s[0])) if s[0] > 0 else 0
    return U[:, r:]


def normalize_rows(A) -> np.ndarray:
    """Scale every nonzero row to unit length; zero rows stay zero."""
    A = np.asarray(A, dtype=float)
    norms = np.linalg.norm(A, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return A / norms
