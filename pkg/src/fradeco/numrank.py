"""Numerical rank with an explicit singular-value gap test.

Singular values below ``rtol * sigma_max`` count as zero. A verdict is
confident only if the last kept and the first dropped singular value are
separated by a factor of at least ``min_gap``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Indeterminate

RTOL = 1e-8
MIN_GAP = 1e3


@dataclass(frozen=True)
class RankInfo:
    rank: int
    singular_values: np.ndarray
    gap_ratio: float
    shape: tuple[int, int]

    @property
    def confident(self) -> bool:
        return self.gap_ratio >= MIN_GAP

    @property
    def nullity(self) -> int:
        """Dimension of the right kernel."""
        return self.shape[1] - self.rank

    @property
    def left_nullity(self) -> int:
        return self.shape[0] - self.rank


def singular_values(M) -> np.ndarray:
    M = np.asarray(M)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def rank_from_singular_values(s, shape, rtol: float = RTOL) -> RankInfo:
    s = np.asarray(s, dtype=float)
    if s.size == 0 or s[0] == 0.0:
        return RankInfo(0, s, np.inf, tuple(shape))
    rank = int(np.sum(s > rtol * s[0]))
    if rank == s.size:
        gap = np.inf
    elif s[rank] == 0.0:
        gap = np.inf
    else:
        gap = float(s[rank - 1] / s[rank])
    return RankInfo(rank, s, gap, tuple(shape))


def numerical_rank(M, rtol: float = RTOL) -> RankInfo:
    M = np.asarray(M)
    return rank_from_singular_values(singular_values(M), M.shape, rtol)


def confident_rank(M, rtol: float = RTOL, what: str = "matrix") -> RankInfo:
    """Like :func:`numerical_rank` but raise :class:`Indeterminate` without a clear gap."""
    info = numerical_rank(M, rtol)
    if not info.confident:
        raise Indeterminate(
            f"{what}: no singular-value gap at rank {info.rank} "
            f"(ratio {info.gap_ratio:.3g} < {MIN_GAP:g})"
        )
    return info


def null_space(M, rtol: float = RTOL, what: str = "matrix") -> np.ndarray:
    """Orthonormal basis (as columns) of the right kernel, gap-checked."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    info = rank_from_singular_values(s, M.shape, rtol)
    if not info.confident:
        raise Indeterminate(
            f"{what}: no singular-value gap at rank {info.rank} "
            f"(ratio {info.gap_ratio:.3g} < {MIN_GAP:g})"
        )
    return vh[info.rank:].T.copy()
