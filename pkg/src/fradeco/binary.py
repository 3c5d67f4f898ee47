"""Frame decompositions of binary forms.

A binary form of degree d is given by ``t_0..t_d`` with
``t_i = sum_j lambda_j * v_1j**i * v_2j**(d-i)``. For 3 <= r <= 9 the forms of
frame rank r are cut out by the maximal minors of an (r-1) x (d-r+1) matrix
``M_r`` of linear forms in the t's. Every column of ``M_r`` is the first
column with all indices shifted, so a template only stores that first
column as integer stencils.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numrank
from .decomposition import Decomposition
from .errors import (
    DecompositionFailed,
    Indeterminate,
    NotRankDeficient,
    OrderTooSmall,
    RepeatedRoots,
    ShapeMismatch,
    SingularPoint,
    UnsupportedR,
)
from .funtf import Frame
from .tensor import SymTensor


@dataclass(frozen=True)
class TemplateMr:
    r: int
    first_column: tuple[tuple[tuple[int, int], ...], ...]

    def coefficient_matrix(self) -> np.ndarray:
        """(r-1) x (r+1) integer matrix A with first column of M_r equal to ``A @ t[:r+1]``."""
        A = np.zeros((self.r - 1, self.r + 1), dtype=np.int64)
        for i, stencil in enumerate(self.first_column):
            for c, k in stencil:
                A[i, k] += c
        return A


def _stencils(*rows):
    return tuple(tuple(row) for row in rows)


TEMPLATES: dict[int, TemplateMr] = {
    3: TemplateMr(3, _stencils(
        [(1, 0), (-3, 2)],
        [(3, 1), (-1, 3)])),
    4: TemplateMr(4, _stencils(
        [(1, 0), (1, 4)],
        [(1, 1), (-1, 3)],
        [(1, 2)])),
    5: TemplateMr(5, _stencils(
        [(1, 0), (5, 2)],
        [(1, 1), (-3, 3)],
        [(3, 2), (-1, 4)],
        [(5, 3), (1, 5)])),
    6: TemplateMr(6, _stencils(
        [(1, 0), (3, 2)],
        [(1, 1), (1, 5)],
        [(1, 2), (-1, 4)],
        [(1, 3)],
        [(3, 4), (1, 6)])),
    7: TemplateMr(7, _stencils(
        [(3, 0), (7, 2)],
        [(1, 1), (5, 3)],
        [(1, 2), (-3, 4)],
        [(3, 3), (-1, 5)],
        [(5, 4), (1, 6)],
        [(7, 5), (3, 7)])),
    8: TemplateMr(8, _stencils(
        [(1, 0), (2, 2)],
        [(1, 1), (3, 3)],
        [(1, 4)],
        [(1, 3), (-1, 5)],
        [(1, 2), (1, 6)],
        [(3, 5), (1, 7)],
        [(2, 6), (1, 8)])),
    9: TemplateMr(9, _stencils(
        [(5, 0), (9, 2)],
        [(3, 1), (7, 3)],
        [(1, 2), (5, 4)],
        [(1, 3), (-3, 5)],
        [(3, 4), (-1, 6)],
        [(5, 5), (1, 7)],
        [(7, 6), (3, 8)],
        [(9, 7), (5, 9)])),
}


def template(r: int) -> TemplateMr:
    if r not in TEMPLATES:
        raise UnsupportedR(f"M_r is only available for 3 <= r <= 9, got r={r}")
    return TEMPLATES[r]


def _as_binary(t) -> np.ndarray:
    if isinstance(t, SymTensor):
        return t.binary_coords().astype(float)
    return np.asarray(t, dtype=float)


def build_Mr(t, r: int) -> np.ndarray:
    """The (r-1) x (d-r+1) matrix M_r evaluated at the binary coordinates t."""
    t = _as_binary(t)
    d = len(t) - 1
    A = template(r).coefficient_matrix().astype(float)
    if d < 2 * r - 2:
        raise OrderTooSmall(f"M_{r} needs d >= {2 * r - 2}, got d={d}")
    # column j is A @ t[j : j + r + 1]
    H = np.array([t[j:j + r + 1] for j in range(d - r + 1)]).T
    return A @ H


@dataclass(frozen=True)
class RankReport:
    r: int
    numerical_rank: int
    singular_values: np.ndarray
    gap_ratio: float

    @property
    def deficient(self) -> bool:
        return self.numerical_rank <= self.r - 2

    @property
    def confident(self) -> bool:
        return self.gap_ratio >= numrank.MIN_GAP


def rank_report(t, r: int, rtol: float = numrank.RTOL) -> RankReport:
    info = numrank.numerical_rank(build_Mr(t, r), rtol)
    return RankReport(r, info.rank, info.singular_values, info.gap_ratio)


def fradeco_rank(t, rtol: float = numrank.RTOL) -> tuple[list[RankReport], int | None]:
    """Reports for r = 3, 4, ... (while d >= 2r - 2) and the first r with M_r rank deficient."""
    t = _as_binary(t)
    d = len(t) - 1
    if d < 4:
        raise OrderTooSmall("frame rank detection needs d >= 4")
    reports = []
    r = 3
    while r <= max(TEMPLATES) and d >= 2 * r - 2:
        rep = rank_report(t, r, rtol)
        reports.append(rep)
        if not rep.confident:
            raise Indeterminate(
                f"M_{r}: singular-value gap {rep.gap_ratio:.3g} below {numrank.MIN_GAP:g}"
            )
        if rep.deficient:
            return reports, r
        r += 1
    return reports, None


# --- roots of binary forms ----------------------------------------------------

INFINITY_TOL = 1e-10
CLUSTER_TOL = 1e-7
IMAG_TOL = 1e-7


def binary_form_roots(coeffs, infinity_tol: float = INFINITY_TOL) -> list[tuple[complex, complex]]:
    """Projective roots ``(x : y)`` of ``sum_k coeffs[k] x**k y**(m-k)``, with multiplicity.

    Finite roots come from the companion matrix of the dehomogenized
    polynomial in x; a vanishing top coefficient contributes the root (1 : 0).
    """
    c = np.asarray(coeffs, dtype=complex)
    m = len(c) - 1
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0:
        raise ValueError("the zero form has no isolated roots")
    top = m
    while top > 0 and abs(c[top]) < infinity_tol * scale:
        top -= 1
    roots = [(complex(x), 1.0 + 0j) for x in np.roots(c[top::-1])] if top > 0 else []
    roots += [(1.0 + 0j, 0j)] * (m - top)
    return roots


def _normalize_point(p):
    x, y = p
    v = np.array([x, y], dtype=complex)
    if np.all(np.abs(v.imag) <= IMAG_TOL * np.linalg.norm(v)):
        v = v.real
        return v / np.linalg.norm(v)
    s = np.sqrt(v @ v)
    return v / s if s != 0 else v / np.linalg.norm(v)


def projective_distance(u, v) -> float:
    """Angle between the lines spanned by u and v."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    c = abs(np.vdot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.arccos(min(1.0, c)))


def decompose_binary(T, r: int, tol: float = 1e-8, rtol: float = numrank.RTOL) -> Decomposition:
    """Frame decomposition of a binary form of frame rank r.

    The left kernel vector w of M_r defines a binary form f of degree r
    (substitute ``t_k -> x**k y**(r-k)`` in the stencils and combine with w).
    Its r projective roots are the frame vectors; the weights then solve the
    (d+1) x r linear system by least squares.
    """
    if isinstance(T, SymTensor) and T.n != 2:
        raise ShapeMismatch("decompose_binary needs a binary form (n = 2)")
    t = _as_binary(T)
    d = len(t) - 1
    M = build_Mr(t, r)
    U, s, _ = np.linalg.svd(M)
    info = numrank.rank_from_singular_values(s, M.shape, rtol)
    if not info.confident:
        raise Indeterminate(f"M_{r}: singular-value gap {info.gap_ratio:.3g} below {numrank.MIN_GAP:g}")
    if info.rank >= r - 1:
        raise NotRankDeficient(f"M_{r} has full rank: no funtf of rank {r}")
    if info.rank < r - 2:
        raise SingularPoint(
            f"M_{r} has rank {info.rank} < {r - 2}: left kernel has dimension {r - 1 - info.rank}"
        )
    w = U[:, -1]
    f = w @ template(r).coefficient_matrix()
    roots = binary_form_roots(f)
    cols = [_normalize_point(p) for p in roots]
    for i in range(len(cols)):
        for j in range(i):
            if projective_distance(cols[i], cols[j]) < CLUSTER_TOL:
                raise RepeatedRoots("the kernel form has a repeated root")
    is_complex = any(np.iscomplexobj(c) for c in cols)
    V = np.column_stack([np.asarray(c, dtype=complex if is_complex else float) for c in cols])
    k = np.arange(d + 1)
    A = V[0][None, :] ** k[:, None] * V[1][None, :] ** (d - k)[:, None]
    lam, *_ = np.linalg.lstsq(A, t.astype(A.dtype), rcond=None)
    fit = float(np.max(np.abs(A @ lam - t)))
    scale = max(1.0, float(np.max(np.abs(t))))
    if fit > tol * scale:
        raise DecompositionFailed(f"weight fit residual {fit:.3g} exceeds {tol:g} x scale {scale:.3g}")
    return Decomposition(Frame(V), lam, fit, complex_roots=is_complex, condition=float(np.linalg.cond(A)))


def decompose(T: SymTensor, r: int | None = None, tol: float = 1e-8) -> Decomposition:
    """Binary frame decomposition, detecting the frame rank when r is not given."""
    if r is None:
        _, r = fradeco_rank(T)
        if r is None:
            raise NotRankDeficient("no M_r with 3 <= r <= 9 is rank deficient")
    return decompose_binary(T, r, tol)
