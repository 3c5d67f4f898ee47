"""Numerical exploration of fradeco varieties.

Tangent-space dimension via the parametrization ``(V, lambda) -> sum lambda_j v_j^d``,
the numerical Hilbert function of the variety, and the conic-based search
for frame decompositions of ternary quartics of Waring rank five.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.optimize import least_squares

from . import numrank
from .decomposition import Decomposition
from .errors import BudgetExceeded, FullRank, Indeterminate, NotFound, RankTooLow, ShapeMismatch
from .funtf import Frame, funtf_jacobian, funtf_residual, sample_frame
from .tensor import SymTensor, _monomials, catalecticant, exponent_matrix, num_coords, synthesize

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000
MAX_SAMPLES = 30_000


def expected_dim(r: int, n: int, d: int) -> int:
    """Upper bound on the (projective) dimension of the fradeco variety."""
    if not r > n >= 2:
        raise ValueError(f"need r > n >= 2, got r={r}, n={n}")
    if n == 2:
        return min(2 * r - 3, d)
    bound = (n - 1) * (r - n) + (n - 1) * (n - 2) // 2 + r - 1
    return min(bound, comb(n + d - 1, d) - 1)


def synthesis_jacobian(V, weights, d: int) -> np.ndarray:
    """Jacobian of ``synthesize`` in the variables ``(V.ravel(), weights)``."""
    V = np.asarray(V, dtype=float)
    w = np.asarray(weights, dtype=float)
    n, r = V.shape
    A = exponent_matrix(n, d)
    J = np.zeros((A.shape[0], n * r + r))
    J[:, n * r:] = _monomials(V, A)
    for i in range(n):
        Ai = A.copy()
        Ai[:, i] = np.maximum(Ai[:, i] - 1, 0)
        block = A[:, i:i + 1] * _monomials(V, Ai) * w[None, :]
        J[:, i * r:(i + 1) * r] = block
    return J


def _seeds(seed, k: int) -> list[int]:
    return [int(s) for s in np.random.default_rng(seed).integers(0, 2**63 - 1, size=k)]


def _weights(rng, r: int) -> np.ndarray:
    while True:
        lam = rng.uniform(-1.0, 1.0, r)
        if np.linalg.norm(lam) >= 0.1:
            return lam


def tangent_dim(r: int, n: int, d: int, seed=None, samples: int = 3) -> int:
    """Projective dimension of the variety from the rank of its parametrized tangent space."""
    if not r > n >= 2:
        raise ValueError(f"need r > n >= 2, got r={r}, n={n}")
    best = -1
    for s in _seeds(seed, samples):
        rng = np.random.default_rng(s)
        V = sample_frame(r, n, seed=rng.integers(2**63 - 1)).V
        lam = _weights(rng, r)
        K = numrank.null_space(funtf_jacobian(V), what="funtf Jacobian")
        m = K.shape[1]
        D = np.zeros((n * r + r, m + r))
        D[:n * r, :m] = K
        D[n * r:, m:] = np.eye(r)
        info = numrank.confident_rank(synthesis_jacobian(V, lam, d) @ D, what="tangent image")
        best = max(best, info.rank)
    return best - 1


@dataclass(frozen=True)
class HilbertReport:
    r: int
    n: int
    d: int
    e: int
    ambient_dim: int
    samples: int
    singular_values: np.ndarray
    kernel_dim: int
    gap_ratio: float

    @property
    def confident(self) -> bool:
        return self.gap_ratio >= numrank.MIN_GAP


def ambient_dim(n: int, d: int, e: int) -> int:
    """Number of degree-e monomials in the t-coordinates."""
    return comb(num_coords(n, d) + e - 1, e)


def _sample_row(args):
    r, n, d, idx, s = args
    rng = np.random.default_rng(s)
    V = sample_frame(r, n, seed=rng.integers(2**63 - 1)).V
    t = synthesize(V, _weights(rng, r), d).coords
    t = t / np.linalg.norm(t)
    return np.prod(t[idx], axis=1)


def hilbert_value(r: int, n: int, d: int, e: int, nsamples: int | None = None, seed=None,
                  budget: int = DEFAULT_BUDGET, threads: int = 1,
                  strict: bool = True) -> HilbertReport:
    """Dimension of the degree-e part of the ideal, from monomials evaluated at samples.

    With ``strict`` an unclear singular-value gap raises :class:`Indeterminate`;
    otherwise the report is returned and ``confident`` tells the caller.
    """
    if e < 1:
        raise ValueError("degree e must be >= 1")
    amb = ambient_dim(n, d, e)
    if amb > budget:
        raise BudgetExceeded(f"{amb} monomials exceed the budget of {budget} columns")
    if nsamples is None:
        nsamples = min(2 * amb, MAX_SAMPLES)
    idx = np.array(list(itertools.combinations_with_replacement(range(num_coords(n, d)), e)))
    jobs = [(r, n, d, idx, s) for s in _seeds(seed, nsamples)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            rows = list(ex.map(_sample_row, jobs))
    else:
        rows = [_sample_row(j) for j in jobs]
    M = np.array(rows)
    M /= np.linalg.norm(M, axis=0, keepdims=True)
    info = numrank.numerical_rank(M)
    gap = info.gap_ratio
    if info.rank >= nsamples and info.rank < amb:
        # every row is independent: too few samples to see the kernel at all
        gap = 1.0
    rep = HilbertReport(r, n, d, e, amb, nsamples, info.singular_values, amb - info.rank, gap)
    if strict and not rep.confident:
        raise Indeterminate(
            f"Hilbert matrix: gap ratio {rep.gap_ratio:.3g} below {numrank.MIN_GAP:g}"
        )
    return rep


def format_hilbert_report(rep: HilbertReport) -> str:
    sv = " ".join(f"{x:.6e}" for x in rep.singular_values)
    return (
        f"hilbert v1 r={rep.r} n={rep.n} d={rep.d} e={rep.e}\n"
        f"ambient_dim: {rep.ambient_dim}\n"
        f"samples: {rep.samples}\n"
        f"kernel_dim: {rep.kernel_dim}\n"
        f"gap_ratio: {rep.gap_ratio:.6e}\n"
        f"singular_values: {sv}\n"
    )


# --- ternary quartics of Waring rank five ----------------------------------

def _check_ternary_quartic(T: SymTensor):
    if (T.n, T.d) != (3, 4):
        raise ShapeMismatch(f"need a ternary quartic, got n={T.n}, d={T.d}")


def kernel_conic(T: SymTensor) -> np.ndarray:
    """Kernel of the 6 x 6 catalecticant as a conic in the basis u^2, uv, uw, v^2, vw, w^2.

    The vector has unit norm and its largest-magnitude coefficient is positive.
    """
    _check_ternary_quartic(T)
    C = np.asarray(catalecticant(T, 2), dtype=float)
    _, s, vh = np.linalg.svd(C)
    info = numrank.rank_from_singular_values(s, C.shape)
    if not info.confident:
        raise Indeterminate(f"catalecticant: gap ratio {info.gap_ratio:.3g} below {numrank.MIN_GAP:g}")
    if info.rank == 6:
        raise FullRank("catalecticant has rank 6: Waring rank exceeds 5")
    if info.rank < 5:
        raise RankTooLow(f"catalecticant has rank {info.rank} < 5: the conic is not unique")
    q = vh[-1]
    k = int(np.argmax(np.abs(q)))
    return q if q[k] > 0 else -q


def conic_matrix(q) -> np.ndarray:
    """Symmetric 3 x 3 matrix Q with ``x^T Q x`` equal to the conic q."""
    a, b, c, d, e, f = q
    return np.array([[a, b / 2, c / 2], [b / 2, d, e / 2], [c / 2, e / 2, f]])


def _conic_parametrization(q):
    """Map angles to unit points on the real conic ``x^T Q x = 0``."""
    ev, R = np.linalg.eigh(conic_matrix(q))
    scale = np.max(np.abs(ev))
    if np.min(np.abs(ev)) < 1e-10 * scale:
        raise NotFound("the kernel conic is degenerate")
    pos = ev > 0
    if pos.all() or (~pos).all():
        raise NotFound("the kernel conic has no real points")
    # the eigenvalue whose sign is in the minority is the axis of the cone
    odd = int(np.flatnonzero(pos)[0]) if pos.sum() == 1 else int(np.flatnonzero(~pos)[0])
    a, b = [i for i in range(3) if i != odd]
    sq = np.sqrt(np.abs(ev))

    def point(theta):
        y = np.empty((3,) + np.shape(theta))
        y[odd] = 1.0 / sq[odd]
        y[a] = np.cos(theta) / sq[a]
        y[b] = np.sin(theta) / sq[b]
        x = R @ y
        return x / np.linalg.norm(x, axis=0)

    return point


def _solve_weights(V, t, d):
    A = _monomials(V, exponent_matrix(V.shape[0], d))
    lam, *_ = np.linalg.lstsq(A, t, rcond=None)
    return lam, A @ lam - t


def waring_frame_search(T: SymTensor, restarts: int = 200, seed=None,
                        tol: float = 1e-8) -> Decomposition:
    """Look for five points on the kernel conic forming a funtf that decomposes T.

    Each restart draws five random angles and runs a local least-squares
    solve of the funtf equations together with the weight-fit residual of
    the unit-normalized tensor, the weights being eliminated linearly.
    """
    _check_ternary_quartic(T)
    point = _conic_parametrization(kernel_conic(T))
    t = np.asarray(T.coords, dtype=float)
    scale = np.linalg.norm(t)
    tn = t / scale
    r, n = 5, 3
    iu = np.triu_indices(n)

    def residuals(theta):
        V = point(theta)
        gram = (V @ V.T - (r / n) * np.eye(n))[iu]
        _, fit = _solve_weights(V, tn, 4)
        return np.concatenate([gram, fit])

    rng = np.random.default_rng(seed)
    best = np.inf
    for k in range(restarts):
        sol = least_squares(residuals, rng.uniform(0, 2 * np.pi, r), method="lm",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        V = point(sol.x)
        lam, fit = _solve_weights(V, tn, 4)
        combined = float(np.hypot(funtf_residual(V), np.max(np.abs(fit))))
        best = min(best, combined)
        if combined < tol:
            log.info("waring_frame_search: converged on restart %d", k + 1)
            lam = lam * scale
            abs_fit = float(np.max(np.abs(_monomials(V, exponent_matrix(3, 4)) @ lam - t)))
            return Decomposition(Frame(V), lam, abs_fit)
    raise NotFound(f"no decomposition within {restarts} restarts (best residual {best:.3g})")
