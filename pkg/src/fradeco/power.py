"""Tensor eigenvectors via the normalized gradient map.

Iterating ``x -> grad T(x) / |grad T(x)|`` on the sphere (up to sign)
converges to the attracting fixed points, the robust eigenvectors of T.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .binary import binary_form_roots, projective_distance
from .errors import NonConvergence, ShapeMismatch, ZeroGradient
from .tensor import SymTensor, evaluate, gradient

log = logging.getLogger(__name__)

DEFAULT_MAXIT = 10_000
DEFAULT_TOL = 1e-12
CLUSTER_TOL = 1e-6
FD_STEP = 1e-6


def canonical_sign(x, eps: float = 1e-9) -> np.ndarray:
    """Flip x so that its first coordinate of magnitude above eps is positive."""
    x = np.asarray(x, dtype=float)
    for xi in x:
        if abs(xi) > eps:
            return x if xi > 0 else -x
    return x


@dataclass(frozen=True)
class EigenPoint:
    x: np.ndarray
    eigenvalue_proxy: float
    attracting: bool
    basin_count: int = 1
    iterations: int = 0

    def parallel_residual(self, T: SymTensor) -> float:
        """``|g - (x.g) x| / |g|`` for ``g = grad T(x)``."""
        g = gradient(T, self.x)
        return float(np.linalg.norm(g - (self.x @ g) * self.x) / np.linalg.norm(g))


def _step(T, x):
    g = gradient(T, x)
    nrm = np.linalg.norm(g)
    if not np.isfinite(nrm) or nrm <= 1e-300:
        raise ZeroGradient(f"gradient vanishes at {x}")
    return g / nrm


def _map_jacobian(T, x, h=FD_STEP):
    """Central-difference Jacobian of the sign-adjusted normalized gradient map at x."""
    n = len(x)
    s = np.sign(_step(T, x) @ x) or 1.0
    J = np.empty((n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        J[:, i] = s * (_step(T, x + e) - _step(T, x - e)) / (2 * h)
    return J


def is_attracting(T: SymTensor, x) -> bool:
    """Spectral radius below one of the map's Jacobian on the tangent space of the sphere."""
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    n = len(x)
    if n == 1:
        return True
    # orthonormal basis of the complement of x
    Q, _ = np.linalg.qr(np.column_stack([x, np.eye(n)]))
    B = Q[:, 1:n]
    J = B.T @ _map_jacobian(T, x) @ B
    return bool(np.max(np.abs(np.linalg.eigvals(J))) < 1.0)


def power_iterate(T: SymTensor, x0, maxit: int = DEFAULT_MAXIT, tol: float = DEFAULT_TOL,
                  classify: bool = True) -> EigenPoint:
    """Iterate the normalized gradient map from x0 until it settles up to sign."""
    x = np.asarray(x0, dtype=float)
    if x.shape != (T.n,):
        raise ShapeMismatch(f"start vector must have length {T.n}")
    x = x / np.linalg.norm(x)
    for it in range(1, maxit + 1):
        y = _step(T, x)
        if min(np.linalg.norm(y - x), np.linalg.norm(y + x)) < tol:
            y = canonical_sign(y)
            return EigenPoint(
                y,
                evaluate(T, y),
                is_attracting(T, y) if classify else False,
                iterations=it,
            )
        x = y
    raise NonConvergence(f"no convergence within {maxit} iterations")


def robust_eigenvectors(T: SymTensor, trials: int | None = None, seed=None,
                        tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT,
                        cluster_tol: float = CLUSTER_TOL) -> list[EigenPoint]:
    """Cluster the limits of the power iteration from random starts.

    Each cluster carries the number of starts that converged to it and
    whether the fixed point is attracting. Starts that fail to converge are
    skipped.
    """
    if trials is None:
        trials = 100 * T.n
    rng = np.random.default_rng(seed)
    reps: list[np.ndarray] = []
    counts: list[int] = []
    failures = 0
    for _ in range(trials):
        x0 = rng.standard_normal(T.n)
        try:
            pt = power_iterate(T, x0, maxit=maxit, tol=tol, classify=False)
        except (NonConvergence, ZeroGradient):
            failures += 1
            continue
        for k, rep in enumerate(reps):
            if projective_distance(rep, pt.x) < cluster_tol:
                counts[k] += 1
                break
        else:
            reps.append(pt.x)
            counts.append(1)
    if failures:
        log.info("%d of %d starts did not converge", failures, trials)
    out = [
        EigenPoint(x, evaluate(T, x), is_attracting(T, x), c)
        for x, c in zip(reps, counts)
    ]
    out.sort(key=lambda p: -p.basin_count)
    return out


@dataclass(frozen=True)
class BinaryEigenForm:
    coefficients: np.ndarray  # coefficient k multiplies x**k y**(d-k)
    real_roots: list[tuple[np.ndarray, int]]


def eigen_discriminant_binary(T: SymTensor, imag_tol: float = 1e-8,
                              cluster_tol: float = 1e-5) -> BinaryEigenForm:
    """The form ``y dT/dx - x dT/dy`` (degree d) and its real projective roots with multiplicity."""
    if T.n != 2:
        raise ShapeMismatch("eigen_discriminant_binary needs n = 2")
    d = T.d
    from math import comb

    t = T.binary_coords().astype(float)
    p = np.array([comb(d, k) * t[k] for k in range(d + 1)])  # T = sum p_k x^k y^(d-k)
    c = np.zeros(d + 1)
    for k in range(d + 1):
        if k >= 1:
            c[k - 1] += k * p[k]  # y * dT/dx
        if k <= d - 1:
            c[k + 1] -= (d - k) * p[k]  # x * dT/dy
    if not np.any(c):
        # every point is an eigenvector (T is a power of x^2 + y^2)
        return BinaryEigenForm(c, [])
    roots = binary_form_roots(c)
    real = []
    for x, y in roots:
        v = np.array([x, y])
        nrm = np.linalg.norm(v)
        if np.max(np.abs(v.imag)) > imag_tol * max(1.0, nrm):
            continue
        u = canonical_sign(v.real / np.linalg.norm(v.real))
        for k, (rep, mult) in enumerate(real):
            if projective_distance(rep, u) < cluster_tol:
                real[k] = (rep, mult + 1)
                break
        else:
            real.append((u, 1))
    return BinaryEigenForm(c, real)
