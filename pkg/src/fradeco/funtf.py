"""Finite unit norm tight frames (funtfs).

An n x r matrix V is a funtf when its columns have unit length and
``V @ V.T == (r/n) * I``. This module samples such frames, measures how far
a matrix is from being one, and computes the Pluecker vector of maximal
minors that represents a frame modulo rotations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NotUnitQuaternion, SamplingFailed, ZeroColumn
from .tensor import parse_header

DEFAULT_RETRIES = 100
SAMPLE_TOL = 1e-10


def funtf_residual(V) -> float:
    """Largest violation among the n**2 + r defining equations of a funtf."""
    V = np.asarray(V)
    n, r = V.shape
    gram = V @ V.T - (r / n) * np.eye(n)
    norms = np.sum(V * V, axis=0) - 1.0
    return float(max(np.max(np.abs(gram)), np.max(np.abs(norms)) if r else 0.0))


@dataclass(frozen=True)
class Frame:
    """n x r frame matrix with its funtf residual."""

    V: np.ndarray = field(repr=False)
    residual: float = field(init=False)

    def __post_init__(self):
        V = np.array(self.V)
        if V.dtype != complex:
            V = V.astype(float)
        if V.ndim != 2:
            raise ValueError("frame matrix must be two-dimensional")
        V.setflags(write=False)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "residual", funtf_residual(V))

    @property
    def n(self) -> int:
        return self.V.shape[0]

    @property
    def r(self) -> int:
        return self.V.shape[1]

    @property
    def columns(self) -> list[np.ndarray]:
        return [self.V[:, j] for j in range(self.r)]

    def is_funtf(self, tol: float = SAMPLE_TOL) -> bool:
        return self.residual < tol


def normalize_columns(V) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    norms = np.linalg.norm(V, axis=0)
    if np.any(norms == 0):
        raise ZeroColumn("cannot normalize a zero column")
    return V / norms


# --- funtf Jacobian ---------------------------------------------------------

def funtf_equations(V) -> np.ndarray:
    """The n**2 + r funtf equations at V, flattened (Gram block first)."""
    V = np.asarray(V, dtype=float)
    n, r = V.shape
    gram = V @ V.T - (r / n) * np.eye(n)
    return np.concatenate([gram.ravel(), np.sum(V * V, axis=0) - 1.0])


def funtf_jacobian(V) -> np.ndarray:
    """Jacobian of :func:`funtf_equations` with respect to ``V.ravel()`` (row-major)."""
    V = np.asarray(V, dtype=float)
    n, r = V.shape
    J = np.zeros((n * n + r, n * r))
    # d(VV^T)_{kl} / dV_{ij} = delta_{ki} V_{lj} + delta_{li} V_{kj}
    for k in range(n):
        for l in range(n):
            row = k * n + l
            J[row, k * r:(k + 1) * r] += V[l]
            J[row, l * r:(l + 1) * r] += V[k]
    for j in range(r):
        J[n * n + j, j::r] = 2.0 * V[:, j]
    return J


def funtf_dimension(r: int, n: int) -> float:
    """Dimension ``(n-1)(r - n/2 - 1)`` of the funtf variety for ``r > n >= 2``."""
    return (n - 1) * (r - n / 2 - 1)


# --- planar frames ----------------------------------------------------------

@dataclass(frozen=True)
class PQSystem:
    """``(P~, Q~) = M @ (v_1r, v_2r)`` for the last column of a planar frame."""

    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @property
    def eliminant(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __call__(self, last) -> np.ndarray:
        return self.matrix @ np.asarray(last, dtype=float)


def _pq_parts(columns):
    # N = sum_j (a_j - i b_j) prod_{k != j} (a_k + i b_k) with a symbolic last column:
    # N = A * (a_r + i b_r) + B * (a_r - i b_r), B = prod_{k<r} (a_k + i b_k)
    z = np.array([complex(a, b) for a, b in columns])
    if np.any(z == 0):
        raise ZeroColumn("planar frame points must be nonzero")
    m = len(z)
    B = complex(np.prod(z)) if m else 1.0 + 0j
    A = 0j
    for j in range(m):
        A += np.conj(z[j]) * np.prod(np.delete(z, j))
    return A, B


def multilinear_PQ(columns) -> PQSystem:
    """Coefficients of the multilinear forms P~, Q~ as linear forms in the last column.

    ``columns`` holds the first r - 1 points ``(v_1j, v_2j)`` of a planar
    configuration. P~ and Q~ are the real and imaginary parts of
    ``sum_j (v_1j - i v_2j) prod_{k != j} (v_1k + i v_2k)``.
    """
    A, B = _pq_parts(columns)
    # coefficient of a_r is A + B, of b_r is i(A - B)
    ca = A + B
    cb = 1j * (A - B)
    return PQSystem(ca.real, cb.real, ca.imag, cb.imag)


def multilinear_forms(V) -> tuple[float, float]:
    """Values of (P~, Q~) at a full 2 x r configuration."""
    V = np.asarray(V, dtype=float)
    sys = multilinear_PQ([tuple(c) for c in V[:, :-1].T])
    p, q = sys(V[:, -1])
    return float(p), float(q)


def _unit_circle(rng, size):
    theta = rng.uniform(0.0, 2 * np.pi, size)
    return np.stack([np.cos(theta), np.sin(theta)])


def sample_planar(r: int, seed=None, retries: int = DEFAULT_RETRIES) -> Frame:
    """Random funtf of r vectors in the plane.

    Draws r - 2 uniform points on the circle, solves the quadratic eliminant
    ``m11*m22 = m12*m21`` for the (r-1)-th point and sets the last column to
    ``(m12, -m11)``.
    """
    if r < 3:
        raise ValueError("planar sampling needs r >= 3")
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        head = _unit_circle(rng, r - 2)
        cols = [tuple(c) for c in head.T]

        def elim(p):
            return multilinear_PQ(cols + [p]).eliminant

        # eliminant is a binary quadratic c0*a^2 + c1*a*b + c2*b^2 in the (r-1)-th point
        e10, e01, e11 = elim((1.0, 0.0)), elim((0.0, 1.0)), elim((1.0, 1.0))
        c0, c2 = e10, e01
        c1 = e11 - c0 - c2
        roots = _real_projective_roots_quadratic(c0, c1, c2)
        if not roots:
            continue
        p = roots[rng.integers(len(roots))]
        sys = multilinear_PQ(cols + [p])
        last = np.array([sys.m12, -sys.m11])
        if np.linalg.norm(last) == 0:
            continue
        V = np.column_stack([head, np.array(p) / np.linalg.norm(p), last / np.linalg.norm(last)])
        frame = Frame(V)
        if frame.residual < SAMPLE_TOL:
            return frame
    raise SamplingFailed(f"no planar funtf with r={r} after {retries} attempts")


def _real_projective_roots_quadratic(c0, c1, c2):
    """Real points (a, b) with ``c0 a^2 + c1 a b + c2 b^2 = 0``."""
    scale = max(abs(c0), abs(c1), abs(c2))
    if scale == 0:
        return []
    c0, c1, c2 = c0 / scale, c1 / scale, c2 / scale
    disc = c1 * c1 - 4 * c0 * c2
    if disc < 0:
        return []
    sq = math.sqrt(disc)
    if abs(c0) >= abs(c2):
        # solve for a/b
        return [((-c1 + s * sq) / (2 * c0), 1.0) for s in (1, -1)]
    return [(1.0, (-c1 + s * sq) / (2 * c2)) for s in (1, -1)]


# --- general frames ---------------------------------------------------------

def _random_sphere(rng, n, size):
    X = rng.standard_normal((n, size))
    return X / np.linalg.norm(X, axis=0)


def sample_general(r: int, n: int, seed=None, retries: int = DEFAULT_RETRIES) -> Frame:
    """Random funtf V = (U', W) with W made of r - n random unit columns.

    With ``S = (r/n) I - W W^T`` the square block U solves
    ``U^T S^{-1} U = diag(|u_1|^2, ..., |u_n|^2)`` column by column: column k
    satisfies k - 1 linear conditions against earlier columns and one
    quadric, solved with the quadratic formula after filling the remaining
    free coordinates uniformly in [-1, 1]. Then ``U' = U D^{-1/2}``.
    """
    if not r > n >= 2:
        raise ValueError(f"need r > n >= 2, got r={r}, n={n}")
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        W = _random_sphere(rng, n, r - n)
        S = (r / n) * np.eye(n) - W @ W.T
        try:
            if np.linalg.cond(S) > 1e8:
                continue
            Sinv = np.linalg.inv(S)
        except np.linalg.LinAlgError:
            continue
        M = Sinv - np.eye(n)
        U = _solve_square_block(M, Sinv, rng)
        if U is None:
            continue
        D = np.sum(U * U, axis=0)
        if np.any(D <= 0):
            continue
        V = np.column_stack([U / np.sqrt(D), W])
        frame = Frame(V)
        if frame.residual < SAMPLE_TOL:
            return frame
    raise SamplingFailed(f"no funtf with r={r}, n={n} after {retries} attempts")


def _solve_square_block(M, Sinv, rng):
    n = M.shape[0]
    cols = []
    for k in range(n):
        if cols:
            C = np.array([Sinv @ u for u in cols])
            _, s, vh = np.linalg.svd(C)
            if s[-1] < 1e-10 * s[0]:
                return None
            N = vh[len(cols):].T  # basis of the orthogonal complement, n x (n - k)
        else:
            N = np.eye(n)
        m = N.shape[1]
        if m == 1:
            u = N[:, 0]
            cols.append(u / np.linalg.norm(u))
            continue
        Q = N.T @ M @ N
        c = np.empty(m)
        c[:-1] = rng.uniform(-1.0, 1.0, m - 1)
        # quadric c^T Q c = 0 in the last coordinate: a x^2 + b x + e = 0
        a = Q[-1, -1]
        b = 2.0 * Q[-1, :-1] @ c[:-1]
        e = c[:-1] @ Q[:-1, :-1] @ c[:-1]
        disc = b * b - 4 * a * e
        if disc < 0 or abs(a) < 1e-12:
            return None
        x = (-b + rng.choice((-1.0, 1.0)) * math.sqrt(disc)) / (2 * a)
        c[-1] = x
        u = N @ c
        cols.append(u / np.linalg.norm(u))
    return np.column_stack(cols)


def sample_frame(r: int, n: int, seed=None, retries: int = DEFAULT_RETRIES) -> Frame:
    """Dispatch to :func:`sample_planar` for n = 2 and :func:`sample_general` otherwise."""
    if n == 2:
        return sample_planar(r, seed, retries)
    return sample_general(r, n, seed, retries)


# --- rotations and special frames -------------------------------------------

TETRA_B = np.array([[3, 1, 1, -5],
                    [3, 1, -5, 1],
                    [3, -5, 1, 1]], dtype=float)


def quaternion_rotation(q) -> np.ndarray:
    """Rotation matrix of the unit quaternion ``q = (w, x, y, z)``."""
    w, x, y, z = (float(c) for c in q)
    return np.array([
        [1 - 2 * y * y - 2 * z * z, 2 * x * y - 2 * z * w, 2 * x * z + 2 * y * w],
        [2 * x * y + 2 * z * w, 1 - 2 * x * x - 2 * z * z, 2 * y * z - 2 * x * w],
        [2 * x * z - 2 * y * w, 2 * y * z + 2 * x * w, 1 - 2 * x * x - 2 * y * y],
    ])


def so3_orbit_frame(q, signs=(1, 1, 1, 1)) -> Frame:
    """Point of the 4-vector funtf variety in R^3 given by a rotation and column signs."""
    q = np.asarray(q, dtype=float)
    if q.shape != (4,) or abs(np.linalg.norm(q) - 1.0) > 1e-12:
        raise NotUnitQuaternion(f"expected a unit quaternion, got {q}")
    nu = np.asarray(signs, dtype=float)
    if nu.shape != (4,) or not np.all(np.abs(nu) == 1):
        raise ValueError("signs must be four entries in {-1, +1}")
    return Frame(quaternion_rotation(q) @ TETRA_B * nu / (3 * math.sqrt(3)))


def simplex_frame(n: int) -> Frame:
    """Unit vectors towards the n + 1 vertices of a regular simplex centred at 0."""
    if n < 2:
        raise ValueError("need n >= 2")
    E = np.eye(n + 1) - 1.0 / (n + 1)
    # orthonormal basis of the hyperplane sum(x) = 0 (Helmert basis)
    H = np.zeros((n, n + 1))
    for k in range(1, n + 1):
        H[k - 1, :k] = 1.0
        H[k - 1, k] = -k
        H[k - 1] /= math.sqrt(k * (k + 1))
    return Frame(normalize_columns(H @ E))


def random_rotation(n: int, seed=None) -> np.ndarray:
    """Haar-random element of SO(n)."""
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


# --- Pluecker coordinates ---------------------------------------------------

@dataclass(frozen=True)
class PlueckerVector:
    r: int
    n: int
    p: np.ndarray = field(repr=False)

    @property
    def subsets(self) -> list[tuple[int, ...]]:
        """0-based column subsets in lexicographic order."""
        return list(itertools.combinations(range(self.r), self.n))

    def total_identity_residual(self) -> float:
        """``|sum_I p_I^2 - (r/n)^n|``."""
        return abs(float(np.sum(self.p ** 2)) - (self.r / self.n) ** self.n)

    def incidence_residuals(self) -> np.ndarray:
        """``|sum_{I containing i} p_I^2 - (r/n)^(n-1)|`` for each column i."""
        target = (self.r / self.n) ** (self.n - 1)
        sums = np.zeros(self.r)
        for I, val in zip(self.subsets, self.p):
            for i in I:
                sums[i] += val * val
        return np.abs(sums - target)


def pluecker(V) -> PlueckerVector:
    """All maximal minors of V, subsets in lexicographic order."""
    V = np.asarray(V, dtype=float)
    n, r = V.shape
    if r < n:
        raise ValueError("need r >= n")
    subsets = list(itertools.combinations(range(r), n))
    p = np.array([np.linalg.det(V[:, list(I)]) for I in subsets])
    return PlueckerVector(r, n, p)


def simplex_pluecker_magnitude(n: int) -> float:
    """Common absolute value of the Pluecker coordinates of an (n+1)-vector funtf in R^n."""
    return (n + 1) ** ((n - 1) / 2) / n ** (n / 2)


# --- "frame v1" text format ---------------------------------------------------

def format_frame(frame) -> str:
    V = frame.V if isinstance(frame, Frame) else np.asarray(frame)
    n, r = V.shape
    lines = [f"frame n={n} r={r}"]
    for row in V:
        lines.append(" ".join(repr(float(x)) for x in np.real(row)))
    return "\n".join(lines) + "\n"


def parse_frame_lines(lines: list[str]) -> tuple[Frame, list[str]]:
    """Parse a frame block from the start of ``lines``; return it and the rest."""
    lines = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty frame file")
    hdr = parse_header(lines[0], "frame", ("n", "r"))
    n, r = hdr["n"], hdr["r"]
    if len(lines) < n + 1:
        raise ValueError(f"frame needs {n} rows")
    rows = []
    for ln in lines[1:n + 1]:
        vals = [float(x) for x in ln.split()]
        if len(vals) != r:
            raise ValueError(f"frame row {ln!r} does not have {r} entries")
        rows.append(vals)
    return Frame(np.array(rows)), lines[n + 1:]


def parse_frame(text: str) -> Frame:
    return parse_frame_lines(text.splitlines())[0]


def write_frame(path, frame) -> None:
    Path(path).write_text(format_frame(frame))


def read_frame(path) -> Frame:
    return parse_frame(Path(path).read_text())
