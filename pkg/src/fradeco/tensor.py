"""Symmetric tensors stored by exponent vectors.

A symmetric tensor T of order d on n variables is kept as its distinct
entries ``t_a``, one per exponent vector ``a`` with ``|a| = d``. The
associated polynomial is ``sum_a multinomial(d; a) * t_a * x**a``, so the
entries of a frame decomposition are plain power sums,
``t_a = sum_j lambda_j * prod_i v_ij**a_i``.

Exponent vectors are ordered lexicographically, descending in the first
variable: ``(d,0,..,0), (d-1,1,0,..), ...``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import ShapeMismatch


@lru_cache(maxsize=None)
def _basis(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in _basis(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def index_basis(n: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of length n summing to d, in lexicographic order."""
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    return list(_basis(n, d))


@lru_cache(maxsize=None)
def exponent_matrix(n: int, d: int) -> np.ndarray:
    """``index_basis(n, d)`` as an integer array of shape (N, n)."""
    A = np.array(_basis(n, d), dtype=np.int64).reshape(-1, n)
    A.setflags(write=False)
    return A


@lru_cache(maxsize=None)
def position(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(_basis(n, d))}


def multinomial(a) -> int:
    out = math.factorial(sum(a))
    for ai in a:
        out //= math.factorial(ai)
    return out


@lru_cache(maxsize=None)
def multinomials(n: int, d: int) -> np.ndarray:
    m = np.array([multinomial(a) for a in _basis(n, d)], dtype=np.int64)
    m.setflags(write=False)
    return m


def num_coords(n: int, d: int) -> int:
    return math.comb(n + d - 1, d)


@dataclass(frozen=True)
class SymTensor:
    """Symmetric tensor in t-coordinates.

    ``coords`` may be a float array or an object array of exact numbers
    (``int``/``Fraction``); the latter is kept as is so that rational
    computations stay exact.
    """

    n: int
    d: int
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coords)
        if c.dtype != object:
            c = c.astype(np.result_type(c.dtype, np.float64))
        c = c.copy()
        if c.shape != (num_coords(self.n, self.d),):
            raise ShapeMismatch(
                f"expected {num_coords(self.n, self.d)} coordinates for n={self.n}, "
                f"d={self.d}, got shape {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @classmethod
    def zeros(cls, n: int, d: int) -> "SymTensor":
        return cls(n, d, np.zeros(num_coords(n, d)))

    @classmethod
    def from_dict(cls, n: int, d: int, entries: dict) -> "SymTensor":
        """Build from ``{exponent_vector: t_a}``; missing entries are zero."""
        pos = position(n, d)
        exact = any(not isinstance(v, (float, np.floating)) for v in entries.values())
        c = np.zeros(num_coords(n, d), dtype=object if exact else float)
        if exact:
            c[:] = 0
        for a, v in entries.items():
            a = tuple(int(x) for x in a)
            if a not in pos:
                raise ShapeMismatch(f"exponent {a} is not of length {n} and degree {d}")
            c[pos[a]] = v
        return cls(n, d, c)

    @classmethod
    def from_polynomial(cls, n: int, d: int, coefficients: dict) -> "SymTensor":
        """Build from polynomial coefficients ``{a: coefficient of x**a}``.

        Each coefficient is divided by its multinomial factor; integer input
        yields exact ``Fraction`` coordinates.
        """
        from fractions import Fraction

        entries = {}
        for a, c in coefficients.items():
            m = multinomial(a)
            if isinstance(c, (int, Fraction)):
                entries[tuple(a)] = Fraction(c, m)
            else:
                entries[tuple(a)] = c / m
        return cls.from_dict(n, d, entries)

    @classmethod
    def from_binary(cls, t) -> "SymTensor":
        """Binary form from ``t_0..t_d`` where ``t_i`` sits at exponent ``(i, d - i)``."""
        t = np.asarray(t)
        return cls(2, len(t) - 1, t[::-1])

    @property
    def basis(self) -> list[tuple[int, ...]]:
        return index_basis(self.n, self.d)

    def __getitem__(self, a) -> float:
        return self.coords[position(self.n, self.d)[tuple(a)]]

    def binary_coords(self) -> np.ndarray:
        """``t_0..t_d`` of a binary form (``t_i`` at exponent ``(i, d - i)``)."""
        if self.n != 2:
            raise ShapeMismatch("binary coordinates need n = 2")
        return self.coords[::-1].copy()

    def polynomial_coefficients(self) -> np.ndarray:
        return self.coords * multinomials(self.n, self.d)

    def astype(self, dtype) -> "SymTensor":
        return SymTensor(self.n, self.d, np.asarray(self.coords, dtype=dtype))

    def scaled(self, c) -> "SymTensor":
        return SymTensor(self.n, self.d, self.coords * c)

    def norm(self) -> float:
        return float(np.linalg.norm(np.asarray(self.coords, dtype=float)))

    def normalized(self) -> "SymTensor":
        s = self.norm()
        return self if s == 0 else self.scaled(1.0 / s)

    def __add__(self, other: "SymTensor") -> "SymTensor":
        if (self.n, self.d) != (other.n, other.d):
            raise ShapeMismatch("tensor shapes differ")
        return SymTensor(self.n, self.d, self.coords + other.coords)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        if (self.n, self.d) != (other.n, other.d):
            raise ShapeMismatch("tensor shapes differ")
        return SymTensor(self.n, self.d, self.coords - other.coords)


def _monomials(V, A):
    """``out[a, j] = prod_i V[i, j] ** A[a, i]``; works for float and object arrays."""
    V = np.asarray(V)
    if V.dtype == object:
        out = np.empty((A.shape[0], V.shape[1]), dtype=object)
        for k, a in enumerate(A):
            for j in range(V.shape[1]):
                p = 1
                for i, e in enumerate(a):
                    if e:
                        p = p * V[i, j] ** int(e)
                out[k, j] = p
        return out
    # integer powers; avoids 0**0 issues since numpy defines it as 1
    return np.prod(V[None, :, :] ** A[:, :, None], axis=1)


def synthesize(V, weights, d: int) -> SymTensor:
    """The tensor ``sum_j weights[j] * v_j^{(x)d}`` for the columns ``v_j`` of V."""
    V = np.asarray(V)
    if V.ndim != 2:
        raise ShapeMismatch("V must be an n x r matrix")
    n, r = V.shape
    w = np.asarray(weights)
    if w.shape != (r,):
        raise ShapeMismatch(f"expected {r} weights, got shape {w.shape}")
    if d < 1:
        raise ValueError("order d must be >= 1")
    A = exponent_matrix(n, d)
    if V.dtype == object or w.dtype == object:
        mons = _monomials(np.asarray(V, dtype=object), A)
        coords = np.empty(A.shape[0], dtype=object)
        for k in range(A.shape[0]):
            s = 0
            for j in range(r):
                s = s + w[j] * mons[k, j]
            coords[k] = s
        return SymTensor(n, d, coords)
    return SymTensor(n, d, _monomials(V, A) @ w)


def veronese(v, d: int) -> np.ndarray:
    """t-coordinates of the rank-one tensor ``v^{(x)d}``."""
    v = np.asarray(v)
    return _monomials(v.reshape(-1, 1), exponent_matrix(v.shape[0], d))[:, 0]


def evaluate(T: SymTensor, x) -> float:
    """Value of the polynomial of T at x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (T.n,):
        raise ShapeMismatch(f"point must have length {T.n}")
    mons = np.prod(x[None, :] ** exponent_matrix(T.n, T.d), axis=1)
    return float(np.dot(multinomials(T.n, T.d) * np.asarray(T.coords, dtype=float), mons))


@lru_cache(maxsize=None)
def _gradient_tables(n: int, d: int):
    # dT/dx_i = d * sum_{|b| = d-1} multinomial(d-1; b) * t_{b + e_i} * x**b
    B = exponent_matrix(n, d - 1)
    pos = position(n, d)
    idx = np.array([[pos[tuple(b[k] + (k == i) for k in range(n))] for b in B] for i in range(n)])
    return B, idx, multinomials(n, d - 1)


def gradient(T: SymTensor, x) -> np.ndarray:
    """Exact gradient of the polynomial of T at x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (T.n,):
        raise ShapeMismatch(f"point must have length {T.n}")
    B, idx, m = _gradient_tables(T.n, T.d)
    mons = m * np.prod(x[None, :] ** B, axis=1)
    t = np.asarray(T.coords, dtype=float)
    return T.d * (t[idx] @ mons)


def catalecticant(T: SymTensor, k: int) -> np.ndarray:
    """Matrix with rows indexed by degree-k and columns by degree-(d-k) exponents, entry t_{b+c}."""
    if not 1 <= k <= T.d - 1:
        raise ValueError(f"need 1 <= k <= d - 1, got k={k}, d={T.d}")
    rows = exponent_matrix(T.n, k)
    cols = exponent_matrix(T.n, T.d - k)
    pos = position(T.n, T.d)
    idx = np.array([[pos[tuple(b + c)] for c in cols] for b in rows])
    return T.coords[idx]


# --- "symtensor v1" text format -------------------------------------------

def format_symtensor(T: SymTensor) -> str:
    lines = [f"symtensor n={T.n} d={T.d}"]
    for a, v in zip(T.basis, T.coords):
        if v != 0:
            lines.append(" ".join(str(e) for e in a) + " " + repr(float(v)))
    return "\n".join(lines) + "\n"


def parse_header(line: str, kind: str, keys: tuple[str, ...]) -> dict[str, int]:
    parts = line.split()
    if not parts or parts[0] != kind:
        raise ValueError(f"expected a '{kind}' header, got {line!r}")
    vals = {}
    for p in parts[1:]:
        key, _, val = p.partition("=")
        vals[key] = int(val)
    missing = [k for k in keys if k not in vals]
    if missing:
        raise ValueError(f"header {line!r} lacks {', '.join(missing)}")
    return vals


def parse_symtensor(text: str) -> SymTensor:
    # comments and the CLI's trailing "result:" line are not coordinates
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith(("#", "result:"))]
    if not lines:
        raise ValueError("empty symtensor file")
    hdr = parse_header(lines[0], "symtensor", ("n", "d"))
    n, d = hdr["n"], hdr["d"]
    entries = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n + 1:
            raise ValueError(f"malformed coordinate line {ln!r}")
        a = tuple(int(p) for p in parts[:n])
        if sum(a) != d or min(a) < 0:
            raise ValueError(f"exponent {a} does not have degree {d}")
        entries[a] = float(parts[n])
    T = SymTensor.zeros(n, d)
    c = np.array(T.coords)
    pos = position(n, d)
    for a, v in entries.items():
        c[pos[a]] = v
    return SymTensor(n, d, c)


def write_symtensor(path, T: SymTensor) -> None:
    Path(path).write_text(format_symtensor(T))


def read_symtensor(path) -> SymTensor:
    return parse_symtensor(Path(path).read_text())
