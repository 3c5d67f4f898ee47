"""Explicit polynomials in the t-coordinates that vanish on small fradeco varieties.

Each equation is stored as a list of ``(coefficient, monomial)`` terms,
where a monomial is a tuple of exponent vectors (one per factor), or as a
determinantal recipe. Integer-valued input is evaluated exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import ShapeMismatch, UnknownEquation
from .tensor import SymTensor, catalecticant


def _t(s: str) -> tuple[int, ...]:
    return tuple(int(c) for c in s)


def _mono(*names: str) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(_t(s) for s in names))


def s3_orbit(monomial) -> set:
    """Orbit of a monomial under simultaneous permutation of the three exponent positions."""
    out = set()
    for p in itertools.permutations(range(3)):
        out.add(tuple(sorted(tuple(a[i] for i in p) for a in monomial)))
    return out


def expand_brackets(spec) -> list[tuple[int, tuple]]:
    """Expand ``(coefficient, monomial, orbit_size)`` triples into plain terms.

    Raises ``ValueError`` when an orbit does not have the declared size.
    """
    terms = []
    for coef, mono, size in spec:
        orbit = s3_orbit(mono)
        if len(orbit) != size:
            raise ValueError(f"orbit of {mono} has size {len(orbit)}, not {size}")
        terms.extend((coef, m) for m in sorted(orbit))
    return terms


# quadric vanishing on the fradeco variety of 4 vectors in R^3, quartics
QUADRIC_434 = [
    (8, _mono("013", "013")), (-8, _mono("004", "022")),
    (8, _mono("031", "031")), (-8, _mono("022", "040")),
    (8, _mono("211", "211")), (-8, _mono("202", "220")),
    (18, _mono("112", "112")), (-18, _mono("103", "121")),
    (18, _mono("121", "121")), (-18, _mono("112", "130")),
    (1, _mono("004", "040")), (19, _mono("022", "022")), (-20, _mono("013", "031")),
    (1, _mono("004", "220")), (1, _mono("022", "202")), (-2, _mono("013", "211")),
    (1, _mono("040", "202")), (1, _mono("022", "220")), (-2, _mono("031", "211")),
]

QUADRIC_435_SHIFT = [
    (c, tuple(sorted((a[0], a[1], a[2] + 1) for a in m))) for c, m in QUADRIC_434
]

CUBIC_534_SPEC = [
    (46, _mono("022", "202", "220"), 1),
    (73, _mono("112", "121", "211"), 1),
    (-4, _mono("004", "040", "400"), 1),
    (19, _mono("013", "130", "301"), 2),
    (-50, _mono("004", "112", "112"), 3),
    (-22, _mono("004", "220", "220"), 3),
    (-18, _mono("022", "211", "211"), 3),
    (50, _mono("004", "022", "202"), 3),
    (26, _mono("004", "130", "310"), 3),
    (100, _mono("013", "103", "112"), 3),
    (-53, _mono("013", "121", "310"), 3),
    (5, _mono("004", "022", "400"), 6),
    (-50, _mono("013", "013", "202"), 6),
    (-5, _mono("013", "013", "220"), 6),
    (45, _mono("004", "031", "211"), 6),
    (-40, _mono("022", "202", "202"), 6),
    (5, _mono("004", "022", "220"), 6),
    (40, _mono("022", "112", "112"), 6),
    (-5, _mono("004", "130", "130"), 6),
    (-45, _mono("004", "121", "121"), 6),
    (-10, _mono("004", "112", "130"), 6),
    (-45, _mono("013", "022", "211"), 6),
    (35, _mono("013", "031", "202"), 6),
    (10, _mono("013", "103", "130"), 6),
    (10, _mono("013", "112", "121"), 6),
    (-80, _mono("013", "112", "301"), 6),
    (80, _mono("013", "202", "211"), 6),
    (8, _mono("013", "211", "220"), 6),
]

CUBIC_534 = expand_brackets(CUBIC_534_SPEC)

# columns of the 3 x 6 matrix C for ternary cubics: x1^2, x1x2, x2^2, x1x3, x2x3, x3^2
_C433_COLUMNS = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
# C_123 + 2 C_145 + 2 C_345 - C_126 - C_236 - 4 C_456 (1-based column triples)
_C433_TERMS = [(1, (1, 2, 3)), (2, (1, 4, 5)), (2, (3, 4, 5)),
               (-1, (1, 2, 6)), (-1, (2, 3, 6)), (-4, (4, 5, 6))]


def _det3(m) -> object:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _exact_det(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    return det


def cubic433_matrix(T: SymTensor) -> list[list]:
    """The 3 x 6 matrix C of a ternary cubic: row i holds t_{e_i + c} over the columns c."""
    rows = []
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        rows.append([T[tuple(a + b for a, b in zip(e, c))] for c in _C433_COLUMNS])
    return rows


def _eval_cubic433(T: SymTensor):
    C = cubic433_matrix(T)
    total = 0
    for coef, cols in _C433_TERMS:
        sub = [[C[i][c - 1] for c in cols] for i in range(3)]
        total = total + coef * _det3(sub)
    return total


def _eval_terms(terms, T: SymTensor):
    total = 0
    for coef, mono in terms:
        p = coef
        for a in mono:
            p = p * T[a]
        total = total + p
    return total


def _eval_catdet(T: SymTensor):
    C = catalecticant(T, 2)
    if C.dtype == object:
        return _exact_det(C.tolist())
    return float(np.linalg.det(C))


@dataclass(frozen=True)
class KnownEquation:
    name: str
    n: int
    d: int
    degree: int
    evaluator: Callable[[SymTensor], object]
    description: str = ""

    def __call__(self, T: SymTensor):
        if (T.n, T.d) != (self.n, self.d):
            raise ShapeMismatch(
                f"{self.name} needs n={self.n}, d={self.d}; got n={T.n}, d={T.d}"
            )
        return self.evaluator(_exactify(T))


def _exactify(T: SymTensor) -> SymTensor:
    """Integer-valued float tensors become exact integer tensors."""
    c = T.coords
    if c.dtype == object:
        return T
    if np.all(np.isfinite(c)) and np.all(c == np.round(c)) and np.max(np.abs(c), initial=0) < 2**52:
        return SymTensor(T.n, T.d, np.array([int(x) for x in c], dtype=object))
    return T


KNOWN_EQUATIONS: dict[str, KnownEquation] = {
    "cubic_433": KnownEquation(
        "cubic_433", 3, 3, 3, _eval_cubic433,
        "cubic in the 3 x 3 minors of the 3 x 6 matrix of a ternary cubic"),
    "quadric_434": KnownEquation(
        "quadric_434", 3, 4, 2, lambda T: _eval_terms(QUADRIC_434, T),
        "quadric vanishing on 4-vector frame decomposable ternary quartics"),
    "quadric_435_shift": KnownEquation(
        "quadric_435_shift", 3, 5, 2, lambda T: _eval_terms(QUADRIC_435_SHIFT, T),
        "quadric_434 with every t_ijk replaced by t_i,j,k+1"),
    "cubic_534": KnownEquation(
        "cubic_534", 3, 4, 3, lambda T: _eval_terms(CUBIC_534, T),
        "the 128-term cubic vanishing on 5-vector frame decomposable ternary quartics"),
    "catalecticant_det_534": KnownEquation(
        "catalecticant_det_534", 3, 4, 6, _eval_catdet,
        "determinant of the 6 x 6 catalecticant (Waring rank <= 5)"),
}


def get_equation(name: str) -> KnownEquation:
    try:
        return KNOWN_EQUATIONS[name]
    except KeyError:
        raise UnknownEquation(
            f"unknown equation {name!r}; choose from {', '.join(sorted(KNOWN_EQUATIONS))}"
        ) from None


def eval_known_equation(name: str, T: SymTensor):
    """Evaluate a named equation at T; exact (int or Fraction) for integer-valued input."""
    return get_equation(name)(T)
