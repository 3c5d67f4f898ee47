"""Small named tensors used in examples, tests and the CLI."""
from __future__ import annotations

import numpy as np

from .funtf import TETRA_B
from .tensor import SymTensor, exponent_matrix, synthesize

# ternary quartic of Waring rank five; coefficients of x^a in lex order
WARING_QUARTIC_COEFFS = (
    467, 152, 1448, 660, -1488, 4020, 536, -1992, 2352, 944, 227, -1000, 2148, -1960, 1267,
)

WARING_QUARTIC_CATALECTICANT = np.array([
    [467, 38, 362, 110, -124, 670],
    [38, 110, -124, 134, -166, 196],
    [362, -124, 670, -166, 196, 236],
    [110, 134, -166, 227, -250, 358],
    [-124, -166, 196, -250, 358, -490],
    [670, 196, 236, 358, -490, 1267],
])

# its kernel conic, in the basis u^2, uv, uw, v^2, vw, w^2
WARING_QUARTIC_CONIC = (14, -1, -2, -4, -11, -10)


def waring_quartic() -> SymTensor:
    """The ternary quartic with exact rational coordinates."""
    A = exponent_matrix(3, 4)
    return SymTensor.from_polynomial(3, 4, {tuple(int(x) for x in a): c
                                            for a, c in zip(A, WARING_QUARTIC_COEFFS)})


def waring_quartic_frame() -> np.ndarray:
    """Unnormalized columns of a known decomposition: the quartic is the sum of their fourth powers."""
    s = np.sqrt(3.0)
    return np.array([
        [-1, 2, 2, 1 + 2 * s, -1 + 2 * s],
        [2, 2, -1, -2 + s, 2 + s],
        [0, 1, -2, 5, -5],
    ])


def tetrahedral_quartic() -> SymTensor:
    """The opening quartic: (1/12) times the sum of fourth powers of the integer tetrahedral vectors, exact."""
    from fractions import Fraction

    return synthesize(TETRA_B.astype(int).astype(object), np.array([Fraction(1, 12)] * 4, dtype=object), 4)


def binary_example_35() -> SymTensor:
    """Binary octic with t = (3, 0, 2, 0, 2, 0, 2, 0, 3): frame rank 4."""
    return SymTensor.from_binary(np.array([3, 0, 2, 0, 2, 0, 2, 0, 3], dtype=float))
