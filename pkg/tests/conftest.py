import math

import numpy as np
import pytest

from fradeco.funtf import TETRA_B


def match_columns(A, B, tol=1e-6):
    """True if the columns of A equal those of B up to permutation and sign (angular tol)."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        return False
    A = A / np.linalg.norm(A, axis=0)
    B = B / np.linalg.norm(B, axis=0)
    used = set()
    for a in A.T:
        for k, b in enumerate(B.T):
            if k in used:
                continue
            # chord distance up to sign; equals the angle to first order
            if min(np.linalg.norm(a - b), np.linalg.norm(a + b)) < tol:
                used.add(k)
                break
        else:
            return False
    return True


@pytest.fixture
def tetra_frame():
    """Unit-column tetrahedral frame: the 4-vector funtf in R^3 of the opening quartic."""
    return TETRA_B / (3 * math.sqrt(3))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
