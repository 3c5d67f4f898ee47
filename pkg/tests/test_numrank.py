import numpy as np
import pytest

from fradeco.errors import Indeterminate
from fradeco.numrank import confident_rank, null_space, numerical_rank


def test_rank_of_product_matrix(rng):
    M = rng.standard_normal((8, 3)) @ rng.standard_normal((3, 6))
    info = numerical_rank(M)
    assert info.rank == 3
    assert info.confident
    assert info.nullity == 3
    assert info.left_nullity == 5


def test_full_rank_has_infinite_gap(rng):
    info = numerical_rank(rng.standard_normal((4, 4)))
    assert info.rank == 4
    assert info.gap_ratio == np.inf


def test_zero_matrix():
    info = numerical_rank(np.zeros((3, 3)))
    assert info.rank == 0
    assert info.confident


def test_unclear_gap_is_indeterminate():
    M = np.diag([1.0, 1e-7, 1e-9])  # 1e-9 is dropped, but the gap is only 100
    assert not numerical_rank(M).confident
    with pytest.raises(Indeterminate):
        confident_rank(M)
    with pytest.raises(Indeterminate):
        null_space(M)


def test_null_space_is_kernel(rng):
    M = rng.standard_normal((4, 2)) @ rng.standard_normal((2, 5))
    K = null_space(M)
    assert K.shape == (5, 3)
    assert np.max(np.abs(M @ K)) < 1e-12
    assert np.allclose(K.T @ K, np.eye(3))
