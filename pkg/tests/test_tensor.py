from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fradeco.errors import ShapeMismatch
from fradeco.funtf import TETRA_B
from fradeco.tensor import (
    SymTensor,
    catalecticant,
    evaluate,
    gradient,
    index_basis,
    parse_symtensor,
    format_symtensor,
    read_symtensor,
    synthesize,
    veronese,
    write_symtensor,
)
from fradeco.numrank import numerical_rank


def opening_quartic():
    return synthesize(TETRA_B.astype(int).astype(object), np.array([Fraction(1, 12)] * 4, dtype=object), 4)


def test_index_basis_small_cases():
    assert index_basis(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert index_basis(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(index_basis(3, 4)) == 15


@pytest.mark.parametrize("n,d", [(1, 3), (2, 5), (3, 4), (4, 3), (5, 2)])
def test_index_basis_length_and_order(n, d):
    b = index_basis(n, d)
    assert len(b) == comb(n + d - 1, d)
    assert all(sum(a) == d for a in b)
    assert b == sorted(b, reverse=True)


def test_synthesize_opening_quartic_exact():
    T = opening_quartic()
    assert T[(4, 0, 0)] == 59
    assert T[(3, 1, 0)] == -4
    assert T[(2, 2, 0)] == 11
    assert T[(2, 1, 1)] == 8
    # full polynomial: 59 x^4, -16 x^3y, 66 x^2y^2, 96 x^2yz and permutations
    coeffs = dict(zip(T.basis, T.polynomial_coefficients()))
    assert coeffs[(0, 4, 0)] == 59 and coeffs[(1, 0, 3)] == -16
    assert coeffs[(0, 2, 2)] == 66 and coeffs[(1, 1, 2)] == 96


def test_synthesize_float_matches_exact(tetra_frame):
    T = synthesize(tetra_frame, np.full(4, 729 / 12), 4)
    exact = np.array(opening_quartic().coords, dtype=float)
    assert np.max(np.abs(T.coords - exact)) < 1e-12


def test_synthesize_trivial_cases(rng):
    V = rng.standard_normal((3, 4))
    assert not np.any(synthesize(V, np.zeros(4), 5).coords)
    T = synthesize(np.eye(2), np.ones(2), 3)
    assert list(T.coords) == [1, 0, 0, 1]


def test_synthesize_shape_errors():
    with pytest.raises(ShapeMismatch):
        synthesize(np.eye(2), np.ones(3), 3)
    with pytest.raises(ShapeMismatch):
        synthesize(np.ones(3), np.ones(3), 3)


def test_evaluate_examples():
    assert evaluate(opening_quartic().astype(float), [1, 1, 1]) == pytest.approx(567)
    assert evaluate(SymTensor.zeros(3, 4), [0.3, -2, 1]) == 0
    T = SymTensor.from_dict(3, 5, {(5, 0, 0): 1.0})
    assert evaluate(T, [1, 0, 0]) == 1


def test_gradient_monomials():
    T = SymTensor.from_dict(2, 3, {(3, 0): 1.0, (0, 3): 1.0})
    assert np.allclose(gradient(T, [1, 2]), [3, 12])


@settings(max_examples=100, deadline=None)
@given(n=st.integers(1, 4), d=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_gradient_euler_and_finite_differences(n, d, seed):
    rng = np.random.default_rng(seed)
    T = SymTensor(n, d, rng.standard_normal(comb(n + d - 1, d)))
    x = rng.standard_normal(n)
    g = gradient(T, x)
    assert x @ g == pytest.approx(d * evaluate(T, x), rel=1e-9, abs=1e-9)
    h = 1e-6
    fd = np.array([(evaluate(T, x + h * e) - evaluate(T, x - h * e)) / (2 * h) for e in np.eye(n)])
    assert np.allclose(fd, g, rtol=1e-6, atol=1e-6 * max(1.0, np.max(np.abs(g))))


def test_from_polynomial_roundtrip():
    T = opening_quartic()
    S = SymTensor.from_polynomial(3, 4, dict(zip(T.basis, T.polynomial_coefficients())))
    assert list(S.coords) == list(T.coords)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 4), r=st.integers(1, 6), d=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_synthesize_properties(n, r, d, seed):
    rng = np.random.default_rng(seed)
    V = rng.standard_normal((n, r))
    lam = rng.standard_normal(r)
    T = synthesize(V, lam, d)
    # power-sum definition, coordinate by coordinate
    direct = [sum(lam[j] * np.prod(V[:, j] ** np.array(a)) for j in range(r)) for a in T.basis]
    assert np.allclose(T.coords, direct, rtol=1e-12, atol=1e-12 * max(1.0, np.max(np.abs(direct))))
    perm = rng.permutation(r)
    P = synthesize(V[:, perm], lam[perm], d)
    assert np.allclose(P.coords, T.coords, rtol=1e-12, atol=1e-12 * max(1.0, np.max(np.abs(T.coords))))
    assert np.array_equal(synthesize(V, 2.0 * lam, d).coords, 2.0 * T.coords)


def test_catalecticant_shapes_and_transpose(rng):
    T = SymTensor(3, 5, rng.standard_normal(21))
    for k in range(1, 5):
        C = catalecticant(T, k)
        assert C.shape == (comb(k + 2, k), comb(5 - k + 2, 5 - k))
        assert np.array_equal(C, catalecticant(T, 5 - k).T)
    assert not np.any(catalecticant(SymTensor.zeros(3, 4), 2))


@pytest.mark.parametrize("r", [1, 2, 4, 7])
def test_catalecticant_rank_bound(rng, r):
    n, d = 3, 6
    T = synthesize(rng.standard_normal((n, r)), rng.standard_normal(r), d)
    for k in range(1, d):
        C = catalecticant(T, k)
        assert numerical_rank(C).rank <= min(r, comb(n + k - 1, k))
    assert numerical_rank(catalecticant(synthesize(rng.standard_normal((n, 1)), [1.0], 4), 2)).rank == 1


def test_veronese_is_rank_one_synthesis(rng):
    v = rng.standard_normal(3)
    assert np.allclose(veronese(v, 4), synthesize(v.reshape(3, 1), [1.0], 4).coords)


def test_binary_coordinate_convention():
    T = SymTensor.from_binary([1.0, 2.0, 3.0])
    assert T[(0, 2)] == 1.0 and T[(2, 0)] == 3.0
    assert list(T.binary_coords()) == [1.0, 2.0, 3.0]


def test_symtensor_text_roundtrip(tmp_path, rng):
    T = SymTensor(3, 4, rng.standard_normal(15))
    p = tmp_path / "t.txt"
    write_symtensor(p, T)
    assert np.array_equal(read_symtensor(p).coords, T.coords)
    text = "symtensor n=2 d=3\n# comment\n3 0 1.5\n"
    S = parse_symtensor(text)
    assert list(S.coords) == [1.5, 0, 0, 0]
    assert format_symtensor(S).startswith("symtensor n=2 d=3\n3 0 1.5")


@pytest.mark.parametrize("bad", [
    "", "frame n=2 r=3\n", "symtensor n=2\n", "symtensor n=2 d=3\n2 0 1.0\n", "symtensor n=2 d=3\n3 0\n",
])
def test_symtensor_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_symtensor(bad)


def test_coords_length_checked():
    with pytest.raises(ShapeMismatch):
        SymTensor(3, 4, np.zeros(14))
