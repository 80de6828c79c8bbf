import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgelab.errors import DomainError, EvaluationError, PrecisionError, SymmetryError
from hodgelab.numeric import (Jet1D, check_symmetry, contour_derivs, contour_jet, expm_nilpotent,
                              fd_mixed_hessian, herm_eigen, multi_indices, richardson,
                              wirtinger_gradient, wirtinger_hessian)


def test_multi_indices_counts():
    idx = multi_indices(2, 3)
    assert idx[0] == ()
    # 1 + 2 + 3 + 4 sorted tuples in two variables
    assert len(idx) == 10
    assert all(tuple(sorted(i)) == i for i in idx)


# herm_eigen --------------------------------------------------------------

def test_herm_eigen_examples():
    assert np.allclose(herm_eigen(np.eye(2)), [1, 1])
    assert np.allclose(herm_eigen([[0.75]]), [0.75])
    assert np.allclose(herm_eigen([[2, 1j], [-1j, 2]]), [1, 3], atol=1e-14)


def test_herm_eigen_rejects_non_hermitian():
    with pytest.raises(SymmetryError):
        herm_eigen([[1, 1], [0, 1]])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_herm_eigen_unitary_invariance(seed, n):
    r = np.random.default_rng(seed)
    X = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
    H = X + X.conj().T
    U = scipy.linalg.qr(r.normal(size=(n, n)) + 1j * r.normal(size=(n, n)))[0]
    lam = herm_eigen(H)
    assert np.all(np.diff(lam) >= 0)
    H2 = U @ H @ U.conj().T
    assert np.allclose(herm_eigen(0.5 * (H2 + H2.conj().T)), lam, atol=1e-10 * np.abs(H).max())
    w, V = np.linalg.eigh(H)
    assert np.linalg.norm(H @ V - V * w) <= 1e-10 * np.linalg.norm(H)


def test_check_symmetry_kinds():
    r = np.random.default_rng(1)
    T = r.normal(size=(3, 3, 3))
    S = sum(np.transpose(T, p) for p in [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0),
                                          (2, 0, 1)])
    assert check_symmetry(S, "totally-symmetric") <= 1e-12
    with pytest.raises(SymmetryError):
        check_symmetry(T, "totally-symmetric")
    assert check_symmetry(np.array([[0, 1], [-1, 0]]), "antisymmetric") == 0
    # a hermitian matrix must have a real diagonal
    with pytest.raises(SymmetryError):
        check_symmetry(np.array([[1j]]), "hermitian")
    with pytest.raises(ValueError):
        check_symmetry(S, "skew")


# contour differentiation ---------------------------------------------------

def test_contour_polynomial_exact():
    jet = contour_derivs(lambda t: t**3, 0.0, order=3, radius=0.3, nodes=16)
    assert abs(jet.coeffs[3][0] - 6) <= 1e-12
    assert np.all(np.abs(jet.coeffs[:3, 0]) <= 1e-12)


def test_contour_exponential():
    jet = contour_derivs(np.exp, 0.0, order=4, radius=0.5, nodes=32)
    assert np.max(np.abs(jet.coeffs[:, 0] - 1)) <= 1e-12
    assert np.all(jet.error_estimate <= 1e-8)


def test_contour_geometric_series():
    jet = contour_derivs(lambda t: 1 / (1 - t), 0.0, order=2, radius=0.5, nodes=64)
    assert np.allclose(jet.coeffs[:, 0], [1, 1, 2], atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=5), st.floats(0.05, 2.0))
def test_contour_exact_on_polynomials(coeffs, radius):
    p = np.polynomial.Polynomial(coeffs)
    k = len(coeffs) - 1
    jet = contour_derivs(lambda t: p(t), 0.2, order=k, radius=radius, nodes=4 * (k + 1))
    expected = np.array([p.deriv(j)(0.2) if j else p(0.2) for j in range(k + 1)])
    # exact up to rounding of the samples, which the Cauchy weights scale by j!/r^j
    fmax = max(1.0, float(np.max(np.abs(p(0.2 + radius * np.exp(2j * np.pi * np.arange(64) / 64))))))
    tol = np.array([1e-12 * fmax * math.factorial(j) / radius**j for j in range(k + 1)])
    assert np.all(np.abs(jet.coeffs[:, 0] - expected) <= tol)


def test_contour_errors():
    with pytest.raises(DomainError):
        contour_derivs(np.exp, 0.0, radius=0.5, analyticity_radius=0.4)
    with pytest.raises(EvaluationError):
        contour_derivs(lambda t: np.nan if t.real < 0.05 else t, 0.1, order=0, radius=0.1, nodes=4)
    with pytest.raises(ValueError):
        contour_derivs(np.exp, 0.0, order=4, nodes=8)


def test_contour_jet_mixed():
    # f = exp(t0) * t1^2: d0 d1 d1 f = 2 exp(t0)
    f = lambda t: np.array([np.exp(t[0]) * t[1] ** 2])
    derivs, errors = contour_jet(f, [0.1, 0.5], order=3, radius=0.2)
    assert abs(derivs[(0, 1, 1)][0] - 2 * np.exp(0.1)) <= 1e-12
    assert abs(derivs[(1,)][0] - np.exp(0.1)) <= 1e-12
    assert max(errors.values()) <= 1e-8


def test_jet1d_invariants():
    with pytest.raises(ValueError):
        Jet1D(0j, 2, np.zeros((2, 1)), np.zeros(3))
    with pytest.raises(ValueError):
        Jet1D(0j, 1, np.zeros((2, 1)), np.array([0.0, np.inf]))


# finite differences --------------------------------------------------------

def test_richardson_removes_even_powers():
    T = lambda h: 1.0 + 0.3 * h**2 - 0.2 * h**4
    best, err = richardson([T(0.1), T(0.05), T(0.025)], 2.0, 2)
    assert abs(best - 1.0) <= 1e-14
    assert err <= 1e-6


def test_fd_mixed_hessian_examples():
    M, _ = fd_mixed_hessian(lambda t: abs(t[0]) ** 2, [0.7 - 0.2j])
    assert abs(M[0, 0] - 1) <= 1e-10
    M, _ = fd_mixed_hessian(lambda t: -3 * np.log(t[0].imag), [1j])
    assert abs(M[0, 0] - 0.75) <= 1e-8
    M, _ = fd_mixed_hessian(lambda t: -np.log(8 * t[0].imag ** 3), [1j])
    assert abs(M[0, 0] - 0.75) <= 1e-8


def test_fd_mixed_hessian_hermitian_2d():
    # |t0|^2 + 2 Re(t0 conj t1) * i-part; d_i dbar_j = [[1, c], [conj c, 1]]
    c = 0.3 + 0.4j
    field = lambda t: (abs(t[0]) ** 2 + abs(t[1]) ** 2 + 2 * np.real(c * t[1] * np.conj(t[0])))
    M, _ = fd_mixed_hessian(field, [0.1j, 0.2])
    assert np.allclose(M, [[1, np.conj(c)], [c, 1]], atol=1e-10)
    assert check_symmetry(M, "hermitian") == 0


def test_fd_precision_error_carries_best():
    with pytest.raises(PrecisionError) as exc:
        fd_mixed_hessian(lambda t: np.exp(40 * t[0].real), [0.0], step=0.1, levels=2, tol=1e-12)
    assert exc.value.best is not None


def test_wirtinger_gradient_and_hessian():
    field = lambda t: t[0] ** 2 * np.conj(t[0])
    z = 0.4 + 0.3j
    d, dbar, _ = wirtinger_gradient(field, [z])
    assert abs(d[0] - 2 * z * np.conj(z)) <= 1e-10
    assert abs(dbar[0] - z**2) <= 1e-10
    M, _ = wirtinger_hessian(field, [z])
    assert abs(M[0, 0] - 2 * z) <= 1e-10


def test_expm_nilpotent_matches_scipy():
    N = np.diag([1.0, 2.0, 3.0], -1)
    X = (0.3 - 1.1j) * N
    assert np.allclose(expm_nilpotent(X), scipy.linalg.expm(X), atol=1e-14)
    assert math.isclose(expm_nilpotent(np.zeros((2, 2)))[0, 0].real, 1.0)
