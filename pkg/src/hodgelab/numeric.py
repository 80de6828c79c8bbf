"""Dense complex tensor helpers, Hermitian eigenanalysis and differentiation.

Holomorphic derivatives come from Cauchy-integral trapezoid sums on
circles (spectrally accurate); mixed derivatives of real-analytic fields
come from central differences with Richardson extrapolation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, EvaluationError, PrecisionError, SymmetryError

__all__ = [
    "Jet1D",
    "check_symmetry",
    "herm_eigen",
    "contour_derivs",
    "contour_jet",
    "richardson",
    "expm_nilpotent",
    "wirtinger_gradient",
    "wirtinger_hessian",
    "fd_mixed_hessian",
    "multi_indices",
]


# ---------------------------------------------------------------------------
# multi-index bookkeeping

def multi_indices(n: int, order: int):
    """Sorted index tuples ``(i1 <= i2 <= ...)`` for all orders ``0..order``."""
    out = []
    for k in range(order + 1):
        out.extend(itertools.combinations_with_replacement(range(n), k))
    return out


def indices_to_exponent(idx, n):
    alpha = [0] * n
    for i in idx:
        alpha[i] += 1
    return tuple(alpha)


def exponent_to_indices(alpha):
    return tuple(i for i, a in enumerate(alpha) for _ in range(a))


# ---------------------------------------------------------------------------
# symmetry and eigenvalues

def check_symmetry(arr, kind: str, rtol: float = 1e-12, raise_error: bool = True) -> float:
    """Return the relative residual of a declared tensor symmetry.

    ``kind`` is one of ``"totally-symmetric"``, ``"hermitian"`` or
    ``"antisymmetric"``. Hermitian means a square matrix equal to its
    conjugate transpose (so its diagonal is real).
    """
    a = np.asarray(arr)
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if kind == "totally-symmetric":
        res = 0.0
        for perm in itertools.permutations(range(a.ndim)):
            res = max(res, float(np.max(np.abs(a - np.transpose(a, perm)), initial=0.0)))
    elif kind == "hermitian":
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise SymmetryError(f"hermitian tensor must be square, got shape {a.shape}")
        res = float(np.max(np.abs(a - a.conj().T), initial=0.0))
    elif kind == "antisymmetric":
        res = float(np.max(np.abs(a + a.T), initial=0.0))
    else:
        raise ValueError(f"unknown symmetry kind {kind!r}")
    res /= scale
    if raise_error and res > rtol:
        raise SymmetryError(f"{kind} symmetry violated: relative residual {res:.3e}")
    return res


def herm_eigen(H, tol: float = 1e-12) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises
    ------
    SymmetryError
        If ``H`` is not Hermitian to relative tolerance ``tol``.

    Examples
    --------
    >>> herm_eigen([[2, 1j], [-1j, 2]])
    array([1., 3.])
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    check_symmetry(H, "hermitian", rtol=tol)
    return np.linalg.eigvalsh(0.5 * (H + H.conj().T))


# ---------------------------------------------------------------------------
# Cauchy contour differentiation

@dataclass(frozen=True)
class Jet1D:
    """Derivatives ``d^k f(center)`` along one variable, ``k = 0..order``."""

    center: complex
    order: int
    coeffs: np.ndarray
    error_estimate: np.ndarray

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coeffs must have order+1 entries")
        if not np.all(np.isfinite(self.error_estimate)):
            raise ValueError("error estimate must be finite")


def _sample(f, points):
    vals = np.asarray([np.atleast_1d(np.asarray(f(p), dtype=complex)) for p in points])
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("non-finite sample on the contour")
    return vals


def contour_derivs(
    f: Callable,
    center,
    var_index: int = 0,
    order: int = 4,
    radius: float = 0.1,
    nodes: int = 64,
    analyticity_radius: float | None = None,
) -> Jet1D:
    """Derivatives of ``f`` in one variable by the Cauchy integral formula.

    ``f`` maps a complex vector (or scalar) to a complex vector. The
    circle ``|t_i - center_i| = radius`` is sampled at ``nodes`` points
    and the Taylor coefficients are read off with an FFT. The error
    estimate is the change when only every other node is used.
    """
    if nodes < 4 * (order + 1):
        raise ValueError(f"need at least {4 * (order + 1)} nodes for order {order}")
    if nodes % 2:
        raise ValueError("node count must be even")
    if radius <= 0:
        raise DomainError("contour radius must be positive")
    if analyticity_radius is not None and radius >= analyticity_radius:
        raise DomainError(f"radius {radius} exceeds analyticity radius {analyticity_radius}")
    scalar_input = np.ndim(center) == 0
    c = np.atleast_1d(np.asarray(center, dtype=complex))
    w = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    points = []
    for wk in w:
        p = c.copy()
        p[var_index] += radius * wk
        points.append(p[0] if scalar_input else p)
    vals = _sample(f, points)

    def taylor(v):
        m = v.shape[0]
        coef = np.fft.fft(v, axis=0)[: order + 1] / m
        fact = np.array([math.factorial(k) / radius**k for k in range(order + 1)])
        return coef * fact[:, None]

    fine = taylor(vals)
    coarse = taylor(vals[::2])
    err = np.max(np.abs(fine - coarse), axis=1)
    return Jet1D(center=complex(c[var_index]), order=order, coeffs=fine, error_estimate=err)


def contour_jet(
    f: Callable,
    center,
    order: int = 4,
    radius: float = 0.1,
    nodes: int | None = None,
    analyticity_radius: float | None = None,
):
    """All mixed holomorphic derivatives up to ``order`` at ``center``.

    Nested Cauchy integrals over the torus ``|t_i - c_i| = radius`` (one
    circle per variable), evaluated as a multidimensional FFT.

    Returns
    -------
    derivs : dict
        Sorted index tuple -> derivative vector.
    errors : dict
        Same keys, node-halving error estimates.
    """
    c = np.atleast_1d(np.asarray(center, dtype=complex))
    n = c.size
    if nodes is None:
        nodes = 64 if n <= 2 else 32
    if nodes < 4 * (order + 1) or nodes % 2:
        raise ValueError(f"need an even node count of at least {4 * (order + 1)}")
    if analyticity_radius is not None and radius >= analyticity_radius:
        raise DomainError(f"radius {radius} exceeds analyticity radius {analyticity_radius}")
    w = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    grid = itertools.product(range(nodes), repeat=n)
    points = [c + w[list(k)] for k in grid]
    vals = _sample(f, points)
    m = vals.shape[1]
    vals = vals.reshape((nodes,) * n + (m,))

    def coefficients(v):
        return np.fft.fftn(v, axes=tuple(range(n))) / v[..., 0].size

    fine = coefficients(vals)
    coarse = coefficients(vals[(slice(None, None, 2),) * n])
    derivs, errors = {}, {}
    for idx in multi_indices(n, order):
        alpha = indices_to_exponent(idx, n)
        scale = math.prod(math.factorial(a) for a in alpha) / radius ** len(idx)
        derivs[idx] = fine[alpha] * scale
        errors[idx] = float(np.max(np.abs(fine[alpha] - coarse[alpha]))) * scale
    return derivs, errors


# ---------------------------------------------------------------------------
# Richardson extrapolation and finite differences

def expm_nilpotent(X) -> np.ndarray:
    """``exp(X)`` for nilpotent ``X`` by its terminating power series."""
    X = np.asarray(X)
    d = X.shape[0]
    out = np.eye(d, dtype=complex)
    term = np.eye(d, dtype=complex)
    for j in range(1, d + 1):
        term = term @ X / j
        out = out + term
    return out


def richardson(values, ratio: float, power: int = 2):
    """Extrapolate ``values[k] = T(h0 / ratio**k)`` to ``h -> 0``.

    The error of ``T`` must expand in powers ``h**power, h**(2*power), ...``.
    Returns ``(best, error_estimate)``, the error estimate being the change
    between the last two diagonal entries.
    """
    table = [list(values)]
    while len(table[-1]) > 1:
        j = len(table)
        prev = table[-1]
        fac = ratio ** (power * j)
        table.append([(fac * prev[k + 1] - prev[k]) / (fac - 1) for k in range(len(prev) - 1)])
    best = table[-1][0]
    if len(table) > 1:
        err = np.max(np.abs(np.asarray(best) - np.asarray(table[-2][-1])))
    else:
        err = np.inf
    return best, float(err)


def _real_directions(n):
    """Unit real directions in C^n: x_1..x_n then y_1..y_n."""
    eye = np.eye(n, dtype=complex)
    return np.concatenate([eye, 1j * eye])


def _real_gradient(field, center, h):
    dirs = _real_directions(center.size)
    return np.array([(np.asarray(field(center + h * u)) - np.asarray(field(center - h * u))) / (2 * h)
                     for u in dirs])


def _real_hessian(field, center, h):
    dirs = _real_directions(center.size)
    m = len(dirs)
    f0 = np.asarray(field(center))
    out = np.empty((m, m) + f0.shape, dtype=np.result_type(f0, float))
    for a in range(m):
        u = dirs[a]
        out[a, a] = (np.asarray(field(center + 2 * h * u)) - 2 * f0
                     + np.asarray(field(center - 2 * h * u))) / (4 * h * h)
        for b in range(a + 1, m):
            v = dirs[b]
            val = (np.asarray(field(center + h * (u + v))) - np.asarray(field(center + h * (u - v)))
                   - np.asarray(field(center - h * (u - v))) + np.asarray(field(center - h * (u + v)))) / (4 * h * h)
            out[a, b] = out[b, a] = val
    return out


def _check(value, err, tol):
    if tol is not None and err > tol:
        raise PrecisionError(f"finite-difference error estimate {err:.2e} exceeds {tol:.2e}",
                             best=value, error=err)


def wirtinger_gradient(field: Callable, center, step: float = 1e-2, levels: int = 3,
                       tol: float | None = None):
    """``(d f, dbar f)`` of a field on C^n by Richardson-extrapolated central differences."""
    c = np.atleast_1d(np.asarray(center, dtype=complex))
    n = c.size
    ests = []
    for k in range(levels):
        g = _real_gradient(field, c, step / 2**k)
        gx, gy = g[:n], g[n:]
        ests.append(np.stack([0.5 * (gx - 1j * gy), 0.5 * (gx + 1j * gy)]))
    best, err = richardson(ests, 2.0, 2) if levels > 1 else (ests[0], np.inf)
    _check(best, err, tol)
    return best[0], best[1], err


def wirtinger_hessian(field: Callable, center, step: float = 1e-2, levels: int = 3,
                      tol: float | None = None):
    """Mixed derivatives ``M[k, l] = d_k dbar_l field`` at ``center``.

    ``field`` may be scalar- or array-valued (real or complex); the result
    has shape ``(n, n) + field_shape``. Returns ``(M, error_estimate)``.
    """
    c = np.atleast_1d(np.asarray(center, dtype=complex))
    n = c.size
    ests = []
    for k in range(levels):
        H = _real_hessian(field, c, step / 2**k)
        xx, xy = H[:n, :n], H[:n, n:]
        yx, yy = H[n:, :n], H[n:, n:]
        ests.append(0.25 * (xx + yy + 1j * (xy - yx)))
    best, err = richardson(ests, 2.0, 2) if levels > 1 else (ests[0], np.inf)
    _check(best, err, tol)
    return best, err


def fd_mixed_hessian(field: Callable, center, step: float = 1e-2, levels: int = 3,
                     tol: float | None = None):
    """Hermitian matrix ``d_i dbar_j field`` of a real scalar field.

    Examples
    --------
    >>> M, err = fd_mixed_hessian(lambda t: abs(t[0])**2, [0.3 + 0.1j])
    >>> round(M[0, 0].real, 12)
    1.0
    """
    M, err = wirtinger_hessian(lambda t: float(np.real(field(t))), center, step, levels, tol=None)
    M = 0.5 * (M + M.conj().T)
    _check(M, err, tol)
    return M, err
