"""Order-four Picard-Fuchs operators at a point of maximally unipotent monodromy.

An operator is stored as ``L = sum_p z^p P_p(theta)`` with ``theta = z d/dz``
and ``P_p`` given by ascending coefficient lists. At a MUM point
``P_0(theta) = c theta^4`` and the Frobenius method produces the
log-ladder

    w_j = sum_m log(z)^m / m! * f_{j-m}(z),   f_j(0) = delta_{j0}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import PrecisionError, StructureError
from .orbit import NilpotentOrbitModel
from .symplectic import SymplecticForm

# eps-series are truncated after eps^3: four log levels
_DEPTH = 4


@dataclass(frozen=True)
class PFOperator:
    """``L = sum_p z^p P_p(theta)``; ``theta_polys[p]`` lists P_p's coefficients."""

    theta_polys: tuple

    def __init__(self, theta_polys):
        polys = tuple(tuple(c for c in p) for p in theta_polys)
        if not polys:
            raise StructureError("operator has no terms")
        object.__setattr__(self, "theta_polys", polys)

    @property
    def order(self) -> int:
        return max(len(p) for p in self.theta_polys) - 1

    def is_mum(self) -> bool:
        p0 = self.theta_polys[0]
        return (len(p0) == 5 and all(c == 0 for c in p0[:4]) and p0[4] != 0
                and self.order == 4)

    def singular_radius(self) -> float:
        """Distance from 0 to the nearest other singular point."""
        lead = [p[4] if len(p) > 4 else 0 for p in self.theta_polys]
        roots = np.roots(np.asarray(lead[::-1], dtype=complex)) if len(lead) > 1 else []
        roots = [abs(r) for r in roots if abs(r) > 1e-300]
        return min(roots) if roots else math.inf


# ---------------------------------------------------------------------------
# truncated eps-series with generic scalars (float, complex or Fraction)

def _shifted(poly, k):
    """Coefficients of P(k + eps) up to eps^3."""
    out = [0] * _DEPTH
    for d, c in enumerate(poly):
        if c == 0:
            continue
        for j in range(min(d, _DEPTH - 1) + 1):
            out[j] += c * math.comb(d, j) * k ** (d - j)
    return out


def _mul(a, b):
    out = [0] * _DEPTH
    for i in range(_DEPTH):
        for j in range(_DEPTH - i):
            out[i + j] += a[i] * b[j]
    return out


def _div(a, b):
    out = [0] * _DEPTH
    for k in range(_DEPTH):
        s = a[k] - sum(out[j] * b[k - j] for j in range(k))
        out[k] = s / b[0]
    return out


@dataclass(frozen=True)
class FrobeniusBasis:
    """Frobenius solutions of a MUM operator.

    ``coeffs[j][k]`` is the z^k coefficient of the log-free series f_j.
    ``N`` is the integer lower shift: in the rescaled basis
    ``w_j / (2 pi i)^j`` the period vector is ``exp(log z N / 2 pi i) A(z)``.
    """

    operator: PFOperator
    coeffs: tuple
    N: np.ndarray

    @property
    def truncation(self) -> int:
        return len(self.coeffs[0]) - 1

    def series(self, z) -> np.ndarray:
        """Values of f_0..f_3 at ``z``."""
        z = complex(z)
        return np.array([sum(complex(c) * z**k for k, c in enumerate(row)) for row in self.coeffs])

    def solutions(self, z) -> np.ndarray:
        """Classical ladder w_0 .. w_3 (principal branch of log)."""
        f = self.series(z)
        L = np.log(complex(z))
        return np.array([sum(L**m / math.factorial(m) * f[j - m] for m in range(j + 1))
                         for j in range(_DEPTH)])

    def rescaled_series(self) -> np.ndarray:
        """Coefficients of f_j / (2 pi i)^j, shape (truncation + 1, 4)."""
        c = np.array([[complex(x) for x in row] for row in self.coeffs])
        scale = np.array([(2j * np.pi) ** (-j) for j in range(_DEPTH)])
        return (c * scale[:, None]).T

    def truncation_error(self, radius: float) -> float:
        """Size of the last retained term at ``radius`` relative to the leading one."""
        last = max(abs(complex(row[-1])) for row in self.coeffs)
        return last * radius ** self.truncation


def pf_frobenius_mum(op: PFOperator, truncation: int = 60, exact: bool = False,
                     radius: float | None = None, tol: float = 1e-12) -> FrobeniusBasis:
    """Frobenius basis and log-monodromy at a MUM point.

    With ``exact=True`` the recurrence runs in rational arithmetic (the
    operator coefficients must then be integers or Fractions). When
    ``radius`` is given, a truncation tail above ``tol`` there raises
    ``PrecisionError``.
    """
    if not op.is_mum():
        raise StructureError("indicial polynomial is not c*theta^4: not a MUM point")
    conv = Fraction if exact else complex
    polys = [[conv(c) for c in p] for p in op.theta_polys]
    one = conv(1)
    zero = conv(0)
    a = [[one, zero, zero, zero]]
    for k in range(1, truncation + 1):
        acc = [zero] * _DEPTH
        for p in range(1, min(k, len(polys) - 1) + 1):
            term = _mul(_shifted(polys[p], k - p), a[k - p])
            acc = [x + y for x, y in zip(acc, term)]
        a.append(_div([-x for x in acc], _shifted(polys[0], k)))
    coeffs = tuple(tuple(a[k][j] for k in range(truncation + 1)) for j in range(_DEPTH))
    N = np.diag(np.ones(_DEPTH - 1, dtype=np.int64), -1)
    basis = FrobeniusBasis(operator=op, coeffs=coeffs, N=N)
    if radius is not None:
        err = basis.truncation_error(radius)
        if err > tol:
            raise PrecisionError(f"{truncation} terms leave a tail ~{err:.1e} at radius {radius}",
                                 best=basis, error=err)
    return basis


def frobenius_residual(basis: FrobeniusBasis) -> float:
    """Largest coefficient of ``L`` applied to the eps-deformed series, z^1 .. z^K.

    Zero (exactly, with Fraction coefficients) when the recurrence is right;
    measured relative to the largest term entering each coefficient.
    """
    op = basis.operator
    K = basis.truncation
    a = [[basis.coeffs[j][k] for j in range(_DEPTH)] for k in range(K + 1)]
    worst = 0
    for k in range(1, K + 1):
        acc = [0] * _DEPTH
        scale = 0
        for p, poly in enumerate(op.theta_polys):
            if p > k:
                break
            term = _mul(_shifted(poly, k - p), a[k - p])
            acc = [x + y for x, y in zip(acc, term)]
            scale = max(scale, max(abs(x) for x in term))
        if scale:
            worst = max(worst, max(abs(x) for x in acc) / scale)
    return worst


# rescaled Frobenius coordinates v -> standard symplectic coordinates u:
# u = (v0, v1, -v3, v2) turns Q = -(e0^e3 - e1^e2) into the standard form
_TO_STANDARD = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=np.int64)


class PicardFuchsModel(NilpotentOrbitModel):
    """Periods of a MUM operator written as a nilpotent orbit in the standard basis.

    The real structure is the one of the rescaled Frobenius basis; no
    topological (zeta(3) or c2) corrections are applied.
    """

    def __init__(self, op: PFOperator, truncation: int = 60, name: str = "pf_mum",
                 tail_tol: float = 1e-15):
        basis = pf_frobenius_mum(op, truncation)
        radius = min(op.singular_radius(), 1.0)
        N = _TO_STANDARD @ basis.N @ _TO_STANDARD.T
        A = basis.rescaled_series() @ _TO_STANDARD.T
        super().__init__(N, A, Q=SymplecticForm.standard(1), radius=radius, name=name)
        self.operator = op
        self.basis = basis
        self.tail_tol = tail_tol

    def _z(self, z):
        zz = super()._z(z)
        err = self.basis.truncation_error(abs(zz))
        if err > self.tail_tol:
            raise PrecisionError(f"Frobenius series truncated at {self.basis.truncation} terms "
                                 f"leaves a tail ~{err:.1e} at |z| = {abs(zz):.3g}", error=err)
        return zz


def quintic_operator() -> PFOperator:
    """``theta^4 - 5 z (5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4)``."""
    p1 = np.polynomial.polynomial.polyfromroots([-1 / 5, -2 / 5, -3 / 5, -4 / 5]) * (-(5**5))
    return PFOperator([[0, 0, 0, 0, 1], [int(round(c)) for c in p1]])


__all__ = ["PFOperator", "FrobeniusBasis", "pf_frobenius_mum", "frobenius_residual",
           "PicardFuchsModel", "quintic_operator"]
