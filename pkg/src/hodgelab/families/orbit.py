"""One-parameter nilpotent-orbit families ``Omega = exp(log(z) N / 2 pi i) A(z)``."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, StructureError
from ..jet import PeriodJet
from ..scalars import DOUBLE, ScalarContext
from .base import FamilyModel
from .symplectic import SymplecticForm


def _as_matrix(N):
    N = np.asarray(N)
    if np.iscomplexobj(N):
        return N.astype(complex)
    if np.allclose(N, np.round(N)):
        return np.round(N).astype(np.int64)
    return N.astype(float)


class NilpotentOrbitModel(FamilyModel):
    """Periods ``Omega(z) = exp(log z * N / (2 pi i)) A(z)`` on ``0 < |z| < radius``.

    Parameters
    ----------
    N : (d, d) array
        Nilpotent log-monodromy, infinitesimally symplectic for ``Q``.
    A_series : (K+1, d) array
        Coefficients of ``A(z) = sum_k A_series[k] z**k``.
    Q : SymplecticForm, optional
        Defaults to the standard form on C^4.
    radius : float
        Radius of the punctured disc where ``A`` is declared analytic.
    """

    n = 1

    def __init__(self, N, A_series, Q: SymplecticForm | None = None, radius: float = 1.0,
                 name: str = "nilpotent_orbit", check: bool = True):
        self.N = _as_matrix(N)
        A = np.atleast_2d(np.asarray(A_series, dtype=complex))
        self.A_series = A
        d = self.N.shape[0]
        if A.shape[1] != d:
            raise ValueError(f"A_series vectors have length {A.shape[1]}, N is {d}x{d}")
        self.Q = Q if Q is not None else SymplecticForm.standard(d // 2 - 1)
        self.radius = float(radius)
        self.name = name
        # nilpotency degree: smallest m with N^m = 0
        powers = [np.eye(d, dtype=self.N.dtype)]
        while np.any(powers[-1]):
            if len(powers) > d:
                raise StructureError("N is not nilpotent")
            powers.append(powers[-1] @ self.N)
        self._depth = len(powers) - 1
        if check:
            if self.Q.is_infinitesimal_isometry(self.N) > 1e-12 * max(1.0, float(np.max(np.abs(self.N)))):
                raise StructureError("N is not infinitesimally symplectic for Q")
            if not np.any(A[0]):
                raise StructureError("A(0) must be nonzero")

    @property
    def M(self) -> np.ndarray:
        """Scaled log-monodromy ``N / (2 pi i)``."""
        return self.N / (2j * np.pi)

    @property
    def finf(self) -> np.ndarray:
        return self.A_series[0].copy()

    def in_domain(self, z) -> bool:
        r = abs(complex(np.ravel(z)[0]))
        return 0 < r < self.radius

    def analyticity_radius(self, z) -> float:
        r = abs(complex(np.ravel(z)[0]))
        return min(r, self.radius - r)

    def _z(self, z):
        zz = complex(np.ravel(np.asarray(z, dtype=complex))[0])
        if zz == 0:
            raise DomainError("z = 0 is the puncture")
        if abs(zz) >= self.radius:
            raise DomainError(f"|z| = {abs(zz)} outside the disc of radius {self.radius}")
        return zz

    def orbit_derivs(self, z, order: int = 4, ctx: ScalarContext = DOUBLE) -> list:
        """``[Omega, Omega', ..., Omega^(order)]`` at ``z`` in the given precision.

        Uses ``d^m/dz^m exp(log z M) = z^-m exp(log z M) M (M-1) ... (M-m+1)``
        and the Leibniz rule against the derivatives of ``A``.
        """
        if ctx.extended and not isinstance(z, (complex, float, int, np.ndarray, np.generic)):
            # mpmath input keeps its full precision
            zc = ctx.scalar(z)
            if zc == 0 or abs(zc) >= self.radius:
                raise DomainError(f"|z| = {abs(zc)} outside the punctured disc")
        else:
            zc = ctx.scalar(self._z(z))
        d = self.N.shape[0]
        s = ctx.log(zc)
        M = ctx.array(self.N) / (2 * ctx.pi() * ctx.scalar(1j))
        eye = ctx.array(np.eye(d))
        # E(s) = sum_j s^j M^j / j!
        E = eye.copy()
        term = eye.copy()
        for j in range(1, self._depth):
            term = term.dot(M) * s / j
            E = E + term
        # falling factorials M (M-1) ... (M-m+1)
        falling = [eye]
        for m in range(1, order + 1):
            falling.append(falling[-1].dot(M - (m - 1) * eye))
        coeffs = ctx.array(self.A_series)
        K = coeffs.shape[0] - 1
        Ader = []
        for j in range(order + 1):
            v = ctx.array(np.zeros(d))
            for k in range(j, K + 1):
                v = v + coeffs[k] * (math.perm(k, j) * zc ** (k - j))
            Ader.append(v)
        out = []
        for k in range(order + 1):
            v = ctx.array(np.zeros(d))
            for m in range(k + 1):
                v = v + math.comb(k, m) * zc ** (-m) * E.dot(falling[m].dot(Ader[k - m]))
            out.append(v)
        return out

    def periods(self, z) -> np.ndarray:
        return self.orbit_derivs(z, order=0)[0]

    def jet(self, z, order: int = 4, check_domain: bool = True) -> PeriodJet:
        # the punctured disc is also the analyticity domain, so it is always checked
        zz = self._z(z)
        ds = self.orbit_derivs(zz, order=order)
        return PeriodJet(point=np.array([zz]), derivs={(0,) * k: v for k, v in enumerate(ds)}, Q=self.Q)

    def sample_points(self, count: int, seed: int = 0) -> list:
        rng = np.random.default_rng(seed)
        r = self.radius * rng.uniform(0.05, 0.5, count)
        th = rng.uniform(-0.9 * np.pi, 0.9 * np.pi, count)
        return [np.array([ri * np.exp(1j * ti)]) for ri, ti in zip(r, th)]


def nilpotent_orbit_eval(model: NilpotentOrbitModel, z, order: int = 4) -> PeriodJet:
    """Period jet of a nilpotent-orbit model at ``z`` (principal branch of log)."""
    return model.jet(z, order=order)
