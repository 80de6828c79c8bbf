"""Weil-Petersson geometry of a period jet.

Every first-layer quantity is an exact contraction of jet vectors against
Q. Writing ``P = sqrt(-1) Q(Omega, conj Omega)``, the derivatives
``d_a dbar_b P = sqrt(-1) Q(d_a Omega, conj(d_b Omega))`` give the Kahler
potential ``K = -log P``, the metric ``g = d dbar K``, its holomorphic
derivative and so the Christoffel symbols, without finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InversionError, ModelConsistencyError, PositivityError
from .jet import PeriodJet, coordinate_transform, gauge_transform

__all__ = [
    "hodge_norm",
    "kahler_potential",
    "wp_metric",
    "christoffel",
    "connection_kl",
    "yukawa",
    "yukawa_residual",
    "yukawa_cov_deriv",
    "WpGeometry",
    "YukawaData",
    "NormalFrame",
    "wp_geometry",
    "yukawa_data",
    "normal_frame",
    "inverse_metric",
]


def hodge_norm(jet: PeriodJet) -> float:
    """``||Omega||^2 = sqrt(-1) Q(Omega, conj Omega)`` (real by antisymmetry)."""
    Om = jet.omega
    return float(np.real(1j * jet.pair(Om, Om.conj())))


def _positive_norm(jet):
    P = hodge_norm(jet)
    if not P > 0:
        raise PositivityError(f"sqrt(-1) Q(Omega, conj Omega) = {P:.3e} is not positive")
    return P


def kahler_potential(jet: PeriodJet) -> float:
    """``K = -log(sqrt(-1) Q(Omega, conj Omega))``."""
    return -math.log(_positive_norm(jet))


def inverse_metric(g) -> np.ndarray:
    """``ginv[s, q] = g^{s qbar}`` with ``g^{s qbar} g_{i qbar} = delta^s_i``."""
    g = np.asarray(g)
    try:
        return np.linalg.inv(g).T
    except np.linalg.LinAlgError as exc:
        raise InversionError("metric is singular") from exc


class _Pairings:
    """Cached derivatives of P built from the jet."""

    def __init__(self, jet: PeriodJet, order: int):
        n = jet.n
        Q = jet.Q.matrix
        self.n = n
        self.P = _positive_norm(jet)
        Om = jet.omega
        d1 = np.array([jet.d(i) for i in range(n)])
        Ob = Om.conj()
        d1b = d1.conj()
        self.Pi = 1j * d1 @ Q @ Ob
        self.Pij = 1j * d1 @ Q @ d1b.T
        if order >= 2:
            d2 = np.array([[jet.d(l, i) for i in range(n)] for l in range(n)])
            self.Pli = 1j * d2 @ Q @ Ob
            self.Plij = 1j * np.einsum("lia,ab,jb->lij", d2, Q, d1b)


def _metric(pp: _Pairings) -> np.ndarray:
    P, Pi = pp.P, pp.Pi
    return -pp.Pij / P + np.outer(Pi, Pi.conj()) / P**2


def _metric_derivative(pp: _Pairings) -> np.ndarray:
    """``dg[l, i, j] = d_l g_{i jbar}``."""
    P, Pi = pp.P, pp.Pi
    Pib = Pi.conj()
    return (-pp.Plij / P
            + np.einsum("ij,l->lij", pp.Pij, Pi) / P**2
            + (np.einsum("li,j->lij", pp.Pli, Pib) + np.einsum("i,lj->lij", Pi, pp.Pij)) / P**2
            - 2 * np.einsum("i,j,l->lij", Pi, Pib, Pi) / P**3)


def wp_metric(jet: PeriodJet) -> np.ndarray:
    """Weil-Petersson metric ``g[i, j] = g_{i jbar} = -d_i dbar_j log P``.

    The value is returned even where ``g`` fails to be positive definite;
    use :func:`wp_geometry` for the validity flag.
    """
    return _metric(_Pairings(jet, 1))


def christoffel(jet: PeriodJet) -> np.ndarray:
    """``Gamma[s, l, i] = g^{s qbar} d_l g_{i qbar}`` (symmetric in l, i)."""
    pp = _Pairings(jet, 2)
    return np.einsum("sq,liq->sli", inverse_metric(_metric(pp)), _metric_derivative(pp))


def connection_kl(jet: PeriodJet) -> np.ndarray:
    """``K_l = -d_l log ||Omega||^2``."""
    pp = _Pairings(jet, 1)
    return -pp.Pi / pp.P


def _raw_yukawa(jet: PeriodJet) -> np.ndarray:
    n = jet.n
    Om = jet.omega
    F = np.empty((n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                F[i, j, k] = jet.pair(Om, jet.d(i, j, k))
    return F


def yukawa_residual(jet: PeriodJet) -> float:
    """Relative size of ``Q(Omega, d_ijk Omega) + Q(d_i Omega, d_jk Omega)``.

    The two terms cancel exactly when ``Q(Omega, d_jk Omega) = 0``; the
    residual measures how far the jet is from Griffiths transversality,
    which is what makes ``F_ijk`` a symmetric tensor.
    """
    n = jet.n
    Om = jet.omega
    worst = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a = jet.pair(Om, jet.d(i, j, k))
                b = jet.pair(jet.d(i), jet.d(j, k))
                scale = max(np.linalg.norm(Om) * np.linalg.norm(jet.d(i, j, k)),
                            np.linalg.norm(jet.d(i)) * np.linalg.norm(jet.d(j, k)), 1e-300)
                worst = max(worst, abs(a + b) / scale)
    return float(worst)


def yukawa(jet: PeriodJet, check: bool = True, tol: float = 1e-8) -> np.ndarray:
    """Yukawa coupling ``F[i, j, k] = Q(Omega, d_i d_j d_k Omega)``.

    Raises
    ------
    ModelConsistencyError
        If ``check`` and the transversality residual exceeds ``tol``.
    """
    if check:
        res = yukawa_residual(jet)
        if res > tol:
            raise ModelConsistencyError(f"Yukawa asymmetry residual {res:.2e}: transversality violated")
    return _raw_yukawa(jet)


def _yukawa_derivative(jet: PeriodJet) -> np.ndarray:
    """``dF[l, i, j, k] = d_l F_{ijk}``."""
    n = jet.n
    Om = jet.omega
    dF = np.empty((n,) * 4, dtype=complex)
    for l in range(n):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    dF[l, i, j, k] = (jet.pair(jet.d(l), jet.d(i, j, k))
                                      + jet.pair(Om, jet.d(l, i, j, k)))
    return dF


def _covariant(F, dF, Gamma, Kl):
    """``Fcov[i, j, k, l] = F_{ijk,l}``."""
    return (np.einsum("lijk->ijkl", dF)
            - np.einsum("sli,sjk->ijkl", Gamma, F)
            - np.einsum("slj,isk->ijkl", Gamma, F)
            - np.einsum("slk,ijs->ijkl", Gamma, F)
            + 2 * np.einsum("ijk,l->ijkl", F, Kl))


def yukawa_cov_deriv(jet: PeriodJet, check: bool = True) -> np.ndarray:
    """Covariant derivative ``Fcov[i, j, k, l] = F_{ijk,l}``.

    ``F_{ijk,l} = d_l F_ijk - Gamma^s_li F_sjk - Gamma^s_lj F_isk
    - Gamma^s_lk F_ijs + 2 F_ijk K_l``.
    """
    if jet.order < 4:
        raise ValueError("the covariant Yukawa derivative needs a jet of order 4")
    F = yukawa(jet, check=check)
    return _covariant(F, _yukawa_derivative(jet), christoffel(jet), connection_kl(jet))


# ---------------------------------------------------------------------------
# aggregated results

@dataclass(frozen=True)
class WpGeometry:
    point: np.ndarray
    K: float
    g: np.ndarray
    Gamma: np.ndarray
    Kl: np.ndarray
    min_eigenvalue: float

    @property
    def positive_definite(self) -> bool:
        return self.min_eigenvalue > 0


@dataclass(frozen=True)
class YukawaData:
    F: np.ndarray
    Fcov: np.ndarray
    gauge: dict = field(default_factory=dict)
    asymmetry: float = 0.0

    def symmetry_residual(self) -> float:
        """``max |F_{ijk,l} - F_{ijl,k}|``."""
        return float(np.max(np.abs(self.Fcov - np.swapaxes(self.Fcov, 2, 3))))


def wp_geometry(jet: PeriodJet) -> WpGeometry:
    pp = _Pairings(jet, 2 if jet.order >= 2 else 1)
    g = _metric(pp)
    eig = float(np.min(np.linalg.eigvalsh(0.5 * (g + g.conj().T))))
    if jet.order >= 2 and eig > 0:
        Gamma = np.einsum("sq,liq->sli", inverse_metric(g), _metric_derivative(pp))
    else:
        Gamma = np.full((jet.n,) * 3, np.nan + 0j)
    return WpGeometry(point=jet.point, K=-math.log(pp.P), g=g, Gamma=Gamma,
                      Kl=-pp.Pi / pp.P, min_eigenvalue=eig)


def yukawa_data(jet: PeriodJet, check: bool = True) -> YukawaData:
    res = yukawa_residual(jet)
    F = yukawa(jet, check=check)
    Fcov = _covariant(F, _yukawa_derivative(jet), christoffel(jet), connection_kl(jet))
    return YukawaData(F=F, Fcov=Fcov, gauge={"f0": 0.0, "grad": np.zeros(jet.n)}, asymmetry=res)


@dataclass(frozen=True)
class NormalFrame:
    """Coordinates and section scaling that normalize the geometry at ``point``.

    New coordinates are ``s = L (t - p) + q(t - p, t - p)`` (to second
    order), inverted by ``t - p = E s + qinv(s, s)``. The section becomes
    ``exp(f) Omega`` with ``f(t) = f0 + grad . (t - p)``. At ``p`` the new
    data satisfy ``g = 1``, ``Gamma = 0``, ``K_l = 0`` and
    ``sqrt(-1) Q(Omega, conj Omega) = 1``.
    """

    point: np.ndarray
    L: np.ndarray
    q: np.ndarray
    E: np.ndarray
    qinv: np.ndarray
    f0: float
    grad: np.ndarray

    def push_F(self, F) -> np.ndarray:
        E = self.E
        return np.exp(2 * self.f0) * np.einsum("ijk,ia,jb,kc->abc", F, E, E, E)

    def push_Fcov(self, Fcov) -> np.ndarray:
        E = self.E
        return np.exp(2 * self.f0) * np.einsum("ijkl,ia,jb,kc,ld->abcd", Fcov, E, E, E, E)

    def push_metric(self, h) -> np.ndarray:
        """Hermitian 2-tensor ``h_{i jbar}`` in the new coordinates at ``p``."""
        return self.E.T @ h @ self.E.conj()

    def to_original(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=complex)
        return self.point + self.E @ s + np.einsum("iab,a,b->i", self.qinv, s, s)

    def jacobian(self, s) -> np.ndarray:
        """``dt_i / ds_a`` of :meth:`to_original`."""
        s = np.asarray(s, dtype=complex)
        return self.E + 2 * np.einsum("iab,b->ia", self.qinv, s)

    def transform_jet(self, jet: PeriodJet) -> PeriodJet:
        """Exact jet of ``exp(f) Omega`` in the normal coordinates."""
        new = coordinate_transform(jet, self.E, self.qinv)
        grad_s = self.E.T @ self.grad
        hess_s = 2 * np.einsum("i,iab->ab", self.grad, self.qinv)
        return gauge_transform(new, self.f0, grad_s, hess_s)


def normal_frame(jet: PeriodJet) -> NormalFrame:
    """Normal coordinates and unit gauge at the jet's point.

    The linear part comes from the Cholesky factor ``g = C C^H`` (lower
    triangular): ``L = C^T`` and ``E = L^-1``.
    """
    geo = wp_geometry(jet)
    if not geo.positive_definite:
        raise InversionError("metric is not positive definite; no normal frame")
    C = np.linalg.cholesky(geo.g)
    L = C.T
    E = np.linalg.inv(L)
    Gamma = geo.Gamma
    q = 0.5 * np.einsum("ai,ijk->ajk", L, Gamma)
    qinv = -0.5 * np.einsum("ijk,ja,kb->iab", Gamma, E, E)
    P = math.exp(-geo.K)
    return NormalFrame(point=jet.point, L=L, q=q, E=E, qinv=qinv,
                       f0=-0.5 * math.log(P), grad=geo.Kl.copy())
