"""Hodge metric, its curvature in closed form, and the curvature bounds.

Sign conventions follow the closed-form curvature: ``R`` is positive where
the usual Kahler curvature is negative, ``rho = -h^{i jbar} h^{k lbar} R``,
``Ric(h)_{k lbar} = -h^{i jbar} R_{i jbar k lbar}`` and the holomorphic
sectional curvature is ``-R(v, v, v, v) / h(v, v)^2``. The cubic model
(``h = 5/2`` at ``t = i``) saturates every bound and fixes these signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ContractError, CrossCheckError, InversionError, PrecisionError
from .jet import PeriodJet
from .numeric import fd_mixed_hessian, wirtinger_gradient, wirtinger_hessian
from .wp import (NormalFrame, WpGeometry, YukawaData, inverse_metric, normal_frame, wp_geometry,
                 wp_metric, yukawa, yukawa_data)

__all__ = [
    "alpha",
    "hodge_metric_from_jet",
    "ricci_wp",
    "hodge_metric",
    "HodgeMetric",
    "curvature_ab",
    "scalar_curvature",
    "CheckResult",
    "theorem_checks",
    "direct_curvature_oracle",
    "normal_hodge_field",
    "HodgeReport",
    "hodge_report",
    "ANCHORS",
]

# report names of the bound checks
ANCHORS = {
    "ricci": "Thm1.1-Ricci",
    "sectional": "Thm1.1-holomorphic-sectional",
    "a_bound": "Lemma3.1-A-bound",
    "b_bound": "Eq3.1-B-bound",
    "scalar": "Thm1.2-scalar-negative",
    "symmetry": "Thm1.3-symmetry",
}


def alpha(n: int) -> float:
    """Curvature constant ``((sqrt(n) + 1)^2 + 1)^-1``."""
    return 1.0 / ((math.sqrt(n) + 1.0) ** 2 + 1.0)


def _hinv(h):
    return inverse_metric(h)


def _double_trace(h, T) -> complex:
    hi = _hinv(h)
    return complex(np.einsum("ij,kl,ijkl->", hi, hi, T))


# ---------------------------------------------------------------------------
# the Hodge metric, two ways

def hodge_metric_from_jet(jet: PeriodJet) -> np.ndarray:
    """``h = 2 g + e^{2K} g^{m nbar} g^{p qbar} F_imp conj(F_jnq)`` (gauge invariant)."""
    geo = wp_geometry(jet)
    F = yukawa(jet, check=False)
    gi = inverse_metric(geo.g)
    return 2 * geo.g + math.exp(2 * geo.K) * np.einsum("mn,pq,imp,jnq->ij", gi, gi, F, F.conj())


def ricci_wp(model, t, step: float | None = None, levels: int = 3, tol: float | None = None):
    """``Ric(g) = -d dbar log det g`` by finite differences of the exact metric.

    Returns ``(ricci, error_estimate)``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=complex))
    if step is None:
        step = 1e-2 * model.local_scale(t)

    def logdet(s):
        g = wp_metric(model.jet(s, order=1, check_domain=False))
        return math.log(np.linalg.det(g).real)

    M, err = fd_mixed_hessian(logdet, t, step=step, levels=levels, tol=tol)
    return -M, err


@dataclass(frozen=True)
class HodgeMetric:
    h_ricci: np.ndarray
    h_yukawa: np.ndarray
    ricci: np.ndarray
    deviation: float
    fd_error: float

    @property
    def h(self) -> np.ndarray:
        return self.h_yukawa


def hodge_metric(model, t, step: float | None = None, levels: int = 3, tol: float = 1e-4,
                 raise_on_mismatch: bool = True) -> HodgeMetric:
    """Hodge metric by ``(n+3) g + Ric(g)`` and by the Yukawa formula.

    ``deviation`` is the max-norm difference relative to ``max |h|``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=complex))
    jet = model.jet(t, order=3)
    g = wp_metric(jet)
    ric, err = ricci_wp(model, t, step=step, levels=levels)
    ha = (model.n + 3) * g + ric
    hb = hodge_metric_from_jet(jet)
    dev = float(np.max(np.abs(ha - hb)) / np.max(np.abs(hb)))
    out = HodgeMetric(h_ricci=ha, h_yukawa=hb, ricci=ric, deviation=dev, fd_error=err)
    if raise_on_mismatch and dev > tol:
        raise CrossCheckError(f"Hodge metric paths disagree by {dev:.2e}", result=out)
    return out


# ---------------------------------------------------------------------------
# closed-form curvature in the normal frame

@dataclass(frozen=True)
class Curvature:
    A: np.ndarray
    B: np.ndarray
    R: np.ndarray
    h: np.ndarray


def curvature_ab(F, Fcov, h=None, g=None, tol: float = 1e-8) -> Curvature:
    """Curvature ``R = A + B`` of the Hodge metric from normal-frame Yukawa data.

    ``F`` and ``Fcov`` must be expressed where ``g = 1``, ``Gamma = 0``,
    ``K_l = 0`` and ``Q(Omega, conj Omega)`` is normalized. Pass ``g`` to
    have that contract checked.
    """
    F = np.asarray(F, dtype=complex)
    Fcov = np.asarray(Fcov, dtype=complex)
    n = F.shape[0]
    if g is not None and np.max(np.abs(np.asarray(g) - np.eye(n))) > tol:
        raise ContractError("curvature_ab needs the normal frame (g = identity)")
    Fb = F.conj()
    hh = 2 * np.eye(n) + np.einsum("imn,jmn->ij", F, Fb)
    if h is None:
        h = hh
    d = np.eye(n)
    A = (2 * np.einsum("ij,kl->ijkl", d, d) + 2 * np.einsum("il,kj->ijkl", d, d)
         - 4 * np.einsum("iks,jls->ijkl", F, Fb)
         + 2 * np.einsum("qkm,plm,inp,jnq->ijkl", F, Fb, F, Fb))
    X = np.einsum("irsk,mrs->ikm", Fcov, Fb)
    B = (np.einsum("irsk,jrsl->ijkl", Fcov, Fcov.conj())
         - np.einsum("ikm,mn,jln->ijkl", X, np.linalg.inv(h), X.conj()))
    return Curvature(A=A, B=B, R=A + B, h=np.asarray(h))


def scalar_curvature(h, R) -> float:
    """``rho = -h^{i jbar} h^{k lbar} R_{i jbar k lbar}``."""
    try:
        return float(-_double_trace(h, R).real)
    except np.linalg.LinAlgError as exc:
        raise InversionError("Hodge metric is singular") from exc


# ---------------------------------------------------------------------------
# bound checks

@dataclass(frozen=True)
class CheckResult:
    """One named pass/fail check; ``residual <= 0`` (up to ``tol``) means satisfied."""

    name: str
    passed: bool
    residual: float
    value: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed), "residual": float(self.residual),
                "value": float(self.value), "detail": self.detail}


def _directions(n, count, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    return np.concatenate([np.eye(n, dtype=complex), v])


def ricci_hodge(h, R) -> np.ndarray:
    """``Ric(h)_{k lbar} = -h^{i jbar} R_{i jbar k lbar}``."""
    return -np.einsum("ij,ijkl->kl", _hinv(h), R)


def holomorphic_sectional(h, R, directions) -> np.ndarray:
    """``R(v, vbar, v, vbar) / h(v, vbar)^2`` for each direction."""
    num = np.einsum("ijkl,ai,aj,ak,al->a", R, directions, directions.conj(), directions,
                    directions.conj()).real
    den = np.einsum("ij,ai,aj->a", h, directions, directions.conj()).real
    return num / den**2


def theorem_checks(h, A, B, R, Fcov, seed: int = 0, n_directions: int = 100,
                   tol: float = 1e-6, sym_tol: float = 1e-8) -> list:
    """Evaluate the curvature bounds at one point (normal-frame inputs).

    Checks, each with a residual that must not exceed its tolerance:
    Ricci pinching ``Ric(h) + alpha h <= 0``; holomorphic sectional
    curvature at most ``-alpha``; ``0 <= hhA <= 3 n^6``;
    ``0 <= hhB <= sum |F_{ijk,l}|^2``; ``rho < 0``; and the symmetry
    ``F_{ijk,l} = F_{ijl,k}``.
    """
    h = np.asarray(h)
    n = h.shape[0]
    a = alpha(n)
    out = []

    ric = ricci_hodge(h, R)
    X = ric + a * h
    lam = float(np.max(scipy.linalg.eigh(0.5 * (X + X.conj().T), 0.5 * (h + h.conj().T),
                                         eigvals_only=True)))
    out.append(CheckResult(ANCHORS["ricci"], lam <= tol, lam, lam,
                           "largest eigenvalue of Ric(h) + alpha h relative to h"))

    dirs = _directions(n, n_directions, seed)
    sect = holomorphic_sectional(h, R, dirs)
    worst = float(np.min(sect))
    out.append(CheckResult(ANCHORS["sectional"], a - worst <= tol, a - worst, -worst,
                           f"max holomorphic sectional curvature over {len(dirs)} directions vs -alpha"))

    hhA = _double_trace(h, A).real
    res = max(-hhA, hhA - 3 * n**6)
    out.append(CheckResult(ANCHORS["a_bound"], res <= tol, res, hhA, "0 <= hhA <= 3 n^6"))

    hhB = _double_trace(h, B).real
    bound = float(np.sum(np.abs(Fcov) ** 2))
    res = max(-hhB, hhB - bound)
    out.append(CheckResult(ANCHORS["b_bound"], res <= tol, res, hhB, "0 <= hhB <= sum |F_ijk,l|^2"))

    rho = -(hhA + hhB)
    out.append(CheckResult(ANCHORS["scalar"], rho < 0, rho, rho, "rho < 0"))

    sym = float(np.max(np.abs(Fcov - np.swapaxes(Fcov, 2, 3))))
    out.append(CheckResult(ANCHORS["symmetry"], sym <= sym_tol, sym, sym,
                           "max |F_ijk,l - F_ijl,k| in the normal frame"))
    return out


# ---------------------------------------------------------------------------
# independent finite-difference curvature

def direct_curvature_oracle(h_field, center, step: float = 1e-2, levels: int = 3,
                            tol: float | None = None, refinements: int = 1):
    """Curvature of a Hermitian metric field by finite differences.

    ``R_{i jbar k lbar} = d_k dbar_l h_{i jbar} - h^{p qbar} d_k h_{i qbar} dbar_l h_{p jbar}``
    (the sign of the closed form). With ``refinements > 1`` the steps
    ``step * 4**-j`` are tried and the one with the smallest error estimate
    wins. Returns ``(R, error_estimate)``; raises ``PrecisionError`` when
    ``tol`` is given and the best estimate exceeds it.
    """
    center = np.atleast_1d(np.asarray(center, dtype=complex))
    h0 = np.asarray(h_field(center))
    hi = _hinv(h0)
    best = None
    for j in range(max(1, refinements)):
        hstep = step * 4.0**-j
        M, err2 = wirtinger_hessian(h_field, center, step=hstep, levels=levels)
        d, dbar, err1 = wirtinger_gradient(h_field, center, step=hstep, levels=levels)
        R = (np.einsum("klij->ijkl", M)
             - np.einsum("pq,kiq,lpj->ijkl", hi, d, dbar))
        err = max(err1, err2)
        if best is None or err < best[1]:
            best = (R, err)
    if tol is not None and best[1] > tol:
        raise PrecisionError(f"finite-difference curvature error {best[1]:.1e} exceeds {tol:.1e}",
                             best=best[0], error=best[1])
    return best


def normal_hodge_field(model, frame: NormalFrame):
    """``s -> h(s)`` in the normal coordinates of ``frame`` (Yukawa formula)."""

    def field(s):
        s = np.atleast_1d(np.asarray(s, dtype=complex))
        t = frame.to_original(s)
        J = frame.jacobian(s)
        h = hodge_metric_from_jet(model.jet(t, order=3, check_domain=False))
        return J.T @ h @ J.conj()

    return field


# ---------------------------------------------------------------------------
# full per-point report

@dataclass
class HodgeReport:
    point: np.ndarray
    n: int
    wp: WpGeometry
    yukawa: YukawaData
    frame: NormalFrame
    F: np.ndarray
    Fcov: np.ndarray
    h: np.ndarray
    A: np.ndarray
    B: np.ndarray
    R: np.ndarray
    rho: float
    alpha: float
    hhA: float
    hhB: float
    checks: list = field(default_factory=list)
    hodge: HodgeMetric | None = None
    R_fd: np.ndarray | None = None
    curvature_deviation: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def hodge_report(model, t, seed: int = 0, n_directions: int = 100, tol: float = 1e-6,
                 with_ricci: bool = True, with_oracle: bool = True,
                 dual_tol: float = 1e-4) -> HodgeReport:
    """Everything at one point: WP layer, normal frame, A + B curvature, checks.

    ``with_ricci`` adds the finite-difference Hodge metric path and
    ``with_oracle`` the finite-difference curvature; both are reported as
    extra checks against ``dual_tol``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=complex))
    jet = model.jet(t, order=4)
    geo = wp_geometry(jet)
    yd = yukawa_data(jet)
    frame = normal_frame(jet)
    Fn = frame.push_F(yd.F)
    Fcn = frame.push_Fcov(yd.Fcov)
    curv = curvature_ab(Fn, Fcn)
    h = curv.h
    hhA = _double_trace(h, curv.A).real
    hhB = _double_trace(h, curv.B).real
    checks = theorem_checks(h, curv.A, curv.B, curv.R, Fcn, seed=seed,
                            n_directions=n_directions, tol=tol)
    rep = HodgeReport(point=t, n=model.n, wp=geo, yukawa=yd, frame=frame, F=Fn, Fcov=Fcn, h=h,
                      A=curv.A, B=curv.B, R=curv.R, rho=-(hhA + hhB), alpha=alpha(model.n),
                      hhA=hhA, hhB=hhB, checks=checks)
    if with_ricci:
        hm = hodge_metric(model, t, raise_on_mismatch=False)
        rep.hodge = hm
        rep.checks.append(CheckResult("Hodge-metric-dual-path", hm.deviation <= dual_tol,
                                      hm.deviation, hm.deviation,
                                      "(n+3) g + Ric(g) vs Yukawa formula, relative"))
    if with_oracle:
        R_fd, _ = direct_curvature_oracle(normal_hodge_field(model, frame),
                                          np.zeros(model.n, dtype=complex), step=1e-2,
                                          refinements=3)
        dev = float(np.max(np.abs(R_fd - curv.R)) / np.max(np.abs(curv.R)))
        rep.R_fd = R_fd
        rep.curvature_deviation = dev
        rep.checks.append(CheckResult("Curvature-dual-path", dev <= dual_tol, dev, dev,
                                      "closed-form A + B vs finite-difference curvature, relative"))
    return rep
