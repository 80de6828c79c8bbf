"""Pointwise checks that a model is a polarized variation where it is sampled."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import HodgeLabError
from ..numeric import multi_indices
from ..wp import wp_metric
from .base import FamilyModel


@dataclass(frozen=True)
class PointValidation:
    """Residuals at one point; ``reasons`` lists what failed."""

    point: np.ndarray
    norm: float
    transversality_1: float
    transversality_2: float
    g_min_eigenvalue: float
    reasons: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.reasons

    def as_dict(self) -> dict:
        return {
            "t": [[float(x.real), float(x.imag)] for x in np.atleast_1d(self.point)],
            "valid": self.valid,
            "norm": float(self.norm),
            "transversality_1": float(self.transversality_1),
            "transversality_2": float(self.transversality_2),
            "g_min_eigenvalue": float(self.g_min_eigenvalue),
            "reasons": list(self.reasons),
        }


@dataclass(frozen=True)
class ValidationReport:
    model: str
    q_antisymmetry: float
    points: list = field(default_factory=list)

    @property
    def valid_points(self) -> list:
        return [p.point for p in self.points if p.valid]

    @property
    def all_valid(self) -> bool:
        return self.q_antisymmetry == 0 and all(p.valid for p in self.points)

    def max_violation(self, key: str) -> float:
        vals = [getattr(p, key) for p in self.points if np.isfinite(getattr(p, key))]
        return max(vals, default=0.0)

    def as_dict(self) -> dict:
        finite = [p for p in self.points if np.isfinite(p.norm)]
        return {
            "model": self.model,
            "q_antisymmetry": float(self.q_antisymmetry),
            "max_transversality_1": self.max_violation("transversality_1"),
            "max_transversality_2": self.max_violation("transversality_2"),
            "min_norm": min((float(p.norm) for p in finite), default=None),
            "valid_count": sum(p.valid for p in self.points),
            "point_count": len(self.points),
            "points": [p.as_dict() for p in self.points],
        }


def _relative_pair(jet, v, w) -> float:
    scale = np.linalg.norm(v) * np.linalg.norm(w)
    val = abs(jet.pair(v, w))
    return float(val / scale) if scale > 0 else float(val)


def validate_point(model: FamilyModel, t, tol: float = 1e-9) -> PointValidation:
    """Positivity, transversality and metric positivity at ``t``."""
    t = np.atleast_1d(np.asarray(t, dtype=complex))
    nan = float("nan")
    reasons = [] if model.in_domain(t) else ["outside-domain"]
    try:
        jet = model.jet(t, order=2, check_domain=False)
    except HodgeLabError as exc:
        return PointValidation(t, nan, nan, nan, nan, tuple(reasons + [f"evaluation: {exc}"]))
    Om = jet.omega
    norm = float(np.real(1j * jet.pair(Om, Om.conj())))
    if not norm > 0:
        reasons.append("positivity")
    t1 = max(_relative_pair(jet, Om, jet.d(i)) for i in range(jet.n))
    t2 = max(_relative_pair(jet, Om, jet.d(*ij)) for ij in multi_indices(jet.n, 2))
    if t1 > tol:
        reasons.append("transversality-1")
    if t2 > tol:
        reasons.append("transversality-2")
    lam = nan
    if norm > 0:
        g = wp_metric(jet)
        lam = float(np.min(np.linalg.eigvalsh(0.5 * (g + g.conj().T))))
        scale = max(1.0, float(np.max(np.abs(g))))
        if not lam > 1e-12 * scale:
            reasons.append("metric-not-positive")
    return PointValidation(t, norm, t1, t2, lam, tuple(reasons))


def validate_model(model: FamilyModel, sample_points, tol: float = 1e-9) -> ValidationReport:
    """Report the violations of a polarized variation at ``sample_points``.

    Never raises on bad points; each one is flagged with its reasons so that
    scans can map out where the model is usable.
    """
    Qm = model.Q.matrix
    anti = float(np.max(np.abs(Qm + Qm.T)))
    pts = [validate_point(model, t, tol=tol) for t in sample_points]
    return ValidationReport(model=model.name, q_antisymmetry=anti, points=pts)


__all__ = ["PointValidation", "ValidationReport", "validate_point", "validate_model"]
