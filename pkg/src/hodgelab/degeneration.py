"""One-parameter degenerations: limiting vector, Wang's criterion and decay scans.

For ``Omega = exp(log z M) A(z)`` with ``M = N / (2 pi i)`` the invariance of
``Q`` under ``exp(s M)`` gives

    z^3 F_zzz = Q(A, sum_m C(3, m) z^(3-m) M(M-1)...(M-m+1) A^(3-m)),

which is holomorphic at ``z = 0`` with value ``Q(Finf, M(M-1)(M-2) Finf)``.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import HodgeLabError, PrecisionError, StructureError
from .families.orbit import NilpotentOrbitModel
from .families.symplectic import SymplecticForm
from .numeric import expm_nilpotent, richardson
from .scalars import DOUBLE, ScalarContext

__all__ = [
    "DegenerationData",
    "degeneration_data",
    "limit_f3",
    "LimitResult",
    "wang_criterion",
    "WangResult",
    "constraint_check",
    "ConstraintResult",
    "ScanRow",
    "YukawaScan",
    "yukawa_limit_scan",
    "SCAN_COLUMNS",
]


@dataclass(frozen=True)
class DegenerationData:
    N: np.ndarray
    Finf: np.ndarray
    Q: SymplecticForm
    theta: float = 0.0
    r0: float = 1.0

    @property
    def M(self) -> np.ndarray:
        return self.N / (2j * np.pi)

    def __post_init__(self):
        N = np.asarray(self.N)
        if np.any(np.linalg.matrix_power(N, 4)):
            raise StructureError("N^4 != 0")
        if self.Q.is_infinitesimal_isometry(N) > 1e-12 * max(1.0, float(np.max(np.abs(N)))):
            raise StructureError("N is not infinitesimally symplectic")
        if not np.any(self.Finf):
            raise StructureError("Finf vanishes")


def degeneration_data(model: NilpotentOrbitModel, theta: float = 0.0) -> DegenerationData:
    return DegenerationData(N=np.asarray(model.N), Finf=model.finf, Q=model.Q, theta=theta,
                            r0=model.radius)


@dataclass(frozen=True)
class LimitResult:
    Finf: np.ndarray
    radii: tuple
    residuals: tuple


def limit_f3(model: NilpotentOrbitModel, theta: float = 0.3, radii=None) -> LimitResult:
    """``Finf = lim exp(-log z M) Omega(z)``, checked along a ray.

    The untwisted period is evaluated at ``radii`` (default the model radius
    times 1e-2, 1e-4, 1e-6) and its distance to ``A(0)`` must not grow.
    """
    if radii is None:
        radii = [model.radius * 10.0**-k for k in (2, 4, 6)]
    Finf = model.finf
    M = model.M
    res = []
    for r in radii:
        z = r * np.exp(1j * theta)
        Om = model.periods(z)
        untwist = expm_nilpotent(-np.log(z) * M) @ Om
        res.append(float(np.linalg.norm(untwist - Finf)))
    slack = 1e-13 * np.linalg.norm(Finf)
    if any(b > a + slack for a, b in zip(res, res[1:])):
        raise StructureError(f"untwisted periods do not converge: residuals {res}")
    return LimitResult(Finf=Finf, radii=tuple(radii), residuals=tuple(res))


@dataclass(frozen=True)
class WangResult:
    NFinf: np.ndarray
    incomplete: bool


def wang_criterion(N, Finf, rtol: float = 1e-9) -> WangResult:
    """Incomplete Weil-Petersson metric toward the puncture iff ``N Finf = 0``."""
    v = np.asarray(N) @ np.asarray(Finf)
    return WangResult(NFinf=v, incomplete=bool(np.linalg.norm(v) <= rtol * np.linalg.norm(Finf)))


@dataclass(frozen=True)
class ConstraintResult:
    """``derived = Q(F, M(M-1)(M-2) F)``; ``literal = Q(F, N^3 F - 3 N^2 F - 2 N F)``."""

    derived: complex
    literal: complex
    scale: float

    @property
    def relative(self) -> float:
        return abs(self.derived) / self.scale if self.scale > 0 else abs(self.derived)


def constraint_check(N, Finf, Q: SymplecticForm) -> ConstraintResult:
    N = np.asarray(N)
    F = np.asarray(Finf, dtype=complex)
    M = N / (2j * np.pi)
    eye = np.eye(N.shape[0])
    derived = Q.pair(F, M @ (M - eye) @ (M - 2 * eye) @ F)
    N2 = N @ N
    literal = Q.pair(F, (N2 @ N - 3 * N2 - 2 * N) @ F)
    scale = float(np.linalg.norm(F) ** 2 * max(np.linalg.norm(M, 2), 1.0) ** 3)
    return ConstraintResult(derived=complex(derived), literal=complex(literal), scale=scale)


# ---------------------------------------------------------------------------
# scans toward the puncture

SCAN_COLUMNS = ("r", "re_z3Fzzz", "im_z3Fzzz", "h", "h3_minus_F2", "h_r2_log2")


@dataclass(frozen=True)
class ScanRow:
    r: float
    z3F: complex
    h: float
    h3_minus_F2: float
    schwarz_ratio: float
    F2: float

    def values(self) -> tuple:
        return (self.r, self.z3F.real, self.z3F.imag, self.h, self.h3_minus_F2,
                self.schwarz_ratio)


@dataclass
class YukawaScan:
    theta: float
    rows: list
    limit_lhs: complex
    limit_error: float
    limit_rhs: complex
    constraint: ConstraintResult
    wang: WangResult
    schwarz_slope: float
    warnings: list = field(default_factory=list)

    @property
    def agreement(self) -> float:
        return abs(self.limit_lhs - self.limit_rhs)

    @property
    def agrees(self) -> bool:
        return self.agreement <= 1e-6 * (1 + abs(self.limit_rhs))

    @property
    def hodge_yukawa_ok(self) -> bool:
        return all(row.h3_minus_F2 >= -1e-8 * row.h**3 for row in self.rows)

    @property
    def schwarz_bounded(self) -> bool:
        return self.schwarz_slope <= 0.1

    @property
    def schwarz_constant(self) -> float:
        return max((row.schwarz_ratio for row in self.rows), default=float("nan"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SCAN_COLUMNS)
        for row in self.rows:
            w.writerow([repr(float(x)) for x in row.values()])
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "theta": self.theta,
            "limit_lhs": [self.limit_lhs.real, self.limit_lhs.imag],
            "limit_error": self.limit_error,
            "limit_rhs": [self.limit_rhs.real, self.limit_rhs.imag],
            "agreement": self.agreement,
            "agrees": self.agrees,
            "constraint_derived": [self.constraint.derived.real, self.constraint.derived.imag],
            "constraint_literal": [self.constraint.literal.real, self.constraint.literal.imag],
            "NFinf_norm": float(np.linalg.norm(self.wang.NFinf)),
            "incomplete": self.wang.incomplete,
            "hodge_yukawa_ok": self.hodge_yukawa_ok,
            "schwarz_slope": self.schwarz_slope,
            "schwarz_bounded": self.schwarz_bounded,
            "schwarz_constant": self.schwarz_constant,
            "rows": len(self.rows),
            "warnings": list(self.warnings),
        }


def _scan_point(model: NilpotentOrbitModel, z, ctx: ScalarContext):
    """``(z^3 F_zzz, h, |F|^2 / P^2)`` at one point, in the precision of ``ctx``."""
    d = model.orbit_derivs(z, order=3, ctx=ctx)
    Q = model.Q
    conj = np.vectorize(lambda x: x.conjugate(), otypes=[object]) if ctx.extended else np.conj
    Om, Om1, Om3 = d[0], d[1], d[3]
    Omb, Om1b = conj(Om), conj(Om1)
    i = ctx.scalar(1j)
    P = (i * Q.pair(Om, Omb)).real
    Pz = i * Q.pair(Om1, Omb)
    Pzz = (i * Q.pair(Om1, Om1b)).real
    g = -Pzz / P + abs(Pz) ** 2 / P**2
    F = Q.pair(Om, Om3)
    F2 = abs(F) ** 2 / P**2
    h = 2 * g + F2 / g**2
    zc = ctx.scalar(z)
    return ctx.to_complex(zc**3 * F), float(h), float(F2), float(g)


def yukawa_limit_scan(model: NilpotentOrbitModel, theta: float = 0.3, radii=None,
                      ctx: ScalarContext = DOUBLE) -> YukawaScan:
    """Scan ``z^3 F_zzz`` and the Hodge metric along ``z = r e^{i theta}``.

    ``radii`` defaults to the model radius times ``10^-1 .. 10^-6``. Radii
    that cannot be evaluated (series tail too large, precision exhausted)
    are dropped with a warning. The limit of
    ``z^3 F_zzz`` is a Richardson extrapolation in ``r`` over the three
    smallest radii (the quantity is holomorphic at 0).
    """
    if radii is None:
        radii = [model.radius * 10.0**-k for k in range(1, 7)]
    radii = sorted(radii, reverse=True)
    rows, notes = [], []
    for r in radii:
        z = r * np.exp(1j * theta)
        if ctx.extended:
            z = ctx.scalar(r) * ctx.exp(ctx.scalar(1j) * ctx.scalar(theta))
        try:
            z3F, h, F2, g = _scan_point(model, z, ctx)
        except (HodgeLabError, ZeroDivisionError, ValueError) as exc:
            notes.append(f"skipped r={r:.3g}: {exc}")
            continue
        if not (np.isfinite(h) and g > 0 and np.isfinite(z3F)):
            notes.append(f"skipped r={r:.3g}: precision exhausted (g={g:.3g})")
            continue
        log_r = math.log(1.0 / r)
        rows.append(ScanRow(r=float(r), z3F=z3F, h=h, h3_minus_F2=h**3 - F2,
                            schwarz_ratio=h * r**2 * log_r**2, F2=F2))
    for msg in notes:
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    if not rows:
        raise PrecisionError("no radius of the scan could be evaluated")
    vals = [row.z3F for row in rows]
    tail = vals[-3:]
    ratio = rows[-2].r / rows[-1].r if len(rows) > 1 else 10.0
    if len(tail) > 1:
        lhs, err = richardson(tail, ratio, power=1)
    else:
        lhs, err = tail[0], float("inf")
    data = degeneration_data(model, theta)
    con = constraint_check(data.N, data.Finf, data.Q)
    wang = wang_criterion(data.N, data.Finf)
    # exponent fit on the asymptotic part of the ladder, away from O(r) corrections
    fit = [row for row in rows if row.r <= 1e-2 * model.radius]
    if len(fit) < 3:
        fit = rows
    if len(fit) > 2:
        x = np.log([math.log(1.0 / row.r) for row in fit])
        y = np.log([row.schwarz_ratio for row in fit])
        slope = float(np.polyfit(x, y, 1)[0])
    else:
        slope = float("nan")
    return YukawaScan(theta=float(theta), rows=rows, limit_lhs=complex(lhs), limit_error=float(err),
                      limit_rhs=con.derived, constraint=con, wang=wang, schwarz_slope=slope,
                      warnings=notes)
