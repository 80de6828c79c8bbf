"""Machine-readable reports: per-point geometry, grid scans and the invariant suite.

All output is deterministic: records follow input order, floats are written
with ``repr`` precision and JSON keys are sorted.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .degeneration import limit_f3, yukawa_limit_scan
from .errors import HodgeLabError, StructureError
from .families.base import FamilyModel
from .families.orbit import NilpotentOrbitModel
from .families.picard_fuchs import PicardFuchsModel, frobenius_residual
from .families.validation import validate_model, validate_point
from .hodge import hodge_report
from .numeric import check_symmetry, expm_nilpotent
from .wp import normal_frame, wp_geometry

__all__ = [
    "GridSpecError",
    "parse_grid",
    "parse_points",
    "default_points",
    "point_record",
    "geometry_report",
    "scan_csv",
    "SuiteCheck",
    "verify_model",
    "degeneration_summary",
    "dumps",
]


class GridSpecError(HodgeLabError, ValueError):
    """Malformed ``--grid`` or ``--points`` input."""


# ---------------------------------------------------------------------------
# input parsing

def _axis(text: str) -> np.ndarray:
    try:
        lo, hi, num = text.split(":")
        lo, hi, num = float(lo), float(hi), int(num)
    except ValueError as exc:
        raise GridSpecError(f"axis {text!r} is not lo:hi:count") from exc
    if num < 1:
        raise GridSpecError(f"axis {text!r} has no points")
    return np.linspace(lo, hi, num)


def parse_grid(spec: str, n: int) -> list:
    """Points of ``re0:re1:nre,im0:im1:nim`` per modulus, moduli separated by ``;``.

    A single modulus spec is reused for every modulus. The product grid is
    ordered with the first modulus varying slowest.
    """
    parts = [p.strip() for p in spec.split(";") if p.strip()]
    if not parts:
        raise GridSpecError("empty grid spec")
    if len(parts) == 1:
        parts = parts * n
    if len(parts) != n:
        raise GridSpecError(f"grid spec has {len(parts)} moduli, model has {n}")
    axes = []
    for part in parts:
        try:
            re_s, im_s = part.split(",")
        except ValueError as exc:
            raise GridSpecError(f"modulus spec {part!r} is not re-axis,im-axis") from exc
        axes.append([complex(x, y) for x in _axis(re_s) for y in _axis(im_s)])
    return [np.array(p) for p in itertools.product(*axes)]


def _coord(x) -> complex:
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)):
        return complex(x)
    raise GridSpecError(f"coordinate {x!r} is neither a number nor [re, im]")


def parse_points(data, n: int) -> list:
    """Points from parsed JSON: a list of points, each a list of ``n`` coordinates.

    Coordinates are numbers or ``[re, im]``; one-modulus points may also be
    given bare.
    """
    if not isinstance(data, list) or not data:
        raise GridSpecError("points file must hold a non-empty JSON list")
    out = []
    for p in data:
        if not isinstance(p, list):
            p = [p]
        elif n == 1 and len(p) == 2 and all(isinstance(x, (int, float)) for x in p):
            p = [p]  # a bare [re, im] pair
        coords = [_coord(c) for c in p]
        if len(coords) != n:
            raise GridSpecError(f"point {p!r} does not have {n} coordinates")
        out.append(np.array(coords))
    return out


def default_points(model: FamilyModel, count: int = 20, seed: int = 0) -> list:
    return model.sample_points(count, seed=seed)


# ---------------------------------------------------------------------------
# serialization helpers

def _num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _cplx(a):
    a = np.asarray(a)
    return {"re": np.vectorize(_num, otypes=[object])(a.real).tolist(),
            "im": np.vectorize(_num, otypes=[object])(a.imag).tolist()}


def _point(t):
    return [[_num(c.real), _num(c.imag)] for c in np.atleast_1d(t)]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# per-point geometry

def point_record(model: FamilyModel, t, seed: int = 0, tol: float = 1e-6) -> dict:
    """One GeometryReport record; invalid points carry only the validation."""
    val = validate_point(model, t)
    rec = {"t": _point(t), "valid": val.valid, "reasons": list(val.reasons)}
    if not val.valid:
        return rec
    rep = hodge_report(model, t, seed=seed, tol=tol)
    geo = rep.wp
    rec.update({
        "K": _num(geo.K),
        "g": _cplx(geo.g),
        "Gamma": _cplx(geo.Gamma),
        "K_l": _cplx(geo.Kl),
        "F": _cplx(rep.yukawa.F),
        "Fcov": _cplx(rep.yukawa.Fcov),
        "h_ricci": _cplx(rep.hodge.h_ricci),
        "h_yukawa": _cplx(rep.hodge.h_yukawa),
        "h_normal": _cplx(rep.h),
        "F_normal": _cplx(rep.F),
        "Fcov_normal": _cplx(rep.Fcov),
        "A": _cplx(rep.A),
        "B": _cplx(rep.B),
        "R": _cplx(rep.R),
        "rho": _num(rep.rho),
        "alpha": _num(rep.alpha),
        "hhA": _num(rep.hhA),
        "hhB": _num(rep.hhB),
        "checks": [c.as_dict() for c in rep.checks],
    })
    return rec


def _summary(records: list) -> dict:
    checks = {}
    for rec in records:
        for c in rec.get("checks", []):
            s = checks.setdefault(c["name"], {"passed": 0, "failed": 0, "max_residual": None})
            s["passed" if c["passed"] else "failed"] += 1
            r = c["residual"]
            if r is not None and (s["max_residual"] is None or r > s["max_residual"]):
                s["max_residual"] = r
    return {
        "records": len(records),
        "valid": sum(r["valid"] for r in records),
        "invalid": sum(not r["valid"] for r in records),
        "checks": checks,
    }


def geometry_report(model: FamilyModel, points, seed: int = 0, tol: float = 1e-6) -> dict:
    records = [point_record(model, t, seed=seed, tol=tol) for t in points]
    return {"model": model.name, "n": model.n, "seed": seed, "tol": tol,
            "records": records, "summary": _summary(records)}


SCAN_COLUMNS = ("valid", "K", "g_min_eig", "h_min_eig", "rho", "hhA", "hhB", "checks_passed")


def scan_csv(model: FamilyModel, points, seed: int = 0, tol: float = 1e-6) -> str:
    """One CSV row per grid point, coordinates first (``t1_re, t1_im, ...``)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    coords = [f"t{i + 1}_{part}" for i in range(model.n) for part in ("re", "im")]
    w.writerow(["index", *coords, *SCAN_COLUMNS])
    for k, t in enumerate(points):
        tt = [repr(float(getattr(c, part))) for c in np.atleast_1d(t) for part in ("real", "imag")]
        val = validate_point(model, t)
        if not val.valid:
            w.writerow([k, *tt, 0] + [""] * (len(SCAN_COLUMNS) - 1))
            continue
        rep = hodge_report(model, t, seed=seed, tol=tol, with_ricci=False, with_oracle=False)
        gmin = float(np.min(np.linalg.eigvalsh(rep.wp.g)))
        hmin = float(np.min(np.linalg.eigvalsh(_h(rep))))
        w.writerow([k, *tt, 1, repr(float(rep.wp.K)), repr(gmin), repr(hmin), repr(float(rep.rho)),
                    repr(float(rep.hhA)), repr(float(rep.hhB)), int(rep.passed)])
    return buf.getvalue()


def _h(rep):
    # Hodge metric back in the original coordinates: h = L^T h_normal conj(L)
    L = np.linalg.inv(rep.frame.E)
    return L.T @ rep.h @ L.conj()


# ---------------------------------------------------------------------------
# invariant suite

@dataclass
class SuiteCheck:
    """Aggregated invariant; ``required=False`` checks are reported but never fail a run."""

    name: str
    passed: bool
    residual: float
    detail: str = ""
    required: bool = True
    points: int = 0

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed), "residual": _num(self.residual),
                "detail": self.detail, "required": self.required, "points": self.points}


@dataclass
class _Acc:
    checks: dict = field(default_factory=dict)

    def add(self, name, passed, residual, detail="", required=True):
        c = self.checks.get(name)
        if c is None:
            self.checks[name] = SuiteCheck(name, bool(passed), float(residual), detail, required, 1)
        else:
            c.passed = c.passed and bool(passed)
            c.residual = max(c.residual, float(residual))
            c.points += 1


def _orbit_q_invariance(model: NilpotentOrbitModel, seed: int) -> float:
    rng = np.random.default_rng(seed)
    d = model.N.shape[0]
    worst = 0.0
    for _ in range(10):
        s = complex(rng.normal(), rng.normal())
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        w = rng.normal(size=d) + 1j * rng.normal(size=d)
        E = expm_nilpotent(s * model.M)
        scale = np.linalg.norm(E @ v) * np.linalg.norm(E @ w)
        worst = max(worst, abs(model.Q.pair(E @ v, E @ w) - model.Q.pair(v, w)) / scale)
    return float(worst)


def verify_model(model: FamilyModel, points, seed: int = 0, tol: float = 1e-6) -> list:
    """Run every invariant on ``points``; returns a list of :class:`SuiteCheck`.

    Raises ``PrecisionError`` when a numerical step cannot reach its
    accuracy target.
    """
    acc = _Acc()
    val = validate_model(model, points)
    acc.add("Q-antisymmetry", val.q_antisymmetry == 0, val.q_antisymmetry)
    for p in val.points:
        acc.add("point-valid", p.valid, 0.0 if p.valid else 1.0,
                "positivity, transversality and positive metric at sampled points")
        if np.isfinite(p.transversality_1):
            acc.add("transversality", max(p.transversality_1, p.transversality_2) <= 1e-9,
                    max(p.transversality_1, p.transversality_2))
    if isinstance(model, NilpotentOrbitModel):
        qinv = _orbit_q_invariance(model, seed)
        acc.add("orbit-Q-invariance", qinv <= 1e-10, qinv)
    if isinstance(model, PicardFuchsModel):
        res = frobenius_residual(model.basis)
        acc.add("frobenius-residual", res <= 1e-9, res)

    for t in val.valid_points:
        jet = model.jet(t, order=4)
        geo = wp_geometry(jet)
        herm = check_symmetry(geo.g, "hermitian", raise_error=False)
        acc.add("wp-metric-hermitian", herm <= 1e-12, herm)
        acc.add("wp-metric-positive", geo.positive_definite, -geo.min_eigenvalue)
        frame = normal_frame(jet)
        njet = frame.transform_jet(jet)
        ngeo = wp_geometry(njet)
        contract = max(float(np.max(np.abs(ngeo.g - np.eye(model.n)))),
                       float(np.max(np.abs(ngeo.Gamma))), float(np.max(np.abs(ngeo.Kl))),
                       abs(ngeo.K))
        acc.add("normal-frame-contract", contract <= 1e-8, contract)
        rep = hodge_report(model, t, seed=seed, tol=tol)
        sym = check_symmetry(rep.yukawa.F, "totally-symmetric", raise_error=False)
        acc.add("yukawa-symmetric", sym <= 1e-12, sym)
        herm = float(np.max(np.abs(rep.R - np.conj(np.transpose(rep.R, (1, 0, 3, 2))))))
        acc.add("R-hermitian-symmetry", herm <= 1e-9, herm)
        hmin = float(np.min(np.linalg.eigvalsh(rep.h)))
        acc.add("hodge-metric-positive", hmin > 0, -hmin)
        for c in rep.checks:
            acc.add(c.name, c.passed, c.residual, c.detail)

    if isinstance(model, NilpotentOrbitModel):
        try:
            lim = limit_f3(model)
            acc.add("limit-F3", True, lim.residuals[-1])
        except StructureError as exc:
            acc.add("limit-F3", False, float("inf"), str(exc))
        F = model.finf
        grade = float(np.linalg.norm(np.linalg.matrix_power(model.N, 4) @ F))
        acc.add("N-grading", grade == 0, grade, "N^4 Finf = 0")
        for theta in (0.3, 1.7, -2.2):
            scan = yukawa_limit_scan(model, theta=theta)
            rel = scan.agreement / (1 + abs(scan.limit_rhs))
            acc.add("limit-identity", scan.agrees, rel,
                    "lim z^3 F_zzz = Q(Finf, M(M-1)(M-2) Finf)")
            worst = max(-row.h3_minus_F2 / row.h**3 for row in scan.rows)
            acc.add("hodge-yukawa-inequality", scan.hodge_yukawa_ok, worst,
                    "h^3 >= |F_zzz|^2 in unit gauge")
            acc.add("schwarz-decay", scan.schwarz_bounded, scan.schwarz_slope,
                    "growth exponent of h r^2 log^2(1/r)")
            acc.add("Thm4.2-constraint", scan.constraint.relative <= 1e-8,
                    scan.constraint.relative,
                    "Q(Finf, M(M-1)(M-2) Finf) vanishes (reported, not required)", required=False)
            acc.add("Wang-criterion-incomplete", scan.wang.incomplete,
                    float(np.linalg.norm(scan.wang.NFinf)),
                    "N Finf = 0 (reported, not required)", required=False)
    return list(acc.checks.values())


def degeneration_summary(model: NilpotentOrbitModel, theta: float = 0.3, radii=None) -> tuple:
    """``(csv_text, summary_dict)`` for one ray toward the puncture."""
    if not isinstance(model, NilpotentOrbitModel):
        raise StructureError(f"{model.name} is not a one-parameter degeneration model")
    scan = yukawa_limit_scan(model, theta=theta, radii=radii)
    lim = limit_f3(model, theta=theta)
    summary = scan.summary()
    summary.update({
        "model": model.name,
        "Finf": _cplx(lim.Finf),
        "limit_residuals": [_num(r) for r in lim.residuals],
        "NFinf": _cplx(scan.wang.NFinf),
        "constraint_relative": _num(scan.constraint.relative),
    })
    summary = json.loads(json.dumps(summary, default=_num))
    return scan.to_csv(), summary
