"""Special-geometry models defined by a polynomial prepotential."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..jet import PeriodJet
from ..numeric import indices_to_exponent, multi_indices
from .base import FamilyModel
from .symplectic import SymplecticForm


def _diff_eval(poly: dict, beta, t) -> complex:
    """Evaluate d^beta of a monomial dict at ``t``."""
    total = 0j
    for alpha, c in poly.items():
        if any(a < b for a, b in zip(alpha, beta)):
            continue
        coef = c
        for a, b in zip(alpha, beta):
            coef *= math.perm(a, b)
        total += coef * np.prod([ti ** (a - b) for ti, a, b in zip(t, alpha, beta)])
    return complex(total)


class PrepotentialModel(FamilyModel):
    """Periods ``Omega = (1, t^i, 2P - t^m d_m P, d_i P)`` of a prepotential P.

    Parameters
    ----------
    coefficients : dict
        Exponent tuple -> coefficient of the monomial in P.
    domain : dict, optional
        ``{"re": [[lo, hi], ...], "im": [[lo, hi], ...]}`` bounds per
        modulus. Without it the domain is the product of upper half-planes.

    Notes
    -----
    The recipe is standard special geometry. It is not guaranteed to give
    a positive metric; :func:`validate_model` maps out where it does.
    """

    def __init__(self, coefficients: dict, n: int | None = None, domain: dict | None = None,
                 name: str = "prepotential"):
        coefficients = {tuple(int(a) for a in k): complex(v) for k, v in coefficients.items()}
        if n is None:
            n = len(next(iter(coefficients))) if coefficients else 1
        if any(len(k) != n for k in coefficients):
            raise ValueError("all exponents must have length n")
        self.n = n
        self.name = name
        self.coefficients = coefficients
        self.domain = domain
        self.Q = SymplecticForm.standard(n)
        eye = np.eye(n, dtype=int)
        f0 = {a: (2 - sum(a)) * c for a, c in coefficients.items()}
        grads = []
        for i in range(n):
            g = {}
            for a, c in coefficients.items():
                if a[i]:
                    g[tuple(a - eye[i])] = g.get(tuple(a - eye[i]), 0) + a[i] * c
            grads.append(g)
        zero = (0,) * n
        self._components = ([{zero: 1.0}] + [{tuple(eye[i]): 1.0} for i in range(n)]
                            + [f0] + grads)

    def in_domain(self, t) -> bool:
        t = np.atleast_1d(t)
        if self.domain is None:
            return bool(np.all(t.imag > 0))
        ok = True
        for key, part in (("re", t.real), ("im", t.imag)):
            bounds = self.domain.get(key)
            if bounds is None:
                continue
            for x, (lo, hi) in zip(part, bounds):
                ok &= lo <= x <= hi
        return bool(ok)

    def local_scale(self, t) -> float:
        return float(np.min(np.abs(np.atleast_1d(t).imag)))

    def periods(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=complex))
        zero = (0,) * self.n
        return np.array([_diff_eval(c, zero, t) for c in self._components])

    def jet(self, t, order: int = 4, check_domain: bool = True) -> PeriodJet:
        """Exact derivatives of the period recipe (polynomial differentiation)."""
        t = np.atleast_1d(np.asarray(t, dtype=complex))
        if check_domain:
            t = self.check_point(t)
        derivs = {}
        for idx in multi_indices(self.n, order):
            beta = indices_to_exponent(idx, self.n)
            derivs[idx] = np.array([_diff_eval(c, beta, t) for c in self._components])
        return PeriodJet(point=t, derivs=derivs, Q=self.Q)

    def sample_points(self, count: int, seed: int = 0) -> list:
        if self.domain is None:
            raise DomainError("sampling needs a bounded domain")
        rng = np.random.default_rng(seed)
        re = np.array(self.domain.get("re", [[-0.5, 0.5]] * self.n), dtype=float)
        im = np.array(self.domain["im"], dtype=float)
        pts = []
        for _ in range(count):
            x = rng.uniform(re[:, 0], re[:, 1])
            y = rng.uniform(im[:, 0], im[:, 1])
            pts.append(x + 1j * y)
        return pts


def prepotential_periods(model: PrepotentialModel, t, order: int = 4) -> PeriodJet:
    """Period jet of a prepotential model at ``t`` (analytic, order <= 4)."""
    if order > 4:
        raise ValueError("order must be at most 4")
    return model.jet(t, order=order)
