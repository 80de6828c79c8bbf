"""Holomorphic jets of period vectors and their exact transformations.

A :class:`PeriodJet` stores ``d_{i1} ... d_{ik} Omega`` at one point for
all sorted index tuples up to some order. Coordinate changes and gauge
rescalings ``Omega -> exp(f) Omega`` are applied exactly by composing
truncated multivariate Taylor polynomials.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .numeric import indices_to_exponent, multi_indices

if TYPE_CHECKING:
    from .families.symplectic import SymplecticForm

__all__ = ["PeriodJet", "gauge_transform", "coordinate_transform"]


@dataclass(frozen=True)
class PeriodJet:
    """Period vector and its holomorphic derivatives at ``point``.

    ``derivs`` maps sorted index tuples to vectors in C^{2n+2}; ``()`` is
    Omega itself, ``(0, 1)`` is d_0 d_1 Omega, and so on. Lookups through
    :meth:`d` accept indices in any order.
    """

    point: np.ndarray
    derivs: dict
    Q: SymplecticForm
    order: int = field(default=-1)

    def __post_init__(self):
        pt = np.atleast_1d(np.asarray(self.point, dtype=complex))
        object.__setattr__(self, "point", pt)
        n = pt.size
        order = max((len(k) for k in self.derivs), default=0)
        object.__setattr__(self, "order", order)
        missing = [k for k in multi_indices(n, order) if k not in self.derivs]
        if missing:
            raise ValueError(f"jet is missing derivatives {missing[:3]}...")

    @property
    def n(self) -> int:
        return self.point.size

    @property
    def omega(self) -> np.ndarray:
        return self.derivs[()]

    def d(self, *idx) -> np.ndarray:
        return self.derivs[tuple(sorted(idx))]

    def pair(self, a, b):
        return self.Q.pair(a, b)


# ---------------------------------------------------------------------------
# truncated Taylor polynomials: dict exponent-tuple -> coefficient

def _poly_mul(a: dict, b: dict, order: int) -> dict:
    out = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) > order:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return out


def _poly_exp(f: dict, n: int, order: int) -> dict:
    """exp of a polynomial with zero constant term, truncated."""
    zero = (0,) * n
    out = {zero: 1.0 + 0j}
    term = {zero: 1.0 + 0j}
    for k in range(1, order + 1):
        term = _poly_mul(term, f, order)
        term = {e: c / k for e, c in term.items()}
        for e, c in term.items():
            out[e] = out.get(e, 0) + c
    return out


def _jet_to_taylor(jet: PeriodJet) -> dict:
    n = jet.n
    out = {}
    for idx, v in jet.derivs.items():
        alpha = indices_to_exponent(idx, n)
        out[alpha] = v / math.prod(math.factorial(a) for a in alpha)
    return out


def _taylor_to_jet(poly: dict, point, Q, n: int, order: int, dim: int) -> PeriodJet:
    derivs = {}
    for idx in multi_indices(n, order):
        alpha = indices_to_exponent(idx, n)
        c = poly.get(alpha, np.zeros(dim, dtype=complex))
        derivs[idx] = np.asarray(c, dtype=complex) * math.prod(math.factorial(a) for a in alpha)
    return PeriodJet(point=point, derivs=derivs, Q=Q)


def gauge_transform(jet: PeriodJet, f0: complex = 0.0, grad=None, hess=None) -> PeriodJet:
    """Jet of ``exp(f) Omega`` for ``f = f0 + grad.u + u.hess.u / 2``, ``u = t - p``.

    The product is expanded by Leibniz (as truncated Taylor series), so
    the result is exact to the order of the input jet.
    """
    n, order = jet.n, jet.order
    f = {}
    if grad is not None:
        for i, c in enumerate(np.atleast_1d(grad)):
            e = [0] * n
            e[i] = 1
            f[tuple(e)] = complex(c)
    if hess is not None:
        hess = np.atleast_2d(hess)
        for i, j in itertools.product(range(n), repeat=2):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            f[tuple(e)] = f.get(tuple(e), 0) + 0.5 * complex(hess[i, j])
    ef = _poly_exp(f, n, order)
    prod = _poly_mul(ef, _jet_to_taylor(jet), order)
    prod = {e: np.exp(f0) * c for e, c in prod.items()}
    return _taylor_to_jet(prod, jet.point, jet.Q, n, order, jet.omega.size)


def coordinate_transform(jet: PeriodJet, linear, quadratic=None, new_point=None) -> PeriodJet:
    """Re-express a jet in coordinates ``s`` with ``t - p = linear @ s + quadratic(s, s)``.

    ``quadratic[i, a, b]`` holds the coefficient of ``s_a s_b`` in
    ``t_i - p_i`` (symmetric in ``a, b``). The new jet is centred at
    ``s = 0`` unless ``new_point`` is given (it is only a label).
    """
    E = np.atleast_2d(np.asarray(linear, dtype=complex))
    n_old, n_new = E.shape
    order = jet.order
    subs = []
    for i in range(n_old):
        p = {}
        for a in range(n_new):
            e = [0] * n_new
            e[a] = 1
            p[tuple(e)] = E[i, a]
        if quadratic is not None:
            for a, b in itertools.product(range(n_new), repeat=2):
                e = [0] * n_new
                e[a] += 1
                e[b] += 1
                p[tuple(e)] = p.get(tuple(e), 0) + complex(quadratic[i, a, b])
        subs.append(p)
    zero = (0,) * n_new
    # powers of each substituted coordinate, cached
    powers = []
    for p in subs:
        pw = [{zero: 1.0 + 0j}]
        for _ in range(order):
            pw.append(_poly_mul(pw[-1], p, order))
        powers.append(pw)
    out = {}
    for alpha, coef in _jet_to_taylor(jet).items():
        term = {zero: 1.0 + 0j}
        for i, a in enumerate(alpha):
            if a:
                term = _poly_mul(term, powers[i][a], order)
        for e, c in term.items():
            out[e] = out.get(e, 0) + c * coef
    point = np.zeros(n_new, dtype=complex) if new_point is None else new_point
    return _taylor_to_jet(out, point, jet.Q, n_new, order, jet.omega.size)

