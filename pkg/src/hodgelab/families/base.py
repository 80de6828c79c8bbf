"""Common interface of all families of period vectors."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod

import numpy as np

from ..errors import DomainError
from ..jet import PeriodJet
from ..numeric import contour_jet
from .symplectic import SymplecticForm


class FamilyModel(ABC):
    """A holomorphic family ``t -> Omega(t)`` in C^{2n+2} with a pairing Q.

    Subclasses supply :meth:`periods` and usually an analytic :meth:`jet`;
    the fallback jet uses nested Cauchy integrals.
    """

    name: str = "model"
    n: int
    Q: SymplecticForm

    @abstractmethod
    def periods(self, t) -> np.ndarray:
        """Omega(t)."""

    def in_domain(self, t) -> bool:
        return True

    def analyticity_radius(self, t) -> float:
        return math.inf

    def local_scale(self, t) -> float:
        """Length scale on which the geometry varies near ``t``."""
        r = self.analyticity_radius(t)
        return 1.0 if math.isinf(r) else r

    def check_point(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=complex))
        if t.size != self.n:
            raise DomainError(f"{self.name}: expected {self.n} coordinates, got {t.size}")
        if not self.in_domain(t):
            raise DomainError(f"{self.name}: point {t} outside the declared domain")
        return t

    def jet(self, t, order: int = 4, check_domain: bool = True) -> PeriodJet:
        t = self.check_point(t) if check_domain else np.atleast_1d(np.asarray(t, dtype=complex))
        radius = 0.1 * self.local_scale(t)
        derivs, _ = contour_jet(self.periods, t, order=order, radius=radius,
                                analyticity_radius=self.analyticity_radius(t))
        return PeriodJet(point=t, derivs=derivs, Q=self.Q)

    def sample_points(self, count: int, seed: int = 0) -> list:
        """Pseudo-random points of the declared domain (deterministic)."""
        raise NotImplementedError(f"{type(self).__name__} has no sampling domain")

    def __repr__(self):
        return f"{type(self).__name__}(name={self.name!r}, n={self.n})"
