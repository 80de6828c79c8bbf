"""Scalar arithmetic backends.

Everything that has to survive evaluation very close to a puncture (the
nilpotent-orbit periods and the degeneration scans) does its scalar work
through a :class:`ScalarContext`, so double precision can be swapped for
mpmath without touching the algorithms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np


@dataclass(frozen=True)
class ScalarContext:
    """Double precision (``dps is None``) or mpmath with ``dps`` digits."""

    dps: int | None = None
    _mp: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.dps is not None:
            ctx = mpmath.mp.clone()
            ctx.dps = self.dps
            object.__setattr__(self, "_mp", ctx)

    @property
    def extended(self) -> bool:
        return self.dps is not None

    @property
    def eps(self) -> float:
        if self.extended:
            return float(self._mp.mpf(2) ** (-self._mp.prec))
        return float(np.finfo(float).eps)

    # scalars -------------------------------------------------------------
    def scalar(self, x):
        if self.extended:
            return self._mp.mpc(x)
        return complex(x)

    def real(self, x):
        if self.extended:
            return self._mp.mpf(x)
        return float(x)

    def pi(self):
        return self._mp.pi if self.extended else math.pi

    def log(self, z):
        return self._mp.log(z) if self.extended else cmath.log(z)

    def exp(self, z):
        return self._mp.exp(z) if self.extended else cmath.exp(z)

    def sqrt(self, x):
        return self._mp.sqrt(x) if self.extended else cmath.sqrt(x)

    # arrays --------------------------------------------------------------
    def array(self, x):
        """Complex array in this precision (object dtype when extended)."""
        if self.extended:
            a = np.asarray(x, dtype=object)
            out = np.empty(a.shape, dtype=object)
            for idx, v in np.ndenumerate(a):
                out[idx] = self._mp.mpc(v)
            return out
        return np.asarray(x, dtype=complex)

    def to_complex(self, x):
        """Round an array or scalar back to numpy complex128."""
        if isinstance(x, np.ndarray):
            if x.dtype == object:
                return np.array([complex(v) for v in x.ravel()], dtype=complex).reshape(x.shape)
            return x.astype(complex)
        return complex(x)


DOUBLE = ScalarContext()


def extended(dps: int = 50) -> ScalarContext:
    """mpmath context with ``dps`` significant decimal digits."""
    return ScalarContext(dps=dps)
