"""The polarization Q on H^3."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SymmetryError


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    """Integral antisymmetric bilinear pairing ``Q(v, w) = v @ matrix @ w``.

    The repo-wide convention is the standard form
    ``Q(v, w) = sum_a (v_a w_{a+n+1} - v_{a+n+1} w_a)``, see :meth:`standard`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if not np.issubdtype(m.dtype, np.integer):
            if not np.allclose(m, np.round(m)):
                raise SymmetryError("Q must have integer entries")
            m = np.round(m).astype(np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise SymmetryError(f"Q must be an even-dimensional square matrix, got {m.shape}")
        if np.any(m != -m.T):
            raise SymmetryError("Q must be antisymmetric")
        if round(np.linalg.det(m)) == 0:
            raise SymmetryError("Q must be invertible")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def standard(cls, n: int) -> "SymplecticForm":
        """Standard form on C^{2n+2} for ``n`` moduli."""
        h = n + 1
        J = np.zeros((2 * h, 2 * h), dtype=np.int64)
        J[:h, h:] = np.eye(h, dtype=np.int64)
        J[h:, :h] = -np.eye(h, dtype=np.int64)
        return cls(J)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.dim // 2 - 1

    def pair(self, v, w):
        """Bilinear pairing; works for complex and object (mpmath) arrays."""
        v = np.asarray(v)
        w = np.asarray(w)
        if v.dtype == object or w.dtype == object:
            return v.dot(self.matrix.astype(object).dot(w))
        return v @ self.matrix @ w

    def is_infinitesimal_isometry(self, N, atol: float = 0.0) -> float:
        """Residual of ``Q(Nv, w) + Q(v, Nw) = 0`` as a matrix max-norm."""
        N = np.asarray(N)
        return float(np.max(np.abs(N.T @ self.matrix + self.matrix @ N)))

    def __eq__(self, other):
        return isinstance(other, SymplecticForm) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())
