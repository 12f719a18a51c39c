"""
Dimension-free standard frame for the measurement simplex.

Take N mutually orthogonal vectors ``m_i`` of squared length N and their
mean ``R`` (a unit vector with ``m_i . R = 1``).  The simplex vertices are
recovered as ``n_i = (m_i - R) / sqrt(N - 1)``, and a point on the simplex
is translated to ``s = sqrt(N - 1) r_par + R``.  After rescaling by
``1/sqrt(N)`` the outcome probability is the plain scalar product
``s~ . m~_i`` with orthonormal ``m~_i``.

The frame is realised in N coordinates with ``m_i = sqrt(N) e_i``: only
scalar products matter, and in these coordinates ``s~`` is literally the
vector of barycentric weights.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class StandardFrame:
    m: np.ndarray          # rows m_i, shape (N, N)
    R: np.ndarray
    m_tilde: np.ndarray
    R_tilde: np.ndarray

    @property
    def n_outcomes(self) -> int:
        return self.m.shape[0]

    def vertices(self) -> np.ndarray:
        """Simplex vertices ``n_i = (m_i - R) / sqrt(N - 1)`` as rows."""
        return (self.m - self.R) / np.sqrt(self.n_outcomes - 1)

    def vertex_limit_defect(self) -> float:
        """``||n_i - m~_i||``, identical for every i; tends to 0 as N grows."""
        return float(np.linalg.norm(self.vertices()[0] - self.m_tilde[0]))


def build_standard_frame(n: int) -> StandardFrame:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    m = np.sqrt(n) * np.eye(n)
    R = m.mean(axis=0)
    arrays = [m, R, m / np.sqrt(n), R / np.sqrt(n)]
    for a in arrays:
        a.setflags(write=False)
    return StandardFrame(*arrays)


def to_standard_state(p, frame: StandardFrame) -> np.ndarray:
    """Rescaled translated state ``s~`` for on-simplex weights ``p``.

    Follows the chain ``r_par = sum p_i n_i``, ``s = sqrt(N-1) r_par + R``,
    ``s~ = s / sqrt(N)`` literally rather than short-cutting to ``p``.
    """
    p = np.asarray(p, dtype=np.float64)
    n = frame.n_outcomes
    if p.shape != (n,):
        raise ValueError(f"expected {n} weights, got shape {p.shape}")
    r_par = p @ frame.vertices()
    s = np.sqrt(n - 1) * r_par + frame.R
    return s / np.sqrt(n)


def standard_transition_probability(s_tilde, m_tilde_i) -> float:
    return float(np.dot(s_tilde, m_tilde_i))


def standard_probabilities(s_tilde, frame: StandardFrame) -> np.ndarray:
    return frame.m_tilde @ np.asarray(s_tilde)
