"""
Density operators <-> real Bloch vectors.

The forward map is ``D = (1/N)(I_N + c_N r . Lambda)`` with
``c_N = sqrt(N(N-1)/2)``.  Since ``Tr(Lambda_i Lambda_j) = 2 delta_ij``,
taking ``Tr(D Lambda_i)`` gives ``(2 c_N / N) r_i``, hence the inverse
``r_i = N / (2 c_N) Tr(D Lambda_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, OutsideSpan
from .generators import GeneratorBasis
from .operators import DEFAULT_TOL, DensityOperator, Ket, Tolerances, min_eigenvalue


@dataclass(frozen=True, eq=False)
class BlochVector:
    """Real coordinates of length N**2 - 1 relative to a generator basis."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=np.float64, copy=True).reshape(-1)
        n = int(round(np.sqrt(c.size + 1)))
        if n * n - 1 != c.size or n < 2:
            raise DimMismatch(f"Bloch vector length {c.size} is not N**2 - 1 for any N >= 2")
        if not np.all(np.isfinite(c)):
            raise ValueError("Bloch vector has non-finite coordinates")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def n_outcomes(self) -> int:
        return int(round(np.sqrt(self.coords.size + 1)))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def __array__(self, dtype=None, copy=None):
        return self.coords if dtype is None else self.coords.astype(dtype)

    def __neg__(self):
        return BlochVector(-self.coords)

    def dot(self, other) -> float:
        return float(self.coords @ np.asarray(other))

    def to_json(self) -> dict:
        return {"n": self.n_outcomes, "coords": self.coords.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "BlochVector":
        v = cls(obj["coords"])
        if "n" in obj and obj["n"] != v.n_outcomes:
            raise DimMismatch(f"n={obj['n']} inconsistent with {v.coords.size} coordinates")
        return v


def _matrix(D) -> np.ndarray:
    return D.entries if isinstance(D, DensityOperator) else np.asarray(D, dtype=np.complex128)


def reduced_to_bloch(d_red: np.ndarray, gb: GeneratorBasis) -> np.ndarray:
    """Bloch coordinates of an N x N operator already expressed on the outcome span."""
    n = gb.n_outcomes
    # Tr(D L_i) = sum_ab D_ab L_i,ba
    t = np.einsum("ab,gba->g", d_red, gb.standard)
    return (n / (2.0 * gb.c_n)) * t.real


def to_bloch(D, gb: GeneratorBasis, tol: Tolerances = DEFAULT_TOL) -> BlochVector:
    """Bloch vector of a state supported on the outcome span.

    ``D`` may be a :class:`DensityOperator`, a square array, or a
    :class:`Ket` (treated as ``|k><k|`` without forming the ambient matrix).

    Raises
    ------
    OutsideSpan
        If ``Tr(D I_N)`` differs from 1 by more than ``tol.orthonormality``,
        i.e. part of the state lies outside the span of the outcome kets.
    """
    if isinstance(D, Ket):
        if D.dim != gb.ambient_dim:
            raise DimMismatch(f"ket dim {D.dim} does not match ambient dim {gb.ambient_dim}")
        c = gb.frame.conj().T @ D.amplitudes
        red = np.outer(c, c.conj())
    else:
        m = _matrix(D)
        if m.shape != (gb.ambient_dim, gb.ambient_dim):
            raise DimMismatch(f"operator shape {m.shape} does not match ambient dim {gb.ambient_dim}")
        red = gb.reduce(m)
    weight = np.trace(red).real
    if abs(weight - 1.0) > tol.orthonormality:
        raise OutsideSpan(f"state has weight {weight:.12g} on the outcome span, expected 1")
    return BlochVector(reduced_to_bloch(red, gb))


def reduced_from_bloch(r, gb: GeneratorBasis) -> np.ndarray:
    n = gb.n_outcomes
    coords = np.asarray(r, dtype=np.float64)
    if coords.shape != (n * n - 1,):
        raise DimMismatch(f"expected {n * n - 1} coordinates for N={n}, got {coords.shape}")
    return (np.eye(n) + gb.c_n * np.einsum("g,gab->ab", coords, gb.standard)) / n


def from_bloch(r, gb: GeneratorBasis) -> DensityOperator:
    """``(1/N)(I_N + c_N r . Lambda)`` as an ambient operator.

    Hermitian with unit trace by construction; positivity is not checked
    (see :func:`is_bona_fide`).
    """
    return DensityOperator(gb.embed(reduced_from_bloch(r, gb)))


def is_bona_fide(r, gb: GeneratorBasis, tol: Tolerances = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether ``r`` corresponds to a positive semidefinite operator.

    Returns ``(ok, min_eigenvalue)``.  The spectrum is taken on the outcome
    span; the ambient operator only adds zeros.
    """
    lam = min_eigenvalue(reduced_from_bloch(r, gb))
    return lam >= -tol.positivity, lam


def purity(r) -> float:
    """``Tr(D**2)`` predicted from the Bloch vector alone."""
    c = np.asarray(r, dtype=np.float64)
    n = int(round(np.sqrt(c.size + 1)))
    return (1.0 + (n - 1) * float(c @ c)) / n
