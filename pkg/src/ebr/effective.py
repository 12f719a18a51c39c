"""
Degenerate measurements on high-dimensional entities.

A measurement with N outcomes on a d-dimensional space is a partition of
unity by orthogonal projectors ``P_1..P_N``.  For a pure state ``psi`` the
outcome states are ``phi_i = P_i psi / ||P_i psi||``; they are orthonormal,
so they define an N-outcome simplex in the generator basis built on them,
and ``psi = sum_i ||P_i psi|| phi_i`` lies in their span.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import BlochVector, to_bloch
from .errors import (
    DimMismatch,
    EmptyInterval,
    InvalidPartition,
    NotUnitary,
    ZeroProbabilityBranch,
)
from .generators import GeneratorBasis, build_generators
from .operators import DEFAULT_TOL, DensityOperator, Ket, Tolerances, ket_from_amplitudes
from .simplex import MeasurementSimplex, simplex_from_basis, transition_probabilities


class PartitionProjectors:
    """Mutually orthogonal projectors ``P_1..P_N`` summing to the identity.

    Partitions of basis indices are stored as boolean masks (shape
    ``(N, d)``) so that large grids never materialise ``N`` dense ``d x d``
    matrices; general projectors are stored densely (shape ``(N, d, d)``).
    """

    def __init__(self, projectors=None, *, masks=None):
        if (projectors is None) == (masks is None):
            raise ValueError("give exactly one of projectors or masks")
        if masks is not None:
            m = np.array(masks, dtype=bool, copy=True)
            if m.ndim != 2:
                raise DimMismatch(f"masks must have shape (N, d), got {m.shape}")
            m.setflags(write=False)
            self.masks, self._dense = m, None
        else:
            p = np.array(projectors, dtype=np.complex128, copy=True)
            if p.ndim != 3 or p.shape[1] != p.shape[2]:
                raise DimMismatch(f"expected an (N, d, d) array of projectors, got {p.shape}")
            p.setflags(write=False)
            self.masks, self._dense = None, p

    @property
    def n_outcomes(self) -> int:
        return (self.masks if self.masks is not None else self._dense).shape[0]

    @property
    def ambient_dim(self) -> int:
        return (self.masks if self.masks is not None else self._dense).shape[1]

    @property
    def projectors(self) -> np.ndarray:
        """Dense ``(N, d, d)`` array (built on demand for mask partitions)."""
        if self._dense is None:
            d = self.ambient_dim
            p = np.zeros((self.n_outcomes, d, d), dtype=np.complex128)
            idx = np.arange(d)
            p[:, idx, idx] = self.masks
            p.setflags(write=False)
            self._dense = p
        return self._dense

    def __getitem__(self, i: int) -> np.ndarray:
        return self.projectors[i]

    def apply(self, vec) -> np.ndarray:
        """Rows ``P_i v`` for every outcome, shape ``(N, d)``."""
        v = np.asarray(vec, dtype=np.complex128)
        if self.masks is not None:
            return np.where(self.masks, v[None, :], 0.0)
        return np.einsum("kab,b->ka", self._dense, v)

    @property
    def completeness_defect(self) -> float:
        if self.masks is not None:
            return float(np.abs(self.masks.sum(axis=0) - 1).max())
        s = self._dense.sum(axis=0)
        return float(np.abs(s - np.eye(self.ambient_dim)).max())

    def orthogonality_defect(self) -> float:
        """Max entrywise deviation of ``P_i P_j`` from ``delta_ij P_i``."""
        if self.masks is not None:
            # diagonal 0/1 projectors: only overlaps can fail
            return float((self.masks.sum(axis=0) > 1).any())
        p = self._dense
        prod = np.einsum("iab,jbc->ijac", p, p, optimize=True)
        idx = np.arange(self.n_outcomes)
        prod[idx, idx] -= p
        return float(np.abs(prod).max())

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> "PartitionProjectors":
        if self.n_outcomes < 2:
            raise InvalidPartition("a measurement needs at least two outcomes")
        if self.orthogonality_defect() > tol.orthonormality:
            raise InvalidPartition("projectors are not mutually orthogonal idempotents")
        if self.completeness_defect > tol.orthonormality:
            raise InvalidPartition("projectors do not sum to the identity")
        return self

    @classmethod
    def from_index_sets(cls, ambient_dim: int, index_sets) -> "PartitionProjectors":
        """Diagonal projectors selecting disjoint sets of basis indices (0-based)."""
        sets = [sorted(int(i) for i in s) for s in index_sets]
        seen = {}
        for k, s in enumerate(sets):
            if not s:
                raise InvalidPartition(f"index set {k} is empty")
            for i in s:
                if not 0 <= i < ambient_dim:
                    raise InvalidPartition(f"index {i} in set {k} outside 0..{ambient_dim - 1}")
                if i in seen:
                    raise InvalidPartition(f"index {i} appears in sets {seen[i]} and {k}")
                seen[i] = k
        if len(seen) != ambient_dim:
            missing = sorted(set(range(ambient_dim)) - set(seen))
            raise InvalidPartition(f"index sets do not cover indices {missing[:10]}")
        masks = np.zeros((len(sets), ambient_dim), dtype=bool)
        for k, s in enumerate(sets):
            masks[k, s] = True
        return cls(masks=masks).validate()

    def to_json(self) -> dict:
        if self.masks is None:
            raise ValueError("only index-set partitions serialise to JSON")
        sets = [np.flatnonzero(m).tolist() for m in self.masks]
        return {"ambient_dim": self.ambient_dim, "index_sets": sets}


def luders_collapse(D, P, tol: float = 1e-14) -> DensityOperator:
    """``P D P / Tr(P D P)``.

    Raises
    ------
    ZeroProbabilityBranch
        If ``Tr(P D P)`` is below ``tol``.
    """
    d = D.entries if isinstance(D, DensityOperator) else np.asarray(D)
    p = P.entries if isinstance(P, DensityOperator) else np.asarray(P)
    pdp = p @ d @ p
    w = np.trace(pdp).real
    if w <= tol:
        raise ZeroProbabilityBranch(f"branch has probability {w:.3e}")
    return DensityOperator(pdp / w)


@dataclass(frozen=True, eq=False)
class EffectiveMeasurement:
    """Finite-outcome representation of a degenerate measurement of ``psi``.

    Only outcomes with nonzero weight get a simplex vertex; ``surviving``
    maps simplex vertex ``k`` back to partition index ``surviving[k]``.
    """

    psi: Ket
    weights: np.ndarray
    surviving: tuple
    outcome_kets: list
    generators: GeneratorBasis
    simplex: MeasurementSimplex
    bloch_state: BlochVector

    @property
    def n_outcomes(self) -> int:
        return len(self.weights)

    def simplex_probabilities(self) -> np.ndarray:
        """Probabilities of the surviving outcomes, via the Bloch simplex."""
        return transition_probabilities(self.bloch_state, self.simplex)

    def probabilities(self) -> np.ndarray:
        """Probabilities of all N partition outcomes; dropped ones are exactly 0."""
        out = np.zeros(self.n_outcomes)
        out[list(self.surviving)] = self.simplex_probabilities()
        return out

    def reconstruct(self) -> np.ndarray:
        """``sum_i ||P_i psi|| phi_i``, which should equal ``psi``."""
        w = self.weights[list(self.surviving)]
        return sum(wi * k.amplitudes for wi, k in zip(w, self.outcome_kets))


def build_effective_measurement(psi: Ket, parts: PartitionProjectors, tol: Tolerances = DEFAULT_TOL,
                                zero_weight: float = 1e-12) -> EffectiveMeasurement:
    """Outcome states, generators and simplex for measuring ``psi`` with ``parts``.

    Outcomes with ``||P_i psi|| <= zero_weight`` are dropped from the simplex
    and reported with probability 0.  At least two outcomes must survive,
    otherwise the result is certain and there is no simplex to build.
    """
    if psi.dim != parts.ambient_dim:
        raise DimMismatch(f"state dim {psi.dim} vs partition dim {parts.ambient_dim}")
    projected = parts.apply(psi.amplitudes)
    weights = np.linalg.norm(projected, axis=1)
    surviving = tuple(int(i) for i in np.flatnonzero(weights > zero_weight))
    if len(surviving) < 2:
        raise ZeroProbabilityBranch(
            f"only outcome(s) {list(surviving)} have nonzero weight; the measurement is deterministic"
        )
    kets = [Ket(projected[i] / weights[i]) for i in surviving]
    gb = build_generators(kets, tol)
    simplex = simplex_from_basis(gb)
    r = to_bloch(psi, gb, tol)
    w = weights.copy()
    w.setflags(write=False)
    return EffectiveMeasurement(psi, w, surviving, kets, gb, simplex, r)


def discretize_position(x_min: float, x_max: float, n_points: int, wavefunction, edges):
    """Grid version of a position measurement with interval outcomes.

    The grid is cell-centred, ``x_k = x_min + (k + 1/2) dx``, and amplitudes
    carry the rectangle weight ``sqrt(dx)`` before normalisation.  Interval
    ``i`` is the half-open bin ``[edges[i-1], edges[i])`` with the outer
    bins extending to the grid ends.

    Parameters
    ----------
    wavefunction : callable or array
        Either ``f(x)`` evaluated on the grid or precomputed samples.
    edges : sequence of N - 1 increasing reals inside ``(x_min, x_max)``

    Returns
    -------
    (Ket, PartitionProjectors, x)
    """
    edges = np.asarray(edges, dtype=np.float64).reshape(-1)
    if edges.size < 1:
        raise InvalidPartition("N >= 2 outcomes required: give at least one interval edge")
    if np.any(np.diff(edges) <= 0):
        raise InvalidPartition("interval edges must be strictly increasing")
    if edges[0] <= x_min or edges[-1] >= x_max:
        raise InvalidPartition("interval edges must lie strictly inside (x_min, x_max)")
    if n_points < edges.size + 1:
        raise InvalidPartition(f"n_points={n_points} is fewer than the {edges.size + 1} intervals")

    dx = (x_max - x_min) / n_points
    x = x_min + (np.arange(n_points) + 0.5) * dx
    samples = wavefunction(x) if callable(wavefunction) else np.asarray(wavefunction)
    if samples.shape != x.shape:
        raise DimMismatch(f"{samples.shape[0]} samples for a grid of {n_points} points")
    ket = ket_from_amplitudes(np.asarray(samples, dtype=np.complex128) * np.sqrt(dx))

    bins = np.searchsorted(edges, x, side="right")
    n = edges.size + 1
    counts = np.bincount(bins, minlength=n)
    if counts.min() == 0:
        raise EmptyInterval(f"interval {int(np.argmin(counts))} contains no grid point")
    masks = bins[None, :] == np.arange(n)[:, None]
    return ket, PartitionProjectors(masks=masks), x


def rotate_outcome_basis(U, em, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Vertices of the measurement with outcome kets ``phi'_i = sum_j U_ij phi_j``.

    The new vertices are expressed with the generators of ``em`` (an
    :class:`EffectiveMeasurement` or a :class:`GeneratorBasis`), so both
    measurements share one Bloch representation.  Returns an ``(N, N**2-1)``
    array.
    """
    gb = em.generators if isinstance(em, EffectiveMeasurement) else em
    u = np.asarray(U, dtype=np.complex128)
    n = gb.n_outcomes
    if u.shape != (n, n):
        raise DimMismatch(f"U has shape {u.shape}, expected ({n}, {n})")
    if np.abs(u @ u.conj().T - np.eye(n)).max() > tol.orthonormality:
        raise NotUnitary("U U^dagger differs from the identity")
    new_frame = gb.frame @ u.T
    return np.array([to_bloch(Ket(new_frame[:, i]), gb, tol).coords for i in range(n)])


def two_outcome_vertex(u11: complex, u12: complex) -> np.ndarray:
    """Closed form of the first rotated vertex for N = 2.

    With ``z = u11 conj(u12)`` the projector onto ``u11 phi_1 + u12 phi_2``
    has off-diagonal element ``z``, so ``Tr(. U12) = 2 Re z`` and, with
    ``V12 = -i(|1><2| - |2><1|)`` (the Pauli y matrix), ``Tr(. V12) = -2 Im z``.
    """
    z = u11 * np.conj(u12)
    return np.array([2 * z.real, -2 * z.imag, abs(u11) ** 2 - abs(u12) ** 2])
