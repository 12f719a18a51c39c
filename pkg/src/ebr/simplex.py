"""
Measurement simplex geometry.

The simplex vertices are the Bloch vectors ``n_i`` of the outcome
projectors.  A state ``r`` falls orthogonally onto the simplex at
``r_par = sum_i p_i n_i`` where ``p_i = (1/N)(1 + (N-1) r . n_i)`` are both
the barycentric coordinates of ``r_par`` and the Born probabilities.  The
sub-region ``A_i`` is the simplex with vertex ``n_i`` replaced by
``r_par``; its relative volume equals ``p_i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import BlochVector, reduced_to_bloch, to_bloch
from .errors import DegenerateSimplex, DimMismatch, NegativeProbability
from .generators import GeneratorBasis, build_generators
from .operators import DEFAULT_TOL, Ket, Tolerances


@dataclass(frozen=True, eq=False)
class MeasurementSimplex:
    """The N vertex Bloch vectors, stored as rows of ``vertices``."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=np.float64, copy=True)
        n = v.shape[0]
        if v.ndim != 2 or v.shape[1] != n * n - 1:
            raise DimMismatch(f"expected an N x (N**2-1) vertex array, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n_outcomes(self) -> int:
        return self.vertices.shape[0]

    def vertex(self, i: int) -> BlochVector:
        return BlochVector(self.vertices[i])

    def gram(self) -> np.ndarray:
        return self.vertices @ self.vertices.T

    def gram_defect(self) -> float:
        """Max deviation from ``n_i . n_j = -1/(N-1) + delta_ij N/(N-1)``."""
        n = self.n_outcomes
        target = (n * np.eye(n) - 1.0) / (n - 1)
        return float(np.abs(self.gram() - target).max())

    def to_json(self) -> dict:
        return {"n": self.n_outcomes, "vertices": self.vertices.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "MeasurementSimplex":
        s = cls(obj["vertices"])
        if "n" in obj and obj["n"] != s.n_outcomes:
            raise DimMismatch(f"n={obj['n']} but {s.n_outcomes} vertices given")
        return s


@dataclass(frozen=True, eq=False)
class OnSimplexState:
    """Result of the deterministic stage: ``r_par`` and its barycentric weights."""

    r_par: BlochVector
    bary: np.ndarray
    r_perp_norm: float


def simplex_from_basis(gb: GeneratorBasis) -> MeasurementSimplex:
    """Vertices ``n_i = to_bloch(|phi_i><phi_i|)`` for the basis' own outcome kets."""
    n = gb.n_outcomes
    verts = np.empty((n, n * n - 1))
    for i in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[i, i] = 1.0
        verts[i] = reduced_to_bloch(e, gb)
    return MeasurementSimplex(verts)


def build_simplex(outcome_kets, gb: GeneratorBasis | None = None, tol: Tolerances = DEFAULT_TOL) -> MeasurementSimplex:
    """Measurement simplex for ``outcome_kets`` expressed in basis ``gb``.

    When ``gb`` is omitted it is built from the same kets.  Passing a
    different basis gives the vertices of another measurement in a fixed
    representation, provided the kets lie in the span of ``gb``.
    """
    if gb is None:
        gb = build_generators(outcome_kets, tol)
        return simplex_from_basis(gb)
    verts = [to_bloch(k if isinstance(k, Ket) else Ket(k), gb, tol).coords for k in outcome_kets]
    return MeasurementSimplex(np.array(verts))


def transition_probabilities(r, s: MeasurementSimplex, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``p_i = (1/N)(1 + (N-1) r . n_i)``.

    Raises
    ------
    NegativeProbability
        If some ``p_i < -tol.positivity``, which means ``r`` is not a
        bona fide state.
    """
    n = s.n_outcomes
    p = (1.0 + (n - 1) * (s.vertices @ np.asarray(r, dtype=np.float64))) / n
    if p.min() < -tol.positivity:
        raise NegativeProbability(f"probability {p.min():.3e} < 0: vector is not a bona fide state")
    return p


def clamp_probabilities(p: np.ndarray) -> np.ndarray:
    """Zero out round-off negatives and renormalise."""
    if p.min() >= 0.0:
        return p
    q = np.clip(p, 0.0, None)
    return q / q.sum()


def project_onto_simplex(r, s: MeasurementSimplex, tol: Tolerances = DEFAULT_TOL) -> OnSimplexState:
    """Orthogonal fall of ``r`` onto the simplex.

    ``r_par`` is assembled from the barycentric weights instead of being
    solved for; ``(r - r_par)`` is then orthogonal to every edge.
    """
    rv = np.asarray(r, dtype=np.float64)
    p = clamp_probabilities(transition_probabilities(rv, s, tol))
    r_par = p @ s.vertices
    return OnSimplexState(BlochVector(r_par), p, float(np.linalg.norm(rv - r_par)))


def subregion_measure_ratio(st: OnSimplexState, i: int) -> float:
    """Relative volume ``mu(A_i) / mu(simplex)``, which is the weight ``p_i``."""
    if not 0 <= i < len(st.bary):
        raise IndexError(f"outcome index {i} out of range for N={len(st.bary)}")
    if st.bary.min() < 0:
        raise NegativeProbability("barycentric weights must be nonnegative")
    return float(st.bary[i])


def subregion_vertices(vertices: np.ndarray, point: np.ndarray, i: int) -> np.ndarray:
    """Vertices of ``A_i``: the simplex with vertex ``i`` replaced by ``point``."""
    out = np.array(vertices, dtype=np.float64, copy=True)
    out[i] = point
    return out


def cayley_menger_volume(points) -> float:
    """M-dimensional volume of the simplex spanned by M + 1 points.

    Uses only pairwise squared distances:

        V**2 = (-1)**(M+1) / (2**M (M!)**2) det(CM)

    where CM is the distance matrix bordered by a row and column of ones.

    Raises
    ------
    DegenerateSimplex
        If the edge vectors are linearly dependent (Gram determinant, scaled
        by the edge lengths, below 1e-14).
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    m = pts.shape[0] - 1
    if m < 1:
        raise DegenerateSimplex("need at least two points")
    edges = pts[1:] - pts[0]
    lengths = np.linalg.norm(edges, axis=1)
    if lengths.min() == 0.0:
        raise DegenerateSimplex("repeated vertex")
    unit = edges / lengths[:, None]
    if abs(np.linalg.det(unit @ unit.T)) < 1e-14:
        raise DegenerateSimplex("points are affinely dependent")

    diff = pts[:, None, :] - pts[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    cm = np.ones((m + 2, m + 2))
    cm[0, 0] = 0.0
    cm[1:, 1:] = d2
    v2 = (-1) ** (m + 1) * np.linalg.det(cm) / (2.0**m * math.factorial(m) ** 2)
    return math.sqrt(max(v2, 0.0))


def barycentric_coordinates(point, vertices) -> np.ndarray:
    """Affine weights of ``point`` with respect to ``vertices`` (rows).

    Solved by least squares on the augmented system
    ``[V^T; 1] w = [point; 1]``; no assumption on the vertex geometry.
    """
    v = np.asarray(vertices, dtype=np.float64)
    a = np.vstack([v.T, np.ones(v.shape[0])])
    b = np.append(np.asarray(point, dtype=np.float64), 1.0)
    w, *_ = np.linalg.lstsq(a, b, rcond=None)
    return w
