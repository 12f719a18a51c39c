"""
Generalised Gell-Mann generators built on an arbitrary orthonormal outcome set.

Given N orthonormal kets ``phi_1..phi_N`` living in a Hilbert space of
dimension ``d >= N``, the N**2 - 1 generators are

    U_jk = |j><k| + |k><j|
    V_jk = -i (|j><k| - |k><j|)
    W_l  = sqrt(2 / (l (l+1))) (sum_{j<=l} |j><j| - l |l+1><l+1|)

ordered level by level, which for N = 3 is exactly the Gell-Mann order::

    U12 V12 W1 | U13 V13 U23 V23 W2 | U14 V14 U24 V24 U34 V34 W3 | ...

This ordering fixes the meaning of every Bloch coordinate and is part of
the serialised format (see :data:`GENERATOR_ORDERING`).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotOrthonormal
from .operators import DEFAULT_TOL, Ket, Tolerances

GENERATOR_ORDERING = "gell-mann-levels/v1"


def generator_labels(n: int) -> list[str]:
    """Names of the generators in storage order, e.g. ``['U12', 'V12', 'W1']``."""
    labels = []
    for k in range(2, n + 1):
        for j in range(1, k):
            labels += [f"U{j}{k}", f"V{j}{k}"]
        labels.append(f"W{k - 1}")
    return labels


def standard_generators(n: int) -> np.ndarray:
    """The N**2 - 1 generators in the computational basis of C^N.

    Returns an array of shape ``(n*n - 1, n, n)``.
    """
    if n < 2:
        raise ValueError(f"need at least two outcomes, got n={n}")
    out = np.zeros((n * n - 1, n, n), dtype=np.complex128)
    i = 0
    for k in range(1, n):
        for j in range(k):
            out[i, j, k] = out[i, k, j] = 1.0
            out[i + 1, j, k] = -1j
            out[i + 1, k, j] = 1j
            i += 2
        l = k  # W_l with l = k (1-based level)
        diag = np.zeros(n)
        diag[:l] = 1.0
        diag[l] = -l
        out[i] = np.diag(np.sqrt(2.0 / (l * (l + 1))) * diag)
        i += 1
    return out


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    """Generators attached to a specific set of outcome kets.

    ``frame`` is the ``d x N`` isometry whose columns are the outcome kets;
    every ambient generator is ``frame @ standard[i] @ frame^dagger``.
    """

    frame: np.ndarray
    standard: np.ndarray

    @property
    def n_outcomes(self) -> int:
        return self.frame.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[0]

    @property
    def c_n(self) -> float:
        n = self.n_outcomes
        return np.sqrt(n * (n - 1) / 2.0)

    @property
    def outcome_kets(self) -> list[Ket]:
        return [Ket(self.frame[:, i]) for i in range(self.n_outcomes)]

    @cached_property
    def generators(self) -> np.ndarray:
        """Ambient generators, shape ``(N**2 - 1, d, d)``."""
        f = self.frame
        return np.einsum("ai,gij,bj->gab", f, self.standard, f.conj(), optimize=True)

    @cached_property
    def sub_identity(self) -> np.ndarray:
        """``I_N``, the projector onto the span of the outcome kets."""
        return self.frame @ self.frame.conj().T

    def reduce(self, op: np.ndarray) -> np.ndarray:
        """Compress an ambient operator onto the outcome span (N x N)."""
        return self.frame.conj().T @ op @ self.frame

    def embed(self, op: np.ndarray) -> np.ndarray:
        """Lift an N x N operator on the outcome span into the ambient space."""
        return self.frame @ op @ self.frame.conj().T

    @property
    def labels(self) -> list[str]:
        return generator_labels(self.n_outcomes)

    def to_json(self) -> dict:
        gens = []
        for label, g in zip(self.labels, self.generators):
            rows = [[[z.real, z.imag] for z in row] for row in g.tolist()]
            gens.append({"label": label, "dim": self.ambient_dim, "entries": rows})
        return {
            "n": self.n_outcomes,
            "ambient_dim": self.ambient_dim,
            "ordering": GENERATOR_ORDERING,
            "generators": gens,
        }


def _frame_from_kets(kets) -> np.ndarray:
    cols = [k.amplitudes if isinstance(k, Ket) else np.asarray(k, dtype=np.complex128) for k in kets]
    dims = {c.shape[0] for c in cols}
    if len(dims) != 1:
        raise NotOrthonormal(f"outcome kets have differing dimensions {sorted(dims)}")
    return np.stack(cols, axis=1)


def gram_defect(frame: np.ndarray) -> float:
    """Max entrywise deviation of ``frame^dagger frame`` from the identity."""
    g = frame.conj().T @ frame
    return float(np.abs(g - np.eye(g.shape[0])).max())


def build_generators(outcome_kets, tol: Tolerances = DEFAULT_TOL) -> GeneratorBasis:
    """Build the generator basis from N >= 2 orthonormal outcome kets.

    Parameters
    ----------
    outcome_kets : sequence of Ket or 1-d complex arrays
        The outcome states ``phi_1..phi_N``, all of the same ambient
        dimension ``d >= N``.

    Raises
    ------
    NotOrthonormal
        If the Gram matrix of the kets deviates from the identity by more
        than ``tol.orthonormality``.
    """
    frame = _frame_from_kets(outcome_kets)
    n = frame.shape[1]
    if n < 2:
        raise ValueError(f"need at least two outcome kets, got {n}")
    if n > frame.shape[0]:
        raise NotOrthonormal(f"{n} kets cannot be orthonormal in dimension {frame.shape[0]}")
    defect = gram_defect(frame)
    if defect > tol.orthonormality:
        raise NotOrthonormal(f"outcome kets have Gram defect {defect:.3e}")
    frame = frame.copy()
    frame.setflags(write=False)
    return GeneratorBasis(frame, standard_generators(n))


def computational_basis(n: int, ambient_dim: int | None = None) -> GeneratorBasis:
    """Generators for the first ``n`` computational basis kets of C^ambient_dim."""
    d = n if ambient_dim is None else ambient_dim
    return build_generators(np.eye(d, n, dtype=np.complex128).T)


def generator_gram(gb: GeneratorBasis) -> np.ndarray:
    """Real matrix of ``Tr(Lambda_i Lambda_j)``; equals ``2 I`` for a valid basis.

    Computed from the ambient operators rather than the reduced ones so it
    checks the embedding as well.
    """
    g = gb.generators
    # Tr(A B) = sum_ab A_ab B_ba
    gram = np.einsum("iab,jba->ij", g, g, optimize=True)
    return gram.real
