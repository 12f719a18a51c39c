"""Random test instances: states, bases, unitaries and partitions."""
from __future__ import annotations

import numpy as np

from .effective import PartitionProjectors
from .operators import DensityOperator, Ket


def random_ket(rng: np.random.Generator, dim: int) -> Ket:
    """Haar-random pure state."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return Ket(v / np.linalg.norm(v))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_orthonormal_kets(rng: np.random.Generator, n: int, ambient_dim: int) -> list[Ket]:
    """``n`` orthonormal kets spanning a random n-dimensional subspace."""
    u = random_unitary(rng, ambient_dim)
    return [Ket(u[:, i]) for i in range(n)]


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> DensityOperator:
    """Random mixed state of the given rank (full rank by default)."""
    k = dim if rank is None else rank
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)


def random_state_on_span(rng: np.random.Generator, kets, mixed: bool = False) -> DensityOperator:
    """Random density operator supported on the span of ``kets``."""
    frame = np.stack([k.amplitudes for k in kets], axis=1)
    n = frame.shape[1]
    if mixed:
        red = random_density(rng, n).entries
    else:
        c = random_ket(rng, n).amplitudes
        red = np.outer(c, c.conj())
    return DensityOperator(frame @ red @ frame.conj().T)


def random_partition(rng: np.random.Generator, ambient_dim: int, n: int) -> PartitionProjectors:
    """Random partition of the basis indices into ``n`` nonempty blocks."""
    if not 1 <= n <= ambient_dim:
        raise ValueError(f"cannot split {ambient_dim} indices into {n} nonempty blocks")
    perm = rng.permutation(ambient_dim)
    cuts = np.sort(rng.choice(np.arange(1, ambient_dim), size=n - 1, replace=False))
    return PartitionProjectors.from_index_sets(ambient_dim, np.split(perm, cuts))
