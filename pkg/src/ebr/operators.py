"""
Finite-dimensional operator algebra: kets, projectors and density operators.

Everything is dense ``complex128``.  Arrays held by :class:`Ket` and
:class:`DensityOperator` are flagged read-only so values can be shared
freely between worker threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatch, ZeroVector


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerance bundle.

    ``algebraic`` covers identities that hold up to round-off (trace,
    Hermiticity, idempotence); ``positivity`` is looser because the smallest
    eigenvalue is the least stable quantity; ``orthonormality`` guards
    input kets, which may come from discretised wavefunctions.
    """

    algebraic: float = 1e-12
    positivity: float = 1e-10
    orthonormality: float = 1e-10


DEFAULT_TOL = Tolerances()


def _frozen(a):
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Ket:
    """Normalised state vector in a ``dim``-dimensional Hilbert space."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes).reshape(-1))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def to_json(self) -> dict:
        return {"dim": self.dim, "amplitudes": [[z.real, z.imag] for z in self.amplitudes.tolist()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Ket":
        amps = [complex(re, im) for re, im in obj["amplitudes"]]
        if "dim" in obj and obj["dim"] != len(amps):
            raise DimMismatch(f"dim={obj['dim']} but {len(amps)} amplitudes given")
        return ket_from_amplitudes(amps)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Square complex matrix meant to be a density operator.

    Construction does not enforce positivity or unit trace; operators built
    from arbitrary Bloch vectors may be unphysical.  Use
    :func:`validate_density` to check.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = _frozen(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimMismatch(f"density operator must be square, got shape {a.shape}")
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def to_json(self) -> dict:
        rows = [[[z.real, z.imag] for z in row] for row in self.entries.tolist()]
        return {"dim": self.dim, "entries": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "DensityOperator":
        m = np.array([[complex(re, im) for re, im in row] for row in obj["entries"]])
        if "dim" in obj and m.shape != (obj["dim"], obj["dim"]):
            raise DimMismatch(f"dim={obj['dim']} but entries have shape {m.shape}")
        return cls(m)


def ket_from_amplitudes(raw) -> Ket:
    """Normalise ``raw`` into a :class:`Ket`.

    Raises
    ------
    ZeroVector
        If every amplitude is below 1e-300 in magnitude.
    """
    v = np.asarray(raw, dtype=np.complex128).reshape(-1)
    if v.size == 0 or np.all(np.abs(v) < 1e-300):
        raise ZeroVector("cannot normalise a zero vector")
    return Ket(v / np.linalg.norm(v))


def basis_ket(dim: int, index: int) -> Ket:
    """Computational basis ket ``|index>`` (0-based)."""
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return Ket(v)


def projector(k: Ket) -> DensityOperator:
    """Rank-one projector ``|k><k|``."""
    a = k.amplitudes
    return DensityOperator(np.outer(a, a.conj()))


def maximally_mixed(dim: int) -> DensityOperator:
    return DensityOperator(np.eye(dim, dtype=np.complex128) / dim)


def _entries(x):
    return x.entries if isinstance(x, DensityOperator) else np.asarray(x)


def trace_product(A, B, tol: Tolerances = DEFAULT_TOL) -> float:
    """Return ``Re Tr(AB)``.

    Both arguments are expected Hermitian, so the imaginary part of the
    trace must vanish; an AssertionError is raised when it exceeds the
    algebraic tolerance.
    """
    a, b = _entries(A), _entries(B)
    if a.shape != b.shape:
        raise DimMismatch(f"shapes {a.shape} and {b.shape} differ")
    # Tr(AB) = sum_ij A_ij B_ji
    t = np.einsum("ij,ji->", a, b)
    scale = max(1.0, float(np.abs(a).max(initial=0.0) * np.abs(b).max(initial=0.0) * a.shape[0]))
    assert abs(t.imag) <= tol.algebraic * scale, f"Tr(AB) has imaginary part {t.imag:.3e}"
    return float(t.real)


@dataclass(frozen=True)
class DensityReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False)

    @property
    def passed(self) -> bool:
        return (
            self.hermiticity_defect <= self.tol.algebraic
            and self.trace_defect <= self.tol.algebraic
            and self.min_eigenvalue >= -self.tol.positivity
        )

    def __bool__(self):
        return self.passed


def hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def min_eigenvalue(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(hermitize(m))[0])


def validate_density(D, tol: Tolerances = DEFAULT_TOL) -> DensityReport:
    """Check Hermiticity, unit trace and positivity of ``D``.

    Never raises; inspect ``report.passed`` (or use the report as a bool).
    """
    m = _entries(D)
    herm = float(np.abs(m - m.conj().T).max(initial=0.0))
    trace = abs(complex(np.trace(m)) - 1.0)
    return DensityReport(herm, trace, min_eigenvalue(m), tol)
