"""
Hidden-measurement simulation.

A run has two stages.  The deterministic stage drops the Bloch vector onto
the measurement simplex (:func:`ebr.simplex.project_onto_simplex`).  The
indeterministic stage draws a point ``q`` uniformly from the simplex, the
hidden measurement-interaction, and reports the outcome ``i`` whose
sub-region ``A_i`` contains it.

Writing ``q = beta p + sum_{j != i} gamma_j e_j`` in barycentric
coordinates forces ``beta = q_i / p_i`` and ``gamma_j = q_j - beta p_j``;
all ``gamma_j >= 0`` exactly when ``i`` minimises ``q_j / p_j``.  So region
membership is an argmin, no point location needed.

Outcome indices are 0-based throughout the Python API.

Reproducibility
---------------
Batch runs are cut into blocks of :data:`BLOCK_SIZE` samples.  Block ``b``
draws from ``PCG64(SeedSequence(seed, spawn_key=(b,)))``, so results depend
on ``(seed, n_samples)`` only and not on how blocks are spread over
workers.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bloch import to_bloch
from .errors import AllExcluded
from .generators import build_generators
from .operators import DensityOperator, Ket, projector
from .simplex import project_onto_simplex, simplex_from_basis

BLOCK_SIZE = 1 << 16
RNG_ALGORITHM = "numpy.PCG64/SeedSequence(seed, spawn_key=(block,))"


def block_rng(seed: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(block),))
    return np.random.Generator(np.random.PCG64(ss))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def sample_uniform_simplex(rng: np.random.Generator, n: int, size: int | None = None) -> np.ndarray:
    """Uniform point(s) of the (n-1)-simplex in barycentric coordinates.

    Normalised i.i.d. unit exponentials give the flat Dirichlet law.
    Returns shape ``(n,)`` or ``(size, n)``.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    shape = (n,) if size is None else (size, n)
    e = rng.standard_exponential(shape)
    return e / e.sum(axis=-1, keepdims=True)


def _ratios(q: np.ndarray, p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    live = p > 0.0
    if not live.any():
        raise AllExcluded("every outcome has zero probability")
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(live, q / np.where(live, p, 1.0), np.inf)
    return r


def classify_region(q, p) -> int:
    """Index of the sub-region containing ``q`` for on-simplex weights ``p``.

    Zero-weight outcomes are skipped; ties go to the lowest index.
    """
    return int(np.argmin(_ratios(np.asarray(q, dtype=np.float64), p)))


def classify_batch(Q: np.ndarray, p) -> np.ndarray:
    """Row-wise :func:`classify_region` for a ``(size, n)`` array."""
    return np.argmin(_ratios(Q, p), axis=1)


@dataclass(frozen=True, eq=False)
class OutcomeRecord:
    seed: int | None
    sampled_bary: np.ndarray
    outcome_index: int
    probabilities: np.ndarray
    collapsed_state: DensityOperator | None
    sample_index: int | None = None

    def to_json(self, states: bool = True) -> dict:
        d = {
            "seed": self.seed,
            "sample_index": self.sample_index,
            "sampled_bary": self.sampled_bary.tolist(),
            "outcome_index": self.outcome_index,
            "outcome_label": self.outcome_index + 1,
            "probabilities": self.probabilities.tolist(),
        }
        if states and self.collapsed_state is not None:
            d["collapsed_state"] = self.collapsed_state.to_json()
        return d


def _as_state(state):
    if isinstance(state, (DensityOperator, Ket)):
        return state
    return DensityOperator(state)


def outcome_probabilities(state, outcome_kets) -> np.ndarray:
    """Deterministic stage only: on-simplex weights for ``state``."""
    gb = build_generators(outcome_kets)
    r = to_bloch(_as_state(state), gb)
    return project_onto_simplex(r, simplex_from_basis(gb)).bary


def run_measurement(state, outcome_kets, rng) -> OutcomeRecord:
    """One complete measurement.

    Parameters
    ----------
    state : DensityOperator, Ket or array
    outcome_kets : sequence of N orthonormal kets
    rng : int seed or numpy Generator
    """
    seed = None
    if not isinstance(rng, np.random.Generator):
        seed = int(rng)
        rng = make_rng(seed)
    kets = list(outcome_kets)
    p = outcome_probabilities(state, kets)
    q = sample_uniform_simplex(rng, len(kets))
    i = classify_region(q, p)
    k = kets[i] if isinstance(kets[i], Ket) else Ket(kets[i])
    return OutcomeRecord(seed, q, i, p, projector(k))


@dataclass(frozen=True)
class FrequencyReport:
    n_samples: int
    counts: tuple
    expected: tuple
    seed: int
    rng: str = RNG_ALGORITHM

    @property
    def empirical(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=np.float64) / self.n_samples

    @property
    def sigmas(self) -> np.ndarray:
        """``|f_i - p_i| / sqrt(p_i (1 - p_i) / n)``; 0 or inf where p_i is 0 or 1."""
        f, p = self.empirical, np.asarray(self.expected)
        dev = np.abs(f - p)
        sd = np.sqrt(p * (1.0 - p) / self.n_samples)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(sd > 0, dev / np.where(sd > 0, sd, 1.0), np.where(dev > 1e-12, np.inf, 0.0))
        return s

    @property
    def max_sigma_deviation(self) -> float:
        return float(self.sigmas.max())

    def to_json(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "rng": self.rng,
            "counts": list(self.counts),
            "empirical": self.empirical.tolist(),
            "expected": list(self.expected),
            "sigma": self.sigmas.tolist(),
            "max_sigma_deviation": self.max_sigma_deviation,
        }

    def to_csv(self) -> str:
        lines = ["outcome,expected,empirical,sigma"]
        for i, (p, f, s) in enumerate(zip(self.expected, self.empirical, self.sigmas)):
            lines.append(f"{i + 1},{float(p)!r},{float(f)!r},{float(s)!r}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class Experiment:
    """Inputs of a batch run; see :func:`run_experiment`."""

    state: object
    outcome_kets: list
    n_samples: int
    seed: int
    workers: int = 1
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _block_sizes(n_samples: int):
    full, rest = divmod(n_samples, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _run_block(seed: int, block: int, size: int, p: np.ndarray, keep: bool):
    q = sample_uniform_simplex(block_rng(seed, block), len(p), size)
    idx = classify_batch(q, p)
    counts = np.bincount(idx, minlength=len(p))
    return counts, (q, idx) if keep else None


def run_experiment(exp: Experiment, records=None, states: bool = False) -> FrequencyReport:
    """Batch of ``exp.n_samples`` hidden-measurement runs.

    Parameters
    ----------
    records : writable text stream, optional
        Receives one JSON :class:`OutcomeRecord` per line, in sample order,
        with ``exp.metadata`` merged into every line.
    states : bool
        Include the collapsed state in each record.
    """
    kets = [k if isinstance(k, Ket) else Ket(k) for k in exp.outcome_kets]
    p = outcome_probabilities(exp.state, kets)
    sizes = _block_sizes(exp.n_samples)
    keep = records is not None
    collapsed = [projector(k).to_json() for k in kets] if states else None
    counts = np.zeros(len(p), dtype=np.int64)

    with ThreadPoolExecutor(max_workers=exp.workers) as pool:
        # waves of `workers` blocks keep memory bounded when records are streamed
        for start in range(0, len(sizes), exp.workers):
            wave = range(start, min(start + exp.workers, len(sizes)))
            results = pool.map(lambda b: _run_block(exp.seed, b, sizes[b], p, keep), wave)
            for b, (c, detail) in zip(wave, results):
                counts += c
                if keep:
                    _write_block(records, exp.seed, b, detail, p, collapsed, exp.metadata)

    return FrequencyReport(exp.n_samples, tuple(int(c) for c in counts), tuple(p.tolist()), int(exp.seed))


def _write_block(out, seed, block, detail, p, collapsed, extra):
    q, idx = detail
    probs = p.tolist()
    base = block * BLOCK_SIZE
    for j in range(len(idx)):
        i = int(idx[j])
        d = {
            "seed": seed,
            "sample_index": base + j,
            "sampled_bary": q[j].tolist(),
            "outcome_index": i,
            "outcome_label": i + 1,
            "probabilities": probs,
            **extra,
        }
        if collapsed is not None:
            d["collapsed_state"] = collapsed[i]
        out.write(json.dumps(d) + "\n")


def replay_record(exp: Experiment, sample_index: int) -> OutcomeRecord:
    """Regenerate the record of a single sample of a batch run."""
    if not 0 <= sample_index < exp.n_samples:
        raise IndexError(f"sample {sample_index} outside 0..{exp.n_samples - 1}")
    kets = [k if isinstance(k, Ket) else Ket(k) for k in exp.outcome_kets]
    p = outcome_probabilities(exp.state, kets)
    block, offset = divmod(sample_index, BLOCK_SIZE)
    size = _block_sizes(exp.n_samples)[block]
    q = sample_uniform_simplex(block_rng(exp.seed, block), len(p), size)[offset]
    i = classify_region(q, p)
    return OutcomeRecord(int(exp.seed), q, i, p, projector(kets[i]), sample_index)


def binomial_tolerance(p, n: int, k: float = 4.0) -> np.ndarray:
    """``k`` binomial standard deviations of a frequency estimated from ``n`` draws."""
    p = np.asarray(p, dtype=np.float64)
    return k * np.sqrt(p * (1.0 - p) / n)


def default_seed() -> int:
    """Fresh random 64-bit seed; callers must record it."""
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])

