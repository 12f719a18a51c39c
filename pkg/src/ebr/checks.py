"""
Randomised cross-checks between independent routes to the same quantity.

Each check returns a :class:`CheckResult`; :func:`run_all` is what the
``verify`` command prints.  ``perturb`` shifts every Bloch vector used in the
Born comparison by a random vector of that length, as a negative control.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .bloch import from_bloch, is_bona_fide, purity, to_bloch
from .errors import NegativeProbability
from .frame import build_standard_frame, standard_probabilities, to_standard_state
from .generators import build_generators, generator_gram
from .hidden import classify_region
from .instances import random_orthonormal_kets, random_state_on_span
from .operators import projector, trace_product
from .simplex import (
    barycentric_coordinates,
    cayley_menger_volume,
    project_onto_simplex,
    simplex_from_basis,
    subregion_vertices,
    transition_probabilities,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_defect: float
    tolerance: float
    cases: int

    def to_json(self) -> dict:
        return asdict(self)


def _result(name, defects, tol):
    worst = float(max(defects)) if defects else 0.0
    return CheckResult(name, bool(worst <= tol), worst, tol, len(defects))


def _instance(rng, n, max_extra=4, mixed=False):
    d = n + int(rng.integers(0, max_extra + 1))
    kets = random_orthonormal_kets(rng, n, d)
    gb = build_generators(kets)
    D = random_state_on_span(rng, kets, mixed=mixed)
    return kets, gb, D


def check_generators(rng, n_values, trials=3, tol=1e-10):
    defects = []
    for n in n_values:
        for _ in range(trials):
            d = int(rng.integers(n, 65))
            gb = build_generators(random_orthonormal_kets(rng, n, d))
            g = gb.generators
            herm = np.abs(g - np.conj(np.transpose(g, (0, 2, 1)))).max()
            trace = np.abs(np.trace(g, axis1=1, axis2=2)).max()
            gram = np.abs(generator_gram(gb) - 2 * np.eye(n * n - 1)).max()
            comm = np.abs(g @ gb.sub_identity - gb.sub_identity @ g).max()
            defects.append(max(herm, trace, gram, comm))
    return _result("generator_algebra", defects, tol)


def check_born_equivalence(rng, n_values, trials, tol=1e-12, perturb=0.0):
    defects = []
    for n in n_values:
        for t in range(trials):
            kets, gb, D = _instance(rng, n, mixed=bool(t % 2))
            s = simplex_from_basis(gb)
            r = to_bloch(D, gb).coords
            if perturb:
                u = rng.standard_normal(r.size)
                r = r + perturb * u / np.linalg.norm(u)
            try:
                p = transition_probabilities(r, s)
            except NegativeProbability:
                defects.append(np.inf)
                continue
            born = [trace_product(D, projector(k)) for k in kets]
            defects.append(np.abs(p - born).max())
    return _result("born_equivalence", defects, tol)


def check_round_trip(rng, n_values, trials, tol=1e-10):
    defects = []
    for n in n_values:
        for t in range(trials):
            _, gb, D = _instance(rng, n, mixed=bool(t % 2))
            r = to_bloch(D, gb)
            back = from_bloch(r, gb).entries
            pur = abs(trace_product(D, D) - purity(r))
            defects.append(max(np.abs(back - D.entries).max(), pur))
    return _result("bloch_round_trip", defects, tol)


def check_simplex(rng, n_values, trials=3, tol=1e-10):
    defects = []
    for n in n_values:
        for _ in range(trials):
            _, gb, D = _instance(rng, n)
            s = simplex_from_basis(gb)
            st = project_onto_simplex(to_bloch(D, gb), s)
            r = to_bloch(D, gb).coords
            edges = s.vertices[:, None, :] - s.vertices[None, :, :]
            orth = np.abs(edges @ (r - st.r_par.coords)).max()
            defects.append(max(s.gram_defect(), np.abs(s.vertices.sum(axis=0)).max(), orth))
    return _result("simplex_structure", defects, tol)


def check_bona_fide(rng, n_values, trials=3, tol=0.0):
    failures = []
    for n in n_values:
        for _ in range(trials):
            _, gb, _ = _instance(rng, n)
            s = simplex_from_basis(gb)
            for i in range(n):
                ok_vertex, _ = is_bona_fide(s.vertices[i], gb)
                ok_anti, _ = is_bona_fide(-s.vertices[i], gb)
                # the antipode of a vertex is a state only for qubits
                failures.append(float((not ok_vertex) or (ok_anti != (n == 2))))
    return _result("bona_fide_membership", failures, tol)


def check_measure_ratio(rng, n_values, trials, tol=1e-9):
    defects = []
    for n in n_values:
        if n > 5:
            continue
        for _ in range(trials):
            _, gb, D = _instance(rng, n, mixed=True)
            s = simplex_from_basis(gb)
            st = project_onto_simplex(to_bloch(D, gb), s)
            total = cayley_menger_volume(s.vertices)
            ratios = [cayley_menger_volume(subregion_vertices(s.vertices, st.r_par.coords, i)) / total
                      for i in range(n)]
            defects.append(np.abs(np.array(ratios) - st.bary).max())
    return _result("measure_ratio", defects, tol)


def check_standard_frame(rng, n_values, trials, tol=1e-12):
    defects = []
    for n in n_values:
        frame = build_standard_frame(n)
        for t in range(trials):
            _, gb, D = _instance(rng, n, mixed=bool(t % 2))
            s = simplex_from_basis(gb)
            r = to_bloch(D, gb)
            p = transition_probabilities(r, s)
            # barycentric weights of r_par found by a generic solve, not from p
            r_par = project_onto_simplex(r, s).r_par.coords
            w = barycentric_coordinates(r_par, s.vertices)
            q = standard_probabilities(to_standard_state(w, frame), frame)
            defects.append(np.abs(q - p).max())
    return _result("standard_frame_equivalence", defects, tol)


def brute_force_regions(q, p, tol=1e-12) -> set:
    """Indices ``i`` such that ``q`` lies in ``A_i``, by solving for its
    barycentric coordinates inside each sub-simplex."""
    n = len(p)
    hits = set()
    for i in range(n):
        if p[i] <= 0:
            continue
        m = np.eye(n)
        m[:, i] = p
        w = np.linalg.solve(m, q)
        if w.min() >= -tol:
            hits.add(i)
    return hits


def check_classifier(rng, n_values, trials, tol=0.0):
    mismatches = []
    for n in n_values:
        if n > 5:
            continue
        for _ in range(trials):
            p = rng.dirichlet(np.ones(n))
            q = rng.dirichlet(np.ones(n))
            mismatches.append(float(classify_region(q, p) not in brute_force_regions(q, p)))
    return _result("classifier_vs_brute_force", mismatches, tol)


def run_all(n_max=8, trials=100, seed=0, perturb=0.0) -> list[CheckResult]:
    if not 2 <= n_max <= 8:
        raise ValueError(f"n_max must be in 2..8, got {n_max}")
    rng = np.random.default_rng(seed)
    ns = range(2, n_max + 1)
    return [
        check_generators(rng, ns),
        check_born_equivalence(rng, ns, trials, perturb=perturb),
        check_round_trip(rng, ns, trials),
        check_simplex(rng, ns),
        check_bona_fide(rng, ns),
        check_measure_ratio(rng, ns, trials),
        check_standard_frame(rng, ns, trials),
        check_classifier(rng, ns, trials * 10),
    ]
