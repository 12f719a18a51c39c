"""
Acceptance criteria AC1-AC9, each at its stated tolerance and time budget.

Every test appends one ``[PASS]``/``[FAIL]`` line that is printed in the
terminal summary.  Run this file alone with ``pytest tests/test_acceptance.py``
or ``python tests/test_acceptance.py``.
"""
import io
import json
import math
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from ebr import (
    Experiment,
    Ket,
    build_effective_measurement,
    build_generators,
    build_standard_frame,
    cayley_menger_volume,
    computational_basis,
    discretize_position,
    generator_gram,
    project_onto_simplex,
    projector,
    rotate_outcome_basis,
    run_experiment,
    simplex_from_basis,
    standard_probabilities,
    to_bloch,
    to_standard_state,
    trace_product,
    transition_probabilities,
)
from ebr.cli import main
from ebr.hidden import binomial_tolerance
from ebr.instances import (
    random_orthonormal_kets,
    random_partition,
    random_ket,
    random_state_on_span,
    random_unitary,
)
from ebr.simplex import barycentric_coordinates, subregion_vertices
from ebr.volumes import (
    ball_volume,
    ball_volume_asymptotic,
    inscribed_simplex_volume,
    inscribed_simplex_volume_asymptotic,
    unit_ball_argmax,
)

SEED = 20240611

PAULI = [
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
]
S3 = 1 / math.sqrt(3)
GELL_MANN = [
    [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
    [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
    [[S3, 0, 0], [0, S3, 0], [0, 0, -2 * S3]],
]


def report(name, passed, detail, elapsed=None):
    t = "" if elapsed is None else f" [{elapsed:.2f} s]"
    line = f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}{t}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def _cli_generators(n, capsys):
    code = main(["generators", "--n", str(n), "--format", "json"])
    out = capsys.readouterr().out
    gens = json.loads(out)["generators"]
    mats = [np.array([[complex(re, im) for re, im in row] for row in g["entries"]]) for g in gens]
    return code, np.array(mats)


def test_ac1_generators(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    code2, g2 = _cli_generators(2, capsys)
    code3, g3 = _cli_generators(3, capsys)
    lit = max(np.abs(g2 - np.array(PAULI)).max(), np.abs(g3 - np.array(GELL_MANN)).max())
    gram = 0.0
    for n in range(2, 9):
        for _ in range(5):
            d = int(rng.integers(n, 65))
            gb = build_generators(random_orthonormal_kets(rng, n, d))
            gram = max(gram, float(np.abs(generator_gram(gb) - 2 * np.eye(n * n - 1)).max()))
    dt = time.perf_counter() - t0
    ok = code2 == 0 and code3 == 0 and lit <= 1e-14 and gram <= 1e-10 and dt < 5
    detail = f"Pauli/Gell-Mann entrywise defect {lit:.1e} (tol 1e-14), Gram defect N=2..8 {gram:.1e} (tol 1e-10)"
    assert report("AC1 generator correctness", ok, detail, dt)


def test_ac2_born_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for n in range(2, 9):
        for t in range(1000):
            d = n + int(rng.integers(0, 5))
            kets = random_orthonormal_kets(rng, n, d)
            gb = build_generators(kets)
            D = random_state_on_span(rng, kets, mixed=bool(t % 2))
            p = transition_probabilities(to_bloch(D, gb), simplex_from_basis(gb))
            born = np.array([trace_product(D, projector(k)) for k in kets])
            worst = max(worst, float(np.abs(p - born).max()))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and dt < 30
    assert report("AC2 Born equivalence", ok, f"7000 pairs, max |p_i - Tr(D P_i)| = {worst:.1e} (tol 1e-12)", dt)


def test_ac3_explicit_vertices():
    v2 = simplex_from_basis(computational_basis(2)).vertices
    v3 = simplex_from_basis(computational_basis(3)).vertices
    h = math.sqrt(3) / 2
    e2 = np.array([[0, 0, 1], [0, 0, -1]])
    e3 = np.array([
        [0, 0, h, 0, 0, 0, 0, 0.5],
        [0, 0, -h, 0, 0, 0, 0, 0.5],
        [0, 0, 0, 0, 0, 0, 0, -1],
    ])
    worst = max(np.abs(v2 - e2).max(), np.abs(v3 - e3).max())
    assert report("AC3 explicit vertices", worst <= 1e-14, f"max defect {worst:.1e} (tol 1e-14)")


def test_ac4_measure_ratio():
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for n in range(2, 6):
        gb = computational_basis(n)
        kets = [Ket(np.eye(n)[i]) for i in range(n)]
        s = simplex_from_basis(gb)
        total = cayley_menger_volume(s.vertices)
        for _ in range(200):
            st = project_onto_simplex(to_bloch(random_state_on_span(rng, kets, mixed=True), gb), s)
            assert st.bary.min() > 0  # interior
            ratios = [cayley_menger_volume(subregion_vertices(s.vertices, st.r_par.coords, i)) / total
                      for i in range(n)]
            worst = max(worst, float(np.abs(np.array(ratios) - st.bary).max()))
    # two-vertex edge of the orthonormal-vertex simplex
    edge = 0.0
    for n in range(2, 6):
        m = build_standard_frame(n).m_tilde
        for _ in range(50):
            i, j = rng.choice(n, 2, replace=False)
            ri = rng.uniform()
            r_par = ri * m[i] + (1 - ri) * m[j]
            mu_j = cayley_menger_volume([r_par, m[i]])
            edge = max(edge, abs(mu_j - (1 - ri) * math.sqrt(2)))
            edge = max(edge, abs(cayley_menger_volume([m[i], m[j]]) - math.sqrt(2)))
    ok = worst <= 1e-9 and edge <= 1e-12
    detail = f"CM ratio defect {worst:.1e} (tol 1e-9), edge identity defect {edge:.1e} (tol 1e-12)"
    assert report("AC4 measure-ratio theorem", ok, detail)


def _random_experiment(rng, n, seed, n_samples=1_000_000):
    d = n + int(rng.integers(0, 3))
    kets = random_orthonormal_kets(rng, n, d)
    return Experiment(random_state_on_span(rng, kets, mixed=bool(rng.integers(2))), kets, n_samples, seed)


@pytest.mark.slow
def test_ac5_hidden_measurement_statistics():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED + 5)
    worst, frequencies, inside = 0.0, 0, True
    reports = {}
    for n in (2, 3, 4, 8):
        for k in range(10):
            exp = _random_experiment(rng, n, seed=1000 * n + k)
            rep = run_experiment(exp)
            p = np.array(rep.expected)
            inside &= bool(np.all(np.abs(rep.empirical - p) <= binomial_tolerance(p, rep.n_samples)))
            worst = max(worst, rep.max_sigma_deviation)
            frequencies += n
            if k == 0:
                reports[n] = (exp, rep)
    # fixed-seed reruns: identical reports, byte-identical record streams
    same = all(run_experiment(exp) == rep for exp, rep in reports.values())
    a, b = io.StringIO(), io.StringIO()
    small = _random_experiment(rng, 3, seed=99, n_samples=100_000)
    run_experiment(small, records=a, states=True)
    run_experiment(Experiment(small.state, small.outcome_kets, small.n_samples, 99, workers=4), records=b, states=True)
    same &= a.getvalue().encode() == b.getvalue().encode()
    dt = time.perf_counter() - t0
    ok = inside and same and dt < 120
    detail = (f"40 states x 1e6 samples, {frequencies} frequencies, max deviation {worst:.2f} sigma (tol 4), "
              f"reruns identical: {same}")
    assert report("AC5 hidden-measurement statistics", ok, detail, dt)


def test_ac6_effective_consistency():
    rng = np.random.default_rng(SEED + 6)
    born_def = recon_def = 0.0
    for _ in range(30):
        d = int(rng.integers(64, 129))
        n = int(rng.integers(2, 9))
        parts = random_partition(rng, d, n)
        psi = random_ket(rng, d)
        em = build_effective_measurement(psi, parts)
        D = projector(psi).entries
        born = np.array([np.trace(parts[i] @ D).real for i in range(n)])
        born_def = max(born_def, float(np.abs(em.probabilities() - born).max()))
        recon_def = max(recon_def, float(np.abs(em.reconstruct() - psi.amplitudes).max()))
    ket, parts, _ = discretize_position(-8.0, 8.0, 1024, lambda x: np.exp(-x**2 / 2), [0.0])
    split = float(np.abs(build_effective_measurement(ket, parts).probabilities() - 0.5).max())
    ok = born_def <= 1e-12 and recon_def <= 1e-10 and split <= 1e-6
    detail = (f"Born defect {born_def:.1e} (tol 1e-12), reconstruction {recon_def:.1e} (tol 1e-10), "
              f"Gaussian split {split:.1e} (tol 1e-6)")
    assert report("AC6 effective-measurement consistency", ok, detail)


def test_ac7_standard_frame():
    rng = np.random.default_rng(SEED + 7)
    prob = 0.0
    for n in range(2, 9):
        frame = build_standard_frame(n)
        for t in range(100):
            kets = random_orthonormal_kets(rng, n, n + int(rng.integers(0, 4)))
            gb = build_generators(kets)
            s = simplex_from_basis(gb)
            r = to_bloch(random_state_on_span(rng, kets, mixed=bool(t % 2)), gb)
            p = transition_probabilities(r, s)
            w = barycentric_coordinates(project_onto_simplex(r, s).r_par.coords, s.vertices)
            prob = max(prob, float(np.abs(standard_probabilities(to_standard_state(w, frame), frame) - p).max()))
    r_norm = max(abs(np.linalg.norm(build_standard_frame(n).R_tilde) - 1 / math.sqrt(n)) for n in range(2, 65))
    defects = [build_standard_frame(n).vertex_limit_defect() for n in range(2, 65)]
    decreasing = all(b < a for a, b in zip(defects, defects[1:]))
    ok = prob <= 1e-12 and r_norm <= 1e-12 and decreasing
    detail = (f"probability defect {prob:.1e} (tol 1e-12), |R~| - 1/sqrt(N) {r_norm:.1e}, "
              f"vertex defect strictly decreasing over N=2..64: {decreasing} ({defects[0]:.3f} -> {defects[-1]:.3f})")
    assert report("AC7 standard-frame equivalence", ok, detail)


def test_ac8_volumetrics():
    closed = [2.0, math.pi, 4 * math.pi / 3, math.pi**2 / 2, 8 * math.pi**2 / 15, math.pi**3 / 6]
    rel = max(abs(ball_volume(M) / v - 1) for M, v in enumerate(closed, start=1))
    argmax = unit_ball_argmax()
    ratio = ball_volume(100) / ball_volume_asymptotic(100)
    mu1 = inscribed_simplex_volume(1)
    simplex_ratio = inscribed_simplex_volume(100) / inscribed_simplex_volume_asymptotic(100)
    ok = rel <= 1e-12 and argmax == 5 and abs(ratio - 1) <= 0.01 and abs(mu1 - 2) <= 1e-15
    detail = (f"closed forms rel defect {rel:.1e} (tol 1e-12), argmax {argmax}, "
              f"ball exact/asymptotic at M=100 {ratio:.5f} (tol 1%), mu(simplex_1) {mu1:g}; "
              f"[info] simplex exact/asymptotic at M=100 {simplex_ratio:.4f}, limit sqrt(e)")
    assert report("AC8 volumetrics", ok, detail)


def test_ac9_outcome_basis_rotation():
    rng = np.random.default_rng(SEED + 9)
    gb = computational_basis(2)
    norm_def = literal = corrected = 0.0
    for _ in range(100):
        u = random_unitary(rng, 2)
        n1 = rotate_outcome_basis(u, gb)[0]
        z = u[0, 0] * np.conj(u[0, 1])
        as_printed = np.array([2 * z.real, 2 * z.imag, abs(u[0, 0]) ** 2 - abs(u[0, 1]) ** 2])
        norm_def = max(norm_def, abs(np.linalg.norm(n1) - 1))
        literal = max(literal, float(np.abs(n1 - as_printed).max()))
        as_printed[1] *= -1
        corrected = max(corrected, float(np.abs(n1 - as_printed).max()))
    ok = norm_def <= 1e-10 and literal <= 1e-12
    detail = (f"|n'_1| defect {norm_def:.1e} (tol 1e-10), closed form as stated {literal:.1e} (tol 1e-12); "
              f"with the second component negated {corrected:.1e}")
    report("AC9 outcome-basis rotation", ok, detail)
    assert norm_def <= 1e-10 and corrected <= 1e-12
    if not ok:
        pytest.xfail(
            "the stated second component 2 Im(u11 u12*) has the wrong sign for the V12 = Pauli-y generator "
            "that AC1 requires; the true Bloch coordinate is -2 Im(u11 u12*)"
        )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
