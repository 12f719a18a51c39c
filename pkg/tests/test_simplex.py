import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ebr import (
    DegenerateSimplex,
    MeasurementSimplex,
    NegativeProbability,
    build_generators,
    build_simplex,
    cayley_menger_volume,
    computational_basis,
    from_bloch,
    project_onto_simplex,
    projector,
    simplex_from_basis,
    subregion_measure_ratio,
    to_bloch,
    trace_product,
    transition_probabilities,
)
from ebr.instances import random_orthonormal_kets, random_state_on_span
from ebr.simplex import barycentric_coordinates, subregion_vertices
from ebr.volumes import inscribed_simplex_volume


def test_qubit_simplex():
    s = simplex_from_basis(computational_basis(2))
    np.testing.assert_array_equal(s.vertices, [[0, 0, 1], [0, 0, -1]])
    assert s.vertices[0] @ s.vertices[1] == -1


def test_qutrit_simplex_is_equilateral():
    s = simplex_from_basis(computational_basis(3))
    d = [np.linalg.norm(s.vertices[i] - s.vertices[j]) for i, j in [(0, 1), (0, 2), (1, 2)]]
    np.testing.assert_allclose(d, np.sqrt(3), atol=1e-15)


@pytest.mark.parametrize("n", range(2, 9))
def test_vertex_gram(n):
    rng = np.random.default_rng(n)
    kets = random_orthonormal_kets(rng, n, n + 3)
    s = build_simplex(kets)
    assert s.gram_defect() <= 1e-10
    assert np.abs(s.vertices.sum(axis=0)).max() <= 1e-10
    off = s.gram()[~np.eye(n, dtype=bool)]
    np.testing.assert_allclose(off, -1 / (n - 1), atol=1e-12)


def test_build_simplex_in_foreign_basis():
    # vertices of a rotated qubit measurement in a fixed representation
    gb = computational_basis(2)
    s = build_simplex([[1 / np.sqrt(2), 1 / np.sqrt(2)], [1 / np.sqrt(2), -1 / np.sqrt(2)]], gb)
    np.testing.assert_allclose(s.vertices, [[1, 0, 0], [-1, 0, 0]], atol=1e-15)


def test_transition_probability_basics():
    for n in (2, 3, 6):
        s = simplex_from_basis(computational_basis(n))
        e = np.zeros(n)
        e[0] = 1
        np.testing.assert_allclose(transition_probabilities(s.vertices[0], s), e, atol=1e-15)
        np.testing.assert_allclose(transition_probabilities(np.zeros(n * n - 1), s), np.full(n, 1 / n))


@pytest.mark.parametrize("theta", [0.0, 0.3, np.pi / 3, 2.0, np.pi])
def test_qubit_polar_angle(theta):
    phi = 0.7
    r = [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    s = simplex_from_basis(computational_basis(2))
    p = transition_probabilities(r, s)
    # explicit 2x2 Born oracle
    psi = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    D = np.outer(psi, psi.conj())
    born = [D[0, 0].real, D[1, 1].real]
    np.testing.assert_allclose(p, born, atol=1e-12)
    np.testing.assert_allclose(p, [np.cos(theta / 2) ** 2, np.sin(theta / 2) ** 2], atol=1e-12)


def test_negative_probability_rejected():
    s = simplex_from_basis(computational_basis(3))
    with pytest.raises(NegativeProbability):
        transition_probabilities(-s.vertices[0], s)


def test_projection_examples():
    s = simplex_from_basis(computational_basis(3))
    st_ = project_onto_simplex(s.vertices[1], s)
    np.testing.assert_allclose(st_.r_par.coords, s.vertices[1], atol=1e-15)
    np.testing.assert_allclose(st_.bary, [0, 1, 0], atol=1e-15)
    inside = 0.2 * s.vertices[0] + 0.5 * s.vertices[1] + 0.3 * s.vertices[2]
    st_ = project_onto_simplex(inside, s)
    np.testing.assert_allclose(st_.r_par.coords, inside, atol=1e-15)
    assert st_.r_perp_norm <= 1e-15


def test_projection_orthogonal_for_random_qutrit():
    rng = np.random.default_rng(11)
    for _ in range(20):
        kets = random_orthonormal_kets(rng, 3, 3)
        gb = build_generators(kets)
        s = simplex_from_basis(gb)
        r = to_bloch(random_state_on_span(rng, kets), gb).coords
        st_ = project_onto_simplex(r, s)
        for i in range(3):
            for j in range(3):
                assert abs((r - st_.r_par.coords) @ (s.vertices[i] - s.vertices[j])) <= 1e-10
        np.testing.assert_allclose(r @ s.vertices.T, st_.r_par.coords @ s.vertices.T, atol=1e-10)


def test_clamping_of_round_off():
    s = simplex_from_basis(computational_basis(3))
    r = s.vertices[0] * (1 + 1e-12)
    st_ = project_onto_simplex(r, s)
    assert st_.bary.min() >= 0
    assert st_.bary.sum() == pytest.approx(1.0, abs=1e-15)


def test_subregion_ratio_contract():
    s = simplex_from_basis(computational_basis(4))
    st_ = project_onto_simplex(np.zeros(15), s)
    assert [subregion_measure_ratio(st_, i) for i in range(4)] == pytest.approx([0.25] * 4)
    with pytest.raises(IndexError):
        subregion_measure_ratio(st_, 4)


def test_cayley_menger_examples():
    assert cayley_menger_volume([[0.0], [1.0]]) == pytest.approx(1.0)
    assert cayley_menger_volume(simplex_from_basis(computational_basis(2)).vertices) == pytest.approx(2.0)
    tri = simplex_from_basis(computational_basis(3)).vertices
    assert cayley_menger_volume(tri) == pytest.approx(3 * math.sqrt(3) / 4, abs=1e-14)
    assert cayley_menger_volume(tri) == pytest.approx(inscribed_simplex_volume(2, 1.0), abs=1e-14)
    # unit right-angle corner in 3-d: volume 1/6
    assert cayley_menger_volume(np.vstack([np.zeros(3), np.eye(3)])) == pytest.approx(1 / 6)


def test_cayley_menger_degenerate():
    with pytest.raises(DegenerateSimplex):
        cayley_menger_volume([[0, 0], [1, 1], [2, 2]])
    with pytest.raises(DegenerateSimplex):
        cayley_menger_volume([[0, 0], [0, 0]])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_measure_ratio_matches_volume(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(25):
        kets = random_orthonormal_kets(rng, n, n + 2)
        gb = build_generators(kets)
        s = simplex_from_basis(gb)
        st_ = project_onto_simplex(to_bloch(random_state_on_span(rng, kets, mixed=True), gb), s)
        total = cayley_menger_volume(s.vertices)
        for i in range(n):
            part = cayley_menger_volume(subregion_vertices(s.vertices, st_.r_par.coords, i))
            assert abs(part / total - subregion_measure_ratio(st_, i)) <= 1e-9


def test_barycentric_coordinates_generic():
    v = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
    np.testing.assert_allclose(barycentric_coordinates([0.5, 0.25], v), [0.5, 0.25, 0.25])


def test_simplex_json():
    s = simplex_from_basis(computational_basis(3))
    back = MeasurementSimplex.from_json(s.to_json())
    np.testing.assert_array_equal(back.vertices, s.vertices)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 8), mixed=st.booleans())
def test_born_equivalence_property(seed, n, mixed):
    rng = np.random.default_rng(seed)
    kets = random_orthonormal_kets(rng, n, n + int(rng.integers(0, 4)))
    gb = build_generators(kets)
    s = simplex_from_basis(gb)
    D = random_state_on_span(rng, kets, mixed=mixed)
    r = to_bloch(D, gb)
    p = transition_probabilities(r, s)
    for i, k in enumerate(kets):
        assert abs(p[i] - trace_product(D, projector(k))) <= 1e-12
        assert abs(p[i] - trace_product(from_bloch(r, gb), projector(k))) <= 1e-12
    assert abs(p.sum() - 1) <= 1e-12
    st_ = project_onto_simplex(r, s)
    assert np.linalg.norm(st_.r_par.coords) <= r.norm + 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 6), scale=st.floats(-3, 3))
def test_probabilities_blind_to_orthogonal_shift(seed, n, scale):
    rng = np.random.default_rng(seed)
    gb = computational_basis(n)
    s = simplex_from_basis(gb)
    kets = [np.eye(n)[i] for i in range(n)]
    from ebr import Ket
    r = to_bloch(random_state_on_span(rng, [Ket(k) for k in kets]), gb).coords
    u = rng.standard_normal(r.size)
    u -= s.vertices.T @ np.linalg.lstsq(s.vertices.T, u, rcond=None)[0]
    np.testing.assert_allclose(
        transition_probabilities(r + scale * u, s, ), transition_probabilities(r, s), atol=1e-12
    )
