import numpy as np
import pytest

from ebr import build_standard_frame, standard_probabilities, standard_transition_probability, to_standard_state


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_frame_geometry(n):
    f = build_standard_frame(n)
    np.testing.assert_allclose(f.m @ f.m.T, n * np.eye(n), atol=1e-12)
    np.testing.assert_allclose(f.m @ f.R, 1.0, atol=1e-12)
    assert np.linalg.norm(f.R) == pytest.approx(1.0)
    assert np.linalg.norm(f.R_tilde) == pytest.approx(1 / np.sqrt(n), abs=1e-15)
    v = f.vertices()
    np.testing.assert_allclose(v @ v.T, (n * np.eye(n) - 1) / (n - 1), atol=1e-12)


def test_standard_state_is_the_weights():
    p = np.array([0.1, 0.2, 0.3, 0.4])
    f = build_standard_frame(4)
    s = to_standard_state(p, f)
    np.testing.assert_allclose(s, p, atol=1e-15)
    np.testing.assert_allclose(standard_probabilities(s, f), p, atol=1e-15)
    assert standard_transition_probability(s, f.m_tilde[2]) == pytest.approx(0.3)


def test_vertex_limit_defect_decreases():
    d = [build_standard_frame(n).vertex_limit_defect() for n in range(2, 65)]
    assert all(b < a for a, b in zip(d, d[1:]))
    assert d[-1] < 0.13


def test_frame_rejects_bad_input():
    with pytest.raises(ValueError):
        build_standard_frame(1)
    with pytest.raises(ValueError):
        to_standard_state([0.5, 0.5], build_standard_frame(3))
