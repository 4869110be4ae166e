import json

import numpy as np
import pytest
from scipy.integrate import trapezoid
from hypothesis import given, strategies as st

from qig.errors import BadParameter, DegenerateQuadrature
from qig.gaussian import (GROUND_STATE, GaussianState, SymplecticFrame, admissibility,
                          gaussian_tomogram, gaussian_tomogram_params, gaussian_tsallis,
                          gaussian_tsallis_quadrature, symplectic_fisher_rao_quadrature,
                          symplectic_metric)

from qig.oracle import FDScheme

X_FRAME = SymplecticFrame(1.0, 0.0)


@st.composite
def states(draw):
    a = draw(st.floats(0.3, 2.0))
    b = draw(st.floats(0.0, 2.0)) + 0.25 / a
    c = draw(st.floats(-0.9, 0.9)) * np.sqrt(max(a * b - 0.25, 0.0))
    return GaussianState(a, b, c, draw(st.floats(-1.5, 1.5)), draw(st.floats(-1.5, 1.5)))


frames = st.floats(0, 2 * np.pi).map(lambda t: SymplecticFrame(np.cos(t), np.sin(t)))


def test_params_examples():
    assert gaussian_tomogram_params(GROUND_STATE, X_FRAME) == (0.0, 0.5)
    s = GaussianState(1.0, 0.5, 0.2, 1.0, 2.0)
    xbar, var = gaussian_tomogram_params(s, SymplecticFrame(1, 1))
    assert xbar == 3.0 and var == pytest.approx(1.9, abs=1e-15)
    with pytest.raises(DegenerateQuadrature):
        gaussian_tomogram_params(GaussianState(0.0, 1.0), X_FRAME)
    with pytest.raises(BadParameter):
        SymplecticFrame(0.0, 0.0)
    with pytest.raises(BadParameter):
        GaussianState(-1.0, 1.0)


@given(st.floats(0, 2 * np.pi))
def test_ground_state_rotational_invariance(t):
    _, var = gaussian_tomogram_params(GROUND_STATE, SymplecticFrame(np.cos(t), np.sin(t)))
    assert var == pytest.approx(0.5, abs=1e-15)


def test_tomogram_density_normalized():
    s = GaussianState(1.0, 0.5, 0.2, 1.0, 2.0)
    w = gaussian_tomogram(s, SymplecticFrame(1, 1))
    x = np.linspace(-20, 26, 200001)
    assert trapezoid(w(x), x) == pytest.approx(1.0, abs=1e-10)


@given(states(), frames, st.floats(0.1, 3.0))
def test_frame_scaling_covariance(s, f, c):
    xbar, var = gaussian_tomogram_params(s, f)
    xs, vs = gaussian_tomogram_params(s, SymplecticFrame(c * f.mu, c * f.nu))
    assert xs == pytest.approx(c * xbar, rel=1e-14, abs=1e-14)
    assert vs == pytest.approx(c * c * var, rel=1e-14)


def test_divergence_examples():
    shifted = GaussianState(0.5, 0.5, 0.0, 1.0, 0.0)
    assert gaussian_tsallis(GROUND_STATE, shifted, X_FRAME, 0.5) == pytest.approx(0.884796867714380527, abs=1e-14)
    assert gaussian_tsallis(GROUND_STATE, GROUND_STATE, X_FRAME, 0.3) == pytest.approx(0.0, abs=1e-14)
    wide = GaussianState(1.0, 1.0)
    assert gaussian_tsallis(GROUND_STATE, wide, X_FRAME, 0.5) == pytest.approx(0.116065826341412638, abs=1e-13)
    with pytest.raises(BadParameter):
        gaussian_tsallis(GROUND_STATE, wide, X_FRAME, 1.5)


def test_kl_limits():
    wide = GaussianState(1.0, 1.0, 0.0, 0.5, 0.0)
    kl = 0.5 * (np.log(2.0) + 0.5 - 1.0 + 0.25)
    assert gaussian_tsallis(GROUND_STATE, wide, X_FRAME, 1.0) == pytest.approx(kl, abs=1e-15)
    assert gaussian_tsallis(GROUND_STATE, wide, X_FRAME, 1 - 1e-6) == pytest.approx(kl, abs=1e-6)
    assert gaussian_tsallis(wide, GROUND_STATE, X_FRAME, 0.0) == pytest.approx(kl, abs=1e-15)
    assert gaussian_tsallis_quadrature(GROUND_STATE, wide, X_FRAME, 1.0) == pytest.approx(kl, abs=1e-10)


@given(states(), states(), frames, st.floats(0.05, 0.95))
def test_quadrature_equivalence(s, s2, f, q):
    assert gaussian_tsallis(s, s2, f, q) == pytest.approx(gaussian_tsallis_quadrature(s, s2, f, q), abs=1e-8)


@given(states(), states(), frames, st.floats(0.05, 0.95))
def test_q_swap_symmetry(s, s2, f, q):
    assert gaussian_tsallis(s, s2, f, q) == pytest.approx(gaussian_tsallis(s2, s, f, 1 - q), abs=1e-10)


def test_minus_sign_variant_fails_on_diagonal():
    s = GaussianState(0.5, 0.5, 0.0, 1.0, 0.0)
    assert abs(gaussian_tsallis(s, s, X_FRAME, 0.5, b_sign=-1)) > 0.5
    assert gaussian_tsallis(s, s, X_FRAME, 0.5) == pytest.approx(0.0, abs=1e-14)


def test_admissibility_examples():
    assert admissibility(GROUND_STATE) == {"classical": True, "quantum": True, "discriminant": 0.25}
    assert admissibility(GaussianState(1.0, 1.0))["discriminant"] == 1.0
    r = admissibility(GaussianState(0.3, 0.3))
    assert r["classical"] and not r["quantum"]
    assert r["discriminant"] == pytest.approx(0.09, abs=1e-16)
    assert not admissibility(GaussianState(1.0, 1.0, 1.5))["classical"]


def test_state_json_round_trip():
    s = GaussianState(1.0, 0.5, 0.2, 1.0, 2.0)
    assert GaussianState.from_dict(json.loads(s.to_json())) == s
    assert GaussianState.from_vector(s.vector()) == s


@pytest.mark.parametrize("q", [0.3, 0.5, 1.0])
def test_metric_examples_ground_state(q):
    g = symplectic_metric(GROUND_STATE, X_FRAME, q, FDScheme(order=4)).components
    assert g[3, 3] == pytest.approx(2.0, abs=1e-6)
    assert g[4, 4] == pytest.approx(0.0, abs=1e-9)
    assert g[0, 0] == pytest.approx(2.0, abs=1e-5)


@pytest.mark.parametrize("mu,nu", [(1.0, 0.0), (0.6, 0.8), (1.0, 1.0)])
def test_metric_q1_matches_quadrature(mu, nu):
    s = GaussianState(1.0, 0.5, 0.2, 1.0, 2.0)
    f = SymplecticFrame(mu, nu)
    fd = symplectic_metric(s, f, 1.0, FDScheme(order=4)).components
    np.testing.assert_allclose(fd, symplectic_fisher_rao_quadrature(s, f), atol=1e-5)


@given(states(), frames, st.floats(0.1, 0.9))
def test_metric_rank_at_most_two(s, f, q):
    g = symplectic_metric(s, f, q).components
    sv = np.linalg.svd(g, compute_uv=False)
    assert np.all(sv[2:] <= 1e-5 * sv[0])
    assert np.all(np.linalg.eigvalsh(g) >= -1e-5 * sv[0])
