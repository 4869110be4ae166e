import numpy as np
import pytest
from hypothesis import given, strategies as st

from qig.errors import BadParameter, OutOfDomain
from qig.metrics import (PETZ_NORMALIZATION, fisher_rao_simplex, pair_coefficient, petz_f,
                         qubit_metric, qubit_metric_q1, qubit_petz_form, qutrit_metric,
                         qutrit_tangent_coefficients, radial_limit_coefficient,
                         radial_limit_coefficient_half, radial_limit_metric, radial_ray_limit,
                         tangential_coefficients_general)

qs = st.floats(0.02, 0.98)
ws = st.floats(0.01, 0.99)


def test_fisher_rao_examples():
    assert fisher_rao_simplex([0.5, 0.5]).components.tolist() == [[4.0]]
    np.testing.assert_allclose(fisher_rao_simplex([0.5, 0.3, 0.2]).components, [[7, 5], [5, 25 / 3]])
    with pytest.raises(OutOfDomain):
        fisher_rao_simplex([1.0, 0.0])


def test_qubit_metric_examples():
    g = qubit_metric(0.5, 0.6)
    assert g["dw", "dw"] == pytest.approx(1.5625, rel=1e-14)
    assert g["theta1", "theta1"] == pytest.approx(1.6, rel=1e-14)
    assert g["theta2", "theta2"] == g["theta1", "theta1"]
    assert g["theta3", "theta3"] == 0.0
    assert qubit_metric(0.3, 0.0)["theta1", "theta1"] == 0.0
    with pytest.raises(OutOfDomain):
        qubit_metric(0.5, 1.0)
    with pytest.raises(BadParameter):
        qubit_metric(1.3, 0.5)


def test_kubo_mori_member():
    g = qubit_metric_q1(0.5)
    assert g[1, 1] == pytest.approx(np.log(3), abs=1e-12)
    assert g[0, 0] == pytest.approx(4 / 3, abs=1e-14)
    near = qubit_metric(1 - 1e-6, 0.5)[1, 1]
    assert abs(near - g[1, 1]) / g[1, 1] <= 1e-4
    assert qubit_metric(1.0, 0.5)[1, 1] == g[1, 1]


@given(qs, ws)
def test_qubit_metric_symmetric_in_q(q, w):
    np.testing.assert_allclose(qubit_metric(q, w).components, qubit_metric(1 - q, w).components, rtol=1e-12)


def test_qutrit_coefficients():
    c = qutrit_tangent_coefficients([0.5, 0.3, 0.2], 0.5)
    np.testing.assert_allclose(c, [0.203226646068132984, 0.540355743730593069, 0.0808164115469150429],
                               rtol=1e-13)
    g = qutrit_metric(0.5, [0.4, 0.4, 0.2])
    assert g["theta1", "theta1"] == 0.0 and g["theta2", "theta2"] == 0.0
    assert g["theta3", "theta3"] == 0.0 and g["theta8", "theta8"] == 0.0
    np.testing.assert_allclose(g.components[:2, :2], fisher_rao_simplex([0.4, 0.4, 0.2]).components)


def test_pair_coefficient_stable_near_limit():
    exact = 2 * 0.4 * np.log(0.7 / 0.3)
    assert pair_coefficient(0.7, 0.3, 1 - 1e-7) == pytest.approx(exact, rel=1e-6)


def test_general_tangential_block():
    k2 = np.array([0.8, 0.2])
    m = tangential_coefficients_general(k2, 0.3)
    np.testing.assert_allclose(np.diag(m), [pair_coefficient(0.8, 0.2, 0.3)] * 2 + [0.0], atol=1e-14)
    k3 = np.array([0.5, 0.3, 0.2])
    m3 = tangential_coefficients_general(k3, 0.5)
    np.testing.assert_allclose(m3, qutrit_metric(0.5, k3).components[2:, 2:], atol=1e-14)
    m1 = tangential_coefficients_general(k3, 1.0)
    np.testing.assert_allclose(m1, qutrit_metric(1.0, k3).components[2:, 2:], atol=1e-14)
    np.testing.assert_allclose(tangential_coefficients_general(np.ones(4) / 4, 0.4), 0.0, atol=1e-14)


def test_radial_limit_metrics():
    pure3 = radial_limit_metric(0.5, 3, "pure")
    np.testing.assert_allclose(np.diag(pure3.components), [8, 8, 0, 8, 8, 0, 0, 0])
    np.testing.assert_allclose(np.diag(radial_limit_metric(0.25, 2, "pure").components), [32 / 3, 32 / 3, 0])
    r2 = radial_limit_metric(0.5, 3, "rank2", k=(0.7, 0.3))
    assert r2[0, 0] == pytest.approx(pair_coefficient(0.7, 0.3, 0.5))
    assert r2[3, 3] == pytest.approx(8 * 0.7) and r2[5, 5] == pytest.approx(8 * 0.3)
    with pytest.raises(BadParameter):
        radial_limit_metric(1.0, 2, "pure")


@pytest.mark.parametrize("q", [0.1, 0.25, 0.5, 0.75, 0.9])
def test_radial_rays_converge(q):
    c = radial_limit_coefficient(q)
    # parametrize by the small eigenvalue e / 2 = (1 - w) / 2; forming 1 - w in floating point loses it
    qubit, _ = radial_ray_limit(lambda e: pair_coefficient(1 - e / 2, e / 2, q))
    assert qubit == pytest.approx(c, rel=1e-6)
    c12, _ = radial_ray_limit(lambda e: qutrit_tangent_coefficients([1 - e, 0.6 * e, 0.4 * e], q)[0])
    assert c12 == pytest.approx(c, rel=1e-6)
    k1, k2 = 0.7, 0.3
    c13, _ = radial_ray_limit(lambda e: qutrit_tangent_coefficients([k1 * (1 - e), k2 * (1 - e), e], q)[1])
    assert c13 == pytest.approx(c * k1, rel=1e-6)
    # rank 2 -> pure: surviving entries approach the pure-state coefficient
    rank2 = radial_limit_metric(q, 3, "rank2", k=(1 - 1e-12, 1e-12))
    assert rank2[3, 3] == pytest.approx(c, rel=1e-9)
    assert radial_limit_coefficient_half(q) * 2 == pytest.approx(c, rel=1e-15)


def test_radial_approach_is_slow_without_extrapolation():
    # error goes like eps^min(q, 1-q); a single near-boundary evaluation is not enough at q = 0.5
    raw = qutrit_tangent_coefficients([1 - 1e-6, 0.6e-6, 0.4e-6], 0.5)[0]
    assert abs(raw - 8) > 1e-4


def test_petz_examples():
    f = petz_f(0.5)
    assert f(4.0) == pytest.approx(2.25, rel=1e-14)
    assert f(1.0) == 1.0
    assert 4 * f(0.25) == pytest.approx(f(4.0), rel=1e-14)
    assert petz_f(0.3).at_zero == pytest.approx(0.21)
    assert petz_f(1.0).at_zero == 0.0 and petz_f(0.0).at_zero == 0.0
    assert petz_f(1.0)(np.e) == pytest.approx(np.e - 1)


@given(qs, st.floats(-13.8, 13.8))
def test_petz_symmetry(q, lt):
    t = np.exp(lt)
    f = petz_f(q)
    assert f(t) == pytest.approx(t * f(1 / t), rel=1e-12)


def test_petz_form_example():
    g = qubit_petz_form(0.5, 0.6)
    assert g[1, 1] == pytest.approx(0.4, rel=1e-14)
    assert qubit_metric(0.5, 0.6)[1, 1] / g[1, 1] == pytest.approx(4.0, rel=1e-14)
    assert qubit_petz_form(0.5, 0.0)[1, 1] == 0.0


@given(qs, ws)
def test_petz_normalization_constant(q, w):
    ratio = qubit_metric(q, w)[1, 1] / qubit_petz_form(q, w)[1, 1]
    assert ratio == pytest.approx(PETZ_NORMALIZATION, rel=1e-9)
