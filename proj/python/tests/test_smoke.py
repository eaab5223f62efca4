import math

import numpy as np
import pytest
import scipy.linalg

import zsplit


def test_expm_matches_scipy():
    rng = np.random.default_rng(3)
    a = rng.uniform(-1, 1, (4, 4))
    np.testing.assert_allclose(zsplit.expm(a, 0.7), scipy.linalg.expm(0.7 * a), rtol=1e-12, atol=1e-13)


def test_commutator_and_shape_errors():
    a, b, _ = zsplit.matrix_demo()
    np.testing.assert_array_equal(zsplit.commutator(a, b), a @ b - b @ a)
    with pytest.raises(zsplit.ShapeError):
        zsplit.commutator(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        zsplit.expm(np.ones(3))


def test_demo_closed_form():
    a, b, c0 = zsplit.matrix_demo()
    u = zsplit.reference_solution(a, b, c0, 1.0)
    assert abs(u[0] - 2 * (math.exp(3) - math.exp(-2)) / 5) <= 1e-10
    np.testing.assert_allclose(u, zsplit.matrix_demo_exact(1.0), rtol=1e-13)


def test_steps_agree_on_commuting_pair():
    a = np.diag([0.5, -1.0])
    b = np.diag([0.2, 0.3])
    c = np.array([1.0, 2.0])
    exact = zsplit.exact_step(a, b, c, 0.2)
    for got in (
        zsplit.lie_trotter_step(a, b, c, 0.2),
        zsplit.strang_step(a, b, c, 0.2),
        zsplit.zassenhaus_step(a, b, c, 0.2, 3),
        zsplit.iterative_step(a, b, c, 0.2, iterations=2, init="lie-trotter"),
        zsplit.combined_step(a, b, c, 0.2, 2, 2),
    ):
        np.testing.assert_allclose(got, exact, rtol=0, atol=1e-11)


def test_zassenhaus_corrections():
    a, b, _ = zsplit.matrix_demo()
    c2, c3 = zsplit.zassenhaus_corrections(a, b, 3)
    np.testing.assert_allclose(c2, -0.5 * zsplit.commutator(a, b))
    assert c3.shape == (2, 2)
    with pytest.raises(zsplit.UnsupportedOrderError):
        zsplit.zassenhaus_corrections(a, b, 5)


def test_models_shapes():
    a1, a2, c0 = zsplit.one_phase(cells=10)
    assert a1.shape == (20, 20) and a2.shape == (20, 20) and c0.shape == (20,)
    a1, a2, c0 = zsplit.multiphase(2, cells=4, lambdas=[0, 0.1, 0.1], retardation=[1, 2], beta=0.5)
    assert a1.shape == (16, 16)
    with pytest.raises(zsplit.SpecError):
        zsplit.multiphase(1, cells=4, lambdas=[0, 0.1], retardation=[0], beta=0.5)


def test_convergence_orders():
    a, b, c0 = zsplit.matrix_demo()
    rows, orders = zsplit.run_convergence(a, b, c0, "exact,lie,strang")
    assert len(rows) == 21
    assert orders["exact"] is None
    assert orders["lie"] == pytest.approx(1.0, abs=0.15)
    assert orders["strang"] == pytest.approx(2.0, abs=0.2)
    assert zsplit.estimate_order([0.1, 0.01, 0.001], [1e-2, 1e-4, 1e-6]) == pytest.approx(2.0)
