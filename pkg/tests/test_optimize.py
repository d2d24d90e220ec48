"""Tests for the damped least-squares engine."""

import logging

import numpy as np
import pytest

from dotcavity.optimize import (FitResult, NonFiniteResidualError,
                                lm_minimize)


class TestBasicConvergence:
    def test_linear_residual_solved_in_two_iterations(self):
        # one undamped step solves a linear problem, up to the rounding of
        # the finite-difference Jacobian (~1e-10 relative)
        fit = lm_minimize(lambda p: np.array([p[0] - 3.0]), [0.0])
        assert fit.params["p0"] == pytest.approx(3.0, abs=1e-8)
        assert fit.n_iterations <= 2
        assert fit.converged

    def test_rosenbrock(self):
        def residual(p):
            return np.array([10.0 * (p[1] - p[0] ** 2), 1.0 - p[0]])

        fit = lm_minimize(residual, [-1.2, 1.0], names=["x", "y"])
        assert fit.converged
        assert fit.params["x"] == pytest.approx(1.0, abs=1e-6)
        assert fit.params["y"] == pytest.approx(1.0, abs=1e-6)

    def test_cost_history_monotone_non_increasing(self):
        def residual(p):
            return np.array([10.0 * (p[1] - p[0] ** 2), 1.0 - p[0]])

        fit = lm_minimize(residual, [-1.2, 1.0])
        costs = fit.cost_history
        assert all(b <= a + 1e-300 for a, b in zip(costs, costs[1:]))

    def test_residual_rms_definition(self):
        fit = lm_minimize(lambda p: np.array([p[0], p[0] - 1.0]), [0.0],
                          max_iter=50)
        # optimum p=0.5 leaves residuals (0.5, -0.5)
        assert fit.params["p0"] == pytest.approx(0.5, abs=1e-10)
        assert fit.residual_rms == pytest.approx(0.5, abs=1e-10)


class TestUncertainties:
    def test_sigmas_match_closed_form_least_squares(self):
        rng = np.random.default_rng(5)
        design = rng.normal(size=(12, 2))
        target = design @ np.array([2.0, -1.0]) + rng.normal(0, 0.1, 12)

        fit = lm_minimize(lambda p: design @ p - target, [0.0, 0.0],
                          names=["a", "b"])
        assert fit.converged

        # closed-form normal-equation solution and covariance
        p_hat, *_ = np.linalg.lstsq(design, target, rcond=None)
        ssr = float(np.sum((design @ p_hat - target) ** 2))
        cov = np.linalg.inv(design.T @ design) * ssr / (12 - 2)
        assert fit.params["a"] == pytest.approx(p_hat[0], rel=1e-8)
        assert fit.params["b"] == pytest.approx(p_hat[1], rel=1e-8)
        assert fit.param_sigmas["a"] == pytest.approx(np.sqrt(cov[0, 0]),
                                                      rel=1e-6)
        assert fit.param_sigmas["b"] == pytest.approx(np.sqrt(cov[1, 1]),
                                                      rel=1e-6)

    def test_perfect_fit_has_negligible_sigma(self):
        fit = lm_minimize(lambda p: np.array([p[0] - 3.0, 2.0 * (p[0] - 3.0)]),
                          [0.0])
        assert fit.param_sigmas["p0"] < 1e-8


class TestBounds:
    def test_projection_onto_upper_bound(self):
        fit = lm_minimize(lambda p: np.array([p[0] - 3.0]), [0.0],
                          upper=[2.0])
        assert fit.params["p0"] == 2.0

    def test_start_point_projected(self):
        fit = lm_minimize(lambda p: np.array([p[0] - 3.0]), [10.0],
                          lower=[0.0], upper=[2.0])
        assert fit.params["p0"] == 2.0

    def test_inconsistent_bounds_rejected(self):
        with pytest.raises(ValueError):
            lm_minimize(lambda p: np.array([p[0]]), [0.0],
                        lower=[1.0], upper=[-1.0])


class TestErrorHandling:
    def test_non_finite_start_raises(self):
        with pytest.raises(NonFiniteResidualError):
            lm_minimize(lambda p: np.array([np.nan]), [0.0])

    def test_singular_normal_equations_recovers(self, caplog):
        # second parameter never enters: J^T J is singular
        def residual(p):
            return np.array([p[0] - 1.0, p[0] - 1.0])

        with caplog.at_level(logging.WARNING, logger="dotcavity.optimize"):
            fit = lm_minimize(residual, [0.0, 5.0], names=["a", "unused"])
        assert fit.converged
        assert fit.params["a"] == pytest.approx(1.0, abs=1e-8)
        assert fit.params["unused"] == 5.0
        assert any("singular" in rec.message for rec in caplog.records)

    def test_iteration_limit_returns_best_unconverged(self):
        def residual(p):
            return np.array([10.0 * (p[1] - p[0] ** 2), 1.0 - p[0]])

        fit = lm_minimize(residual, [-1.2, 1.0], max_iter=1)
        assert not fit.converged
        assert fit.n_iterations == 1
        assert np.isfinite(fit.residual_rms)

    def test_names_length_checked(self):
        with pytest.raises(ValueError):
            lm_minimize(lambda p: p, [0.0, 1.0], names=["only_one"])


class TestResultContract:
    def test_converged_result_is_finite_with_small_gradient(self):
        def residual(p):
            return np.array([p[0] ** 2 - 2.0, p[1] + 1.0])

        fit = lm_minimize(residual, [1.0, 0.0])
        assert fit.converged
        assert np.isfinite(fit.residual_rms)
        assert isinstance(fit, FitResult)
        assert set(fit.params) == {"p0", "p1"}
        assert all(s >= 0 for s in fit.param_sigmas.values())
