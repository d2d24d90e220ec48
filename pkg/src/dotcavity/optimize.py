"""Damped least-squares (Levenberg-Marquardt) minimizer.

Self-contained engine used by all fits in this package: finite-difference
Jacobians, multiplicative damping of the normal equations, box bounds by
projection.  The cost sum(r^2) is non-increasing across accepted steps by
construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger(__name__)

_LAMBDA_START = 1e-4   # first damping value after an initial rejection
_LAMBDA_MAX = 1e12


class NonFiniteResidualError(ValueError):
    """The residual function is not finite at the starting point."""


@dataclass
class FitResult:
    """Outcome of a least-squares fit.

    params       : fitted values by name
    param_sigmas : 1-sigma uncertainties from s^2 (J^T J)^-1 with
                   s^2 = SSR / (n_data - n_params)
    residual_rms : sqrt(mean squared residual) at the solution
    n_iterations : number of outer iterations performed
    converged    : True when the relative cost change dropped below ftol or
                   the gradient infinity-norm below gtol
    cost_history : cost after the start point and each accepted step
    """

    params: dict[str, float]
    param_sigmas: dict[str, float]
    residual_rms: float
    n_iterations: int
    converged: bool
    cost_history: list[float] = field(default_factory=list)


def _fd_jacobian(residual_fn, p, n_res, lower, upper, rel_step=1e-6):
    """Central-difference Jacobian with steps kept inside the box bounds."""
    n = p.size
    jac = np.empty((n_res, n))
    for i in range(n):
        h = max(rel_step, rel_step * abs(p[i]))
        hi = min(p[i] + h, upper[i])
        lo = max(p[i] - h, lower[i])
        if hi == lo:
            jac[:, i] = 0.0
            continue
        trial = p.copy()
        trial[i] = hi
        r_hi = np.asarray(residual_fn(trial), dtype=float)
        trial[i] = lo
        r_lo = np.asarray(residual_fn(trial), dtype=float)
        jac[:, i] = (r_hi - r_lo) / (hi - lo)
    return jac


def lm_minimize(residual_fn, initial_params, *, names=None, lower=None,
                upper=None, max_iter: int = 500, ftol: float = 1e-10,
                gtol: float = 1e-8) -> FitResult:
    """Minimize sum(residual_fn(p)^2) over p with box bounds.

    Parameters
    ----------
    residual_fn : callable(ndarray) -> ndarray of residuals
    initial_params : starting point; must give a finite residual
    names : parameter names for the result dicts (default p0, p1, ...)
    lower, upper : optional box bounds, enforced by projection
    max_iter : outer iteration limit (converged=False past it)
    ftol : relative cost-decrease convergence threshold
    gtol : gradient infinity-norm convergence threshold
    """
    p = np.array(initial_params, dtype=float)
    n_par = p.size
    if names is None:
        names = [f"p{i}" for i in range(n_par)]
    if len(names) != n_par:
        raise ValueError("names must match the number of parameters")
    lower = np.full(n_par, -np.inf) if lower is None else np.asarray(lower, float)
    upper = np.full(n_par, np.inf) if upper is None else np.asarray(upper, float)
    if np.any(lower > upper):
        raise ValueError("inconsistent bounds: lower > upper")
    p = np.clip(p, lower, upper)

    r = np.asarray(residual_fn(p), dtype=float)
    if not np.all(np.isfinite(r)):
        raise NonFiniteResidualError("residual is not finite at the start point")
    cost = float(r @ r)
    history = [cost]
    lam = 0.0
    converged = False
    n_iter = 0

    while n_iter < max_iter:
        n_iter += 1
        jac = _fd_jacobian(residual_fn, p, r.size, lower, upper)
        grad = jac.T @ r
        if np.max(np.abs(grad)) < gtol:
            converged = True
            break
        normal = jac.T @ jac
        damp = np.diag(normal).copy()
        damp[damp <= 0] = 1.0

        accepted = False
        while lam <= _LAMBDA_MAX:
            try:
                step = np.linalg.solve(normal + lam * np.diag(damp), -grad)
            except np.linalg.LinAlgError:
                logger.warning("singular normal equations, retrying with "
                               "increased damping (lambda=%g)", lam)
                lam = lam * 10.0 if lam > 0 else _LAMBDA_START
                continue
            trial = np.clip(p + step, lower, upper)
            r_trial = np.asarray(residual_fn(trial), dtype=float)
            cost_trial = float(r_trial @ r_trial) \
                if np.all(np.isfinite(r_trial)) else np.inf
            if cost_trial <= cost:
                rel_drop = (cost - cost_trial) / max(cost, np.finfo(float).tiny)
                p, r, cost = trial, r_trial, cost_trial
                history.append(cost)
                lam /= 10.0
                accepted = True
                if rel_drop < ftol:
                    converged = True
                break
            lam = lam * 10.0 if lam > 0 else _LAMBDA_START
        if not accepted:
            break  # damping exhausted; best point so far is returned
        if converged:
            break

    jac = _fd_jacobian(residual_fn, p, r.size, lower, upper)
    sigmas = _parameter_sigmas(jac, cost, r.size, n_par)
    rms = float(np.sqrt(cost / r.size))
    return FitResult(
        params=dict(zip(names, p.tolist())),
        param_sigmas=dict(zip(names, sigmas.tolist())),
        residual_rms=rms,
        n_iterations=n_iter,
        converged=converged,
        cost_history=history,
    )


def _parameter_sigmas(jac, cost, n_data, n_par):
    """1-sigma estimates from the inverse approximate Hessian."""
    dof = max(n_data - n_par, 1)
    s2 = cost / dof
    normal = jac.T @ jac
    try:
        cov = np.linalg.inv(normal)
    except np.linalg.LinAlgError:
        cov = np.linalg.pinv(normal)
    return np.sqrt(np.clip(np.diag(cov) * s2, 0.0, None))
