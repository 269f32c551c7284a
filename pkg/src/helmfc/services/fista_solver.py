"""Constant-step FISTA for the L1-regularized reconstruction problem of the sparse autoencoder."""
import logging
import math
from typing import List, NamedTuple

import numpy as np

from helmfc.models import FistaDivergenceError, FistaProblem, FistaState

logger = logging.getLogger(__name__)

POWER_ITERATION_TOL = 1e-6
POWER_ITERATION_MAX = 10_000


class FistaResult(NamedTuple):
    beta: np.ndarray
    objective_trace: np.ndarray


def lipschitz_constant(a: np.ndarray, tol: float = POWER_ITERATION_TOL) -> float:
    """2 * sigma_max(A)^2, the Lipschitz constant of grad ||A beta - X||^2, by power iteration on A^T A."""
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0 or not np.any(a):
        raise ValueError("Lipschitz constant is undefined for a zero matrix")
    rng = np.random.default_rng(0)
    v = rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    eigenvalue = 0.0
    for _ in range(POWER_ITERATION_MAX):
        w = a.T @ (a @ v)
        estimate = float(v @ w)
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            # start vector fell into the null space; restart from a fresh direction
            v = rng.standard_normal(a.shape[1])
            v /= np.linalg.norm(v)
            continue
        v = w / norm
        if abs(estimate - eigenvalue) <= tol * abs(estimate):
            eigenvalue = estimate
            break
        eigenvalue = estimate
    return 2.0 * eigenvalue


def soft_threshold(v: np.ndarray, tau: float) -> np.ndarray:
    """Proximal operator of tau * ||.||_1: sign(v) * max(|v| - tau, 0)."""
    if tau < 0:
        raise ValueError("threshold must be non-negative")
    v = np.asarray(v, dtype=np.float64)
    return np.sign(v) * np.maximum(np.abs(v) - tau, 0.0)


def next_momentum(t: float) -> float:
    """t_{i+1} = (1 + sqrt(1 + 4 t_i^2)) / 2."""
    return (1.0 + math.sqrt(1.0 + 4.0 * t * t)) / 2.0


class FistaSolver:
    """Solves min ||A beta - X||^2 + lambda ||beta||_1 with step 1/gamma and Nesterov momentum."""

    def solve(self, problem: FistaProblem) -> FistaResult:
        a, x, lam = problem.a, problem.x, problem.lam
        gamma = lipschitz_constant(a)
        zero = np.zeros((a.shape[1], x.shape[1]))
        state = FistaState(beta=zero, beta_prev=zero, y=zero, gamma=gamma)
        # A beta_{i-1} and A y_i, carried along so each iteration needs one product with A
        a_beta_prev = np.zeros_like(x)
        a_y = np.zeros_like(x)
        trace: List[float] = []
        converged = False

        while state.iter < problem.max_iter:
            state.iter += 1
            gradient = 2.0 * (a.T @ (a_y - x))
            state.beta = soft_threshold(state.y - gradient / gamma, lam / gamma)
            a_beta = a @ state.beta
            residual = a_beta - x
            objective = float(np.sum(residual * residual) + lam * np.sum(np.abs(state.beta)))
            if not (math.isfinite(objective) and np.all(np.isfinite(state.beta))):
                raise FistaDivergenceError(state.iter)
            trace.append(objective)

            change = float(np.max(np.abs(state.beta - state.beta_prev)))
            t_next = next_momentum(state.t)
            momentum = (state.t - 1.0) / t_next
            state.y = state.beta + momentum * (state.beta - state.beta_prev)
            a_y = a_beta + momentum * (a_beta - a_beta_prev)
            state.beta_prev, a_beta_prev, state.t = state.beta, a_beta, t_next
            if change <= problem.tol:
                converged = True
                break

        logger.debug(
            "FISTA %s after %d iterations (gamma=%.4g, objective=%.6g)",
            "converged" if converged else "stopped", state.iter, gamma, trace[-1],
        )
        return FistaResult(state.beta, np.asarray(trace))
