"""Independent reference implementations used only by the tests."""
from typing import Dict, List

import numpy as np


def lbem_bits_literal(p: np.ndarray) -> List[int]:
    """Binary code of one time point, filled position by position with 1-based indices.

    v[2(i-1)-1] = [p_i <= p_{i-1}] for 2 <= i <= M
    v[2(i-1)]   = [p_i <= p_{i+1}] for 2 <= i <= M-1
    v[2M-2]     = [p_M <= p_1]
    """
    values = {i + 1: float(v) for i, v in enumerate(p)}
    m_count = len(values)
    x = 2 * m_count - 2
    v: Dict[int, int] = {}
    for i in range(2, m_count + 1):
        v[2 * (i - 1) - 1] = 1 if values[i] <= values[i - 1] else 0
    for i in range(2, m_count):
        v[2 * (i - 1)] = 1 if values[i] <= values[i + 1] else 0
    v[x] = 1 if values[m_count] <= values[1] else 0
    return [v[position] for position in range(1, x + 1)]


def pack_literal(bits: List[int], width: int) -> List[int]:
    """Group bits MSB-first into ``width``-bit integers, zero-padding the last group."""
    codes = []
    for start in range(0, len(bits), width):
        group = bits[start:start + width]
        group = group + [0] * (width - len(group))
        value = 0
        for bit in group:
            value = value * 2 + bit
        codes.append(value)
    return codes


def lasso_objective(a: np.ndarray, x: np.ndarray, beta: np.ndarray, lam: float) -> float:
    residual = a @ beta - x
    return float(np.sum(residual ** 2) + lam * np.sum(np.abs(beta)))


def lasso_duality_gap(a: np.ndarray, x: np.ndarray, beta: np.ndarray, lam: float) -> float:
    """Primal objective minus the dual value of the scaled residual; bounds the distance to the optimum."""
    residual = a @ beta - x
    correlation = np.max(np.abs(2.0 * a.T @ residual))
    scale = 1.0 if correlation <= lam else lam / correlation
    u = 2.0 * scale * residual
    dual = float(-np.sum(u * x) - 0.25 * np.sum(u * u))
    return lasso_objective(a, x, beta, lam) - dual


def ista(
    a: np.ndarray, x: np.ndarray, lam: float, iterations: int, tol: float = 0.0, gap_tol: float = 0.0,
) -> np.ndarray:
    """Plain proximal gradient (no momentum) with step 1/L, L = 2 * sigma_max(A)^2, from beta = 0.

    ``gap_tol`` stops once the duality gap falls below ``gap_tol`` times the objective,
    checked every 100 iterations.
    """
    lipschitz = 2.0 * np.linalg.norm(a, 2) ** 2
    beta = np.zeros((a.shape[1],) + x.shape[1:])
    for iteration in range(iterations):
        gradient = 2.0 * a.T @ (a @ beta - x)
        step = beta - gradient / lipschitz
        updated = np.sign(step) * np.maximum(np.abs(step) - lam / lipschitz, 0.0)
        if tol and np.max(np.abs(updated - beta)) <= tol:
            return updated
        beta = updated
        if gap_tol and iteration % 100 == 99:
            if lasso_duality_gap(a, x, beta, lam) <= gap_tol * lasso_objective(a, x, beta, lam):
                return beta
    return beta
