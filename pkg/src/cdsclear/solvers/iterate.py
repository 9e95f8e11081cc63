"""
Damped fixed-point iteration of the clearing map in floating point.
"""
from __future__ import annotations

import logging

import numpy as np

from cdsclear.config import Settings, get_settings
from cdsclear.core.clearing import clearing_residual, float_clearing_step, vector_to_array
from cdsclear.core.numbers import NumericMode
from cdsclear.core.system import FinancialSystem
from cdsclear.core.vector import RecoveryVector
from cdsclear.solvers.schemas import SolveReport, SolverKind

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 10_000


def iterate_clearing(
    system: FinancialSystem,
    eps: float | None = None,
    max_iter: int | None = None,
    damping: float | None = None,
    start: RecoveryVector | None = None,
    settings: Settings | None = None,
) -> SolveReport:
    """Run ``r <- (1 - a) r + a f(r)`` until the residual drops below ``eps``.

    Args:
        system: The system.
        eps: Residual target (default ``settings.eps``).
        max_iter: Iteration cap (default ``settings.max_iter``).
        damping: Step weight ``a`` in (0, 1] (default ``settings.damping``).
        start: Starting point (default all ones).
        settings: Overrides the cached settings.

    Returns:
        A float-mode report with the last iterate, its independently
        recomputed residual and whether the target was reached.
    """
    settings = settings or get_settings()
    eps = settings.eps if eps is None else float(eps)
    max_iter = settings.max_iter if max_iter is None else max_iter
    damping = settings.damping if damping is None else float(damping)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if not 0 < damping <= 1:
        raise ValueError(f"damping must lie in (0, 1], got {damping}")

    x = np.ones(system.size) if start is None else vector_to_array(system, start)
    iterations = 0
    converged = False
    while True:
        f, _, _ = float_clearing_step(system, x)
        residual = float(np.max(np.abs(x - f))) if system.size else 0.0
        if residual < eps:
            converged = True
            break
        if iterations >= max_iter:
            break
        x = (1.0 - damping) * x + damping * f
        iterations += 1
        if iterations % PROGRESS_EVERY == 0:
            logger.debug("iteration %d: residual %.3e", iterations, residual)

    point = RecoveryVector(
        dict(zip(system.bank_ids, (float(v) for v in np.clip(x, 0.0, 1.0)))), NumericMode.FLOAT
    )
    report = SolveReport(
        SolverKind.ITERATE,
        solutions=[point],
        residual=clearing_residual(system, point),
        iterations=iterations,
        converged=converged,
    )
    if not converged:
        message = f"no convergence after {iterations} iterations (residual {report.residual:.3e})"
        logger.warning(message)
        report.warnings.append(message)
    return report
