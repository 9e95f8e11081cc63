"""
Root scanning of one-dimensional residual functions.
"""
from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np


def _bisect(fn: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, f_lo: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = float(fn(np.array([mid]))[0])
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_roots(
    fn: Callable[[np.ndarray], np.ndarray],
    lo: float = 0.0,
    hi: float = 1.0,
    step: float = 1e-3,
    tol: float = 1e-12,
) -> list[float]:
    """Zeros of ``fn`` on ``[lo, hi]`` by grid scan and bisection.

    ``fn`` is evaluated on whole grids at once. Grid points where
    ``|fn| <= tol`` count as roots; every sign change between neighbouring
    grid points is refined by bisection to width ``tol``. Roots between grid
    points where ``fn`` touches zero without changing sign are missed.

    Returns:
        Sorted roots.
    """
    if hi < lo or step <= 0:
        raise ValueError("need lo <= hi and a positive step")
    count = max(1, math.ceil((hi - lo) / step))
    grid = np.linspace(lo, hi, count + 1)
    values = np.asarray(fn(grid), dtype=float)

    zero = np.abs(values) <= tol
    roots = [float(x) for x in grid[zero]]
    change = (values[:-1] * values[1:] < 0) & ~zero[:-1] & ~zero[1:]
    for i in np.flatnonzero(change):
        roots.append(_bisect(fn, float(grid[i]), float(grid[i + 1]), float(values[i]), tol))
    return sorted(roots)
