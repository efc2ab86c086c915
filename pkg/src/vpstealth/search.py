"""Bracketed golden-section search for unimodal functions on an interval."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GRID_POINTS = 64
RHO_TOL = 1e-9


def maximize_unimodal(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = RHO_TOL,
    grid: int = GRID_POINTS,
) -> tuple[float, float]:
    """Return ``(x_star, f(x_star))`` maximizing a unimodal ``f`` on ``[lo, hi]``.

    A coarse grid picks the bracket around the best point, golden-section
    narrows it to ``tol``, and the endpoints are compared explicitly so that a
    boundary optimum is returned exactly at the boundary.
    """
    xs = np.linspace(lo, hi, grid)
    vals = [f(float(x)) for x in xs]
    i = int(np.argmax(vals))
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, grid - 1)])

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x_star = 0.5 * (a + b)
    best = (x_star, f(x_star))
    # ties go to the endpoint: flat objectives report the boundary
    for edge, val in ((lo, vals[0]), (hi, vals[-1])):
        if val >= best[1]:
            best = (float(edge), val)
    return best


def minimize_unimodal(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = RHO_TOL,
    grid: int = GRID_POINTS,
) -> tuple[float, float]:
    x, v = maximize_unimodal(lambda t: -f(t), lo, hi, tol, grid)
    return x, -v
