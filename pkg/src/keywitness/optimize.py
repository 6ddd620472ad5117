"""Bracketed 1-D searches used by the bounds."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import bisect

from .errors import InternalError

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


class SearchResult(NamedTuple):
    x: float
    fx: float
    iterations: int


def golden_section(f: Callable[[float], float], a: float, b: float, *, maximize=False,
                   tol: float = 1e-9, maxiter: int = 200) -> SearchResult:
    """Golden-section search for the extremum of a unimodal ``f`` on ``[a, b]``.

    The endpoints are evaluated too, so a monotone ``f`` returns the better end.
    """
    sign = -1.0 if maximize else 1.0
    g = lambda x: sign * f(x)  # noqa: E731
    a, b = min(a, b), max(a, b)
    lo, hi = a, b
    h = hi - lo
    c, d = lo + INV_PHI2 * h, lo + INV_PHI * h
    yc, yd = g(c), g(d)
    it = 0
    while h > tol and it < maxiter:
        it += 1
        if yc < yd:
            hi, d, yd = d, c, yc
            h = hi - lo
            c = lo + INV_PHI2 * h
            yc = g(c)
        else:
            lo, c, yc = c, d, yd
            h = hi - lo
            d = lo + INV_PHI * h
            yd = g(d)
    pts = [(yc, c), (yd, d), (g(a), a), (g(b), b)]
    y, x = min(pts)
    return SearchResult(x, sign * y, it)


def grid_search(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int = 10_000,
                *, maximize=False) -> SearchResult:
    """Best of ``n`` equally spaced points on ``[a, b]`` (``f`` is vectorized)."""
    xs = np.linspace(a, b, n)
    ys = np.asarray(f(xs), dtype=float)
    k = int(np.argmax(ys) if maximize else np.argmin(ys))
    return SearchResult(float(xs[k]), float(ys[k]), n)


def refine(f_vec, a: float, b: float, n: int = 10_000, *, maximize=False,
           tol: float = 1e-9, maxiter: int = 200) -> tuple[SearchResult, SearchResult]:
    """Grid scan followed by golden-section polishing around the best grid point.

    Returns ``(polished, grid)`` so that callers can compare the two.
    """
    grid = grid_search(f_vec, a, b, n, maximize=maximize)
    step = (b - a) / (n - 1) if n > 1 else 0.0
    lo, hi = max(a, grid.x - step), min(b, grid.x + step)
    gs = golden_section(lambda x: float(f_vec(np.array([x]))[0]), lo, hi,
                        maximize=maximize, tol=tol, maxiter=maxiter)
    better = (gs.fx >= grid.fx) if maximize else (gs.fx <= grid.fx)
    best = gs if better else SearchResult(grid.x, grid.fx, gs.iterations)
    return best, grid


def bisect_root(f: Callable[[float], float], a: float, b: float, xtol: float) -> SearchResult:
    """Bisection root on a sign-changing bracket."""
    fa, fb = f(a), f(b)
    if np.sign(fa) == np.sign(fb):
        raise InternalError(f"bisection bracket [{a}, {b}] does not change sign "
                            f"(f(a)={fa:.3g}, f(b)={fb:.3g})")
    x, info = bisect(f, a, b, xtol=xtol, full_output=True, disp=False)
    return SearchResult(float(x), float(f(x)), info.iterations)
