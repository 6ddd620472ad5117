"""Lower bounds on distillable key and distillable entanglement.

All key bounds return a :class:`BoundReport`.  Values are reported raw: a
non-positive value means that no key is certified, and ``certified`` is just
``value > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InternalError
from .linalg import (MultipartiteState, binary_entropy, partial_trace, partial_transpose,
                     shannon_entropy, trace_norm, von_neumann_entropy)
from .optimize import SearchResult, bisect_root, golden_section, grid_search, refine
from .squeeze import SqueezeParams, privacy_squeeze
from .states import BellDiagonal, BlockForm
from .witness import WitnessSpec, expect, zz_expectation

GRID_POINTS = 10_000
GOLDEN_TOL = 1e-9
GOLDEN_MAXITER = 200
AGREEMENT_TOL = 1e-6


@dataclass(frozen=True)
class BoundReport:
    value: float
    method: str
    location: float | tuple | None = None
    iterations: int = 0
    residual: float = 0.0
    branch: str | None = None
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.value > 0

    def as_dict(self) -> dict:
        loc = self.location
        if isinstance(loc, tuple):
            loc = list(loc)
        return {"value": self.value, "certified": self.certified, "method": self.method,
                "location": loc, "iterations": self.iterations, "residual": self.residual,
                "branch": self.branch, "note": self.note}


@dataclass(frozen=True)
class Constants:
    """Thresholds of the single- and two-witness bounds.

    ``w_star`` is where the central single-witness bound turns positive,
    ``p_star`` the larger root of ``h(p) = 1/2`` and ``wz_min = 2 p_star - 1``.
    """

    w_star: float
    p_star: float
    wz_min: float
    w_star_residual: float
    p_star_residual: float
    iterations: tuple[int, int]


def _unit(name, x, lo=0.0, hi=1.0):
    x = float(x)
    if not (lo <= x <= hi):
        raise DomainError(f"{name}={x!r} outside [{lo}, {hi}]")
    return x


# ---------------------------------------------------------------------------
# distillable entanglement


def ed_hashing(state: MultipartiteState, bob: Sequence[str] | str | None = None) -> BoundReport:
    """Hashing bound ``S(rho_B) - S(rho_AB)``; ``bob`` defaults to the last subsystem."""
    if bob is None:
        bob = state.labels[-1]
    rho_b = partial_trace(state, bob)
    v = von_neumann_entropy(rho_b) - von_neumann_entropy(state)
    return BoundReport(v, "ed-hashing")


def ed_fidelity(f: float, d: int = 2) -> BoundReport:
    """Hashing after isotropic twirling, from the fidelity alone."""
    f = _unit("F", f)
    if d < 2:
        raise DomainError(f"d must be at least 2, got {d}")
    n = d * d
    p = np.full(n, (1 - f) / (n - 1))
    p[0] = f
    return BoundReport(np.log2(d) - shannon_entropy(p), "ed-fidelity")


def ed_bell(p) -> BoundReport:
    """``1 - H(p1, p2, p3, p4)`` for a Bell-diagonal state."""
    probs = p.p if isinstance(p, BellDiagonal) else BellDiagonal(tuple(p)).p
    return BoundReport(1 - shannon_entropy(probs), "ed-bell")


def log_negativity(state: MultipartiteState, cut) -> float:
    """``log2 || rho^Gamma ||_1`` across the bipartition ``cut``."""
    return float(np.log2(trace_norm(partial_transpose(state, cut))))


# ---------------------------------------------------------------------------
# key from the squeezed state


def _h(x):
    return binary_entropy(x)


def _h_scalar(x: float) -> float:
    # inner-loop version of binary_entropy for already-clipped scalars
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def kd_from_params(q: SqueezeParams) -> BoundReport:
    """``1 - h(p1 + p2) - H(p1, p2, p3, p4)`` evaluated in two algebraic forms."""
    direct = 1 - _h(q.p_plus) - shannon_entropy(q.probabilities)
    sectors = 1 - 2 * _h(q.p_plus)
    if q.xi_plus is not None:
        sectors -= q.p_plus * _h(q.xi_plus)
    if q.xi_minus is not None:
        sectors -= q.p_minus * _h(q.xi_minus)
    residual = abs(direct - sectors)
    if residual > 1e-10:
        raise InternalError(f"squeezed key bound forms disagree by {residual:.3e}")
    return BoundReport(direct, "kd-params", residual=residual)


# ---------------------------------------------------------------------------
# single witness


def kappa(p, w: float):
    """Worst-case key at fixed ``p+`` for witness value ``w`` (vectorized in ``p``).

    ``kappa(p) = p - 2 h(p) - p h((p + w) / 2p)`` on ``w <= p <= 1``.
    """
    p = np.asarray(p, dtype=float)
    safe = np.where(p > 0, p, 1.0)
    arg = np.clip((safe + w) / (2 * safe), 0.5, 1.0)
    coh = np.where(p > 0, p * binary_entropy(arg), 0.0)
    out = p - 2 * binary_entropy(p) - coh
    return float(out) if out.ndim == 0 else out


def kappa_derivative(p, w: float):
    """``d kappa / d p+ = 1/2 log2[p^2 (p^2 - w^2) / (1 - p)^4]`` for ``w < p < 1``."""
    p = np.asarray(p, dtype=float)
    return 0.5 * np.log2(p ** 2 * (p ** 2 - w ** 2) / (1 - p) ** 4)


def kappa_critical_point(w: float) -> float:
    """Root in ``[w, 1]`` of ``4p^3 - (6 + w^2) p^2 + 4p - 1``.

    The cubic is ``p^2 (p^2 - w^2) - (1 - p)^4`` after cancelling ``p^4``; it is
    ``-(1 - w)^4`` at ``p = w`` and ``1 - w^2`` at ``p = 1``, so the root exists
    and is unique there.
    """
    coeffs = [4.0, -(6.0 + w * w), 4.0, -1.0]
    roots = np.roots(coeffs)
    real = [r.real for r in roots if abs(r.imag) < 1e-7 and w - 1e-9 <= r.real <= 1 + 1e-9]
    if not real:
        raise InternalError(f"no cubic root in [{w}, 1]")
    p = min(max(real[0], w), 1.0)
    dpoly = np.polyder(coeffs)
    for _ in range(3):
        step = np.polyval(coeffs, p) / np.polyval(dpoly, p)
        if not np.isfinite(step):
            break
        p = min(max(p - step, w), 1.0)
    return float(p)


def _central_cubic(w: float) -> SearchResult:
    pts = [w, 1.0, kappa_critical_point(w)]
    vals = [kappa(p, w) for p in pts]
    k = int(np.argmin(vals))
    return SearchResult(pts[k], vals[k], 0)


def _central_grid(w: float, n: int = GRID_POINTS) -> tuple[SearchResult, SearchResult]:
    return refine(lambda p: kappa(p, w), w, 1.0, n, tol=GOLDEN_TOL, maxiter=GOLDEN_MAXITER)


def kd_single_central(w: float) -> BoundReport:
    """Central single-witness bound: the infimum of ``kappa`` over ``[w, 1]``.

    Computed from the critical point of ``kappa`` (a cubic root) and,
    independently, by a grid scan refined with golden-section search.  The two
    must agree to ``1e-6``.
    """
    w = _unit("w", w)
    if w == 1.0:
        return BoundReport(1.0, "central", location=1.0)
    cubic = _central_cubic(w)
    polished, _ = _central_grid(w)
    residual = abs(cubic.fx - polished.fx)
    if residual > AGREEMENT_TOL:
        raise InternalError(f"cubic and grid minimizers disagree by {residual:.3e} at w={w}")
    best = cubic if cubic.fx <= polished.fx else polished
    return BoundReport(best.fx, "central", location=best.x,
                       iterations=polished.iterations, residual=residual)


def kd_single_weak1(w: float) -> BoundReport:
    """``1 - h(w) - H(w, (1-w)/3, (1-w)/3, (1-w)/3)``, valid for ``w >= 1/4``."""
    w = _unit("w", w)
    if w < 0.25:
        raise DomainError(f"weak bound 1 requires w >= 1/4, got w={w}")
    r = (1 - w) / 3
    return BoundReport(1 - _h(w) - shannon_entropy([w, r, r, r]), "weak1")


def kd_single_weak2(w: float) -> BoundReport:
    """``1 - 2 h(w) - h((1 + w)/2)``."""
    w = _unit("w", w)
    return BoundReport(1 - 2 * _h(w) - _h((1 + w) / 2), "weak2")


def kd_single_approx(w: float) -> BoundReport:
    """``kappa`` at ``w + (1 - w)^4 / 2w^3`` (clipped to ``[w, 1]``)."""
    w = _unit("w", w)
    if w == 0:
        raise DomainError("approximate bound needs w > 0")
    p = min(max(w + (1 - w) ** 4 / (2 * w ** 3), w), 1.0)
    return BoundReport(kappa(p, w), "approx", location=p)


# ---------------------------------------------------------------------------
# two observables


def _fold(wz: float) -> tuple[float, str]:
    wz = _unit("wz", wz, -1.0, 1.0)
    return abs(wz), ("anticorrelated" if wz < 0 else "correlated")


def xi_minus_min(wx: float, wz: float) -> float:
    """Smallest anticorrelated-sector coherence allowed by ``wx`` and ``wz``."""
    if wz >= 1:
        return 0.5
    return max(0.5, (wx - wz) / (1 - wz))


def xi_plus_min(wx: float, wz: float) -> float:
    """Smallest correlated-sector coherence allowed, kept inside ``[1/2, 1]``."""
    return max(0.5, (wx + wz) / (1 + wz))


def kd_two_full(wx: float, wz: float) -> BoundReport:
    """Two-observable bound maximizing the sector entropies along the constraint line.

    ``wz`` may be signed; a negative value swaps the roles of the correlated
    and anticorrelated sectors and is reported as the ``anticorrelated`` branch.
    """
    wx = _unit("wx", wx)
    wz, branch = _fold(wz)
    note = "wx + wz <= 1: feasible region touches xi+ = 1/2" if wx + wz <= 1 else ""
    p_plus = (1 + wz) / 2
    base = 1 - 2 * _h(p_plus)
    if wz == 1.0:
        return BoundReport(base - _h((1 + wx) / 2), "two-full", location=None,
                           branch=branch, note=note)
    p_minus = 1 - p_plus
    a = (1 + wx) / (1 + wz)
    b = (1 - wz) / (1 + wz)
    lo = xi_minus_min(wx, wz)
    # past xi+ = 1/2 both entropies fall again, so the search stops there
    hi = min(1.0, (a - 0.5) / b)

    def f(xi):
        xi = np.asarray(xi, dtype=float)
        return p_minus * binary_entropy(xi) + p_plus * binary_entropy(np.clip(a - xi * b, 0, 1))

    if hi <= lo:
        fmax = float(f(lo))
        return BoundReport(base - fmax, "two-full", location=lo, branch=branch, note=note)
    def f_scalar(xi):
        return p_minus * _h_scalar(xi) + p_plus * _h_scalar(min(max(a - xi * b, 0.0), 1.0))

    gs = golden_section(f_scalar, lo, hi, maximize=True,
                        tol=GOLDEN_TOL, maxiter=GOLDEN_MAXITER)
    grid = grid_search(f, lo, hi, GRID_POINTS, maximize=True)
    if grid.fx > gs.fx + AGREEMENT_TOL:
        raise InternalError(f"golden-section sup {gs.fx} below grid value {grid.fx}")
    best = gs if gs.fx >= grid.fx else grid
    return BoundReport(base - best.fx, "two-full", location=best.x, iterations=gs.iterations,
                       residual=abs(gs.fx - grid.fx), branch=branch, note=note)


def kd_two_weak(wx: float, wz: float) -> BoundReport:
    """Closed-form two-observable bound using the smallest allowed coherences."""
    wx = _unit("wx", wx)
    wz, branch = _fold(wz)
    p_plus = (1 + wz) / 2
    xm, xp = xi_minus_min(wx, wz), xi_plus_min(wx, wz)
    v = 1 - 2 * _h(p_plus) - (1 - p_plus) * _h(xm) - p_plus * _h(xp)
    return BoundReport(v, "two-weak", location=(xm, xp), branch=branch)


def kd_w_wz(w: float, wz: float) -> BoundReport:
    """Bound from the corner witness ``w`` together with ``wz``.

    Requires ``(1 + wz)/2 >= w``; otherwise ``p2`` would be negative.
    """
    w = _unit("w", w)
    wz = _unit("wz", wz)
    p_plus = (1 + wz) / 2
    if p_plus < w:
        raise DomainError(f"physicality (1 + wz)/2 >= w violated: (1 + {wz})/2 < {w}")
    v = p_plus * (1 - _h(0.5 + w / (2 * p_plus))) - 2 * _h(p_plus)
    return BoundReport(v, "w-wz")


# ---------------------------------------------------------------------------


def bound_from_state(spec: WitnessSpec, b: BlockForm) -> tuple[dict, BoundReport]:
    """Measure the witness described by ``spec`` on ``b`` and apply its bound.

    ``corner`` uses the central single-witness bound, ``xx`` the full
    two-observable bound with the state's ``<ZZ>``, and ``zz`` the same bound
    with no coherence information.
    """
    zz = zz_expectation(b)
    if spec.key_pattern == "corner":
        val = abs(expect(spec, b))
        return {"w": val, "wz": abs(zz)}, kd_single_central(min(val, 1.0))
    if spec.key_pattern == "xx":
        val = abs(expect(spec, b))
        return {"wx": val, "wz": abs(zz)}, kd_two_full(min(val, 1.0), float(np.clip(zz, -1, 1)))
    return {"wz": abs(zz)}, kd_two_full(0.0, float(np.clip(zz, -1, 1)))


def squeezed_bound(b: BlockForm) -> BoundReport:
    """Key bound from the full squeezed state (needs the whole block form)."""
    return kd_from_params(privacy_squeeze(b))


def find_constants() -> Constants:
    """Locate the single-witness threshold and the ``h(p) = 1/2`` root by bisection."""
    ws = bisect_root(lambda w: kd_single_central(w).value, 0.85, 0.95, xtol=1e-6)
    ps = bisect_root(lambda p: _h(p) - 0.5, 0.5, 1.0, xtol=1e-9)
    return Constants(ws.x, ps.x, 2 * ps.x - 1, ws.fx, ps.fx, (ws.iterations, ps.iterations))
