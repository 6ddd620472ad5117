"""Privacy-squeezed Bell-diagonal state of a four-partite block form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistencyError, InputError
from .linalg import DEFAULT_TOL, MultipartiteState, Tolerances, trace_norm
from .states import KEY_LABELS, BlockForm


@dataclass(frozen=True)
class SqueezeParams:
    """Bell-basis weights ``p1..p4`` of the privacy-squeezed state.

    ``p1 >= p2`` and ``p3 >= p4`` always hold: the coherences are trace norms.
    The sector parameters ``xi_plus``/``xi_minus`` are ``None`` when the
    corresponding sector weight vanishes.
    """

    p1: float
    p2: float
    p3: float
    p4: float

    def __post_init__(self):
        p = np.array([self.p1, self.p2, self.p3, self.p4], dtype=float)
        if not np.all(np.isfinite(p)) or p.min() < -DEFAULT_TOL.psd:
            raise InputError(f"invalid squeezed probabilities {tuple(p)}")
        if abs(p.sum() - 1) > DEFAULT_TOL.tr:
            raise InputError(f"squeezed probabilities sum to {p.sum()!r}")
        p = np.clip(p, 0.0, 1.0)
        p = p / p.sum()
        # order within each sector; the coherence is a norm, so no sign is lost
        p[0], p[1] = max(p[0], p[1]), min(p[0], p[1])
        p[2], p[3] = max(p[2], p[3]), min(p[2], p[3])
        for name, v in zip(("p1", "p2", "p3", "p4"), p):
            object.__setattr__(self, name, float(v))

    @classmethod
    def from_sectors(cls, p_plus, xi_plus, xi_minus) -> "SqueezeParams":
        p_minus = 1 - p_plus
        return cls(p_plus * xi_plus, p_plus * (1 - xi_plus),
                   p_minus * xi_minus, p_minus * (1 - xi_minus))

    @property
    def probabilities(self) -> tuple[float, float, float, float]:
        return (self.p1, self.p2, self.p3, self.p4)

    @property
    def p_plus(self) -> float:
        return self.p1 + self.p2

    @property
    def p_minus(self) -> float:
        return self.p3 + self.p4

    @property
    def xi_plus(self) -> float | None:
        return self.p1 / self.p_plus if self.p_plus > 0 else None

    @property
    def xi_minus(self) -> float | None:
        return self.p3 / self.p_minus if self.p_minus > 0 else None


def privacy_squeeze(b: BlockForm, tol: Tolerances = DEFAULT_TOL) -> SqueezeParams:
    """Squeeze a block form to ``(p1, p2, p3, p4)``.

    ``p1 + p2`` and ``p3 + p4`` are the traces of the correlated and
    anticorrelated diagonal blocks; ``p1 - p2`` and ``p3 - p4`` are the trace
    norms of the matching coherence blocks.
    """
    a = b.blocks
    p_plus = float(np.real(np.trace(a[0, 0] + a[3, 3])))
    p_minus = float(np.real(np.trace(a[1, 1] + a[2, 2])))
    c_plus = trace_norm(a[0, 3] + a[3, 0])
    c_minus = trace_norm(a[1, 2] + a[2, 1])
    p = np.array([p_plus + c_plus, p_plus - c_plus, p_minus + c_minus, p_minus - c_minus]) / 2
    if p[1] < -tol.psd or p[3] < -tol.psd:
        raise InconsistencyError(
            f"coherence exceeds sector weight (p2={p[1]:.3e}, p4={p[3]:.3e}); "
            "input is not a valid state")
    p = np.clip(p, 0.0, 1.0)
    return SqueezeParams(*(p / p.sum()))


def sigma_matrix(q: SqueezeParams) -> MultipartiteState:
    """The squeezed state as an explicit two-qubit density matrix."""
    m = np.zeros((4, 4))
    m[0, 0] = m[3, 3] = q.p_plus / 2
    m[1, 1] = m[2, 2] = q.p_minus / 2
    m[0, 3] = m[3, 0] = (q.p1 - q.p2) / 2
    m[1, 2] = m[2, 1] = (q.p3 - q.p4) / 2
    return MultipartiteState(m, (2, 2), KEY_LABELS)
