"""Devetak-Winter one-way key rate, computed from a purification.

This is a tomographic oracle: it needs the whole state, and is used to
cross-check the witness-based bounds on small examples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, InputError
from .linalg import MultipartiteState, partial_trace, purify, von_neumann_entropy

MAX_SYSTEM_DIM = 64


@dataclass(frozen=True)
class CqqEnsemble:
    """Outcomes of Alice's key measurement with the conditional Bob+Eve states."""

    outcomes: tuple[tuple[float, MultipartiteState], ...]
    bob_labels: tuple[str, ...]
    eve_label: str = "E"

    def bob(self) -> list[tuple[float, MultipartiteState]]:
        return [(p, partial_trace(s, self.bob_labels)) for p, s in self.outcomes]

    def eve(self) -> list[tuple[float, MultipartiteState]]:
        return [(p, partial_trace(s, self.eve_label)) for p, s in self.outcomes]


def cqq_state(state: MultipartiteState, bob_keeps_shield: bool = False,
              max_dim: int = MAX_SYSTEM_DIM) -> CqqEnsemble:
    """Measure ``A`` in the computational basis on a purification of ``state``.

    For each outcome the shield (``A'``, and ``B'`` unless ``bob_keeps_shield``)
    is traced out, leaving a conditional state on Bob's side and ``E``.
    """
    if state.dim > max_dim:
        raise CapacityError(f"state dimension {state.dim} exceeds oracle cap {max_dim}")
    if "A" not in state.labels or "B" not in state.labels:
        raise InputError(f"state needs subsystems A and B, has {state.labels}")
    ia = state.index("A")
    if state.dims[ia] != 2:
        raise InputError("key subsystem A must be a qubit")
    pur = purify(state)
    labels = pur.labels
    psi = pur.vector.reshape(pur.dims)

    bob = ["B"] + (["B'"] if bob_keeps_shield and "B'" in labels else [])
    kept = [lab for lab in labels if lab in bob or lab == "E"]
    traced = [lab for lab in labels if lab not in kept and lab != "A"]

    outcomes = []
    for i in range(2):
        phi = np.take(psi, i, axis=ia)
        rest = [lab for lab in labels if lab != "A"]
        order = [rest.index(lab) for lab in kept + traced]
        phi = np.transpose(phi, order)
        dk = int(np.prod([pur.dims[labels.index(lab)] for lab in kept]))
        mat = phi.reshape(dk, -1)
        prob = float(np.vdot(mat, mat).real)
        if prob <= state.tol.psd:
            continue
        rho = mat @ mat.conj().T / prob
        dims = [pur.dims[labels.index(lab)] for lab in kept]
        outcomes.append((prob, MultipartiteState(rho, dims, kept, validate=False)))
    return CqqEnsemble(tuple(outcomes), tuple(bob))


def holevo(ensemble) -> float:
    """``S(sum_i p_i rho_i) - sum_i p_i S(rho_i)`` in bits."""
    mats = [(p, s.matrix if isinstance(s, MultipartiteState) else np.asarray(s, dtype=complex))
            for p, s in ensemble]
    probs = np.array([p for p, _ in mats], dtype=float)
    if abs(probs.sum() - 1) > 1e-9:
        raise InputError(f"ensemble probabilities sum to {probs.sum()!r}")
    avg = sum(p * m for p, m in mats)
    return von_neumann_entropy(avg) - sum(p * von_neumann_entropy(m) for p, m in mats)


def dw_rate(state: MultipartiteState, bob_keeps_shield: bool = False,
            max_dim: int = MAX_SYSTEM_DIM) -> float:
    """One-way key rate ``chi(A:B) - chi(A:E)`` for a key measurement on ``A``."""
    ens = cqq_state(state, bob_keeps_shield, max_dim)
    return holevo(ens.bob()) - holevo(ens.eve())
