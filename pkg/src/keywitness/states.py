"""Reference states, block form of four-partite states, and twirl maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, InputError
from .linalg import (DEFAULT_TOL, MAX_DIM, MultipartiteState, Tolerances, as_matrix,
                     is_hermitian)

KEY_BASIS = ("00", "01", "10", "11")
KEY_LABELS = ("A", "B")
SHIELD_LABELS = ("A'", "B'")

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

_s = 1 / np.sqrt(2)
# columns: Phi+, Phi-, Psi+, Psi-
BELL_BASIS = np.array([
    [_s, _s, 0, 0],
    [0, 0, _s, _s],
    [0, 0, _s, -_s],
    [_s, -_s, 0, 0],
], dtype=complex)
BELL_NAMES = ("Phi+", "Phi-", "Psi+", "Psi-")


def _key_index(k) -> int:
    if isinstance(k, str):
        try:
            return KEY_BASIS.index(k)
        except ValueError:
            raise InputError(f"key basis label must be one of {KEY_BASIS}, got {k!r}") from None
    return int(k)


@dataclass(frozen=True)
class BlockForm:
    """A state on ``A B A' B'`` split into 4x4 blocks over the key qubits.

    ``blocks[r, c]`` is the shield operator ``<ij| rho |kl>`` with ``r``, ``c``
    indexing ``00, 01, 10, 11``.
    """

    blocks: np.ndarray
    shield_dims: tuple[int, int]

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=complex)
        m = self.shield_dims[0] * self.shield_dims[1]
        if b.shape != (4, 4, m, m):
            raise InputError(f"blocks must have shape (4, 4, {m}, {m}), got {b.shape}")
        if not np.all(np.isfinite(b)):
            raise InputError("blocks have non-finite entries")
        b = b.copy()
        b.flags.writeable = False
        object.__setattr__(self, "blocks", b)
        object.__setattr__(self, "shield_dims", tuple(int(d) for d in self.shield_dims))

    def block(self, row, col) -> np.ndarray:
        """Block ``A_{row,col}``; labels are ``"00"``..``"11"`` or 0..3."""
        return self.blocks[_key_index(row), _key_index(col)]

    @property
    def shield_dim(self) -> int:
        return self.shield_dims[0] * self.shield_dims[1]

    def matrix(self) -> np.ndarray:
        m = self.shield_dim
        return self.blocks.transpose(0, 2, 1, 3).reshape(4 * m, 4 * m)

    def assemble(self, tol: Tolerances = DEFAULT_TOL) -> MultipartiteState:
        """The full density matrix as a validated state on ``A, B, A', B'``."""
        return MultipartiteState(self.matrix(), (2, 2) + self.shield_dims,
                                 KEY_LABELS + SHIELD_LABELS, tol=tol)

    @classmethod
    def from_matrix(cls, matrix, shield_dims=(1, 1)) -> "BlockForm":
        a = as_matrix(matrix)
        m = shield_dims[0] * shield_dims[1]
        if a.shape[0] != 4 * m:
            raise InputError(f"matrix dimension {a.shape[0]} != 4 * {m}")
        return cls(a.reshape(4, m, 4, m).transpose(0, 2, 1, 3), shield_dims)

    @classmethod
    def from_state(cls, state: MultipartiteState) -> "BlockForm":
        """Split a state whose first two subsystems are the key qubits."""
        if len(state.dims) == 2:
            shield = (1, 1)
        elif len(state.dims) == 4:
            shield = state.dims[2:]
        else:
            raise InputError(f"expected 2 or 4 subsystems, got dims {state.dims}")
        if state.dims[:2] != (2, 2):
            raise InputError(f"key part must be two qubits, got dims {state.dims[:2]}")
        return cls.from_matrix(state.matrix, shield)


@dataclass(frozen=True)
class BellDiagonal:
    """Probabilities of Phi+, Phi-, Psi+, Psi- in a Bell-diagonal state."""

    p: tuple[float, float, float, float]

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (4,) or not np.all(np.isfinite(p)):
            raise InputError("Bell-diagonal state needs four finite probabilities")
        if p.min() < -DEFAULT_TOL.psd or abs(p.sum() - 1) > DEFAULT_TOL.tr:
            raise InputError(f"invalid Bell-diagonal probabilities {tuple(p)}")
        p = np.clip(p, 0, None)
        object.__setattr__(self, "p", tuple(float(x) for x in p / p.sum()))

    def state(self) -> MultipartiteState:
        m = (BELL_BASIS * np.asarray(self.p)) @ BELL_BASIS.conj().T
        return MultipartiteState(m, (2, 2), KEY_LABELS)


def max_entangled(d: int) -> np.ndarray:
    """``sum_i |ii> / sqrt(d)``."""
    if d < 2:
        raise InputError(f"dimension must be at least 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1 / np.sqrt(d)
    return v


def _bipartite_dim(state: MultipartiteState) -> int:
    if len(state.dims) != 2 or state.dims[0] != state.dims[1]:
        raise InputError(f"expected a d x d bipartite state, got dims {state.dims}")
    return state.dims[0]


class Fidelity(NamedTuple):
    value: float
    distillable: bool


def fidelity(state: MultipartiteState) -> Fidelity:
    """Overlap with the maximally entangled state; distillable iff ``F > 1/d``."""
    d = _bipartite_dim(state)
    psi = max_entangled(d)
    f = float(np.real(psi.conj() @ state.matrix @ psi))
    return Fidelity(f, f > 1 / d)


def swap_operator(d: int) -> np.ndarray:
    """``V |a>|b> = |b>|a>`` on ``C^d (x) C^d``."""
    if d < 2:
        raise InputError(f"dimension must be at least 2, got {d}")
    v = np.zeros((d * d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            v[b * d + a, a * d + b] = 1
    return v


def pbit_state(d: int) -> BlockForm:
    """The private bit with a ``d x d`` shield and swap-operator coherences."""
    if d < 2:
        raise InputError(f"shield dimension must be at least 2, got {d}")
    if 4 * d * d > MAX_DIM:
        raise CapacityError(f"p-bit with d={d} exceeds dimension cap {MAX_DIM}")
    m = d * d
    blocks = np.zeros((4, 4, m, m), dtype=complex)
    c = 1 / (2 * m)
    blocks[0, 0] = blocks[3, 3] = c * np.eye(m)
    blocks[0, 3] = blocks[3, 0] = c * swap_operator(d)
    return BlockForm(blocks, (d, d))


def isotropic_state(f: float, d: int) -> MultipartiteState:
    """``F P + (1 - F)(1 - P)/(d^2 - 1)`` with ``P`` the maximally entangled projector."""
    if not 0 <= f <= 1:
        raise InputError(f"fidelity must lie in [0, 1], got {f}")
    psi = max_entangled(d)
    p = np.outer(psi, psi.conj())
    n = d * d
    return MultipartiteState(f * p + (1 - f) * (np.eye(n) - p) / (n - 1), (d, d),
                             KEY_LABELS if d == 2 else None)


def isotropic_twirl(state: MultipartiteState) -> MultipartiteState:
    """Project onto the isotropic family, keeping the fidelity."""
    d = _bipartite_dim(state)
    out = isotropic_state(min(max(fidelity(state).value, 0.0), 1.0), d)
    return MultipartiteState(out.matrix, state.dims, state.labels)


def bell_twirl(state: MultipartiteState) -> BellDiagonal:
    """Diagonal of a two-qubit state in the Bell basis."""
    if state.dims != (2, 2):
        raise InputError(f"Bell twirl needs a two-qubit state, got dims {state.dims}")
    p = np.real(np.einsum("ik,ij,jk->k", BELL_BASIS.conj(), state.matrix, BELL_BASIS))
    return BellDiagonal(tuple(p))


def locc_symmetrize(b: BlockForm) -> BlockForm:
    """Keep only the correlated/anticorrelated sector pattern, averaged.

    The output has ``(A00,00 + A11,11)/2`` and ``(A01,01 + A10,10)/2`` on the
    diagonal, ``(A00,11 + A11,00)/2`` in the corners and ``(A01,10 + A10,01)/2``
    in the centre; every other block is zero.
    """
    a = b.blocks
    if not all(is_hermitian(a[r, r], 1e-9) for r in range(4)):
        raise InputError("diagonal blocks must be Hermitian")
    out = np.zeros_like(a)
    out[0, 0] = out[3, 3] = 0.5 * (a[0, 0] + a[3, 3])
    out[1, 1] = out[2, 2] = 0.5 * (a[1, 1] + a[2, 2])
    out[0, 3] = out[3, 0] = 0.5 * (a[0, 3] + a[3, 0])
    out[1, 2] = out[2, 1] = 0.5 * (a[1, 2] + a[2, 1])
    return BlockForm(out, b.shield_dims)


def key_part(b: BlockForm) -> MultipartiteState:
    """Reduced state of the key qubits, ``Tr_{A'B'}``."""
    m = np.trace(b.blocks, axis1=2, axis2=3)
    return MultipartiteState(m, (2, 2), KEY_LABELS)


def product_shield(key: MultipartiteState | np.ndarray, shield=None) -> BlockForm:
    """Block form of ``key (x) shield`` (trivial 1-dim shield by default)."""
    k = key.matrix if isinstance(key, MultipartiteState) else as_matrix(key)
    if shield is None:
        return BlockForm.from_matrix(k, (1, 1))
    s = shield.matrix if isinstance(shield, MultipartiteState) else as_matrix(shield)
    dims = shield.dims if isinstance(shield, MultipartiteState) and len(shield.dims) == 2 \
        else (s.shape[0], 1)
    return BlockForm.from_matrix(np.kron(k, s), dims)
