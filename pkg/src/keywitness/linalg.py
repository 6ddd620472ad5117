"""Dense complex matrix kernel.

Density operators are plain ``numpy`` arrays wrapped in
:class:`MultipartiteState`, which carries the subsystem dimensions and
labels.  The composite index ordering is big-endian: the first subsystem is
the slowest varying index, so for labels ``(A, B, A', B')`` the state splits
into 4x4 blocks over the key qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import CapacityError, DomainError, InputError

MAX_DIM = 4096

DEFAULT_LABELS = {
    1: ("A",),
    2: ("A", "B"),
    4: ("A", "B", "A'", "B'"),
}


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used when validating states."""

    herm: float = 1e-10
    tr: float = 1e-9
    psd: float = 1e-10
    orth: float = 1e-9


DEFAULT_TOL = Tolerances()


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite square complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def is_hermitian(m: np.ndarray, atol: float = DEFAULT_TOL.herm) -> bool:
    return bool(np.allclose(m, m.conj().T, rtol=0.0, atol=atol))


def _default_labels(n: int) -> tuple[str, ...]:
    return DEFAULT_LABELS.get(n, tuple(f"S{k}" for k in range(n)))


class MultipartiteState:
    """Density operator on a composite system.

    Parameters
    ----------
    matrix : array_like
        Square density matrix.
    dims : sequence of int, optional
        Subsystem dimensions (default: a single system).
    labels : sequence of str, optional
        Subsystem names.  Defaults to ``A, B, A', B'`` for four subsystems.
    tol : Tolerances
        Validation tolerances.
    validate : bool
        Check Hermiticity, unit trace and positivity.
    """

    __slots__ = ("matrix", "dims", "labels", "tol")

    def __init__(self, matrix, dims=None, labels=None, *, tol: Tolerances = DEFAULT_TOL,
                 validate: bool = True):
        m = as_matrix(matrix)
        dims = (m.shape[0],) if dims is None else tuple(int(d) for d in dims)
        labels = _default_labels(len(dims)) if labels is None else tuple(labels)
        if len(labels) != len(dims):
            raise InputError("labels and dims differ in length")
        if len(set(labels)) != len(labels):
            raise InputError(f"duplicate subsystem labels {labels}")
        if any(d < 1 for d in dims) or int(np.prod(dims)) != m.shape[0]:
            raise InputError(f"dims {dims} do not match matrix dimension {m.shape[0]}")
        if validate:
            if not is_hermitian(m, tol.herm):
                raise InputError("state is not Hermitian within tolerance")
            m = 0.5 * (m + m.conj().T)
            tr = np.trace(m).real
            if abs(tr - 1.0) > tol.tr:
                raise InputError(f"state trace {tr!r} differs from 1")
            lo = np.linalg.eigvalsh(m)[0]
            if lo < -tol.psd:
                raise InputError(f"state has negative eigenvalue {lo:.3e}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "tol", tol)

    def __setattr__(self, name, value):
        raise AttributeError("MultipartiteState is immutable")

    def __repr__(self):
        return f"MultipartiteState(dims={self.dims}, labels={self.labels})"

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown subsystem label {label!r}; have {self.labels}") from None

    @classmethod
    def from_vector(cls, psi, dims=None, labels=None, **kw) -> "MultipartiteState":
        """Projector onto the normalized vector ``psi``."""
        v = np.asarray(psi, dtype=complex).ravel()
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()), dims, labels, **kw)


class Spectrum(NamedTuple):
    """Eigenvalues in descending order and the matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eigh(m, tol: Tolerances = DEFAULT_TOL) -> Spectrum:
    """Hermitian eigendecomposition with eigenvalues sorted descending."""
    a = as_matrix(m)
    if not is_hermitian(a, tol.herm):
        raise InputError("eigh requires a Hermitian matrix")
    a = 0.5 * (a + a.conj().T)
    vals, vecs = np.linalg.eigh(a)
    return Spectrum(vals[::-1].copy(), vecs[:, ::-1].copy())


def trace_norm(m) -> float:
    """Sum of the singular values of ``m``."""
    a = as_matrix(m)
    if is_hermitian(a, 0.0):
        return float(np.abs(np.linalg.eigvalsh(a)).sum())
    return float(np.linalg.svd(a, compute_uv=False).sum())


def operator_norm(m) -> float:
    """Largest singular value."""
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def tensor(*factors, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker product; the first factor is the slowest varying index."""
    dim = 1
    for f in factors:
        dim *= np.asarray(f).shape[0]
    if dim > max_dim:
        raise CapacityError(f"tensor product dimension {dim} exceeds cap {max_dim}")
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return out


def _resolve(state: MultipartiteState, labels: Iterable[str]) -> list[int]:
    if isinstance(labels, str):
        labels = [labels]
    return sorted({state.index(lab) for lab in labels})


def partial_trace(state: MultipartiteState, keep: Iterable[str]) -> MultipartiteState:
    """Reduced state on the subsystems named in ``keep`` (original order kept)."""
    kept = _resolve(state, keep)
    if not kept:
        raise InputError("partial_trace needs at least one subsystem to keep")
    n = len(state.dims)
    traced = [k for k in range(n) if k not in kept]
    t = state.matrix.reshape(state.dims + state.dims)
    # contract each traced pair, highest axis first so indices stay valid
    for k in sorted(traced, reverse=True):
        t = np.trace(t, axis1=k, axis2=k + t.ndim // 2)
    dims = tuple(state.dims[k] for k in kept)
    d = int(np.prod(dims))
    return MultipartiteState(t.reshape(d, d), dims, [state.labels[k] for k in kept],
                             tol=state.tol, validate=False)


def _cut_groups(state: MultipartiteState, cut) -> tuple[list[int], list[int]]:
    if _is_pair_of_groups(cut):
        first, second = _resolve(state, cut[0]), _resolve(state, cut[1])
    else:
        first = _resolve(state, cut)
        second = [k for k in range(len(state.dims)) if k not in first]
    if not first or not second or set(first) & set(second) \
            or len(first) + len(second) != len(state.dims):
        raise InputError(f"{cut!r} is not a bipartition of {state.labels}")
    return first, second


def _is_pair_of_groups(cut) -> bool:
    return (isinstance(cut, (tuple, list)) and len(cut) == 2
            and all(not isinstance(g, str) for g in cut))


def partial_transpose(state: MultipartiteState, cut) -> np.ndarray:
    """Transpose the subsystems on the second side of a bipartition.

    ``cut`` is either a pair of label groups ``(first, second)`` or a single
    group taken as the first side, its complement being the second.
    """
    _, second = _cut_groups(state, cut)
    n = len(state.dims)
    t = state.matrix.reshape(state.dims + state.dims)
    axes = list(range(2 * n))
    for k in second:
        axes[k], axes[k + n] = axes[k + n], axes[k]
    return t.transpose(axes).reshape(state.dim, state.dim)


@dataclass(frozen=True)
class Purification:
    """Pure vector on system (x) environment; the environment index is fastest."""

    vector: np.ndarray
    dims: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def env_dim(self) -> int:
        return self.dims[-1]

    def state(self) -> MultipartiteState:
        return MultipartiteState(np.outer(self.vector, self.vector.conj()), self.dims,
                                 self.labels, validate=False)


def purify(state: MultipartiteState, env_label: str = "E") -> Purification:
    """Purify ``state`` with an environment of dimension equal to its rank."""
    vals, vecs = eigh(state.matrix, state.tol)
    keep = vals > state.tol.psd
    vals, vecs = vals[keep], vecs[:, keep]
    r = len(vals)
    # |psi> = sum_k sqrt(l_k) |v_k> |k>_E
    psi = (vecs * np.sqrt(vals)).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return Purification(psi, state.dims + (r,), state.labels + (env_label,))


def _spectrum_for_entropy(m: np.ndarray, tol: Tolerances) -> np.ndarray:
    vals = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if vals.size and vals[0] < -tol.psd:
        raise InputError(f"negative eigenvalue {vals[0]:.3e} in entropy argument")
    return np.clip(vals, 0.0, 1.0)


def _plogp(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = -p[nz] * np.log2(p[nz])
    return out


def von_neumann_entropy(state, tol: Tolerances = DEFAULT_TOL) -> float:
    """Von Neumann entropy in bits of a state or density matrix."""
    if isinstance(state, MultipartiteState):
        m, tol = state.matrix, state.tol
    else:
        m = as_matrix(state)
    return float(_plogp(_spectrum_for_entropy(m, tol)).sum())


def shannon_entropy(p: Sequence[float], tol: Tolerances = DEFAULT_TOL) -> float:
    """Shannon entropy in bits; tiny negative entries are clipped."""
    q = np.asarray(p, dtype=float).ravel()
    if not np.all(np.isfinite(q)):
        raise InputError("non-finite probability")
    if q.size and q.min() < -tol.psd:
        raise InputError(f"negative probability {q.min():.3e}")
    s = q.sum()
    if abs(s - 1.0) > 1e-6:
        raise InputError(f"probabilities sum to {s!r}, not 1")
    q = np.clip(q, 0.0, None)
    q = q / q.sum()
    return float(_plogp(q).sum())


def binary_entropy(x, clip: float = 1e-9):
    """Binary entropy ``h(x)`` in bits, elementwise.

    Arguments outside ``[0, 1]`` by less than ``clip`` are clipped; anything
    further out raises :class:`~keywitness.errors.DomainError`.
    """
    a = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(a)) or np.any(a < -clip) or np.any(a > 1 + clip):
        raise DomainError(f"binary entropy argument outside [0, 1]: {x!r}")
    a = np.clip(a, 0.0, 1.0)
    out = _plogp(a) + _plogp(1.0 - a)
    return float(out) if out.ndim == 0 else out
