"""Privacy witnesses, their expectation values and local measurement cost."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .errors import CapacityError, InputError, InternalError
from .linalg import DEFAULT_TOL, as_matrix, is_hermitian, operator_norm
from .states import I2, SX, SY, SZ, BlockForm

KEY_PATTERNS = ("corner", "xx", "zz")

# |00><11| + |11><00|
CORNER = np.zeros((4, 4), dtype=complex)
CORNER[0, 3] = CORNER[3, 0] = 1

PAULI = {"I": I2, "X": SX, "Y": SY, "Z": SZ}
MAX_SETTING_QUBITS = 6


@dataclass(frozen=True)
class WitnessSpec:
    """Shield operator ``U`` on ``A'B'`` plus the key-part pattern.

    ``U`` must be a contraction (largest singular value at most one).  The
    ``hermitian`` flag is inferred when left as ``None``.
    """

    shield_op: np.ndarray
    key_pattern: str = "corner"
    hermitian: bool | None = None

    def __post_init__(self):
        u = as_matrix(self.shield_op)
        if self.key_pattern not in KEY_PATTERNS:
            raise InputError(f"key pattern must be one of {KEY_PATTERNS}, got {self.key_pattern!r}")
        if operator_norm(u) > 1 + 1e-9:
            raise InputError(f"shield operator is not a contraction (norm {operator_norm(u):.6g})")
        herm = is_hermitian(u, DEFAULT_TOL.herm)
        if self.hermitian and not herm:
            raise InputError("shield operator flagged Hermitian but is not")
        u = u.copy()
        u.flags.writeable = False
        object.__setattr__(self, "shield_op", u)
        object.__setattr__(self, "hermitian", herm if self.hermitian is None else self.hermitian)

    @property
    def shield_dim(self) -> int:
        return self.shield_op.shape[0]


def witness_operator(spec: WitnessSpec) -> np.ndarray:
    """Full operator on ``A B A' B'``.

    ``corner`` is ``(|00><11| + |11><00|) (x) U``, i.e. ``(XX - YY)/2 (x) U``;
    ``xx`` is ``XX (x) U`` and ``zz`` is ``ZZ (x) 1``.
    """
    u = spec.shield_op
    if spec.key_pattern == "corner":
        return np.kron(CORNER, u)
    if spec.key_pattern == "xx":
        return np.kron(np.kron(SX, SX), u)
    return np.kron(np.kron(SZ, SZ), np.eye(spec.shield_dim))


def _check_dims(spec: WitnessSpec, b: BlockForm):
    if spec.shield_dim != b.shield_dim:
        raise InputError(f"shield operator dimension {spec.shield_dim} does not match "
                         f"state shield dimension {b.shield_dim}")


def _tr(u, a) -> complex:
    return complex(np.einsum("ij,ji->", u, a))


def expect(spec: WitnessSpec, b: BlockForm):
    """Expectation value ``Tr(W rho)`` computed blockwise.

    Real for a Hermitian shield operator.  Otherwise the complex number
    ``<W_R> + i <W_I>`` built from the Hermitian and anti-Hermitian parts of
    ``U`` is returned.
    """
    _check_dims(spec, b)
    a, u = b.blocks, spec.shield_op
    if spec.key_pattern == "corner":
        val = _tr(u, a[0, 3] + a[3, 0])
    elif spec.key_pattern == "xx":
        val = _tr(u, a[0, 3] + a[1, 2] + a[2, 1] + a[3, 0])
    else:
        val = _zz_signed(b)
    return val.real if spec.hermitian else val


def w(spec: WitnessSpec, b: BlockForm) -> float:
    """Witness value ``|<W>|``."""
    return float(abs(expect(spec, b)))


def _zz_signed(b: BlockForm) -> complex:
    a = b.blocks
    return complex(np.trace(a[0, 0]) - np.trace(a[1, 1]) - np.trace(a[2, 2]) + np.trace(a[3, 3]))


def zz_expectation(b: BlockForm) -> float:
    """Signed ``<Z (x) Z (x) 1>``; positive when correlated outcomes dominate."""
    return float(_zz_signed(b).real)


def wz(b: BlockForm) -> float:
    """``|<Z (x) Z (x) 1>|``; the sector weights are ``p+- = (1 +- wz)/2``."""
    return abs(zz_expectation(b))


def wx(spec: WitnessSpec, b: BlockForm) -> float:
    """``|<X (x) X (x) U>|`` for a Hermitian contraction ``U``."""
    if spec.key_pattern != "xx":
        raise InputError("wx needs a witness spec with key_pattern='xx'")
    if not spec.hermitian:
        raise InputError("wx needs a Hermitian shield operator")
    return w(spec, b)


def split_nonhermitian(u) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian parts ``(U_R, U_I)`` with ``U = U_R + i U_I``."""
    a = as_matrix(u)
    ah = a.conj().T
    return (a + ah) / 2, (a - ah) / 2j


@dataclass
class PauliDecomposition:
    """Real Pauli-string expansion ``sum_s c_s P_s`` of a Hermitian operator.

    String positions follow the tensor order, so ``"XYII"`` acts as X on the
    first qubit and Y on the second.
    """

    n_qubits: int
    terms: list[tuple[float, str]] = field(default_factory=list)

    @property
    def strings(self) -> list[str]:
        return [s for _, s in self.terms]

    def to_matrix(self) -> np.ndarray:
        d = 2 ** self.n_qubits
        out = np.zeros((d, d), dtype=complex)
        for c, s in self.terms:
            m = np.ones((1, 1), dtype=complex)
            for ch in s:
                m = np.kron(m, PAULI[ch])
            out += c * m
        return out


# row k of _TRANSFER maps a flattened (i, j) index to Tr(E_ij P_k)
_TRANSFER = np.array([PAULI[k].T.reshape(-1) for k in "IXYZ"])


def pauli_decompose(op, cutoff: float = 1e-12) -> PauliDecomposition:
    """Expand a Hermitian operator on ``n`` qubits into Pauli strings."""
    a = as_matrix(op)
    d = a.shape[0]
    n = int(round(np.log2(d))) if d > 0 else -1
    if n < 0 or 2 ** n != d:
        raise InputError(f"operator dimension {d} is not a power of two")
    if not is_hermitian(a, DEFAULT_TOL.herm):
        raise InputError("Pauli decomposition needs a Hermitian operator")
    # (i1..in, j1..jn) -> (i1 j1, ..., in jn), then one transfer per qubit
    t = a.reshape((2,) * (2 * n))
    t = t.transpose([ax for k in range(n) for ax in (k, k + n)]).reshape((4,) * n)
    for k in range(n):
        t = np.tensordot(_TRANSFER, t, axes=([1], [k]))
        t = np.moveaxis(t, 0, k)
    coeffs = np.real(t) / d
    terms = []
    for idx in itertools.product(range(4), repeat=n):
        c = float(coeffs[idx])
        if abs(c) >= cutoff:
            terms.append((c, "".join("IXYZ"[i] for i in idx)))
    return PauliDecomposition(n, terms)


def _covers(setting: str, string: str) -> bool:
    return all(s == "I" or s == t for s, t in zip(string, setting))


def _candidates(strings: list[str]) -> list[str]:
    cands = set()
    for s in strings:
        choices = ["XYZ" if ch == "I" else ch for ch in s]
        cands.update("".join(c) for c in itertools.product(*choices))
    return sorted(cands)


def count_settings(dec: PauliDecomposition) -> int:
    """Fewest local Pauli settings whose data estimates every string.

    A setting assigns X, Y or Z to each qubit and covers every string whose
    non-identity factors agree with it.  Identity-only strings need no
    measurement.  Solved exactly as a 0/1 set-cover program.
    """
    n = dec.n_qubits
    if n > MAX_SETTING_QUBITS:
        raise CapacityError(f"setting count limited to {MAX_SETTING_QUBITS} qubits, got {n}")
    strings = sorted({s for s in dec.strings if set(s) != {"I"}})
    if not strings:
        return 0
    cands = _candidates(strings)
    cover = np.array([[_covers(c, s) for c in cands] for s in strings], dtype=float)
    res = milp(np.ones(len(cands)), constraints=LinearConstraint(cover, lb=1, ub=np.inf),
               integrality=np.ones(len(cands)), bounds=Bounds(0, 1))
    if not res.success:
        raise InternalError(f"set-cover solver failed: {res.message}")
    return int(round(res.fun))


def tomography_decomposition(n: int) -> PauliDecomposition:
    """Every Pauli string on ``n`` qubits with unit weight (full tomography)."""
    return PauliDecomposition(n, [(1.0, "".join(s)) for s in itertools.product("IXYZ", repeat=n)])
