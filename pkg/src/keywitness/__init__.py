"""Lower bounds on distillable secret key from privacy witness measurements."""

from .bounds import (BoundReport, Constants, bound_from_state, ed_bell, ed_fidelity, ed_hashing,
                     find_constants, kd_from_params, kd_single_approx, kd_single_central,
                     kd_single_weak1, kd_single_weak2, kd_two_full, kd_two_weak, kd_w_wz, kappa,
                     log_negativity, squeezed_bound)
from .dw import CqqEnsemble, cqq_state, dw_rate, holevo
from .errors import (CapacityError, DomainError, InconsistencyError, InputError, InternalError,
                     KeyWitnessError, ParseError)
from .linalg import (MultipartiteState, Spectrum, Tolerances, binary_entropy, eigh,
                     partial_trace, partial_transpose, purify, shannon_entropy, tensor,
                     trace_norm, von_neumann_entropy)
from .squeeze import SqueezeParams, privacy_squeeze, sigma_matrix
from .states import (BellDiagonal, BlockForm, bell_twirl, fidelity, isotropic_state,
                     isotropic_twirl, locc_symmetrize, max_entangled, pbit_state, product_shield,
                     swap_operator)
from .witness import (PauliDecomposition, WitnessSpec, count_settings, expect, pauli_decompose,
                      split_nonhermitian, tomography_decomposition, w, witness_operator,
                      wx, wz)

__version__ = "0.1.0"
