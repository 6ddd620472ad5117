import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from keywitness.errors import CapacityError, InputError
from keywitness.linalg import (MultipartiteState, Tolerances, binary_entropy, eigh,
                               partial_trace, partial_transpose, purify, shannon_entropy,
                               tensor, trace_norm, von_neumann_entropy)
from keywitness.states import SX, SY, SZ, max_entangled, pbit_state, swap_operator

from oracles import random_density, random_unitary

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def bell():
    return MultipartiteState.from_vector(max_entangled(2), (2, 2))


class TestTraceNorm:
    def test_diagonal(self):
        assert trace_norm(np.diag([1.0, -2.0])) == pytest.approx(3.0)

    @pytest.mark.parametrize("n", [1, 3, 8])
    def test_zero(self, n):
        assert trace_norm(np.zeros((n, n))) == 0.0

    def test_swap_is_unitary(self):
        v = swap_operator(2)
        # oracle: plain SVD
        assert trace_norm(v) == pytest.approx(np.linalg.svd(v, compute_uv=False).sum())
        assert trace_norm(v) == pytest.approx(4.0)

    def test_non_hermitian_uses_singular_values(self, rng):
        a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        assert trace_norm(a) == pytest.approx(np.linalg.svd(a, compute_uv=False).sum())

    def test_rejects_nan(self):
        with pytest.raises(InputError):
            trace_norm(np.array([[np.nan, 0], [0, 1]]))

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_unitary_invariance(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        u, v = random_unitary(6, rng), random_unitary(6, rng)
        assert abs(trace_norm(u @ a @ v) - trace_norm(a)) < 1e-9

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_trace_against_contraction(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        u = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        u /= np.linalg.norm(u, 2)
        assert abs(np.trace(a @ u)) <= trace_norm(a) + 1e-9


class TestTensor:
    def test_identities(self):
        np.testing.assert_array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_zz(self):
        np.testing.assert_array_equal(tensor(SZ, SZ), np.diag([1, -1, -1, 1]))

    def test_xx_minus_yy(self):
        expected = np.zeros((4, 4))
        expected[0, 3] = expected[3, 0] = 2
        np.testing.assert_allclose(tensor(SX, SX) - tensor(SY, SY), expected, atol=1e-15)

    def test_first_factor_is_slowest(self):
        e0 = np.diag([1.0, 0.0])
        assert tensor(e0, np.eye(3))[:3, :3].trace() == 3

    def test_capacity(self):
        with pytest.raises(CapacityError):
            tensor(np.eye(64), np.eye(65))


class TestPartialTrace:
    def test_bell_marginal(self):
        np.testing.assert_allclose(partial_trace(bell(), "A").matrix, np.eye(2) / 2, atol=1e-15)

    def test_product(self, rng):
        ra, rb = random_density(2, rng), random_density(3, rng)
        s = MultipartiteState(np.kron(ra, rb), (2, 3), ("A", "B"))
        np.testing.assert_allclose(partial_trace(s, ["A"]).matrix, ra, atol=1e-14)
        np.testing.assert_allclose(partial_trace(s, ["B"]).matrix, rb, atol=1e-14)

    def test_pbit_key_part(self):
        s = pbit_state(2).assemble()
        k = partial_trace(s, ["A", "B"]).matrix
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[3, 3] = 0.5
        # coherence Tr(V) / 2d^2 = 2/8
        expected[0, 3] = expected[3, 0] = 0.25
        np.testing.assert_allclose(k, expected, atol=1e-15)

    def test_unknown_label(self):
        with pytest.raises(InputError):
            partial_trace(bell(), ["C"])

    def test_trace_preserved_and_composes(self, rng):
        s = MultipartiteState(random_density(24, rng), (2, 3, 4), ("A", "B", "C"))
        step = partial_trace(partial_trace(s, ["B", "C"]), ["C"])
        direct = partial_trace(s, ["C"])
        np.testing.assert_allclose(step.matrix, direct.matrix, atol=1e-14)
        assert np.trace(direct.matrix).real == pytest.approx(1.0)

    def test_kept_order_follows_state(self, rng):
        s = MultipartiteState(random_density(6, rng), (2, 3), ("A", "B"))
        assert partial_trace(s, ["B", "A"]).labels == ("A", "B")


class TestPartialTranspose:
    def test_bell_spectrum(self):
        vals = np.linalg.eigvalsh(partial_transpose(bell(), (["A"], ["B"])))
        np.testing.assert_allclose(sorted(vals), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)

    def test_product_spectrum(self, rng):
        ra, rb = random_density(2, rng), random_density(2, rng)
        s = MultipartiteState(np.kron(ra, rb), (2, 2))
        np.testing.assert_allclose(np.linalg.eigvalsh(partial_transpose(s, "A")),
                                   np.linalg.eigvalsh(s.matrix), atol=1e-14)

    def test_maximally_mixed_is_ppt(self):
        s = MultipartiteState(np.eye(4) / 4, (2, 2))
        assert np.linalg.eigvalsh(partial_transpose(s, "A")).min() >= 0

    def test_hermitian(self, rng):
        s = MultipartiteState(random_density(16, rng), (2, 2, 2, 2))
        pt = partial_transpose(s, ["A", "A'"])
        np.testing.assert_allclose(pt, pt.conj().T, atol=1e-15)

    @pytest.mark.parametrize("cut", [["A", "B"], [], (["A"], ["A"])])
    def test_invalid_cut(self, cut):
        with pytest.raises(InputError):
            partial_transpose(bell(), cut)


class TestEigh:
    def test_pauli_x(self):
        np.testing.assert_allclose(eigh(SX).eigenvalues, [1, -1])

    def test_descending(self):
        np.testing.assert_allclose(eigh(np.diag([3.0, 1.0, 2.0])).eigenvalues, [3, 2, 1])

    @pytest.mark.parametrize("n", [8, 64])
    def test_reconstruction(self, rng, n):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = a + a.conj().T
        vals, vecs = eigh(a)
        assert np.abs(vecs @ np.diag(vals) @ vecs.conj().T - a).max() < 1e-10
        assert np.abs(vecs.conj().T @ vecs - np.eye(n)).max() < Tolerances().orth

    def test_rejects_non_hermitian(self):
        with pytest.raises(InputError):
            eigh(np.array([[0, 1], [0, 0]]))


class TestPurify:
    def test_pure_input(self):
        p = purify(bell())
        assert p.env_dim == 1
        assert abs(abs(np.vdot(p.vector, max_entangled(2))) - 1) < 1e-12

    def test_mixed_qubit(self):
        p = purify(MultipartiteState(np.eye(2) / 2))
        assert p.env_dim == 2
        np.testing.assert_allclose(partial_trace(p.state(), ["A"]).matrix, np.eye(2) / 2,
                                   atol=1e-15)

    def test_pbit_rank(self):
        s = pbit_state(2).assemble()
        p = purify(s)
        # rank from the block structure: I (x) I + X (x) V has eigenvalues 0, 2; d^2 of them are 2
        assert p.env_dim == 4 == np.linalg.matrix_rank(s.matrix)
        marginal = partial_trace(p.state(), list(s.labels)).matrix
        assert np.abs(marginal - s.matrix).max() < 1e-10

    @settings(max_examples=20, deadline=None)
    @given(seeds, st.integers(1, 6))
    def test_round_trip(self, seed, rank):
        rng = np.random.default_rng(seed)
        s = MultipartiteState(random_density(6, rng, rank), (2, 3))
        marginal = partial_trace(purify(s).state(), list(s.labels))
        assert np.abs(marginal.matrix - s.matrix).max() < 1e-10


class TestEntropy:
    def test_pure_zero(self):
        assert von_neumann_entropy(bell()) == pytest.approx(0.0, abs=1e-12)

    def test_qubit_mixed(self):
        assert von_neumann_entropy(MultipartiteState(np.eye(2) / 2)) == pytest.approx(1.0)

    def test_bell_diagonal(self):
        from keywitness.states import BellDiagonal

        s = BellDiagonal((0.5, 0.25, 0.125, 0.125)).state()
        assert von_neumann_entropy(s) == pytest.approx(1.75)

    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_additivity(self, seed):
        rng = np.random.default_rng(seed)
        a, b = random_density(2, rng), random_density(3, rng)
        joint = von_neumann_entropy(np.kron(a, b))
        assert abs(joint - von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-9

    def test_tiny_negative_eigenvalue_clipped(self):
        m = np.diag([1.0 + 5e-11, -5e-11])
        assert von_neumann_entropy(m) == pytest.approx(0.0, abs=1e-9)

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(InputError):
            von_neumann_entropy(np.diag([1.1, -0.1]))

    def test_shannon(self):
        assert shannon_entropy([1, 0, 0, 0]) == 0.0
        assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)

    def test_shannon_rejects_bad_sum(self):
        with pytest.raises(InputError):
            shannon_entropy([0.5, 0.4])

    def test_binary(self):
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.0) == binary_entropy(1.0) == 0.0
        np.testing.assert_allclose(binary_entropy(np.array([0.25, 0.75])), 0.8112781244591328)

    def test_binary_half_at_089(self):
        # larger root of h(p) = 1/2 sits near 0.89
        assert binary_entropy(0.89) == pytest.approx(0.5, abs=2e-3)


class TestStateValidation:
    def test_rejects_bad_trace(self):
        with pytest.raises(InputError):
            MultipartiteState(np.eye(2))

    def test_rejects_negative(self):
        with pytest.raises(InputError):
            MultipartiteState(np.diag([1.5, -0.5]))

    def test_rejects_dims_mismatch(self):
        with pytest.raises(InputError):
            MultipartiteState(np.eye(4) / 4, (2, 3))

    def test_immutable(self):
        s = bell()
        with pytest.raises(AttributeError):
            s.dims = (4,)
        with pytest.raises(ValueError):
            s.matrix[0, 0] = 1
