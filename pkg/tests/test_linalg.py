import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from triq import linalg
from triq.errors import InvalidInputError, NumericalError
from triq.linalg import (
    SIGMA_X,
    SIGMA_Y,
    hermitian_eigenvalues,
    matrix_power,
    partial_trace,
    partial_trace_single,
    partial_transpose,
    spin_flip,
    spinflip_sqrt_spectrum,
    tensor_product,
)
from triq.states import canonical_state, density, ket, random_state

from conftest import random_density
from oracles import loop_partial_trace, loop_partial_transpose_second, loop_single, sqrt_eig_spinflip

P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)


class TestTensorProduct:
    def test_identity(self):
        assert_allclose(tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_sigma_y_squared(self):
        expected = np.zeros((4, 4))
        expected[0, 3], expected[1, 2], expected[2, 1], expected[3, 0] = -1, 1, 1, -1
        assert_allclose(tensor_product(SIGMA_Y, SIGMA_Y), expected)

    def test_projectors(self):
        out = tensor_product(P1, P0)
        expected = np.zeros((4, 4))
        expected[2, 2] = 1
        assert_allclose(out, expected)

    def test_block_structure(self, rng):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((3, 3))
        out = tensor_product(a, b)
        for i in range(2):
            for j in range(2):
                assert_allclose(out[3 * i:3 * i + 3, 3 * j:3 * j + 3], a[i, j] * b)


class TestPartialTrace:
    def test_product_state(self):
        rho = density(ket("111"))
        assert_allclose(partial_trace(rho, "C"), np.diag([0, 0, 0, 1]))

    def test_wrr_marginal_spectrum(self):
        rho_ab = partial_trace(density(canonical_state("WRR+")), "C")
        assert_allclose(hermitian_eigenvalues(rho_ab), [2 / 3, 1 / 3, 0, 0], atol=1e-14)

    def test_ghz(self):
        rho_ab = partial_trace(density(canonical_state("GHZ+")), "C")
        assert_allclose(rho_ab, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    @pytest.mark.parametrize("traced", ["A", "B", "C"])
    def test_matches_loop_oracle(self, rng, traced):
        for _ in range(20):
            rho = density(random_state(rng))
            assert_allclose(partial_trace(rho, traced), loop_partial_trace(rho, traced), atol=1e-14)

    def test_ordering(self):
        # |abc> = |101>: AC marginal keeps |11>, BC keeps |01>
        rho = density(ket("101"))
        assert partial_trace(rho, "B")[3, 3] == 1
        assert partial_trace(rho, "A")[1, 1] == 1

    def test_rejects_wrong_dim(self):
        with pytest.raises(InvalidInputError):
            partial_trace(np.eye(4) / 4, "C")
        with pytest.raises(InvalidInputError):
            partial_trace(np.eye(8) / 8, "D")


class TestPartialTraceSingle:
    def test_product(self):
        assert_allclose(partial_trace_single(density(ket("111")), "A"), P1)

    def test_family_one(self):
        a, b, g = 0.6, 0.48j, 0.64
        v = a * ket("110") + b * ket("101") + g * ket("011")
        w = hermitian_eigenvalues(partial_trace_single(density(v), "A"))
        assert_allclose(w, sorted([1 - g**2, g**2], reverse=True), atol=1e-14)

    def test_ghz_b(self):
        assert_allclose(partial_trace_single(density(canonical_state("GHZ+")), "B"), np.eye(2) / 2, atol=1e-15)

    @pytest.mark.parametrize("kept", ["A", "B", "C"])
    def test_matches_loop_oracle(self, rng, kept):
        rho = density(random_state(rng))
        assert_allclose(partial_trace_single(rho, kept), loop_single(rho, kept), atol=1e-14)

    def test_commutes_with_pair_trace(self, random_states):
        for v in random_states:
            rho = density(v)
            via_pair = partial_trace(rho, "C")  # AB
            reduced = np.einsum("abcb->ac", via_pair.reshape(2, 2, 2, 2))
            assert np.max(np.abs(reduced - partial_trace_single(rho, "A"))) <= 1e-12


class TestPartialTranspose:
    def test_identity_fixed(self):
        assert_allclose(partial_transpose(np.eye(4) / 4), np.eye(4) / 4)

    def test_ghz_marginal(self):
        rho_ab = partial_trace(density(canonical_state("GHZ+")), "C")
        assert_allclose(hermitian_eigenvalues(partial_transpose(rho_ab)), [0.5, 0.5, 0, 0], atol=1e-15)

    def test_wrr_marginal(self):
        rho_ab = partial_trace(density(canonical_state("WRR+")), "C")
        root = math.sqrt(1 / 9 + 4 / 9)
        expected = sorted([1 / 3, 1 / 3, (1 / 3 + root) / 2, (1 / 3 - root) / 2], reverse=True)
        assert_allclose(hermitian_eigenvalues(partial_transpose(rho_ab)), expected, atol=1e-14)

    def test_matches_loop_oracle(self, rng):
        for _ in range(20):
            rho = random_density(rng)
            assert_allclose(partial_transpose(rho, "second"), loop_partial_transpose_second(rho))

    def test_involution_and_trace(self, rng):
        for side in ("first", "second"):
            rho = random_density(rng)
            pt = partial_transpose(rho, side)
            assert np.array_equal(partial_transpose(pt, side), rho)
            assert abs(np.trace(pt) - np.trace(rho)) <= 1e-15
            assert linalg.is_hermitian(pt, 1e-15)

    def test_first_side_is_full_transpose_of_second(self, rng):
        rho = random_density(rng)
        assert_allclose(partial_transpose(rho, "first"), partial_transpose(rho, "second").T)

    def test_rejects(self):
        with pytest.raises(InvalidInputError):
            partial_transpose(np.eye(8) / 8)
        with pytest.raises(InvalidInputError):
            partial_transpose(np.eye(4) / 4, "third")


class TestEigenvalues:
    def test_diagonal(self):
        assert_allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [3, 2, 1])

    def test_sigma_x(self):
        assert_allclose(hermitian_eigenvalues(SIGMA_X), [1, -1])

    def test_wrr_lowercase(self):
        rho_ab = partial_trace(density(canonical_state("WRr+")), "C")
        assert_allclose(hermitian_eigenvalues(rho_ab), [5 / 6, 1 / 6, 0, 0], atol=1e-14)

    def test_reconstruction(self, rng):
        for _ in range(50):
            m = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            m = m + m.conj().T
            w, v = linalg.hermitian_eigh(m)
            assert np.all(np.diff(w) <= 0)
            assert np.max(np.abs(m - (v * w) @ v.conj().T)) <= 1e-9

    def test_density_sums_to_one(self, rng):
        for _ in range(50):
            assert abs(hermitian_eigenvalues(random_density(rng)).sum() - 1) <= 1e-10

    def test_non_hermitian(self):
        with pytest.raises(InvalidInputError):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))

    def test_non_convergence_maps_to_numerical_error(self, monkeypatch):
        def boom(_):
            raise np.linalg.LinAlgError("no convergence")

        monkeypatch.setattr(np.linalg, "eigh", boom)
        with pytest.raises(NumericalError):
            hermitian_eigenvalues(np.eye(2))


class TestMatrixPower:
    def test_square_of_mixed(self):
        assert_allclose(matrix_power(np.eye(2) / 2, 2), np.eye(2) / 4, atol=1e-15)

    def test_trace_of_square(self):
        rho = np.diag([2 / 3, 1 / 3])
        assert abs(np.trace(matrix_power(rho, 2)) - 5 / 9) <= 1e-15

    def test_identity_exponent(self, rng):
        rho = random_density(rng)
        assert np.max(np.abs(matrix_power(rho, 1) - rho)) <= 1e-10

    def test_zero_eigenvalue(self):
        rho = np.diag([1.0, 0.0])
        assert_allclose(matrix_power(rho, 0.5), rho)

    def test_matches_eigen_formula(self, rng):
        rho = random_density(rng)
        w = hermitian_eigenvalues(rho)
        assert_allclose(np.sort(hermitian_eigenvalues(matrix_power(rho, 2.5)))[::-1], w**2.5, atol=1e-12)

    @pytest.mark.parametrize("q", [0, -1.0])
    def test_bad_q(self, q):
        with pytest.raises(InvalidInputError):
            matrix_power(np.eye(2) / 2, q)

    def test_negative_eigenvalue(self):
        with pytest.raises(NumericalError):
            matrix_power(np.diag([1.1, -0.1]), 2)


class TestSpinFlipSpectrum:
    def test_family_one(self, rng):
        for _ in range(50):
            c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            c /= np.linalg.norm(c)
            v = c[0] * ket("110") + c[1] * ket("101") + c[2] * ket("011")
            lam = spinflip_sqrt_spectrum(partial_trace(density(v), "C"))
            assert_allclose(lam, [2 * abs(c[1]) * abs(c[2]), 0, 0, 0], atol=1e-12)

    def test_ghz(self):
        rho_ab = partial_trace(density(canonical_state("GHZ+")), "C")
        assert_allclose(spinflip_sqrt_spectrum(rho_ab), [0.5, 0.5, 0, 0], atol=1e-15)

    def test_product(self):
        assert_allclose(spinflip_sqrt_spectrum(np.diag([1, 0, 0, 0])), [0, 0, 0, 0])

    def test_bell(self):
        v = np.array([0, 1, -1, 0]) / math.sqrt(2)
        assert_allclose(spinflip_sqrt_spectrum(np.outer(v, v)), [1, 0, 0, 0], atol=1e-15)

    def test_against_textbook_route(self, rng):
        for _ in range(200):
            rho = random_density(rng, rank=int(rng.integers(1, 5)))
            assert_allclose(spinflip_sqrt_spectrum(rho), sqrt_eig_spinflip(rho), atol=1e-7)

    def test_product_vs_hermitian_form(self, rng):
        """eig(rho rho~) equals eig(sqrt(rho) rho~ sqrt(rho))."""
        for _ in range(200):
            rho = random_density(rng, rank=int(rng.integers(1, 5)))
            tilde = spin_flip(rho)
            s = matrix_power(rho, 0.5)
            herm = np.sort(hermitian_eigenvalues(s @ tilde @ s))[::-1]
            prod = np.sort(np.linalg.eigvals(rho @ tilde).real)[::-1]
            assert np.all(prod >= -1e-10)
            assert_allclose(prod, herm, atol=1e-9)
            assert_allclose(spinflip_sqrt_spectrum(rho) ** 2, herm, atol=1e-9)

    def test_swap_invariance(self, rng):
        swap = np.eye(4)[[0, 2, 1, 3]]
        for _ in range(100):
            rho = random_density(rng)
            assert_allclose(spinflip_sqrt_spectrum(swap @ rho @ swap), spinflip_sqrt_spectrum(rho), atol=1e-10)

    def test_rejects_non_density(self):
        with pytest.raises(InvalidInputError):
            spinflip_sqrt_spectrum(np.eye(4))
