"""Tests for the pigeonhole module."""

import math

import numpy as np
import pytest

from bellpigeon.errors import (
    DimensionError,
    RangeError,
    UnknownNameError,
    ZeroProbabilityError,
)
from bellpigeon.linalg import inner
from bellpigeon.models import Ket
from bellpigeon.pigeonhole import (
    apply_pair_operator,
    collapse,
    expectation,
    pair_amplitude,
    pigeonhole_report,
    postselect_probability,
    projector,
)
from bellpigeon.states import (
    basis_ket,
    bell,
    bell_basis,
    ket_basic,
    postselected,
    repeated_ket,
)
from tests.fixtures import assert_close, random_amplitudes


class TestProjectors:
    """Tests for the same/different box projectors."""

    def test_complete_and_orthogonal(self) -> None:
        """Test Pi_same + Pi_diff = I and Pi_same Pi_diff = 0."""
        same, diff = projector("same").matrix, projector("diff").matrix
        assert_close(same + diff, np.eye(4))
        assert_close(same @ diff, np.zeros((4, 4)))

    @pytest.mark.parametrize("label", ["same", "diff"])
    def test_idempotent_hermitian(self, label: str) -> None:
        """Test each projector is Hermitian and idempotent."""
        p = projector(label).matrix
        assert_close(p @ p, p)
        assert_close(p, p.conj().T)

    def test_same_kills_01(self) -> None:
        """Test Pi_same |01> = 0."""
        assert_close(projector("same").matrix @ basis_ket("01").amplitudes, np.zeros(4))

    def test_unknown_label(self) -> None:
        """Test an unknown label raises."""
        with pytest.raises(UnknownNameError):
            projector("both")

    def test_same_probability_on_plus_plus(self) -> None:
        """Test <++|Pi_same|++> = 1/2."""
        value = expectation(repeated_ket("plus", 2), projector("same"))
        assert value == pytest.approx(0.5)


class TestCollapse:
    """Tests for projective collapse."""

    def test_plus_plus_same_gives_bell00(self) -> None:
        """Test collapsing |++> onto the same-box outcome gives beta_00."""
        after = collapse(repeated_ket("plus", 2), projector("same"))
        assert_close(after.amplitudes, bell(0, 0).amplitudes)

    def test_plus_plus_diff_gives_bell01(self) -> None:
        """Test collapsing |++> onto the different-box outcome gives beta_01."""
        after = collapse(repeated_ket("plus", 2), projector("diff"))
        assert_close(after.amplitudes, bell(0, 1).amplitudes)

    def test_orthogonal_input(self) -> None:
        """Test |01> has zero same-box probability."""
        with pytest.raises(ZeroProbabilityError):
            collapse(basis_ket("01"), projector("same"))


class TestPostselection:
    """Tests for postselection probabilities."""

    @pytest.mark.parametrize(
        "k,bell_index,expected",
        [
            (1, (0, 0), 0.0),
            (2, (0, 0), 0.5),
            (3, (0, 0), 0.5),
            (4, (0, 0), 0.0),
            (1, (0, 1), 0.5),
            (2, (0, 1), 0.0),
            (3, (0, 1), 0.0),
            (4, (0, 1), 0.5),
        ],
    )
    def test_zero_probability_table(
        self, k: int, bell_index: tuple[int, int], expected: float
    ) -> None:
        """Test |<phi_k|beta>|^2 for the two collapsed Bell states."""
        value = postselect_probability(postselected(k), bell(*bell_index))
        assert value == pytest.approx(expected, abs=1e-12)

    def test_completeness_on_random_states(self) -> None:
        """Test the four phi_k resolve the identity on random two-qubit states."""
        rng = np.random.default_rng(11)
        for _ in range(20):
            state = Ket(2, random_amplitudes(rng, 2))
            total = sum(
                postselect_probability(postselected(k), state) for k in range(1, 5)
            )
            assert total == pytest.approx(1.0, abs=1e-10)

    def test_qubit_mismatch(self) -> None:
        """Test postselecting three qubits on two raises."""
        with pytest.raises(DimensionError):
            postselect_probability(postselected(1), repeated_ket("plus", 3))


class TestApplyPairOperator:
    """Tests for embedding a two-qubit operator in an n-qubit register."""

    def test_matches_kron_embedding(self) -> None:
        """Test pair (1, 3) of three qubits matches an explicit permutation."""
        rng = np.random.default_rng(3)
        op = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        vec = random_amplitudes(rng, 3)

        # Explicit reference: reshape to (q1, q2, q3) and contract q1, q3
        tensor_op = op.reshape(2, 2, 2, 2)
        psi = vec.reshape(2, 2, 2)
        expected = np.einsum("acbd,bxd->axc", tensor_op, psi).reshape(8)

        assert_close(apply_pair_operator(op, vec, 3, (1, 3)), expected)

    def test_adjacent_pair_is_kron(self) -> None:
        """Test pair (2, 3) equals I (x) op."""
        rng = np.random.default_rng(4)
        op = rng.standard_normal((4, 4))
        vec = random_amplitudes(rng, 3)
        expected = np.kron(np.eye(2), op) @ vec
        assert_close(apply_pair_operator(op, vec, 3, (2, 3)), expected)

    def test_bad_pair_and_shapes(self) -> None:
        """Test invalid pairs and shapes raise."""
        vec = repeated_ket("plus", 3).amplitudes
        with pytest.raises(RangeError):
            apply_pair_operator(np.eye(4), vec, 3, (2, 2))
        with pytest.raises(RangeError):
            apply_pair_operator(np.eye(4), vec, 3, (1, 4))
        with pytest.raises(DimensionError):
            apply_pair_operator(np.eye(2), vec, 3, (1, 2))
        with pytest.raises(DimensionError):
            apply_pair_operator(np.eye(4), vec, 2, (1, 2))


class TestPairAmplitude:
    """Tests for pre/postselected pair amplitudes."""

    @pytest.mark.parametrize("pair", [(1, 2), (1, 3), (2, 3)])
    def test_three_particle_pairs_vanish(self, pair: tuple[int, int]) -> None:
        """Test no pair of three particles is found in the same box."""
        pre, post = repeated_ket("plus", 3), repeated_ket("plus_i", 3)
        result = pair_amplitude(3, pair, pre, post, "same")
        assert abs(result.amplitude) <= 1e-12
        assert result.probability <= 1e-24

    def test_factored_form(self) -> None:
        """Test the embedded amplitude equals (1/sqrt2)<phi_1|beta_00><+i|+>."""
        pre, post = repeated_ket("plus", 3), repeated_ket("plus_i", 3)
        amplitude = pair_amplitude(3, (1, 2), pre, post, "same").amplitude
        factored = (
            inner(postselected(1).amplitudes, bell(0, 0).amplitudes)
            * inner(ket_basic("plus_i").amplitudes, ket_basic("plus").amplitudes)
            / math.sqrt(2)
        )
        assert abs(amplitude - factored) <= 1e-12

    def test_two_particles_phi_two(self) -> None:
        """Test |<phi_2|Pi_same|++>|^2 = 1/4."""
        pre = repeated_ket("plus", 2)
        result = pair_amplitude(2, (1, 2), pre, postselected(2), "same")
        assert result.probability == pytest.approx(0.25, abs=1e-12)

    def test_dimension_mismatch(self) -> None:
        """Test states with the wrong qubit count raise."""
        with pytest.raises(DimensionError):
            pair_amplitude(3, (1, 2), repeated_ket("plus", 2), postselected(1), "same")


class TestPigeonholeReport:
    """Tests for the n-particle report."""

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_all_pairs_vanish(self, n: int) -> None:
        """Test every pair amplitude is zero for the same-box projector."""
        report = pigeonhole_report(n)
        assert len(report) == n * (n - 1) // 2
        assert all(abs(result.amplitude) <= 1e-12 for _, result in report)

    def test_pairs_in_lexicographic_order(self) -> None:
        """Test pairs are sorted (1,2), (1,3), (1,4), (2,3), ..."""
        pairs = [pair for pair, _ in pigeonhole_report(4)]
        assert pairs == sorted(pairs)
        assert pairs[0] == (1, 2) and pairs[-1] == (3, 4)

    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_diff_label_probability(self, n: int) -> None:
        """Test |amplitude|^2 = 1/4 (1/2)^(n-2) for the different-box projector."""
        expected = 0.25 * 0.5 ** (n - 2)
        for _, result in pigeonhole_report(n, "diff"):
            assert result.probability == pytest.approx(expected, abs=1e-12)

    def test_range(self) -> None:
        """Test n outside [2, 10] and unknown labels raise."""
        with pytest.raises(RangeError):
            pigeonhole_report(1)
        with pytest.raises(RangeError):
            pigeonhole_report(11)
        with pytest.raises(UnknownNameError):
            pigeonhole_report(3, "other")

    def test_bell_states_unchanged_by_completeness(self) -> None:
        """Test Pi_same + Pi_diff leaves each Bell state fixed."""
        total = projector("same").matrix + projector("diff").matrix
        for state in bell_basis():
            assert_close(total @ state.amplitudes, state.amplitudes)
