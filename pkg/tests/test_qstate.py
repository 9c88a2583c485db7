"""Tests for the labelled state-vector engine."""

import numpy as np
import pytest

from telebell.qstate import (
    ATOL,
    ProjectiveBasis,
    PureState,
    apply_local_unitary,
    clamp_probability,
    inner_product,
    measure_probabilities,
    partial_inner,
    tensor_product,
)


def random_state(rng, labels):
    n = len(labels)
    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return PureState(amps, labels).normalize()


def random_unitary(rng):
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, _ = np.linalg.qr(g)
    return q


def ket(bits, labels):
    amps = np.zeros(2 ** len(labels), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return PureState(amps, labels)


class TestPureState:
    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            PureState(np.array([1.0, 0.0, 0.0]), ("A",))

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError):
            PureState(np.zeros(4), ("A", "A"))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            PureState(np.array([np.nan, 0.0]), ("A",))
        with pytest.raises(ValueError):
            PureState(np.array([np.inf + 0j, 0.0]), ("A",))

    def test_rejects_more_than_four_qubits(self):
        with pytest.raises(ValueError):
            PureState(np.zeros(32), ("A", "B", "C", "D", "E"))

    def test_normalize(self):
        state = PureState(np.array([3.0, 4.0]), ("A",)).normalize()
        assert abs(state.norm_sq - 1.0) <= ATOL

    def test_normalize_zero_state(self):
        with pytest.raises(ValueError):
            PureState(np.zeros(2), ("A",)).normalize()

    def test_amplitudes_read_only(self):
        state = ket("0", ("A",))
        with pytest.raises(ValueError):
            state.amplitudes[0] = 2.0


class TestTensorProduct:
    def test_basis_state_composite(self):
        composite = tensor_product(ket("0", ("A",)), ket("0", ("B",)))
        assert np.allclose(composite.amplitudes, [1, 0, 0, 0])
        assert composite.factor_labels == ("A", "B")

    def test_linearity(self):
        plus = PureState(np.array([1.0, 1.0]) / np.sqrt(2.0), ("B",))
        composite = tensor_product(ket("0", ("A",)), plus)
        r = 1 / np.sqrt(2.0)
        assert np.allclose(composite.amplitudes, [r, r, 0, 0])

    def test_norm_multiplicative_on_random_states(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a = random_state(rng, ("A",))
            b = random_state(rng, ("B", "C"))
            assert abs(tensor_product(a, b).norm_sq - a.norm_sq * b.norm_sq) <= 1e-12

    def test_label_collision(self):
        with pytest.raises(ValueError, match="collision"):
            tensor_product(ket("0", ("A",)), ket("0", ("A",)))

    def test_dimension_overflow(self):
        with pytest.raises(ValueError, match="exceed"):
            tensor_product(ket("000", ("A", "B", "C")), ket("00", ("D", "E")))


class TestInnerProduct:
    def test_same_basis_state(self):
        assert inner_product(ket("0", ("A",)), ket("0", ("A",))) == 1.0

    def test_orthogonal_basis_states(self):
        assert inner_product(ket("0", ("A",)), ket("1", ("A",))) == 0.0

    def test_distinct_bell_states_orthogonal(self):
        r = 1 / np.sqrt(2.0)
        bell_00 = PureState(np.array([r, 0, 0, r]), ("B", "A"))
        bell_11 = PureState(np.array([r, 0, 0, -r]), ("B", "A"))
        assert abs(inner_product(bell_00, bell_11)) <= 1e-12

    def test_conjugates_first_argument(self):
        rng = np.random.default_rng(3)
        a = random_state(rng, ("A",))
        b = random_state(rng, ("A",))
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))

    def test_label_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(ket("0", ("A",)), ket("0", ("B",)))
        with pytest.raises(ValueError):
            inner_product(ket("00", ("A", "B")), ket("00", ("B", "A")))


def z_basis(label):
    return ProjectiveBasis((ket("0", (label,)), ket("1", (label,))), ("0", "1"))


class TestProjectiveBasis:
    def test_degenerate_basis_rejected(self):
        with pytest.raises(ValueError, match="orthonormal"):
            ProjectiveBasis((ket("0", ("A",)), ket("0", ("A",))), ("0", "1"))

    def test_incomplete_basis_rejected(self):
        with pytest.raises(ValueError, match="span"):
            ProjectiveBasis((ket("00", ("A", "B")), ket("11", ("A", "B"))), ("0", "1"))

    def test_unnormalized_state_rejected(self):
        bad = PureState(np.array([2.0, 0.0]), ("A",))
        with pytest.raises(ValueError, match="orthonormal"):
            ProjectiveBasis((bad, ket("1", ("A",))), ("0", "1"))


class TestMeasureProbabilities:
    def test_product_state_in_bell_basis(self):
        r = 1 / np.sqrt(2.0)
        bell = ProjectiveBasis(
            (
                PureState(np.array([r, 0, 0, r]), ("B", "A")),
                PureState(np.array([0, r, r, 0]), ("B", "A")),
                PureState(np.array([0, r, -r, 0]), ("B", "A")),
                PureState(np.array([r, 0, 0, -r]), ("B", "A")),
            ),
            ("00", "01", "10", "11"),
        )
        results = measure_probabilities(ket("00", ("B", "A")), bell, ("B", "A"))
        probs = {label: p for label, p, _ in results}
        assert probs["00"] == pytest.approx(0.5, abs=1e-12)
        assert probs["11"] == pytest.approx(0.5, abs=1e-12)
        assert probs["01"] == pytest.approx(0.0, abs=1e-12)
        assert probs["10"] == pytest.approx(0.0, abs=1e-12)

    def test_born_completeness_on_random_states(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            state = random_state(rng, ("A", "B"))
            basis = z_basis("A")
            total = sum(p for _, p, _ in measure_probabilities(state, basis, ("A",)))
            assert abs(total - 1.0) <= 1e-12

    def test_zero_probability_outcome_has_null_post_state(self):
        results = measure_probabilities(ket("0", ("A",)), z_basis("A"), ("A",))
        assert results[0][1] == pytest.approx(1.0, abs=1e-12)
        assert results[1][1] == 0.0
        assert results[1][2] is None

    def test_post_state_is_projection(self):
        rng = np.random.default_rng(9)
        state = random_state(rng, ("A", "B"))
        for label, p, post in measure_probabilities(state, z_basis("B"), ("B",)):
            if post is None:
                continue
            assert post.factor_labels == ("A", "B")
            assert abs(post.norm_sq - 1.0) <= 1e-12
            # projecting again must be idempotent
            again = measure_probabilities(post, z_basis("B"), ("B",))
            idx = 0 if label == "0" else 1
            assert again[idx][1] == pytest.approx(1.0, abs=1e-12)

    def test_global_phase_insensitive_exact_phases(self):
        rng = np.random.default_rng(13)
        state = random_state(rng, ("A", "B"))
        basis = z_basis("A")
        reference = [p for _, p, _ in measure_probabilities(state, basis, ("A",))]
        for phase in (-1.0, 1j, -1j):
            shifted = PureState(phase * state.amplitudes, state.factor_labels)
            probs = [p for _, p, _ in measure_probabilities(shifted, basis, ("A",))]
            assert probs == reference

    def test_global_phase_insensitive_generic_phase(self):
        rng = np.random.default_rng(17)
        state = random_state(rng, ("A", "B", "C"))
        basis = z_basis("C")
        reference = [p for _, p, _ in measure_probabilities(state, basis, ("C",))]
        shifted = PureState(np.exp(0.321j) * state.amplitudes, state.factor_labels)
        probs = [p for _, p, _ in measure_probabilities(shifted, basis, ("C",))]
        assert np.allclose(probs, reference, atol=1e-12)

    def test_unnormalized_state_rejected(self):
        state = PureState(np.array([1.0, 1.0]), ("A",))
        with pytest.raises(ValueError, match="normalized"):
            measure_probabilities(state, z_basis("A"), ("A",))

    def test_basis_label_mismatch(self):
        with pytest.raises(ValueError, match="basis lives on"):
            measure_probabilities(ket("00", ("A", "B")), z_basis("A"), ("B",))


class TestApplyLocalUnitary:
    def test_identity(self):
        rng = np.random.default_rng(21)
        state = random_state(rng, ("A", "B"))
        out = apply_local_unitary(state, np.eye(2), "A")
        assert np.allclose(out.amplitudes, state.amplitudes, atol=1e-15)

    def test_bit_flip(self):
        flip = np.array([[0, 1], [1, 0]])
        out = apply_local_unitary(ket("0", ("A",)), flip, "A")
        assert np.allclose(out.amplitudes, [0, 1])

    def test_phase_flip_twice_is_identity(self):
        rng = np.random.default_rng(23)
        state = random_state(rng, ("A", "B", "C"))
        z = np.diag([1.0, -1.0])
        twice = apply_local_unitary(apply_local_unitary(state, z, "B"), z, "B")
        fidelity = abs(inner_product(state, twice)) ** 2
        assert abs(fidelity - 1.0) <= 1e-12

    def test_only_target_factor_transformed(self):
        flip = np.array([[0, 1], [1, 0]])
        out = apply_local_unitary(ket("00", ("A", "B")), flip, "B")
        assert np.allclose(out.amplitudes, ket("01", ("A", "B")).amplitudes)

    def test_preserves_inner_products(self):
        rng = np.random.default_rng(27)
        for _ in range(25):
            a = random_state(rng, ("A", "B"))
            b = random_state(rng, ("A", "B"))
            u = random_unitary(rng)
            before = inner_product(a, b)
            after = inner_product(
                apply_local_unitary(a, u, "B"), apply_local_unitary(b, u, "B")
            )
            assert abs(after - before) <= 1e-12

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError, match="unitary"):
            apply_local_unitary(ket("0", ("A",)), np.array([[1, 0], [0, 2]]), "A")

    def test_unknown_label_rejected(self):
        with pytest.raises(ValueError, match="unknown factor label"):
            apply_local_unitary(ket("0", ("A",)), np.eye(2), "B")


class TestPartialInner:
    def test_residual_of_product_state(self):
        state = tensor_product(ket("1", ("A",)), ket("0", ("B",)))
        residual = partial_inner(ket("1", ("A",)), state)
        assert residual.factor_labels == ("B",)
        assert np.allclose(residual.amplitudes, [1, 0])

    def test_residual_norm_is_born_probability(self):
        rng = np.random.default_rng(31)
        state = random_state(rng, ("A", "B"))
        p0 = partial_inner(ket("0", ("A",)), state).norm_sq
        p1 = partial_inner(ket("1", ("A",)), state).norm_sq
        assert abs(p0 + p1 - 1.0) <= 1e-12

    def test_full_overlap_rejected(self):
        with pytest.raises(ValueError, match="strict subsystem"):
            partial_inner(ket("0", ("A",)), ket("0", ("A",)))


def test_clamp_probability():
    assert clamp_probability(-5e-15) == 0.0
    assert clamp_probability(0.3) == 0.3
    with pytest.raises(ValueError):
        clamp_probability(-1e-11)
