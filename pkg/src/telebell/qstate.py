"""Dense complex state vectors for small labelled qubit systems.

Conventions
-----------
- A ``PureState`` owns one complex amplitude per computational basis vector
  of its labelled tensor factors.  The label order fixes bit significance
  (leftmost label is the most significant bit), so for labels ``("B", "A")``
  the amplitude at index 2 (binary ``10``) belongs to ``|B=1, A=0>``.
- Everything runs in double precision.  Systems here have at most 16
  amplitudes, so a single absolute tolerance ``ATOL`` (1e-12) covers all
  orthonormality and normalization checks.
- All operations are pure functions of immutable values; amplitude arrays
  are stored read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

ATOL = 1e-12
PROB_FLOOR = 1e-14
MAX_QUBITS = 4

__all__ = [
    "ATOL",
    "PROB_FLOOR",
    "MAX_QUBITS",
    "PureState",
    "ProjectiveBasis",
    "tensor_product",
    "inner_product",
    "partial_inner",
    "measure_probabilities",
    "apply_local_unitary",
    "clamp_probability",
]


def clamp_probability(p: float) -> float:
    """Clamp tiny negative rounding residue to zero.

    Values below ``-ATOL`` are treated as genuine errors, not noise.
    """
    if p < -ATOL:
        raise ValueError(f"negative probability {p!r} exceeds rounding tolerance")
    return 0.0 if p < 0.0 else float(p)


@dataclass(frozen=True, eq=False)
class PureState:
    """Complex amplitude vector over 1-4 labelled qubits.

    The vector is not forced to unit norm at construction; projection
    residuals are legitimately sub-normalized.  ``normalize`` returns the
    unit-norm version.
    """

    amplitudes: np.ndarray
    factor_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.factor_labels)
        if not 1 <= len(labels) <= MAX_QUBITS:
            raise ValueError(f"need 1..{MAX_QUBITS} factor labels, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"factor labels must be distinct, got {labels}")
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (2 ** len(labels),):
            raise ValueError(
                f"expected {2 ** len(labels)} amplitudes for labels {labels}, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "factor_labels", labels)

    @property
    def num_qubits(self) -> int:
        return len(self.factor_labels)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def is_unit(self, tol: float = ATOL) -> bool:
        return abs(self.norm_sq - 1.0) <= tol

    def normalize(self) -> "PureState":
        n_sq = self.norm_sq
        if n_sq < PROB_FLOOR:
            raise ValueError("cannot normalize a near-zero state")
        return _trusted_state(self.amplitudes / sqrt(n_sq), self.factor_labels)


def _trusted_state(amplitudes: np.ndarray, labels: tuple[str, ...]) -> PureState:
    """Wrap a freshly computed amplitude array without re-validation.

    Internal constructor for arrays produced by this module's own arithmetic
    on already-validated states; skips the copy and finiteness checks of the
    public constructor.
    """
    state = object.__new__(PureState)
    amplitudes.setflags(write=False)
    object.__setattr__(state, "amplitudes", amplitudes)
    object.__setattr__(state, "factor_labels", labels)
    return state


def _kron_1d(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[:, None] * b).reshape(-1)


@dataclass(frozen=True, eq=False)
class ProjectiveBasis:
    """Complete orthonormal basis of a labelled subspace, with outcome names.

    Orthonormality and completeness (state count equals the subspace
    dimension) are enforced at construction, so every instance is safe to
    measure against.
    """

    states: tuple[PureState, ...]
    outcome_labels: tuple[str, ...]
    _matrix: np.ndarray = field(init=False, repr=False)
    _matrix_conj: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        states = tuple(self.states)
        labels = tuple(self.outcome_labels)
        if not states:
            raise ValueError("basis needs at least one state")
        subsystem = states[0].factor_labels
        if any(s.factor_labels != subsystem for s in states):
            raise ValueError("basis states must share one subsystem labelling")
        dim = 2 ** len(subsystem)
        if len(states) != dim:
            raise ValueError(f"basis must span the subspace: need {dim} states, got {len(states)}")
        if len(labels) != len(states) or len(set(labels)) != len(labels):
            raise ValueError("need one distinct outcome label per basis state")
        matrix = np.stack([s.amplitudes for s in states])
        gram = matrix.conj() @ matrix.T
        if np.max(np.abs(gram - np.eye(dim))) > ATOL:
            raise ValueError("basis states are not orthonormal within tolerance")
        matrix.setflags(write=False)
        matrix_conj = matrix.conj()
        matrix_conj.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "outcome_labels", labels)
        object.__setattr__(self, "_matrix", matrix)
        object.__setattr__(self, "_matrix_conj", matrix_conj)

    @property
    def subsystem_labels(self) -> tuple[str, ...]:
        return self.states[0].factor_labels


def tensor_product(a: PureState, b: PureState) -> PureState:
    """Kronecker composite of two states with concatenated labels."""
    overlap = set(a.factor_labels) & set(b.factor_labels)
    if overlap:
        raise ValueError(f"factor label collision: {sorted(overlap)}")
    if a.num_qubits + b.num_qubits > MAX_QUBITS:
        raise ValueError(f"composite would exceed {MAX_QUBITS} qubits")
    return _trusted_state(
        _kron_1d(a.amplitudes, b.amplitudes), a.factor_labels + b.factor_labels
    )


def inner_product(a: PureState, b: PureState) -> complex:
    """``<a|b>`` with conjugation on the first argument."""
    if a.factor_labels != b.factor_labels:
        raise ValueError(
            f"states live on different subsystems: {a.factor_labels} vs {b.factor_labels}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def _front_permutation(state: PureState, front_labels: tuple[str, ...]) -> tuple[list[int], tuple[str, ...]]:
    """Axis order putting ``front_labels`` first; remaining labels keep their order."""
    front = []
    for label in front_labels:
        if label not in state.factor_labels:
            raise ValueError(f"unknown factor label {label!r} in state on {state.factor_labels}")
        front.append(state.factor_labels.index(label))
    rest = [i for i in range(state.num_qubits) if i not in front]
    return front + rest, tuple(state.factor_labels[i] for i in rest)


def partial_inner(bra: PureState, state: PureState) -> PureState:
    """Contract ``<bra|`` against its subsystem of ``state``.

    Returns the unnormalized residual on the remaining labels; its squared
    norm is the Born probability of ``bra``.
    """
    if bra.num_qubits >= state.num_qubits:
        raise ValueError("bra must cover a strict subsystem; use inner_product for full overlap")
    perm, rest = _front_permutation(state, bra.factor_labels)
    mat = (
        state.amplitudes.reshape([2] * state.num_qubits)
        .transpose(perm)
        .reshape(2**bra.num_qubits, -1)
    )
    return _trusted_state(bra.amplitudes.conj() @ mat, rest)


def measure_probabilities(
    state: PureState,
    basis: ProjectiveBasis,
    measured_labels,
    *,
    compute_post_states: bool = True,
) -> list[tuple[str, float, PureState | None]]:
    """Born-rule statistics of a projective measurement on a subsystem.

    Args:
        state: unit-norm state; may be larger than the measured subsystem.
        basis: complete orthonormal basis on exactly ``measured_labels``.
        measured_labels: ordered subsystem labels, matching the basis states.
        compute_post_states: skip post-state construction when only the
            probabilities are needed.

    Returns:
        ``[(outcome_label, probability, post_state), ...]`` in basis order.
        ``post_state`` is the normalized projection of ``state`` onto the
        basis element (tensor identity on the rest), expressed in the
        original label order.  It is None for outcomes with probability
        below ``PROB_FLOOR`` or when post states are not requested.
    """
    measured = tuple(measured_labels)
    if not state.is_unit():
        raise ValueError("state must be normalized before measurement")
    if basis.subsystem_labels != measured:
        raise ValueError(
            f"basis lives on {basis.subsystem_labels}, measurement requested on {measured}"
        )
    n = state.num_qubits
    perm, _ = _front_permutation(state, measured)
    inverse = [0] * n
    for position, axis in enumerate(perm):
        inverse[axis] = position
    mat = state.amplitudes.reshape([2] * n).transpose(perm).reshape(2 ** len(measured), -1)
    coeffs = basis._matrix_conj @ mat
    probs = np.einsum("ij,ij->i", coeffs, coeffs.conj()).real

    results: list[tuple[str, float, PureState | None]] = []
    for j, outcome in enumerate(basis.outcome_labels):
        p = clamp_probability(float(probs[j]))
        post = None
        if compute_post_states and p >= PROB_FLOOR:
            residual = coeffs[j] / sqrt(p)
            full = _kron_1d(basis.states[j].amplitudes, residual)
            full = full.reshape([2] * n).transpose(inverse).reshape(-1)
            post = _trusted_state(full, state.factor_labels)
        results.append((outcome, p, post))
    return results


def apply_local_unitary(state: PureState, u, target_label: str) -> PureState:
    """Apply a 2x2 unitary to one labelled factor, leaving the rest untouched."""
    mat = np.asarray(u, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {mat.shape}")
    if np.max(np.abs(mat.conj().T @ mat - np.eye(2))) > ATOL:
        raise ValueError("matrix is not unitary within tolerance")
    try:
        axis = state.factor_labels.index(target_label)
    except ValueError:
        raise ValueError(
            f"unknown factor label {target_label!r} in state on {state.factor_labels}"
        ) from None
    tensor = state.amplitudes.reshape([2] * state.num_qubits)
    moved = np.tensordot(mat, tensor, axes=([1], [axis]))
    return _trusted_state(np.moveaxis(moved, 0, axis).reshape(-1), state.factor_labels)
