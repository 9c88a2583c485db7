"""Channel-cut teleportation scenario on qubits A, B, C.

Cecil prepares qubit A as ``sin(beta)|0> + cos(beta) e^{i phi}|1>``, qubits
B and C share the EPR pair ``(|00> + |11>)/sqrt(2)``.  Alice measures the
(B, A) pair in the Bell basis; Bob, who never learns her outcome, measures C
with a dichotomic analyzer parameterized by ``(beta', phi')``.  This module
provides the eight joint outcome probabilities both in closed form and
through an independent state-vector simulation, plus the full corrected
protocol as a sanity check.

Index convention: basis index 0/1 of each qubit corresponds to the first and
second orthogonal state of that particle.  Bell outcome labels are the
two-bit strings ``00, 01, 10, 11``; inside each label the Bell states are
stored on the (B, A) subspace with B as the most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import cos, degrees, isfinite, pi, radians, sin, sqrt

import numpy as np

from .qstate import (
    ATOL,
    ProjectiveBasis,
    PureState,
    apply_local_unitary,
    inner_product,
    measure_probabilities,
    partial_inner,
    tensor_product,
)

BELL_OUTCOMES = ("00", "01", "10", "11")
BOB_OUTCOMES = ("0", "1")

__all__ = [
    "BELL_OUTCOMES",
    "BOB_OUTCOMES",
    "PreparationSettings",
    "AnalyzerSettings",
    "JointDistribution",
    "initial_state",
    "bell_basis",
    "bob_basis",
    "dichotomic_basis",
    "joint_distribution_closed_form",
    "joint_distribution_simulated",
    "correction_unitary",
    "run_full_teleportation",
]


def _wrap_phase(phi: float) -> float:
    """Reduce a phase to (-pi, pi]; in-range values pass through unchanged."""
    if -pi < phi <= pi:
        return phi
    wrapped = phi % (2.0 * pi)
    return wrapped - 2.0 * pi if wrapped > pi else wrapped


def _canonical_angles(beta: float, phi: float) -> tuple[float, float]:
    """Reduce (beta, phi) to beta in [0, pi/2], phi in (-pi, pi].

    The reduction maps the parameter pair to the canonical representative of
    the same physical state: shifting beta by pi is a global sign, and
    reflecting beta about pi/2 while advancing phi by pi leaves both the
    amplitudes and the analyzer projectors unchanged.
    """
    if not (isfinite(beta) and isfinite(phi)):
        raise ValueError("angles must be finite")
    b = beta % (2.0 * pi)
    if b >= pi:
        b -= pi
    if b > pi / 2.0:
        b = pi - b
        phi = phi + pi
    return b, _wrap_phase(phi)


@dataclass(frozen=True)
class PreparationSettings:
    """Angles (beta, phi) of the prepared qubit-A state, in radians."""

    beta: float
    phi: float

    def __post_init__(self) -> None:
        beta, phi = _canonical_angles(self.beta, self.phi)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_degrees(cls, beta_deg: float, phi_deg: float) -> "PreparationSettings":
        return cls(radians(beta_deg), radians(phi_deg))

    @property
    def degrees(self) -> tuple[float, float]:
        return degrees(self.beta), degrees(self.phi)


@dataclass(frozen=True)
class AnalyzerSettings:
    """Angles (beta', phi') of Bob's dichotomic analyzer, in radians."""

    beta_prime: float
    phi_prime: float

    def __post_init__(self) -> None:
        beta_prime, phi_prime = _canonical_angles(self.beta_prime, self.phi_prime)
        object.__setattr__(self, "beta_prime", beta_prime)
        object.__setattr__(self, "phi_prime", phi_prime)

    @classmethod
    def from_degrees(cls, beta_deg: float, phi_deg: float) -> "AnalyzerSettings":
        return cls(radians(beta_deg), radians(phi_deg))

    @property
    def degrees(self) -> tuple[float, float]:
        return degrees(self.beta_prime), degrees(self.phi_prime)


def _bell_index(outcome: str) -> int:
    try:
        return BELL_OUTCOMES.index(outcome)
    except ValueError:
        raise ValueError(f"unknown Bell outcome {outcome!r}") from None


def _bob_index(outcome: str) -> int:
    try:
        return BOB_OUTCOMES.index(outcome)
    except ValueError:
        raise ValueError(f"unknown analyzer outcome {outcome!r}") from None


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """The eight joint probabilities P(bell outcome, analyzer outcome).

    Stored as a (4, 2) array with rows in ``BELL_OUTCOMES`` order and columns
    in ``BOB_OUTCOMES`` order.  Construction clamps sub-tolerance negative
    rounding residue; ``validate`` enforces the distribution invariants
    (normalization and the flat 1/4 Bell marginal).
    """

    table: np.ndarray

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=float)
        if table.shape != (4, 2):
            raise ValueError(f"expected a (4, 2) probability table, got shape {table.shape}")
        if not np.all(np.isfinite(table)):
            raise ValueError("probabilities must be finite")
        low = float(np.min(table))
        if low < 0.0:
            if low < -ATOL:
                raise ValueError("negative probability beyond rounding tolerance")
            table = np.where(table < 0.0, 0.0, table)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def probability(self, bell: str, bob: str) -> float:
        return float(self.table[_bell_index(bell), _bob_index(bob)])

    def items(self):
        """Yield ((bell, bob), probability) in the fixed outcome order."""
        for i, bell in enumerate(BELL_OUTCOMES):
            for j, bob in enumerate(BOB_OUTCOMES):
                yield (bell, bob), float(self.table[i, j])

    def validate(self, tol: float = 1e-12) -> "JointDistribution":
        if float(np.max(self.table)) > 1.0 + tol:
            raise ValueError("probability above 1")
        if abs(float(self.table.sum()) - 1.0) > tol:
            raise ValueError(f"probabilities sum to {self.table.sum()!r}, not 1")
        marginal = self.table.sum(axis=1)
        if float(np.max(np.abs(marginal - 0.25))) > tol:
            raise ValueError(f"Bell-outcome marginal {marginal!r} is not flat 1/4")
        return self


def _preparation_amplitudes(prep: PreparationSettings) -> np.ndarray:
    return np.array([sin(prep.beta), cos(prep.beta) * np.exp(1j * prep.phi)])


_EPR_BC = PureState(np.array([1.0, 0.0, 0.0, 1.0]) / sqrt(2.0), ("B", "C"))


def initial_state(prep: PreparationSettings) -> PureState:
    """Prepared qubit A tensored with the (B, C) EPR pair; labels (A, B, C)."""
    return tensor_product(PureState(_preparation_amplitudes(prep), ("A",)), _EPR_BC)


@lru_cache(maxsize=1)
def bell_basis() -> ProjectiveBasis:
    """The four Bell states on the (B, A) subspace, labelled 00, 01, 10, 11."""
    r = 1.0 / sqrt(2.0)
    amplitudes = (
        (r, 0.0, 0.0, r),
        (0.0, r, r, 0.0),
        (0.0, r, -r, 0.0),
        (r, 0.0, 0.0, -r),
    )
    states = tuple(PureState(np.array(a, dtype=complex), ("B", "A")) for a in amplitudes)
    return ProjectiveBasis(states, BELL_OUTCOMES)


def dichotomic_basis(beta: float, phi: float, label: str) -> ProjectiveBasis:
    """Two-outcome analyzer basis on one labelled qubit.

    Outcome "0" projects on ``cos(beta)|0> + sin(beta) e^{i phi}|1>``,
    outcome "1" on the orthogonal ``-sin(beta)|0> + cos(beta) e^{i phi}|1>``.
    """
    phase = np.exp(1j * phi)
    zero = PureState(np.array([cos(beta), sin(beta) * phase]), (label,))
    one = PureState(np.array([-sin(beta), cos(beta) * phase]), (label,))
    return ProjectiveBasis((zero, one), BOB_OUTCOMES)


@lru_cache(maxsize=1024)
def bob_basis(analyzer: AnalyzerSettings) -> ProjectiveBasis:
    """Bob's analyzer basis on qubit C."""
    return dichotomic_basis(analyzer.beta_prime, analyzer.phi_prime, "C")


def joint_distribution_closed_form(
    prep: PreparationSettings, analyzer: AnalyzerSettings
) -> JointDistribution:
    """The eight joint probabilities evaluated from their closed form."""
    cc = cos(2.0 * prep.beta) * cos(2.0 * analyzer.beta_prime)
    ss = sin(2.0 * prep.beta) * sin(2.0 * analyzer.beta_prime)
    minus = cos(prep.phi - analyzer.phi_prime)
    plus = cos(prep.phi + analyzer.phi_prime)
    p_zero = np.array(
        [
            (1.0 - cc + ss * minus) / 8.0,
            (1.0 + cc + ss * plus) / 8.0,
            (1.0 + cc - ss * plus) / 8.0,
            (1.0 - cc - ss * minus) / 8.0,
        ]
    )
    table = np.column_stack([p_zero, 0.25 - p_zero])
    return JointDistribution(table).validate()


@lru_cache(maxsize=512)
def _alice_stage(prep: PreparationSettings) -> tuple[tuple[str, float, PureState | None], ...]:
    """Bell measurement results for the initial state; independent of Bob."""
    return tuple(measure_probabilities(initial_state(prep), bell_basis(), ("B", "A")))


def joint_distribution_simulated(
    prep: PreparationSettings, analyzer: AnalyzerSettings
) -> JointDistribution:
    """Born-rule oracle: measure the Bell basis on (B, A), then Bob's on C.

    Independent of the closed form; the two must agree within 1e-12.
    """
    analyzer_basis = bob_basis(analyzer)
    table = np.zeros((4, 2))
    for row, (_, p_bell, post) in enumerate(_alice_stage(prep)):
        if post is None:
            continue
        bob = measure_probabilities(post, analyzer_basis, ("C",), compute_post_states=False)
        for col, (_, p_bob, _) in enumerate(bob):
            table[row, col] = p_bell * p_bob
    return JointDistribution(table).validate()


_CORRECTIONS = {
    "00": np.eye(2, dtype=complex),
    "01": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "10": np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex),
    "11": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}
for _u in _CORRECTIONS.values():
    _u.setflags(write=False)


def correction_unitary(outcome: str) -> np.ndarray:
    """Unitary Bob would apply to C for the given Bell outcome.

    Fixed (up to global phase) by requiring that C's conditional state after
    the correction reproduces the prepared A state with fidelity 1 for every
    preparation; the oracle test in ``run_full_teleportation`` guards the
    convention.
    """
    _bell_index(outcome)
    return _CORRECTIONS[outcome]


def run_full_teleportation(prep: PreparationSettings) -> list[tuple[str, float, float]]:
    """Simulate the corrected protocol end to end.

    Returns ``[(bell outcome, probability, fidelity after correction), ...]``;
    every probability is 1/4 and every fidelity 1, up to rounding.
    """
    state = initial_state(prep)
    target = PureState(_preparation_amplitudes(prep), ("C",))
    basis = bell_basis()
    results = []
    for idx, (outcome, p, post) in enumerate(measure_probabilities(state, basis, ("B", "A"))):
        if post is None:
            raise RuntimeError(f"Bell outcome {outcome} unexpectedly has zero probability")
        corrected = apply_local_unitary(post, correction_unitary(outcome), "C")
        residual = partial_inner(basis.states[idx], corrected).normalize()
        fidelity = abs(inner_product(target, residual)) ** 2
        results.append((outcome, p, fidelity))
    return results
