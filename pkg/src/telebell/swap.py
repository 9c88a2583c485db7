"""Entanglement swapping on two EPR pairs, with CHSH tests on the swapped pair.

Qubits D and A share one EPR pair, B and C the other.  A Bell measurement on
(B, A) leaves D and C, which never interacted, in one of four maximally
entangled states, each with probability 1/4.  No correction is applied to
the post-selected pair; instead the CHSH optimization over analyzer angles
absorbs the outcome-dependent local rotation, so post-selection on any single
Bell outcome already yields the full quantum CHSH value 2*sqrt(2).

CHSH analyzers are restricted to the real (phi = 0) dichotomic family, which
suffices to reach the quantum maximum for all four post-states.  Angles are
radians internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan2, cos, pi, sin, sqrt
from typing import NamedTuple

import numpy as np

from .qstate import ProjectiveBasis, PureState, measure_probabilities, partial_inner, tensor_product
from .teleport import BELL_OUTCOMES, bell_basis, dichotomic_basis

TSIRELSON_BOUND = 2.0 * sqrt(2.0)
_SCAN_STEP_DEG = 1.0
_REFINE_TOL = 1e-14
_MAX_REFINE_SWEEPS = 200

__all__ = [
    "TSIRELSON_BOUND",
    "SwapReport",
    "ChshScanResult",
    "swap_initial_state",
    "reduced_purity",
    "pair_correlation",
    "chsh_on_pair",
    "max_chsh",
    "run_swap",
    "single_outcome_subensemble",
]


def swap_initial_state() -> PureState:
    """EPR(D, A) tensor EPR(B, C); labels (D, A, B, C)."""
    epr = np.array([1.0, 0.0, 0.0, 1.0]) / sqrt(2.0)
    return tensor_product(
        PureState(epr, ("D", "A")),
        PureState(epr, ("B", "C")),
    )


def reduced_purity(state: PureState, label: str) -> float:
    """Purity of the reduced density matrix of one labelled qubit.

    1 for a product state, 1/2 for a maximally entangled partner.
    """
    if label not in state.factor_labels:
        raise ValueError(f"unknown factor label {label!r} in state on {state.factor_labels}")
    axis = state.factor_labels.index(label)
    tensor = state.amplitudes.reshape([2] * state.num_qubits)
    mat = np.moveaxis(tensor, axis, 0).reshape(2, -1)
    rho = mat @ mat.conj().T
    return float(np.trace(rho @ rho).real)


def _pair_basis(state: PureState, angle_1: float, angle_2: float) -> ProjectiveBasis:
    label_1, label_2 = state.factor_labels
    first = dichotomic_basis(angle_1, 0.0, label_1)
    second = dichotomic_basis(angle_2, 0.0, label_2)
    states = tuple(
        tensor_product(a, b) for a in first.states for b in second.states
    )
    return ProjectiveBasis(states, ("00", "01", "10", "11"))


def pair_correlation(state: PureState, angle_1: float, angle_2: float) -> float:
    """Product correlation of two real dichotomic analyzers on a 2-qubit state.

    Outcomes carry signs -1 (outcome "0") and +1 (outcome "1"); the product
    is the same under the opposite convention.
    """
    if state.num_qubits != 2:
        raise ValueError("correlation is defined for 2-qubit states")
    basis = _pair_basis(state, angle_1, angle_2)
    results = measure_probabilities(state, basis, state.factor_labels, compute_post_states=False)
    p = [value for _, value, _ in results]
    return p[0] - p[1] - p[2] + p[3]


def chsh_on_pair(state: PureState, angles) -> float:
    """CHSH value S = E(a,b) - E(a,b') + E(a',b) + E(a',b') from the Born rule."""
    a, a_alt, b, b_alt = angles
    s = (
        pair_correlation(state, a, b)
        - pair_correlation(state, a, b_alt)
        + pair_correlation(state, a_alt, b)
        + pair_correlation(state, a_alt, b_alt)
    )
    if abs(s) > TSIRELSON_BOUND + 1e-12:
        raise RuntimeError(f"CHSH value {s!r} exceeds the quantum bound")
    return s


def _analyzer_direction(angle: float) -> np.ndarray:
    return np.array([cos(2.0 * angle), sin(2.0 * angle)])


def _correlation_matrix(state: PureState) -> np.ndarray:
    """2x2 matrix M with E(a, b) = u(a) . M u(b) for u(t) = (cos 2t, sin 2t).

    Built from four Born-rule correlations at the axis angles 0 and pi/4;
    bilinearity in the analyzer directions then reproduces E everywhere.
    """
    axes = (0.0, pi / 4.0)
    return np.array(
        [[pair_correlation(state, a, b) for b in axes] for a in axes]
    )


class ChshScanResult(NamedTuple):
    value: float
    angles: tuple[float, float, float, float]
    grid_value: float


def max_chsh(state: PureState, grid_step_deg: float = _SCAN_STEP_DEG) -> ChshScanResult:
    """Maximal CHSH value of a 2-qubit state over real analyzer angles.

    A full four-axis grid scan (default 1 degree resolution over [0, 180))
    locates the best angle tuple; exact per-axis updates then refine it until
    the value stalls.  The returned value is re-evaluated through the Born
    rule at the refined angles.
    """
    if grid_step_deg <= 0.0:
        raise ValueError("grid step must be positive")
    m = _correlation_matrix(state)
    thetas = np.radians(np.arange(0.0, 180.0, grid_step_deg))
    directions = np.column_stack([np.cos(2.0 * thetas), np.sin(2.0 * thetas)])
    grid = directions @ m @ directions.T

    # S separates over Bob's two angles once Alice's pair (i, j) is fixed:
    # max_k (E[i,k] + E[j,k]) + max_l (E[j,l] - E[i,l]).
    same = grid[:, None, :] + grid[None, :, :]
    diff = grid[None, :, :] - grid[:, None, :]
    best_b = same.max(axis=2)
    best_b_alt = diff.max(axis=2)
    totals = best_b + best_b_alt
    i, j = np.unravel_index(np.argmax(totals), totals.shape)
    k = int(same[i, j].argmax())
    l = int(diff[i, j].argmax())
    grid_value = float(totals[i, j])

    a, a_alt, b, b_alt = (float(thetas[idx]) for idx in (i, j, k, l))

    def bilinear(a_, a_alt_, b_, b_alt_):
        u = [_analyzer_direction(t) for t in (a_, a_alt_, b_, b_alt_)]
        return float(u[0] @ m @ (u[2] - u[3]) + u[1] @ m @ (u[2] + u[3]))

    value = bilinear(a, a_alt, b, b_alt)
    for _ in range(_MAX_REFINE_SWEEPS):
        w = m @ (_analyzer_direction(b) - _analyzer_direction(b_alt))
        a = 0.5 * atan2(w[1], w[0])
        w = m @ (_analyzer_direction(b) + _analyzer_direction(b_alt))
        a_alt = 0.5 * atan2(w[1], w[0])
        w = m.T @ (_analyzer_direction(a) + _analyzer_direction(a_alt))
        b = 0.5 * atan2(w[1], w[0])
        w = m.T @ (_analyzer_direction(a_alt) - _analyzer_direction(a))
        b_alt = 0.5 * atan2(w[1], w[0])
        refined = bilinear(a, a_alt, b, b_alt)
        if refined - value <= _REFINE_TOL:
            value = max(value, refined)
            break
        value = refined

    born_value = chsh_on_pair(state, (a, a_alt, b, b_alt))
    if max(grid_value, value, born_value) > TSIRELSON_BOUND + 1e-9:
        raise RuntimeError("scan produced a CHSH value above the quantum bound")
    return ChshScanResult(born_value, (a, a_alt, b, b_alt), grid_value)


@dataclass(frozen=True, eq=False)
class SwapReport:
    """Per-outcome results of the swapping protocol.

    Maps are keyed by Bell outcome label; ``post_states`` hold the
    post-selected (D, C) pair, ``chsh_values`` its scan-maximal CHSH value
    and ``chsh_angles`` the analyzer angles (radians) achieving it.
    """

    outcome_probabilities: dict[str, float]
    post_states: dict[str, PureState]
    chsh_values: dict[str, float]
    chsh_angles: dict[str, tuple[float, float, float, float]]


def _post_selected_pair(outcome: str) -> tuple[float, PureState]:
    basis = bell_basis()
    idx = BELL_OUTCOMES.index(outcome)
    results = measure_probabilities(swap_initial_state(), basis, ("B", "A"))
    _, probability, post = results[idx]
    if post is None:
        raise RuntimeError(f"Bell outcome {outcome} unexpectedly has zero probability")
    return probability, partial_inner(basis.states[idx], post).normalize()


def run_swap() -> SwapReport:
    """Bell-measure (B, A) of the double EPR state and analyse every outcome."""
    probabilities: dict[str, float] = {}
    posts: dict[str, PureState] = {}
    chsh_values: dict[str, float] = {}
    chsh_angles: dict[str, tuple[float, float, float, float]] = {}
    for outcome in BELL_OUTCOMES:
        probability, pair = _post_selected_pair(outcome)
        scan = max_chsh(pair)
        probabilities[outcome] = probability
        posts[outcome] = pair
        chsh_values[outcome] = scan.value
        chsh_angles[outcome] = scan.angles
    return SwapReport(probabilities, posts, chsh_values, chsh_angles)


def single_outcome_subensemble(outcome: str) -> tuple[float, float]:
    """Probability and scan-maximal CHSH value of one post-selected outcome.

    Restricting to runs with a single fixed Bell outcome (no correction, no
    use of the other outcomes) already violates the CHSH inequality maximally.
    """
    if outcome not in BELL_OUTCOMES:
        raise ValueError(f"unknown Bell outcome {outcome!r}")
    probability, pair = _post_selected_pair(outcome)
    return probability, max_chsh(pair).value
