"""Deterministic local-hidden-variable strategies and the Bell verdict.

With two settings per side and finitely many outcomes, every local hidden
variable model is a convex mixture of the 64 deterministic response
functions: Bob picks a sign for each of his two phase settings (2^2 choices)
and Alice picks one of the four outcome vectors for each of her two settings
(4^2 choices).  The scalar product of the quantum super-vector with any
strategy super-vector is bounded by sqrt(2) (found here by exhaustion, not
algebra), strictly below the quantum norm 2, which is the Bell theorem for
the channel-cut scenario.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import fsum, isfinite
from typing import NamedTuple

import numpy as np

from .corrvec import (
    ALICE_PHI_DEGREES,
    BOB_PHI_DEGREES,
    SETTING_PAIRS_DEGREES,
    build_quantum_super_vector,
    super_dot,
)

VIOLATION_TOL = 1e-12

_SIGNS = (-1, 1)
_VECTOR_CHOICES = ((-1, -1), (-1, 1), (1, -1), (1, 1))

__all__ = [
    "VIOLATION_TOL",
    "DeterministicStrategy",
    "StrategyEnsemble",
    "BellTestReport",
    "ExtremalBound",
    "strategy_super_vector",
    "enumerate_strategies",
    "lhv_extremal_bound",
    "ensemble_super_vector",
    "ensemble_correlation",
    "bell_test",
]


@dataclass(frozen=True)
class DeterministicStrategy:
    """One hidden-variable value: fixed answers for every setting.

    ``bob`` holds the signs returned at phi' = -45 and +45 degrees; ``alice``
    holds the outcome vectors returned at phi = 0 and 90 degrees.
    """

    bob: tuple[int, int]
    alice: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        if len(self.bob) != 2 or any(v not in (-1, 1) for v in self.bob):
            raise ValueError(f"bob answers must be two signs, got {self.bob}")
        if len(self.alice) != 2 or any(
            len(vec) != 2 or any(v not in (-1, 1) for v in vec) for vec in self.alice
        ):
            raise ValueError(f"alice answers must be two sign 2-vectors, got {self.alice}")

    def bob_value(self, phi_prime_deg: float) -> int:
        try:
            return self.bob[BOB_PHI_DEGREES.index(phi_prime_deg)]
        except ValueError:
            raise ValueError(f"unknown Bob setting {phi_prime_deg!r} degrees") from None

    def alice_vector(self, phi_deg: float) -> np.ndarray:
        try:
            return np.array(self.alice[ALICE_PHI_DEGREES.index(phi_deg)], dtype=float)
        except ValueError:
            raise ValueError(f"unknown Alice setting {phi_deg!r} degrees") from None


def strategy_super_vector(strategy: DeterministicStrategy) -> np.ndarray:
    """Strategy's super-vector over the standard grid: sign times vector per pair."""
    rows = [
        strategy.bob_value(phi_prime_deg) * strategy.alice_vector(phi_deg)
        for phi_deg, phi_prime_deg in SETTING_PAIRS_DEGREES
    ]
    return np.stack(rows)


def enumerate_strategies() -> list[DeterministicStrategy]:
    """All 64 deterministic strategies, in a fixed order."""
    return [
        DeterministicStrategy(bob=(bob_minus, bob_plus), alice=(alice_0, alice_90))
        for bob_minus, bob_plus, alice_0, alice_90 in itertools.product(
            _SIGNS, _SIGNS, _VECTOR_CHOICES, _VECTOR_CHOICES
        )
    ]


class ExtremalBound(NamedTuple):
    maximum: float
    argmax: DeterministicStrategy


def lhv_extremal_bound(v_qm) -> ExtremalBound:
    """Exhaustive maximum of the scalar product over all 64 strategies.

    By sign symmetry of the enumeration the minimum is the negated maximum.
    Ties resolve to the first strategy in enumeration order.
    """
    best_value = -np.inf
    best_strategy = None
    for strategy in enumerate_strategies():
        value = super_dot(v_qm, strategy_super_vector(strategy))
        if value > best_value:
            best_value = value
            best_strategy = strategy
    return ExtremalBound(best_value, best_strategy)


@dataclass(frozen=True)
class StrategyEnsemble:
    """Finite mixture of deterministic strategies with normalized weights."""

    entries: tuple[tuple[DeterministicStrategy, float], ...]

    def __post_init__(self) -> None:
        entries = tuple((strategy, float(weight)) for strategy, weight in self.entries)
        if not entries:
            raise ValueError("ensemble needs at least one strategy")
        for _, weight in entries:
            if not isfinite(weight) or weight < 0.0:
                raise ValueError(f"weights must be finite and nonnegative, got {weight!r}")
        total = fsum(weight for _, weight in entries)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "entries", entries)


def ensemble_super_vector(ensemble: StrategyEnsemble) -> np.ndarray:
    """Weight-averaged strategy super-vector."""
    total = np.zeros((4, 2))
    for strategy, weight in ensemble.entries:
        total += weight * strategy_super_vector(strategy)
    return total


def ensemble_correlation(
    ensemble: StrategyEnsemble, alice_phi_deg: float, bob_phi_deg: float
) -> np.ndarray:
    """Hidden-variable correlation vector at one setting pair of the grid."""
    total = np.zeros(2)
    for strategy, weight in ensemble.entries:
        total += weight * strategy.bob_value(bob_phi_deg) * strategy.alice_vector(alice_phi_deg)
    return total


@dataclass(frozen=True)
class BellTestReport:
    """Verdict of the geometric Bell argument.

    ``violated`` holds exactly when the quantum value exceeds the LHV upper
    bound by more than ``VIOLATION_TOL``; ``violation_ratio`` is their ratio.
    """

    quantum_value: float
    lhv_upper_bound: float
    lhv_lower_bound: float
    violated: bool
    violation_ratio: float
    optimal_strategy: DeterministicStrategy


def bell_test(visibility: float = 1.0) -> BellTestReport:
    """Compare the quantum prediction against the exhaustive LHV bound.

    At full visibility the quantum value is the super-vector squared norm 2;
    reduced visibility scales the predicted correlations, hence the scalar
    product, by the visibility factor.
    """
    if not (isfinite(visibility) and 0.0 <= visibility <= 1.0):
        raise ValueError(f"visibility must lie in [0, 1], got {visibility!r}")
    quantum = build_quantum_super_vector()
    bound = lhv_extremal_bound(quantum)
    quantum_value = super_dot(quantum, visibility * quantum)
    return BellTestReport(
        quantum_value=quantum_value,
        lhv_upper_bound=bound.maximum,
        lhv_lower_bound=-bound.maximum,
        violated=bool(quantum_value > bound.maximum + VIOLATION_TOL),
        violation_ratio=quantum_value / bound.maximum,
        optimal_strategy=bound.argmax,
    )
