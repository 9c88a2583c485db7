"""Command-line front end.

Angles are degrees at this boundary and radians inside the library.  Output
is deterministic: floats are fixed at 12 significant digits, payload key
order is fixed, and no timestamps or environment data are emitted.  Exit
codes: 0 success, 2 usage error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from typing import Callable

import numpy as np

from .corrvec import correlation_closed_form, super_norm_sq, build_quantum_super_vector
from .lhv import bell_test, enumerate_strategies, lhv_extremal_bound
from .noise import violation_threshold
from .schema import SCHEMA_VERSION
from .swap import TSIRELSON_BOUND, reduced_purity, run_swap
from .teleport import (
    BELL_OUTCOMES,
    BOB_OUTCOMES,
    AnalyzerSettings,
    PreparationSettings,
    joint_distribution_closed_form,
    joint_distribution_simulated,
    run_full_teleportation,
)

CHECK_TOL = 1e-12
MAX_SCAN_ROWS = 1_000_000
_GRID_AXES = ("beta", "phi", "beta-prime", "phi-prime")

__all__ = ["main", "build_parser", "InvariantBreach", "UsageError"]


class InvariantBreach(RuntimeError):
    """An internal consistency check failed; maps to exit code 3."""


class UsageError(ValueError):
    """Invalid request detected after argument parsing; maps to exit code 2."""


def _fmt(value: float) -> str:
    # adding 0.0 folds negative zero into plain zero
    return f"{value + 0.0:.12g}"


def _round_floats(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, (float, np.floating)):
        return float(_fmt(float(obj)))
    if isinstance(obj, dict):
        return {key: _round_floats(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(value) for value in obj]
    return obj


def _render_json(payload: dict) -> str:
    return json.dumps(_round_floats(payload), indent=2) + "\n"


def _require_checks(checks: dict[str, float]) -> dict[str, float]:
    for name, value in checks.items():
        if value > CHECK_TOL:
            raise InvariantBreach(f"check {name} = {value:.3e} exceeds {CHECK_TOL}")
    return checks


def _visibility_arg(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise argparse.ArgumentTypeError(f"visibility must lie in [0, 1], got {text!r}")
    return value


def _grid_arg(text: str) -> tuple[str, list[float]]:
    axis, sep, rest = text.partition("=")
    if not sep or axis not in _GRID_AXES:
        raise argparse.ArgumentTypeError(
            f"grid argument must be <axis>=<start>:<stop>:<step> with axis in {_GRID_AXES}, got {text!r}"
        )
    parts = rest.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid range must be <start>:<stop>:<step>, got {rest!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric grid range {rest!r}") from None
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise argparse.ArgumentTypeError("grid range values must be finite")
    if step <= 0.0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    if stop < start:
        raise argparse.ArgumentTypeError("grid stop must not precede start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return axis, [start + i * step for i in range(count)]


def _add_angle_args(parser: argparse.ArgumentParser, *, analyzer: bool) -> None:
    parser.add_argument("--beta", type=float, default=45.0, help="preparation beta in degrees")
    parser.add_argument("--phi", type=float, default=0.0, help="preparation phi in degrees")
    if analyzer:
        parser.add_argument(
            "--beta-prime", type=float, default=45.0, help="analyzer beta' in degrees"
        )
        parser.add_argument(
            "--phi-prime", type=float, default=0.0, help="analyzer phi' in degrees"
        )


def _cmd_probs(args: argparse.Namespace) -> str:
    prep = PreparationSettings.from_degrees(args.beta, args.phi)
    analyzer = AnalyzerSettings.from_degrees(args.beta_prime, args.phi_prime)
    closed = joint_distribution_closed_form(prep, analyzer)
    simulated = joint_distribution_simulated(prep, analyzer)
    checks = _require_checks(
        {
            "total_deviation": abs(float(closed.table.sum()) - 1.0),
            "marginal_deviation": float(np.max(np.abs(closed.table.sum(axis=1) - 0.25))),
            "oracle_deviation": float(np.max(np.abs(closed.table - simulated.table))),
        }
    )
    if args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["bell", "bob", "probability"])
        for (bell, bob), p in closed.items():
            writer.writerow([bell, bob, _fmt(p)])
        return buffer.getvalue()
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "probs",
        "settings": {
            "beta_deg": args.beta,
            "phi_deg": args.phi,
            "beta_prime_deg": args.beta_prime,
            "phi_prime_deg": args.phi_prime,
        },
        "probabilities": {
            bell: {bob: closed.probability(bell, bob) for bob in BOB_OUTCOMES}
            for bell in BELL_OUTCOMES
        },
        "checks": checks,
    }
    return _render_json(payload)


def _strategy_payload(strategy) -> dict:
    return {
        "bob": {"-45": strategy.bob[0], "45": strategy.bob[1]},
        "alice": {"0": list(strategy.alice[0]), "90": list(strategy.alice[1])},
    }


def _cmd_bell_test(args: argparse.Namespace) -> str:
    report = bell_test(args.visibility)
    checks = _require_checks(
        {
            "strategy_count_deviation": float(abs(len(enumerate_strategies()) - 64)),
            "bound_symmetry": abs(report.lhv_upper_bound + report.lhv_lower_bound),
            "ratio_residual": abs(
                report.violation_ratio * report.lhv_upper_bound - report.quantum_value
            ),
        }
    )
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "bell_test",
        "visibility": args.visibility,
        "quantum_value": report.quantum_value,
        "lhv_upper_bound": report.lhv_upper_bound,
        "lhv_lower_bound": report.lhv_lower_bound,
        "violated": report.violated,
        "violation_ratio": report.violation_ratio,
        "margin": report.quantum_value - report.lhv_upper_bound,
        "optimal_strategy": _strategy_payload(report.optimal_strategy),
        "checks": checks,
    }
    return _render_json(payload)


def _cmd_scan(args: argparse.Namespace) -> str:
    axes = {
        "beta": [args.beta],
        "phi": [args.phi],
        "beta-prime": [args.beta_prime],
        "phi-prime": [args.phi_prime],
    }
    for axis, values in args.grid or ():
        axes[axis] = values
    rows = 1
    for values in axes.values():
        rows *= len(values)
    if rows > MAX_SCAN_ROWS:
        raise UsageError(f"grid of {rows} rows exceeds the {MAX_SCAN_ROWS} row limit")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["beta", "phi", "beta_prime", "phi_prime", "E_x", "E_y"])
    for beta, phi, beta_prime, phi_prime in itertools.product(
        axes["beta"], axes["phi"], axes["beta-prime"], axes["phi-prime"]
    ):
        prep = PreparationSettings.from_degrees(beta, phi)
        analyzer = AnalyzerSettings.from_degrees(beta_prime, phi_prime)
        e = correlation_closed_form(prep, analyzer)
        writer.writerow([_fmt(v) for v in (beta, phi, beta_prime, phi_prime, e[0], e[1])])
    return buffer.getvalue()


def _cmd_swap(args: argparse.Namespace) -> str:
    report = run_swap()
    probabilities = [report.outcome_probabilities[c] for c in BELL_OUTCOMES]
    purities = [reduced_purity(report.post_states[c], report.post_states[c].factor_labels[0]) for c in BELL_OUTCOMES]
    chsh = [report.chsh_values[c] for c in BELL_OUTCOMES]
    checks = _require_checks(
        {
            "total_probability_deviation": abs(sum(probabilities) - 1.0),
            "uniformity_deviation": max(abs(p - 0.25) for p in probabilities),
            "purity_deviation": max(abs(p - 0.5) for p in purities),
            "tsirelson_excess": max(0.0, max(chsh) - TSIRELSON_BOUND),
        }
    )
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "swap",
        "outcomes": [
            {
                "bell": c,
                "probability": report.outcome_probabilities[c],
                "reduced_purity": purities[i],
                "chsh_max": report.chsh_values[c],
                "chsh_angles_deg": [math.degrees(a) for a in report.chsh_angles[c]],
            }
            for i, c in enumerate(BELL_OUTCOMES)
        ],
        "checks": checks,
    }
    return _render_json(payload)


def _cmd_noise_threshold(args: argparse.Namespace) -> str:
    threshold = violation_threshold()
    quantum = build_quantum_super_vector()
    bound = lhv_extremal_bound(quantum).maximum
    below = bell_test(threshold - 0.01)
    above = bell_test(threshold + 0.01)
    if below.violated or not above.violated:
        raise InvariantBreach("Bell verdict does not flip across the computed threshold")
    checks = _require_checks(
        {"threshold_equation_residual": abs(threshold * super_norm_sq(quantum) - bound)}
    )
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "noise_threshold",
        "threshold": threshold,
        "bracket": {
            "below": {
                "visibility": threshold - 0.01,
                "quantum_value": below.quantum_value,
                "violated": below.violated,
            },
            "above": {
                "visibility": threshold + 0.01,
                "quantum_value": above.quantum_value,
                "violated": above.violated,
            },
        },
        "checks": checks,
    }
    return _render_json(payload)


def _cmd_teleport_fidelity(args: argparse.Namespace) -> str:
    prep = PreparationSettings.from_degrees(args.beta, args.phi)
    results = run_full_teleportation(prep)
    probabilities = [p for _, p, _ in results]
    fidelities = [f for _, _, f in results]
    checks = _require_checks(
        {
            "total_probability_deviation": abs(sum(probabilities) - 1.0),
            "probability_deviation": max(abs(p - 0.25) for p in probabilities),
            "fidelity_deviation": max(abs(f - 1.0) for f in fidelities),
        }
    )
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "teleport_fidelity",
        "settings": {"beta_deg": args.beta, "phi_deg": args.phi},
        "outcomes": [
            {"bell": outcome, "probability": p, "fidelity": f} for outcome, p, f in results
        ],
        "checks": checks,
    }
    return _render_json(payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="telebell",
        description="Bell analysis of the channel-cut teleportation protocol.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def register(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")
        p.set_defaults(handler=handler)
        return p

    probs = register("probs", _cmd_probs, "eight joint outcome probabilities")
    _add_angle_args(probs, analyzer=True)
    probs.add_argument("--format", choices=("json", "csv"), default="json")

    bell = register("bell-test", _cmd_bell_test, "quantum vs LHV super-vector verdict")
    bell.add_argument("--visibility", type=_visibility_arg, default=1.0)

    scan = register("scan", _cmd_scan, "correlation vectors over a settings grid (CSV)")
    _add_angle_args(scan, analyzer=True)
    scan.add_argument(
        "--grid",
        type=_grid_arg,
        action="append",
        metavar="AXIS=START:STOP:STEP",
        help="sweep an axis (beta, phi, beta-prime, phi-prime) in degrees; repeatable",
    )

    register("swap", _cmd_swap, "entanglement swapping with per-outcome CHSH maxima")
    register("noise-threshold", _cmd_noise_threshold, "visibility threshold of the Bell violation")

    fidelity = register(
        "teleport-fidelity", _cmd_teleport_fidelity, "full corrected protocol sanity check"
    )
    _add_angle_args(fidelity, analyzer=False)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantBreach, ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0
