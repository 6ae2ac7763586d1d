"""selfmeasure CLI - batch runner for experiment documents."""

import argparse
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict

import numpy as np

from selfmeasure.algebra import (
    algebra_to_document, breuer_indistinguishable, classical_state, decompose, is_extremal,
    minimal_projections, restrict_state,
)
from selfmeasure.config import Command, ExperimentConfig, config_summary, dump, parse_config
from selfmeasure.errors import SelfMeasureError
from selfmeasure.measurement import (
    MeasurementModel, commutator_norm, final_mixed_state, final_pure_state, interference_expectation,
    interference_observable, ms_algebra, observer_algebra, observer_full_algebra,
    observer_restricted_density, pointer_coherence_expectations, pointer_observable,
    unbiasedness_residual,
)
from selfmeasure.states import matrix_to_pairs, mix, purity, state_distance, state_to_document, vector_to_pairs
from selfmeasure.stochastic import (
    CounterRNG, distribution_report_to_document, distribution_test, draw_branches, empirical_gemenge,
    eta_trajectory, individual_breuer_gap, statistics_from_branches, statistics_to_document,
    write_eta_table, write_event_log,
)
from selfmeasure.stochastic.engine import MIN_TEST_EVENTS
from selfmeasure.stochastic.export import FLOAT_FORMAT

logger = logging.getLogger(__name__)

Report = Dict[str, Any]


def _side_path(output_path: str, suffix: str) -> str:
    """<output stem>.<suffix>, next to the main report."""
    return str(Path(output_path).with_suffix("")) + suffix


# ----------------------------------------------------------------------
# Per-command reports
# ----------------------------------------------------------------------

def simulate_report(config: ExperimentConfig, model: MeasurementModel) -> Report:
    branches = draw_branches(model, config.n_events, config.seed, config.workers)
    stats = statistics_from_branches(model, branches, config.seed)
    event_log = _side_path(config.output_path, ".events.csv")
    write_event_log(event_log, branches, model)

    gemenge = empirical_gemenge(stats, model)
    r_o = observer_restricted_density(final_pure_state(model))
    report: Report = {
        "event_log": event_log,
        "statistics": statistics_to_document(stats),
        "empirical_gemenge": state_to_document(gemenge),
        "gemenge_distance_to_restricted": state_distance(mix(gemenge, r_o.spec), r_o),
    }
    if stats.n_events >= MIN_TEST_EVENTS:
        report["distribution_test"] = distribution_report_to_document(distribution_test(stats))
    return report


def restrict_report(config: ExperimentConfig, model: MeasurementModel) -> Report:
    rho = final_pure_state(model)
    r_o = observer_restricted_density(rho)
    restricted = restrict_state(rho, observer_algebra(model))
    dist = classical_state(restricted, pointer_observable(model))
    return {
        "restricted_density": matrix_to_pairs(r_o.matrix),
        "purity": purity(r_o),
        "distribution": {
            "values": [float(v) for v in dist.values],
            "probabilities": [float(p) for p in dist.probabilities],
            "mean": dist.mean(),
        },
        "extremal": is_extremal(dist),
        "decomposition_weights": [weight for _, weight in decompose(dist)],
    }


def algebra_info_report(config: ExperimentConfig, model: MeasurementModel) -> Report:
    algebra = observer_algebra(model)
    q_o = pointer_observable(model)
    projections = minimal_projections(algebra)
    product_residual, adjoint_residual = algebra.closure_residuals()
    report = algebra_to_document(algebra, include_basis=False)
    report.update({
        "product_closure_residual": product_residual,
        "adjoint_closure_residual": adjoint_residual,
        "minimal_projection_count": len(projections),
        "minimal_projection_values": [
            float(np.real(np.trace(q_o @ p) / np.trace(p))) for p in projections
        ],
        "minimal_projections": [matrix_to_pairs(p) for p in projections],
    })
    return report


def breuer_report(config: ExperimentConfig, model: MeasurementModel) -> Report:
    pure, mixed = final_pure_state(model), final_mixed_state(model)
    return {
        "observer_algebra_coincide": breuer_indistinguishable(pure, mixed, observer_algebra(model)),
        "observer_full_algebra_coincide": breuer_indistinguishable(pure, mixed, observer_full_algebra()),
        "full_algebra_coincide": breuer_indistinguishable(pure, mixed, ms_algebra()),
        "restricted_distance": state_distance(
            observer_restricted_density(pure), observer_restricted_density(mixed)
        ),
        "individual_event_gap": individual_breuer_gap(model, CounterRNG(config.seed)),
    }


def interference_report(config: ExperimentConfig, model: MeasurementModel) -> Report:
    pure, mixed = final_pure_state(model), final_mixed_state(model)
    a1, a2 = model.amplitudes
    return {
        "pure": interference_expectation(pure),
        "mixed": interference_expectation(mixed),
        "predicted_pure": float(2 * np.real(np.conj(a1) * a2)),
        "commutator_norm": commutator_norm(interference_observable().matrix, pointer_observable(model)),
        "unbiasedness_residual": unbiasedness_residual(model),
        "pointer_coherences": pointer_coherence_expectations(pure),
    }


def evolve_report(config: ExperimentConfig, model: MeasurementModel) -> Report:
    times = list(config.times or ())
    trajectory = eta_trajectory(model, times)
    table = _side_path(config.output_path, ".eta.csv")
    write_eta_table(table, times, trajectory)
    return {
        "eta_table": table,
        "times": times,
        "eta_I": [[float(p) for p in doublet.eta_I] for doublet in trajectory],
    }


REPORTS: Dict[Command, Callable[[ExperimentConfig, MeasurementModel], Report]] = {
    Command.SIMULATE: simulate_report,
    Command.RESTRICT: restrict_report,
    Command.ALGEBRA_INFO: algebra_info_report,
    Command.BREUER: breuer_report,
    Command.INTERFERENCE: interference_report,
    Command.EVOLVE: evolve_report,
}


def build_report(config: ExperimentConfig) -> Report:
    """Report document for the config's command; may write side tables."""
    model = config.to_model()
    return {
        "command": config.command.value,
        "amplitudes": vector_to_pairs(model.amplitudes),
        "renormalized": config.renormalized,
        "result": REPORTS[config.command](config, model),
    }


def run_command(config: ExperimentConfig, timestamp: bool = True) -> int:
    """Run one experiment and write its report; 0 on success, 1 on failure."""
    try:
        report = build_report(config)
        text = dump(report, precision=FLOAT_FORMAT)
        if timestamp:
            generated = datetime.now(timezone.utc).isoformat(timespec="seconds")
            text = f"# generated: {generated}\n" + text
        with open(config.output_path, "w", encoding="utf-8") as f:
            f.write(text)
    except SelfMeasureError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"Error writing output: {e}", file=sys.stderr)
        return 1
    logger.info("%s report written to %s", config.command.value, config.output_path)
    return 0


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def run_cli_command(args):
    """Run the experiment described by a config document."""
    config = _load_config(args.config)
    if config is None:
        return 1
    try:
        config = config.with_overrides(
            seed=args.seed, n_events=args.events, workers=args.workers, output_path=args.output,
        )
    except SelfMeasureError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return 1
    return run_command(config, timestamp=not args.no_timestamp)


def check_command(args):
    """Validate a config document and print a summary."""
    config = _load_config(args.config)
    if config is None:
        return 1
    for line in config_summary(config):
        print(line)
    return 0


def _load_config(path: str):
    """Read and validate a config document, returning None on error."""
    source = _read_file(path)
    if source is None:
        return None
    try:
        return parse_config(source)
    except SelfMeasureError as e:
        print(f"Config error: {e}", file=sys.stderr)
        for message in getattr(e, "errors", [])[1:]:
            print(f"  {message}", file=sys.stderr)
        return None


def _read_file(path: str):
    """Read config file, returning contents or None on error."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except FileNotFoundError:
        print(f"Error: file not found: {path}", file=sys.stderr)
        return None
    except OSError as e:
        print(f"Error reading file: {e}", file=sys.stderr)
        return None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="Path to the experiment document")
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")

    parser = argparse.ArgumentParser(
        prog="selfmeasure",
        description="Observer-inside-the-system measurement experiments",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    run_parser = subparsers.add_parser("run", parents=[common], help="Run the document's command")
    run_parser.add_argument("--output", help="Report path (overrides output_path)")
    run_parser.add_argument("--no-timestamp", action="store_true", help="Omit the generated-at header line")
    run_parser.add_argument("--seed", type=int, help="Seed (overrides seed)")
    run_parser.add_argument("--events", type=int, help="Event count (overrides n_events)")
    run_parser.add_argument("--workers", type=int, help="Sampling threads (overrides workers)")
    run_parser.set_defaults(func=run_cli_command)

    check_parser = subparsers.add_parser("check", parents=[common], help="Validate a document and print a summary")
    check_parser.set_defaults(func=check_command)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    sys.exit(args.func(args))


if __name__ == "__main__":
    main()
