"""Delimited-text tables and document mappings for ensemble results."""

from typing import Any, Dict, Sequence

import numpy as np

from selfmeasure.measurement import MeasurementModel
from selfmeasure.states import StatisticalDoublet
from .engine import DistributionTestReport, RunStatistics

FLOAT_FORMAT = "%.12g"


def write_event_log(path: str, branches: np.ndarray, model: MeasurementModel):
    """Columns event_index, outcome_branch, pointer_value."""
    values = np.asarray(model.pointer_eigenvalues)[branches]
    table = np.column_stack([np.arange(branches.size), branches, values])
    np.savetxt(
        path, table, delimiter=",", fmt=["%d", "%d", FLOAT_FORMAT],
        header="event_index,outcome_branch,pointer_value", comments="",
    )


def write_eta_table(path: str, times: Sequence[float], trajectory: Sequence[StatisticalDoublet]):
    """Columns t, eta_0, eta_1, eta_2."""
    table = np.column_stack([np.asarray(times, dtype=float), np.array([d.eta_I for d in trajectory])])
    np.savetxt(path, table, delimiter=",", fmt=FLOAT_FORMAT, header="t,eta_0,eta_1,eta_2", comments="")


def statistics_to_document(stats: RunStatistics) -> Dict[str, Any]:
    return {
        "n_events": stats.n_events,
        "seed": stats.seed,
        "counts": list(stats.counts),
        "empirical_frequencies": list(stats.empirical_frequencies),
        "expected_probabilities": list(stats.expected_probabilities),
        "max_abs_deviation": stats.max_abs_deviation,
        "mean_pointer_value": stats.mean_pointer_value,
    }


def distribution_report_to_document(report: DistributionTestReport) -> Dict[str, Any]:
    return {
        "z_score": report.z_score,
        "p_value": report.p_value,
        "alpha": report.alpha,
        "exact": report.exact,
        "passed": report.passed,
    }
