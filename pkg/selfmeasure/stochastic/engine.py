"""Per-event sampling of the pointer record phi_I and ensemble statistics.

phi_D follows the Liouville dynamics and is shared by every event; only the
information component phi_I = |O_i><O_i| is drawn, with P_i = |a_i|^2.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from selfmeasure.errors import StochasticError
from selfmeasure.measurement import (
    MeasurementModel, coupling_hamiltonian, final_pure_state, individual_event_state,
    initial_density, liouville_evolve, observer_restricted_density,
)
from selfmeasure.states import (
    DensityState, DoubletState, GemengeState, PureState, StatisticalDoublet, state_distance,
)
from .rng import CounterRNG

logger = logging.getLogger(__name__)

# Two-sided tail of a 4-sigma normal deviation.
FOUR_SIGMA_ALPHA = float(2 * norm.sf(4.0))
MIN_TEST_EVENTS = 100


@dataclass(frozen=True, eq=False)
class EventRecord:
    event_index: int
    outcome_branch: int
    pointer_value: float
    doublet: DoubletState


@dataclass(frozen=True)
class RunStatistics:
    n_events: int
    counts: Tuple[int, int]
    empirical_frequencies: Tuple[float, float]
    expected_probabilities: Tuple[float, float]
    max_abs_deviation: float
    seed: int
    pointer_values: Tuple[float, float] = (1.0, 2.0)

    @property
    def mean_pointer_value(self) -> float:
        return float(np.dot(self.empirical_frequencies, self.pointer_values))


@dataclass(frozen=True)
class DistributionTestReport:
    z_score: float
    p_value: float
    alpha: float
    passed: bool
    exact: bool


def _branches_from_uniforms(u: np.ndarray, p1: float) -> np.ndarray:
    return np.where(u < p1, 1, 2).astype(np.int8)


def _event_record(model: MeasurementModel, phi_d: DensityState, event_index: int, branch: int) -> EventRecord:
    return EventRecord(
        event_index=event_index,
        outcome_branch=branch,
        pointer_value=model.pointer_eigenvalues[branch],
        doublet=DoubletState(phi_d, branch),
    )


def sample_event(model: MeasurementModel, rng: CounterRNG, event_index: int = 0) -> EventRecord:
    """Draw branch i with probability |a_i|^2; phi_D stays the final pure state."""
    branch = int(_branches_from_uniforms(np.array([rng.uniform(event_index)]), model.probabilities[0])[0])
    return _event_record(model, final_pure_state(model), event_index, branch)


def draw_branches(model: MeasurementModel, n_events: int, seed: int, workers: int = 1) -> np.ndarray:
    """Branch (1 or 2) of events 0..n-1; identical for every ``workers`` value."""
    if n_events < 1:
        raise StochasticError(f"n_events must be at least 1, got {n_events}")
    rng = CounterRNG(seed)
    p1 = model.probabilities[0]
    out = np.empty(n_events, dtype=np.int8)
    pieces = list(rng.blocks_for(0, n_events))

    def fill(piece):
        b, inner, outer = piece
        out[outer] = _branches_from_uniforms(rng.block(b)[inner], p1)

    if workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, pieces))
    else:
        for piece in pieces:
            fill(piece)
    logger.debug("drew %d events in %d blocks (workers=%d)", n_events, len(pieces), workers)
    return out


def iter_events(model: MeasurementModel, n_events: int, seed: int) -> Iterator[EventRecord]:
    """EventRecords for events 0..n-1, all sharing one phi_D."""
    phi_d = final_pure_state(model)
    for index, branch in enumerate(draw_branches(model, n_events, seed)):
        yield _event_record(model, phi_d, index, int(branch))


def statistics_from_branches(model: MeasurementModel, branches: np.ndarray, seed: int) -> RunStatistics:
    n = int(branches.size)
    counts = np.bincount(branches, minlength=3)[1:3]
    frequencies = counts / n
    expected = model.probabilities
    return RunStatistics(
        n_events=n,
        counts=(int(counts[0]), int(counts[1])),
        empirical_frequencies=(float(frequencies[0]), float(frequencies[1])),
        expected_probabilities=(float(expected[0]), float(expected[1])),
        max_abs_deviation=float(np.max(np.abs(frequencies - expected))),
        seed=int(seed),
        pointer_values=(model.pointer_eigenvalues[1], model.pointer_eigenvalues[2]),
    )


def run_ensemble(model: MeasurementModel, n_events: int, seed: int, workers: int = 1) -> RunStatistics:
    """Deterministic in (model, n_events, seed)."""
    return statistics_from_branches(model, draw_branches(model, n_events, seed, workers), seed)


def empirical_gemenge(stats: RunStatistics, model: MeasurementModel) -> GemengeState:
    """{(|O_i>, f_i)} over branches that occurred."""
    if stats.n_events < 1:
        raise StochasticError("Empirical Gemenge needs at least one event")
    pointer_dim = len(model.pointer_eigenvalues)
    entries = [
        (PureState.basis(pointer_dim, branch), count / stats.n_events)
        for branch, count in zip((1, 2), stats.counts)
        if count > 0
    ]
    return GemengeState(tuple(entries))


def eta_trajectory(model: MeasurementModel, times: Sequence[float]) -> List[StatisticalDoublet]:
    """(eta_D(t), eta_I(t)) with the coupling switched on only during [t0, t1]."""
    h = coupling_hamiltonian(model)
    rho0 = initial_density(model)
    trajectory = []
    for t in times:
        elapsed = min(max(float(t) - model.t0, 0.0), model.duration)
        trajectory.append(StatisticalDoublet.from_density(liouville_evolve(rho0, h, elapsed)))
    return trajectory


def distribution_test(stats: RunStatistics, alpha_threshold: float = FOUR_SIGMA_ALPHA) -> DistributionTestReport:
    """Two-sided binomial z-test of the branch-1 count against |a_1|^2."""
    if stats.n_events < MIN_TEST_EVENTS:
        raise StochasticError(f"Distribution test needs at least {MIN_TEST_EVENTS} events, got {stats.n_events}")
    n = stats.n_events
    p = stats.expected_probabilities[0]
    f = stats.counts[0] / n
    if p <= 0.0 or p >= 1.0:
        passed = stats.counts[0] == round(p * n)
        return DistributionTestReport(0.0 if passed else float("inf"), 1.0 if passed else 0.0,
                                      alpha_threshold, passed, exact=True)
    z = (f - p) / np.sqrt(p * (1 - p) / n)
    p_value = float(2 * norm.sf(abs(z)))
    return DistributionTestReport(float(z), p_value, alpha_threshold, p_value >= alpha_threshold, exact=False)


def sample_mixed_event(model: MeasurementModel, rng: CounterRNG, event_index: int = 0) -> Tuple[int, DensityState]:
    """Individual MS state |s_l O_l><s_l O_l| of an incoming S mixture."""
    branch = int(_branches_from_uniforms(np.array([rng.uniform(event_index)]), model.probabilities[0])[0])
    return branch, individual_event_state(model, branch)


def individual_breuer_gap(model: MeasurementModel, rng: CounterRNG, event_index: int = 0) -> float:
    """Distance between the event's restricted state |O_l><O_l| and R_O."""
    _, rho_event = sample_mixed_event(model, rng, event_index)
    return state_distance(
        observer_restricted_density(rho_event),
        observer_restricted_density(final_pure_state(model)),
    )
