"""Schroedinger-Liouville dynamics of the MS and its pure/mixed final states."""

import logging
from typing import Dict, Union

import numpy as np

from selfmeasure.errors import LinalgError, MeasurementError
from selfmeasure.linalg import (
    ComplexMatrix, as_matrix, max_abs, partial_trace, principal_log_unitary, unitary_from_hamiltonian,
)
from selfmeasure.linalg.tolerances import SPECTRAL_TOL
from selfmeasure.states import DensityState, GemengeState, density_from_pure, mix
from .model import MS_SPEC, O_DIM, S_DIM, MeasurementModel, initial_state, product_state
from .observables import interference_observable, pointer_coherence_observables, pointer_observable

logger = logging.getLogger(__name__)

StateLike = Union[DensityState, ComplexMatrix]


def _ms_matrix(rho: StateLike) -> ComplexMatrix:
    m = rho.matrix if isinstance(rho, DensityState) else as_matrix(rho)
    if m.shape[0] != S_DIM * O_DIM:
        raise MeasurementError(f"Expected a 6-dimensional MS state, got dim {m.shape[0]}")
    return m


def coupling_hamiltonian(model: MeasurementModel) -> ComplexMatrix:
    """Constant Hermitian H with exp(-iH(t1 - t0)) equal to the model's coupling."""
    if model.duration == 0 and max_abs(model.coupling - np.eye(model.coupling.shape[0])) > SPECTRAL_TOL:
        raise MeasurementError("Degenerate interaction duration t1 = t0 with a non-identity coupling")
    try:
        h = principal_log_unitary(model.coupling, model.duration)
    except LinalgError as e:
        raise MeasurementError(str(e)) from e
    logger.debug("coupling generator over [%g, %g]: max |H_jk| = %.6g", model.t0, model.t1, max_abs(h))
    return h


def liouville_evolve(rho: DensityState, h, t: float) -> DensityState:
    """exp(-iHt) rho exp(+iHt), the closed-form solution of d(rho)/dt = -i[H, rho]."""
    h = as_matrix(h)
    if h.shape != rho.matrix.shape:
        raise MeasurementError(f"Dimension mismatch: H {h.shape} vs rho {rho.matrix.shape}")
    u = unitary_from_hamiltonian(h, t)
    return DensityState(u @ rho.matrix @ u.conj().T, rho.spec)


def initial_density(model: MeasurementModel) -> DensityState:
    return density_from_pure(initial_state(model), model.spec)


def final_pure_state(model: MeasurementModel) -> DensityState:
    """Projector onto U * Psi_in = sum_i a_i |s_i>|O_i>."""
    psi = model.coupling @ initial_state(model).amplitudes
    return density_from_pure(psi, model.spec)


def final_mixed_state(model: MeasurementModel) -> DensityState:
    """sum_i |a_i|^2 |s_i O_i><s_i O_i|."""
    table = GemengeState(tuple(
        (product_state(s, s + 1), p) for s, p in enumerate(model.probabilities)
    ))
    return mix(table, model.spec)


def individual_event_state(model: MeasurementModel, branch: int) -> DensityState:
    """|s_l O_l><s_l O_l| for branch l in {1, 2}."""
    if branch not in (1, 2):
        raise MeasurementError(f"Branch must be 1 or 2, got {branch}")
    return density_from_pure(product_state(branch - 1, branch), model.spec)


def interference_expectation(rho: StateLike) -> float:
    """Tr(rho B); equals a_1* a_2 + a_1 a_2* on pure final states."""
    m = _ms_matrix(rho)
    return float(np.real(np.trace(m @ interference_observable().matrix)))


def observer_restricted_density(rho: StateLike) -> DensityState:
    """R_O = Tr_S rho."""
    m = _ms_matrix(rho)
    return DensityState(partial_trace(m, MS_SPEC, "O"), MS_SPEC.factor_spec("O"))


def unbiasedness_residual(model: MeasurementModel) -> float:
    """|Tr(rho_final (I_S (x) Q_O)) - sum_i |a_i|^2 q^O_i|."""
    measured = np.real(np.trace(final_pure_state(model).matrix @ pointer_observable(model)))
    expected = float(model.probabilities @ np.array(model.pointer_eigenvalues[1:]))
    return float(abs(measured - expected))


def pointer_coherence_expectations(rho: StateLike) -> Dict[str, float]:
    """Expectations of the pointer-basis off-diagonal observables."""
    m = _ms_matrix(rho)
    return {
        name: float(np.real(np.trace(m @ observable)))
        for name, observable in pointer_coherence_observables().items()
    }
