"""Quantum state representations: vectors, density matrices, Gemenge tables, doublets."""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from selfmeasure.errors import StateError
from selfmeasure.linalg import (
    ComplexMatrix, SpaceSpec, as_matrix, hermitian_eig, hermiticity_residual, max_abs, partial_trace,
)
from selfmeasure.linalg.tolerances import HERMITIAN_TOL, NORM_TOL

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector in a finite Hilbert space."""

    amplitudes: npt.NDArray[np.complex128]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size == 0:
            raise StateError("PureState needs at least one amplitude")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise StateError(f"Unnormalized amplitudes: sum |a|^2 = {norm_sq:.12g}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, dim: int, index: int) -> "PureState":
        if not 0 <= index < dim:
            raise StateError(f"Basis index {index} outside dimension {dim}")
        amps = np.zeros(dim, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True, eq=False)
class DensityState:
    """Density matrix on the space described by ``spec``.

    Construction only checks shapes; physical validity is reported by
    ``validate_density`` and enforced by ``DensityState.checked``.
    """

    matrix: ComplexMatrix
    spec: SpaceSpec

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != self.spec.total_dim:
            raise StateError(
                f"Density dim {m.shape[0]} does not match spec total_dim {self.spec.total_dim}"
            )
        object.__setattr__(self, "matrix", m)

    @classmethod
    def checked(cls, matrix, spec: SpaceSpec) -> "DensityState":
        state = cls(matrix, spec)
        report = validate_density(state)
        if not report.passed:
            raise StateError(f"Invalid density matrix: {report.summary()}")
        return state

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class GemengeState:
    """Ensemble table {(psi_l, P_l)}; entries need not be orthogonal."""

    entries: Tuple[Tuple[PureState, float], ...]

    def __post_init__(self):
        entries = tuple((psi, float(p)) for psi, p in self.entries)
        if not entries:
            raise StateError("Gemenge table is empty")
        dims = {psi.dim for psi, _ in entries}
        if len(dims) != 1:
            raise StateError(f"Gemenge entries have mixed dimensions {sorted(dims)}")
        probabilities = np.array([p for _, p in entries])
        if np.any(probabilities < -NORM_TOL):
            raise StateError(f"Negative probability in Gemenge table: {probabilities.min():.3e}")
        total = probabilities.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise StateError(f"Gemenge probabilities sum to {total:.12g}, not 1")
        object.__setattr__(self, "entries", entries)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.entries])

    @property
    def dim(self) -> int:
        return self.entries[0][0].dim


@dataclass(frozen=True, eq=False)
class DoubletState:
    """Individual-event state: dynamical density phi_D plus pointer record phi_I."""

    phi_D: DensityState
    pointer_index: int
    pointer_dim: int = 3

    def __post_init__(self):
        if not 0 <= self.pointer_index < self.pointer_dim:
            raise StateError(
                f"Pointer index {self.pointer_index} outside 0..{self.pointer_dim - 1}"
            )

    @property
    def projector(self) -> ComplexMatrix:
        """|O_i><O_i| in the pointer basis."""
        p = np.zeros((self.pointer_dim, self.pointer_dim), dtype=np.complex128)
        p[self.pointer_index, self.pointer_index] = 1.0
        return p

    @property
    def phi_I(self) -> ComplexMatrix:
        return self.projector

    def pointer_value(self, pointer_eigenvalues: Sequence[float]) -> float:
        return float(pointer_eigenvalues[self.pointer_index])


@dataclass(frozen=True, eq=False)
class StatisticalDoublet:
    """Ensemble doublet (eta_D, eta_I) with eta_I read off eta_D's pointer weights."""

    eta_D: DensityState
    eta_I: np.ndarray
    pointer_label: str = "O"

    def __post_init__(self):
        eta_i = np.asarray(self.eta_I, dtype=float).reshape(-1)
        if np.any(eta_i < -NORM_TOL) or abs(eta_i.sum() - 1.0) > NORM_TOL:
            raise StateError(f"eta_I is not a probability vector: {eta_i}")
        object.__setattr__(self, "eta_I", eta_i)
        residual = self.consistency_residual()
        if residual > NORM_TOL:
            raise StateError(f"eta_I disagrees with eta_D pointer weights by {residual:.3e}")

    @classmethod
    def from_density(cls, eta_D: DensityState, pointer_label: str = "O") -> "StatisticalDoublet":
        return cls(eta_D, pointer_weights(eta_D, pointer_label), pointer_label)

    def consistency_residual(self) -> float:
        expected = pointer_weights(self.eta_D, self.pointer_label)
        if expected.shape != self.eta_I.shape:
            return float("inf")
        return float(np.max(np.abs(expected - self.eta_I)))


def pointer_weights(rho: DensityState, pointer_label: str = "O") -> np.ndarray:
    """Tr(rho * (I (x) |O_i><O_i|)) for every pointer index i."""
    reduced = partial_trace(rho.matrix, rho.spec, pointer_label)
    return np.diag(reduced).real.copy()


@dataclass
class DensityReport:
    """Per-invariant verdicts for a density matrix, with measured residuals."""

    hermiticity_residual: float
    trace_residual: float
    min_eigenvalue: float
    hermitian: bool = field(init=False)
    unit_trace: bool = field(init=False)
    positive: bool = field(init=False)

    def __post_init__(self):
        self.hermitian = self.hermiticity_residual <= HERMITIAN_TOL
        self.unit_trace = self.trace_residual <= NORM_TOL
        self.positive = self.min_eigenvalue >= -NORM_TOL

    @property
    def passed(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive

    def summary(self) -> str:
        def verdict(ok: bool) -> str:
            return "pass" if ok else "FAIL"
        return (
            f"hermitian {verdict(self.hermitian)} ({self.hermiticity_residual:.3e}), "
            f"trace {verdict(self.unit_trace)} ({self.trace_residual:.3e}), "
            f"positivity {verdict(self.positive)} (min eigenvalue {self.min_eigenvalue:.3e})"
        )


def _coerce_pure(psi: Union[PureState, Sequence[complex]]) -> PureState:
    return psi if isinstance(psi, PureState) else PureState(np.asarray(psi, dtype=np.complex128))


def density_from_pure(psi: Union[PureState, Sequence[complex]], spec: SpaceSpec) -> DensityState:
    """|psi><psi|."""
    psi = _coerce_pure(psi)
    if psi.dim != spec.total_dim:
        raise StateError(f"State dim {psi.dim} does not match spec total_dim {spec.total_dim}")
    return DensityState(np.outer(psi.amplitudes, psi.amplitudes.conj()), spec)


def mix(gemenge: GemengeState, spec: SpaceSpec) -> DensityState:
    """sum_l P_l |psi_l><psi_l|."""
    if gemenge.dim != spec.total_dim:
        raise StateError(f"Gemenge dim {gemenge.dim} does not match spec total_dim {spec.total_dim}")
    total = gemenge.probabilities.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise StateError(f"Gemenge probabilities sum to {total:.12g}, not 1")
    rho = np.zeros((spec.total_dim, spec.total_dim), dtype=np.complex128)
    for psi, p in gemenge.entries:
        rho += p * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityState(rho, spec)


def validate_density(rho: DensityState) -> DensityReport:
    m = rho.matrix
    herm = hermiticity_residual(m)
    trace_residual = abs(np.trace(m) - 1.0)
    min_eig = float(hermitian_eig((m + m.conj().T) / 2)[0][0])
    report = DensityReport(herm, float(trace_residual), min_eig)
    if not report.passed:
        logger.debug("density check failed: %s", report.summary())
    return report


def state_distance(a: DensityState, b: DensityState) -> float:
    """Max-entry norm of a - b."""
    if a.spec != b.spec:
        raise StateError(f"Spec mismatch: {a.spec.factors} vs {b.spec.factors}")
    return max_abs(a.matrix - b.matrix)


def purity(rho: DensityState) -> float:
    """Tr(rho^2)."""
    return float(np.vdot(rho.matrix.conj().T, rho.matrix).real)
