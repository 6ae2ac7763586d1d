"""The S-O measuring system: a binary system S read by a three-state pointer O."""

from dataclasses import dataclass, field, replace
from typing import Sequence, Tuple

import numpy as np

from selfmeasure.errors import MeasurementError
from selfmeasure.linalg import ComplexMatrix, SpaceSpec, as_matrix, max_abs, tensor_product, unitarity_residual
from selfmeasure.linalg.tolerances import NORM_TOL, UNITARY_TOL
from selfmeasure.states import PureState

MS_SPEC = SpaceSpec((("S", 2), ("O", 3)))
S_DIM, O_DIM = 2, 3


def product_index(s: int, o: int) -> int:
    """Index of |s_{s+1} O_o> (s in {0, 1}, o in {0, 1, 2}) under the S-slow convention."""
    return s * O_DIM + o


def product_state(s: int, o: int) -> PureState:
    return PureState.basis(S_DIM * O_DIM, product_index(s, o))


def _swap(dim: int, i: int, j: int) -> ComplexMatrix:
    p = np.eye(dim, dtype=np.complex128)
    p[[i, j]] = p[[j, i]]
    return p


def default_coupling(spec: SpaceSpec = MS_SPEC) -> ComplexMatrix:
    """Controlled permutation |s_1><s_1| (x) swap(O_0,O_1) + |s_2><s_2| (x) swap(O_0,O_2)."""
    if spec.dims != (S_DIM, O_DIM):
        raise MeasurementError(f"Default coupling needs the 2x3 MS layout, got {spec.factors}")
    s1 = np.diag([1.0, 0.0]).astype(np.complex128)
    s2 = np.diag([0.0, 1.0]).astype(np.complex128)
    return tensor_product(s1, _swap(O_DIM, 0, 1)) + tensor_product(s2, _swap(O_DIM, 0, 2))


@dataclass(frozen=True, eq=False)
class MeasurementModel:
    amplitudes: Tuple[complex, complex]
    s_eigenvalues: Tuple[float, float] = (1.0, -1.0)
    pointer_eigenvalues: Tuple[float, float, float] = (0.0, 1.0, 2.0)
    spec: SpaceSpec = MS_SPEC
    coupling: ComplexMatrix = field(default_factory=default_coupling)
    t0: float = 0.0
    t1: float = 1.0

    def __post_init__(self):
        amplitudes = tuple(complex(a) for a in self.amplitudes)
        s_values = tuple(float(q) for q in self.s_eigenvalues)
        pointer_values = tuple(float(q) for q in self.pointer_eigenvalues)
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "s_eigenvalues", s_values)
        object.__setattr__(self, "pointer_eigenvalues", pointer_values)
        object.__setattr__(self, "coupling", as_matrix(self.coupling))

        if len(amplitudes) != S_DIM:
            raise MeasurementError(f"Need two amplitudes, got {len(amplitudes)}")
        norm_sq = sum(abs(a) ** 2 for a in amplitudes)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise MeasurementError(f"Amplitudes are not normalised: |a_1|^2 + |a_2|^2 = {norm_sq:.12g}")
        if len(s_values) != S_DIM:
            raise MeasurementError(f"Need two S eigenvalues, got {len(s_values)}")
        if len(pointer_values) != O_DIM or len(set(pointer_values)) != O_DIM:
            raise MeasurementError(f"Need three distinct pointer eigenvalues, got {pointer_values}")
        if self.spec.dims != (S_DIM, O_DIM):
            raise MeasurementError(f"MS layout must be [(S, 2), (O, 3)], got {self.spec.factors}")
        if self.t1 < self.t0:
            raise MeasurementError(f"Interaction ends before it starts: t0={self.t0}, t1={self.t1}")
        self._check_coupling()

    def _check_coupling(self):
        u = self.coupling
        if u.shape != (S_DIM * O_DIM, S_DIM * O_DIM):
            raise MeasurementError(f"Coupling must be 6x6, got {u.shape}")
        residual = unitarity_residual(u)
        if residual > UNITARY_TOL:
            raise MeasurementError(f"Coupling is not unitary (residual {residual:.3e})")
        for s in range(S_DIM):
            moved = u @ product_state(s, 0).amplitudes
            target = product_state(s, s + 1).amplitudes
            if max_abs(moved - target) > NORM_TOL:
                raise MeasurementError(f"Coupling does not map |s_{s + 1} O_0> to |s_{s + 1} O_{s + 1}>")

    @property
    def probabilities(self) -> np.ndarray:
        """Born weights (|a_1|^2, |a_2|^2)."""
        return np.array([abs(a) ** 2 for a in self.amplitudes])

    @property
    def duration(self) -> float:
        return float(self.t1 - self.t0)

    def with_amplitudes(self, amplitudes: Sequence[complex]) -> "MeasurementModel":
        return replace(self, amplitudes=tuple(amplitudes))


def initial_state(model: MeasurementModel) -> PureState:
    """(a_1|s_1> + a_2|s_2>) (x) |O_0>."""
    amps = np.zeros(S_DIM * O_DIM, dtype=np.complex128)
    for s, a in enumerate(model.amplitudes):
        amps[product_index(s, 0)] = a
    return PureState(amps)
