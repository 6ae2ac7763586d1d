"""Observables and subalgebras of the measuring system."""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from selfmeasure.algebra import OperatorAlgebra, full_matrix_algebra, generate_algebra
from selfmeasure.errors import MeasurementError
from selfmeasure.linalg import ComplexMatrix, as_matrix, is_hermitian, max_abs, tensor_product
from .model import O_DIM, S_DIM, MeasurementModel, product_index

I_S = np.eye(S_DIM, dtype=np.complex128)
I_O = np.eye(O_DIM, dtype=np.complex128)


def pointer_observable(model: MeasurementModel) -> ComplexMatrix:
    """I_S (x) Q_O."""
    return tensor_product(I_S, np.diag(model.pointer_eigenvalues).astype(np.complex128))


def system_observable(model: MeasurementModel) -> ComplexMatrix:
    """Q (x) I_O."""
    return tensor_product(np.diag(model.s_eigenvalues).astype(np.complex128), I_O)


def pointer_projector(index: int) -> ComplexMatrix:
    """I_S (x) |O_i><O_i|."""
    if not 0 <= index < O_DIM:
        raise MeasurementError(f"Pointer index {index} outside 0..{O_DIM - 1}")
    p = np.zeros((O_DIM, O_DIM), dtype=np.complex128)
    p[index, index] = 1.0
    return tensor_product(I_S, p)


@dataclass(frozen=True, eq=False)
class InterferenceObservable:
    """B = |s_1 O_1><s_2 O_2| + h.c., the cross-branch term."""

    matrix: ComplexMatrix

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if not is_hermitian(m):
            raise MeasurementError("Interference observable must be Hermitian")
        object.__setattr__(self, "matrix", m)


def interference_observable() -> InterferenceObservable:
    b = np.zeros((S_DIM * O_DIM, S_DIM * O_DIM), dtype=np.complex128)
    b[product_index(0, 1), product_index(1, 2)] = 1.0
    b[product_index(1, 2), product_index(0, 1)] = 1.0
    return InterferenceObservable(b)


def commutator_norm(a, b) -> float:
    """Max-entry norm of [A, B]."""
    a, b = as_matrix(a), as_matrix(b)
    return max_abs(a @ b - b @ a)


def observer_algebra(model: MeasurementModel) -> OperatorAlgebra:
    """U_O: generated by I_S (x) Q_O and the identity."""
    return generate_algebra([pointer_observable(model)], include_identity=True)


def observer_full_algebra() -> OperatorAlgebra:
    """U_R = I_S (x) M_3, every internal observable of O."""
    units = [tensor_product(I_S, e) for e in full_matrix_algebra(O_DIM).basis]
    return generate_algebra(units, include_identity=True)


def ms_algebra() -> OperatorAlgebra:
    """M_6, all MS observables."""
    return full_matrix_algebra(S_DIM * O_DIM)


def pointer_coherence_observables() -> Dict[str, ComplexMatrix]:
    """I_S (x) (|O_j><O_k| + h.c.) and I_S (x) (-i|O_j><O_k| + h.c.) for j < k."""
    observables: Dict[str, ComplexMatrix] = {}
    for j in range(O_DIM):
        for k in range(j + 1, O_DIM):
            unit = np.zeros((O_DIM, O_DIM), dtype=np.complex128)
            unit[j, k] = 1.0
            observables[f"re_{j}{k}"] = tensor_product(I_S, unit + unit.conj().T)
            observables[f"im_{j}{k}"] = tensor_product(I_S, -1j * unit + (-1j * unit).conj().T)
    return observables
