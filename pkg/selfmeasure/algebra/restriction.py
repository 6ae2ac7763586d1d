"""Restriction of states to subalgebras and the Breuer indistinguishability check."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from selfmeasure.errors import AlgebraError
from selfmeasure.linalg import ComplexMatrix, as_matrix
from selfmeasure.linalg.tolerances import NORM_TOL
from selfmeasure.states import DensityState
from .operator_algebra import OperatorAlgebra

StateLike = Union[DensityState, ComplexMatrix]


@dataclass(frozen=True)
class Expectation:
    """Value of a restricted functional; ``in_domain`` is False outside the algebra."""

    value: complex
    in_domain: bool

    @property
    def real(self) -> float:
        return float(np.real(self.value))


OUT_OF_DOMAIN = Expectation(0j, False)


@dataclass(frozen=True, eq=False)
class RestrictedState:
    """A state known only through Tr(rho E_k) on an algebra basis."""

    algebra: OperatorAlgebra
    expectations: np.ndarray

    def expectation(self, op) -> Expectation:
        """<phi_R; A> for A in the span; OUT_OF_DOMAIN (value 0) otherwise."""
        if not self.algebra.contains(op):
            return OUT_OF_DOMAIN
        return Expectation(complex(self.algebra.coordinates(op) @ self.expectations), True)

    def density_projection(self) -> ComplexMatrix:
        """HS projection of the underlying (Hermitian) density onto the span."""
        return np.einsum("k,kij->ij", self.expectations.conj(), self.algebra.stacked)

    def normalization_residual(self) -> float:
        """|<phi_R; I> - 1|, or 0 for non-unital algebras."""
        if not self.algebra.unital:
            return 0.0
        return abs(self.expectation(np.eye(self.algebra.space_dim)).value - 1.0)


def _matrix(rho: StateLike) -> ComplexMatrix:
    return rho.matrix if isinstance(rho, DensityState) else as_matrix(rho)


def _expectations(m: ComplexMatrix, algebra: OperatorAlgebra) -> np.ndarray:
    if m.shape[0] != algebra.space_dim:
        raise AlgebraError(f"Dimension mismatch: state dim {m.shape[0]} vs algebra space_dim {algebra.space_dim}")
    if algebra.dimension == 0:
        return np.zeros(0, dtype=np.complex128)
    return np.einsum("ij,kji->k", m, algebra.stacked)


def restrict_state(rho: StateLike, algebra: OperatorAlgebra) -> RestrictedState:
    return RestrictedState(algebra, _expectations(_matrix(rho), algebra))


def breuer_indistinguishable(
    rho1: StateLike,
    rho2: StateLike,
    algebra: OperatorAlgebra,
    tol: float = NORM_TOL,
) -> bool:
    """True iff every basis expectation of rho1 - rho2 is below ``tol``."""
    m1, m2 = _matrix(rho1), _matrix(rho2)
    if m1.shape != m2.shape:
        raise AlgebraError(f"Dimension mismatch: {m1.shape} vs {m2.shape}")
    difference = _expectations(m1 - m2, algebra)
    return bool(difference.size == 0 or np.max(np.abs(difference)) < tol)
