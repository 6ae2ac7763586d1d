"""Classical (Segal) picture of commutative subalgebras.

A commutative unital *-subalgebra of M_d is spanned by its minimal projections
P_k. A restricted state on it is the probability vector <phi; P_k>, and its
extremal points are the point masses on a single P_k.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from selfmeasure.errors import AlgebraError
from selfmeasure.linalg import ComplexMatrix, as_matrix, hermitian_eig
from selfmeasure.linalg.tolerances import CLOSURE_TOL, CLUSTER_TOL
from .operator_algebra import OperatorAlgebra
from .restriction import RestrictedState

logger = logging.getLogger(__name__)

PROBABILITY_FLOOR = -1e-10
PROBABILITY_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ClassicalOutcome:
    value: float
    probability: float
    projector: ComplexMatrix


@dataclass(frozen=True, eq=False)
class ClassicalDistribution:
    outcomes: Tuple[ClassicalOutcome, ...]

    def __post_init__(self):
        probabilities = self.probabilities
        if np.any(probabilities < PROBABILITY_FLOOR):
            raise AlgebraError(f"Negative outcome probability {probabilities.min():.3e}")
        if abs(probabilities.sum() - 1.0) > PROBABILITY_SUM_TOL:
            raise AlgebraError(f"Outcome probabilities sum to {probabilities.sum():.12g}")

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([o.probability for o in self.outcomes])

    @property
    def values(self) -> np.ndarray:
        return np.array([o.value for o in self.outcomes])

    def mean(self) -> float:
        return float(self.probabilities @ self.values)


def _clusters(values: np.ndarray) -> List[np.ndarray]:
    """Group ascending eigenvalues whose neighbours differ by at most CLUSTER_TOL."""
    groups, start = [], 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > CLUSTER_TOL:
            groups.append(np.arange(start, k))
            start = k
    return groups


def _hermitian_parts(algebra: OperatorAlgebra) -> List[ComplexMatrix]:
    parts = []
    for e in algebra.basis:
        for h in ((e + e.conj().T) / 2, (e - e.conj().T) / 2j):
            if np.linalg.norm(h) > CLOSURE_TOL:
                parts.append(h)
    return parts


def minimal_projections(algebra: OperatorAlgebra) -> List[ComplexMatrix]:
    """Joint eigenspace projectors of a commutative unital algebra."""
    if not algebra.commutative:
        raise AlgebraError("Minimal projections need a commutative algebra")
    if not algebra.unital:
        raise AlgebraError("Minimal projections need a unital algebra")

    subspaces = [np.eye(algebra.space_dim, dtype=np.complex128)]
    for h in _hermitian_parts(algebra):
        refined = []
        for v in subspaces:
            compressed = v.conj().T @ h @ v
            values, vectors = hermitian_eig(compressed)
            for group in _clusters(values):
                refined.append(v @ vectors[:, group])
        subspaces = refined

    projectors = [v @ v.conj().T for v in subspaces]
    # Deterministic order: by the first basis index each projector touches.
    projectors.sort(key=lambda p: int(np.argmax(np.abs(np.diag(p)) > CLOSURE_TOL)))
    if len(projectors) != algebra.dimension:
        logger.warning(
            "found %d minimal projections for a %d-dimensional commutative algebra",
            len(projectors), algebra.dimension,
        )
    return projectors


def classical_state(restricted: RestrictedState, value_observable) -> ClassicalDistribution:
    """Probability mass of a restricted state on the algebra's minimal projections."""
    algebra = restricted.algebra
    q = as_matrix(value_observable)
    residual = algebra.residual(q)
    if residual >= CLOSURE_TOL:
        raise AlgebraError(f"Value observable lies outside the algebra span (residual {residual:.3e})")

    outcomes = []
    for p in minimal_projections(algebra):
        probability = restricted.expectation(p).real
        value = float(np.real(np.trace(q @ p) / np.trace(p)))
        outcomes.append(ClassicalOutcome(value, probability, p))
    outcomes.sort(key=lambda o: o.value)
    return ClassicalDistribution(tuple(outcomes))


def is_extremal(dist: ClassicalDistribution, tol: float = 1e-9) -> bool:
    """Point mass, i.e. an algebraic individual state."""
    return int(np.count_nonzero(dist.probabilities > tol)) == 1


def point_mass(dist: ClassicalDistribution, index: int) -> ClassicalDistribution:
    """The individual state concentrated on outcome ``index``."""
    return ClassicalDistribution(tuple(
        ClassicalOutcome(o.value, 1.0 if k == index else 0.0, o.projector)
        for k, o in enumerate(dist.outcomes)
    ))


def decompose(dist: ClassicalDistribution, tol: float = 1e-10) -> List[Tuple[ClassicalDistribution, float]]:
    """Unique convex decomposition into point masses with nonzero weight."""
    return [
        (point_mass(dist, k), float(p))
        for k, p in enumerate(dist.probabilities)
        if p > tol
    ]
