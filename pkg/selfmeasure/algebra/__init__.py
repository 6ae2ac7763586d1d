from .operator_algebra import OperatorAlgebra, generate_algebra, full_matrix_algebra, algebra_to_document
from .restriction import Expectation, OUT_OF_DOMAIN, RestrictedState, restrict_state, breuer_indistinguishable
from .classical import (
    ClassicalOutcome, ClassicalDistribution,
    minimal_projections, classical_state, is_extremal, point_mass, decompose,
)
