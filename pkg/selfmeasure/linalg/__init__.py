from .core import (
    ComplexMatrix, SpaceSpec, as_matrix, max_abs,
    hermiticity_residual, is_hermitian, unitarity_residual, is_unitary,
    tensor_product, tensor_all, partial_trace, hs_inner, hs_norm,
    hermitian_eig, unitary_from_hamiltonian, principal_log_unitary,
    gram_schmidt_hs, random_hermitian, random_density,
)
from . import tolerances
