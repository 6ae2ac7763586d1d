from .states import (
    PureState, DensityState, GemengeState, DoubletState, StatisticalDoublet,
    DensityReport, pointer_weights,
    density_from_pure, mix, validate_density, state_distance, purity,
)
from .serialize import (
    complex_to_pair, pair_to_complex, vector_to_pairs, matrix_to_pairs, pairs_to_matrix,
    state_to_document, state_from_document,
)
