from .model import (
    MS_SPEC, MeasurementModel, default_coupling, initial_state, product_index, product_state,
)
from .observables import (
    InterferenceObservable, interference_observable, commutator_norm,
    pointer_observable, system_observable, pointer_projector,
    observer_algebra, observer_full_algebra, ms_algebra, pointer_coherence_observables,
)
from .dynamics import (
    coupling_hamiltonian, liouville_evolve, initial_density,
    final_pure_state, final_mixed_state, individual_event_state,
    interference_expectation, observer_restricted_density,
    unbiasedness_residual, pointer_coherence_expectations,
)
