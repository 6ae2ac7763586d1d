from .rng import CounterRNG, BLOCK_SIZE
from .engine import (
    EventRecord, RunStatistics, DistributionTestReport, FOUR_SIGMA_ALPHA,
    sample_event, draw_branches, iter_events, statistics_from_branches, run_ensemble,
    empirical_gemenge, eta_trajectory, distribution_test,
    sample_mixed_event, individual_breuer_gap,
)
from .export import write_event_log, write_eta_table, statistics_to_document, distribution_report_to_document
