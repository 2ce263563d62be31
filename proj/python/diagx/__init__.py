"""Diagonalizability diagnostics for real matrices and IO share tables.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public surface.
"""

from ._core import (
    BoundReport,
    ClusterEvidence,
    Eigenbasis,
    Error,
    Evidence,
    Fixture,
    IOTable,
    Mode,
    Normalization,
    Outcome,
    PruneResult,
    RankReport,
    Reason,
    ResolvedPolicy,
    ShareMatrix,
    SimulationResult,
    TableReport,
    Threshold,
    TolerancePolicy,
    Verdict,
    WarningReport,
    classify_full,
    classify_two_step,
    det_check_warning,
    eigendecompose,
    eigenvalues,
    expenditure_share,
    generate_fixture,
    half_life,
    necessary_check,
    numerical_rank,
    parse_io_table,
    prune_disconnected,
    read_io_table,
    simulate_shock,
    sufficient_check,
    table_report,
    zero_rank_bound,
)

__all__ = [
    "BoundReport",
    "ClusterEvidence",
    "Eigenbasis",
    "Error",
    "Evidence",
    "Fixture",
    "IOTable",
    "Mode",
    "Normalization",
    "Outcome",
    "PruneResult",
    "RankReport",
    "Reason",
    "ResolvedPolicy",
    "ShareMatrix",
    "SimulationResult",
    "TableReport",
    "Threshold",
    "TolerancePolicy",
    "Verdict",
    "WarningReport",
    "classify_full",
    "classify_two_step",
    "det_check_warning",
    "eigendecompose",
    "eigenvalues",
    "expenditure_share",
    "generate_fixture",
    "half_life",
    "necessary_check",
    "numerical_rank",
    "parse_io_table",
    "prune_disconnected",
    "read_io_table",
    "simulate_shock",
    "sufficient_check",
    "table_report",
    "zero_rank_bound",
]

__version__ = "0.1.0"
