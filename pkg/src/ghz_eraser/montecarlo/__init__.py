from .estimators import estimate_chsh, estimate_coincidence_prob, estimate_correlation
from .sampling import (
    BLOCK_SIZE,
    CellKey,
    CountsTable,
    RunSpec,
    block_generator,
    chsh_specs,
    sample_run,
)
from .tomography import HeraldedSource, exact_tomography_table, sample_tomography

__all__ = [
    "BLOCK_SIZE",
    "CellKey",
    "CountsTable",
    "HeraldedSource",
    "RunSpec",
    "block_generator",
    "chsh_specs",
    "estimate_chsh",
    "estimate_coincidence_prob",
    "estimate_correlation",
    "exact_tomography_table",
    "sample_run",
    "sample_tomography",
]
