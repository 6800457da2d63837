from .bell import (
    STANDARD_SETTINGS,
    TSIRELSON_BOUND,
    ChshResult,
    ChshSettings,
    chsh_value,
    correlation_E,
    maximize_chsh,
)
from .entanglement import as_density, concurrence, fidelity
from .sweeps import ConcurrencePoint, herald_concurrence_sweep
from .tomography import (
    ALL_PAIRS,
    BasisPair,
    TomographyBasis,
    TomographySettings,
    TomographyTable,
    reconstruct_density,
    simulate_tomography_probabilities,
)

__all__ = [
    "ALL_PAIRS",
    "STANDARD_SETTINGS",
    "TSIRELSON_BOUND",
    "BasisPair",
    "ChshResult",
    "ChshSettings",
    "ConcurrencePoint",
    "TomographyBasis",
    "TomographySettings",
    "TomographyTable",
    "as_density",
    "chsh_value",
    "concurrence",
    "correlation_E",
    "fidelity",
    "herald_concurrence_sweep",
    "maximize_chsh",
    "reconstruct_density",
    "simulate_tomography_probabilities",
]
