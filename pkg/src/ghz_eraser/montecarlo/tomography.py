from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..analysis import (
    ALL_PAIRS,
    BasisPair,
    TomographyBasis,
    TomographySettings,
    TomographyTable,
)
from ..core import DensityMatrix, PureState
from ..errors import ContractError
from ..protocol import (
    DirectHerald,
    ExperimentConfig,
    HeraldPort,
    HeraldStrategy,
    joint_outcome_probabilities,
)
from .sampling import RunSpec, sample_run

logger = logging.getLogger(__name__)

# Analyzer angle and optional quarter-wave axis whose '+' port selects the basis'
# first ket: x, +45 and R respectively.
_ANALYZER: dict[TomographyBasis, tuple[float, float | None]] = {
    TomographyBasis.LINEAR: (0.0, None),
    TomographyBasis.DIAGONAL: (math.pi / 4.0, None),
    TomographyBasis.CIRCULAR: (math.pi / 2.0, math.pi / 4.0),
}


@dataclass(frozen=True, slots=True)
class HeraldedSource:
    """A,B pairs from `state`, kept when the herald fires at `port`."""

    state: PureState | DensityMatrix
    herald: HeraldStrategy = field(default_factory=DirectHerald)
    port: HeraldPort | None = None

    def __post_init__(self):
        n_photons = self.state.n_photons
        if n_photons not in (2, 3):
            raise ContractError(f"tomography source needs 2 or 3 photons, got {n_photons}")
        if n_photons == 3 and not isinstance(self.herald, DirectHerald) and self.port is None:
            raise ContractError(f"{self.herald.label} herald source needs a port")

    @property
    def conditioning_port(self) -> HeraldPort | None:
        if self.state.n_photons == 2 or isinstance(self.herald, DirectHerald):
            return None
        return self.port

    def config_for(self, pair: BasisPair) -> ExperimentConfig:
        alpha, qwp_a = _ANALYZER[pair[0]]
        beta, qwp_b = _ANALYZER[pair[1]]
        return ExperimentConfig(alpha, beta, qwp_a=qwp_a, qwp_b=qwp_b, herald=self.herald)


def exact_tomography_table(
    source: HeraldedSource, settings: TomographySettings | None = None
) -> TomographyTable:
    """Exact conditional outcome probabilities, the infinite-count limit of `sample_tomography`."""
    settings = settings or TomographySettings()
    settings.require_complete()
    port = source.conditioning_port
    probabilities: dict[BasisPair, np.ndarray] = {}
    for pair in settings.pairs:
        ports, table = joint_outcome_probabilities(source.state, source.config_for(pair))
        cell = table[ports.index(port)]
        probabilities[pair] = cell / cell.sum()
    return TomographyTable(probabilities, settings=settings)


def sample_tomography(
    source: HeraldedSource,
    n_per_setting: int,
    seed: int,
    settings: TomographySettings | None = None,
    efficiencies: tuple[float, float, float] = (1.0, 1.0, 1.0),
    workers: int = 1,
    progress: bool = False,
) -> TomographyTable:
    """Sample each basis pair on its own stream and return detected frequencies."""
    settings = settings or TomographySettings()
    settings.require_complete()
    port = source.conditioning_port
    eta_a, eta_b, eta_h = efficiencies
    counts: dict[BasisPair, np.ndarray] = {}
    for pair in settings.pairs:
        spec = RunSpec(
            source.config_for(pair),
            n_per_setting,
            efficiency_a=eta_a,
            efficiency_b=eta_b,
            efficiency_h=eta_h,
            seed=seed,
            stream=ALL_PAIRS.index(pair),
            state=source.state,
        )
        counts[pair] = sample_run(spec, workers=workers, progress=progress).cell(port)
        logger.debug(
            "tomography %s/%s: %d counts", pair[0].value, pair[1].value, counts[pair].sum()
        )
    return TomographyTable.from_counts(counts)


__all__ = ["HeraldedSource", "exact_tomography_table", "sample_tomography"]
