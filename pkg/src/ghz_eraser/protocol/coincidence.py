from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ..core import (
    IMPOSSIBLE_PROBABILITY,
    DensityMatrix,
    LinearOperator,
    PureState,
    WaveplateKind,
    born_probability,
    bra_after,
    density_probability,
    partial_trace,
    polarizer_bra,
    projector_on_photon,
    pure_to_density,
    waveplate,
)
from ..errors import ContractError, ImpossibleOutcomeError
from ..utils import require_finite
from .herald import (
    HERALD_INDEX,
    PORTS,
    DirectHerald,
    HeraldPort,
    HeraldStrategy,
    herald_outcome,
    port_bra,
)


class Outcome(enum.Enum):
    PLUS = "+"  # transmitted by the analyzer
    MINUS = "-"  # reflected, analyzer angle + pi/2


OUTCOMES: tuple[Outcome, Outcome] = (Outcome.PLUS, Outcome.MINUS)


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    alpha: float
    beta: float
    qwp_a: float | None = None
    qwp_b: float | None = None
    herald: HeraldStrategy = field(default_factory=DirectHerald)

    def __post_init__(self):
        require_finite(self.alpha, "alpha")
        require_finite(self.beta, "beta")
        if self.qwp_a is not None:
            require_finite(self.qwp_a, "qwp_a")
        if self.qwp_b is not None:
            require_finite(self.qwp_b, "qwp_b")


def analyzer_bra(angle: float, outcome: Outcome, qwp_axis: float | None = None) -> np.ndarray:
    if outcome is Outcome.MINUS:
        angle = angle + math.pi / 2.0
    unitary = None if qwp_axis is None else waveplate(WaveplateKind.QUARTER, qwp_axis)
    return bra_after(polarizer_bra(angle), unitary)


def _analyzer_projector(
    config: ExperimentConfig, outcome_a: Outcome, outcome_b: Outcome, n_photons: int
) -> LinearOperator:
    proj_a = projector_on_photon(analyzer_bra(config.alpha, outcome_a, config.qwp_a), 0, n_photons)
    proj_b = projector_on_photon(analyzer_bra(config.beta, outcome_b, config.qwp_b), 1, n_photons)
    return proj_a @ proj_b


def _probability(state: PureState | DensityMatrix, projector: LinearOperator) -> float:
    if isinstance(state, PureState):
        return born_probability(state, projector)
    return density_probability(state, projector)


def unconditioned_ab_density(ghz: PureState | DensityMatrix) -> DensityMatrix:
    if ghz.n_photons != 3:
        raise ContractError(f"expected a 3-photon state, got {ghz.n_photons}")
    rho = pure_to_density(ghz) if isinstance(ghz, PureState) else ghz
    return partial_trace(rho, {0, 1})


def coincidence_probability(
    state: PureState | DensityMatrix,
    config: ExperimentConfig,
    port: HeraldPort | None = None,
    outcome_a: Outcome = Outcome.PLUS,
    outcome_b: Outcome = Outcome.PLUS,
) -> float:
    """Born probability of the (A, B) outcome, conditioned on `port` for a polarizer herald."""
    n_photons = state.n_photons
    if n_photons == 2:
        return _probability(state, _analyzer_projector(config, outcome_a, outcome_b, 2))
    if n_photons != 3:
        raise ContractError(f"coincidence needs 2 or 3 photons, got {n_photons}")

    if isinstance(config.herald, DirectHerald):
        reduced = unconditioned_ab_density(state)
        return density_probability(reduced, _analyzer_projector(config, outcome_a, outcome_b, 2))
    if port is None:
        raise ContractError(f"{config.herald.label} herald needs a port to condition on")

    if isinstance(state, PureState):
        conditional, _ = herald_outcome(state, config.herald, port)
        return born_probability(conditional, _analyzer_projector(config, outcome_a, outcome_b, 2))

    herald_proj = projector_on_photon(port_bra(config.herald, port), HERALD_INDEX, 3)
    p_port = density_probability(state, herald_proj)
    if p_port < IMPOSSIBLE_PROBABILITY:
        raise ImpossibleOutcomeError(f"herald port {port.value} has probability {p_port:.3e}")
    joint = _analyzer_projector(config, outcome_a, outcome_b, 3) @ herald_proj
    return min(1.0, density_probability(state, joint) / p_port)


def joint_outcome_probabilities(
    state: PureState | DensityMatrix, config: ExperimentConfig
) -> tuple[tuple[HeraldPort | None, ...], np.ndarray]:
    """Exact probabilities of every (port, A, B) outcome; index 0 is always '+'."""
    n_photons = state.n_photons
    if n_photons == 2 or (n_photons == 3 and isinstance(config.herald, DirectHerald)):
        reduced = state if n_photons == 2 else unconditioned_ab_density(state)
        table = np.empty((1, 2, 2))
        for i, out_a in enumerate(OUTCOMES):
            for j, out_b in enumerate(OUTCOMES):
                table[0, i, j] = _probability(reduced, _analyzer_projector(config, out_a, out_b, 2))
        return (None,), table
    if n_photons != 3:
        raise ContractError(f"joint outcomes need 2 or 3 photons, got {n_photons}")

    table = np.empty((2, 2, 2))
    for k, port in enumerate(PORTS):
        herald_proj = projector_on_photon(port_bra(config.herald, port), HERALD_INDEX, 3)
        for i, out_a in enumerate(OUTCOMES):
            for j, out_b in enumerate(OUTCOMES):
                joint = _analyzer_projector(config, out_a, out_b, 3) @ herald_proj
                table[k, i, j] = _probability(state, joint)
    return PORTS, table


def phi_plus_closed_form(alpha: float, beta: float) -> float:
    return 0.5 * math.cos(alpha - beta) ** 2


def mixture_closed_form(alpha: float, beta: float) -> float:
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    return 0.5 * (ca * ca * cb * cb + sa * sa * sb * sb)


def bell_average_closed_form(alpha: float, beta: float) -> float:
    return 0.5 * (0.5 * math.cos(alpha - beta) ** 2 + 0.5 * math.cos(alpha + beta) ** 2)


__all__ = [
    "OUTCOMES",
    "ExperimentConfig",
    "Outcome",
    "analyzer_bra",
    "bell_average_closed_form",
    "coincidence_probability",
    "joint_outcome_probabilities",
    "mixture_closed_form",
    "phi_plus_closed_form",
    "unconditioned_ab_density",
]
