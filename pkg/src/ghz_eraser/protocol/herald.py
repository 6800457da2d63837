from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ..core import (
    PureState,
    WaveplateKind,
    bra_after,
    measure_photon,
    polarizer_bra,
    waveplate,
)
from ..errors import ContractError
from ..utils import require_finite

HERALD_INDEX = 2


class HeraldPort(enum.Enum):
    PLUS = "plus"  # transmitted, H+
    MINUS = "minus"  # reflected, H-

    @property
    def label(self) -> str:
        return "H+" if self is HeraldPort.PLUS else "H-"


@dataclass(frozen=True, slots=True)
class DirectHerald:
    @property
    def label(self) -> str:
        return "direct"


@dataclass(frozen=True, slots=True)
class LinearPolarizerHerald:
    gamma: float

    def __post_init__(self):
        require_finite(self.gamma, "gamma")

    @property
    def label(self) -> str:
        return "linear"


@dataclass(frozen=True, slots=True)
class QuarterWaveHerald:
    qwp_axis: float
    gamma: float

    def __post_init__(self):
        require_finite(self.qwp_axis, "herald quarter-wave axis")
        require_finite(self.gamma, "gamma")

    @property
    def label(self) -> str:
        return "circular"


HeraldStrategy = DirectHerald | LinearPolarizerHerald | QuarterWaveHerald

PORTS: tuple[HeraldPort, HeraldPort] = (HeraldPort.PLUS, HeraldPort.MINUS)


def port_bra(strategy: HeraldStrategy, port: HeraldPort) -> np.ndarray:
    if isinstance(strategy, DirectHerald):
        raise ContractError("direct herald detection has no polarization port")
    angle = strategy.gamma if port is HeraldPort.PLUS else strategy.gamma + math.pi / 2.0
    bra = polarizer_bra(angle)
    if isinstance(strategy, QuarterWaveHerald):
        bra = bra_after(bra, waveplate(WaveplateKind.QUARTER, strategy.qwp_axis))
    return bra


def herald_outcome(
    state: PureState, strategy: HeraldStrategy, port: HeraldPort
) -> tuple[PureState, float]:
    if state.n_photons != 3:
        raise ContractError(f"herald_outcome needs a 3-photon state, got {state.n_photons}")
    if isinstance(strategy, DirectHerald):
        raise ContractError(
            "direct detection has no port-resolved pure state; use unconditioned_ab_density"
        )
    return measure_photon(state, port_bra(strategy, port), HERALD_INDEX)


__all__ = [
    "HERALD_INDEX",
    "PORTS",
    "DirectHerald",
    "HeraldPort",
    "HeraldStrategy",
    "LinearPolarizerHerald",
    "QuarterWaveHerald",
    "herald_outcome",
    "port_bra",
]
