from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from ..core import PureState
from ..protocol import PORTS, HeraldPort, LinearPolarizerHerald, ghz_state, herald_outcome
from .entanglement import concurrence


@dataclass(frozen=True, slots=True)
class ConcurrencePoint:
    gamma: float
    port: HeraldPort
    probability: float
    concurrence: float


def herald_concurrence_sweep(
    gammas: Iterable[float], state: PureState | None = None
) -> list[ConcurrencePoint]:
    """Concurrence of the A,B pair heralded at each port of a linear polarizer at gamma."""
    state = state or ghz_state()
    points: list[ConcurrencePoint] = []
    for gamma in gammas:
        strategy = LinearPolarizerHerald(gamma)
        for port in PORTS:
            conditional, probability = herald_outcome(state, strategy, port)
            points.append(ConcurrencePoint(gamma, port, probability, concurrence(conditional)))
    return points


__all__ = ["ConcurrencePoint", "herald_concurrence_sweep"]
