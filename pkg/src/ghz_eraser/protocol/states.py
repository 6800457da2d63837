from __future__ import annotations

import enum
import math

import numpy as np

from ..core import PureState

_S = 1.0 / math.sqrt(2.0)


class Parity(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


def bell_state(parity: Parity | str) -> PureState:
    sign = 1.0 if Parity(parity) is Parity.PLUS else -1.0
    return PureState(np.array([_S, 0.0, 0.0, sign * _S], dtype=np.complex128))


def ghz_state() -> PureState:
    # Photon order A, B, H with |1>_H = |y>, |0>_H = |x>: (|x x y> + |y y x>) / sqrt(2)
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b001] = _S
    amps[0b110] = _S
    return PureState(amps)


def xi_states() -> tuple[PureState, PureState]:
    plus = PureState(np.array([_S, 0.0, 0.0, 1j * _S], dtype=np.complex128))
    minus = PureState(np.array([_S, 0.0, 0.0, -1j * _S], dtype=np.complex128))
    return plus, minus


def right_circular() -> PureState:
    return PureState(np.array([_S, -1j * _S], dtype=np.complex128))


def left_circular() -> PureState:
    return PureState(np.array([_S, 1j * _S], dtype=np.complex128))


def diagonal(sign: int = 1) -> PureState:
    return PureState(np.array([_S, math.copysign(_S, sign)], dtype=np.complex128))


def separable_mixture_states() -> list[tuple[float, PureState]]:
    """Components of the which-branch mixture 1/2(|xx><xx| + |yy><yy|)."""
    return [(0.5, PureState.basis("xx")), (0.5, PureState.basis("yy"))]


__all__ = [
    "Parity",
    "bell_state",
    "diagonal",
    "ghz_state",
    "left_circular",
    "right_circular",
    "separable_mixture_states",
    "xi_states",
]
