from __future__ import annotations

import enum
import math

import numpy as np

from ..errors import ContractError
from ..utils import require_finite
from .states import LinearOperator


class WaveplateKind(enum.Enum):
    HALF = "half"
    QUARTER = "quarter"

    @property
    def retardance(self) -> float:
        return math.pi if self is WaveplateKind.HALF else math.pi / 2.0


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def polarizer_bra(angle: float) -> np.ndarray:
    """Analyzer covector cos(angle)<x| + sin(angle)<y|."""
    angle = require_finite(angle, "analyzer angle")
    return np.array([math.cos(angle), math.sin(angle)], dtype=np.complex128)


def waveplate(kind: WaveplateKind | str, axis_angle: float) -> np.ndarray:
    # Retarder diag(1, e^{i delta}) in its own axes, conjugated by the axis rotation.
    kind = WaveplateKind(kind)
    axis_angle = require_finite(axis_angle, "waveplate axis")
    rot = rotation(axis_angle)
    retarder = np.diag([1.0, np.exp(1j * kind.retardance)])
    return rot @ retarder @ rot.T


def bra_after(bra: np.ndarray, unitary: np.ndarray | None) -> np.ndarray:
    """Covector seen by the incoming photon when `unitary` acts before the analyzer."""
    bra = np.asarray(bra, dtype=np.complex128)
    if unitary is None:
        return bra
    return bra @ np.asarray(unitary, dtype=np.complex128)


def _check_bra(bra: np.ndarray) -> np.ndarray:
    bra = np.asarray(bra, dtype=np.complex128).reshape(-1)
    if bra.shape != (2,):
        raise ContractError(f"single-photon bra must have 2 components, got {bra.shape[0]}")
    if abs(np.vdot(bra, bra).real - 1.0) > 1e-12:
        raise ContractError("single-photon bra is not unit norm")
    return bra


def lift_single_photon(matrix: np.ndarray, photon_index: int, n_photons: int) -> LinearOperator:
    if not 0 <= photon_index < n_photons:
        raise ContractError(f"photon index {photon_index} out of range for {n_photons} photons")
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (2, 2):
        raise ContractError(f"single-photon operator must be 2x2, got {matrix.shape}")
    left = np.eye(2**photon_index, dtype=np.complex128)
    right = np.eye(2 ** (n_photons - photon_index - 1), dtype=np.complex128)
    return LinearOperator(np.kron(np.kron(left, matrix), right))


def projector_on_photon(bra: np.ndarray, photon_index: int, n_photons: int) -> LinearOperator:
    bra = _check_bra(bra)
    ket = bra.conj()
    return lift_single_photon(np.outer(ket, bra), photon_index, n_photons)


def local_unitary(unitaries: list[np.ndarray | None]) -> LinearOperator:
    """Kronecker product of per-photon unitaries; ``None`` stands for identity."""
    total = np.ones((1, 1), dtype=np.complex128)
    for unitary in unitaries:
        factor = np.eye(2, dtype=np.complex128) if unitary is None else np.asarray(unitary)
        total = np.kron(total, factor)
    return LinearOperator(total)


__all__ = [
    "WaveplateKind",
    "bra_after",
    "lift_single_photon",
    "local_unitary",
    "polarizer_bra",
    "projector_on_photon",
    "rotation",
    "waveplate",
]
