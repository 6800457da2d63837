from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError, SizeError

MAX_PHOTONS = 4

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
PHASE_TOL = 1e-10

# bit 0 <-> |x>, bit 1 <-> |y>; photon 0 is the most significant bit
_BASIS_LABELS = {"x": 0, "y": 1, "0": 0, "1": 1, "h": 0, "v": 1}


def _photon_count(length: int, what: str) -> int:
    if length < 2 or length & (length - 1):
        raise ContractError(f"{what} length {length} is not a power of two >= 2")
    n_photons = length.bit_length() - 1
    if n_photons > MAX_PHOTONS:
        raise SizeError(f"{what} describes {n_photons} photons; at most {MAX_PHOTONS} supported")
    return n_photons


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, slots=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        _photon_count(amps.shape[0], "state")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[complex], normalize: bool = True) -> PureState:
        state = cls(np.asarray(list(amplitudes), dtype=np.complex128))
        return state.normalized() if normalize else state

    @classmethod
    def basis(cls, labels: str) -> PureState:
        """Product basis state from a label string such as ``"xxy"`` (photon 0 first)."""
        index = 0
        for label in labels.lower():
            if label not in _BASIS_LABELS:
                raise ContractError(f"unknown basis label {label!r} in {labels!r}")
            index = (index << 1) | _BASIS_LABELS[label]
        amps = np.zeros(2 ** len(labels), dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @property
    def n_photons(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= tol

    def normalized(self) -> PureState:
        norm = self.norm()
        if norm == 0.0:
            raise ContractError("cannot normalize the zero vector")
        return PureState(self.amplitudes / norm)

    def overlap(self, other: PureState) -> complex:
        """<self|other>."""
        if other.dim != self.dim:
            raise ContractError(f"overlap of {self.n_photons}- and {other.n_photons}-photon states")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def equals_up_to_phase(self, other: PureState, tol: float = PHASE_TOL) -> bool:
        if other.dim != self.dim:
            return False
        return abs(abs(self.overlap(other)) - 1.0) <= tol


def require_normalized(state: PureState, name: str = "state") -> None:
    if not state.is_normalized():
        raise ContractError(f"{name} is not normalized (norm^2 = {state.norm() ** 2:.15g})")


@dataclass(frozen=True, slots=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        entries = np.array(self.matrix, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ContractError(f"density matrix must be square, got shape {entries.shape}")
        _photon_count(entries.shape[0], "density matrix")
        if np.max(np.abs(entries - entries.conj().T)) > HERMITIAN_TOL:
            raise ContractError("density matrix is not Hermitian")
        trace = np.trace(entries).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise ContractError(f"density matrix trace is {trace:.15g}, expected 1")
        min_eig = float(np.min(np.linalg.eigvalsh(entries)))
        if min_eig < -PSD_TOL:
            raise ContractError(f"density matrix has negative eigenvalue {min_eig:.3e}")
        object.__setattr__(self, "matrix", _frozen(entries))

    @classmethod
    def mixture(cls, weighted_states: Sequence[tuple[float, PureState]]) -> DensityMatrix:
        if not weighted_states:
            raise ContractError("mixture needs at least one component")
        dim = weighted_states[0][1].dim
        total = np.zeros((dim, dim), dtype=np.complex128)
        for weight, state in weighted_states:
            if state.dim != dim:
                raise ContractError("mixture components differ in photon count")
            require_normalized(state, "mixture component")
            total += weight * np.outer(state.amplitudes, state.amplitudes.conj())
        return cls(total)

    @property
    def n_photons(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True, slots=True, eq=False)
class LinearOperator:
    matrix: np.ndarray

    def __post_init__(self):
        entries = np.array(self.matrix, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ContractError(f"operator must be square, got shape {entries.shape}")
        _photon_count(entries.shape[0], "operator")
        object.__setattr__(self, "matrix", _frozen(entries))

    @classmethod
    def identity(cls, n_photons: int) -> LinearOperator:
        return cls(np.eye(2**n_photons, dtype=np.complex128))

    @classmethod
    def zero(cls, n_photons: int) -> LinearOperator:
        return cls(np.zeros((2**n_photons, 2**n_photons), dtype=np.complex128))

    @property
    def n_photons(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> LinearOperator:
        return LinearOperator(self.matrix.conj().T)

    def is_projector(self, tol: float = 1e-10) -> bool:
        m = self.matrix
        hermitian = np.max(np.abs(m - m.conj().T)) <= tol
        idempotent = np.max(np.abs(m @ m - m)) <= tol
        return bool(hermitian and idempotent)

    def is_unitary(self, tol: float = 1e-12) -> bool:
        m = self.matrix
        return bool(np.max(np.abs(m.conj().T @ m - np.eye(self.dim))) <= tol)

    def __matmul__(self, other: LinearOperator) -> LinearOperator:
        if not isinstance(other, LinearOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise ContractError("operator dimensions do not match")
        return LinearOperator(self.matrix @ other.matrix)


def tensor(a: PureState, b: PureState) -> PureState:
    combined = a.n_photons + b.n_photons
    if combined > MAX_PHOTONS:
        raise SizeError(f"tensor product of {combined} photons exceeds {MAX_PHOTONS}")
    require_normalized(a, "left factor")
    require_normalized(b, "right factor")
    return PureState(np.kron(a.amplitudes, b.amplitudes))


def tensor_all(states: Sequence[PureState]) -> PureState:
    if not states:
        raise ContractError("tensor product of no states")
    result = states[0]
    for state in states[1:]:
        result = tensor(result, state)
    return result


def pure_to_density(s: PureState) -> DensityMatrix:
    require_normalized(s)
    return DensityMatrix(np.outer(s.amplitudes, s.amplitudes.conj()))


def single_photon(x_amplitude: complex, y_amplitude: complex) -> PureState:
    return PureState.from_amplitudes([x_amplitude, y_amplitude])


__all__ = [
    "DensityMatrix",
    "HERMITIAN_TOL",
    "LinearOperator",
    "MAX_PHOTONS",
    "NORM_TOL",
    "PHASE_TOL",
    "PSD_TOL",
    "PureState",
    "TRACE_TOL",
    "pure_to_density",
    "require_normalized",
    "single_photon",
    "tensor",
    "tensor_all",
]
