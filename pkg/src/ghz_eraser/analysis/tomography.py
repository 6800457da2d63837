from __future__ import annotations

import enum
import itertools
import logging
import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from ..core import DensityMatrix, PureState
from ..errors import ContractError, IncompleteSettingsError, InconsistentTableError
from .entanglement import as_density

logger = logging.getLogger(__name__)

EXACT_CLIP_TOL = 1e-6
SUM_TOL = 1e-6

_S = 1.0 / math.sqrt(2.0)


class TomographyBasis(enum.Enum):
    LINEAR = "hv"  # x, y
    DIAGONAL = "da"  # +45, -45
    CIRCULAR = "rl"  # R, L

    def kets(self) -> tuple[np.ndarray, np.ndarray]:
        if self is TomographyBasis.LINEAR:
            first, second = [1.0, 0.0], [0.0, 1.0]
        elif self is TomographyBasis.DIAGONAL:
            first, second = [_S, _S], [_S, -_S]
        else:
            first, second = [_S, -1j * _S], [_S, 1j * _S]
        return np.array(first, dtype=np.complex128), np.array(second, dtype=np.complex128)

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        first, second = self.kets()
        return np.outer(first, first.conj()), np.outer(second, second.conj())


BasisPair = tuple[TomographyBasis, TomographyBasis]

ALL_PAIRS: tuple[BasisPair, ...] = tuple(itertools.product(TomographyBasis, TomographyBasis))


@dataclass(frozen=True, slots=True)
class TomographySettings:
    pairs: tuple[BasisPair, ...] = ALL_PAIRS

    def __post_init__(self):
        pairs = tuple((TomographyBasis(a), TomographyBasis(b)) for a, b in self.pairs)
        if len(set(pairs)) != len(pairs):
            raise ContractError("tomography settings list a basis pair twice")
        object.__setattr__(self, "pairs", pairs)

    def require_complete(self) -> None:
        missing = [pair for pair in ALL_PAIRS if pair not in self.pairs]
        if missing:
            names = ", ".join(f"{a.value}/{b.value}" for a, b in missing)
            raise IncompleteSettingsError(f"tomography settings are missing basis pairs: {names}")


@dataclass(frozen=True, slots=True)
class TomographyTable:
    """Outcome probabilities per basis pair; `n_min` is None for exact tables."""

    probabilities: Mapping[BasisPair, np.ndarray]
    n_min: int | None = None
    settings: TomographySettings = field(default_factory=TomographySettings)

    @classmethod
    def from_counts(cls, counts: Mapping[BasisPair, np.ndarray]) -> TomographyTable:
        probabilities: dict[BasisPair, np.ndarray] = {}
        totals: list[int] = []
        for pair, cell in counts.items():
            cell = np.asarray(cell, dtype=np.int64).reshape(2, 2)
            if np.any(cell < 0):
                raise InconsistentTableError(f"negative counts for basis pair {_pair_name(pair)}")
            total = int(cell.sum())
            if total == 0:
                raise InconsistentTableError(f"no counts for basis pair {_pair_name(pair)}")
            totals.append(total)
            probabilities[pair] = cell / total
        settings = TomographySettings(tuple(probabilities))
        return cls(probabilities, n_min=min(totals) if totals else None, settings=settings)

    @property
    def clip_tolerance(self) -> float:
        if self.n_min is None:
            return EXACT_CLIP_TOL
        return max(EXACT_CLIP_TOL, 10.0 / math.sqrt(self.n_min))


def _pair_name(pair: BasisPair) -> str:
    return f"{pair[0].value}/{pair[1].value}"


def simulate_tomography_probabilities(
    rho: PureState | DensityMatrix, settings: TomographySettings | None = None
) -> TomographyTable:
    settings = settings or TomographySettings()
    settings.require_complete()
    rho = as_density(rho)
    if rho.n_photons != 2:
        raise ContractError(f"tomography needs a 2-photon state, got {rho.n_photons}")

    probabilities: dict[BasisPair, np.ndarray] = {}
    for pair in settings.pairs:
        cell = np.empty((2, 2))
        for i, proj_a in enumerate(pair[0].projectors()):
            for j, proj_b in enumerate(pair[1].projectors()):
                value = float(np.trace(rho.matrix @ np.kron(proj_a, proj_b)).real)
                cell[i, j] = min(1.0, max(0.0, value))
        probabilities[pair] = cell
    return TomographyTable(probabilities, settings=settings)


def _measurement_rows(pairs: Iterable[BasisPair]) -> np.ndarray:
    # Tr(rho P) = sum_ij rho_ij conj(P_ij) for Hermitian P.
    rows = []
    for pair in pairs:
        for proj_a in pair[0].projectors():
            for proj_b in pair[1].projectors():
                rows.append(np.kron(proj_a, proj_b).conj().ravel())
    return np.array(rows)


def reconstruct_density(
    table: TomographyTable, warn: Callable[[str], None] | None = None
) -> DensityMatrix:
    """Linear-inversion estimate; small negative eigenvalues are clipped."""
    settings = table.settings
    settings.require_complete()
    for pair in settings.pairs:
        if pair not in table.probabilities:
            raise IncompleteSettingsError(f"no probabilities for basis pair {_pair_name(pair)}")
        total = float(np.sum(table.probabilities[pair]))
        if abs(total - 1.0) > SUM_TOL:
            raise InconsistentTableError(
                f"probabilities for basis pair {_pair_name(pair)} sum to {total:.9g}"
            )

    pairs = ALL_PAIRS
    design = _measurement_rows(pairs)
    observed = np.concatenate(
        [np.asarray(table.probabilities[pair], dtype=float).reshape(4) for pair in pairs]
    )
    estimate = (np.linalg.pinv(design) @ observed).reshape(4, 4)
    estimate = 0.5 * (estimate + estimate.conj().T)
    estimate /= np.trace(estimate).real

    weights, vectors = np.linalg.eigh(estimate)
    min_weight = float(weights.min())
    tolerance = table.clip_tolerance
    if min_weight < -tolerance:
        raise ContractError(
            f"reconstructed matrix has eigenvalue {min_weight:.3e} below -{tolerance:.3e}"
        )
    if min_weight < 0.0:
        if min_weight < -1e-12:
            message = f"clipped negative eigenvalue {min_weight:.3e} from reconstruction"
            logger.info(message)
            if warn is not None:
                warn(message)
        weights = np.clip(weights, 0.0, None)
        weights /= weights.sum()
        estimate = (vectors * weights) @ vectors.conj().T
        estimate = 0.5 * (estimate + estimate.conj().T)
    return DensityMatrix(estimate)


__all__ = [
    "ALL_PAIRS",
    "EXACT_CLIP_TOL",
    "BasisPair",
    "TomographyBasis",
    "TomographySettings",
    "TomographyTable",
    "reconstruct_density",
    "simulate_tomography_probabilities",
]
