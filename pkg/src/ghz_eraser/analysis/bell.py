from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..core import DensityMatrix, PureState, WaveplateKind, waveplate
from ..errors import ContractError
from ..protocol import OUTCOMES, ExperimentConfig, coincidence_probability
from ..utils import rad, require_finite
from .entanglement import as_density

logger = logging.getLogger(__name__)

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
DEFAULT_GRID_STEP = rad(1.0)
DEFAULT_REFINE_STEP = rad(0.01)


@dataclass(frozen=True, slots=True)
class ChshSettings:
    a: float
    a_prime: float
    b: float
    b_prime: float

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            require_finite(getattr(self, name), name)


STANDARD_SETTINGS = ChshSettings(0.0, math.pi / 4.0, math.pi / 8.0, 3.0 * math.pi / 8.0)


@dataclass(frozen=True, slots=True)
class ChshResult:
    value: float
    settings: ChshSettings


def _require_two_photons(state: PureState | DensityMatrix) -> None:
    if state.n_photons != 2:
        raise ContractError(f"CHSH analysis needs a 2-photon state, got {state.n_photons}")


def correlation_E(
    state: PureState | DensityMatrix,
    alpha: float,
    beta: float,
    *,
    qwp_a: float | None = None,
    qwp_b: float | None = None,
) -> float:
    """E = P++ + P-- - P+- - P-+ from four Born probabilities."""
    _require_two_photons(state)
    config = ExperimentConfig(alpha, beta, qwp_a=qwp_a, qwp_b=qwp_b)
    total = 0.0
    for out_a in OUTCOMES:
        for out_b in OUTCOMES:
            sign = 1.0 if out_a is out_b else -1.0
            total += sign * coincidence_probability(state, config, outcome_a=out_a, outcome_b=out_b)
    return max(-1.0, min(1.0, total))


def chsh_value(
    state: PureState | DensityMatrix,
    settings: ChshSettings,
    *,
    qwp_a: float | None = None,
    qwp_b: float | None = None,
) -> float:
    def e(alpha: float, beta: float) -> float:
        return correlation_E(state, alpha, beta, qwp_a=qwp_a, qwp_b=qwp_b)

    a, ap, b, bp = settings.a, settings.a_prime, settings.b, settings.b_prime
    return abs(e(a, b) - e(a, bp) + e(ap, b) + e(ap, bp))


def _observable_pair(qwp_axis: float | None) -> tuple[np.ndarray, np.ndarray]:
    # Analyzer observable at angle t is cos(2t) Z + sin(2t) X, seen through the plate.
    z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    if qwp_axis is None:
        return z, x
    plate = waveplate(WaveplateKind.QUARTER, qwp_axis)
    return plate.conj().T @ z @ plate, plate.conj().T @ x @ plate


def _correlation_tensor(
    rho: DensityMatrix, qwp_a: float | None, qwp_b: float | None
) -> np.ndarray:
    ops_a = _observable_pair(qwp_a)
    ops_b = _observable_pair(qwp_b)
    tensor = np.empty((2, 2))
    for i, op_a in enumerate(ops_a):
        for j, op_b in enumerate(ops_b):
            tensor[i, j] = float(np.trace(rho.matrix @ np.kron(op_a, op_b)).real)
    return tensor


def _correlation_grid(tensor: np.ndarray, alphas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    coef_a = np.stack([np.cos(2.0 * alphas), np.sin(2.0 * alphas)], axis=1)
    coef_b = np.stack([np.cos(2.0 * betas), np.sin(2.0 * betas)], axis=1)
    return coef_a @ tensor @ coef_b.T


def _best_on_grids(
    tensor: np.ndarray,
    a_grid: np.ndarray,
    ap_grid: np.ndarray,
    b_grid: np.ndarray,
    bp_grid: np.ndarray,
) -> tuple[float, ChshSettings]:
    # For fixed (b, b') the a and a' terms separate, so each is maximized on its own.
    e_ab = _correlation_grid(tensor, a_grid, b_grid)
    e_abp = _correlation_grid(tensor, a_grid, bp_grid)
    e_apb = _correlation_grid(tensor, ap_grid, b_grid)
    e_apbp = _correlation_grid(tensor, ap_grid, bp_grid)

    best_value = -1.0
    best = (0, 0, 0, 0)
    for ib in range(b_grid.shape[0]):
        diff = e_ab[:, ib, None] - e_abp  # (a, b')
        summ = e_apb[:, ib, None] + e_apbp  # (a', b')
        for sign in (1.0, -1.0):
            ia = np.argmax(sign * diff, axis=0)
            iap = np.argmax(sign * summ, axis=0)
            cols = np.arange(bp_grid.shape[0])
            values = sign * (diff[ia, cols] + summ[iap, cols])
            ibp = int(np.argmax(values))
            if values[ibp] > best_value:
                best_value = float(values[ibp])
                best = (int(ia[ibp]), int(iap[ibp]), ib, ibp)

    ia, iap, ib, ibp = best
    settings = ChshSettings(
        float(a_grid[ia]), float(ap_grid[iap]), float(b_grid[ib]), float(bp_grid[ibp])
    )
    return best_value, settings


def _local_grid(center: float, half_width: float, step: float) -> np.ndarray:
    count = int(round(half_width / step))
    return center + step * np.arange(-count, count + 1)


def maximize_chsh(
    state: PureState | DensityMatrix,
    qwp_a: float | None = None,
    qwp_b: float | None = None,
    step: float = DEFAULT_GRID_STEP,
    refine: float = DEFAULT_REFINE_STEP,
) -> ChshResult:
    """Largest |S| over analyzer settings: a coarse grid on [0, pi) then a local refinement."""
    state = as_density(state)
    _require_two_photons(state)
    step = require_finite(step, "grid step")
    refine = require_finite(refine, "refine step")
    if step <= 0.0 or refine <= 0.0:
        raise ContractError("CHSH grid steps must be positive")

    tensor = _correlation_tensor(state, qwp_a, qwp_b)
    coarse = np.arange(0.0, math.pi, step)
    value, settings = _best_on_grids(tensor, coarse, coarse, coarse, coarse)
    logger.debug("coarse CHSH maximum %.12g at %s", value, settings)

    if refine < step:
        value, settings = _best_on_grids(
            tensor,
            _local_grid(settings.a, step, refine),
            _local_grid(settings.a_prime, step, refine),
            _local_grid(settings.b, step, refine),
            _local_grid(settings.b_prime, step, refine),
        )
        logger.debug("refined CHSH maximum %.12g at %s", value, settings)
    return ChshResult(value, settings)


__all__ = [
    "STANDARD_SETTINGS",
    "TSIRELSON_BOUND",
    "ChshResult",
    "ChshSettings",
    "chsh_value",
    "correlation_E",
    "maximize_chsh",
]
