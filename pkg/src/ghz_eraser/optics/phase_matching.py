from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from ..errors import ContractError, NoPhaseMatchingError
from ..utils import require_finite, require_positive
from .crystal import RayType, UniaxialCrystal

logger = logging.getLogger(__name__)

BISECT_XTOL = 1e-15
BISECT_RTOL = 4.0 * np.finfo(float).eps
BISECT_MAXITER = 200


def index_at_angle(n_o: float, n_e: float, psi: float) -> float:
    """Extraordinary index for propagation at `psi` from the optic axis."""
    if n_o <= 1.0 or n_e <= 1.0:
        raise ContractError(f"principal indices must exceed 1, got n_o={n_o}, n_e={n_e}")
    psi = _check_psi(psi)
    c, s = math.cos(psi), math.sin(psi)
    return 1.0 / math.sqrt(c * c / (n_o * n_o) + s * s / (n_e * n_e))


def _check_psi(psi: float) -> float:
    psi = require_finite(psi, "propagation angle")
    if not 0.0 <= psi <= math.pi / 2.0:
        raise ContractError(f"propagation angle {psi:.6g} rad outside [0, pi/2]")
    return psi


def ray_index(crystal: UniaxialCrystal, wavelength_nm: float, ray: RayType, psi: float) -> float:
    n_o = crystal.principal_index(wavelength_nm, RayType.ORDINARY)
    if ray is RayType.ORDINARY:
        return n_o
    n_e = crystal.principal_index(wavelength_nm, RayType.EXTRAORDINARY)
    return index_at_angle(n_o, n_e, psi)


@dataclass(frozen=True, slots=True)
class PhaseMatchProblem:
    """Degenerate three-photon decay of a pump at `pump_nm` into daughters at 3 * pump_nm."""

    crystal: UniaxialCrystal
    pump_nm: float
    pump_ray: RayType = RayType.EXTRAORDINARY
    daughter_rays: tuple[RayType, RayType, RayType] = (
        RayType.ORDINARY,
        RayType.ORDINARY,
        RayType.EXTRAORDINARY,
    )

    def __post_init__(self):
        require_positive(self.pump_nm, "pump wavelength")
        if len(self.daughter_rays) != 3:
            raise ContractError("a three-photon decay needs exactly three daughter rays")
        object.__setattr__(self, "pump_ray", RayType(self.pump_ray))
        object.__setattr__(self, "daughter_rays", tuple(RayType(r) for r in self.daughter_rays))

    @property
    def daughter_nm(self) -> float:
        return 3.0 * self.pump_nm


def phase_mismatch(problem: PhaseMatchProblem, psi: float) -> float:
    """3 n_pump(psi) - sum of daughter indices at psi; zero at phase matching."""
    crystal = problem.crystal
    pump = ray_index(crystal, problem.pump_nm, problem.pump_ray, psi)
    daughters = sum(
        ray_index(crystal, problem.daughter_nm, ray, psi) for ray in problem.daughter_rays
    )
    return 3.0 * pump - daughters


def phase_match_angle(problem: PhaseMatchProblem) -> float:
    lo, hi = 0.0, math.pi / 2.0
    f_lo = phase_mismatch(problem, lo)
    f_hi = phase_mismatch(problem, hi)
    logger.debug("phase mismatch f(0)=%.6g f(pi/2)=%.6g", f_lo, f_hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise NoPhaseMatchingError(
            f"no phase matching in {problem.crystal.name} for a {problem.pump_nm:.6g} nm pump"
        )
    psi = bisect(
        lambda angle: phase_mismatch(problem, angle),
        lo,
        hi,
        xtol=BISECT_XTOL,
        rtol=BISECT_RTOL,
        maxiter=BISECT_MAXITER,
    )
    return float(psi)


def walkoff_angle(crystal: UniaxialCrystal, wavelength_nm: float, psi: float) -> float:
    """Extraordinary walk-off: tan(rho) = n(psi)^2 / 2 (1/n_e^2 - 1/n_o^2) sin(2 psi)."""
    psi = _check_psi(psi)
    n_o = crystal.principal_index(wavelength_nm, RayType.ORDINARY)
    n_e = crystal.principal_index(wavelength_nm, RayType.EXTRAORDINARY)
    n_psi = index_at_angle(n_o, n_e, psi)
    tan_rho = 0.5 * n_psi * n_psi * (1.0 / (n_e * n_e) - 1.0 / (n_o * n_o)) * math.sin(2.0 * psi)
    return abs(math.atan(tan_rho))


def walkoff_displacement(
    crystal: UniaxialCrystal, wavelength_nm: float, psi: float, length_mm: float
) -> float:
    length_mm = require_positive(length_mm, "crystal length")
    return length_mm * math.tan(walkoff_angle(crystal, wavelength_nm, psi))


__all__ = [
    "PhaseMatchProblem",
    "index_at_angle",
    "phase_match_angle",
    "phase_mismatch",
    "ray_index",
    "walkoff_angle",
    "walkoff_displacement",
]
