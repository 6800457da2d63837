from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ContractError
from ..utils import require_finite, require_positive

PARAXIAL_LIMIT = 0.3

Transverse = tuple[float, float]


@dataclass(frozen=True, slots=True)
class EmissionGeometry:
    """Herald angle, o-pair ring radius about the symmetry axis, and ring azimuth (radians)."""

    herald_angle: float
    ring_parameter: float = 0.0
    azimuth: float = 0.0

    def __post_init__(self):
        phi = require_positive(self.herald_angle, "herald angle")
        ring = require_finite(self.ring_parameter, "ring parameter")
        require_finite(self.azimuth, "azimuth")
        if ring < 0.0:
            raise ContractError(f"ring parameter must be non-negative, got {ring}")
        if phi >= PARAXIAL_LIMIT:
            raise ContractError(f"herald angle {phi:.6g} rad is not paraxial")
        # Farthest o photon sits at phi/2 + ring from the pump direction.
        if 0.5 * phi + ring >= PARAXIAL_LIMIT:
            raise ContractError(
                f"o-photon angle {0.5 * phi + ring:.6g} rad is not paraxial"
            )


@dataclass(frozen=True, slots=True)
class EmissionDirections:
    herald: Transverse
    o: Transverse
    o_prime: Transverse

    def transverse_sum(self) -> Transverse:
        return (
            self.herald[0] + self.o[0] + self.o_prime[0],
            self.herald[1] + self.o[1] + self.o_prime[1],
        )


def emission_directions(geom: EmissionGeometry) -> EmissionDirections:
    phi = geom.herald_angle
    herald = (phi, 0.0)
    centre_x = -0.5 * phi
    o = (
        centre_x - geom.ring_parameter * math.cos(geom.azimuth),
        -geom.ring_parameter * math.sin(geom.azimuth),
    )
    o_prime = (-(herald[0] + o[0]), -(herald[1] + o[1]))
    return EmissionDirections(herald, o, o_prime)


@dataclass(frozen=True, slots=True)
class PumpDiameterCheck:
    ok: bool
    margin_mm: float


def pump_diameter_ok(d: float, phi: float, l_c: float, l_w: float) -> PumpDiameterCheck:
    """Strict d > phi (l_c + l_w): the pump must cover the herald's lateral offset."""
    d = require_positive(d, "pump diameter")
    phi = require_positive(phi, "herald angle")
    l_c = require_positive(l_c, "crystal length")
    l_w = require_positive(l_w, "waveplate length")
    margin = d - phi * (l_c + l_w)
    return PumpDiameterCheck(margin > 0.0, margin)


__all__ = [
    "PARAXIAL_LIMIT",
    "EmissionDirections",
    "EmissionGeometry",
    "PumpDiameterCheck",
    "Transverse",
    "emission_directions",
    "pump_diameter_ok",
]
