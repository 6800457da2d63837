from __future__ import annotations

import cmath
import logging
import math

import numpy as np

from ..core import PureState, WaveplateKind, local_unitary, waveplate
from ..utils import require_finite

logger = logging.getLogger(__name__)

# Each crystal emits o, o' along x (photons A, B) and e along y (herald).
_PAIR_EMISSION = "xxy"


def sandwich_state(dwp_axis: float = math.pi / 4.0, source_phase: float = 0.0) -> PureState:
    """Three-photon state leaving the two-crystal sandwich."""
    dwp_axis = require_finite(dwp_axis, "dichroic plate axis")
    source_phase = require_finite(source_phase, "source phase")

    emission = PureState.basis(_PAIR_EMISSION).amplitudes
    plate = waveplate(WaveplateKind.HALF, dwp_axis)
    flipped = local_unitary([plate, plate, plate]).matrix @ emission
    total = flipped + cmath.exp(1j * source_phase) * emission

    norm = float(np.linalg.norm(total))
    logger.debug("sandwich axis=%.6g phase=%.6g norm=%.6g", dwp_axis, source_phase, norm)
    return PureState(total).normalized()


__all__ = ["sandwich_state"]
