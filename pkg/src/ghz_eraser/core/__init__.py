from .jones import (
    WaveplateKind,
    bra_after,
    lift_single_photon,
    local_unitary,
    polarizer_bra,
    projector_on_photon,
    rotation,
    waveplate,
)
from .measurement import (
    IMPOSSIBLE_PROBABILITY,
    apply,
    born_probability,
    density_probability,
    measure_photon,
    partial_trace,
    project_and_renormalize,
    transform_density,
)
from .states import (
    MAX_PHOTONS,
    DensityMatrix,
    LinearOperator,
    PureState,
    pure_to_density,
    require_normalized,
    single_photon,
    tensor,
    tensor_all,
)

__all__ = [
    "IMPOSSIBLE_PROBABILITY",
    "MAX_PHOTONS",
    "DensityMatrix",
    "LinearOperator",
    "PureState",
    "WaveplateKind",
    "apply",
    "born_probability",
    "bra_after",
    "density_probability",
    "lift_single_photon",
    "local_unitary",
    "measure_photon",
    "partial_trace",
    "polarizer_bra",
    "project_and_renormalize",
    "projector_on_photon",
    "pure_to_density",
    "require_normalized",
    "rotation",
    "single_photon",
    "tensor",
    "tensor_all",
    "transform_density",
    "waveplate",
]
