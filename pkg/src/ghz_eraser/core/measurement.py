from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from ..errors import ContractError, ImpossibleOutcomeError
from .states import DensityMatrix, LinearOperator, PureState, require_normalized

IMPOSSIBLE_PROBABILITY = 1e-14
PROJECTOR_TOL = 1e-10


def _check_dims(op: LinearOperator, dim: int) -> None:
    if op.dim != dim:
        raise ContractError(
            f"dimension mismatch: operator acts on {op.n_photons} photons, "
            f"state has {dim.bit_length() - 1}"
        )


def _check_projector(projector: LinearOperator) -> None:
    if not projector.is_projector(PROJECTOR_TOL):
        raise ContractError("operator is not a Hermitian idempotent projector")


def apply(op: LinearOperator, s: PureState) -> PureState:
    # Result may be unnormalized; callers renormalize.
    _check_dims(op, s.dim)
    return PureState(op.matrix @ s.amplitudes)


def born_probability(s: PureState, projector: LinearOperator) -> float:
    _check_dims(projector, s.dim)
    _check_projector(projector)
    require_normalized(s)
    value = float(np.vdot(s.amplitudes, projector.matrix @ s.amplitudes).real)
    return min(1.0, max(0.0, value))


def project_and_renormalize(s: PureState, projector: LinearOperator) -> tuple[PureState, float]:
    probability = born_probability(s, projector)
    if probability < IMPOSSIBLE_PROBABILITY:
        raise ImpossibleOutcomeError(f"projection has probability {probability:.3e}")
    projected = projector.matrix @ s.amplitudes
    return PureState(projected / np.linalg.norm(projected)), probability


def density_probability(rho: DensityMatrix, projector: LinearOperator) -> float:
    _check_dims(projector, rho.dim)
    _check_projector(projector)
    value = float(np.trace(projector.matrix @ rho.matrix).real)
    return min(1.0, max(0.0, value))


def transform_density(op: LinearOperator, rho: DensityMatrix) -> DensityMatrix:
    _check_dims(op, rho.dim)
    out = op.matrix @ rho.matrix @ op.matrix.conj().T
    return DensityMatrix(0.5 * (out + out.conj().T))


def measure_photon(
    state: PureState, bra: np.ndarray, photon_index: int
) -> tuple[PureState, float]:
    """Project one photon onto `bra` and return the normalized state of the others."""
    n_photons = state.n_photons
    if n_photons < 2:
        raise ContractError("measure_photon needs at least two photons")
    if not 0 <= photon_index < n_photons:
        raise ContractError(f"photon index {photon_index} out of range for {n_photons} photons")
    require_normalized(state)
    bra = np.asarray(bra, dtype=np.complex128).reshape(2)
    shaped = state.amplitudes.reshape(2**photon_index, 2, 2 ** (n_photons - photon_index - 1))
    remaining = np.einsum("ijk,j->ik", shaped, bra).reshape(-1)
    probability = float(np.vdot(remaining, remaining).real)
    if probability < IMPOSSIBLE_PROBABILITY:
        raise ImpossibleOutcomeError(
            f"photon {photon_index} outcome has probability {probability:.3e}"
        )
    return PureState(remaining / np.sqrt(probability)), min(1.0, probability)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    n_photons = rho.n_photons
    keep_set = set(keep)
    if not keep_set:
        raise ContractError("partial trace needs at least one photon to keep")
    if any(not 0 <= index < n_photons for index in keep_set):
        raise ContractError(f"keep set {sorted(keep_set)} out of range for {n_photons} photons")

    tensor = rho.matrix.reshape([2] * (2 * n_photons))
    current = n_photons
    # Descending order leaves the axes of lower photons in place.
    for photon in sorted(set(range(n_photons)) - keep_set, reverse=True):
        tensor = np.trace(tensor, axis1=photon, axis2=photon + current)
        current -= 1
    dim = 2**current
    reduced = tensor.reshape(dim, dim)
    return DensityMatrix(0.5 * (reduced + reduced.conj().T))


__all__ = [
    "IMPOSSIBLE_PROBABILITY",
    "PROJECTOR_TOL",
    "apply",
    "born_probability",
    "density_probability",
    "measure_photon",
    "partial_trace",
    "project_and_renormalize",
    "transform_density",
]
