from __future__ import annotations

import numpy as np

from ..core import DensityMatrix, PureState, pure_to_density
from ..errors import ContractError

# Eigenvalues below this are treated as zero when factoring rho = W W^dagger.
RANK_TOL = 1e-12

_SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=np.complex128
)


def as_density(value: PureState | DensityMatrix | np.ndarray) -> DensityMatrix:
    if isinstance(value, DensityMatrix):
        return value
    if isinstance(value, PureState):
        return pure_to_density(value)
    return DensityMatrix(np.asarray(value, dtype=np.complex128))


def _weighted_eigenbasis(rho: DensityMatrix) -> np.ndarray:
    weights, vectors = np.linalg.eigh(rho.matrix)
    keep = weights > RANK_TOL
    return vectors[:, keep] * np.sqrt(weights[keep])


def concurrence(rho: PureState | DensityMatrix | np.ndarray) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4)."""
    rho = as_density(rho)
    if rho.n_photons != 2:
        raise ContractError(f"concurrence needs a 2-photon state, got {rho.n_photons}")
    w = _weighted_eigenbasis(rho)
    tau = w.conj().T @ _SIGMA_YY @ w.conj()
    lambdas = np.zeros(4)
    singular = np.linalg.svd(tau, compute_uv=False)
    lambdas[: singular.shape[0]] = singular
    value = lambdas[0] - lambdas[1:].sum()
    return float(min(1.0, max(0.0, value)))


def fidelity(
    rho: PureState | DensityMatrix | np.ndarray, sigma: PureState | DensityMatrix | np.ndarray
) -> float:
    rho = as_density(rho)
    sigma = as_density(sigma)
    if rho.dim != sigma.dim:
        raise ContractError("fidelity of states with different photon counts")
    overlap = _weighted_eigenbasis(rho).conj().T @ _weighted_eigenbasis(sigma)
    if overlap.size == 0:
        return 0.0
    trace_norm = float(np.linalg.svd(overlap, compute_uv=False).sum())
    return min(1.0, max(0.0, trace_norm**2))


__all__ = ["RANK_TOL", "as_density", "concurrence", "fidelity"]
