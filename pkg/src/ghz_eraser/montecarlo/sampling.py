from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from tqdm import tqdm

from ..analysis import ChshSettings
from ..core import DensityMatrix, PureState
from ..errors import ContractError
from ..protocol import (
    OUTCOMES,
    ExperimentConfig,
    HeraldPort,
    Outcome,
    ghz_state,
    joint_outcome_probabilities,
)

logger = logging.getLogger(__name__)

BLOCK_SIZE = 65536
UNIFORMS_PER_EMISSION = 4
MAX_SEED = 2**64

CellKey = tuple[HeraldPort | None, Outcome, Outcome]


def _check_efficiency(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 < value <= 1.0:
        raise ContractError(f"{name} must lie in (0, 1], got {value}")
    return value


@dataclass(frozen=True, slots=True)
class RunSpec:
    config: ExperimentConfig
    n_triples: int
    efficiency_a: float = 1.0
    efficiency_b: float = 1.0
    efficiency_h: float = 1.0
    seed: int = 0
    stream: int = 0
    state: PureState | DensityMatrix | None = None

    def __post_init__(self):
        if int(self.n_triples) != self.n_triples or self.n_triples < 1:
            raise ContractError(f"n_triples must be a positive integer, got {self.n_triples}")
        if not 0 <= int(self.seed) < MAX_SEED:
            raise ContractError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if int(self.stream) < 0:
            raise ContractError(f"stream must be non-negative, got {self.stream}")
        _check_efficiency(self.efficiency_a, "efficiency_a")
        _check_efficiency(self.efficiency_b, "efficiency_b")
        _check_efficiency(self.efficiency_h, "efficiency_h")

    @property
    def source_state(self) -> PureState | DensityMatrix:
        return ghz_state() if self.state is None else self.state


@dataclass(slots=True)
class CountsTable:
    ports: tuple[HeraldPort | None, ...]
    counts: dict[CellKey, int] = field(default_factory=dict)
    emitted: int = 0
    detected: int = 0

    def count(self, port: HeraldPort | None, outcome_a: Outcome, outcome_b: Outcome) -> int:
        return self.counts.get((port, outcome_a, outcome_b), 0)

    def port_total(self, port: HeraldPort | None) -> int:
        if port not in self.ports:
            raise ContractError(f"table has no herald port {port!r}")
        return sum(self.count(port, a, b) for a in OUTCOMES for b in OUTCOMES)

    def cell(self, port: HeraldPort | None) -> np.ndarray:
        if port not in self.ports:
            raise ContractError(f"table has no herald port {port!r}")
        return np.array([[self.count(port, a, b) for b in OUTCOMES] for a in OUTCOMES])

    def merge(self, other: CountsTable) -> CountsTable:
        if other.ports != self.ports:
            raise ContractError("cannot merge tables with different herald ports")
        counts = dict(self.counts)
        for key, value in other.counts.items():
            counts[key] = counts.get(key, 0) + value
        return CountsTable(
            self.ports, counts, self.emitted + other.emitted, self.detected + other.detected
        )


def _cell_keys(ports: tuple[HeraldPort | None, ...]) -> list[CellKey]:
    # Flat order port * 4 + a * 2 + b, matching the joint probability table.
    return [(port, a, b) for port in ports for a in OUTCOMES for b in OUTCOMES]


def block_generator(seed: int, stream: int, block: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(int(seed), spawn_key=(int(stream), int(block)))
    return np.random.Generator(np.random.Philox(sequence))


@dataclass(frozen=True, slots=True)
class _BlockJob:
    cdf: np.ndarray
    efficiencies: tuple[float, float, float]
    seed: int
    stream: int
    n_triples: int

    def __call__(self, block: int) -> np.ndarray:
        start = block * BLOCK_SIZE
        rows = min(BLOCK_SIZE, self.n_triples - start)
        uniforms = block_generator(self.seed, self.stream, block).random(
            (rows, UNIFORMS_PER_EMISSION)
        )
        outcome = np.searchsorted(self.cdf, uniforms[:, 0], side="right")
        outcome = np.minimum(outcome, self.cdf.shape[0] - 1)
        eta_a, eta_b, eta_h = self.efficiencies
        detected = (uniforms[:, 1] < eta_a) & (uniforms[:, 2] < eta_b) & (uniforms[:, 3] < eta_h)
        return np.bincount(outcome[detected], minlength=self.cdf.shape[0]).astype(np.int64)


def sample_run(spec: RunSpec, workers: int = 1, progress: bool = False) -> CountsTable:
    """Tally detected (port, A, B) outcomes; counts do not depend on `workers`."""
    if workers < 1:
        raise ContractError(f"workers must be at least 1, got {workers}")
    state = spec.source_state
    ports, table = joint_outcome_probabilities(state, spec.config)
    flat = np.clip(table.reshape(-1), 0.0, None)
    total = float(flat.sum())
    if total <= 0.0:
        raise ContractError("joint outcome probabilities vanish")
    cdf = np.cumsum(flat) / total

    # A two-photon source has no herald detector to thin.
    eta_h = spec.efficiency_h if state.n_photons == 3 else 1.0
    job = _BlockJob(
        cdf, (spec.efficiency_a, spec.efficiency_b, eta_h), spec.seed, spec.stream, spec.n_triples
    )
    n_blocks = math.ceil(spec.n_triples / BLOCK_SIZE)
    logger.debug(
        "sampling %d emissions in %d blocks (seed=%d stream=%d workers=%d)",
        spec.n_triples,
        n_blocks,
        spec.seed,
        spec.stream,
        workers,
    )

    tallies = np.zeros(flat.shape[0], dtype=np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results: Iterator[np.ndarray] = pool.map(job, range(n_blocks))
        for block_counts in tqdm(results, total=n_blocks, desc="sampling", disable=not progress):
            tallies += block_counts

    counts = {key: int(value) for key, value in zip(_cell_keys(ports), tallies, strict=True)}
    detected = int(tallies.sum())
    logger.info("detected %d of %d emissions", detected, spec.n_triples)
    return CountsTable(ports, counts, spec.n_triples, detected)


def chsh_specs(spec: RunSpec, settings: ChshSettings) -> list[RunSpec]:
    """Run specs at (a, b), (a, b'), (a', b), (a', b'), each on its own stream."""
    pairs = [
        (settings.a, settings.b),
        (settings.a, settings.b_prime),
        (settings.a_prime, settings.b),
        (settings.a_prime, settings.b_prime),
    ]
    return [
        replace(
            spec,
            config=replace(spec.config, alpha=alpha, beta=beta),
            stream=spec.stream * 4 + k,
        )
        for k, (alpha, beta) in enumerate(pairs)
    ]


__all__ = [
    "BLOCK_SIZE",
    "CellKey",
    "CountsTable",
    "RunSpec",
    "block_generator",
    "chsh_specs",
    "sample_run",
]
