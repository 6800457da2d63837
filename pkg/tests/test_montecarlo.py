from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ghz_eraser.analysis import (
    STANDARD_SETTINGS,
    TSIRELSON_BOUND,
    concurrence,
    fidelity,
    reconstruct_density,
    simulate_tomography_probabilities,
)
from ghz_eraser.errors import ContractError
from ghz_eraser.montecarlo import (
    BLOCK_SIZE,
    CountsTable,
    HeraldedSource,
    RunSpec,
    chsh_specs,
    estimate_chsh,
    estimate_coincidence_prob,
    estimate_correlation,
    exact_tomography_table,
    sample_run,
    sample_tomography,
)
from ghz_eraser.protocol import (
    OUTCOMES,
    DirectHerald,
    ExperimentConfig,
    HeraldPort,
    LinearPolarizerHerald,
    Outcome,
    QuarterWaveHerald,
    joint_outcome_probabilities,
)

D = math.radians
PLUS, MINUS = Outcome.PLUS, Outcome.MINUS
LINEAR_45 = LinearPolarizerHerald(D(45))
CIRCULAR = QuarterWaveHerald(D(45), 0.0)


def within(observed: float, expected: float, sigma: float, k: float) -> bool:
    return abs(observed - expected) <= k * sigma


def test_single_emission():
    table = sample_run(RunSpec(ExperimentConfig(0.0, 0.0), 1))
    assert table.emitted == 1
    assert table.detected == 1
    assert sum(table.counts.values()) == 1
    assert table.ports == (None,)


def test_runs_are_reproducible():
    spec = RunSpec(ExperimentConfig(D(10), D(35), herald=LINEAR_45), 5000, seed=42)
    assert sample_run(spec).counts == sample_run(spec).counts
    other = sample_run(RunSpec(spec.config, 5000, seed=43))
    assert other.counts != sample_run(spec).counts


def test_worker_count_does_not_change_counts():
    spec = RunSpec(ExperimentConfig(D(10), D(35), herald=LINEAR_45), 3 * BLOCK_SIZE + 17, seed=7)
    single = sample_run(spec, workers=1)
    pooled = sample_run(spec, workers=4)
    assert single.counts == pooled.counts
    assert single.detected == pooled.detected == spec.n_triples


def test_full_efficiency_detects_everything(ghz):
    table = sample_run(RunSpec(ExperimentConfig(0.0, 0.0, herald=CIRCULAR), 20_000, state=ghz))
    assert table.detected == table.emitted == 20_000
    assert table.ports == (HeraldPort.PLUS, HeraldPort.MINUS)


def test_detection_efficiencies_multiply():
    n = 200_000
    spec = RunSpec(
        ExperimentConfig(0.0, 0.0, herald=LINEAR_45),
        n,
        efficiency_a=0.5,
        efficiency_b=0.8,
        efficiency_h=0.9,
        seed=3,
    )
    p = 0.5 * 0.8 * 0.9
    table = sample_run(spec)
    assert within(table.detected, n * p, math.sqrt(n * p * (1 - p)), 5)


def test_two_photon_source_ignores_herald_efficiency(phi_plus):
    n = 100_000
    spec = RunSpec(
        ExperimentConfig(0.0, 0.0),
        n,
        efficiency_a=0.5,
        efficiency_b=0.8,
        efficiency_h=0.1,
        state=phi_plus,
    )
    p = 0.4
    table = sample_run(spec)
    assert within(table.detected, n * p, math.sqrt(n * p * (1 - p)), 5)


def test_heralded_coincidence_converges():
    spec = RunSpec(ExperimentConfig(0.0, 0.0, herald=LINEAR_45), 1_000_000, seed=11)
    table = sample_run(spec, workers=2)
    p_hat, stderr = estimate_coincidence_prob(table, HeraldPort.PLUS)
    assert within(p_hat, 0.5, stderr, 4)


def test_cells_follow_joint_probabilities(ghz):
    n = 200_000
    config = ExperimentConfig(D(20), D(50))
    _, probabilities = joint_outcome_probabilities(ghz, config)
    table = sample_run(RunSpec(config, n, seed=5))
    for i, out_a in enumerate(OUTCOMES):
        for j, out_b in enumerate(OUTCOMES):
            p = probabilities[0, i, j]
            observed = table.count(None, out_a, out_b)
            assert within(observed, n * p, math.sqrt(n * p * (1 - p)), 5)


def test_a_marginal_is_blind_to_beta():
    n = 200_000
    for beta in (0.0, D(60)):
        table = sample_run(RunSpec(ExperimentConfig(D(25), beta, herald=LINEAR_45), n, seed=9))
        a_plus = sum(table.count(port, PLUS, b) for port in table.ports for b in OUTCOMES)
        assert within(a_plus, n / 2, math.sqrt(n / 4), 5)


def test_run_spec_validation():
    config = ExperimentConfig(0.0, 0.0)
    with pytest.raises(ContractError):
        RunSpec(config, 0)
    with pytest.raises(ContractError):
        RunSpec(config, 10, efficiency_a=0.0)
    with pytest.raises(ContractError):
        RunSpec(config, 10, efficiency_h=1.5)
    with pytest.raises(ContractError):
        RunSpec(config, 10, seed=-1)
    with pytest.raises(ContractError):
        sample_run(RunSpec(config, 10), workers=0)


def test_chsh_specs_use_distinct_streams():
    spec = RunSpec(ExperimentConfig(0.0, 0.0, herald=LINEAR_45), 100, seed=1, stream=2)
    specs = chsh_specs(spec, STANDARD_SETTINGS)
    assert [s.stream for s in specs] == [8, 9, 10, 11]
    angles = [(s.config.alpha, s.config.beta) for s in specs]
    assert angles == [
        (0.0, math.pi / 8),
        (0.0, 3 * math.pi / 8),
        (math.pi / 4, math.pi / 8),
        (math.pi / 4, 3 * math.pi / 8),
    ]
    assert all(s.config.herald == LINEAR_45 for s in specs)


# --- estimators ----------------------------------------------------------------------------


def test_coincidence_estimate_and_error():
    table = CountsTable((None,), {(None, PLUS, PLUS): 250, (None, PLUS, MINUS): 750}, 1000, 1000)
    p_hat, stderr = estimate_coincidence_prob(table)
    assert p_hat == pytest.approx(0.25)
    assert stderr == pytest.approx(0.0137, abs=1e-4)


def test_correlation_estimate():
    counts = {(None, PLUS, PLUS): 400, (None, MINUS, MINUS): 400, (None, PLUS, MINUS): 200}
    e_hat, stderr = estimate_correlation(CountsTable((None,), counts, 1000, 1000))
    assert e_hat == pytest.approx(0.6)
    assert stderr == pytest.approx(math.sqrt(0.64 / 1000))


def test_empty_port_is_an_error():
    table = CountsTable((HeraldPort.PLUS, HeraldPort.MINUS), {(HeraldPort.PLUS, PLUS, PLUS): 3})
    with pytest.raises(ContractError):
        estimate_coincidence_prob(table, HeraldPort.MINUS)
    with pytest.raises(ContractError):
        estimate_coincidence_prob(table, None)


def test_tables_merge():
    a = CountsTable((None,), {(None, PLUS, PLUS): 2}, 5, 2)
    b = CountsTable((None,), {(None, PLUS, PLUS): 1, (None, MINUS, MINUS): 4}, 5, 5)
    merged = a.merge(b)
    assert merged.count(None, PLUS, PLUS) == 3
    assert merged.emitted == 10
    assert merged.detected == 7
    assert_allclose(merged.cell(None), [[3, 0], [0, 4]])


@pytest.mark.parametrize(
    ("herald", "port", "expected"),
    [(LINEAR_45, HeraldPort.PLUS, TSIRELSON_BOUND), (None, None, math.sqrt(2.0))],
)
def test_sampled_chsh_matches_analytic(herald, port, expected):
    config = ExperimentConfig(0.0, 0.0, herald=herald or DirectHerald())
    spec = RunSpec(config, 1_000_000, seed=2024)
    tables = [sample_run(s, workers=4) for s in chsh_specs(spec, STANDARD_SETTINGS)]
    s_hat, stderr = estimate_chsh(tables, port)
    assert within(s_hat, expected, stderr, 3)


def test_sampled_chsh_without_analyzer_qwp_stays_classical():
    config = ExperimentConfig(0.0, 0.0, herald=CIRCULAR)
    spec = RunSpec(config, 1_000_000, seed=2024)
    tables = [sample_run(s, workers=4) for s in chsh_specs(spec, STANDARD_SETTINGS)]
    s_hat, stderr = estimate_chsh(tables, HeraldPort.PLUS)
    assert s_hat <= 2.0 + 3 * stderr


def test_chsh_needs_four_tables():
    with pytest.raises(ContractError):
        estimate_chsh([CountsTable((None,))] * 3)


# --- sampled tomography --------------------------------------------------------------------


def test_exact_table_of_circular_herald_is_xi(ghz, xi_plus):
    source = HeraldedSource(ghz, CIRCULAR, HeraldPort.PLUS)
    exact = exact_tomography_table(source)
    expected = simulate_tomography_probabilities(xi_plus)
    for pair, cell in expected.probabilities.items():
        assert_allclose(exact.probabilities[pair], cell, atol=1e-12)


def test_exact_table_of_linear_herald_is_phi_plus(ghz, phi_plus):
    exact = exact_tomography_table(HeraldedSource(ghz, LINEAR_45, HeraldPort.PLUS))
    assert fidelity(reconstruct_density(exact), phi_plus) >= 1.0 - 1e-9


def test_heralded_source_needs_a_port(ghz):
    with pytest.raises(ContractError):
        HeraldedSource(ghz, CIRCULAR)


def test_sampled_tomography_recovers_xi(ghz, xi_plus):
    source = HeraldedSource(ghz, CIRCULAR, HeraldPort.PLUS)
    table = sample_tomography(source, 1_000_000, seed=99, workers=4)
    assert table.n_min is not None
    estimate = reconstruct_density(table)
    assert concurrence(estimate) >= 0.99
    assert fidelity(estimate, xi_plus) >= 0.995


def test_sampled_tomography_is_reproducible(phi_plus):
    source = HeraldedSource(phi_plus)
    first = sample_tomography(source, 2000, seed=1)
    second = sample_tomography(source, 2000, seed=1, workers=2)
    for pair, cell in first.probabilities.items():
        assert_allclose(second.probabilities[pair], cell)
