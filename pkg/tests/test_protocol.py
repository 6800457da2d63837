from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ghz_eraser.core import PureState, pure_to_density
from ghz_eraser.errors import ContractError, ImpossibleOutcomeError
from ghz_eraser.protocol import (
    PORTS,
    DirectHerald,
    ExperimentConfig,
    HeraldPort,
    LinearPolarizerHerald,
    Outcome,
    Parity,
    QuarterWaveHerald,
    bell_average_closed_form,
    bell_state,
    coincidence_probability,
    ghz_state,
    herald_outcome,
    joint_outcome_probabilities,
    left_circular,
    mixture_closed_form,
    phi_plus_closed_form,
    right_circular,
    sandwich_state,
    unconditioned_ab_density,
    xi_states,
)

S = 1.0 / math.sqrt(2.0)
D = math.radians


def test_bell_states(phi_plus, phi_minus):
    assert_allclose(phi_plus.amplitudes, [S, 0, 0, S])
    assert_allclose(phi_minus.amplitudes, [S, 0, 0, -S])
    assert abs(phi_plus.overlap(phi_minus)) < 1e-15


def test_ghz_amplitudes(ghz):
    assert ghz.amplitudes[0b001] == pytest.approx(S)
    assert ghz.amplitudes[0b110] == pytest.approx(S)
    assert ghz.amplitudes[0b000] == 0
    assert ghz.is_normalized()


def test_xi_states():
    xi_plus, xi_minus = xi_states()
    assert xi_plus.amplitudes[3] == pytest.approx(1j * S)
    assert xi_minus.amplitudes[3] == pytest.approx(-1j * S)
    assert abs(xi_plus.overlap(xi_minus)) < 1e-15


def test_circular_decomposition_of_ghz(ghz):
    xi_plus, xi_minus = xi_states()
    left = np.kron(xi_plus.amplitudes, left_circular().amplitudes)
    right = np.kron(xi_minus.amplitudes, right_circular().amplitudes)
    assert PureState(S * (left - right)).equals_up_to_phase(ghz)


def test_linear_herald_at_45_gives_bell_pair(ghz, phi_plus, phi_minus):
    plus, p_plus = herald_outcome(ghz, LinearPolarizerHerald(D(45)), HeraldPort.PLUS)
    minus, p_minus = herald_outcome(ghz, LinearPolarizerHerald(D(45)), HeraldPort.MINUS)
    assert abs(abs(plus.overlap(phi_plus)) - 1.0) < 1e-12
    assert abs(abs(minus.overlap(phi_minus)) - 1.0) < 1e-12
    assert p_plus == pytest.approx(0.5, abs=1e-12)
    assert p_minus == pytest.approx(0.5, abs=1e-12)


def test_linear_herald_at_90_selects_xx_branch(ghz):
    state, probability = herald_outcome(ghz, LinearPolarizerHerald(D(90)), HeraldPort.PLUS)
    assert state.equals_up_to_phase(PureState.basis("xx"))
    assert probability == pytest.approx(0.5, abs=1e-12)


def test_linear_herald_at_30(ghz):
    state, _ = herald_outcome(ghz, LinearPolarizerHerald(D(30)), HeraldPort.PLUS)
    expected = PureState(np.array([0.5, 0, 0, math.sqrt(3) / 2]))
    assert state.equals_up_to_phase(expected)


def test_circular_herald_ports_give_xi_states(ghz):
    xi_plus, xi_minus = xi_states()
    strategy = QuarterWaveHerald(D(45), 0.0)
    plus, p_plus = herald_outcome(ghz, strategy, HeraldPort.PLUS)
    minus, p_minus = herald_outcome(ghz, strategy, HeraldPort.MINUS)
    assert plus.equals_up_to_phase(xi_plus)
    assert minus.equals_up_to_phase(xi_minus)
    assert p_plus == pytest.approx(0.5, abs=1e-12)
    assert p_minus == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize(
    "strategy",
    [LinearPolarizerHerald(D(10)), LinearPolarizerHerald(D(77)), QuarterWaveHerald(D(20), D(35))],
)
def test_port_probabilities_sum_to_one(ghz, strategy):
    total = sum(herald_outcome(ghz, strategy, port)[1] for port in PORTS)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_direct_herald_has_no_port_state(ghz):
    with pytest.raises(ContractError):
        herald_outcome(ghz, DirectHerald(), HeraldPort.PLUS)


def test_herald_needs_three_photons(phi_plus):
    with pytest.raises(ContractError):
        herald_outcome(phi_plus, LinearPolarizerHerald(0.3), HeraldPort.PLUS)


def test_non_finite_angles_rejected():
    with pytest.raises(ContractError):
        LinearPolarizerHerald(float("inf"))
    with pytest.raises(ContractError):
        ExperimentConfig(0.0, float("nan"))


@pytest.mark.parametrize(
    ("alpha", "beta", "expected"),
    [(20, 20, 0.5), (0, 90, 0.0), (0, 30, 0.375)],
)
def test_coincidence_on_phi_plus(phi_plus, alpha, beta, expected):
    config = ExperimentConfig(D(alpha), D(beta))
    assert coincidence_probability(phi_plus, config) == pytest.approx(expected, abs=1e-12)


def test_coincidence_on_mixture(mixture):
    assert coincidence_probability(mixture, ExperimentConfig(0.0, D(30))) == pytest.approx(
        0.375, abs=1e-12
    )


def test_unconditioned_density(ghz):
    reduced = unconditioned_ab_density(ghz)
    assert_allclose(reduced.matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-12)
    assert coincidence_probability(reduced, ExperimentConfig(D(45), D(45))) == pytest.approx(0.25)
    assert coincidence_probability(reduced, ExperimentConfig(0.0, 0.0)) == pytest.approx(0.5)


def test_closed_forms():
    assert mixture_closed_form(0.0, 0.0) == pytest.approx(0.5)
    assert mixture_closed_form(D(45), D(45)) == pytest.approx(0.25)
    assert bell_average_closed_form(D(45), D(45)) == pytest.approx(0.25)
    assert phi_plus_closed_form(D(10), D(10)) == pytest.approx(0.5)


def test_mixture_forms_agree_on_random_angles():
    rng = np.random.default_rng(2024)
    for alpha, beta in rng.uniform(-2 * math.pi, 2 * math.pi, size=(10_000, 2)):
        assert abs(mixture_closed_form(alpha, beta) - bell_average_closed_form(alpha, beta)) < 1e-12


def test_heralded_bell_curve_on_full_degree_grid(ghz):
    state, _ = herald_outcome(ghz, LinearPolarizerHerald(D(45)), HeraldPort.PLUS)
    for alpha_deg in range(181):
        for beta_deg in range(181):
            alpha, beta = D(alpha_deg), D(beta_deg)
            p = coincidence_probability(state, ExperimentConfig(alpha, beta))
            assert abs(p - phi_plus_closed_form(alpha, beta)) < 1e-12


def test_direct_herald_matches_mixture_formulas(ghz):
    for alpha_deg in range(0, 181, 2):
        for beta_deg in range(0, 181, 2):
            alpha, beta = D(alpha_deg), D(beta_deg)
            p = coincidence_probability(ghz, ExperimentConfig(alpha, beta))
            assert abs(p - mixture_closed_form(alpha, beta)) < 1e-12
            assert abs(p - bell_average_closed_form(alpha, beta)) < 1e-12


def test_conditioned_coincidence_uses_requested_port(ghz):
    config = ExperimentConfig(0.0, 0.0, herald=LinearPolarizerHerald(D(45)))
    assert coincidence_probability(ghz, config, HeraldPort.PLUS) == pytest.approx(0.5)
    with pytest.raises(ContractError):
        coincidence_probability(ghz, config)


def test_conditioned_coincidence_from_density(ghz):
    config = ExperimentConfig(D(10), D(70), herald=LinearPolarizerHerald(D(30)))
    for port in PORTS:
        pure = coincidence_probability(ghz, config, port)
        mixed = coincidence_probability(pure_to_density(ghz), config, port)
        assert mixed == pytest.approx(pure, abs=1e-12)


@pytest.mark.parametrize("as_density", [False, True])
@pytest.mark.parametrize(
    ("gamma", "port"), [(0.0, HeraldPort.MINUS), (D(90), HeraldPort.PLUS)]
)
def test_impossible_herald_port_raises(as_density, gamma, port):
    state = PureState.basis("xxx")
    if as_density:
        state = pure_to_density(state)
    config = ExperimentConfig(0.0, 0.0, herald=LinearPolarizerHerald(gamma))
    with pytest.raises(ImpossibleOutcomeError):
        coincidence_probability(state, config, port)


@pytest.mark.parametrize(
    "strategy",
    [
        LinearPolarizerHerald(D(45)),
        LinearPolarizerHerald(D(30)),
        QuarterWaveHerald(D(45), 0.0),
        QuarterWaveHerald(D(15), D(60)),
    ],
)
def test_herald_decomposition_is_total_probability(ghz, strategy):
    rng = np.random.default_rng(5)
    for alpha, beta in rng.uniform(0.0, math.pi, size=(25, 2)):
        unconditioned = coincidence_probability(ghz, ExperimentConfig(alpha, beta))
        total = 0.0
        for port in PORTS:
            _, weight = herald_outcome(ghz, strategy, port)
            config = ExperimentConfig(alpha, beta, herald=strategy)
            total += weight * coincidence_probability(ghz, config, port)
        assert total == pytest.approx(unconditioned, abs=1e-10)


def test_circular_herald_states_look_like_mixture(ghz):
    strategy = QuarterWaveHerald(D(45), 0.0)
    for port in PORTS:
        state, _ = herald_outcome(ghz, strategy, port)
        for alpha_deg in range(0, 181, 5):
            for beta_deg in range(0, 181, 5):
                alpha, beta = D(alpha_deg), D(beta_deg)
                p = coincidence_probability(state, ExperimentConfig(alpha, beta))
                assert abs(p - mixture_closed_form(alpha, beta)) < 1e-12


@pytest.mark.parametrize(
    "strategy", [DirectHerald(), LinearPolarizerHerald(D(45)), QuarterWaveHerald(D(45), 0.0)]
)
def test_a_marginal_does_not_depend_on_beta(ghz, strategy):
    alpha = D(17)
    marginals = []
    for beta in (0.0, D(33), D(71), D(120)):
        _, table = joint_outcome_probabilities(ghz, ExperimentConfig(alpha, beta, herald=strategy))
        marginals.append(table[:, 0, :].sum())
    assert_allclose(marginals, marginals[0], atol=1e-12)


def test_joint_outcomes_sum_to_one(ghz):
    config = ExperimentConfig(D(12), D(50), qwp_a=D(20), herald=QuarterWaveHerald(D(45), D(5)))
    ports, table = joint_outcome_probabilities(ghz, config)
    assert ports == PORTS
    assert table.shape == (2, 2, 2)
    assert table.sum() == pytest.approx(1.0, abs=1e-12)
    config = ExperimentConfig(D(12), D(50))
    ports, table = joint_outcome_probabilities(ghz, config)
    assert ports == (None,)
    assert table[0, 0, 0] == pytest.approx(mixture_closed_form(D(12), D(50)), abs=1e-12)


def test_minus_outcomes(phi_plus):
    config = ExperimentConfig(0.0, 0.0)
    p = coincidence_probability(phi_plus, config, outcome_a=Outcome.MINUS, outcome_b=Outcome.MINUS)
    assert p == pytest.approx(0.5, abs=1e-12)


def test_sandwich_source_is_ghz(ghz):
    assert sandwich_state().equals_up_to_phase(ghz)


def test_source_phase_relabels_ports(phi_minus):
    state = sandwich_state(source_phase=math.pi)
    plus, _ = herald_outcome(state, LinearPolarizerHerald(D(45)), HeraldPort.PLUS)
    assert plus.equals_up_to_phase(phi_minus)


def test_misaligned_plate_degrades_source(ghz):
    state = sandwich_state(dwp_axis=D(30))
    assert state.is_normalized()
    assert abs(state.overlap(ghz)) < 0.99


def test_bell_state_accepts_strings():
    assert bell_state(Parity.MINUS).equals_up_to_phase(bell_state("minus"))
    with pytest.raises(ValueError):
        bell_state("sideways")
    assert ghz_state().n_photons == 3
