from __future__ import annotations

import argparse
import logging
from dataclasses import replace

from ..analysis import (
    ChshSettings,
    TomographyBasis,
    TomographySettings,
    chsh_value,
    concurrence,
    fidelity,
    herald_concurrence_sweep,
    maximize_chsh,
    reconstruct_density,
)
from ..core import DensityMatrix, PureState
from ..errors import ConfigError
from ..montecarlo import (
    HeraldedSource,
    RunSpec,
    chsh_specs,
    estimate_chsh,
    exact_tomography_table,
    sample_run,
    sample_tomography,
)
from ..optics import (
    EmissionGeometry,
    PhaseMatchProblem,
    emission_directions,
    load_crystal,
    phase_match_angle,
    phase_mismatch,
    pump_diameter_ok,
    walkoff_angle,
    walkoff_displacement,
)
from ..protocol import (
    OUTCOMES,
    DirectHerald,
    ExperimentConfig,
    HeraldPort,
    HeraldStrategy,
    LinearPolarizerHerald,
    QuarterWaveHerald,
    bell_state,
    coincidence_probability,
    ghz_state,
    herald_outcome,
    separable_mixture_states,
    unconditioned_ab_density,
    xi_states,
)
from ..utils import csv_line, deg, fmt_number, rad
from .config import AngleSweep, MonteCarloSection, RunConfig

logger = logging.getLogger(__name__)


def _single(sweep: AngleSweep, key: str) -> float:
    if len(sweep.radians) != 1:
        raise ConfigError("this command needs a single angle, not a range", key)
    return sweep.radians[0]


def _optional_rad(value_deg: float | None) -> float | None:
    return None if value_deg is None else rad(value_deg)


def herald_strategy(config: RunConfig, gamma: float | None = None) -> HeraldStrategy:
    exp = config.experiment
    if exp.herald == "direct":
        return DirectHerald()
    if gamma is None:
        gamma = _single(exp.gamma_deg, "experiment.gamma_deg")
    if exp.herald == "linear":
        return LinearPolarizerHerald(gamma)
    return QuarterWaveHerald(rad(exp.herald_qwp_deg), gamma)


def _port(config: RunConfig) -> HeraldPort:
    return HeraldPort(config.experiment.port)


def _port_name(port: HeraldPort | None) -> str:
    return "none" if port is None else port.value


def conditioned_pair(config: RunConfig) -> tuple[PureState | DensityMatrix, HeraldPort | None]:
    """A,B state selected by the configured herald: the port state, or the traced pair."""
    strategy = herald_strategy(config)
    if isinstance(strategy, DirectHerald):
        return unconditioned_ab_density(ghz_state()), None
    port = _port(config)
    state, probability = herald_outcome(ghz_state(), strategy, port)
    logger.debug("herald port %s has probability %.12g", port.label, probability)
    return state, port


def _montecarlo(config: RunConfig, args: argparse.Namespace) -> MonteCarloSection | None:
    section = config.montecarlo
    if section is not None and args.seed is not None:
        section = replace(section, seed=args.seed)
    return section


def _run_spec(config: RunConfig, section: MonteCarloSection, alpha: float, beta: float) -> RunSpec:
    exp = config.experiment
    experiment = ExperimentConfig(
        alpha,
        beta,
        qwp_a=_optional_rad(exp.qwp_a_deg),
        qwp_b=_optional_rad(exp.qwp_b_deg),
        herald=herald_strategy(config),
    )
    return RunSpec(
        experiment,
        section.n,
        efficiency_a=section.efficiency_a,
        efficiency_b=section.efficiency_b,
        efficiency_h=section.efficiency_h,
        seed=section.seed,
    )


def cmd_phase_match(config: RunConfig, args: argparse.Namespace) -> str:
    name = args.crystal or config.crystal.name
    pump_nm = args.pump_nm if args.pump_nm is not None else config.crystal.pump_nm
    length_mm = args.length_mm if args.length_mm is not None else config.crystal.length_mm

    problem = PhaseMatchProblem(load_crystal(name), pump_nm)
    psi = phase_match_angle(problem)
    residual = phase_mismatch(problem, psi)
    walkoff = walkoff_angle(problem.crystal, problem.daughter_nm, psi)
    logger.info("phase matched %s at %.12g deg", name, deg(psi))

    fields = [
        f"crystal={problem.crystal.name}",
        f"pump_nm={fmt_number(pump_nm)}",
        f"psi_pm_deg={fmt_number(deg(psi))}",
        f"residual={fmt_number(residual)}",
        f"walkoff_rad={fmt_number(walkoff)}",
    ]
    if length_mm is not None:
        shift = walkoff_displacement(problem.crystal, problem.daughter_nm, psi, length_mm)
        fields.append(f"displacement_mm={fmt_number(shift)}")
    return " ".join(fields) + "\n"


def cmd_sweep(config: RunConfig, args: argparse.Namespace) -> str:
    exp = config.experiment
    strategy = herald_strategy(config)
    qwp_a, qwp_b = _optional_rad(exp.qwp_a_deg), _optional_rad(exp.qwp_b_deg)

    # Conditional states depend only on the herald, so they are fixed for the whole grid.
    if isinstance(strategy, DirectHerald):
        branches = [(None, unconditioned_ab_density(ghz_state()))]
    else:
        branches = [
            (port, herald_outcome(ghz_state(), strategy, port)[0])
            for port in (HeraldPort.PLUS, HeraldPort.MINUS)
        ]

    lines = [csv_line(["alpha_deg", "beta_deg", "herald", "port", "p_coincidence"])]
    for alpha_deg, alpha in zip(exp.alpha_deg.degrees, exp.alpha_deg.radians, strict=True):
        for beta_deg, beta in zip(exp.beta_deg.degrees, exp.beta_deg.radians, strict=True):
            setting = ExperimentConfig(alpha, beta, qwp_a=qwp_a, qwp_b=qwp_b)
            for port, state in branches:
                probability = coincidence_probability(state, setting)
                lines.append(
                    csv_line([alpha_deg, beta_deg, strategy.label, _port_name(port), probability])
                )
    return "".join(lines)


def cmd_chsh(config: RunConfig, args: argparse.Namespace) -> str:
    exp = config.experiment
    qwp_a, qwp_b = _optional_rad(exp.qwp_a_deg), _optional_rad(exp.qwp_b_deg)
    c = config.chsh
    settings = ChshSettings(rad(c.a_deg), rad(c.a_prime_deg), rad(c.b_deg), rad(c.b_prime_deg))
    state, port = conditioned_pair(config)

    header = ["quantity", "value", "stderr", "a_deg", "a_prime_deg", "b_deg", "b_prime_deg"]
    lines = [csv_line(header)]
    analytic = chsh_value(state, settings, qwp_a=qwp_a, qwp_b=qwp_b)
    lines.append(csv_line(["s_analytic", analytic, "", *_settings_deg(settings)]))

    if c.maximize:
        best = maximize_chsh(state, qwp_a=qwp_a, qwp_b=qwp_b)
        lines.append(csv_line(["s_maximized", best.value, "", *_settings_deg(best.settings)]))

    section = _montecarlo(config, args)
    if section is not None:
        base = _run_spec(config, section, settings.a, settings.b)
        tables = [
            sample_run(spec, workers=section.workers, progress=section.progress)
            for spec in chsh_specs(base, settings)
        ]
        s_hat, stderr = estimate_chsh(tables, port)
        lines.append(csv_line(["s_montecarlo", s_hat, stderr, *_settings_deg(settings)]))
    return "".join(lines)


def _settings_deg(settings: ChshSettings) -> list[float]:
    return [deg(settings.a), deg(settings.a_prime), deg(settings.b), deg(settings.b_prime)]


def _tomography_settings(config: RunConfig) -> TomographySettings:
    bases = config.tomography.bases
    if bases is None:
        return TomographySettings()
    pairs = []
    for text in bases:
        first, sep, second = text.partition("/")
        try:
            if not sep:
                raise ValueError(text)
            pairs.append((TomographyBasis(first), TomographyBasis(second)))
        except ValueError as exc:
            raise ConfigError(
                f"expected a basis pair such as \"hv/da\", got {text!r}", "tomography.bases"
            ) from exc
    try:
        settings = TomographySettings(tuple(pairs))
        settings.require_complete()
    except ValueError as exc:
        raise ConfigError(str(exc), "tomography.bases") from exc
    return settings


def _tomography_source(config: RunConfig) -> tuple[HeraldedSource, PureState | DensityMatrix]:
    kind = config.tomography.state
    if kind == "heralded":
        strategy = herald_strategy(config)
        port = None if isinstance(strategy, DirectHerald) else _port(config)
        truth, _ = conditioned_pair(config)
        return HeraldedSource(ghz_state(), strategy, port), truth
    if kind == "mixture":
        truth = DensityMatrix.mixture(separable_mixture_states())
    elif kind.startswith("phi-"):
        truth = bell_state(kind.removeprefix("phi-"))
    else:
        xi_plus, xi_minus = xi_states()
        truth = xi_plus if kind == "xi-plus" else xi_minus
    return HeraldedSource(truth), truth


def cmd_tomography(config: RunConfig, args: argparse.Namespace) -> str:
    settings = _tomography_settings(config)
    source, truth = _tomography_source(config)

    section = _montecarlo(config, args)
    if section is None:
        table = exact_tomography_table(source, settings)
    else:
        table = sample_tomography(
            source,
            section.n,
            section.seed,
            settings=settings,
            efficiencies=(section.efficiency_a, section.efficiency_b, section.efficiency_h),
            workers=section.workers,
            progress=section.progress,
        )
    rho = reconstruct_density(table, warn=logger.warning)

    lines = [csv_line(["row", "col", "re", "im"])]
    for row in range(rho.dim):
        for col in range(rho.dim):
            entry = rho.matrix[row, col]
            lines.append(csv_line([row, col, float(entry.real), float(entry.imag)]))
    lines.append(
        f"# fidelity={fmt_number(fidelity(rho, truth))} "
        f"concurrence={fmt_number(concurrence(rho))}\n"
    )
    return "".join(lines)


def cmd_geometry(config: RunConfig, args: argparse.Namespace) -> str:
    g = config.geometry

    def pick(name: str, default: float) -> float:
        value = getattr(args, name)
        return default if value is None else value

    phi = rad(pick("phi_deg", g.phi_deg))
    ring = rad(pick("ring_deg", g.ring_deg))
    geom = EmissionGeometry(phi, ring, rad(pick("azimuth_deg", g.azimuth_deg)))
    directions = emission_directions(geom)
    check = pump_diameter_ok(
        pick("pump_diameter_mm", g.pump_diameter_mm),
        phi,
        pick("crystal_length_mm", g.crystal_length_mm),
        pick("waveplate_length_mm", g.waveplate_length_mm),
    )

    lines = [csv_line(["photon", "theta_x_rad", "theta_y_rad"])]
    for name, (x, y) in (
        ("herald", directions.herald),
        ("o", directions.o),
        ("o_prime", directions.o_prime),
    ):
        lines.append(csv_line([name, x, y]))
    verdict = "true" if check.ok else "false"
    lines.append(f"# pump_diameter_ok={verdict} margin_mm={fmt_number(check.margin_mm)}\n")
    return "".join(lines)


def cmd_montecarlo(config: RunConfig, args: argparse.Namespace) -> str:
    section = _montecarlo(config, args)
    if section is None:
        section = MonteCarloSection() if args.seed is None else MonteCarloSection(seed=args.seed)
    exp = config.experiment
    spec = _run_spec(
        config,
        section,
        _single(exp.alpha_deg, "experiment.alpha_deg"),
        _single(exp.beta_deg, "experiment.beta_deg"),
    )
    table = sample_run(spec, workers=section.workers, progress=section.progress)

    lines = [csv_line(["port", "outcome_a", "outcome_b", "count"])]
    for port in table.ports:
        for out_a in OUTCOMES:
            for out_b in OUTCOMES:
                count = table.count(port, out_a, out_b)
                lines.append(csv_line([_port_name(port), out_a.value, out_b.value, count]))
    lines.append(f"# emitted={table.emitted} detected={table.detected}\n")
    return "".join(lines)


def cmd_concurrence(config: RunConfig, args: argparse.Namespace) -> str:
    gammas = config.experiment.gamma_deg
    points = herald_concurrence_sweep(gammas.radians)
    lines = [csv_line(["gamma_deg", "port", "probability", "concurrence"])]
    # Two points per gamma, plus port first.
    for index, point in enumerate(points):
        gamma_deg = gammas.degrees[index // 2]
        lines.append(csv_line([gamma_deg, point.port.value, point.probability, point.concurrence]))
    return "".join(lines)


COMMANDS = {
    "phase-match": cmd_phase_match,
    "sweep": cmd_sweep,
    "chsh": cmd_chsh,
    "tomography": cmd_tomography,
    "geometry": cmd_geometry,
    "montecarlo": cmd_montecarlo,
    "concurrence": cmd_concurrence,
}

__all__ = [
    "COMMANDS",
    "cmd_chsh",
    "cmd_concurrence",
    "cmd_geometry",
    "cmd_montecarlo",
    "cmd_phase_match",
    "cmd_sweep",
    "cmd_tomography",
    "conditioned_pair",
    "herald_strategy",
]
