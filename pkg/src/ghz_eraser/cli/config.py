from __future__ import annotations

import math
import tomllib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..errors import ConfigError
from ..utils import rad

HERALDS = ("direct", "linear", "circular")
PORT_NAMES = ("plus", "minus")
TOMOGRAPHY_STATES = ("heralded", "phi-plus", "phi-minus", "xi-plus", "xi-minus", "mixture")

_SECTIONS: dict[str, frozenset[str]] = {
    "experiment": frozenset(
        {
            "herald",
            "gamma_deg",
            "herald_qwp_deg",
            "port",
            "qwp_a_deg",
            "qwp_b_deg",
            "alpha_deg",
            "beta_deg",
        }
    ),
    "chsh": frozenset({"a_deg", "a_prime_deg", "b_deg", "b_prime_deg", "maximize"}),
    "montecarlo": frozenset(
        {"n", "seed", "efficiency_a", "efficiency_b", "efficiency_h", "workers", "progress"}
    ),
    "crystal": frozenset({"name", "pump_nm", "length_mm"}),
    "tomography": frozenset({"state", "bases"}),
    "geometry": frozenset(
        {
            "phi_deg",
            "ring_deg",
            "azimuth_deg",
            "pump_diameter_mm",
            "crystal_length_mm",
            "waveplate_length_mm",
        }
    ),
    "output": frozenset({"path"}),
}


@dataclass(frozen=True, slots=True)
class AngleSweep:
    """Angles in degrees as written, and the same angles in radians."""

    degrees: tuple[float, ...]
    radians: tuple[float, ...]

    @classmethod
    def of(cls, degrees: list[float] | tuple[float, ...]) -> AngleSweep:
        values = tuple(float(v) for v in degrees)
        return cls(values, tuple(rad(v) for v in values))


@dataclass(frozen=True, slots=True)
class ExperimentSection:
    herald: str = "linear"
    gamma_deg: AngleSweep = field(default_factory=lambda: AngleSweep.of([45.0]))
    herald_qwp_deg: float = 45.0
    port: str = "plus"
    qwp_a_deg: float | None = None
    qwp_b_deg: float | None = None
    alpha_deg: AngleSweep = field(default_factory=lambda: AngleSweep.of([0.0]))
    beta_deg: AngleSweep = field(default_factory=lambda: AngleSweep.of([0.0]))


@dataclass(frozen=True, slots=True)
class ChshSection:
    a_deg: float = 0.0
    a_prime_deg: float = 45.0
    b_deg: float = 22.5
    b_prime_deg: float = 67.5
    maximize: bool = False


@dataclass(frozen=True, slots=True)
class MonteCarloSection:
    n: int = 100_000
    seed: int = 0
    efficiency_a: float = 1.0
    efficiency_b: float = 1.0
    efficiency_h: float = 1.0
    workers: int = 1
    progress: bool = False


@dataclass(frozen=True, slots=True)
class CrystalSection:
    name: str = "calcite"
    pump_nm: float = 405.0
    length_mm: float | None = None


@dataclass(frozen=True, slots=True)
class TomographySection:
    state: str = "heralded"
    bases: tuple[str, ...] | None = None


@dataclass(frozen=True, slots=True)
class GeometrySection:
    phi_deg: float = math.degrees(0.1)
    ring_deg: float = 0.0
    azimuth_deg: float = 0.0
    pump_diameter_mm: float = 2.0
    crystal_length_mm: float = 15.0
    waveplate_length_mm: float = 5.0


@dataclass(frozen=True, slots=True)
class RunConfig:
    experiment: ExperimentSection = field(default_factory=ExperimentSection)
    chsh: ChshSection = field(default_factory=ChshSection)
    montecarlo: MonteCarloSection | None = None
    crystal: CrystalSection = field(default_factory=CrystalSection)
    tomography: TomographySection = field(default_factory=TomographySection)
    geometry: GeometrySection = field(default_factory=GeometrySection)
    output_path: str | None = None
    source: str = ""


def load_run_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}", str(path)) from exc
    return parse_run_config(data, str(path))


def parse_run_config(data: dict[str, Any], source: str = "") -> RunConfig:
    for name, value in data.items():
        if name not in _SECTIONS:
            raise ConfigError("unknown section", name)
        if not isinstance(value, dict):
            raise ConfigError("expected a table", name)
        for key in value:
            if key not in _SECTIONS[name]:
                raise ConfigError("unknown key", f"{name}.{key}")

    output = data.get("output", {})
    return RunConfig(
        experiment=_parse_experiment(data.get("experiment", {})),
        chsh=_parse_chsh(data.get("chsh", {})),
        montecarlo=_parse_montecarlo(data["montecarlo"]) if "montecarlo" in data else None,
        crystal=_parse_crystal(data.get("crystal", {})),
        tomography=_parse_tomography(data.get("tomography", {})),
        geometry=_parse_geometry(data.get("geometry", {})),
        output_path=_string(output, "output", "path", None),
        source=source,
    )


def _number(table: dict[str, Any], section: str, key: str, default: float | None) -> float | None:
    if key not in table:
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ConfigError(f"expected a number, got {value!r}", f"{section}.{key}")
    if not math.isfinite(value):
        raise ConfigError("value must be finite", f"{section}.{key}")
    return float(value)


def _integer(table: dict[str, Any], section: str, key: str, default: int) -> int:
    if key not in table:
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", f"{section}.{key}")
    return value


def _boolean(table: dict[str, Any], section: str, key: str, default: bool) -> bool:
    value = table.get(key, default)
    if not isinstance(value, bool):
        raise ConfigError(f"expected true or false, got {value!r}", f"{section}.{key}")
    return value


def _string(
    table: dict[str, Any], section: str, key: str, default: str | None, choices=None
) -> str | None:
    if key not in table:
        return default
    value = table[key]
    if not isinstance(value, str):
        raise ConfigError(f"expected a string, got {value!r}", f"{section}.{key}")
    if choices is not None and value not in choices:
        expected = ", ".join(choices)
        raise ConfigError(f"expected one of {expected}, got {value!r}", f"{section}.{key}")
    return value


def angle_sweep(value: Any, key: str) -> AngleSweep:
    """A scalar angle or an inclusive [start, stop, step] range, in degrees."""
    if isinstance(value, bool):
        raise ConfigError(f"expected a number or [start, stop, step], got {value!r}", key)
    if isinstance(value, int | float):
        if not math.isfinite(value):
            raise ConfigError("value must be finite", key)
        return AngleSweep.of([float(value)])
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"expected a number or [start, stop, step], got {value!r}", key)
    if any(isinstance(v, bool) or not isinstance(v, int | float) for v in value):
        raise ConfigError(f"range entries must be numbers, got {value!r}", key)
    start, stop, step = (float(v) for v in value)
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ConfigError("range entries must be finite", key)
    if step <= 0.0 or stop < start:
        raise ConfigError(f"empty sweep range {value!r}", key)
    # Small slack keeps the stop value when (stop - start) / step is integral.
    count = math.floor((stop - start) / step + 1e-9) + 1
    return AngleSweep.of([start + k * step for k in range(count)])


def _parse_experiment(table: dict[str, Any]) -> ExperimentSection:
    defaults = ExperimentSection()
    section = "experiment"
    return ExperimentSection(
        herald=_string(table, section, "herald", defaults.herald, HERALDS),
        gamma_deg=(
            angle_sweep(table["gamma_deg"], "experiment.gamma_deg")
            if "gamma_deg" in table
            else defaults.gamma_deg
        ),
        herald_qwp_deg=_number(table, section, "herald_qwp_deg", defaults.herald_qwp_deg),
        port=_string(table, section, "port", defaults.port, PORT_NAMES),
        qwp_a_deg=_number(table, section, "qwp_a_deg", None),
        qwp_b_deg=_number(table, section, "qwp_b_deg", None),
        alpha_deg=(
            angle_sweep(table["alpha_deg"], "experiment.alpha_deg")
            if "alpha_deg" in table
            else defaults.alpha_deg
        ),
        beta_deg=(
            angle_sweep(table["beta_deg"], "experiment.beta_deg")
            if "beta_deg" in table
            else defaults.beta_deg
        ),
    )


def _parse_chsh(table: dict[str, Any]) -> ChshSection:
    d = ChshSection()
    return ChshSection(
        a_deg=_number(table, "chsh", "a_deg", d.a_deg),
        a_prime_deg=_number(table, "chsh", "a_prime_deg", d.a_prime_deg),
        b_deg=_number(table, "chsh", "b_deg", d.b_deg),
        b_prime_deg=_number(table, "chsh", "b_prime_deg", d.b_prime_deg),
        maximize=_boolean(table, "chsh", "maximize", d.maximize),
    )


def _parse_montecarlo(table: dict[str, Any]) -> MonteCarloSection:
    d = MonteCarloSection()
    section = MonteCarloSection(
        n=_integer(table, "montecarlo", "n", d.n),
        seed=_integer(table, "montecarlo", "seed", d.seed),
        efficiency_a=_number(table, "montecarlo", "efficiency_a", d.efficiency_a),
        efficiency_b=_number(table, "montecarlo", "efficiency_b", d.efficiency_b),
        efficiency_h=_number(table, "montecarlo", "efficiency_h", d.efficiency_h),
        workers=_integer(table, "montecarlo", "workers", d.workers),
        progress=_boolean(table, "montecarlo", "progress", d.progress),
    )
    if section.n < 1:
        raise ConfigError(f"must be at least 1, got {section.n}", "montecarlo.n")
    if section.workers < 1:
        raise ConfigError(f"must be at least 1, got {section.workers}", "montecarlo.workers")
    if not 0 <= section.seed < 2**64:
        raise ConfigError("must be a 64-bit unsigned integer", "montecarlo.seed")
    for key in ("efficiency_a", "efficiency_b", "efficiency_h"):
        value = getattr(section, key)
        if not 0.0 < value <= 1.0:
            raise ConfigError(f"must lie in (0, 1], got {value}", f"montecarlo.{key}")
    return section


def _parse_crystal(table: dict[str, Any]) -> CrystalSection:
    d = CrystalSection()
    section = CrystalSection(
        name=_string(table, "crystal", "name", d.name),
        pump_nm=_number(table, "crystal", "pump_nm", d.pump_nm),
        length_mm=_number(table, "crystal", "length_mm", None),
    )
    if section.pump_nm <= 0.0:
        raise ConfigError("must be positive", "crystal.pump_nm")
    if section.length_mm is not None and section.length_mm <= 0.0:
        raise ConfigError("must be positive", "crystal.length_mm")
    return section


def _parse_tomography(table: dict[str, Any]) -> TomographySection:
    bases = table.get("bases")
    if bases is not None and (
        not isinstance(bases, list) or not all(isinstance(b, str) for b in bases)
    ):
        raise ConfigError("expected a list of basis pairs such as \"hv/da\"", "tomography.bases")
    return TomographySection(
        state=_string(table, "tomography", "state", "heralded", TOMOGRAPHY_STATES),
        bases=None if bases is None else tuple(bases),
    )


def _parse_geometry(table: dict[str, Any]) -> GeometrySection:
    d = GeometrySection()
    return GeometrySection(
        phi_deg=_number(table, "geometry", "phi_deg", d.phi_deg),
        ring_deg=_number(table, "geometry", "ring_deg", d.ring_deg),
        azimuth_deg=_number(table, "geometry", "azimuth_deg", d.azimuth_deg),
        pump_diameter_mm=_number(table, "geometry", "pump_diameter_mm", d.pump_diameter_mm),
        crystal_length_mm=_number(table, "geometry", "crystal_length_mm", d.crystal_length_mm),
        waveplate_length_mm=_number(
            table, "geometry", "waveplate_length_mm", d.waveplate_length_mm
        ),
    )


__all__ = [
    "AngleSweep",
    "ChshSection",
    "CrystalSection",
    "ExperimentSection",
    "GeometrySection",
    "MonteCarloSection",
    "RunConfig",
    "TomographySection",
    "angle_sweep",
    "load_run_config",
    "parse_run_config",
]
