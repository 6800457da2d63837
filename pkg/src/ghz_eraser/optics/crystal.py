from __future__ import annotations

import enum
import math
import re
import shlex
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ContractError, CrystalDataError, UnknownCrystalError, WavelengthRangeError
from ..utils import require_positive

DATA_VERSION = 1


class RayType(enum.Enum):
    ORDINARY = "ordinary"
    EXTRAORDINARY = "extraordinary"  # principal index, propagation normal to the axis


class CrystalSign(enum.Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    ISOTROPIC = "isotropic"


@dataclass(frozen=True, slots=True)
class SellmeierCoefficients:
    """n^2 = a + sum(b_i l^2 / (l^2 - c_i)) with l in micrometres."""

    a: float
    terms: tuple[tuple[float, float], ...]
    min_um: float
    max_um: float
    source: str = ""

    def index(self, wavelength_um: float) -> float:
        if not self.min_um <= wavelength_um <= self.max_um:
            raise WavelengthRangeError(
                f"wavelength {wavelength_um * 1000.0:.6g} nm outside fit range "
                f"{self.min_um * 1000.0:.6g}-{self.max_um * 1000.0:.6g} nm"
            )
        l2 = wavelength_um * wavelength_um
        n2 = self.a + sum(b * l2 / (l2 - c) for b, c in self.terms)
        if not 1.0 < n2 < 9.0:
            raise ContractError(f"Sellmeier fit gives n^2 = {n2:.6g} at {wavelength_um:.6g} um")
        return math.sqrt(n2)


@dataclass(frozen=True, slots=True)
class UniaxialCrystal:
    name: str
    ordinary: SellmeierCoefficients
    extraordinary: SellmeierCoefficients
    sign: CrystalSign = CrystalSign.NEGATIVE

    @property
    def min_um(self) -> float:
        return max(self.ordinary.min_um, self.extraordinary.min_um)

    @property
    def max_um(self) -> float:
        return min(self.ordinary.max_um, self.extraordinary.max_um)

    def principal_index(self, wavelength_nm: float, ray: RayType | str) -> float:
        wavelength_nm = require_positive(wavelength_nm, "wavelength")
        coeffs = self.ordinary if RayType(ray) is RayType.ORDINARY else self.extraordinary
        return coeffs.index(wavelength_nm / 1000.0)


def refractive_index(crystal: UniaxialCrystal, wavelength_nm: float, ray: RayType | str) -> float:
    return crystal.principal_index(wavelength_nm, ray)


@dataclass(slots=True)
class CrystalCatalog:
    crystals: dict[str, UniaxialCrystal] = field(default_factory=dict)
    path: str = ""

    def names(self) -> list[str]:
        return sorted(self.crystals)

    def get(self, name: str) -> UniaxialCrystal:
        crystal = self.crystals.get(name.lower())
        if crystal is None:
            available = ", ".join(self.names()) or "none"
            raise UnknownCrystalError(f"unknown crystal {name!r} (available: {available})")
        return crystal


def read_crystal_data(path: str | Path) -> CrystalCatalog:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise CrystalDataError(f"cannot read crystal data: {exc.strerror}", str(path)) from exc
    return read_crystal_text(text, str(path))


def read_crystal_text(text: str, path: str = "<string>") -> CrystalCatalog:
    return _CrystalDataParser(text, path).parse()


@dataclass(slots=True)
class _PendingCrystal:
    sign: CrystalSign
    line_no: int
    rays: dict[RayType, SellmeierCoefficients] = field(default_factory=dict)


class _CrystalDataParser:
    _TERM_KEY = re.compile(r"^([BC])(\d+)$")
    _SIGN_SAMPLES = 65

    def __init__(self, text: str, path: str):
        self.text = text
        self.path = path
        self.version: int | None = None
        self.pending: dict[str, _PendingCrystal] = {}

    def parse(self) -> CrystalCatalog:
        for line_no, line in enumerate(self.text.splitlines(), start=1):
            try:
                tokens = shlex.split(line, comments=True)
            except ValueError as exc:
                raise self._error(str(exc), line_no) from exc
            if not tokens:
                continue
            keyword, args = tokens[0], tokens[1:]
            if keyword == "version":
                self._parse_version(args, line_no)
            elif self.version is None:
                raise self._error("data must start with a version record", line_no)
            elif keyword == "crystal":
                self._parse_crystal(args, line_no)
            elif keyword == "index":
                self._parse_index(args, line_no)
            else:
                raise self._error(f"unknown record type {keyword!r}", line_no)

        if self.version is None:
            raise self._error("missing version record", 0)
        catalog = CrystalCatalog(path=self.path)
        for name, pending in self.pending.items():
            catalog.crystals[name] = self._finish(name, pending)
        return catalog

    def _error(self, message: str, line_no: int) -> CrystalDataError:
        return CrystalDataError(message, self.path, line_no)

    def _parse_version(self, args: list[str], line_no: int) -> None:
        if self.version is not None:
            raise self._error("duplicate version record", line_no)
        if len(args) != 1 or not args[0].isdigit():
            raise self._error("version record takes one integer", line_no)
        version = int(args[0])
        if version != DATA_VERSION:
            raise self._error(f"unsupported data version {version}", line_no)
        self.version = version

    def _parse_crystal(self, args: list[str], line_no: int) -> None:
        if len(args) != 2:
            raise self._error("crystal record takes a name and a sign", line_no)
        name, sign_text = args[0].lower(), args[1].lower()
        if name in self.pending:
            raise self._error(f"crystal {name!r} declared twice", line_no)
        try:
            sign = CrystalSign(sign_text)
        except ValueError as exc:
            raise self._error(f"unknown crystal sign {sign_text!r}", line_no) from exc
        self.pending[name] = _PendingCrystal(sign, line_no)

    def _parse_index(self, args: list[str], line_no: int) -> None:
        if len(args) < 2:
            raise self._error("index record needs a crystal name and a ray type", line_no)
        name, ray_text = args[0].lower(), args[1].lower()
        pending = self.pending.get(name)
        if pending is None:
            raise self._error(f"index for undeclared crystal {name!r}", line_no)
        try:
            ray = RayType(ray_text)
        except ValueError as exc:
            raise self._error(f"unknown ray type {ray_text!r}", line_no) from exc
        if ray in pending.rays:
            raise self._error(f"duplicate {ray.value} index for {name!r}", line_no)
        pending.rays[ray] = self._parse_coefficients(args[2:], line_no)

    def _parse_coefficients(self, fields: list[str], line_no: int) -> SellmeierCoefficients:
        values: dict[str, str] = {}
        for item in fields:
            key, sep, value = item.partition("=")
            if not sep or not value:
                raise self._error(f"expected key=value, got {item!r}", line_no)
            if key in values:
                raise self._error(f"duplicate key {key!r}", line_no)
            values[key] = value

        source = values.pop("source", "")
        if not source:
            raise self._error("index record needs a source citation", line_no)
        if "range" not in values:
            raise self._error("index record needs range=<min>:<max>", line_no)
        min_um, max_um = self._parse_range(values.pop("range"), line_no)
        if "A" not in values:
            raise self._error("index record needs an A coefficient", line_no)
        a = self._number(values.pop("A"), "A", line_no)

        b_terms: dict[int, float] = {}
        c_terms: dict[int, float] = {}
        for key, value in values.items():
            match = self._TERM_KEY.match(key)
            if match is None:
                raise self._error(f"unknown coefficient {key!r}", line_no)
            target = b_terms if match.group(1) == "B" else c_terms
            target[int(match.group(2))] = self._number(value, key, line_no)
        if set(b_terms) != set(c_terms):
            raise self._error("every B<i> coefficient needs a matching C<i>", line_no)
        terms = tuple((b_terms[i], c_terms[i]) for i in sorted(b_terms))
        for _, c in terms:
            if min_um * min_um <= c <= max_um * max_um:
                raise self._error("Sellmeier pole lies inside the valid range", line_no)
        return SellmeierCoefficients(a, terms, min_um, max_um, source)

    def _parse_range(self, text: str, line_no: int) -> tuple[float, float]:
        low, sep, high = text.partition(":")
        if not sep:
            raise self._error(f"range must be <min>:<max>, got {text!r}", line_no)
        min_um = self._number(low, "range", line_no)
        max_um = self._number(high, "range", line_no)
        if not 0.0 < min_um < max_um:
            raise self._error(f"invalid range {text!r}", line_no)
        return min_um, max_um

    def _number(self, text: str, key: str, line_no: int) -> float:
        try:
            value = float(text)
        except ValueError as exc:
            raise self._error(f"{key}: not a number: {text!r}", line_no) from exc
        if not math.isfinite(value):
            raise self._error(f"{key}: value must be finite", line_no)
        return value

    def _finish(self, name: str, pending: _PendingCrystal) -> UniaxialCrystal:
        for ray in RayType:
            if ray not in pending.rays:
                raise self._error(f"crystal {name!r} has no {ray.value} index", pending.line_no)
        crystal = UniaxialCrystal(
            name, pending.rays[RayType.ORDINARY], pending.rays[RayType.EXTRAORDINARY], pending.sign
        )
        if crystal.min_um >= crystal.max_um:
            raise self._error(f"crystal {name!r} index ranges do not overlap", pending.line_no)

        # Birefringence sign must hold across the whole shared range.
        samples = np.linspace(crystal.min_um, crystal.max_um, self._SIGN_SAMPLES)
        delta = np.array(
            [crystal.extraordinary.index(um) - crystal.ordinary.index(um) for um in samples]
        )
        if pending.sign is CrystalSign.NEGATIVE:
            ok = bool(np.all(delta < 0.0))
        elif pending.sign is CrystalSign.POSITIVE:
            ok = bool(np.all(delta > 0.0))
        else:
            ok = bool(np.all(np.abs(delta) < 1e-12))
        if not ok:
            raise self._error(
                f"crystal {name!r} indices contradict its {pending.sign.value} sign",
                pending.line_no,
            )
        return crystal


__all__ = [
    "DATA_VERSION",
    "CrystalCatalog",
    "CrystalSign",
    "RayType",
    "SellmeierCoefficients",
    "UniaxialCrystal",
    "read_crystal_data",
    "read_crystal_text",
    "refractive_index",
]
