from __future__ import annotations

import math

from ..errors import ContractError


def deg(value_rad: float) -> float:
    return math.degrees(value_rad)


def rad(value_deg: float) -> float:
    return math.radians(value_deg)


def require_finite(value: float, name: str) -> float:
    try:
        as_float = float(value)
    except (TypeError, ValueError) as exc:
        raise ContractError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(as_float):
        raise ContractError(f"{name} must be finite, got {as_float}")
    return as_float


def require_positive(value: float, name: str) -> float:
    as_float = require_finite(value, name)
    if as_float <= 0.0:
        raise ContractError(f"{name} must be positive, got {as_float}")
    return as_float


__all__ = ["deg", "rad", "require_finite", "require_positive"]
