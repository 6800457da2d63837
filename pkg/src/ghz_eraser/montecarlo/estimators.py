from __future__ import annotations

import math
from collections.abc import Sequence

from ..errors import ContractError
from ..protocol import HeraldPort, Outcome
from .sampling import CountsTable


def _port_total(table: CountsTable, port: HeraldPort | None) -> int:
    total = table.port_total(port)
    if total == 0:
        label = "direct" if port is None else port.label
        raise ContractError(f"no detected triples at herald port {label}")
    return total


def estimate_coincidence_prob(
    table: CountsTable, port: HeraldPort | None = None
) -> tuple[float, float]:
    """Fraction of (+, +) among detections at `port`, with its binomial standard error."""
    total = _port_total(table, port)
    p_hat = table.count(port, Outcome.PLUS, Outcome.PLUS) / total
    return p_hat, math.sqrt(max(0.0, p_hat * (1.0 - p_hat)) / total)


def estimate_correlation(
    table: CountsTable, port: HeraldPort | None = None
) -> tuple[float, float]:
    total = _port_total(table, port)
    same = table.count(port, Outcome.PLUS, Outcome.PLUS) + table.count(
        port, Outcome.MINUS, Outcome.MINUS
    )
    e_hat = (2 * same - total) / total
    return e_hat, math.sqrt(max(0.0, 1.0 - e_hat * e_hat) / total)


def estimate_chsh(
    tables: Sequence[CountsTable], port: HeraldPort | None = None
) -> tuple[float, float]:
    """S from tables at (a, b), (a, b'), (a', b), (a', b'); errors add in quadrature."""
    if len(tables) != 4:
        raise ContractError(f"CHSH needs four tables, got {len(tables)}")
    ports = tables[0].ports
    if any(table.ports != ports for table in tables[1:]):
        raise ContractError("CHSH tables do not share one herald configuration")
    estimates = [estimate_correlation(table, port) for table in tables]
    signs = (1.0, -1.0, 1.0, 1.0)
    s_hat = abs(sum(sign * e for sign, (e, _) in zip(signs, estimates, strict=True)))
    stderr = math.sqrt(sum(se * se for _, se in estimates))
    return s_hat, stderr


__all__ = ["estimate_chsh", "estimate_coincidence_prob", "estimate_correlation"]
