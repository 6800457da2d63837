from __future__ import annotations

from collections.abc import Iterable

SIGNIFICANT_DIGITS = 12


def fmt_number(value: float) -> str:
    text = f"{float(value):.{SIGNIFICANT_DIGITS}g}"
    # Avoid "-0" in goldens.
    if text in ("-0", "-0.0"):
        return "0"
    return text


def csv_line(fields: Iterable[object]) -> str:
    parts: list[str] = []
    for field in fields:
        if isinstance(field, float):
            parts.append(fmt_number(field))
        else:
            parts.append(str(field))
    return ",".join(parts) + "\n"


__all__ = ["SIGNIFICANT_DIGITS", "csv_line", "fmt_number"]
