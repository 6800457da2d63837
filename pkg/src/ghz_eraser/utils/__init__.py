from .angles import deg, rad, require_finite, require_positive
from .formatting import SIGNIFICANT_DIGITS, csv_line, fmt_number

__all__ = [
    "SIGNIFICANT_DIGITS",
    "csv_line",
    "deg",
    "fmt_number",
    "rad",
    "require_finite",
    "require_positive",
]
