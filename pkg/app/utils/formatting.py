# app/utils/formatting.py
from typing import Iterable, Optional

SIGNIFICANT_DIGITS = 6


def round_sig(x: Optional[float], digits: int = SIGNIFICANT_DIGITS) -> Optional[float]:
    """Round to a fixed number of significant digits (stable text output)."""
    if x is None:
        return None
    return float(f"{x:.{digits}g}")


def format_values(values: Iterable[float]) -> str:
    """'9,3,7,1,5' for (9.0, 3.0, 7.0, 1.0, 5.0); non-integers keep their digits."""
    return ",".join(f"{v:.{SIGNIFICANT_DIGITS}g}" for v in values)


def format_indexes(indexes: Iterable[int]) -> str:
    return ",".join(str(i) for i in indexes)
