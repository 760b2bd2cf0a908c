from __future__ import annotations

import numpy as np

from ..errors import DomainError


def as_float(x):
    """Array view of ``x`` plus a function that restores scalar-ness."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return arr, float
    return arr, np.asarray


def require(cond, message: str) -> None:
    if not np.all(cond):
        raise DomainError(message)
