"""Input checks for array-like contexts passed to the estimator."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

import numpy as np

from .values import as_value, from_stars, parse_value


def to_value(x, stars=None) -> Fraction:
    """Convert one cell to an exact value.

    Floats go through their shortest decimal repr, so ``0.8`` becomes
    ``4/5`` rather than the nearest binary fraction.
    """
    if stars is not None:
        if isinstance(x, (Integral, np.integer)) and not isinstance(x, bool):
            return from_stars(int(x), stars)
        if isinstance(x, (float, np.floating)) and float(x).is_integer():
            return from_stars(int(x), stars)
        if isinstance(x, str) and x.strip().isdigit():
            return from_stars(int(x), stars)
        raise ValueError(f"star rating must be an integer, got {x!r}")
    if isinstance(x, (float, np.floating)):
        if not np.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return parse_value(repr(float(x)))
    if isinstance(x, np.integer):
        x = int(x)
    return as_value(x)


def check_context(X, stars=None):
    """Validate a 2-D context and return ``(values, row_labels, col_labels)``.

    ``values`` is an object array of :class:`Fraction`. Labels come from a
    DataFrame's index and columns when available, otherwise ``x0, x1, ...``
    and ``y0, y1, ...``.
    """
    rows = cols = None
    if hasattr(X, "columns") and hasattr(X, "index"):
        rows = [str(r) for r in X.index]
        cols = [str(c) for c in X.columns]
        X = X.to_numpy(dtype=object)
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D context, got an array with {arr.ndim} dimension(s)")
    n, m = arr.shape
    if n == 0 or m == 0:
        raise ValueError(f"context of shape {arr.shape} is empty")
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            try:
                out[i, j] = to_value(arr[i, j], stars)
            except (TypeError, ValueError) as e:
                raise ValueError(f"cell ({i}, {j}): {e}") from None
    if rows is None:
        rows = [f"x{i}" for i in range(n)]
    if cols is None:
        cols = [f"y{j}" for j in range(m)]
    return out, rows, cols
