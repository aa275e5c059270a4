"""Associated Legendre functions normalized to unit L2 norm on [-1, 1].

No Condon-Shortley phase: the seed P~_m^m is positive on (-1, 1).
"""
from __future__ import annotations

import math

import numpy as np


def _seed_norm(m: int) -> float:
    # c_m^2 = (2m+1)! / (2^(2m+1) (m!)^2), built as a product to avoid overflow
    c2 = 0.5
    for i in range(1, m + 1):
        c2 *= (2 * i + 1) / (2 * i)
    return math.sqrt(c2)


def assoc_legendre_table(lmax: int, k: int, x) -> np.ndarray:
    """Values of P~_l^k(x) for l = |k| .. lmax, stacked along axis 0.

    Row ``i`` corresponds to degree ``l = |k| + i``.
    """
    m = abs(int(k))
    if lmax < m:
        raise ValueError(f"lmax={lmax} is below |k|={m}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    out = np.empty((lmax - m + 1,) + x.shape)
    sin_part = np.sqrt(np.clip((1.0 - x) * (1.0 + x), 0.0, None))
    out[0] = _seed_norm(m) * sin_part**m
    if lmax == m:
        return out
    out[1] = math.sqrt(2 * m + 3) * x * out[0]
    for l in range(m + 2, lmax + 1):
        denom = l * l - m * m
        a = math.sqrt((4 * l * l - 1) / denom)
        b = math.sqrt((2 * l + 1) * ((l - 1) ** 2 - m * m) / ((2 * l - 3) * denom))
        i = l - m
        out[i] = a * x * out[i - 1] - b * out[i - 2]
    return out


def assoc_legendre_derivative_table(values: np.ndarray, k: int, x) -> np.ndarray:
    """(1 - x^2) d/dx P~_l^k(x) for the rows of ``values``.

    ``values`` must come from :func:`assoc_legendre_table` with the same
    ``k`` and ``x``.
    """
    m = abs(int(k))
    x = np.asarray(x, dtype=float)
    out = np.empty_like(values)
    out[0] = -m * x * values[0]
    for i in range(1, values.shape[0]):
        l = m + i
        c = math.sqrt((2 * l + 1) * (l * l - m * m) / (2 * l - 1))
        out[i] = -l * x * values[i] + c * values[i - 1]
    return out


def assoc_legendre_normalized(l: int, k: int, x: float) -> float:
    """Single value of the orthonormal associated Legendre function."""
    if l < abs(k):
        raise ValueError(f"degree l={l} must be >= |k|={abs(k)}")
    return float(assoc_legendre_table(l, k, x)[-1])
