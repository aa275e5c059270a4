"""Spectra of the equivariant operators L_k on a horizon shape.

L_k u = -(f u')' + k^2 u / f acts on L2([-1, 1], dx). The eigenvalues of
the horizon metric are those of L_k divided by eta^2. Discretization is
Galerkin in orthonormal associated Legendre functions, which diagonalize
L_k exactly on the round sphere (beta^2 = 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NonPositiveEigenvalue, TailModelRejected
from .horizon import SmarrShape
from .numerics import (
    SymMatrix,
    assoc_legendre_derivative_table,
    assoc_legendre_table,
    gauss_legendre,
    sym_eigenvalues,
)

MIN_BASIS = 8
CONVERGENCE_RTOL = 1e-8
TAIL_FIT_RTOL = 1e-3
TAIL_TERM_RTOL = 1e-14
MIN_TAIL_WINDOW = 8


@dataclass(frozen=True)
class ModeSpectrum:
    """Smallest positive eigenvalues of L_k on the physical horizon metric.

    For k = 0 the zero mode (constants) is not included.
    """

    k: int
    eigenvalues: np.ndarray
    basis_size: int
    shape: SmarrShape

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class TraceEstimate:
    k: int
    value: float
    partial_sum: float
    tail_correction: float
    modes_used: int
    tail_coefficients: tuple[float, float, float]
    tail_fit_residual: float


def default_basis_size(count: int) -> int:
    return 2 * count + 16


def _basis_degrees(k: int, n: int) -> tuple[int, int]:
    # k = 0 drops l = 0 so the constants never enter the space
    m = abs(k)
    first = 1 if m == 0 else m
    return first, first + n - 1


def assemble(k: int, shape: SmarrShape, basis_size: int) -> SymMatrix:
    """Galerkin matrix of L_k / eta^2 in the basis P~_l^{|k|}.

    With G_l = (1 - x^2) P~_l' the stiffness entries reduce to

        A_lm = 1/eta^2 * int [G_l G_m / D + k^2 D P~_l P~_m] / (1 - x^2) dx,

    where D = 1 - beta^2 (1 - x^2) so that f = (1 - x^2) / D. Both
    integrands are polynomials over a power of D, bounded on [-1, 1].
    """
    n = int(basis_size)
    if n < MIN_BASIS:
        raise ValueError(f"basis_size must be >= {MIN_BASIS}, got {n}")
    if not 0.0 <= shape.beta2 <= 0.5:
        raise ValueError(f"beta2 must lie in [0, 1/2], got {shape.beta2}")
    k = int(k)
    first, last = _basis_degrees(k, n)
    rule = gauss_legendre(2 * n + 16)
    x, w = rule.nodes, rule.weights

    vals = assoc_legendre_table(last, k, x)
    ders = assoc_legendre_derivative_table(vals, k, x)
    skip = first - abs(k)
    vals, ders = vals[skip:], ders[skip:]

    sin2 = (1.0 - x) * (1.0 + x)
    d = 1.0 - shape.beta2 * sin2
    weight = w / sin2
    stiff = (ders * (weight / d)) @ ders.T
    if k:
        stiff += (k * k) * ((vals * (weight * d)) @ vals.T)
    return SymMatrix.from_upper(stiff / shape.eta2)


def _lowest(k: int, shape: SmarrShape, count: int, n: int) -> np.ndarray:
    return sym_eigenvalues(assemble(k, shape, n))[:count]


def eigenvalues(
    k: int, shape: SmarrShape, count: int, basis_size: int | None = None
) -> ModeSpectrum:
    """The ``count`` smallest eigenvalues of L_k, checked by basis doubling."""
    count = int(count)
    if count < 1:
        raise ValueError("count must be positive")
    n = default_basis_size(count) if basis_size is None else int(basis_size)
    if n < 2 * count + MIN_BASIS:
        raise ValueError(f"basis_size {n} too small for {count} modes (need >= {2 * count + MIN_BASIS})")

    coarse = _lowest(k, shape, count, n)
    fine = _lowest(k, shape, count, 2 * n)
    rel = np.abs(coarse - fine) / np.abs(fine)
    worst = float(rel.max())
    if worst >= CONVERGENCE_RTOL:
        j = int(rel.argmax()) + 1
        raise ConvergenceFailure(
            f"k={k}: eigenvalue {j} changed by {worst:.3e} (relative) when doubling N={n}"
        )
    if coarse[0] <= 0.0:
        raise ConvergenceFailure(f"k={k}: non-positive eigenvalue {coarse[0]:g}")
    return ModeSpectrum(k=k, eigenvalues=coarse, basis_size=n, shape=shape)


def fit_tail_model(eigs, window: int) -> tuple[np.ndarray, float]:
    """Least-squares quadratic q(j) through the last ``window`` eigenvalues.

    Returns the coefficients (highest power first) and the maximum relative
    residual over the window. ``j`` is the 1-based mode index.
    """
    eigs = np.asarray(eigs, dtype=float)
    j = np.arange(len(eigs) - window + 1, len(eigs) + 1, dtype=float)
    y = eigs[-window:]
    # centered, scaled abscissa keeps the normal equations well conditioned
    c, s = j.mean(), j.std()
    t = (j - c) / s
    ct = np.polynomial.polynomial.polyfit(t, y, 2)
    a2 = ct[2] / s**2
    a1 = ct[1] / s - 2.0 * a2 * c
    a0 = ct[0] - ct[1] * c / s + a2 * c * c
    fitted = np.polynomial.polynomial.polyval(t, ct)
    resid = float(np.max(np.abs(fitted - y) / np.abs(y)))
    return np.array([a2, a1, a0]), resid


def _tail_sum(coeffs: np.ndarray, start: int, threshold: float) -> float:
    """Sum 1/q(j) for j >= start while the terms stay at or above ``threshold``."""
    a2, a1, a0 = coeffs
    vertex = -a1 / (2.0 * a2)
    if vertex >= start or (a2 * start + a1) * start + a0 <= 0.0:
        raise TailModelRejected("tail model is not positive and increasing beyond the window")
    # last index with q(j) <= 1/threshold; terms decrease monotonically past the vertex
    disc = a1 * a1 - 4.0 * a2 * (a0 - 1.0 / threshold)
    stop = int(math.floor((-a1 + math.sqrt(disc)) / (2.0 * a2)))
    total = 0.0
    chunk = 1 << 20
    for j0 in range(start, stop + 1, chunk):
        j = np.arange(j0, min(j0 + chunk, stop + 1), dtype=float)
        total += float(np.sum(1.0 / ((a2 * j + a1) * j + a0)))
    return total


def trace_numeric(spectrum: ModeSpectrum, tail_window: int = 12) -> TraceEstimate:
    """Green's operator trace sum_j 1/lambda_j from a truncated spectrum.

    The unresolved modes j > J are summed from a quadratic fitted to the
    last ``tail_window`` eigenvalues (one-dimensional Weyl growth).
    """
    eigs = np.asarray(spectrum.eigenvalues, dtype=float)
    w = int(tail_window)
    if w < MIN_TAIL_WINDOW:
        raise ValueError(f"tail window must be >= {MIN_TAIL_WINDOW}, got {w}")
    if len(eigs) < 3 * w:
        raise ValueError(f"need at least {3 * w} modes for window {w}, got {len(eigs)}")
    if np.any(eigs <= 0.0):
        raise NonPositiveEigenvalue("trace requires strictly positive eigenvalues")

    partial = float(np.sum(1.0 / eigs))
    coeffs, resid = fit_tail_model(eigs, w)
    if not resid < TAIL_FIT_RTOL:
        raise TailModelRejected(f"k={spectrum.k}: tail fit residual {resid:.3e} exceeds {TAIL_FIT_RTOL}")
    if not coeffs[0] > 0.0:
        raise TailModelRejected(f"k={spectrum.k}: fitted growth rate {coeffs[0]:g} is not positive")
    tail = _tail_sum(coeffs, len(eigs) + 1, TAIL_TERM_RTOL * partial)
    if not 0.0 <= tail < partial:
        raise TailModelRejected(f"k={spectrum.k}: tail {tail:g} dominates partial sum {partial:g}")
    return TraceEstimate(
        k=spectrum.k,
        value=partial + tail,
        partial_sum=partial,
        tail_correction=tail,
        modes_used=len(eigs),
        tail_coefficients=tuple(float(c) for c in coeffs),
        tail_fit_residual=resid,
    )


def s1_trace_integral(shape: SmarrShape) -> float:
    """eta^2 / 2 * int (1 - x^2) / f dx, the S^1-invariant trace, by quadrature."""
    rule = gauss_legendre(64)
    x = rule.nodes
    integrand = 1.0 - shape.beta2 * (1.0 - x) * (1.0 + x)
    return shape.eta2 * 0.5 * rule.integrate(integrand)
