"""Kerr-Newman horizon geometry in geometric units (G = c = 1).

Physical parameters (m, a, e) map to the Smarr scale and distortion
(eta^2, beta^2), which fix the horizon 2-metric

    ds^2 = eta^2 (dx^2 / f(x) + f(x) dphi^2),  f(x) = (1 - x^2) / (1 - beta^2 (1 - x^2)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChargeTooLarge, DomainError, HorizonAbsent, InvalidPhysicalParams, NonPositiveMass

EXTREMAL_RTOL = 1e-12


@dataclass(frozen=True)
class PhysicalParams:
    """Mass ``m``, spin per unit mass ``a`` and charge ``e``, all lengths."""

    m: float
    a: float = 0.0
    e: float = 0.0

    @property
    def discriminant(self) -> float:
        """m^2 - a^2 - e^2, clamped to zero inside the extremality tolerance."""
        m2 = self.m * self.m
        disc = m2 - self.a * self.a - self.e * self.e
        if disc < 0.0 and -disc <= EXTREMAL_RTOL * m2:
            return 0.0
        return disc

    @property
    def is_extremal(self) -> bool:
        return abs(self.m * self.m - self.a * self.a - self.e * self.e) <= EXTREMAL_RTOL * self.m * self.m


@dataclass(frozen=True)
class SmarrShape:
    """Scale ``eta2`` (length^2) and distortion ``beta2`` of the horizon metric."""

    eta2: float
    beta2: float

    def __post_init__(self):
        if not (self.eta2 > 0.0 and math.isfinite(self.eta2)):
            raise ValueError(f"eta2 must be positive, got {self.eta2}")
        if not (0.0 <= self.beta2 <= 0.5):
            raise ValueError(f"beta2 must lie in [0, 1/2], got {self.beta2}")

    def scaled(self, factor: float) -> "SmarrShape":
        return SmarrShape(self.eta2 * factor, self.beta2)


def _check_domain(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0) or np.any(np.isnan(x)):
        raise DomainError("x must lie in [-1, 1]")
    return x


@dataclass(frozen=True)
class MetricProfile:
    """The profile function f of a horizon shape, callable on [-1, 1].

    ``f`` is dimensionless; the physical metric carries the extra factor
    ``shape.eta2`` (see :meth:`coefficients`).
    """

    shape: SmarrShape

    def __call__(self, x):
        x = _check_domain(x)
        s = (1.0 - x) * (1.0 + x)
        with np.errstate(divide="ignore", invalid="ignore"):
            f = s / (1.0 - self.shape.beta2 * s)
        f = np.where(np.abs(x) == 1.0, 0.0, f)
        return f if f.ndim else float(f)

    def coefficients(self, x):
        """Metric components ``(g_xx, g_phiphi) = eta^2 (1/f, f)`` at interior ``x``."""
        f = np.asarray(self(x))
        if np.any(f == 0.0):
            raise DomainError("g_xx diverges at the poles x = +-1")
        g_xx = self.shape.eta2 / f
        g_pp = self.shape.eta2 * f
        if g_xx.ndim == 0:
            return float(g_xx), float(g_pp)
        return g_xx, g_pp


def validate(params: PhysicalParams) -> PhysicalParams:
    """Return ``params`` unchanged if they describe a black hole with a horizon."""
    if not params.m > 0.0:
        raise NonPositiveMass(f"mass must be positive, got m={params.m}")
    if params.a < 0.0 or params.e < 0.0:
        raise InvalidPhysicalParams("spin a and charge e must be non-negative")
    if params.discriminant < 0.0:
        raise HorizonAbsent(
            f"no horizon: m^2 = {params.m**2:g} < a^2 + e^2 = {params.a**2 + params.e**2:g}"
        )
    return params


def r_plus(params: PhysicalParams) -> float:
    """Outer horizon radius m + sqrt(m^2 - a^2 - e^2)."""
    validate(params)
    return params.m + math.sqrt(params.discriminant)


def smarr_from_physical(params: PhysicalParams) -> SmarrShape:
    r = r_plus(params)
    eta2 = r * r + params.a * params.a
    beta2 = params.a * params.a / eta2
    # a <= r_plus holds analytically; rounding at extremality can nudge past 1/2
    return SmarrShape(eta2, min(beta2, 0.5))


def physical_from_smarr(shape: SmarrShape, e: float = 0.0) -> PhysicalParams:
    """Invert :func:`smarr_from_physical` given the charge.

    Raises :class:`ChargeTooLarge` when ``r_plus^2 < a^2 + e^2``; the radius
    would then be the inner root of the horizon polynomial.
    """
    e = float(e)
    if e < 0.0:
        raise ValueError(f"charge must be non-negative, got {e}")
    a2 = shape.eta2 * shape.beta2
    r2 = shape.eta2 * (1.0 - shape.beta2)
    if not r2 > 0.0:
        raise ValueError("eta2 (1 - beta2) must be positive")
    _check_outer_root(r2, a2, e)
    r = math.sqrt(r2)
    m = (r2 + a2 + e * e) / (2.0 * r)
    return PhysicalParams(m=m, a=math.sqrt(a2), e=e)


def _check_outer_root(r2: float, a2: float, e: float) -> None:
    s = a2 + e * e
    if r2 < s and s - r2 > EXTREMAL_RTOL * s:
        raise ChargeTooLarge(
            f"charge e={e:g} too large: r_plus^2 = {r2:g} < a^2 + e^2 = {s:g}"
        )


def profile(shape: SmarrShape) -> MetricProfile:
    return MetricProfile(shape)


def gauss_curvature(shape: SmarrShape, x):
    """Gauss curvature -f''/(2 eta^2) in closed form."""
    x = _check_domain(x)
    b2 = shape.beta2
    denom = 1.0 - b2 * (1.0 - x * x)
    k = (1.0 - b2 * (1.0 + 3.0 * x * x)) / (shape.eta2 * denom**3)
    return k if k.ndim else float(k)


def area(shape: SmarrShape) -> float:
    return 4.0 * math.pi * shape.eta2
