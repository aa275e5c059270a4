"""Recover the horizon shape and black-hole parameters from Green's traces.

The traces of the horizon Laplacian's equivariant Green operators obey

    gamma_0 = eta^2 (1 - 2 beta^2 / 3),    gamma_k = eta^2 / |k|  (k != 0),

so any pair (gamma_0, gamma_k) pins down (eta^2, beta^2) and, for a given
charge, (m, a, r_plus).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from . import spectral
from .errors import ChargeTooLarge, InvalidTraces, ZeroTrace
from .horizon import (
    EXTREMAL_RTOL,
    MetricProfile,
    PhysicalParams,
    SmarrShape,
    physical_from_smarr,
    smarr_from_physical,
    validate,
)

CLAMP_TOL = 1e-9
CLOSED_FORM_RTOL = 1e-12
NUMERIC_RTOL = 1e-3


@dataclass(frozen=True)
class TraceSet:
    """S^1-invariant trace ``gamma0`` plus equivariant traces keyed by k != 0."""

    gamma0: float
    equivariant: Mapping[int, float]

    def __post_init__(self):
        eq = {int(k): float(v) for k, v in dict(self.equivariant).items()}
        if not eq:
            raise InvalidTraces("at least one equivariant trace (k != 0) is required")
        if 0 in eq:
            raise InvalidTraces("equivariant traces must have k != 0; pass gamma0 separately")
        if not self.gamma0 > 0.0:
            raise ZeroTrace(f"gamma0 must be positive, got {self.gamma0}")
        for k, v in eq.items():
            if not v > 0.0:
                raise ZeroTrace(f"gamma_{k} must be positive, got {v}")
        object.__setattr__(self, "gamma0", float(self.gamma0))
        object.__setattr__(self, "equivariant", dict(sorted(eq.items())))

    def scale(self, k: int) -> float:
        """eta^2 as seen by channel k, i.e. |k| gamma_k."""
        try:
            return abs(k) * self.equivariant[k]
        except KeyError:
            raise InvalidTraces(f"no trace stored for channel k={k}") from None

    def residuals(self, reference: int | None = None) -> dict[int, float]:
        """Relative deviation of each |k| gamma_k from the reference channel's."""
        ref_k = reference if reference is not None else next(iter(self.equivariant))
        ref = self.scale(ref_k)
        return {k: abs(abs(k) * v - ref) / ref for k, v in self.equivariant.items()}

    def check_consistency(self, rtol: float, reference: int | None = None) -> None:
        bad = {k: r for k, r in self.residuals(reference).items() if r > rtol}
        if bad:
            raise InvalidTraces(f"channels disagree on eta^2 beyond rtol={rtol:g}: {bad}")


@dataclass(frozen=True)
class ReconstructionReport:
    shape: SmarrShape
    physical: PhysicalParams
    r_plus: float
    area: float
    channel: int
    clamped_beta2: bool
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def mass_from_spectrum_alone(self) -> bool:
        """Only an uncharged hole has its mass fixed by the traces alone."""
        return self.physical.e == 0.0

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "clamped_beta2": self.clamped_beta2,
            "extremal": self.physical.is_extremal,
            "mass_from_spectrum_alone": self.mass_from_spectrum_alone,
        }


def traces_closed_form(shape: SmarrShape, k_max: int = 1) -> TraceSet:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    gamma0 = shape.eta2 * (1.0 - 2.0 * shape.beta2 / 3.0)
    return TraceSet(gamma0, {k: shape.eta2 / k for k in range(1, k_max + 1)})


def _shape_and_clamp(traces: TraceSet, channel: int) -> tuple[SmarrShape, bool]:
    if channel == 0:
        raise ValueError("channel must be nonzero")
    eta2 = traces.scale(channel)
    beta2 = 1.5 * (1.0 - traces.gamma0 / eta2)
    clamped = False
    if beta2 < 0.0:
        if beta2 < -CLAMP_TOL:
            raise InvalidTraces(
                f"beta^2 = {beta2:.6g} < 0: gamma0 = {traces.gamma0:g} exceeds eta^2 = {eta2:g}"
            )
        beta2, clamped = 0.0, True
    elif beta2 > 0.5:
        if beta2 > 0.5 + CLAMP_TOL:
            raise InvalidTraces(f"beta^2 = {beta2:.6g} > 1/2: no Kerr-Newman horizon has this shape")
        beta2 = 0.5
    return SmarrShape(eta2, beta2), clamped


def shape_from_traces(traces: TraceSet, channel: int = 1) -> SmarrShape:
    """Scale and distortion from gamma_0 and the trace of ``channel``."""
    return _shape_and_clamp(traces, channel)[0]


def reconstruct_metric(traces: TraceSet, channel: int = 1) -> MetricProfile:
    """Horizon metric profile; :meth:`MetricProfile.coefficients` gives the line element."""
    return MetricProfile(shape_from_traces(traces, channel))


def physical_from_traces(
    traces: TraceSet,
    charge: float = 0.0,
    channel: int = 1,
    consistency_rtol: float | None = None,
) -> ReconstructionReport:
    """Spin, horizon radius, mass and area from the traces.

    The charge is an input: with ``charge > 0`` the mass is not fixed by the
    spectrum alone.
    """
    charge = float(charge)
    if charge < 0.0:
        raise ValueError(f"charge must be non-negative, got {charge}")
    if consistency_rtol is not None:
        traces.check_consistency(consistency_rtol, reference=channel)
    shape, clamped = _shape_and_clamp(traces, channel)
    g0, g1 = traces.gamma0, shape.eta2

    r2 = 0.5 * (3.0 * g0 - g1)
    if not r2 > 0.0:
        raise InvalidTraces(f"r_plus^2 = {r2:g} <= 0: 3 gamma0 must exceed gamma_1")
    a2 = 0.0 if clamped else 1.5 * (g1 - g0)
    if a2 < 0.0:
        a2 = 0.0
    if a2 > r2:
        # beta^2 was clamped down to 1/2
        a2 = r2
    s = a2 + charge * charge
    if r2 < s and s - r2 > EXTREMAL_RTOL * s:
        raise ChargeTooLarge(
            f"charge e={charge:g} too large for these traces: r_plus^2 = {r2:g} < a^2 + e^2 = {s:g}"
        )
    m = (g1 + charge * charge) / math.sqrt(6.0 * g0 - 2.0 * g1)
    physical = PhysicalParams(m=m, a=math.sqrt(a2), e=charge)
    area = 4.0 * math.pi * g1

    via_shape = physical_from_smarr(shape, charge)
    residuals = {f"channel_{k}": r for k, r in traces.residuals(channel).items()}
    residuals["mass_vs_shape"] = abs(via_shape.m - m) / m
    return ReconstructionReport(
        shape=shape,
        physical=physical,
        r_plus=math.sqrt(r2),
        area=area,
        channel=channel,
        clamped_beta2=clamped,
        residuals=residuals,
    )


@dataclass(frozen=True)
class RoundTrip:
    params: PhysicalParams
    report: ReconstructionReport
    numeric: bool
    estimates: dict[int, spectral.TraceEstimate] | None = None

    @property
    def deviation(self) -> float:
        """Largest relative error over (m, a); absolute error for a when a = 0."""
        dm = abs(self.report.physical.m - self.params.m) / self.params.m
        da = abs(self.report.physical.a - self.params.a)
        if self.params.a:
            da /= self.params.a
        return max(dm, da)

    @property
    def tolerance(self) -> float:
        return NUMERIC_RTOL if self.numeric else CLOSED_FORM_RTOL

    @property
    def ok(self) -> bool:
        return self.deviation < self.tolerance


def numeric_traces(
    shape: SmarrShape,
    channels=(1,),
    count: int = 60,
    basis_size: int | None = None,
    tail_window: int = 12,
) -> tuple[TraceSet, dict[int, spectral.TraceEstimate]]:
    """Estimate gamma_0 and gamma_k for ``channels`` from computed spectra."""
    estimates = {}
    for k in (0, *channels):
        spec = spectral.eigenvalues(k, shape, count, basis_size)
        estimates[k] = spectral.trace_numeric(spec, tail_window)
    traces = TraceSet(estimates[0].value, {k: estimates[k].value for k in channels})
    return traces, estimates


def roundtrip(
    params: PhysicalParams,
    numeric: bool = False,
    count: int = 60,
    basis_size: int | None = None,
    tail_window: int = 12,
) -> RoundTrip:
    """Forward map to traces, then invert back to (m, a)."""
    validate(params)
    shape = smarr_from_physical(params)
    if numeric:
        traces, estimates = numeric_traces(shape, (1,), count, basis_size, tail_window)
    else:
        traces, estimates = traces_closed_form(shape, 1), None
    report = physical_from_traces(traces, charge=params.e, channel=1)
    return RoundTrip(params=params, report=report, numeric=numeric, estimates=estimates)
