"""Forward and inverse spectral geometry of Kerr-Newman event horizons."""

__version__ = "0.1.0"

from .errors import (
    ChargeTooLarge,
    ConvergenceFailure,
    DomainError,
    HorizonAbsent,
    HorizonSpecError,
    InvalidPhysicalParams,
    InvalidTraces,
    NonPositiveEigenvalue,
    NonPositiveMass,
    TailModelRejected,
    ZeroTrace,
)
from .horizon import (
    MetricProfile,
    PhysicalParams,
    SmarrShape,
    area,
    gauss_curvature,
    physical_from_smarr,
    profile,
    r_plus,
    smarr_from_physical,
    validate,
)
from .inverse import (
    ReconstructionReport,
    TraceSet,
    physical_from_traces,
    reconstruct_metric,
    roundtrip,
    shape_from_traces,
    traces_closed_form,
)
from .spectral import (
    ModeSpectrum,
    TraceEstimate,
    assemble,
    eigenvalues,
    s1_trace_integral,
    trace_numeric,
)
