"""Command-line front end.

All quantities use geometric units (G = c = 1): m, a, e are lengths in one
arbitrary unit, eta2 and traces are lengths squared, eigenvalues inverse
lengths squared.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, horizon, inverse, spectral
from .errors import ConvergenceFailure, InvalidPhysicalParams, InvalidTraces
from .horizon import PhysicalParams, SmarrShape

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_PHYSICAL = 2
EXIT_CONVERGENCE = 3
EXIT_TRACES = 4

PROFILE_SAMPLES = 101


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def render(report: dict, fmt: str) -> str:
    report = _jsonable(report)
    if fmt == "json":
        return json.dumps(report, indent=2, allow_nan=False) + "\n"
    lines = ["key,value"] + [f"{k},{_csv_value(v)}" for k, v in _flatten(report)]
    return "\n".join(lines) + "\n"


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> PhysicalParams:
    return horizon.validate(PhysicalParams(m=args.m, a=args.a, e=args.charge))


def _shape_dict(shape: SmarrShape) -> dict:
    return {"eta2": shape.eta2, "beta2": shape.beta2}


def _physical_dict(p: PhysicalParams, r_plus: float, area: float) -> dict:
    return {"m": p.m, "a": p.a, "e": p.e, "r_plus": r_plus, "area": area}


def _report_dict(rep: inverse.ReconstructionReport) -> dict:
    return {
        "shape": _shape_dict(rep.shape),
        "physical": _physical_dict(rep.physical, rep.r_plus, rep.area),
        "flags": {"channel": rep.channel, **rep.flags},
        "residuals": dict(rep.residuals),
    }


# -- commands -----------------------------------------------------------------


def cmd_forward(args) -> int:
    params = _params(args)
    shape = horizon.smarr_from_physical(params)
    prof = horizon.profile(shape)
    xs = np.linspace(-1.0, 1.0, PROFILE_SAMPLES)
    report = {
        "input": {"m": args.m, "a": args.a, "e": args.charge},
        "shape": {
            **_shape_dict(shape),
            "curvature": {
                "south_pole": horizon.gauss_curvature(shape, -1.0),
                "equator": horizon.gauss_curvature(shape, 0.0),
                "north_pole": horizon.gauss_curvature(shape, 1.0),
            },
            "profile": {"x": xs.tolist(), "f": prof(xs).tolist()},
        },
        "physical": _physical_dict(params, horizon.r_plus(params), horizon.area(shape)),
        "flags": {"extremal": params.is_extremal},
        "residuals": {},
    }
    emit(render(report, args.format), args.out)
    return EXIT_OK


def write_spectrum_csv(spectra: list[spectral.ModeSpectrum], params: PhysicalParams | None = None) -> str:
    shape = spectra[0].shape
    buf = io.StringIO()
    buf.write("# horizonspec spectrum\n")
    buf.write(f"# eta2={shape.eta2!r} beta2={shape.beta2!r}\n")
    if params is not None:
        buf.write(f"# m={params.m!r} a={params.a!r} e={params.e!r}\n")
    buf.write("# " + " ".join(f"N{s.k}={s.basis_size}" for s in spectra) + "\n")
    buf.write("k,j,lambda\n")
    for s in spectra:
        for j, lam in enumerate(s.eigenvalues, start=1):
            buf.write(f"{s.k},{j},{float(lam)!r}\n")
    return buf.getvalue()


def read_spectrum_csv(text: str) -> list[spectral.ModeSpectrum]:
    """Parse the output of ``spectrum`` back into ModeSpectrum objects."""
    meta: dict[str, str] = {}
    rows: dict[int, list[tuple[int, float]]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    key, val = tok.split("=", 1)
                    meta[key] = val
            continue
        if line.replace(" ", "") == "k,j,lambda":
            continue
        k, j, lam = line.split(",")
        rows.setdefault(int(k), []).append((int(j), float(lam)))
    if "eta2" not in meta or "beta2" not in meta:
        raise InvalidTraces("spectrum file lacks the '# eta2=... beta2=...' header")
    shape = SmarrShape(float(meta["eta2"]), float(meta["beta2"]))
    out = []
    for k, entries in rows.items():
        entries.sort()
        if [j for j, _ in entries] != list(range(1, len(entries) + 1)):
            raise InvalidTraces(f"mode indices for k={k} are not 1..J")
        eigs = np.array([lam for _, lam in entries])
        out.append(spectral.ModeSpectrum(k, eigs, int(meta.get(f"N{k}", 0)), shape))
    return out


def cmd_spectrum(args) -> int:
    params = _params(args)
    shape = horizon.smarr_from_physical(params)
    n = args.N if args.N is not None else spectral.default_basis_size(args.J)
    spectra = [spectral.eigenvalues(k, shape, args.J, n) for k in args.k]
    if args.format == "csv":
        text = write_spectrum_csv(spectra, params)
    else:
        text = render(
            {
                "input": {"m": args.m, "a": args.a, "e": args.charge, "J": args.J, "N": n},
                "shape": _shape_dict(shape),
                "spectral": {str(s.k): s.eigenvalues.tolist() for s in spectra},
                "flags": {"extremal": params.is_extremal},
                "residuals": {},
            },
            "json",
        )
    emit(text, args.out)
    return EXIT_OK


def cmd_traces(args) -> int:
    spectra = read_spectrum_csv(Path(args.spectrum).read_text(encoding="utf-8"))
    estimates = {}
    for s in spectra:
        window = args.window if args.window is not None else max(spectral.MIN_TAIL_WINDOW, min(12, len(s) // 3))
        estimates[s.k] = spectral.trace_numeric(s, window)
    report = {
        "input": {"spectrum": str(args.spectrum)},
        "shape": _shape_dict(spectra[0].shape),
        "spectral": {
            str(k): {
                "value": e.value,
                "partial_sum": e.partial_sum,
                "tail_correction": e.tail_correction,
                "modes_used": e.modes_used,
                "tail_fit_residual": e.tail_fit_residual,
            }
            for k, e in sorted(estimates.items())
        },
        "traces": {
            "gamma0": estimates[0].value if 0 in estimates else None,
            "gamma": {str(k): e.value for k, e in sorted(estimates.items()) if k != 0},
        },
        "flags": {},
        "residuals": {},
    }
    emit(render(report, args.format), args.out)
    return EXIT_OK


def _parse_gamma(items: list[str]) -> dict[int, float]:
    out = {}
    for item in items:
        try:
            k, v = item.split(":", 1)
            out[int(k)] = float(v)
        except ValueError:
            raise InvalidTraces(f"cannot parse --gamma {item!r}; expected K:VALUE") from None
    return out


def _load_traces(args) -> inverse.TraceSet:
    gamma0 = args.gamma0
    gamma = _parse_gamma(args.gamma or [])
    if args.traces:
        doc = json.loads(Path(args.traces).read_text(encoding="utf-8"))
        doc = doc.get("traces", doc)
        if gamma0 is None:
            gamma0 = doc.get("gamma0")
        for k, v in doc.get("gamma", {}).items():
            gamma.setdefault(int(k), float(v))
    if gamma0 is None:
        raise InvalidTraces("gamma0 is required (--gamma0 or --traces)")
    return inverse.TraceSet(gamma0, gamma)


def cmd_invert(args) -> int:
    traces = _load_traces(args)
    rep = inverse.physical_from_traces(traces, charge=args.charge, channel=args.channel)
    report = {
        "input": {
            "gamma0": traces.gamma0,
            "gamma": {str(k): v for k, v in traces.equivariant.items()},
            "charge": args.charge,
            "channel": args.channel,
        },
        **_report_dict(rep),
    }
    emit(render(report, args.format), args.out)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    params = _params(args)
    if args.numeric and args.J < 24:
        raise SystemExit("error: -J must be >= 24 for numeric trace estimation")
    window = max(spectral.MIN_TAIL_WINDOW, min(12, args.J // 3))
    rt = inverse.roundtrip(params, numeric=args.numeric, count=args.J, basis_size=args.N, tail_window=window)
    report = {
        "input": {"m": params.m, "a": params.a, "e": params.e, "numeric": args.numeric},
        **_report_dict(rt.report),
    }
    if rt.estimates is not None:
        report["spectral"] = {
            str(k): {"value": e.value, "tail_correction": e.tail_correction, "modes_used": e.modes_used}
            for k, e in rt.estimates.items()
        }
    report["residuals"]["max_relative_deviation"] = rt.deviation
    report["flags"]["tolerance"] = rt.tolerance
    report["flags"]["within_tolerance"] = rt.ok
    emit(render(report, args.format), args.out)
    return EXIT_OK if rt.ok else EXIT_TOLERANCE


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horizonspec",
        description="Spectral geometry of Kerr-Newman event horizons (geometric units, G = c = 1).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_opts(p, default_format="json"):
        p.add_argument("--format", choices=("json", "csv"), default=default_format)
        p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    def bh_opts(p):
        p.add_argument("-m", type=float, required=True, help="mass (length)")
        p.add_argument("-a", type=float, default=0.0, help="spin per unit mass (length)")
        p.add_argument("-e", "--charge", type=float, default=0.0, help="charge (length)")

    p = sub.add_parser("forward", help="horizon shape, curvature and area from (m, a, e)")
    bh_opts(p)
    io_opts(p)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("spectrum", help="eigenvalues of L_k on the horizon")
    bh_opts(p)
    p.add_argument("-k", type=int, action="append", help="equivariant index (repeatable, default 0)")
    p.add_argument("-J", type=int, default=60, help="number of eigenvalues")
    p.add_argument("-N", type=int, default=None, help="basis size (default 2J+16)")
    io_opts(p, "csv")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("traces", help="Green's operator traces from a spectrum CSV")
    p.add_argument("spectrum", help="CSV written by the spectrum command")
    p.add_argument("-W", "--window", type=int, default=None, help="tail fit window (default min(12, J/3))")
    io_opts(p)
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("invert", help="recover shape and (m, a, r_plus, area) from traces")
    p.add_argument("--gamma0", type=float, help="S^1-invariant trace")
    p.add_argument("--gamma", action="append", metavar="K:VALUE", help="equivariant trace (repeatable)")
    p.add_argument("--traces", metavar="PATH", help="JSON written by the traces command")
    p.add_argument("--charge", type=float, default=0.0)
    p.add_argument("--channel", type=int, default=1)
    io_opts(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("roundtrip", help="forward to traces and back; exit 0 iff within tolerance")
    bh_opts(p)
    p.add_argument("--numeric", action="store_true", help="estimate traces from computed spectra")
    p.add_argument("-J", type=int, default=60)
    p.add_argument("-N", type=int, default=None)
    io_opts(p)
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", "unset") is None:
        args.k = [0]
    try:
        return args.func(args)
    except InvalidPhysicalParams as exc:
        print(f"error: invalid physical parameters: {exc}", file=sys.stderr)
        return EXIT_PHYSICAL
    except ConvergenceFailure as exc:
        print(f"error: numerical convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except InvalidTraces as exc:
        print(f"error: invalid traces: {exc}", file=sys.stderr)
        return EXIT_TRACES


if __name__ == "__main__":
    sys.exit(main())
