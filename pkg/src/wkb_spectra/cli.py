"""Command-line front end.

Subcommands: spectrum, angular, wavefunction, compare. Outputs are CSV or
JSON; JSON payloads carry {config_echo, rows, provenance} so a run can be
reproduced from its own output. Exit codes: 0 success, 2 invalid
parameters, 3 no bound state / no classically allowed region, 4 numerical
method failure (quadrature, root finding, structure detection, oracle box).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

from . import __version__
from ._backend import backend_name
from .angular import (
    angular_wavefunction,
    eigenvalue_for,
    polar_phase_exact,
    polar_phase_integral,
)
from .core import Morse, QuantumNumbers, UnitsContext, make_potential
from .errors import (
    DegenerateSampleError,
    DomainTooSmallError,
    NoBoundStateError,
    NoClassicalRegionError,
    ParameterError,
    QuadratureConvergenceError,
    RootConvergenceError,
    SpectralError,
    StructureMismatchError,
    TurningPointProximityError,
    UndersampledError,
)
from .oracle import ORACLE_LL1, compare_methods, diagonalize_radial
from .quantizer import quantize_2tp, quantize_multiwell
from .spectra import (
    VARIANT_MORSE_NO_CENTRIFUGAL,
    VARIANT_MORSE_WITH_M,
    VARIANT_STANDARD,
    ClosedFormSpectrum,
)
from .wavefunction import sample_full_wkb, sample_standing_wave, sample_to_csv

EXIT_OK = 0
EXIT_BAD_PARAMS = 2
EXIT_NO_BOUND_STATE = 3
EXIT_NO_CONVERGENCE = 4

_PARAM_ERRORS = (ParameterError,)
_NO_STATE_ERRORS = (NoBoundStateError, NoClassicalRegionError)
_METHOD_ERRORS = (
    QuadratureConvergenceError,
    RootConvergenceError,
    StructureMismatchError,
    DomainTooSmallError,
    TurningPointProximityError,
    UndersampledError,
    DegenerateSampleError,
)


def _parse_params(text: str | None) -> dict[str, float]:
    if not text:
        return {}
    out = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParameterError(f"--params entries must be key=value, "
                                 f"got {chunk!r}")
        key, _, value = chunk.partition("=")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise ParameterError(f"parameter {key.strip()!r} has non-numeric "
                                 f"value {value!r}") from None
    return out


def _read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ParameterError(
                        f"config line must be key=value, got {line!r}")
                key, _, value = line.partition("=")
                out[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ParameterError(f"cannot read config file {path!r}: {exc}") from None
    return out


_FILE_KEYS = {
    "potential": str, "params": str, "hbar": float, "mass": float,
    "l": int, "mz": int, "nr": int, "nr_max": int, "l_max": int,
    "method": str, "format": str, "out": str,
    "tol_quad": float, "tol_root": float, "morse_variant": str,
    "points": int, "form": str, "theta_samples": int,
}


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """File values fill in flags the command line left unset."""
    if not getattr(args, "config", None):
        return args
    fileconf = _read_config_file(args.config)
    for key, raw in fileconf.items():
        if key not in _FILE_KEYS:
            raise ParameterError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None:
            try:
                setattr(args, key, _FILE_KEYS[key](raw))
            except ValueError:
                raise ParameterError(
                    f"config key {key!r} has bad value {raw!r}") from None
    return args


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--potential", type=str, default=None)
    common.add_argument("--params", type=str, default=None,
                        help="comma list, e.g. v0=10,r0=1")
    common.add_argument("--hbar", type=float, default=None)
    common.add_argument("--mass", type=float, default=None)
    common.add_argument("--l", type=int, default=None)
    common.add_argument("--mz", type=int, default=None)
    common.add_argument("--nr", type=int, default=None)
    common.add_argument("--nr-max", dest="nr_max", type=int, default=None)
    common.add_argument("--l-max", dest="l_max", type=int, default=None)
    common.add_argument("--method", type=str, default=None,
                        choices=["closed", "quadrature", "multiwell", "oracle"])
    common.add_argument("--format", type=str, default=None,
                        choices=["csv", "json"])
    common.add_argument("--out", type=str, default=None)
    common.add_argument("--tol-quad", dest="tol_quad", type=float, default=None)
    common.add_argument("--tol-root", dest="tol_root", type=float, default=None)
    common.add_argument("--config", type=str, default=None,
                        help="key=value file; command line wins")
    common.add_argument("--morse-variant", dest="morse_variant", type=str,
                        default=None,
                        choices=["no_centrifugal", "with_m"])

    parser = argparse.ArgumentParser(
        prog="wkb-spectra",
        description="Quasiclassical bound-state solver for central potentials")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common])
    sub.add_parser("angular", parents=[common]).add_argument(
        "--theta-samples", dest="theta_samples", type=int, default=None)
    wf = sub.add_parser("wavefunction", parents=[common])
    wf.add_argument("--points", type=int, default=None)
    wf.add_argument("--form", type=str, default=None,
                    choices=["full", "standing"])
    sub.add_parser("compare", parents=[common])
    return parser


def _units_from(args) -> UnitsContext:
    return UnitsContext(hbar=args.hbar if args.hbar is not None else 1.0,
                        mass=args.mass if args.mass is not None else 1.0)


def _potential_from(args):
    if not args.potential:
        raise ParameterError("--potential is required for this command")
    return make_potential(args.potential, **_parse_params(args.params))


def _thread_cap() -> int:
    raw = os.environ.get("WKB_SPECTRA_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return min(8, os.cpu_count() or 1)


def _nr_values(args) -> list[int]:
    if args.nr_max is not None:
        if args.nr_max < 0:
            raise ParameterError(f"--nr-max must be >= 0, got {args.nr_max}")
        return list(range(args.nr_max + 1))
    return [args.nr if args.nr is not None else 0]


def _l_values(args) -> list[int]:
    if args.l_max is not None:
        if args.l_max < 0:
            raise ParameterError(f"--l-max must be >= 0, got {args.l_max}")
        return list(range(args.l_max + 1))
    return [args.l if args.l is not None else 0]


def _morse_variant(args) -> str:
    tag = args.morse_variant or "no_centrifugal"
    return (VARIANT_MORSE_NO_CENTRIFUGAL if tag == "no_centrifugal"
            else VARIANT_MORSE_WITH_M)


def _config_echo(args) -> dict:
    skip = {"command", "config"}
    echo = {k: v for k, v in sorted(vars(args).items())
            if k not in skip and v is not None}
    echo["command"] = args.command
    return echo


def _provenance(args) -> dict:
    return {
        "version": __version__,
        "backend": backend_name(),
        "tolerances": {
            "tol_quad": args.tol_quad if args.tol_quad is not None else 1e-12,
            "tol_root": args.tol_root if args.tol_root is not None else 1e-9,
        },
    }


def _emit(args, rows: list[dict], csv_header: list[str]) -> None:
    payload_format = args.format or "csv"
    if payload_format == "json":
        text = json.dumps({"config_echo": _config_echo(args),
                           "rows": rows,
                           "provenance": _provenance(args)}, indent=2)
    else:
        lines = [",".join(csv_header)]
        for row in rows:
            lines.append(",".join(_csv_cell(row.get(col)) for col in csv_header))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    text = str(value)
    if "," in text or '"' in text:
        text = '"' + text.replace('"', '""') + '"'
    return text


def _spectrum_cell(spec, units, args, n_r: int, l: int) -> dict:
    method = args.method or "quadrature"
    tol_quad = args.tol_quad if args.tol_quad is not None else 1e-12
    tol_root = args.tol_root if args.tol_root is not None else 1e-9
    if method == "closed":
        variant = (_morse_variant(args) if isinstance(spec, Morse)
                   else VARIANT_STANDARD)
        level = ClosedFormSpectrum(spec, variant, units).level(n_r, l)
    elif method == "quadrature":
        # explicit --morse-variant no_centrifugal drops the M^2/r^2 term,
        # reproducing the two-turning-point Morse treatment (l = 0 only)
        if isinstance(spec, Morse) and args.morse_variant == "no_centrifugal":
            if l != 0:
                raise ParameterError(
                    "no-centrifugal Morse quadrature needs l = 0")
            m2 = 0.0
        else:
            m2 = eigenvalue_for(l, 0, units).m2
        level = quantize_2tp(spec, m2, n_r, units,
                             rel_tol_quad=tol_quad, tol_root=tol_root)
        level = replace(level, l=l)
    elif method == "multiwell":
        if not spec.multiwell_capable:
            raise ParameterError(
                f"potential {spec.kind!r} is not multiwell-capable")
        m2 = eigenvalue_for(l, 0, units).m2
        s = spec.r_scale(units)
        level = quantize_multiwell(spec, m2, 2 * n_r, 2, units,
                                   domain=(-1e3 * s, 1e3 * s),
                                   rel_tol_quad=tol_quad, tol_root=tol_root)
        level = replace(level, n_r=n_r, l=l)
    else:
        raise ParameterError(f"unsupported spectrum method {method!r}")
    return {"n_r": n_r, "l": l, "method": level.method,
            "energy": level.energy, "residual": level.residual}


def run_spectrum(args) -> int:
    spec = _potential_from(args)
    units = _units_from(args)
    nr_list = _nr_values(args)
    l_list = _l_values(args)
    method = args.method or "quadrature"

    rows: list[dict] = []
    if method == "oracle":
        for l in l_list:
            res = diagonalize_radial(spec, l, ORACLE_LL1, units,
                                     n_levels=len(nr_list))
            for n_r in nr_list:
                rows.append({"n_r": n_r, "l": l, "method": "oracle",
                             "energy": float(res.eigenvalues[n_r]),
                             "residual": float(res.refinement_estimate[n_r])})
    else:
        cells = [(n_r, l) for l in l_list for n_r in nr_list]

        def one(cell):
            n_r, l = cell
            try:
                return _spectrum_cell(spec, units, args, n_r, l)
            except NoBoundStateError as exc:
                raise NoBoundStateError(
                    f"no bound state at n_r={n_r}, l={l} "
                    f"(N={n_r + l + 1}): {exc}") from exc
            except _METHOD_ERRORS as exc:
                raise type(exc)(
                    f"{method} quantization failed at n_r={n_r}, l={l}: "
                    f"{exc}") from exc

        threads = _thread_cap()
        if threads > 1 and len(cells) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(one, cells))
        else:
            rows = [one(c) for c in cells]
    rows.sort(key=lambda r: (r["l"], r["n_r"], r["method"]))
    _emit(args, rows, ["n_r", "l", "method", "energy", "residual"])
    return EXIT_OK


def run_angular(args) -> int:
    units = _units_from(args)
    l = args.l if args.l is not None else 0
    m_z = args.mz if args.mz is not None else 0
    eig = eigenvalue_for(l, m_z, units)  # validates |m_z| <= l
    if abs(eig.M_z) < eig.M:
        integral = polar_phase_integral(eig.M, eig.M_z, units)
    else:
        integral = None
    row = {
        "l": l, "m_z": m_z,
        "M": eig.M, "M_z": eig.M_z, "M2": eig.m2,
        "polar_integral": integral,
        "polar_exact": polar_phase_exact(eig.M, eig.M_z),
    }
    rows = [row]
    n_samp = getattr(args, "theta_samples", None)
    if n_samp:
        for i in range(n_samp):
            theta = math.pi * (i + 0.5) / n_samp
            y = angular_wavefunction(l, m_z, theta, 0.0, units)
            rows.append({"l": l, "m_z": m_z, "theta": theta,
                         "y_re": y.real, "y_im": y.imag})
        header = ["l", "m_z", "M", "M_z", "M2", "polar_integral",
                  "polar_exact", "theta", "y_re", "y_im"]
    else:
        header = ["l", "m_z", "M", "M_z", "M2", "polar_integral",
                  "polar_exact"]
    _emit(args, rows, header)
    return EXIT_OK


def run_wavefunction(args) -> int:
    spec = _potential_from(args)
    units = _units_from(args)
    n_r = args.nr if args.nr is not None else 0
    l = args.l if args.l is not None else 0
    form = getattr(args, "form", None) or "full"
    n_points = getattr(args, "points", None) or 4096
    method = args.method or "quadrature"
    m2 = eigenvalue_for(l, 0, units).m2

    if method == "closed":
        variant = (_morse_variant(args) if isinstance(spec, Morse)
                   else VARIANT_STANDARD)
        energy = ClosedFormSpectrum(spec, variant, units).energy(n_r, l)
    elif method == "quadrature":
        energy = quantize_2tp(spec, m2, n_r, units).energy
    else:
        raise ParameterError(
            f"wavefunction energies come from closed or quadrature, "
            f"not {method!r}")

    qn = QuantumNumbers(n_r=n_r, l=l, m_z=0)
    if form == "standing":
        sample = sample_standing_wave(energy, n_r, units, n_points=n_points,
                                      qn=qn)
    else:
        sample = sample_full_wkb(spec, m2, energy, units, n_points=n_points,
                                 qn=qn)

    if (args.format or "csv") == "json":
        rows = [{"r": float(r), "psi": float(v)}
                for r, v in zip(sample.grid, sample.values)]
        _emit(args, rows, ["r", "psi"])
    else:
        text = sample_to_csv(sample)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def run_compare(args) -> int:
    spec = _potential_from(args)
    units = _units_from(args)
    l = args.l if args.l is not None else 0
    nr_list = _nr_values(args)
    table = compare_methods(spec, l, nr_list, units)
    value_keys = ("closed", "closed_with_m", "quadrature",
                  "oracle_ll1", "oracle_langer")
    if all(all(getattr(row, key) is None for key in value_keys)
           for row in table):
        raise RootConvergenceError(
            "comparison failed: every method errored for every row")
    rows = []
    for row in table:
        d = {"n_r": row.n_r, "l": row.l, "closed": row.closed,
             "closed_with_m": row.closed_with_m,
             "quadrature": row.quadrature,
             "oracle_ll1": row.oracle_ll1,
             "oracle_langer": row.oracle_langer}
        d.update(row.deltas())
        d["notes"] = row.notes
        rows.append(d)
    header = ["n_r", "l", "closed", "closed_with_m", "quadrature",
              "oracle_ll1", "oracle_langer", "quadrature_minus_closed",
              "oracle_ll1_minus_closed", "oracle_langer_minus_closed",
              "closed_with_m_minus_closed", "notes"]
    _emit(args, rows, header)
    return EXIT_OK


_RUNNERS = {
    "spectrum": run_spectrum,
    "angular": run_angular,
    "wavefunction": run_wavefunction,
    "compare": run_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        return _RUNNERS[args.command](args)
    except _PARAM_ERRORS as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except _NO_STATE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_BOUND_STATE
    except _METHOD_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except SpectralError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
