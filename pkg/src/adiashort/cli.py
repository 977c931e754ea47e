"""Command-line interface.

    adiashort ising --J 1 --gamma0 0.95 --N 10 --hbar 1 -o ising.json
    adiashort series ising.json
    adiashort shortcut ising.json --tau 2.0 -o protocol.json
    adiashort scan --config configs/fig1.json -o fig1.csv

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NumericalError, ValidationError
from .protocol import Protocol, build_quench, build_ramp
from .relaxation import IsingChainParams, RelaxationSpectrum, make_ising_spectrum
from .series import is_shortcut_candidate, laurent_coefficients
from .shortcut import build_shortcut, solve_comb, worker_count
from .work import (DriveParams, excess_work_extrapolated, excess_work_spectral,
                   normalized_work)

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3
CSV_COLUMNS = ("tau", "w_ex", "w_ex_norm", "pass", "method")
PROTOCOLS = ("shortcut", "ramp", "quench", "custom-file")


def fmt(x: float) -> str:
    return format(x, ".17g")


@dataclass
class TauGrid:
    min: float = 0.1
    max: float = 10.0
    count: int = 50
    spacing: str = "log"

    def values(self) -> np.ndarray:
        if not self.min > 0:
            raise ValidationError("tau min must be positive")
        if self.count < 1:
            raise ValidationError("tau count must be >= 1")
        if self.max < self.min:
            raise ValidationError("tau max must be >= tau min")
        if self.count == 1:
            return np.array([self.min])
        if self.spacing == "log":
            return np.geomspace(self.min, self.max, self.count)
        if self.spacing == "linear":
            return np.linspace(self.min, self.max, self.count)
        raise ValidationError(f"unknown spacing {self.spacing!r}")


@dataclass
class RunConfig:
    spectrum: dict | None = None
    spectrum_file: str | None = None
    ising: dict | None = None
    tau_grid: TauGrid = field(default_factory=TauGrid)
    drive: dict = field(default_factory=lambda: {"delta_lambda": 1.0})
    protocol: str = "shortcut"
    protocol_file: str | None = None
    tolerance: float = 1e-10
    method: str = "spectral"
    output: dict = field(default_factory=lambda: {"path": None, "format": "csv"})

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        grid = TauGrid(**data.pop("tau_grid", {}))
        output = {"path": None, "format": "csv", **data.pop("output", {})}
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        return cls(tau_grid=grid, output=output, **data)

    def validate(self) -> None:
        self.tau_grid.values()
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        if self.protocol not in PROTOCOLS:
            raise ValidationError(f"protocol must be one of {PROTOCOLS}")
        if self.protocol == "custom-file" and not self.protocol_file:
            raise ValidationError("protocol 'custom-file' needs protocol_file")
        if self.method not in ("spectral", "quadrature"):
            raise ValidationError("method must be 'spectral' or 'quadrature'")
        if self.output.get("format") not in ("csv", "json"):
            raise ValidationError("output format must be csv or json")
        if sum(x is not None for x in (self.spectrum, self.spectrum_file, self.ising)) != 1:
            raise ValidationError("give exactly one of spectrum, spectrum_file, ising")

    def ising_params(self) -> IsingChainParams | None:
        if self.ising is None:
            return None
        d = self.ising
        return IsingChainParams(float(d.get("J", 1.0)), float(d.get("gamma0", 0.95)),
                                int(d.get("N", 10)), float(d.get("hbar", 1.0)))

    def load_spectrum(self) -> RelaxationSpectrum:
        if self.ising is not None:
            return make_ising_spectrum(self.ising_params())
        if self.spectrum is not None:
            return RelaxationSpectrum.from_dict(self.spectrum)
        return read_spectrum(self.spectrum_file)

    def drive_params(self) -> DriveParams:
        lam0 = self.drive.get("lambda0")
        if lam0 is None and self.ising is not None:
            # the drive acts on the transverse field
            lam0 = self.ising_params().field_Gamma0
        return DriveParams(float(self.drive.get("delta_lambda", 1.0)),
                           float("nan") if lam0 is None else float(lam0))


def read_spectrum(path: str) -> RelaxationSpectrum:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return RelaxationSpectrum.from_json(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc


def write_text(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# --- subcommands ---------------------------------------------------------------

def cmd_ising(args) -> int:
    params = IsingChainParams(args.J, args.gamma0, args.N, args.hbar)
    write_text(make_ising_spectrum(params).to_json(indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_series(args) -> int:
    spec = read_spectrum(args.spectrum)
    c = laurent_coefficients(spec, args.order)
    verdict = is_shortcut_candidate(c, args.tol)
    if args.json:
        out = {"a_minus2": c.a_minus2, "a_minus1": c.a_minus1, "a": list(c.a_regular),
               "waiting_time": c.waiting_time, "shortcut": verdict}
        write_text(json.dumps(out, indent=2) + "\n", None)
        return EXIT_OK
    lines = [f"a_-2 {fmt(c.a_minus2)}", f"a_-1 {fmt(c.a_minus1)}"]
    lines += [f"a_{n} {fmt(a)}" for n, a in enumerate(c.a_regular)]
    lines += [f"waiting_time {fmt(c.waiting_time)}",
              f"shortcut {'yes' if verdict else 'no'}"]
    write_text("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_shortcut(args) -> int:
    spec = read_spectrum(args.spectrum)
    p = build_shortcut(spec, args.tau)
    write_text(p.to_json(indent=2) + "\n", args.output)
    return EXIT_OK


def _scan_rows(cfg: RunConfig, spec: RelaxationSpectrum, drive: DriveParams):
    """Return (rows, sidecar, failed)."""
    if cfg.protocol == "custom-file":
        fixed = Protocol.from_json(Path(cfg.protocol_file).read_text())
        taus = [fixed.tau]
    else:
        fixed = None
        taus = [float(t) for t in cfg.tau_grid.values()]

    sidecar = None
    unit = None
    failure = None
    if cfg.protocol == "shortcut":
        try:
            unit = solve_comb(spec, 1.0)
            sidecar = {"orders": list(unit.orders), "unit_weights": list(unit.unit_weights),
                       "omega_n": unit.to_dict()["omega_n"],
                       "condition_number": unit.condition_number, "taus": []}
        except NumericalError as exc:
            failure = str(exc)

    def make(tau):
        if fixed is not None:
            return fixed
        if cfg.protocol == "ramp":
            return build_ramp(tau)
        if cfg.protocol == "quench":
            return build_quench(tau)
        return build_shortcut(spec, tau, unit)

    def evaluate(tau):
        if failure is not None:
            return {"tau": tau, "w_ex": math.nan, "w_ex_norm": math.nan,
                    "pass": False, "method": "failed"}
        p = make(tau)
        if cfg.method == "spectral":
            res = excess_work_spectral(spec, p, drive)
        else:
            res = excess_work_extrapolated(spec, p, drive)
        norm = normalized_work(spec, res, drive)
        return {"tau": tau, "w_ex": res.excess_work, "w_ex_norm": norm,
                "pass": bool(abs(norm) <= cfg.tolerance), "method": res.method}

    n_workers = worker_count()
    if n_workers > 1 and len(taus) > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            rows = list(pool.map(evaluate, taus))
    else:
        rows = [evaluate(t) for t in taus]

    if sidecar is not None:
        sidecar["taus"] = [{"tau": t, "weights": list(unit.rescaled(t).weights)} for t in taus]
    return rows, sidecar, failure


def render_rows(rows: list[dict], fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([fmt(r["tau"]), fmt(r["w_ex"]), fmt(r["w_ex_norm"]),
                         "true" if r["pass"] else "false", r["method"]])
    return buf.getvalue()


def cmd_scan(args) -> int:
    cfg = config_from_args(args)
    cfg.validate()
    spec = cfg.load_spectrum()
    drive = cfg.drive_params()
    if drive.weak_drive_warning:
        print(f"warning: |delta_lambda/lambda0| = {drive.weak_drive_ratio:.3g} "
              "is outside the weak-drive regime", file=sys.stderr)

    rows, sidecar, failure = _scan_rows(cfg, spec, drive)
    out_path = cfg.output.get("path")
    write_text(render_rows(rows, cfg.output["format"]), out_path)

    sidecar_path = args.sidecar
    if sidecar_path is None and out_path not in (None, "-"):
        sidecar_path = str(out_path) + ".comb.json"
    if sidecar is not None and sidecar_path:
        Path(sidecar_path).write_text(json.dumps(sidecar, indent=2) + "\n")

    if failure is not None:
        print(f"error: {failure}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def config_from_args(args) -> RunConfig:
    """Config file first, then command-line flags on top."""
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {args.config}: {exc}") from exc
    cfg = RunConfig.from_dict(data)

    ising_flags = {k: v for k, v in (("J", args.J), ("gamma0", args.gamma0),
                                     ("N", args.N), ("hbar", args.hbar)) if v is not None}
    if args.spectrum is not None:
        cfg.spectrum, cfg.spectrum_file, cfg.ising = None, args.spectrum, None
    elif ising_flags:
        base = cfg.ising or {}
        cfg.spectrum, cfg.spectrum_file, cfg.ising = None, None, {**base, **ising_flags}

    for attr, flag in (("min", args.tau_min), ("max", args.tau_max),
                       ("count", args.count), ("spacing", args.spacing)):
        if flag is not None:
            setattr(cfg.tau_grid, attr, flag)
    if args.delta_lambda is not None:
        cfg.drive = {**cfg.drive, "delta_lambda": args.delta_lambda}
    if args.lambda0 is not None:
        cfg.drive = {**cfg.drive, "lambda0": args.lambda0}
    if args.protocol is not None:
        cfg.protocol = args.protocol
    if args.protocol_file is not None:
        cfg.protocol_file = args.protocol_file
    if args.tol is not None:
        cfg.tolerance = args.tol
    if args.method is not None:
        cfg.method = args.method
    if args.output is not None:
        cfg.output = {**cfg.output, "path": args.output}
    if args.format is not None:
        cfg.output = {**cfg.output, "format": args.format}
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adiashort", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ising", help="relaxation spectrum of the transverse-field Ising chain")
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--gamma0", type=float, default=0.95)
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ising)

    p = sub.add_parser("series", help="Laurent coefficients and waiting time")
    p.add_argument("spectrum", help="spectrum JSON file, '-' for stdin")
    p.add_argument("--order", type=int)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("shortcut", help="emit the shortcut protocol JSON for one tau")
    p.add_argument("spectrum")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_shortcut)

    p = sub.add_parser("scan", help="excess work over a grid of switching times")
    p.add_argument("--config")
    p.add_argument("--spectrum")
    p.add_argument("--J", type=float)
    p.add_argument("--gamma0", type=float)
    p.add_argument("--N", type=int)
    p.add_argument("--hbar", type=float)
    p.add_argument("--tau-min", type=float)
    p.add_argument("--tau-max", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--spacing", choices=("linear", "log"))
    p.add_argument("--delta-lambda", type=float)
    p.add_argument("--lambda0", type=float)
    p.add_argument("--protocol", choices=PROTOCOLS)
    p.add_argument("--protocol-file")
    p.add_argument("--tol", type=float)
    p.add_argument("--method", choices=("spectral", "quadrature"))
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--sidecar", help="comb diagnostics JSON path (default: <output>.comb.json)")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
