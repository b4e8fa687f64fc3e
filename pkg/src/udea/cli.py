"""Batch front door: CSV ingestion, run modes and machine-readable reports.

CSV layout: first column is the unit name; remaining columns are headed
``in:<name>``, ``out:<name>`` or ``env:<name>`` (environmental outputs,
exempt from uncertainty).  Values are nonnegative decimal reals.
"""

import argparse
import csv
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dataset import DeaDataset, scale_dataset, solve_all, solve_nominal
from .facets import SizeLimitError, enumerate_efficient_facets, exact_udea
from .iterative import iterative_udea
from .robust import (DEFAULT_CAP, DEFAULT_EPS, DEFAULT_STEP,
                     UncertaintyConfig, robust_efficiency)

MODES = ("nominal", "robust", "sweep", "exact", "iterative")

EXIT_OK = 0
EXIT_DATA_ERROR = 2
EXIT_SIZE_ERROR = 3

# case-study scaling: output = proportion of the prescribed target dose
# (74 Gy at the 95% level), input = fraction of the 70 Gy risk threshold,
# both times 100 so a 3.6% uncertainty is sigma = 3.6 directly
RADIOTHERAPY_OUTPUT_FACTOR = 100.0 / (74.0 * 0.95)
RADIOTHERAPY_INPUT_FACTOR = 100.0 / 70.0


class DataError(ValueError):
    """Dataset file rejected; message carries the offending location."""


@dataclass
class RunConfig:
    mode: str
    sigma: float = 0.0
    nu: float = DEFAULT_CAP
    step: float = DEFAULT_STEP
    eps: float = DEFAULT_EPS
    scale: dict = field(default_factory=dict)  # variable name -> factor
    preset: str = None
    out: str = None
    plot_out: str = None
    jobs: int = 1
    fmt: str = "csv"
    full_precision: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.fmt not in ("csv", "text"):
            raise ValueError("format must be csv or text")


def ingest_csv(path) -> DeaDataset:
    """Read a dataset file, enforcing invariants with cell locations."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, header row required")
        rows = [row for row in reader if row and any(c.strip() for c in row)]
    if len(header) < 2:
        raise DataError(f"{path}: header needs a name column and variables")

    input_names, output_names, env_flags = [], [], []
    col_kind = []  # (kind, slot) per data column
    for c, head in enumerate(header[1:], start=2):
        head = head.strip()
        if head.startswith("in:"):
            col_kind.append(("in", len(input_names)))
            input_names.append(head[3:])
        elif head.startswith("out:"):
            col_kind.append(("out", len(output_names)))
            output_names.append(head[4:])
            env_flags.append(False)
        elif head.startswith("env:"):
            col_kind.append(("out", len(output_names)))
            output_names.append(head[4:])
            env_flags.append(True)
        else:
            raise DataError(
                f"{path}: column {c} header {head!r} must start with "
                "'in:', 'out:' or 'env:'")
    if not input_names:
        raise DataError(f"{path}: at least one 'in:' column is required")
    if not output_names:
        raise DataError(f"{path}: at least one 'out:' or 'env:' column required")

    names = []
    X = np.zeros((len(input_names), len(rows)))
    Y = np.zeros((len(output_names), len(rows)))
    for r, row in enumerate(rows):
        if len(row) != len(header):
            raise DataError(f"{path}: row {r + 2} has {len(row)} fields, "
                            f"expected {len(header)}")
        name = row[0].strip()
        if name in names:
            raise DataError(f"{path}: row {r + 2}: duplicate unit name {name!r}")
        names.append(name)
        for c, raw in enumerate(row[1:]):
            try:
                value = float(raw)
            except ValueError:
                raise DataError(f"{path}: row {r + 2}, column {c + 2}: "
                                f"unparseable value {raw!r}")
            if not math.isfinite(value) or value < 0:
                raise DataError(f"{path}: row {r + 2}, column {c + 2}: "
                                f"negative or non-finite value {raw}")
            kind, slot = col_kind[c]
            (X if kind == "in" else Y)[slot, r] = value
    if not rows:
        raise DataError(f"{path}: no data rows")
    for k, var in enumerate(input_names):
        if not X[k].any():
            raise DataError(f"{path}: input column 'in:{var}' is all zero")
    for k, var in enumerate(output_names):
        if not Y[k].any():
            raise DataError(f"{path}: output column for {var!r} is all zero")
    try:
        return DeaDataset(names=names, X=X, Y=Y,
                          env_outputs=np.array(env_flags, dtype=bool),
                          input_names=input_names, output_names=output_names)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}")


def emit_csv(ds: DeaDataset, path):
    """Write a dataset back out at full precision (round-trips exactly for
    decimals of up to 12 significant digits)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["dmu"]
        header += [f"in:{v}" for v in ds.input_names]
        header += [("env:" if e else "out:") + v
                   for v, e in zip(ds.output_names, ds.env_outputs)]
        writer.writerow(header)
        for i, name in enumerate(ds.names):
            row = [name]
            row += [repr(float(v)) for v in ds.X[:, i]]
            row += [repr(float(v)) for v in ds.Y[:, i]]
            writer.writerow(row)


def apply_scaling(ds: DeaDataset, config: RunConfig) -> DeaDataset:
    factors = np.ones(ds.n_inputs + ds.n_outputs)
    if config.preset == "radiotherapy":
        factors[: ds.n_inputs] = RADIOTHERAPY_INPUT_FACTOR
        for k in range(ds.n_outputs):
            if not ds.env_outputs[k]:
                factors[ds.n_inputs + k] = RADIOTHERAPY_OUTPUT_FACTOR
    if config.scale:
        variables = ds.variable_names()
        for var, factor in config.scale.items():
            if var not in variables:
                raise DataError(f"unknown variable {var!r} in --scale")
            factors[variables.index(var)] = factor
    if np.all(factors == 1.0):
        return ds
    return scale_dataset(ds, factors)


def run(config: RunConfig, ds: DeaDataset) -> dict:
    """Execute one run mode; returns {path_or_stream_label: rows} after
    writing the report (and, for minimum-uncertainty modes, plot data)."""
    ds = apply_scaling(ds, config)
    cfg = UncertaintyConfig(nu=config.nu, step=config.step, eps=config.eps)

    header, rows, plot_rows = _compute(config, ds, cfg)
    fmt = _formatter(config)

    written = {}
    body = _render(header, [[fmt(v) for v in row] for row in rows], config.fmt)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(body)
        written[config.out] = rows
    else:
        sys.stdout.write(body)
        written["<stdout>"] = rows

    if plot_rows is not None:
        plot_path = config.plot_out or (
            f"{config.out}.plot.csv" if config.out else None)
        if plot_path:
            plot_body = _render(["dmu", "nominal_score", "upsilon_star",
                                 "capable"],
                                [[fmt(v) for v in row] for row in plot_rows],
                                "csv")
            with open(plot_path, "w") as fh:
                fh.write(plot_body)
            written[plot_path] = plot_rows
    return written


def _compute(config: RunConfig, ds: DeaDataset, cfg: UncertaintyConfig):
    """Dispatch on mode; returns (header, rows, plot_rows_or_None)."""
    jobs = config.jobs
    if config.mode == "nominal":
        results = _map(lambda i: solve_nominal(ds, i), range(ds.n_units), jobs)
        header = (["dmu", "score", "peers"]
                  + [f"slack_in:{v}" for v in ds.input_names]
                  + [f"slack_out:{v}" for v in ds.output_names])
        rows = []
        for res in results:
            rows.append([ds.names[res.dmu], res.theta,
                         ";".join(ds.names[p] for p in res.peers)]
                        + list(res.input_slacks) + list(res.output_slacks))
        return header, rows, None

    if config.mode == "robust":
        results = _map(lambda i: robust_efficiency(ds, i, config.sigma, cfg.eps),
                       range(ds.n_units), jobs)
        rows = [[ds.names[r.dmu], config.sigma, r.theta] for r in results]
        return ["dmu", "sigma", "score"], rows, None

    if config.mode == "sweep":
        sigmas = _sigma_grid(cfg)
        def trace_unit(i):
            return [(s, robust_efficiency(ds, i, s, cfg.eps).theta)
                    for s in sigmas]
        traces = _map(trace_unit, range(ds.n_units), jobs)
        rows = [[ds.names[i], s, score]
                for i, tr in enumerate(traces) for s, score in tr]
        return ["dmu", "sigma", "score"], rows, None

    nominal = solve_all(ds)
    if config.mode == "exact":
        facet_set = enumerate_efficient_facets(ds)
        outcomes = _map(
            lambda i: exact_udea(ds, i, nu=cfg.nu, eps=cfg.eps,
                                 facet_set=facet_set),
            range(ds.n_units), jobs)
        header = ["dmu", "nominal_score", "upsilon_star", "gamma_star",
                  "capable", "facet", "strict"]
        rows = []
        plot_rows = []
        for res, out in zip(nominal, outcomes):
            facet_id = "+".join(ds.names[g]
                                for g in facet_set.generators[out.facet_index])
            rows.append([ds.names[out.dmu], res.theta, out.upsilon, out.gamma,
                         out.capable, facet_id, not out.attainable])
            plot_rows.append([ds.names[out.dmu], res.theta,
                              out.upsilon if out.capable else "",
                              out.capable])
        return header, rows, plot_rows

    # iterative
    outcomes = _map(lambda i: iterative_udea(ds, i, cfg),
                    range(ds.n_units), jobs)
    header = ["dmu", "nominal_score", "upsilon_star", "bracket_lo",
              "bracket_hi", "gamma_star", "capable"]
    rows = []
    plot_rows = []
    for res, out in zip(nominal, outcomes):
        lo, hi = out.bracket if out.bracket else ("", "")
        rows.append([ds.names[out.dmu], res.theta,
                     "" if out.upsilon is None else out.upsilon,
                     lo, hi, out.gamma, out.capable])
        plot_rows.append([ds.names[out.dmu], res.theta,
                          "" if out.upsilon is None else out.upsilon,
                          out.capable])
    return header, rows, plot_rows


def _sigma_grid(cfg: UncertaintyConfig):
    if not math.isfinite(cfg.nu):
        raise ValueError("sweep mode needs a finite cap nu")
    count = int(math.floor(cfg.nu / cfg.step + 1e-9))
    sigmas = [k * cfg.step for k in range(count + 1)]
    if sigmas[-1] < cfg.nu - 1e-12:
        sigmas.append(cfg.nu)
    return sigmas


def _map(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _formatter(config: RunConfig):
    def fmt(value):
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float) or isinstance(value, np.floating):
            return repr(float(value)) if config.full_precision \
                else f"{value:.6f}"
        return str(value)
    return fmt


def _render(header, rows, fmt):
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(row) for row in rows]
        return "\n".join(lines) + "\n"
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h)
              for k, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    for row in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="udea",
        description="Relative efficiency of decision making units under "
                    "exact and box-uncertain data")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--data", required=True, help="dataset CSV path")
        p.add_argument("--sigma", type=float, default=0.0,
                       help="box half-width (robust mode)")
        p.add_argument("--nu", type=float, default=None,
                       help="uncertainty cap (default 3.6)")
        p.add_argument("--step", type=float, default=None,
                       help="sigma grid step (default 0.01)")
        p.add_argument("--eps", type=float, default=DEFAULT_EPS,
                       help="input clamp floor")
        p.add_argument("--scale", action="append", default=[],
                       metavar="VAR=FACTOR",
                       help="per-variable scale factor, repeatable")
        p.add_argument("--preset", choices=["radiotherapy"], default=None)
        p.add_argument("--out", default=None, help="report path (default stdout)")
        p.add_argument("--plot-out", default=None,
                       help="plot-data CSV path (default <out>.plot.csv)")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--format", dest="fmt", choices=["csv", "text"],
                       default="csv")
        p.add_argument("--full-precision", action="store_true")
    return parser


def _parse_scales(pairs):
    scales = {}
    for pair in pairs:
        if "=" not in pair:
            raise DataError(f"--scale expects VAR=FACTOR, got {pair!r}")
        var, _, raw = pair.partition("=")
        try:
            factor = float(raw)
        except ValueError:
            raise DataError(f"--scale factor {raw!r} is not a number")
        if factor <= 0:
            raise DataError(f"--scale factor for {var!r} must be positive")
        scales[var] = factor
    return scales


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            mode=args.mode,
            sigma=args.sigma,
            nu=args.nu if args.nu is not None else DEFAULT_CAP,
            step=args.step if args.step is not None else DEFAULT_STEP,
            eps=args.eps,
            scale=_parse_scales(args.scale),
            preset=args.preset,
            out=args.out,
            plot_out=args.plot_out,
            jobs=args.jobs,
            fmt=args.fmt,
            full_precision=args.full_precision,
        )
        ds = ingest_csv(args.data)
        run(config, ds)
    except (DataError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_ERROR if isinstance(exc, SizeLimitError) \
            else EXIT_DATA_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
