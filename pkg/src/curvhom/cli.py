"""Command-line front end.

Three subcommands over a family metric and a sample grid:

  verify      engine-vs-closed-form equivalence of nabla^k R, per order
  classify    homogeneity verdicts as a JSON report
  invariants  per-point table of profile derivatives and invariants

Grids are given per coordinate as ``--grid x=0:1:9`` (min:max:count);
unspecified coordinates are pinned to 0.  Every flag can also be supplied
from a ``key = value`` config file via ``--config``; explicit flags win.
Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 nonvanishing hypothesis violated at every sample point.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .classify import (
    FLOOR,
    GridAxis,
    GridSpec,
    HypothesisViolation,
    SampleSet,
    classify,
    f_first_invariant,
    f_scale_ratio,
    h_first_invariant,
    h_second_ratios,
)
from .expr import DomainError, ParseError, parse
from .families import (
    delta_derivatives,
    family_f_metric,
    family_f_oracle,
    family_h_metric,
    family_h_oracle,
    profile_derivatives,
)
from .geometry import nabla_riemann_sequence

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_HYPOTHESIS = 3

REL_TOL = 1e-8   # relative tolerance on closed-form nonzero entries
ABS_TOL = 1e-10  # absolute tolerance on closed-form zero entries

_COORDS = ("t", "x", "y")
_METRIC_SLOTS = ("tt", "tx", "ty", "xx", "xy", "yy")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str
    function: Optional[str]
    order: int
    grid: GridSpec
    tol: float
    output: Optional[str]
    format: str
    metric: dict[str, str]

    def summary(self) -> dict:
        return {
            "command": self.command,
            "family": self.family,
            "function": self.function,
            "order": self.order,
            "grid": _grid_summary(self.grid),
            "tol": self.tol,
            "format": self.format,
        }


def _grid_summary(grid: GridSpec) -> dict:
    out = {}
    for name, axis in zip(_COORDS, grid.axes):
        if axis is not None:
            out[name] = f"{axis.lo:g}:{axis.hi:g}:{axis.count}"
    return out


def _parse_grid_arg(text: str) -> tuple[str, GridAxis]:
    try:
        coord, spec = text.split("=", 1)
        lo, hi, count = spec.split(":")
        coord = coord.strip()
        axis = GridAxis(float(lo), float(hi), int(count))
    except ValueError:
        raise ConfigError(f"bad grid spec {text!r}; expected coord=min:max:count") from None
    if coord not in _COORDS:
        raise ConfigError(f"unknown grid coordinate {coord!r}; expected one of {_COORDS}")
    if axis.count < 1:
        raise ConfigError(f"grid count must be >= 1 in {text!r}")
    return coord, axis


def _read_config_file(path: str) -> dict[str, list[str]]:
    values: dict[str, list[str]] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, value = line.split("=", 1)
                values.setdefault(key.strip(), []).append(value.strip())
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from None
    return values


def _build_config(args: argparse.Namespace) -> RunConfig:
    file_values: dict[str, list[str]] = {}
    if args.config:
        file_values = _read_config_file(args.config)
        known = {"family", "function", "order", "grid", "tol", "output", "format", "metric"}
        unknown = set(file_values) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    def pick(name, flag_value, default=None):
        if flag_value is not None:
            return flag_value
        if name in file_values:
            return file_values[name][-1]
        return default

    family = pick("family", args.family)
    if family is None:
        raise ConfigError("missing --family (f, h or custom)")
    if family not in ("f", "h", "custom"):
        raise ConfigError(f"unknown family {family!r}")

    function = pick("function", args.function)
    if family in ("f", "h") and function is None:
        raise ConfigError("missing --function for a profile family")

    grid_args = list(args.grid or [])
    if not grid_args and "grid" in file_values:
        grid_args = file_values["grid"]
    axes: dict[str, GridAxis] = {}
    for spec in grid_args:
        coord, axis = _parse_grid_arg(spec)
        if coord in axes:
            raise ConfigError(f"duplicate grid coordinate {coord!r}")
        axes[coord] = axis
    if not axes:
        raise ConfigError("missing --grid (at least one coordinate range)")
    grid = GridSpec(tuple(axes.get(c) for c in _COORDS))

    metric_args = list(args.metric or [])
    if not metric_args and "metric" in file_values:
        metric_args = file_values["metric"]
    metric: dict[str, str] = {}
    for item in metric_args:
        if "=" not in item:
            raise ConfigError(f"bad metric entry {item!r}; expected slot=expression")
        slot, text = item.split("=", 1)
        slot = slot.strip()
        if slot not in _METRIC_SLOTS:
            raise ConfigError(f"unknown metric slot {slot!r}; expected one of {_METRIC_SLOTS}")
        metric[slot] = text.strip()
    if family == "custom" and not metric:
        raise ConfigError("custom family needs --metric entries")

    try:
        order = int(pick("order", args.order, "2"))
        tol = float(pick("tol", args.tol, "1e-6"))
    except ValueError as err:
        raise ConfigError(str(err)) from None
    if order < 0:
        raise ConfigError("order must be nonnegative")
    if tol <= 0:
        raise ConfigError("tol must be positive")

    fmt = pick("format", args.format, "json")
    if fmt not in ("json", "csv", "text"):
        raise ConfigError(f"unknown format {fmt!r}")
    return RunConfig(
        command=args.command,
        family=family,
        function=function,
        order=order,
        grid=grid,
        tol=tol,
        output=pick("output", args.output),
        format=fmt,
        metric=metric,
    )


def _build_metric(config: RunConfig):
    if config.family == "f":
        return family_f_metric(parse(config.function))
    if config.family == "h":
        return family_h_metric(parse(config.function))
    from .families import custom_metric

    zero = parse("0")
    exprs = {slot: parse(text) for slot, text in config.metric.items()}
    order = {"tt": (0, 0), "tx": (0, 1), "ty": (0, 2), "xx": (1, 1), "xy": (1, 2), "yy": (2, 2)}
    matrix = [[zero] * 3 for _ in range(3)]
    for slot, (i, j) in order.items():
        if slot in exprs:
            matrix[i][j] = exprs[slot]
            matrix[j][i] = exprs[slot]
    return custom_metric(matrix)


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verify


def _compare(engine: np.ndarray, oracle: np.ndarray) -> tuple[float, float]:
    """(max relative deviation on oracle-nonzero entries,
        max absolute deviation on oracle-zero entries)."""
    nz = oracle != 0.0
    rel = 0.0
    if nz.any():
        rel = float(np.abs((engine[nz] - oracle[nz]) / oracle[nz]).max())
    absdev = 0.0
    if (~nz).any():
        absdev = float(np.abs(engine[~nz]).max())
    return rel, absdev


def cmd_verify(config: RunConfig) -> int:
    if config.family == "custom":
        raise ConfigError("verify needs a built-in family with a closed-form oracle")
    if config.family == "h" and config.order > 2:
        raise ConfigError("the h-family closed forms stop at order 2; rerun with --order <= 2")
    fn = parse(config.function)
    metric = _build_metric(config)
    oracle = family_f_oracle if config.family == "f" else family_h_oracle
    points = config.grid.points()
    per_order_rel = [0.0] * (config.order + 1)
    per_order_abs = [0.0] * (config.order + 1)
    for p in points:
        # rescale so max |g_ij| is O(1) at the point; curvature scales along
        gscale = max(1.0, float(np.abs(metric.component_matrix(p)).max()))
        seq = nabla_riemann_sequence(metric.scaled(1.0 / gscale), p, config.order)
        for k in range(config.order + 1):
            rel, absdev = _compare(seq[k].components, oracle(fn, p, k).components / gscale)
            per_order_rel[k] = max(per_order_rel[k], rel)
            per_order_abs[k] = max(per_order_abs[k], absdev)
    ok = all(r <= REL_TOL for r in per_order_rel) and all(a <= ABS_TOL for a in per_order_abs)
    if config.format == "json":
        report = {
            "config": config.summary(),
            "verdicts": [
                {
                    "name": f"order_{k}",
                    "status": "pass" if per_order_rel[k] <= REL_TOL and per_order_abs[k] <= ABS_TOL else "fail",
                    "max_relative_deviation": per_order_rel[k],
                    "max_absolute_deviation_on_zeros": per_order_abs[k],
                }
                for k in range(config.order + 1)
            ],
            "invariants": [],
            "exclusions": [],
            "tool_version": __version__,
        }
        _emit(json.dumps(report, indent=2) + "\n", config.output)
    else:
        lines = [f"verify family={config.family} function={config.function!r} points={len(points)}"]
        for k in range(config.order + 1):
            status = "pass" if per_order_rel[k] <= REL_TOL and per_order_abs[k] <= ABS_TOL else "FAIL"
            lines.append(
                f"  order {k}: max rel dev {per_order_rel[k]:.3e}"
                f"  max abs dev on zeros {per_order_abs[k]:.3e}  [{status}]"
            )
        lines.append("result: " + ("pass" if ok else "FAIL"))
        _emit("\n".join(lines) + "\n", config.output)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# classify


def cmd_classify(config: RunConfig) -> int:
    metric = _build_metric(config)
    samples = SampleSet.from_grid(config.grid)
    report = classify(metric, config.order, samples, config.tol)
    body = report.to_dict()
    payload = {
        "config": config.summary(),
        "verdicts": body["verdicts"],
        "invariants": body["invariants"],
        "psi": body["psi"],
        "scaled_entries": body["scaled_entries"],
        "diagnostics": body["diagnostics"],
        "exclusions": body["exclusions"],
        "degenerate": body["degenerate"],
        "notes": body["notes"],
        "tool_version": __version__,
    }
    _emit(json.dumps(payload, indent=2) + "\n", config.output)
    all_hyp = all(v.status == "hypothesis-violated" for v in report.verdicts)
    return EXIT_HYPOTHESIS if all_hyp and not report.degenerate else EXIT_OK


# ---------------------------------------------------------------------------
# invariants


def _invariant_rows(config: RunConfig) -> tuple[list[str], list[dict]]:
    fn = parse(config.function)
    rows = []
    if config.family == "f":
        kmax = max(config.order, 1)
        header = ["t", "x", "y", *[f"delta_{k}" if k else "delta" for k in range(kmax + 1)], "xi", "sch_ratio", "excluded"]
        for p in config.grid.points():
            d = delta_derivatives(fn, p, kmax)
            row = dict(zip(("t", "x", "y"), p))
            for k in range(kmax + 1):
                row[f"delta_{k}" if k else "delta"] = d[k]
            try:
                row["xi"] = f_first_invariant(fn, p)
                row["sch_ratio"] = f_scale_ratio(fn, p)
                row["excluded"] = ""
            except HypothesisViolation as err:
                row["xi"] = row["sch_ratio"] = None
                row["excluded"] = str(err)
            rows.append(row)
    else:
        header = ["t", "x", "y", "h_1", "h_2", "h_3", "h_4", "xi", "xi_T", "xi_X", "xi_T_alt", "psi", "excluded"]
        for p in config.grid.points():
            d = profile_derivatives(fn, p, 4)
            row = dict(zip(("t", "x", "y"), p))
            for k in range(1, 5):
                row[f"h_{k}"] = d[k]
            excluded = []
            try:
                row["xi"] = h_first_invariant(fn, p)
            except HypothesisViolation as err:
                row["xi"] = None
                excluded.append(str(err))
            try:
                ratios = h_second_ratios(fn, p)
                row["xi_T"], row["xi_X"], row["psi"] = ratios.xi_t, ratios.xi_x, ratios.psi
            except HypothesisViolation as err:
                row["xi_T"] = row["xi_X"] = row["psi"] = None
                excluded.append(str(err))
            row["xi_T_alt"] = d[4] / d[2] ** 2 if abs(d[2]) >= FLOOR else None
            row["excluded"] = "; ".join(dict.fromkeys(excluded))
            rows.append(row)
    return header, rows


def cmd_invariants(config: RunConfig) -> int:
    if config.family == "custom":
        raise ConfigError("invariants are defined for the built-in families only")
    header, rows = _invariant_rows(config)
    value_cols = [c for c in header if c not in ("t", "x", "y", "excluded")]
    all_excluded = all(all(r[c] is None for c in value_cols if c.startswith(("xi", "sch", "psi"))) for r in rows)
    if config.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row[k] is None else row[k]) for k in header})
        _emit(buf.getvalue(), config.output)
    else:
        payload = {
            "config": config.summary(),
            "verdicts": [],
            "invariants": [{k: row[k] for k in header} for row in rows],
            "exclusions": [
                {"point": [row["t"], row["x"], row["y"]], "reason": row["excluded"]}
                for row in rows
                if row["excluded"]
            ],
            "tool_version": __version__,
        }
        _emit(json.dumps(payload, indent=2) + "\n", config.output)
    return EXIT_HYPOTHESIS if all_excluded else EXIT_OK


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvhom",
        description="curvature derivatives and homogeneity classification for metrics on R^3",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "check the curvature engine against the family closed forms"),
        ("classify", "emit a JSON homogeneity report over a sample grid"),
        ("invariants", "tabulate invariant values per grid point"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", help="f, h or custom")
        p.add_argument("--function", help="profile function text, e.g. 'exp(x)' or 't^3'")
        p.add_argument("--order", help="highest derivative order r")
        p.add_argument("--grid", action="append", help="coord=min:max:count (repeatable)")
        p.add_argument("--tol", help="relative constancy tolerance")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", help="json, csv or text")
        p.add_argument("--metric", action="append", help="custom metric entry slot=expr (repeatable)")
        p.add_argument("--config", help="flat key = value file mirroring the flags")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = _build_config(args)
        if config.command == "verify":
            return cmd_verify(config)
        if config.command == "classify":
            return cmd_classify(config)
        return cmd_invariants(config)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as err:
        print(f"config error: cannot parse function: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, ValueError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
