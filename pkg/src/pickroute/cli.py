"""Command-line surface: config parsing, subcommands and CSV emission.

Subcommands: ``moments``, ``simulate``, ``leadtime``, ``layout``, ``validate``.
Configuration is a line-oriented ``key = value`` file (``#`` comments);
command-line flags override config keys.  Exit codes: 0 success, 2 parse or
validation error, 3 unstable queue without ``--allow-unstable``, 4 Monte
Carlo validation failure (some |z| > 4).
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, replace

from .heuristics import HEURISTICS, PickTimeModel, WarehouseConfig, compute_moments
from .layout import layout_sweep
from .orderdist import parse_dist_spec
from .queueing import QueueScenario, lead_time_estimate
from .simulate import run_replications_all

__all__ = ["RunConfig", "ConfigError", "parse_config", "render_config",
           "run_command", "emit_csv", "main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
EXIT_VALIDATION = 4

MOMENTS_SCHEMA = ["heuristic", "k", "l", "wa", "v", "dist",
                  "E_T", "E_T2", "Var_T", "SD_T", "E_TW", "E_TTr"]
LEADTIME_SCHEMA = MOMENTS_SCHEMA + ["c", "lambda", "rho", "Q", "E_R"]
SIMULATE_SCHEMA = ["heuristic", "k", "l", "wa", "v", "dist", "n", "seed",
                   "mean_T", "SE_T", "mean_T2", "SE_T2"]
LAYOUT_SCHEMA = ["k", "l", "heuristic", "E_T", "E_R"]
VALIDATE_SCHEMA = ["heuristic", "k", "dist", "n", "seed", "quantity",
                   "analytic", "mc", "se", "z"]


class ConfigError(ValueError):
    """Configuration problem; rendered to stderr and mapped to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration in SI units (lambda kept in orders/hour)."""

    k: int | None = None
    l: float | None = None                 # meters
    wa: float | None = None                # meters
    v: float | None = None                 # meters/second
    dist: str | None = None                # distribution spec string
    pick_mean: float = 0.0                 # seconds
    pick_scv: float = 0.0
    heuristics: tuple = HEURISTICS
    pickers: int | None = None
    lam: float | None = None               # orders per hour
    samples: int = 100_000
    seed: int = 0
    out: str | None = None
    total_length: float | None = None      # meters
    k_min: int | None = None
    k_max: int | None = None


_LENGTH_UNITS = {"": 1.0, "m": 1.0}
_SPEED_UNITS = {"m/s": 1.0, "km/h": 1000.0 / 3600.0}
_RATE_UNITS = {"": 1.0, "/h": 1.0, "per_hour": 1.0}


def _number(token: str, units: dict, key: str, what: str) -> float:
    parts = token.split()
    if len(parts) == 1:
        value, unit = parts[0], ""
    elif len(parts) == 2:
        value, unit = parts
    else:
        raise ConfigError(f"key {key!r}: cannot parse {what} {token!r}")
    if unit not in units:
        raise ConfigError(f"key {key!r}: unknown unit {unit!r} (expected one of"
                          f" {sorted(u for u in units if u)})")
    try:
        return float(value) * units[unit]
    except ValueError:
        raise ConfigError(f"key {key!r}: invalid number {value!r}") from None


def _integer(token: str, key: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ConfigError(f"key {key!r}: invalid integer {token!r}") from None
    return value


def _speed(token: str, key: str) -> float:
    parts = token.split()
    if len(parts) != 2 or parts[1] not in _SPEED_UNITS:
        raise ConfigError(f"key {key!r}: speed needs a unit, 'm/s' or 'km/h', got {token!r}")
    try:
        return float(parts[0]) * _SPEED_UNITS[parts[1]]
    except ValueError:
        raise ConfigError(f"key {key!r}: invalid number {parts[0]!r}") from None


def _apply_key(cfg: RunConfig, key: str, value: str, where: str) -> RunConfig:
    try:
        if key == "k":
            return replace(cfg, k=_integer(value, key))
        if key == "l":
            return replace(cfg, l=_number(value, _LENGTH_UNITS, key, "length"))
        if key == "wa":
            return replace(cfg, wa=_number(value, _LENGTH_UNITS, key, "length"))
        if key == "v":
            return replace(cfg, v=_speed(value, key))
        if key == "dist":
            parse_dist_spec(value)  # validate eagerly
            return replace(cfg, dist=value.strip())
        if key == "pick_mean":
            return replace(cfg, pick_mean=_number(value, {"": 1.0, "s": 1.0}, key, "duration"))
        if key == "pick_scv":
            return replace(cfg, pick_scv=_number(value, {"": 1.0}, key, "ratio"))
        if key == "heuristics":
            names = tuple(h.strip() for h in value.split(",") if h.strip())
            for h in names:
                if h not in HEURISTICS:
                    raise ConfigError(f"key 'heuristics': unknown heuristic {h!r}")
            if not names:
                raise ConfigError("key 'heuristics': empty list")
            return replace(cfg, heuristics=names)
        if key == "pickers":
            return replace(cfg, pickers=_integer(value, key))
        if key == "lambda":
            return replace(cfg, lam=_number(value, _RATE_UNITS, key, "rate"))
        if key == "samples":
            return replace(cfg, samples=_integer(value, key))
        if key == "seed":
            return replace(cfg, seed=_integer(value, key))
        if key == "out":
            return replace(cfg, out=value.strip())
        if key == "total_length":
            return replace(cfg, total_length=_number(value, _LENGTH_UNITS, key, "length"))
        if key == "k_min":
            return replace(cfg, k_min=_integer(value, key))
        if key == "k_max":
            return replace(cfg, k_max=_integer(value, key))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise ConfigError(f"{where}: {exc}") from None
        raise ConfigError(f"{where}: key {key!r}: {exc}") from None
    raise ConfigError(f"{where}: unknown key {key!r}")


def parse_config(text: str) -> RunConfig:
    """Parse the line-oriented ``key = value`` configuration format."""
    cfg = RunConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg = _apply_key(cfg, key, value, f"line {lineno}")
    return cfg


def render_config(cfg: RunConfig) -> str:
    """Config text that parses back to an equal RunConfig."""
    lines = []
    if cfg.k is not None:
        lines.append(f"k = {cfg.k}")
    if cfg.l is not None:
        lines.append(f"l = {cfg.l!r} m")
    if cfg.wa is not None:
        lines.append(f"wa = {cfg.wa!r} m")
    if cfg.v is not None:
        lines.append(f"v = {cfg.v!r} m/s")
    if cfg.dist is not None:
        lines.append(f"dist = {cfg.dist}")
    lines.append(f"pick_mean = {cfg.pick_mean!r}")
    lines.append(f"pick_scv = {cfg.pick_scv!r}")
    lines.append("heuristics = " + ", ".join(cfg.heuristics))
    if cfg.pickers is not None:
        lines.append(f"pickers = {cfg.pickers}")
    if cfg.lam is not None:
        lines.append(f"lambda = {cfg.lam!r}")
    lines.append(f"samples = {cfg.samples}")
    lines.append(f"seed = {cfg.seed}")
    if cfg.out is not None:
        lines.append(f"out = {cfg.out}")
    if cfg.total_length is not None:
        lines.append(f"total_length = {cfg.total_length!r} m")
    if cfg.k_min is not None:
        lines.append(f"k_min = {cfg.k_min}")
    if cfg.k_max is not None:
        lines.append(f"k_max = {cfg.k_max}")
    return "\n".join(lines) + "\n"


def _require(cfg: RunConfig, *keys: str) -> None:
    missing = [key for key in keys if getattr(cfg, key) is None]
    if missing:
        raise ConfigError("missing required key(s): " + ", ".join(missing))


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        if value != value:
            return "NA"
        return repr(value)
    return str(value)


def emit_csv(rows, schema, path: str | None) -> None:
    """RFC-4180-style CSV with the exact header; deterministic row order."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(schema)
    for row in rows:
        writer.writerow([_fmt(cell) for cell in row])
    data = buf.getvalue()
    if path is None:
        sys.stdout.write(data)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)


def _warehouse(cfg: RunConfig) -> WarehouseConfig:
    _require(cfg, "k", "l", "wa", "v", "dist")
    return WarehouseConfig(k=cfg.k, l=cfg.l, wa=cfg.wa, v=cfg.v)


def _pick(cfg: RunConfig) -> PickTimeModel:
    return PickTimeModel.from_scv(cfg.pick_mean, cfg.pick_scv)


def _scenario(cfg: RunConfig) -> QueueScenario:
    _require(cfg, "pickers", "lam")
    return QueueScenario(c=cfg.pickers, lam=cfg.lam / 3600.0)


def _cmd_moments(cfg: RunConfig) -> int:
    wh = _warehouse(cfg)
    dist = parse_dist_spec(cfg.dist)
    pick = _pick(cfg)
    rows = []
    for h in cfg.heuristics:
        rep = compute_moments(wh, dist, pick, h)
        rows.append([h, wh.k, wh.l, wh.wa, wh.v, cfg.dist,
                     rep.e_t, rep.e_t2, rep.var_t, rep.sd_t, rep.e_tw, rep.e_ttr])
    emit_csv(rows, MOMENTS_SCHEMA, cfg.out)
    return EXIT_OK


def _cmd_simulate(cfg: RunConfig) -> int:
    wh = _warehouse(cfg)
    dist = parse_dist_spec(cfg.dist)
    pick = _pick(cfg)
    estimates = run_replications_all(wh, dist, pick, cfg.samples, cfg.seed)
    rows = []
    for h in cfg.heuristics:
        est = estimates[h]
        rows.append([h, wh.k, wh.l, wh.wa, wh.v, cfg.dist, est.n, cfg.seed,
                     est.mean_t, est.se_mean, est.mean_t2, est.se_t2])
    emit_csv(rows, SIMULATE_SCHEMA, cfg.out)
    return EXIT_OK


def _cmd_leadtime(cfg: RunConfig, allow_unstable: bool) -> int:
    wh = _warehouse(cfg)
    dist = parse_dist_spec(cfg.dist)
    pick = _pick(cfg)
    scenario = _scenario(cfg)
    rows = []
    unstable = False
    for h in cfg.heuristics:
        rep = compute_moments(wh, dist, pick, h)
        lead = lead_time_estimate(rep, scenario)
        unstable |= not lead.stable
        rows.append([h, wh.k, wh.l, wh.wa, wh.v, cfg.dist,
                     rep.e_t, rep.e_t2, rep.var_t, rep.sd_t, rep.e_tw, rep.e_ttr,
                     scenario.c, cfg.lam, lead.rho, lead.q_wait, lead.e_r])
    emit_csv(rows, LEADTIME_SCHEMA, cfg.out)
    if unstable and not allow_unstable:
        print("unstable queue (rho >= 1); pass --allow-unstable to emit NA rows",
              file=sys.stderr)
        return EXIT_UNSTABLE
    return EXIT_OK


def _cmd_layout(cfg: RunConfig) -> int:
    _require(cfg, "wa", "v", "dist", "k_min", "k_max")
    if cfg.total_length is None:
        _require(cfg, "k", "l")
        total = cfg.k * cfg.l
    else:
        total = cfg.total_length
    if cfg.k_min > cfg.k_max:
        raise ConfigError("k_min must be <= k_max")
    dist = parse_dist_spec(cfg.dist)
    pick = _pick(cfg)
    scenario = None
    if cfg.pickers is not None and cfg.lam is not None:
        scenario = _scenario(cfg)
    rows_out = []
    for row in layout_sweep(total, range(cfg.k_min, cfg.k_max + 1), cfg.wa, cfg.v,
                            dist, pick, scenario, cfg.heuristics):
        for h in cfg.heuristics:
            cell = row.cells[h]
            rows_out.append([row.k, row.l, h, cell.e_t, cell.e_r])
    emit_csv(rows_out, LAYOUT_SCHEMA, cfg.out)
    return EXIT_OK


def _cmd_validate(cfg: RunConfig) -> int:
    wh = _warehouse(cfg)
    dist = parse_dist_spec(cfg.dist)
    pick = _pick(cfg)
    estimates = run_replications_all(wh, dist, pick, cfg.samples, cfg.seed)
    rows = []
    worst = 0.0
    for h in cfg.heuristics:
        rep = compute_moments(wh, dist, pick, h)
        est = estimates[h]
        for quantity, analytic, mc, se in (
                ("E_T", rep.e_t, est.mean_t, est.se_mean),
                ("E_T2", rep.e_t2, est.mean_t2, est.se_t2)):
            z = (analytic - mc) / se if se > 0 else 0.0
            worst = max(worst, abs(z))
            rows.append([h, wh.k, cfg.dist, est.n, cfg.seed, quantity, analytic, mc, se, z])
    emit_csv(rows, VALIDATE_SCHEMA, cfg.out)
    if worst > 4.0:
        print(f"validation failed: max |z| = {worst:.2f} > 4", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pickroute",
        description="Exact order-picking time moments, Monte Carlo validation, "
                    "lead-time estimates and layout sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("moments", "analytic picking-time moments per heuristic"),
            ("simulate", "Monte Carlo moment estimates with standard errors"),
            ("leadtime", "moments plus M/G/c mean lead-time approximation"),
            ("layout", "sweep warehouse shapes at fixed total aisle length"),
            ("validate", "analytic vs Monte Carlo z-score harness")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", nargs="?", help="path to a key = value config file")
        p.add_argument("--k", type=int)
        p.add_argument("--l", type=float, help="aisle length in meters")
        p.add_argument("--wa", type=float, help="aisle spacing in meters")
        p.add_argument("--v", help="walking speed, e.g. '3 km/h' or '0.8 m/s'")
        p.add_argument("--dist", help="order-size spec, e.g. det:3, spois:4, geom:32, snbin:7:31")
        p.add_argument("--pick-mean", type=float, dest="pick_mean")
        p.add_argument("--pick-scv", type=float, dest="pick_scv")
        p.add_argument("--heuristic", action="append", dest="heuristic",
                       help="restrict to one heuristic (repeatable)")
        p.add_argument("--pickers", type=int)
        p.add_argument("--lambda", type=float, dest="lam", help="orders per hour")
        p.add_argument("--samples", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--total-length", type=float, dest="total_length")
        p.add_argument("--k-min", type=int, dest="k_min")
        p.add_argument("--k-max", type=int, dest="k_max")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        if name == "leadtime":
            p.add_argument("--allow-unstable", action="store_true",
                           help="emit NA rows instead of failing when rho >= 1")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = parse_config(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
    else:
        cfg = RunConfig()
    overrides = {}
    for key in ("k", "l", "wa", "pick_mean", "pick_scv", "pickers", "lam",
                "samples", "seed", "total_length", "k_min", "k_max", "out", "dist"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "v", None) is not None:
        token = args.v if " " in args.v else f"{args.v} m/s"
        overrides["v"] = _speed(token, "v")
    if getattr(args, "heuristic", None):
        for h in args.heuristic:
            if h not in HEURISTICS:
                raise ConfigError(f"unknown heuristic {h!r}")
        overrides["heuristics"] = tuple(args.heuristic)
    if "dist" in overrides:
        try:
            parse_dist_spec(overrides["dist"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    cfg = replace(cfg, **overrides)
    return cfg


def run_command(command: str, cfg: RunConfig, allow_unstable: bool = False) -> int:
    """Dispatch a subcommand; returns the process exit status."""
    try:
        if command == "moments":
            return _cmd_moments(cfg)
        if command == "simulate":
            return _cmd_simulate(cfg)
        if command == "leadtime":
            return _cmd_leadtime(cfg, allow_unstable)
        if command == "layout":
            return _cmd_layout(cfg)
        if command == "validate":
            return _cmd_validate(cfg)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown command {command!r}")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        status = run_command(args.command, cfg,
                             allow_unstable=getattr(args, "allow_unstable", False))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(args, "out", None):
            emit_csv([[EXIT_CONFIG, str(exc)]], ["error_code", "message"], args.out)
        return EXIT_CONFIG
    return status


if __name__ == "__main__":
    sys.exit(main())
