"""Command-line entry point.

Subcommands: validate, norms, concentration, riemann, prop1, prop2, theorem,
evolve.  Configuration comes from an optional key=value file plus flags (flags
win).  Artifacts per run: <command>.csv, <command>_report.json, and with
--svg the rate/time plots; a FAILED file marks aborted runs.

Exit codes: 0 all checks pass, 2 a check failed, 3 numerical abort (blow-up
or CFL violation), 4 configuration error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Callable, Mapping

from .bfamily import BFamilyParams
from .experiments import (
    DEFAULT_T_LIST,
    ExperimentConfig,
    ExperimentResult,
    concentration_experiment,
    data_approximation_experiment,
    evolve_experiment,
    norm_scaling_experiment,
    riemann_limit_experiment,
    separation_experiment,
    shared_grid,
    taylor_remainder_experiment,
)
from .integrate import BlowUpError, CflViolationError, SolverConfig
from .littlewood_paley import BesovParams
from .report import RunManifest, render_figures, write_csv, write_failed_marker, write_report
from .sequences import CapacityError, capacity_check
from .validation import run_validation

__all__ = ["parse_config", "command", "main", "main_entry"]

EXIT_PASS = 0
EXIT_CHECK_FAILED = 2
EXIT_NUMERICAL_ABORT = 3
EXIT_CONFIG_ERROR = 4

_FLOAT_KEYS = ("s", "p", "r", "b", "k1", "k2", "k3", "L", "dt", "T")
_INT_KEYS = ("N", "n_min", "n_max")
_STR_KEYS = ("case", "out_dir")
_KNOWN_KEYS = frozenset(_FLOAT_KEYS + _INT_KEYS + _STR_KEYS + ("t_list",))

DEFAULTS: dict[str, object] = {
    "s": 2.0,
    "p": 2.0,
    "r": 2.0,
    "case": "i",
    "b": 2.0,
    "L": 64.0,
    "N": 65536,
    "dt": 1e-3,
    "T": 0.1,
    "n_min": 4,
    "n_max": 8,
    "t_list": DEFAULT_T_LIST,
    "out_dir": "out",
}

RUNNERS: dict[str, Callable[[ExperimentConfig], ExperimentResult]] = {
    "validate": run_validation,
    "norms": norm_scaling_experiment,
    "concentration": concentration_experiment,
    "riemann": riemann_limit_experiment,
    "prop1": data_approximation_experiment,
    "prop2": taylor_remainder_experiment,
    "theorem": separation_experiment,
    "evolve": evolve_experiment,
}


def _parse_value(key: str, raw: str) -> object:
    if key in _FLOAT_KEYS:
        return float(raw)
    if key in _INT_KEYS:
        return int(raw)
    if key == "t_list":
        toks = [tok.strip() for tok in raw.split(",") if tok.strip()]
        if not toks:
            raise ValueError("t_list must contain at least one time")
        return tuple(float(tok) for tok in toks)
    return raw.strip()


def _read_config_file(path: str) -> dict[str, object]:
    values: dict[str, object] = {}
    for line_no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{line_no}: expected key=value, got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise ValueError(f"{path}:{line_no}: unknown config key: {key}")
        values[key] = _parse_value(key, raw.strip())
    return values


def parse_config(
    path: str | None = None,
    overrides: Mapping[str, object] | None = None,
    allow_low_regularity: bool = False,
) -> tuple[ExperimentConfig, str]:
    """Resolve defaults <- config file <- flag overrides into a config.

    Returns the experiment config and the output directory.  Raises
    ValueError (or CapacityError) on any inconsistency; the capacity message
    names the largest n the grid supports.
    """
    merged = dict(DEFAULTS)
    file_values = _read_config_file(path) if path is not None else {}
    merged.update(file_values)
    explicit = set(file_values)
    if overrides:
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in _KNOWN_KEYS:
                raise ValueError(f"unknown config key: {key}")
            merged[key] = value
            explicit.add(key)

    k_given = [k for k in ("k1", "k2", "k3") if k in merged]
    if k_given and len(k_given) < 3:
        raise ValueError("k1, k2, k3 must be given together")
    if k_given:
        case = merged["case"] if "case" in explicit else None
        b = merged["b"] if "b" in explicit else None
        params = BFamilyParams(
            k1=float(merged["k1"]), k2=float(merged["k2"]), k3=float(merged["k3"]),
            case=case, b=b,
        )
    else:
        params = BFamilyParams.from_case(str(merged["case"]), float(merged["b"]))

    besov = BesovParams(s=float(merged["s"]), p=float(merged["p"]), r=float(merged["r"]))
    solver = SolverConfig(
        dt=float(merged["dt"]),
        T=float(merged["T"]),
        sample_times=(0.0,) + tuple(merged["t_list"]),
    )
    cfg = ExperimentConfig(
        besov=besov,
        params=params,
        L=float(merged["L"]),
        N=int(merged["N"]),
        solver=solver,
        n_min=int(merged["n_min"]),
        n_max=int(merged["n_max"]),
        t_list=tuple(merged["t_list"]),
        allow_low_regularity=allow_low_regularity,
    )
    capacity_check(shared_grid(cfg.L, cfg.N), cfg.n_max)
    return cfg, str(merged["out_dir"])


def command(name: str, cfg: ExperimentConfig, out_dir: str, svg: bool = False) -> int:
    """Run one subcommand, write artifacts, and return the exit code."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest.for_config(cfg)
    started = time.perf_counter()
    try:
        result = RUNNERS[name](cfg)
    except (BlowUpError, CflViolationError) as exc:
        write_failed_marker(out, f"{name}: {exc}", manifest)
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_ABORT
    except ValueError as exc:
        write_failed_marker(out, f"{name}: {exc}", manifest)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    manifest.wall_clock[name] = time.perf_counter() - started
    manifest.verdicts[name] = result.verdict

    write_csv(out / f"{name}.csv", [result], manifest)
    write_report(out / f"{name}_report.json", [result], manifest)
    if svg:
        render_figures(out, [result], manifest)

    for c in result.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {c.name}: value={c.value:.6g} threshold={c.threshold:.6g}")
    for fname, fit in result.fits.items():
        print(f"fit {fname}: slope={fit.slope:.4f} intercept={fit.intercept:.4f} "
              f"residual={fit.residual:.2e}")
    print(f"{name}: {result.verdict} (manifest {manifest.hash})")
    return EXIT_PASS if result.passed else EXIT_CHECK_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 4, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bfamlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in RUNNERS:
        p = sub.add_parser(name, help=f"run the {name} suite")
        p.add_argument("--config", help="key=value configuration file")
        p.add_argument("--out-dir", dest="out_dir", help="artifact directory")
        for key in ("s", "p", "r", "b", "k1", "k2", "k3", "L", "dt", "T"):
            p.add_argument(f"--{key}", type=float, dest=key)
        p.add_argument("--N", type=int, dest="N")
        p.add_argument("--n-min", type=int, dest="n_min")
        p.add_argument("--n-max", type=int, dest="n_max")
        p.add_argument("--case", choices=("i", "ii"))
        p.add_argument("--t-list", dest="t_list",
                       help="comma-separated evaluation times")
        p.add_argument("--svg", action="store_true", help="render SVG plots")
        p.add_argument("--allow-low-regularity", action="store_true",
                       help="downgrade the s > max(1+1/p, 3/2) check to a warning")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {
        key: getattr(args, key)
        for key in _KNOWN_KEYS
        if getattr(args, key, None) is not None
    }
    if isinstance(overrides.get("t_list"), str):
        try:
            overrides["t_list"] = _parse_value("t_list", overrides["t_list"])
        except ValueError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG_ERROR
    try:
        cfg, out_dir = parse_config(
            path=args.config,
            overrides=overrides,
            allow_low_regularity=args.allow_low_regularity,
        )
    except (CapacityError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    return command(args.subcommand, cfg, out_dir, svg=args.svg)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
