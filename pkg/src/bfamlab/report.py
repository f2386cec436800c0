"""Report emission: run manifest, delimited output, structured report, SVG.

Artifacts are deterministic for a fixed configuration and platform: the
manifest hash covers version + resolved configuration + platform fingerprint
(wall-clock times are recorded but excluded from the hash), CSV floats use 17
significant digits, and the SVG renderer pins matplotlib's hash salt and
strips the date metadata, so reruns are bit-identical on one machine.
"""

from __future__ import annotations

import hashlib
import json
import platform
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from ._version import __version__
from .experiments import ExperimentConfig, ExperimentResult

__all__ = [
    "RunManifest",
    "resolved_config",
    "manifest_hash",
    "write_csv",
    "write_report",
    "read_report",
    "render_figures",
    "write_failed_marker",
]

CSV_HEADER = "experiment,n,t,quantity,value"


def resolved_config(cfg: ExperimentConfig) -> dict:
    """Flatten a config to plain scalars, suitable for hashing and display."""
    p = cfg.params
    return {
        "s": cfg.besov.s,
        "p": cfg.besov.p,
        "r": cfg.besov.r,
        "case": p.case,
        "b": p.b,
        "k1": p.k1,
        "k2": p.k2,
        "k3": p.k3,
        "L": cfg.L,
        "N": cfg.N,
        "dt": cfg.solver.dt,
        "T": cfg.solver.T,
        "cfl_guard": cfg.solver.cfl_guard,
        "n_min": cfg.n_min,
        "n_max": cfg.n_max,
        "t_list": list(cfg.t_list),
    }


def _platform_fingerprint() -> dict:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "matplotlib": matplotlib.__version__,
        "system": sys.platform,
        "machine": platform.machine(),
    }


def manifest_hash(config: dict, fingerprint: dict) -> str:
    blob = json.dumps(
        {"version": __version__, "config": config, "platform": fingerprint},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class RunManifest:
    """Provenance block embedded (by hash) in every artifact."""

    version: str
    config: dict
    fingerprint: dict = field(default_factory=_platform_fingerprint)
    wall_clock: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    @classmethod
    def for_config(cls, cfg: ExperimentConfig) -> "RunManifest":
        return cls(version=__version__, config=resolved_config(cfg))

    @property
    def hash(self) -> str:
        return manifest_hash(self.config, self.fingerprint)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "platform": self.fingerprint,
            "wall_clock": self.wall_clock,
            "verdicts": self.verdicts,
            "hash": self.hash,
        }


def _fmt(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def write_csv(path: Path | str, results: list[ExperimentResult], manifest: RunManifest) -> Path:
    """One CSV over all rows, led by a manifest-hash comment line."""
    path = Path(path)
    lines = [f"# manifest {manifest.hash}", CSV_HEADER]
    for res in results:
        for row in res.rows:
            lines.append(
                ",".join(
                    [
                        row["experiment"],
                        _fmt(row["n"]),
                        _fmt(row["t"]),
                        row["quantity"],
                        _fmt(row["value"]),
                    ]
                )
            )
    path.write_text("\n".join(lines) + "\n")
    return path


def write_report(path: Path | str, results: list[ExperimentResult], manifest: RunManifest) -> Path:
    """Structured report with stable key order; round-trips via read_report."""
    path = Path(path)
    doc = {
        "manifest": manifest.to_dict(),
        "experiments": [
            {
                "experiment": res.name,
                "params": resolved_config(res.config),
                "rows": list(res.rows),
                "fits": {
                    name: {"slope": f.slope, "intercept": f.intercept, "residual": f.residual}
                    for name, f in res.fits.items()
                },
                "checks": [
                    {
                        "name": c.name,
                        "passed": c.passed,
                        "value": c.value,
                        "threshold": c.threshold,
                        "detail": c.detail,
                    }
                    for c in res.checks
                ],
                "verdict": res.verdict,
            }
            for res in results
        ],
    }
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return path


def read_report(path: Path | str) -> dict:
    return json.loads(Path(path).read_text())


def _plot_vs_n(res: ExperimentResult, path: Path, salt: str) -> Path | None:
    series: dict[str, list[tuple[int, float]]] = {}
    for row in res.rows:
        if row["n"] is not None and row["t"] is None and row["value"] > 0:
            series.setdefault(row["quantity"], []).append((row["n"], row["value"]))
    series = {q: pts for q, pts in series.items() if len(pts) >= 2}
    if not series:
        return None
    with plt.rc_context({"svg.hashsalt": salt}):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for quantity, pts in sorted(series.items()):
            pts.sort()
            ax.plot([n for n, _ in pts], [np.log2(v) for _, v in pts],
                    marker="o", label=quantity)
        ax.set_xlabel("n")
        ax.set_ylabel("log2 value")
        ax.set_title(res.name)
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path


def _plot_vs_t(res: ExperimentResult, path: Path, salt: str) -> Path | None:
    rows = [r for r in res.rows if r["t"] is not None and r["n"] is not None]
    if not rows:
        return None
    n_top = max(r["n"] for r in rows)
    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        if row["n"] == n_top:
            series.setdefault(row["quantity"], []).append((row["t"], row["value"]))
    series = {q: pts for q, pts in series.items() if len(pts) >= 2}
    if not series:
        return None
    with plt.rc_context({"svg.hashsalt": salt}):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for quantity, pts in sorted(series.items()):
            pts.sort()
            ax.plot([t for t, _ in pts], [v for _, v in pts], marker="o", label=quantity)
        ax.set_xlabel("t")
        ax.set_ylabel("value")
        ax.set_title(f"{res.name} at n={n_top}")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path


def render_figures(out_dir: Path | str, results: list[ExperimentResult],
                   manifest: RunManifest) -> list[Path]:
    """Render per-experiment rate (vs n) and evaluation-time (vs t) SVG plots."""
    out = Path(out_dir)
    paths: list[Path] = []
    for res in results:
        p = _plot_vs_n(res, out / f"{res.name}_vs_n.svg", manifest.hash)
        if p is not None:
            paths.append(p)
        p = _plot_vs_t(res, out / f"{res.name}_vs_t.svg", manifest.hash)
        if p is not None:
            paths.append(p)
    return paths


def write_failed_marker(out_dir: Path | str, reason: str, manifest: RunManifest | None) -> Path:
    out = Path(out_dir) / "FAILED"
    tag = manifest.hash if manifest is not None else "unhashed"
    out.write_text(f"manifest {tag}\n{reason}\n")
    return out
