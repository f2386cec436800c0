"""Measurement layer: norm scalings, concentration, limit constants, deviations.

Each experiment takes an :class:`ExperimentConfig`, produces long-format rows
(experiment, n, t, quantity, value), rate fits, and named threshold checks,
and returns them in an :class:`ExperimentResult` whose verdict is PASS only
when every check holds.

Deviation quantities, all measured in the product norm B^s x B^{s-1}:

* ``prop1_dev``: distance of the pair-1 flow from its initial data,
  ``|u(t) - u(0)|_{B^s} + |rho(t) - rho(0)|_{B^{s-1}}``.
* ``prop2_dev``: pair-2 Taylor remainder after removing the linear drift,
  ``|u(t) - u(0) - t v0|_{B^s} + |rho(t) - rho(0) - t w0|_{B^{s-1}}``.
* ``thm_dev_u`` / ``thm_dev_rho``: separation of the two flows,
  ``|u^1(t) - u^2(t)|_{B^s}`` and ``|rho^1(t) - rho^2(t)|_{B^{s-1}}``.
* ``init_dist``: distance of the two data pairs at t = 0 (independent of t).

Both flows of a pair are evolved once per (config, n) and the resulting float
rows are cached, so experiments that share a configuration reuse solver work.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .bfamily import BFamilyParams, rhs
from .integrate import SolverConfig, evolve
from .littlewood_paley import (
    BesovParams,
    DyadicPartition,
    besov_norm,
    block_profile,
    build_partition,
    lp_block,
)
from .sequences import (
    CARRIER_RATIO,
    SequenceIndex,
    build_f_n,
    build_g_n,
    bump_phi,
    drift_fields,
    initial_data,
)
from .spectral import Field, Grid1D, derivative, lp_norm, make_grid, multiply_dealiased

__all__ = [
    "DEFAULT_T_LIST",
    "ExperimentConfig",
    "DeviationRow",
    "RateFit",
    "CheckResult",
    "ExperimentResult",
    "fit_rate",
    "prop1_slope_threshold",
    "prop2_slope_threshold",
    "T_SLOPE_RANGE",
    "measure_pair",
    "norm_scaling_experiment",
    "concentration_experiment",
    "riemann_limit_gap",
    "riemann_limit_experiment",
    "data_approximation_experiment",
    "taylor_remainder_experiment",
    "separation_experiment",
    "evolve_experiment",
    "shared_grid",
    "shared_partition",
    "clear_caches",
]

DEFAULT_T_LIST = (0.02, 0.04, 0.06, 0.08, 0.1)

#: Acceptance window for the log-log slope of prop2_dev against t.
T_SLOPE_RANGE = (1.7, 2.3)


def prop1_slope_threshold(s: float) -> float:
    """Largest admissible n-slope for prop1_dev: -(s - 3/2)/2 plus 0.25 slack."""
    return -(s - 1.5) / 2.0 + 0.25


def prop2_slope_threshold(s: float) -> float:
    """Largest admissible n-slope for prop2_dev at the smallest t."""
    return -min(s - 1.5, 0.5) + 0.25


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved parameters of one experiment run.

    Attributes:
        besov: Norm parameters (s, p, r); s also sets the data amplitude.
        params: Equation coefficients.
        L: Half-period of the domain [-L, L).
        N: Number of grid points.
        solver: Time-stepping parameters; its sample times are normalized to
            contain 0 and every entry of t_list.
        n_min, n_max: Packet index range, inclusive.
        t_list: Evaluation times, each in (0, T].
        allow_low_regularity: Downgrade the s > max(1 + 1/p, 3/2) requirement
            to a warning (exploration mode).
    """

    besov: BesovParams
    params: BFamilyParams
    L: float = 64.0
    N: int = 65536
    solver: SolverConfig | None = None
    n_min: int = 4
    n_max: int = 8
    t_list: tuple[float, ...] = DEFAULT_T_LIST
    allow_low_regularity: bool = False

    def __post_init__(self) -> None:
        t_list = tuple(sorted({float(t) for t in self.t_list}))
        if not t_list:
            raise ValueError("t_list must not be empty")
        object.__setattr__(self, "t_list", t_list)
        if not 3 <= self.n_min <= self.n_max:
            raise ValueError("need 3 <= n_min <= n_max")
        base = self.solver
        if base is None:
            base = SolverConfig(dt=1e-3, T=0.1, sample_times=(0.0,) + t_list)
        if t_list[0] <= 0.0 or t_list[-1] > base.T:
            raise ValueError("t_list must lie in (0, T]")
        times = tuple(sorted({0.0, *base.sample_times, *t_list}))
        solver = SolverConfig(base.dt, base.T, times, cfl_guard=base.cfl_guard)
        object.__setattr__(self, "solver", solver)
        s, p = self.besov.s, self.besov.p
        floor = max(1.0 + 1.0 / p, 1.5)
        if s <= floor:
            msg = f"s={s} is not above max(1+1/p, 3/2)={floor}"
            if not self.allow_low_regularity:
                raise ValueError(msg)
            warnings.warn(msg, stacklevel=2)

    @property
    def n_range(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def index(self, n: int) -> SequenceIndex:
        return SequenceIndex(n=n, s=self.besov.s)


@dataclass(frozen=True)
class DeviationRow:
    """All deviation quantities for one (n, t); init_dist repeats across t."""

    n: int
    t: float
    prop1_dev: float
    prop2_dev: float
    thm_dev_u: float
    thm_dev_rho: float
    init_dist: float


@dataclass(frozen=True)
class RateFit:
    """Least squares of log2(value) against the abscissa.

    residual is the root-mean-square misfit in log2 space.
    """

    slope: float
    intercept: float
    residual: float


@dataclass(frozen=True)
class CheckResult:
    """One named threshold check with its measured value."""

    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""


@dataclass(frozen=True)
class ExperimentResult:
    name: str
    config: ExperimentConfig
    rows: tuple[dict, ...]
    fits: Mapping[str, RateFit]
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def fit_rate(points: Sequence[tuple[float, float]]) -> RateFit:
    """Fit log2(value) = slope*x + intercept by least squares.

    Args:
        points: (x, value) pairs, at least 3, values strictly positive.
    """
    if len(points) < 3:
        raise ValueError("fit_rate needs at least 3 points")
    x = np.array([float(a) for a, _ in points])
    v = np.array([float(b) for _, b in points])
    if np.any(v <= 0.0) or not np.all(np.isfinite(v)):
        raise ValueError("fit_rate needs positive finite values")
    y = np.log2(v)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return RateFit(float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))))


# Shared immutable per-(L, N) objects and the per-(config, n) measurement cache.
_GRIDS: dict[tuple[float, int], Grid1D] = {}
_PARTITIONS: dict[tuple[float, int], DyadicPartition] = {}
_PAIRS: dict[tuple[ExperimentConfig, int], "PairMeasurement"] = {}


def shared_grid(L: float, N: int) -> Grid1D:
    key = (float(L), int(N))
    if key not in _GRIDS:
        _GRIDS[key] = make_grid(L, N)
    return _GRIDS[key]


def shared_partition(grid: Grid1D) -> DyadicPartition:
    key = (grid.L, grid.N)
    if key not in _PARTITIONS:
        _PARTITIONS[key] = build_partition(grid)
    return _PARTITIONS[key]


def clear_caches() -> None:
    _GRIDS.clear()
    _PARTITIONS.clear()
    _PAIRS.clear()


@dataclass(frozen=True)
class PairMeasurement:
    """Float rows and solver diagnostics for one (config, n)."""

    rows: tuple[DeviationRow, ...]
    rho_mass_drift: float
    energy_drift: float | None
    cfl_max: float
    v0_besov: float
    w0_besov: float
    sep_drift_u: float
    sep_drift_rho: float


def measure_pair(cfg: ExperimentConfig, n: int) -> PairMeasurement:
    """Evolve both data pairs at index n and reduce to deviation rows.

    The result is cached on (cfg, n); trajectories are discarded after the
    norms are taken.
    """
    key = (cfg, int(n))
    hit = _PAIRS.get(key)
    if hit is not None:
        return hit

    grid = shared_grid(cfg.L, cfg.N)
    part = shared_partition(grid)
    bp_s = cfg.besov
    bp_sm1 = cfg.besov.with_s(cfg.besov.s - 1.0)
    idx = cfg.index(n)

    st1_0 = initial_data(grid, idx, which=1)
    st2_0 = initial_data(grid, idx, which=2)
    v0, w0 = drift_fields(grid, idx, cfg.params)
    d1 = rhs(cfg.params, st1_0)
    d2 = rhs(cfg.params, st2_0)

    traj1 = evolve(cfg.params, st1_0, cfg.solver)
    traj2 = evolve(cfg.params, st2_0, cfg.solver)

    init_dist = besov_norm(part, st2_0.u - st1_0.u, bp_s) + besov_norm(
        part, st2_0.rho - st1_0.rho, bp_sm1
    )

    rows = [
        DeviationRow(
            n=n, t=0.0, prop1_dev=0.0, prop2_dev=0.0,
            thm_dev_u=besov_norm(part, st1_0.u - st2_0.u, bp_s),
            thm_dev_rho=besov_norm(part, st1_0.rho - st2_0.rho, bp_sm1),
            init_dist=init_dist,
        )
    ]
    for t in cfg.t_list:
        st1 = traj1.state_at(t)
        st2 = traj2.state_at(t)
        prop1 = besov_norm(part, st1.u - st1_0.u, bp_s) + besov_norm(
            part, st1.rho - st1_0.rho, bp_sm1
        )
        prop2 = besov_norm(part, st2.u - st2_0.u - t * v0, bp_s) + besov_norm(
            part, st2.rho - st2_0.rho - t * w0, bp_sm1
        )
        rows.append(
            DeviationRow(
                n=n, t=t, prop1_dev=prop1, prop2_dev=prop2,
                thm_dev_u=besov_norm(part, st1.u - st2.u, bp_s),
                thm_dev_rho=besov_norm(part, st1.rho - st2.rho, bp_sm1),
                init_dist=init_dist,
            )
        )

    energy = None
    if cfg.params.is_two_component_ch:
        energy = max(traj1.max_energy_drift(), traj2.max_energy_drift())
    out = PairMeasurement(
        rows=tuple(rows),
        rho_mass_drift=max(traj1.max_rho_mass_drift(), traj2.max_rho_mass_drift()),
        energy_drift=energy,
        cfl_max=max(traj1.cfl_max, traj2.cfl_max),
        v0_besov=besov_norm(part, v0, bp_s),
        w0_besov=besov_norm(part, w0, bp_sm1),
        sep_drift_u=besov_norm(part, d1.u - d2.u, bp_s),
        sep_drift_rho=besov_norm(part, d1.rho - d2.rho, bp_sm1),
    )
    _PAIRS[key] = out
    return out


def _row(experiment: str, n: int | None, t: float | None, quantity: str, value: float) -> dict:
    return {"experiment": experiment, "n": n, "t": t, "quantity": quantity, "value": float(value)}


def _slope_check(name: str, fit: RateFit, target: float, tol: float) -> CheckResult:
    return CheckResult(
        name=name,
        passed=abs(fit.slope - target) <= tol,
        value=fit.slope,
        threshold=tol,
        detail=f"target slope {target:g}, tolerance {tol:g}",
    )


def _bound_check(name: str, value: float, bound: float, detail: str = "") -> CheckResult:
    """value <= bound."""
    return CheckResult(name=name, passed=value <= bound, value=value,
                       threshold=bound, detail=detail or "upper bound")


def norm_scaling_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Fit the n-slopes of the data norms against their design exponents.

    For the u-component f_n the norm in B^{s+sigma} must scale like
    2^{n sigma}; for the density component 2^n f_n the norm in B^{s+l} must
    scale like 2^{n(l+1)}; g_n scales like 2^{-n} in every norm.
    """
    grid = shared_grid(cfg.L, cfg.N)
    part = shared_partition(grid)
    rows: list[dict] = []
    fits: dict[str, RateFit] = {}
    checks: list[CheckResult] = []

    u_vals: dict[int, list[tuple[float, float]]] = {sig: [] for sig in (-1, 0, 1)}
    rho_vals: dict[int, list[tuple[float, float]]] = {l: [] for l in (-2, -1, 0)}
    g_vals: list[tuple[float, float]] = []
    for n in cfg.n_range:
        f = build_f_n(grid, cfg.index(n))
        g = build_g_n(grid, n)
        rho = 2.0**n * f
        for sig in (-1, 0, 1):
            v = besov_norm(part, f, cfg.besov.with_s(cfg.besov.s + sig))
            u_vals[sig].append((n, v))
            rows.append(_row("norms", n, None, f"f_besov_sigma{sig:+d}", v))
        for l in (-2, -1, 0):
            v = besov_norm(part, rho, cfg.besov.with_s(cfg.besov.s + l))
            rho_vals[l].append((n, v))
            rows.append(_row("norms", n, None, f"rho_besov_l{l:+d}", v))
        gv = besov_norm(part, g, cfg.besov)
        g_vals.append((n, gv))
        rows.append(_row("norms", n, None, "g_besov", gv))

    for sig in (-1, 0, 1):
        fit = fit_rate(u_vals[sig])
        fits[f"f_sigma{sig:+d}"] = fit
        checks.append(_slope_check(f"f_slope_sigma{sig:+d}", fit, float(sig), 0.1))
    for l in (-2, -1, 0):
        fit = fit_rate(rho_vals[l])
        fits[f"rho_l{l:+d}"] = fit
        checks.append(_slope_check(f"rho_slope_l{l:+d}", fit, float(l + 1), 0.1))
    fit = fit_rate(g_vals)
    fits["g"] = fit
    checks.append(_slope_check("g_slope", fit, -1.0, 0.01))

    return ExperimentResult("norms", cfg, tuple(rows), fits, tuple(checks))


def _concentration_product(cfg: ExperimentConfig, grid: Grid1D, n: int) -> Field:
    """g_n * d/dx (2^n f_n), the single-block product of the density data."""
    f = build_f_n(grid, cfg.index(n))
    g = build_g_n(grid, n)
    return multiply_dealiased(g, derivative(2.0**n * f, 1))


def concentration_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Check that g_n d/dx(2^n f_n) lives in dyadic block n alone for n >= 5.

    Off-block fraction is the relative L2 energy outside block n; the identity
    residual compares the block-n projection against the full product.
    """
    grid = shared_grid(cfg.L, cfg.N)
    part = shared_partition(grid)
    rows: list[dict] = []
    checks: list[CheckResult] = []
    for n in cfg.n_range:
        h = _concentration_product(cfg, grid, n)
        profile = block_profile(part, h, p=2.0)
        total = float(np.sqrt(sum(v * v for _, v in profile)))
        off = float(np.sqrt(sum(v * v for j, v in profile if j != n)))
        frac = off / total if total > 0 else 0.0
        proj = lp_block(part, n, h)
        ident = lp_norm(proj - h, 2.0) / lp_norm(h, 2.0)
        rows.append(_row("concentration", n, None, "off_block_fraction", frac))
        rows.append(_row("concentration", n, None, "identity_residual", ident))
        if n >= 5:
            checks.append(_bound_check(f"off_block_n{n}", frac, 1e-10,
                                       "relative off-block L2 energy"))
            checks.append(_bound_check(f"identity_residual_n{n}", ident, 1e-12,
                                       "block-n projection equals the product"))

    return ExperimentResult("concentration", cfg, tuple(rows), {}, tuple(checks))


def _abs_cos_moment(p: float, m: int = 1 << 20) -> float:
    """((1/2pi) integral |cos|^p over a period)^(1/p) by midpoint quadrature."""
    theta = (np.arange(m) + 0.5) * (2.0 * np.pi / m)
    return float(np.mean(np.abs(np.cos(theta)) ** p) ** (1.0 / p))


_PHI_SQ_LP: dict[tuple[float, float], float] = {}


def _phi_squared_lp(L: float, p: float, refine_N: int = 1 << 18) -> float:
    """L^p norm of phi^2 on a refined grid (oracle for the limit constant)."""
    key = (float(L), float(p))
    if key not in _PHI_SQ_LP:
        grid = make_grid(L, refine_N)
        sq = bump_phi(grid).samples ** 2
        _PHI_SQ_LP[key] = float((grid.dx * np.sum(np.abs(sq) ** p)) ** (1.0 / p))
    return _PHI_SQ_LP[key]


def riemann_limit_gap(cfg: ExperimentConfig, n: int) -> dict:
    """Compare 2^{n(s-1)} |g_n d/dx(2^n f_n)|_{L^p} to its oscillatory limit.

    The limit constant is (17/12) (avg |cos|^p)^{1/p} |phi^2|_{L^p}: averaging
    of the fast carrier turns the product norm into a plain envelope norm.
    """
    if n < 5:
        raise ValueError("riemann gap is measured for n >= 5")
    grid = shared_grid(cfg.L, cfg.N)
    part = shared_partition(grid)
    s, p = cfg.besov.s, cfg.besov.p
    h = _concentration_product(cfg, grid, n)
    measured = 2.0 ** (n * (s - 1.0)) * lp_norm(h, p)
    limit = CARRIER_RATIO * _abs_cos_moment(p) * _phi_squared_lp(cfg.L, p)
    full = besov_norm(part, h, cfg.besov.with_s(s - 1.0))
    return {
        "n": n,
        "measured": measured,
        "limit": limit,
        "rel_gap": abs(measured - limit) / limit,
        "besov_consistency": abs(full - measured) / measured,
    }


def riemann_limit_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run riemann_limit_gap across n and check convergence to the constant."""
    rows: list[dict] = []
    checks: list[CheckResult] = []
    gaps: list[tuple[int, float]] = []
    for n in cfg.n_range:
        if n < 5:
            continue
        rec = riemann_limit_gap(cfg, n)
        gaps.append((n, rec["rel_gap"]))
        for q in ("measured", "limit", "rel_gap", "besov_consistency"):
            rows.append(_row("riemann", n, None, q, rec[q]))
        checks.append(_bound_check(f"besov_single_term_n{n}", rec["besov_consistency"],
                                   1e-10, "Besov norm equals the single-block formula"))
    if not gaps:
        raise ValueError("riemann experiment needs n_max >= 5")
    checks.append(_bound_check(f"rel_gap_n{gaps[-1][0]}", gaps[-1][1], 0.05,
                               "relative gap to the limit constant at n_max"))
    worst_rise = max(
        (gaps[i + 1][1] - gaps[i][1] for i in range(len(gaps) - 1)), default=0.0
    )
    checks.append(_bound_check("gap_decreasing", worst_rise, 0.0,
                               "rel_gap must not increase with n"))
    return ExperimentResult("riemann", cfg, tuple(rows), {}, tuple(checks))


def data_approximation_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Pair-1 flows stay near their data: max_t prop1_dev decays in n.

    The fitted slope must not exceed -(s - 3/2)/2 + 0.25; faster decay passes.
    """
    rows: list[dict] = []
    peaks: list[tuple[float, float]] = []
    t0_worst = 0.0
    for n in cfg.n_range:
        meas = measure_pair(cfg, n)
        for r in meas.rows:
            rows.append(_row("prop1", n, r.t, "prop1_dev", r.prop1_dev))
            if r.t == 0.0:
                t0_worst = max(t0_worst, abs(r.prop1_dev))
        peak = max(r.prop1_dev for r in meas.rows)
        peaks.append((n, peak))
        rows.append(_row("prop1", n, None, "prop1_dev_max", peak))
    fit = fit_rate(peaks)
    bound = prop1_slope_threshold(cfg.besov.s)
    checks = (
        _bound_check("prop1_slope", fit.slope, bound,
                     "n-slope of max_t deviation against -(s-3/2)/2 + 0.25"),
        _bound_check("prop1_t0_exact", t0_worst, 0.0, "deviation at t=0"),
    )
    return ExperimentResult("prop1", cfg, tuple(rows), {"prop1": fit}, checks)


def taylor_remainder_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Pair-2 remainder after removing the linear drift: small in n, t^2 in t.

    At the smallest t the n-slope must not exceed -min(s-3/2, 1/2) + 0.25; at
    n_max the log-log t-slope must land in T_SLOPE_RANGE.
    """
    rows: list[dict] = []
    at_tmin: list[tuple[float, float]] = []
    at_nmax: list[tuple[float, float]] = []
    t_min = cfg.t_list[0]
    t0_worst = 0.0
    for n in cfg.n_range:
        meas = measure_pair(cfg, n)
        for r in meas.rows:
            rows.append(_row("prop2", n, r.t, "prop2_dev", r.prop2_dev))
            if r.t == 0.0:
                t0_worst = max(t0_worst, abs(r.prop2_dev))
            if r.t == t_min:
                at_tmin.append((n, r.prop2_dev))
            if n == cfg.n_max and r.t > 0.0:
                at_nmax.append((np.log2(r.t), r.prop2_dev))
    n_fit = fit_rate(at_tmin)
    t_fit = fit_rate(at_nmax)
    lo, hi = T_SLOPE_RANGE
    bound = prop2_slope_threshold(cfg.besov.s)
    checks = (
        _bound_check("prop2_n_slope", n_fit.slope, bound,
                     f"n-slope at t={t_min:g} against -min(s-3/2, 1/2) + 0.25"),
        CheckResult("prop2_t_slope", lo <= t_fit.slope <= hi, t_fit.slope, hi,
                    f"log-log t-slope at n={cfg.n_max} must lie in [{lo}, {hi}]"),
        _bound_check("prop2_t0_exact", t0_worst, 0.0, "remainder at t=0"),
    )
    return ExperimentResult(
        "prop2", cfg, tuple(rows), {"n_slope": n_fit, "t_slope": t_fit}, checks
    )


def separation_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """The two flows separate at rate >= c t while their data merge.

    Checks: init_dist slope <= -0.9; per-component constants
    c(n) = min_t dev(n, t)/t positive for every n >= 5, stable within 20%
    across the two largest n.
    """
    rows: list[dict] = []
    init_pts: list[tuple[float, float]] = []
    c_u: dict[int, float] = {}
    c_rho: dict[int, float] = {}
    for n in cfg.n_range:
        meas = measure_pair(cfg, n)
        init_pts.append((n, meas.rows[0].init_dist))
        rows.append(_row("theorem", n, None, "init_dist", meas.rows[0].init_dist))
        rows.append(_row("theorem", n, None, "sep_drift_u", meas.sep_drift_u))
        rows.append(_row("theorem", n, None, "sep_drift_rho", meas.sep_drift_rho))
        rows.append(_row("theorem", n, None, "v0_besov", meas.v0_besov))
        rows.append(_row("theorem", n, None, "w0_besov", meas.w0_besov))
        ratios_u: list[float] = []
        ratios_rho: list[float] = []
        for r in meas.rows:
            if r.t == 0.0:
                continue
            rows.append(_row("theorem", n, r.t, "thm_dev_u", r.thm_dev_u))
            rows.append(_row("theorem", n, r.t, "thm_dev_rho", r.thm_dev_rho))
            rows.append(_row("theorem", n, r.t, "ratio_u", r.thm_dev_u / r.t))
            rows.append(_row("theorem", n, r.t, "ratio_rho", r.thm_dev_rho / r.t))
            ratios_u.append(r.thm_dev_u / r.t)
            ratios_rho.append(r.thm_dev_rho / r.t)
        c_u[n] = min(ratios_u)
        c_rho[n] = min(ratios_rho)
        rows.append(_row("theorem", n, None, "c_u", c_u[n]))
        rows.append(_row("theorem", n, None, "c_rho", c_rho[n]))

    fit = fit_rate(init_pts)
    checks: list[CheckResult] = [
        _bound_check("init_dist_slope", fit.slope, -0.9,
                     "the two data pairs merge at least like 2^{-0.9 n}")
    ]
    asserted = [n for n in cfg.n_range if n >= 5]
    for label, c in (("u", c_u), ("rho", c_rho)):
        floor = min(c[n] for n in asserted) if asserted else 0.0
        checks.append(CheckResult(
            f"c_{label}_positive", floor > 0.0, floor, 0.0,
            f"min over n >= 5 and t of thm_dev_{label}/t must be positive",
        ))
        if cfg.n_max - 1 in c:
            drift = abs(c[cfg.n_max] / c[cfg.n_max - 1] - 1.0)
            checks.append(_bound_check(
                f"c_{label}_stable", drift, 0.2,
                f"c({cfg.n_max})/c({cfg.n_max - 1}) within 20% of 1",
            ))
        else:
            checks.append(CheckResult(f"c_{label}_stable", False, float("nan"), 0.2,
                                      "needs two n values at n_max, n_max-1"))

    return ExperimentResult("theorem", cfg, tuple(rows), {"init_dist": fit}, tuple(checks))


def evolve_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Evolve the pair-2 data at n_max and report norms and drifts per sample."""
    grid = shared_grid(cfg.L, cfg.N)
    part = shared_partition(grid)
    bp_s = cfg.besov
    bp_sm1 = cfg.besov.with_s(cfg.besov.s - 1.0)
    n = cfg.n_max
    st0 = initial_data(grid, cfg.index(n), which=2)
    traj = evolve(cfg.params, st0, cfg.solver)

    rows: list[dict] = []
    for t, st in zip(traj.times, traj.states):
        rows.append(_row("evolve", n, t, "u_besov", besov_norm(part, st.u, bp_s)))
        rows.append(_row("evolve", n, t, "rho_besov", besov_norm(part, st.rho, bp_sm1)))
    rows.append(_row("evolve", n, None, "rho_mass_drift", traj.max_rho_mass_drift()))
    if cfg.params.is_two_component_ch:
        rows.append(_row("evolve", n, None, "energy_drift", traj.max_energy_drift()))
    rows.append(_row("evolve", n, None, "cfl_max", traj.cfl_max))

    checks = (
        _bound_check("rho_mass_drift", traj.max_rho_mass_drift(), 1e-10,
                     "relative drift of the density integral"),
        _bound_check("cfl_guard", traj.cfl_max, cfg.solver.cfl_guard,
                     "advective CFL number stayed under the guard"),
    )
    return ExperimentResult("evolve", cfg, tuple(rows), {}, checks)
