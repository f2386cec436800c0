"""Acceptance gate: the ten advertised guarantees at laboratory scale.

One test per criterion.  Each records a [PASS]/[FAIL] line (echoed again in
the terminal summary by a conftest hook) and then asserts, so the pytest exit
status is the gate.  Defaults throughout: L = 64, N = 2^16, n = 4..8,
dt = 1e-3, T = 0.1, t_list = (0.02, 0.04, 0.06, 0.08, 0.1).

The expensive criteria share one measurement cache per configuration, so the
whole file stays within a few minutes of wall clock.
"""

from __future__ import annotations

import numpy as np
import pytest

from bfamlab import (
    BFamilyParams,
    BesovParams,
    ExperimentConfig,
    SequenceIndex,
    build_f_n,
    concentration_experiment,
    data_approximation_experiment,
    lp_block,
    norm_scaling_experiment,
    riemann_limit_experiment,
    run_validation,
    separation_experiment,
    taylor_remainder_experiment,
)
from bfamlab.experiments import shared_grid, shared_partition

CASE_I = BFamilyParams.from_case("i", 2.0)
CASE_II = BFamilyParams.from_case("ii", 3.0)
BP_MAIN = BesovParams(s=2.0, p=2.0, r=2.0)
BP_ALT = BesovParams(s=1.75, p=4.0, r=1.0)

RESULTS: list[tuple[int, str, bool, str]] = []


def _record(num: int, label: str, ok: bool, detail: str) -> None:
    RESULTS.append((num, label, bool(ok), detail))
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {label} ({detail})"
    print(line)
    assert ok, line


def _by_name(result) -> dict:
    return {c.name: c for c in result.checks}


@pytest.fixture(scope="module")
def cfg_main():
    return ExperimentConfig(besov=BP_MAIN, params=CASE_I)


@pytest.fixture(scope="module")
def validation(cfg_main):
    return run_validation(cfg_main)


def test_criterion_01_spectral_identities(validation):
    names = ("partition_residual", "helmholtz_roundtrip", "parseval",
             "multiplier_linearity")
    cs = [_by_name(validation)[name] for name in names]
    ok = all(c.passed for c in cs)
    detail = ", ".join(f"{c.name}={c.value:.2e}" for c in cs)
    _record(1, "spectral identities", ok, detail)


def test_criterion_02_block_structure(validation):
    disjoint = _by_name(validation)["block_disjointness"]
    grid = shared_grid(64.0, 65536)
    part = shared_partition(grid)
    worst_off = worst_ident = 0.0
    for n in range(3, 9):
        f = build_f_n(grid, SequenceIndex(n=n, s=BP_MAIN.s))
        total = float(np.sqrt(np.sum(np.abs(f.spectrum) ** 2)))
        off = float(np.sqrt(np.sum(
            np.abs(f.spectrum * (1.0 - part.symbol(n))) ** 2))) / total
        blk = lp_block(part, n, f)
        ident = float(np.sqrt(np.sum(
            np.abs(blk.spectrum - f.spectrum) ** 2))) / total
        worst_off = max(worst_off, off)
        worst_ident = max(worst_ident, ident)
    ok = disjoint.passed and worst_off <= 1e-12 and worst_ident <= 1e-12
    detail = (f"symbol_overlap={disjoint.value:.1e}, "
              f"off_block<={worst_off:.1e}, identity<={worst_ident:.1e}, n=3..8")
    _record(2, "dyadic block structure", ok, detail)


def test_criterion_03_concentration():
    cfg = ExperimentConfig(besov=BP_MAIN, params=CASE_I, n_min=5, n_max=8)
    res = concentration_experiment(cfg)
    worst = max(c.value for c in res.checks if c.name.startswith("off_block"))
    _record(3, "product concentration", res.passed,
            f"max off-block fraction {worst:.2e} over n=5..8")


def test_criterion_04_norm_scalings(cfg_main):
    res = norm_scaling_experiment(cfg_main)
    cs = _by_name(res)
    detail = ", ".join(
        f"{name}={cs[name].value:+.3f}"
        for name in ("f_slope_sigma-1", "f_slope_sigma+0", "f_slope_sigma+1",
                     "rho_slope_l-2", "rho_slope_l-1", "rho_slope_l+0", "g_slope"))
    _record(4, "data norm scalings", res.passed, detail)


def test_criterion_05_riemann_limit():
    parts = []
    ok = True
    for p in (2.0, 4.0):
        cfg = ExperimentConfig(besov=BesovParams(s=2.0, p=p, r=2.0),
                               params=CASE_I, n_min=5, n_max=8)
        res = riemann_limit_experiment(cfg)
        ok = ok and res.passed
        gap = _by_name(res)["rel_gap_n8"]
        mono = _by_name(res)["gap_decreasing"]
        parts.append(
            f"p={p:g}: rel_gap_n8={gap.value:.2e} "
            f"[{'ok' if gap.passed else 'bad'}], "
            f"worst_gap_rise={mono.value:.2e} "
            f"[{'ok' if mono.passed else 'bad'}]")
    _record(5, "riemann limit", ok, "; ".join(parts))


def test_criterion_06_solver_validation(validation):
    names = ("rk4_global_order", "energy_drift_2ch", "rho_mass_drift",
             "resolution_independence")
    cs = [_by_name(validation)[name] for name in names]
    ok = all(c.passed for c in cs)
    detail = ", ".join(f"{c.name}={c.value:.3g}" for c in cs)
    _record(6, "solver validation", ok, detail)


def test_criterion_07_prop1_rate(cfg_main):
    res = data_approximation_experiment(cfg_main)
    slope = _by_name(res)["prop1_slope"]
    _record(7, "data approximation rate", res.passed,
            f"slope={slope.value:+.3f} <= {slope.threshold:+.3f}, t0 exact")


def test_criterion_08_prop2_rates(cfg_main):
    res = taylor_remainder_experiment(cfg_main)
    cs = _by_name(res)
    n_sl, t_sl = cs["prop2_n_slope"], cs["prop2_t_slope"]
    detail = (f"n_slope={n_sl.value:+.3f} <= {n_sl.threshold:+.3f} "
              f"[{'ok' if n_sl.passed else 'bad'}], "
              f"t_slope={t_sl.value:+.3f} in [1.7, 2.3] "
              f"[{'ok' if t_sl.passed else 'bad'}]")
    _record(8, "drift remainder rates", res.passed, detail)


def test_criterion_09_separation(cfg_main):
    parts = []
    ok = True
    for tag, params in (("i", CASE_I), ("ii", CASE_II)):
        cfg = cfg_main if params is CASE_I else ExperimentConfig(
            besov=BP_MAIN, params=params)
        res = separation_experiment(cfg)
        ok = ok and res.passed
        cs = _by_name(res)
        parts.append(f"case {tag}: c_u={cs['c_u_positive'].value:.3g} "
                     f"stable {cs['c_u_stable'].value:.1%}, "
                     f"c_rho={cs['c_rho_positive'].value:.3g} "
                     f"stable {cs['c_rho_stable'].value:.1%}")
    _record(9, "separation lower bound", ok, "; ".join(parts))


def test_criterion_10_second_regularity_point():
    cfg_i = ExperimentConfig(besov=BP_ALT, params=CASE_I)
    cfg_ii = ExperimentConfig(besov=BP_ALT, params=CASE_II)
    runs = (
        ("norms", norm_scaling_experiment(cfg_i)),
        ("prop1", data_approximation_experiment(cfg_i)),
        ("prop2", taylor_remainder_experiment(cfg_i)),
        ("theorem/i", separation_experiment(cfg_i)),
        ("theorem/ii", separation_experiment(cfg_ii)),
    )
    ok = all(res.passed for _, res in runs)
    detail = "(s,p,r)=(7/4,4,1); " + ", ".join(
        f"{name}={'ok' if res.passed else 'bad'}" for name, res in runs)
    bad = [f"{name}:{c.name}={c.value:.3g}"
           for name, res in runs for c in res.checks if not c.passed]
    if bad:
        detail += "; failing: " + ", ".join(bad)
    _record(10, "second regularity point", ok, detail)
