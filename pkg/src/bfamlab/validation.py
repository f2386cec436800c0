"""Invariant checklist: spectral identities, block structure, solver accuracy.

Every check returns a named residual so the report can show measured values,
not just booleans.  The suite runs on small self-contained grids (the solver
checks use L = pi so that integer modes are exact grid frequencies); only the
resolution-independence check uses the configured domain half-period.
"""

from __future__ import annotations

import numpy as np

from .bfamily import BFamilyParams, State
from .experiments import CheckResult, ExperimentConfig, ExperimentResult, _row
from .integrate import SolverConfig, evolve, rk4_step
from .littlewood_paley import BesovParams, besov_norm, build_partition
from .sequences import SequenceIndex, build_f_n, initial_data
from .spectral import (
    Field,
    derivative,
    helmholtz_solve,
    lp_norm,
    make_grid,
    multiply_dealiased,
)

__all__ = ["run_validation"]


def _random_band_limited(grid, rng, frac: float, scale: float = 1.0) -> Field:
    """Random real field with spectrum confined to |xi| <= frac*nyquist."""
    raw = Field.from_samples(grid, rng.standard_normal(grid.N))
    keep = np.abs(grid.xi) <= frac * grid.nyquist
    f = Field.from_spectrum(grid, raw.spectrum * keep)
    return (scale / lp_norm(f, 2.0)) * f


def _partition_checks(L: float) -> list[CheckResult]:
    grid = make_grid(L, 4096)
    part = build_partition(grid)
    total = part.chi.copy()
    for psi in part.psis:
        total = total + psi
    resid = float(np.max(np.abs(total - 1.0)))
    out = [CheckResult("partition_residual", resid <= 1e-14, resid, 1e-14,
                       "max |chi + sum psi_j - 1| over grid frequencies")]

    plateau = float(np.max(np.abs(part.chi[np.abs(grid.xi) <= 1.0] - 1.0)))
    support = float(np.max(np.abs(part.chi[np.abs(grid.xi) >= 4.0 / 3.0])))
    out.append(CheckResult("chi_plateau_exact", plateau == 0.0, plateau, 0.0,
                           "chi equals 1 on |xi| <= 1"))
    out.append(CheckResult("chi_support_exact", support == 0.0, support, 0.0,
                           "chi vanishes on |xi| >= 4/3"))

    worst = 0.0
    blocks = list(part.block_indices)
    for i, j in zip(blocks, blocks[2:]):
        worst = max(worst, float(np.max(np.abs(part.symbol(i) * part.symbol(j)))))
    out.append(CheckResult("block_disjointness", worst == 0.0, worst, 0.0,
                           "symbol overlap for |j - j'| >= 2"))
    return out


def _spectral_checks(L: float) -> list[CheckResult]:
    grid = make_grid(L, 2048)
    rng = np.random.default_rng(2026)
    f = _random_band_limited(grid, rng, frac=0.5)
    g = _random_band_limited(grid, rng, frac=0.5)

    sol = helmholtz_solve(f)
    back = sol - derivative(sol, 2)
    roundtrip = lp_norm(back - f, 2.0) / lp_norm(f, 2.0)

    quad = grid.dx * float(np.sum(np.abs(f.samples) ** 2))
    spec = 2.0 * grid.L * float(np.sum(np.abs(f.spectrum) ** 2))
    parseval = abs(quad - spec) / spec

    a, b = float(np.sqrt(2.0)), -np.pi / 3.0
    lin_lhs = derivative(a * f + b * g, 1)
    lin_rhs = a * derivative(f, 1) + b * derivative(g, 1)
    linearity = lp_norm(lin_lhs - lin_rhs, 2.0) / lp_norm(lin_rhs, 2.0)

    return [
        CheckResult("helmholtz_roundtrip", roundtrip <= 1e-12, float(roundtrip), 1e-12,
                    "(1 - dxx) applied to the Helmholtz solve returns the input"),
        CheckResult("parseval", parseval <= 1e-12, float(parseval), 1e-12,
                    "grid quadrature of |f|^2 against the coefficient sum"),
        CheckResult("multiplier_linearity", linearity <= 1e-12, float(linearity), 1e-12,
                    "d/dx distributes over linear combinations"),
    ]


def _packet_check(L: float) -> CheckResult:
    grid = make_grid(L, 4096)
    part = build_partition(grid)
    n = 4
    f = build_f_n(grid, SequenceIndex(n=n, s=2.0))
    total = lp_norm(f, 2.0)
    spec = f.spectrum * (1.0 - part.symbol(n))
    off = float(np.sqrt(2.0 * grid.L * np.sum(np.abs(spec) ** 2))) / total
    return CheckResult("packet_single_block", off <= 1e-12, off, 1e-12,
                       "f_n energy outside dyadic block n")


def _dealias_check(L: float) -> CheckResult:
    """Coarse dealiased product against the exact product on a doubled grid."""
    coarse = make_grid(L, 512)
    fine = make_grid(L, 1024)
    rng = np.random.default_rng(7)
    fc = _random_band_limited(coarse, rng, frac=0.6)
    gc = _random_band_limited(coarse, rng, frac=0.6)

    def lift(field: Field) -> Field:
        spec = np.zeros(fine.N, dtype=complex)
        half = coarse.N // 2
        spec[:half] = field.spectrum[:half]
        spec[fine.N - half + 1:] = field.spectrum[half + 1:]
        return Field.from_spectrum(fine, spec)

    hc = multiply_dealiased(fc, gc)
    hf = multiply_dealiased(lift(fc), lift(gc))
    band = np.abs(coarse.xi) <= (2.0 / 3.0) * coarse.nyquist
    half = coarse.N // 2
    fine_slots = np.concatenate([hf.spectrum[:half], hf.spectrum[fine.N - half:]])
    diff = (hc.spectrum - fine_slots) * band
    resid = float(np.sqrt(np.sum(np.abs(diff) ** 2) / np.sum(np.abs(hf.spectrum) ** 2)))
    return CheckResult("dealias_oracle", resid <= 1e-12, resid, 1e-12,
                       "masked product matches the double-resolution product in band")


def _solver_state(grid) -> State:
    spec_u = np.zeros(grid.N, dtype=complex)
    spec_r = np.zeros(grid.N, dtype=complex)
    # modes are integers because L = pi
    spec_u[1], spec_u[-1] = 0.15 - 0.05j, 0.15 + 0.05j
    spec_u[2], spec_u[-2] = -0.05j, 0.05j
    spec_r[1], spec_r[-1] = 0.1, 0.1
    spec_r[3], spec_r[-3] = 0.025j, -0.025j
    return State(u=Field.from_spectrum(grid, spec_u), rho=Field.from_spectrum(grid, spec_r))


def _rk4_checks(params: BFamilyParams) -> list[CheckResult]:
    grid = make_grid(np.pi, 256)
    st = _solver_state(grid)

    def advance(state: State, dt: float, steps: int) -> State:
        for _ in range(steps):
            state = rk4_step(params, state, dt)
        return state

    # local probe: one step of h against two steps of h/2, then h -> h/2,
    # so the defect shrinks by the one-step truncation factor 2^5
    dt = 1.0 / 32.0
    e_loc = []
    for h in (dt, dt / 2.0):
        one = advance(st, h, 1)
        two = advance(st, h / 2.0, 2)
        e_loc.append(lp_norm(one.u - two.u, 2.0) + lp_norm(one.rho - two.rho, 2.0))
    local_ratio = e_loc[0] / e_loc[1]
    checks = [CheckResult("rk4_local_ratio", 26.0 <= local_ratio <= 38.0,
                          float(local_ratio), 32.0,
                          "one-step defect shrinks ~2^5 when dt halves")]

    # global probe: fixed interval, step counts m, 2m, 4m; successive
    # differences shrink by 2^4
    tau, m = 0.5, 32
    c1 = advance(st, tau / m, m)
    c2 = advance(st, tau / (2 * m), 2 * m)
    c4 = advance(st, tau / (4 * m), 4 * m)
    d1 = lp_norm(c1.u - c2.u, 2.0) + lp_norm(c1.rho - c2.rho, 2.0)
    d2 = lp_norm(c2.u - c4.u, 2.0) + lp_norm(c2.rho - c4.rho, 2.0)
    order = float(np.log2(d1 / d2))
    checks.append(CheckResult("rk4_global_order", 3.5 <= order <= 4.5, order, 4.0,
                              "Richardson order over a fixed interval"))
    checks.append(CheckResult("rk4_global_ratio", 12.0 <= d1 / d2 <= 20.0,
                              float(d1 / d2), 16.0,
                              "successive Richardson differences, order-4 target"))
    return checks


def _conservation_checks() -> list[CheckResult]:
    grid = make_grid(np.pi, 256)
    st = _solver_state(grid)
    params = BFamilyParams.from_case("i", b=2.0)
    cfg = SolverConfig(dt=1e-3, T=1.0, sample_times=(0.0, 0.25, 0.5, 0.75, 1.0))
    traj = evolve(params, st, cfg)
    energy = traj.max_energy_drift()
    mass = traj.max_rho_mass_drift()
    return [
        CheckResult("energy_drift_2ch", energy <= 1e-8, energy, 1e-8,
                    "relative drift of int u^2 + u_x^2 + k2 rho^2 over T=1"),
        CheckResult("rho_mass_drift", mass <= 1e-10, mass, 1e-10,
                    "relative drift of int rho over T=1"),
    ]


def _resolution_check(cfg: ExperimentConfig) -> CheckResult:
    """Besov norm of an evolved packet must survive N -> 2N in the grid."""
    n = 4
    bp = BesovParams(s=2.0, p=2.0, r=2.0)
    solver = SolverConfig(dt=1e-3, T=0.05, sample_times=(0.05,))
    values = []
    for N in (4096, 8192):
        grid = make_grid(cfg.L, N)
        part = build_partition(grid)
        st0 = initial_data(grid, SequenceIndex(n=n, s=bp.s), which=1)
        traj = evolve(cfg.params, st0, solver)
        st = traj.state_at(0.05)
        values.append(besov_norm(part, st.u, bp))
    rel = abs(values[1] - values[0]) / values[1]
    return CheckResult("resolution_independence", rel <= 1e-6, float(rel), 1e-6,
                       "evolved-norm change under N -> 2N")


def run_validation(cfg: ExperimentConfig) -> ExperimentResult:
    """Run the full invariant checklist; PASS only when every residual holds."""
    checks: list[CheckResult] = []
    checks.extend(_partition_checks(cfg.L))
    checks.extend(_spectral_checks(cfg.L))
    checks.append(_packet_check(cfg.L))
    checks.append(_dealias_check(cfg.L))
    checks.extend(_rk4_checks(cfg.params))
    checks.extend(_conservation_checks())
    checks.append(_resolution_check(cfg))
    rows = tuple(_row("validate", None, None, c.name, c.value) for c in checks)
    return ExperimentResult("validate", cfg, rows, {}, tuple(checks))
