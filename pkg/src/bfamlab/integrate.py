"""Fixed-step classical RK4 integration of the b-family field.

Explicit RK4 with a constant dt; no adaptivity, so reruns are bit-identical.
The smoothing multipliers are bounded (|i xi/(1+xi^2)| <= 1/2), so the only
stability constraint is the advective CFL number dt/dx*max|u|, monitored
every step against `cfl_guard`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bfamily import BFamilyParams, State, conserved_quantities
from .spectral import Field, Grid1D, lp_norm

__all__ = [
    "SolverConfig",
    "Trajectory",
    "BlowUpError",
    "CflViolationError",
    "rk4_step",
    "evolve",
]


class BlowUpError(RuntimeError):
    """Non-finite values appeared during time stepping."""


class CflViolationError(RuntimeError):
    """The advective CFL number exceeded the configured guard."""


@dataclass(frozen=True)
class SolverConfig:
    """Time-stepping parameters.

    sample_times are snapped to integer multiples of dt at construction; the
    largest snap distance is recorded in `snap_distance`.  T = 0 is allowed
    only with sample_times = [0] (the initial state is echoed).
    """

    dt: float
    T: float
    sample_times: tuple[float, ...]
    cfl_guard: float = 0.5
    snap_distance: float = 0.0

    def __post_init__(self) -> None:
        dt = float(self.dt)
        T = float(self.T)
        if not dt > 0:
            raise ValueError("dt must be positive")
        if T < 0:
            raise ValueError("T must be non-negative")
        if T > 0 and dt > T:
            raise ValueError("need dt <= T")
        if not self.cfl_guard > 0:
            raise ValueError("cfl_guard must be positive")
        requested = [float(t) for t in self.sample_times]
        if not requested:
            raise ValueError("sample_times must be non-empty")
        snapped = []
        worst = 0.0
        for t in requested:
            k = round(t / dt)
            st = k * dt
            worst = max(worst, abs(st - t))
            if st < -1e-12 or st > T * (1 + 1e-12) + 1e-15:
                raise ValueError(f"sample time {t} outside [0, T={T}]")
            snapped.append(st)
        if T == 0 and any(s != 0.0 for s in snapped):
            raise ValueError("T=0 admits only sample_times=[0]")
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "sample_times", tuple(sorted(set(snapped))))
        object.__setattr__(self, "cfl_guard", float(self.cfl_guard))
        object.__setattr__(self, "snap_distance", worst)

    @property
    def sample_steps(self) -> tuple[int, ...]:
        return tuple(int(round(t / self.dt)) for t in self.sample_times)


@dataclass(frozen=True)
class Trajectory:
    """States sampled along one run, with per-sample conserved quantities."""

    times: tuple[float, ...]
    states: tuple[State, ...]
    conserved: tuple[dict[str, float], ...]
    conserved0: dict[str, float]
    rho_scale: float
    cfl_max: float

    def state_at(self, t: float) -> State:
        for ti, st in zip(self.times, self.states):
            if abs(ti - t) <= 1e-9 * max(1.0, abs(t)):
                return st
        raise KeyError(f"time {t} was not sampled")

    def max_rho_mass_drift(self) -> float:
        """Largest |rho_mass(t) - rho_mass(0)| relative to the data scale.

        The sequences' densities are odd (zero mass), so the drift is measured
        against max(|mass(0)|, ||rho(0)||_L2) instead of |mass(0)| alone.
        """
        m0 = self.conserved0["rho_mass"]
        denom = max(abs(m0), self.rho_scale, 1e-300)
        return max(abs(c["rho_mass"] - m0) for c in self.conserved) / denom

    def max_energy_drift(self) -> float:
        e0 = self.conserved0.get("energy_2ch")
        if e0 is None:
            raise KeyError("energy_2ch is tracked only for (k1,k3)=(2,1)")
        return max(abs(c["energy_2ch"] - e0) for c in self.conserved) / abs(e0)


class _Stepper:
    """RK4 on raw (unnormalized fft) spectra; one instance per (params, grid)."""

    def __init__(self, P: BFamilyParams, grid: Grid1D):
        xi = grid.xi
        mask = grid.dealias_mask.astype(float)
        ik = 1j * xi
        ik[grid.N // 2] = 0.0
        self.mask = mask
        self.ik = ik * mask
        self.nonlocal_sym = (ik / (1.0 + xi**2)) * mask
        self.k1, self.k2, self.k3 = P.k1, P.k2, P.k3

    def rhs(self, uh: np.ndarray, rh: np.ndarray):
        u = np.fft.ifft(self.mask * uh).real
        ux = np.fft.ifft(self.ik * uh).real
        r = np.fft.ifft(self.mask * rh).real
        rx = np.fft.ifft(self.ik * rh).real
        quad = 0.5 * (self.k1 * u * u + (3.0 - self.k1) * ux * ux + self.k2 * r * r)
        duh = self.mask * np.fft.fft(u * ux) + self.nonlocal_sym * np.fft.fft(quad)
        drh = self.k3 * (self.mask * np.fft.fft(u * rx + r * ux))
        umax = float(np.max(np.abs(u)))
        rmax = float(np.max(np.abs(r)))
        return duh, drh, umax, rmax

    def step(self, uh: np.ndarray, rh: np.ndarray, dt: float):
        k1u, k1r, umax, rmax = self.rhs(uh, rh)
        k2u, k2r, _, _ = self.rhs(uh + 0.5 * dt * k1u, rh + 0.5 * dt * k1r)
        k3u, k3r, _, _ = self.rhs(uh + 0.5 * dt * k2u, rh + 0.5 * dt * k2r)
        k4u, k4r, _, _ = self.rhs(uh + dt * k3u, rh + dt * k3r)
        un = uh + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        rn = rh + (dt / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
        return un, rn, umax, rmax


def _wrap(grid: Grid1D, uh: np.ndarray, rh: np.ndarray) -> State:
    return State(
        u=Field.from_spectrum(grid, uh / grid.N),
        rho=Field.from_spectrum(grid, rh / grid.N),
    )


def rk4_step(P: BFamilyParams, st: State, dt: float) -> State:
    """One classical RK4 step of size dt."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    grid = st.grid
    stepper = _Stepper(P, grid)
    uh = st.u.spectrum * grid.N
    rh = st.rho.spectrum * grid.N
    un, rn, umax, rmax = stepper.step(uh, rh, dt)
    if not (np.isfinite(umax) and np.isfinite(rmax) and np.all(np.isfinite(un)) and np.all(np.isfinite(rn))):
        raise BlowUpError(f"numerical blow-up at t={dt:.6g}")
    return _wrap(grid, un, rn)


def evolve(P: BFamilyParams, st0: State, cfg: SolverConfig) -> Trajectory:
    """Integrate st0 to the last requested sample time, recording samples.

    Raises BlowUpError on non-finite values and CflViolationError when
    dt/dx*max|u| exceeds cfg.cfl_guard (checked at t=0 and every step).
    """
    grid = st0.grid
    dtdx = cfg.dt / grid.dx
    u0max = float(np.max(np.abs(st0.u.samples)))
    if dtdx * u0max > cfg.cfl_guard:
        raise CflViolationError(
            f"CFL violation at t=0: dt/dx*max|u| = {dtdx * u0max:.6g} > {cfg.cfl_guard}"
        )

    stepper = _Stepper(P, grid)
    uh = st0.u.spectrum * grid.N
    rh = st0.rho.spectrum * grid.N

    wanted = dict.fromkeys(cfg.sample_steps)
    times, states, conserved = [], [], []

    def record(step: int) -> None:
        st = _wrap(grid, uh, rh)
        times.append(step * cfg.dt)
        states.append(st)
        conserved.append(conserved_quantities(P, st))

    if 0 in wanted:
        record(0)
    cfl_max = dtdx * u0max
    last = max(cfg.sample_steps)
    for step in range(1, last + 1):
        t = step * cfg.dt
        uh, rh, umax, rmax = stepper.step(uh, rh, cfg.dt)
        if not (np.isfinite(umax) and np.isfinite(rmax)):
            raise BlowUpError(f"numerical blow-up at t={t:.6g}")
        cfl = dtdx * umax
        cfl_max = max(cfl_max, cfl)
        if cfl > cfg.cfl_guard:
            raise CflViolationError(
                f"CFL violation at t={t:.6g}: dt/dx*max|u| = {cfl:.6g} > {cfg.cfl_guard}"
            )
        if step in wanted:
            if not (np.all(np.isfinite(uh)) and np.all(np.isfinite(rh))):
                raise BlowUpError(f"numerical blow-up at t={t:.6g}")
            record(step)

    return Trajectory(
        times=tuple(times),
        states=tuple(states),
        conserved=tuple(conserved),
        conserved0=conserved_quantities(P, st0),
        rho_scale=lp_norm(st0.rho, 2),
        cfl_max=cfl_max,
    )
