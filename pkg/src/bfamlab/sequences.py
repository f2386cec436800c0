"""Initial-data families: spectral bump, high-frequency packets, drift fields.

The envelope phi is defined through its Fourier transform: phi_hat is the
smooth even cutoff equal to 1 on |xi| <= 1/4 and 0 on |xi| >= 1/2 (the same
exp-based step as the dyadic partition, rescaled).  On the periodic grid the
field is realized as the periodization of the line function, with
coefficients phi_hat(xi_k)/(2L) recentered at x = 0.  All band-limitation
statements below are exact grid identities; only the reading of grid norms
as line-function norms carries a periodization correction (the envelope
retains about 0.7% of its peak at the domain edge for L = 64, which enters
quadratic functionals at the 1e-5 level).

The packet

    f_n = 2^{-ns} phi(x) sin(c_n x),   c_n = (17/12) 2^n,

is likewise built spectrally from the exact line transform
f_hat(xi) = 2^{-ns} [phi_hat(xi - c_n) - phi_hat(xi + c_n)]/(2i), which makes
its band limitation  supp f_hat subset of +-c_n + [-1/2, 1/2]  exact rather
than a tolerance statement.  The carrier c_n sits on the plateau of dyadic
block n, so Delta_n f_n = f_n for n >= 3.

The perturbation is g_n = 2^{-n} phi.  Data pairs:

    which=1: (f_n, 2^n f_n)          which=2: (f_n + g_n, 2^n f_n + g_n)

Drift fields (first-order coefficients of the pair-2 flow):
v0 = u0 d/dx u0 and w0 = k3 u0 d/dx rho0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bfamily import BFamilyParams, State
from .littlewood_paley import smooth_bump_symbol
from .spectral import Field, Grid1D, derivative, multiply_dealiased

__all__ = [
    "BumpSpec",
    "SequenceIndex",
    "CapacityError",
    "CARRIER_RATIO",
    "capacity_check",
    "max_feasible_n",
    "bump_phi",
    "build_f_n",
    "build_g_n",
    "initial_data",
    "drift_fields",
]

#: Carrier frequency multiplier: c_n = CARRIER_RATIO * 2^n.
CARRIER_RATIO = 17.0 / 12.0


class CapacityError(ValueError):
    """The grid cannot hold the requested packet (or its quadratic products)."""


@dataclass(frozen=True)
class BumpSpec:
    """Envelope transform: 1 on |xi| <= plateau, 0 on |xi| >= support."""

    plateau: float = 0.25
    support: float = 0.5

    def __post_init__(self) -> None:
        if not 0 < self.plateau < self.support:
            raise ValueError("need 0 < plateau < support")

    def symbol(self, xi: np.ndarray) -> np.ndarray:
        return smooth_bump_symbol(xi, self.plateau, self.support)


_DEFAULT_BUMP = BumpSpec()


def _centering_phase(grid: Grid1D) -> np.ndarray:
    """Phase e^{-i xi_k L} placing analytic constructions at x = 0.

    Raw FFT coefficients reference the first grid point x = -L; since
    xi_k L = pi k, recentering is the alternating sign (-1)^k, which is
    (-1)^j in storage order for even N.
    """
    return np.where(np.arange(grid.N) % 2 == 0, 1.0, -1.0)


@dataclass(frozen=True)
class SequenceIndex:
    """Packet index n >= 3 and the regularity s used in the amplitude 2^{-ns}."""

    n: int
    s: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 3:
            raise ValueError("n must be an integer >= 3")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "s", float(self.s))


def capacity_check(grid: Grid1D, n: int) -> None:
    """Require (17/6) 2^n + 1 <= (2/3) nyquist so quadratic products of the
    packet data stay inside the retained band."""
    need = 2.0 * CARRIER_RATIO * 2.0**n + 1.0
    have = (2.0 / 3.0) * grid.nyquist
    if need > have:
        raise CapacityError(
            f"grid too coarse for n={n}: products reach |xi|={need:.6g} but the "
            f"dealias band ends at {have:.6g}; maximal feasible n is {max_feasible_n(grid)}"
        )


def max_feasible_n(grid: Grid1D) -> int:
    n = 3
    while 2.0 * CARRIER_RATIO * 2.0 ** (n + 1) + 1.0 <= (2.0 / 3.0) * grid.nyquist:
        n += 1
    return n


def bump_phi(grid: Grid1D, spec: BumpSpec = _DEFAULT_BUMP) -> Field:
    """The envelope as a grid field: coefficients phi_hat(xi_k)/(2L)."""
    coeff = spec.symbol(grid.xi) / (2.0 * grid.L) * _centering_phase(grid)
    return Field.from_spectrum(grid, coeff.astype(complex))


def build_f_n(grid: Grid1D, idx: SequenceIndex, spec: BumpSpec = _DEFAULT_BUMP) -> Field:
    """f_n = 2^{-ns} phi(x) sin((17/12) 2^n x), built spectrally.

    Coefficients are the sampled line transform divided by 2L, so the support
    bound +-c_n + [-1/2, 1/2] holds exactly on the grid.
    """
    capacity_check(grid, idx.n)
    c = CARRIER_RATIO * 2.0**idx.n
    amp = 2.0 ** (-idx.n * idx.s)
    coeff = (
        -0.5j
        * amp
        * (spec.symbol(grid.xi - c) - spec.symbol(grid.xi + c))
        / (2.0 * grid.L)
        * _centering_phase(grid)
    )
    return Field.from_spectrum(grid, coeff)


def build_g_n(grid: Grid1D, n: int, spec: BumpSpec = _DEFAULT_BUMP) -> Field:
    """g_n = 2^{-n} phi."""
    return 2.0**(-n) * bump_phi(grid, spec)


def initial_data(grid: Grid1D, idx: SequenceIndex, which: int) -> State:
    """Data pair 1 (f_n, 2^n f_n) or pair 2 (f_n + g_n, 2^n f_n + g_n)."""
    f = build_f_n(grid, idx)
    if which == 1:
        return State(u=f, rho=2.0**idx.n * f)
    if which == 2:
        g = build_g_n(grid, idx.n)
        return State(u=f + g, rho=2.0**idx.n * f + g)
    raise ValueError(f"which must be 1 or 2, got {which!r}")


def drift_fields(grid: Grid1D, idx: SequenceIndex, P: BFamilyParams) -> tuple[Field, Field]:
    """(v0, w0) = (u0 d/dx u0, k3 u0 d/dx rho0) for the which=2 data."""
    st = initial_data(grid, idx, which=2)
    v0 = multiply_dealiased(st.u, derivative(st.u, 1))
    w0 = P.k3 * multiply_dealiased(st.u, derivative(st.rho, 1))
    return v0, w0
