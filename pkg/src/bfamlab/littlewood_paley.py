"""Dyadic partition of unity and Besov norms on the periodic grid.

The partition is built from one concrete smooth step h(t) = exp(-1/t) for
t > 0 (else 0).  The low-pass symbol is

    chi(xi) = h((4/3 - |xi|)/(1/3)) / [h((4/3 - |xi|)/(1/3)) + h((|xi| - 1)/(1/3))]

which equals 1 for |xi| <= 1 and 0 for |xi| >= 4/3, with a smooth monotone
transition.  Ring symbols telescope off chi:

    psi_j(xi) = chi(2^{-j-1} xi) - chi(2^{-j} xi),   j = 0..J_max,

supported in {2^j <= |xi| <= (8/3) 2^j} with plateau [(4/3) 2^j, 2^{j+1}].
J_max is the smallest J with 2^{J+1} >= nyquist, so the telescoped sum equals
1 at every grid frequency exactly.  Blocks with j <= -2 are identically zero
by convention.

The same step function, rescaled, builds the spectral envelope bump used by
the initial-data sequences (see `smooth_bump_symbol`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import Field, Grid1D, lp_norm

__all__ = [
    "DyadicPartition",
    "BesovParams",
    "smooth_bump_symbol",
    "build_partition",
    "lp_block",
    "besov_norm",
    "block_profile",
]


def _h(t: np.ndarray) -> np.ndarray:
    """The C-infinity step seed: exp(-1/t) for t > 0, else 0."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_bump_symbol(xi: np.ndarray, plateau: float, support: float) -> np.ndarray:
    """Even C-infinity cutoff: 1 on |xi| <= plateau, 0 on |xi| >= support.

    Args:
        xi: frequencies to sample at (any shape).
        plateau: radius of the flat region, 0 < plateau < support.
        support: radius outside which the symbol vanishes.

    Returns:
        Values in [0, 1]; exactly 1.0 on the plateau and exactly 0.0 outside
        the support (the transition uses exp(-1/t) ratios, so both extremes
        are attained in floating point).
    """
    if not 0 < plateau < support:
        raise ValueError("need 0 < plateau < support")
    a = np.abs(np.asarray(xi, dtype=float))
    width = support - plateau
    up = _h((support - a) / width)
    down = _h((a - plateau) / width)
    return up / (up + down)


def _chi(xi: np.ndarray) -> np.ndarray:
    return smooth_bump_symbol(xi, 1.0, 4.0 / 3.0)


@dataclass(frozen=True, eq=False)
class DyadicPartition:
    """Sampled symbols chi and psi_j realizing the blocks Delta_j on a grid.

    Attributes:
        grid: the grid the symbols were sampled on.
        chi: low-pass symbol values at each grid frequency (block j = -1).
        psis: ring symbol values, psis[j] for blocks j = 0..J_max.
        J_max: top block index; 2^{J_max+1} >= nyquist so the partition is
            exact on the whole grid.
    """

    grid: Grid1D
    chi: np.ndarray
    psis: tuple[np.ndarray, ...]
    J_max: int

    @property
    def block_indices(self) -> range:
        return range(-1, self.J_max + 1)

    def symbol(self, j: int) -> np.ndarray:
        """Symbol of block j; the zero array for j <= -2."""
        if j <= -2:
            return np.zeros(self.grid.N)
        if j == -1:
            return self.chi
        if j <= self.J_max:
            return self.psis[j]
        raise ValueError(f"block index {j} out of range (J_max={self.J_max})")


@dataclass(frozen=True)
class BesovParams:
    """Indices (s, p, r) of the Besov norm B^s_{p,r}, with 1 <= p, r < inf."""

    s: float
    p: float = 2.0
    r: float = 2.0

    def __post_init__(self) -> None:
        for name in ("p", "r"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v < 1.0:
                raise ValueError(f"{name} must be >= 1 and finite")
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "r", float(self.r))

    def with_s(self, s: float) -> "BesovParams":
        return BesovParams(s=s, p=self.p, r=self.r)


def build_partition(grid: Grid1D) -> DyadicPartition:
    """Sample the dyadic symbols at the grid frequencies.

    chi at successive dyadic rescalings is computed once per scale and the
    psi_j are formed as differences of the shared arrays, so the telescoped
    partition sum cancels pairwise and its residual stays at rounding level.
    """
    J = 0
    while 2.0 ** (J + 1) < grid.nyquist:
        J += 1
    scales = [_chi(grid.xi * 2.0**-j) for j in range(J + 2)]
    psis = tuple(scales[j + 1] - scales[j] for j in range(J + 1))
    return DyadicPartition(grid=grid, chi=scales[0], psis=psis, J_max=J)


def lp_block(P: DyadicPartition, j: int, f: Field) -> Field:
    """Apply the block Delta_j to a field.

    j = -1 applies chi, 0 <= j <= J_max applies psi_j, and j <= -2 returns the
    zero field per convention.  j above J_max is rejected.
    """
    if f.grid != P.grid:
        raise ValueError("field and partition live on different grids")
    if j <= -2:
        return Field.zero(f.grid)
    return Field.from_spectrum(f.grid, f.spectrum * P.symbol(j))


def _block_norm(P: DyadicPartition, j: int, f: Field, p: float) -> float:
    """lp_norm of Delta_j f; p=2 goes through Parseval on the spectral side."""
    p = float(p)
    if not np.isfinite(p) or p < 1.0:
        raise ValueError("p must be >= 1 and finite")
    spec = f.spectrum * P.symbol(j)
    if not np.any(spec):
        return 0.0
    if p == 2.0:
        return float(np.sqrt(2.0 * P.grid.L * np.sum(np.abs(spec) ** 2)))
    # Delta_j of a real field is real; invert directly and drop the rounding
    # residue.  Blocks holding only numerical dust (absolute noise next to a
    # much larger field) have no relative Hermitian symmetry left, so the
    # Field constructor's realness guard cannot be used here.
    z = np.fft.ifft(spec).real * P.grid.N
    return float((P.grid.dx * np.sum(np.abs(z) ** p)) ** (1.0 / p))


def besov_norm(P: DyadicPartition, f: Field, bp: BesovParams) -> float:
    """Besov norm: ell^r over j of 2^{js} ||Delta_j f||_{L^p}.

    The j-sum runs over -1..J_max, which is exact for grid data (everything
    is band-limited, so no tail is dropped).
    """
    terms = []
    for j in P.block_indices:
        nj = _block_norm(P, j, f, bp.p)
        if nj:
            terms.append(2.0 ** (j * bp.s) * nj)
    if not terms:
        return 0.0
    t = np.asarray(terms)
    return float(np.sum(t**bp.r) ** (1.0 / bp.r))


def block_profile(P: DyadicPartition, f: Field, p: float) -> list[tuple[int, float]]:
    """Per-block norms [(j, ||Delta_j f||_{L^p})] for j = -1..J_max."""
    return [(j, _block_norm(P, j, f, p)) for j in P.block_indices]
