"""Periodic pseudo-spectral core: grid, dual-represented fields, multipliers.

The spatial domain is the periodic interval [-L, L) sampled at N equispaced
points x_i = -L + i*dx with dx = 2L/N.  The discrete frequencies are
xi_k = pi*k/L for integer k in [-N/2, N/2), enumerated in numpy fft order
(0, 1, ..., N/2-1, -N/2, ..., -1).

Normalization convention (SPECTRUM_CONVENTION), fixed once and used by every
operation in the package::

    samples[i] = sum_k spectrum[k] * exp(1j * xi_k * x_i)
    spectrum   = fft(samples) / N

so ``spectrum[k]`` is the coefficient of the plane wave exp(1j*xi_k*x) and
Parseval reads  integral |f|^2 dx = 2L * sum_k |spectrum[k]|^2.

Conventions for real output: odd-order Fourier multipliers (d/dx and the
nonlocal derivative) zero the unpaired Nyquist mode, otherwise a real input
would acquire an imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Real

import numpy as np

__all__ = [
    "SPECTRUM_CONVENTION",
    "Grid1D",
    "Field",
    "GridMismatchError",
    "make_grid",
    "derivative",
    "helmholtz_solve",
    "nonlocal_deriv",
    "multiply_dealiased",
    "lp_norm",
]

#: Name of the normalization convention documented in the module docstring:
#: spectrum[k] is the coefficient of exp(1j*xi_k*x), i.e. fft(samples)/N.
SPECTRUM_CONVENTION = "coefficient"


class GridMismatchError(ValueError):
    """Raised when two fields living on different grids are combined."""


def _read_only(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform periodic grid on [-L, L) with its discrete frequency set.

    Attributes:
        L: half-length of the domain.
        N: number of points (even).
        dx: grid spacing 2L/N.
        x: sample locations, x[i] = -L + i*dx.
        xi: angular frequencies pi*k/L in fft order.
        nyquist: pi*N/(2L), the magnitude of the unpaired top frequency.
        dealias_mask: True on modes kept by the 2/3 rule (|xi| <= 2/3 nyquist).
    """

    L: float
    N: int
    dx: float
    x: np.ndarray
    xi: np.ndarray
    nyquist: float
    dealias_mask: np.ndarray

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid1D):
            return NotImplemented
        return self.L == other.L and self.N == other.N

    def __hash__(self) -> int:
        return hash((self.L, self.N))


def make_grid(L: float, N: int) -> Grid1D:
    """Build the periodic grid for [-L, L) with N points.

    Args:
        L: positive half-length.
        N: even point count, at least 16.

    Returns:
        A Grid1D with precomputed sample locations, frequencies, and the
        2/3-rule dealiasing mask.
    """
    if not isinstance(N, (int, np.integer)):
        raise ValueError("N must be an integer")
    if N % 2 != 0:
        raise ValueError("N must be even")
    if N < 16:
        raise ValueError("N must be at least 16")
    if not L > 0:
        raise ValueError("L must be positive")
    L = float(L)
    N = int(N)
    dx = 2.0 * L / N
    x = -L + dx * np.arange(N)
    xi = 2.0 * np.pi * np.fft.fftfreq(N, d=dx)  # equals pi*k/L, fft order
    nyquist = np.pi * N / (2.0 * L)
    mask = np.abs(xi) <= (2.0 / 3.0) * nyquist
    return Grid1D(
        L=L,
        N=N,
        dx=dx,
        x=_read_only(x),
        xi=_read_only(xi),
        nyquist=nyquist,
        dealias_mask=_read_only(mask),
    )


@dataclass(frozen=True, eq=False)
class Field:
    """One real periodic function carried as samples plus spectrum.

    The two representations are kept consistent under the module convention
    (see SPECTRUM_CONVENTION); linear arithmetic acts on both directly so no
    transform is spent on +, -, or scalar scaling.
    """

    grid: Grid1D
    samples: np.ndarray = field(repr=False)
    spectrum: np.ndarray = field(repr=False)

    @classmethod
    def from_samples(cls, grid: Grid1D, samples: np.ndarray) -> "Field":
        samples = np.asarray(samples, dtype=float)
        if samples.shape != (grid.N,):
            raise ValueError(f"samples must have shape ({grid.N},)")
        spectrum = np.fft.fft(samples) / grid.N
        return cls(grid, _read_only(samples.copy()), _read_only(spectrum))

    @classmethod
    def from_spectrum(cls, grid: Grid1D, spectrum: np.ndarray) -> "Field":
        spectrum = np.asarray(spectrum, dtype=complex)
        if spectrum.shape != (grid.N,):
            raise ValueError(f"spectrum must have shape ({grid.N},)")
        z = np.fft.ifft(spectrum) * grid.N
        scale = np.max(np.abs(z)) if z.size else 0.0
        if scale > 0 and np.max(np.abs(z.imag)) > 1e-8 * scale:
            raise ValueError("spectrum is not Hermitian-symmetric (samples not real)")
        return cls(grid, _read_only(z.real), _read_only(spectrum.copy()))

    @classmethod
    def zero(cls, grid: Grid1D) -> "Field":
        return cls(
            grid,
            _read_only(np.zeros(grid.N)),
            _read_only(np.zeros(grid.N, dtype=complex)),
        )

    def _check_grid(self, other: "Field") -> None:
        if self.grid != other.grid:
            raise GridMismatchError("fields live on different grids")

    def __add__(self, other: "Field") -> "Field":
        self._check_grid(other)
        return Field(
            self.grid,
            _read_only(self.samples + other.samples),
            _read_only(self.spectrum + other.spectrum),
        )

    def __sub__(self, other: "Field") -> "Field":
        self._check_grid(other)
        return Field(
            self.grid,
            _read_only(self.samples - other.samples),
            _read_only(self.spectrum - other.spectrum),
        )

    def __mul__(self, c: Real) -> "Field":
        if not isinstance(c, Real):
            return NotImplemented
        c = float(c)
        return Field(
            self.grid,
            _read_only(c * self.samples),
            _read_only(c * self.spectrum),
        )

    __rmul__ = __mul__

    def __neg__(self) -> "Field":
        return self * -1.0


def _apply_multiplier(f: Field, mult: np.ndarray) -> Field:
    return Field.from_spectrum(f.grid, f.spectrum * mult)


def derivative(f: Field, order: int) -> Field:
    """Spectral derivative of positive integer order.

    The spectrum is multiplied by (1j*xi)^order; for odd orders the unpaired
    Nyquist mode is zeroed so real samples stay real.
    """
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ValueError("order must be a positive integer")
    mult = (1j * f.grid.xi) ** order
    if order % 2 == 1:
        mult[f.grid.N // 2] = 0.0
    return _apply_multiplier(f, mult)


def helmholtz_solve(f: Field) -> Field:
    """Invert (1 - d^2/dx^2): divide the spectrum by 1 + xi^2."""
    return _apply_multiplier(f, 1.0 / (1.0 + f.grid.xi**2))


def nonlocal_deriv(f: Field) -> Field:
    """Apply d/dx (1 - d^2/dx^2)^{-1} as the single multiplier i*xi/(1+xi^2).

    The multiplier is odd, so the Nyquist mode is zeroed (realness); its
    magnitude is bounded by 1/2, so the operator is smoothing.
    """
    xi = f.grid.xi
    mult = 1j * xi / (1.0 + xi**2)
    mult[f.grid.N // 2] = 0.0
    return _apply_multiplier(f, mult)


def _band_limited(f: Field) -> bool:
    return not np.any(f.spectrum[~f.grid.dealias_mask])


def multiply_dealiased(f: Field, g: Field) -> Field:
    """Pointwise product with 2/3-rule dealiasing.

    Modes with |xi| > (2/3)*nyquist are zeroed in both inputs and in the
    output, so quadratic aliasing cannot pollute the retained band.  When both
    inputs already lie within the 1/3 band the result is the exact product.
    """
    f._check_grid(g)
    grid = f.grid
    mask = grid.dealias_mask
    fs = f.samples if _band_limited(f) else np.fft.ifft(np.where(mask, f.spectrum, 0.0) * grid.N).real
    gs = g.samples if _band_limited(g) else np.fft.ifft(np.where(mask, g.spectrum, 0.0) * grid.N).real
    prod_spec = np.where(mask, np.fft.fft(fs * gs) / grid.N, 0.0)
    return Field.from_spectrum(grid, prod_spec)


def lp_norm(f: Field, p: float) -> float:
    """Rectangle-rule L^p norm, (dx * sum |f_i|^p)^(1/p), for 1 <= p < inf."""
    p = float(p)
    if not np.isfinite(p) or p < 1.0:
        raise ValueError("p must be >= 1 and finite")
    return float((f.grid.dx * np.sum(np.abs(f.samples) ** p)) ** (1.0 / p))
