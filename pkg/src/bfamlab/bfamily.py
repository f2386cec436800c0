"""Two-component b-family vector field in nonlocal form.

SIGN CONVENTION (important): this module follows

    u_t - u u_x = f1(u) + f2(u) + g(rho),
    rho_t - k3 u rho_x = k3 rho u_x,

i.e. the time derivative is du = +u u_x + f1 + f2 + g.  Much of the CH
literature carries the opposite transport sign; the two agree under x -> -x.
Every experiment and conserved functional in this package assumes the
convention above.

The smoothing terms are Fourier multipliers applied to quadratics:

    f1(u) = d/dx (1-dxx)^{-1} ((k1/2) u^2)
    f2(u) = d/dx (1-dxx)^{-1} (((3-k1)/2) u_x^2)
    g(rho) = d/dx (1-dxx)^{-1} ((k2/2) rho^2)

Parameter cases: (i) (k1,k2,k3) = (b, 2b, 1); (ii) (k1,k2,k3) = (b+1, 2, b).
(k1,k3) = (2,1) is the two-component Camassa-Holm sub-case, (3,2) the
two-component Degasperis-Procesi sub-case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import (
    Field,
    derivative,
    lp_norm,
    multiply_dealiased,
    nonlocal_deriv,
)

__all__ = [
    "BFamilyParams",
    "State",
    "rhs",
    "momentum",
    "conserved_quantities",
]

_CASES = ("i", "ii")


def _case_coeffs(case: str, b: float) -> tuple[float, float, float]:
    if case == "i":
        return (b, 2.0 * b, 1.0)
    if case == "ii":
        return (b + 1.0, 2.0, b)
    raise ValueError(f"unknown case {case!r}, expected one of {_CASES}")


@dataclass(frozen=True)
class BFamilyParams:
    """Coefficients (k1, k2, k3), optionally tagged with a case and b value.

    When a case tag is supplied the coefficients must match the case formula
    exactly.  sigma = k2/2 is recorded for the (k1,k3)=(2,1) sub-case label;
    it plays no computational role.
    """

    k1: float
    k2: float
    k3: float
    b: float | None = None
    case: str | None = None

    def __post_init__(self) -> None:
        for name in ("k1", "k2", "k3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.case is not None:
            if self.b is None:
                raise ValueError("a case tag requires b")
            want = _case_coeffs(self.case, float(self.b))
            got = (self.k1, self.k2, self.k3)
            if not all(abs(w - g) <= 1e-12 for w, g in zip(want, got)):
                raise ValueError(
                    f"(k1,k2,k3)={got} inconsistent with case {self.case} at b={self.b}: expected {want}"
                )

    @classmethod
    def from_case(cls, case: str, b: float) -> "BFamilyParams":
        k1, k2, k3 = _case_coeffs(case, float(b))
        return cls(k1=k1, k2=k2, k3=k3, b=float(b), case=case)

    @property
    def sigma(self) -> float:
        return self.k2 / 2.0

    @property
    def is_two_component_ch(self) -> bool:
        return self.k1 == 2.0 and self.k3 == 1.0


@dataclass(frozen=True)
class State:
    """Velocity/density pair on one grid."""

    u: Field
    rho: Field

    def __post_init__(self) -> None:
        if self.u.grid != self.rho.grid:
            raise ValueError("u and rho live on different grids")

    @property
    def grid(self):
        return self.u.grid


def rhs(P: BFamilyParams, st: State) -> State:
    """Time derivative (du, drho) of the nonlocal-form system.

    du  = u u_x + nonlocal[(k1/2) u^2 + ((3-k1)/2) u_x^2 + (k2/2) rho^2]
    drho = k3 (u rho_x + rho u_x)

    All quadratic terms are dealiased products; the three smoothing
    quadratics share a single multiplier application.  The transport pair is
    computed split (not as k3 d/dx(u rho)) to match the displayed form; mass
    conservation survives because both halves are dealiased identically.
    """
    u, rho = st.u, st.rho
    ux = derivative(u, 1)
    rhox = derivative(rho, 1)
    quad = (
        (0.5 * P.k1) * multiply_dealiased(u, u)
        + (0.5 * (3.0 - P.k1)) * multiply_dealiased(ux, ux)
        + (0.5 * P.k2) * multiply_dealiased(rho, rho)
    )
    du = multiply_dealiased(u, ux) + nonlocal_deriv(quad)
    drho = P.k3 * (multiply_dealiased(u, rhox) + multiply_dealiased(rho, ux))
    return State(u=du, rho=drho)


def momentum(st: State) -> Field:
    """m = u - u_xx."""
    return st.u - derivative(st.u, 2)


def conserved_quantities(P: BFamilyParams, st: State) -> dict[str, float]:
    """Conserved functionals monitored during time integration.

    rho_mass = int rho dx and momentum_mass = int m dx = int u dx are
    conserved for every (k1,k2,k3) on the periodic domain.  For the
    (k1,k3)=(2,1) sub-case the energy

        energy_2ch = int (u^2 + u_x^2 + k2 rho^2) dx

    is conserved as well.  The rho^2 coefficient is k2, re-derived by parts
    under this module's sign convention: d/dt int(u^2+u_x^2) = 2 int u m_t
    = 2 k2 int u rho rho_x, while d/dt int rho^2 = -2 int u rho rho_x, so the
    combination with coefficient k2 is constant.
    """
    grid = st.grid
    out = {
        "rho_mass": float(grid.dx * np.sum(st.rho.samples)),
        "momentum_mass": float(grid.dx * np.sum(momentum(st).samples)),
    }
    if P.is_two_component_ch:
        ux = derivative(st.u, 1)
        out["energy_2ch"] = float(
            lp_norm(st.u, 2) ** 2 + lp_norm(ux, 2) ** 2 + P.k2 * lp_norm(st.rho, 2) ** 2
        )
    return out
