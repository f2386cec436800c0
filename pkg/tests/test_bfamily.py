"""Vector field oracle checks against closed forms on the unit circle."""

import numpy as np
import pytest

from bfamlab import (
    BFamilyParams,
    Field,
    State,
    conserved_quantities,
    derivative,
    make_grid,
    momentum,
    rhs,
)

from conftest import band_limited


def cos_field(grid, k=1):
    return Field.from_samples(grid, np.cos(k * grid.x))


def sin_field(grid, k=1):
    return Field.from_samples(grid, np.sin(k * grid.x))


class TestParams:
    def test_case_i_values(self):
        P = BFamilyParams.from_case("i", 2.0)
        assert (P.k1, P.k2, P.k3) == (2.0, 4.0, 1.0)
        assert P.is_two_component_ch
        assert P.sigma == 2.0

    def test_case_ii_values(self):
        P = BFamilyParams.from_case("ii", 3.0)
        assert (P.k1, P.k2, P.k3) == (4.0, 2.0, 3.0)
        assert not P.is_two_component_ch

    def test_case_ii_b2_is_dp_pair(self):
        P = BFamilyParams.from_case("ii", 2.0)
        assert (P.k1, P.k3) == (3.0, 2.0)

    def test_inconsistent_case_rejected(self):
        with pytest.raises(ValueError, match="inconsistent with case"):
            BFamilyParams(k1=2.0, k2=4.0, k3=1.0, b=3.0, case="i")

    def test_case_requires_b(self):
        with pytest.raises(ValueError, match="requires b"):
            BFamilyParams(k1=2.0, k2=4.0, k3=1.0, case="i")

    def test_unknown_case(self):
        with pytest.raises(ValueError, match="unknown case"):
            BFamilyParams.from_case("iii", 2.0)

    def test_bare_coefficients_allowed(self):
        P = BFamilyParams(k1=2.5, k2=1.0, k3=0.5)
        assert P.case is None and P.b is None


class TestRhsOracle:
    # u = cos x, rho = cos x on [-pi, pi):
    #   u u_x = -(1/2) sin 2x
    #   quad  = 3/4 + ((2 k1 - 3)/4) cos 2x + (k2/4)(1 + cos 2x)
    #   d/dx (1-dxx)^{-1} cos 2x = -(2/5) sin 2x
    # so du = -((k1+1)/5 + k2/10) sin 2x and drho = -k3 sin 2x.

    @pytest.mark.parametrize("k1", [2.0, 2.5, 3.0])
    def test_u_only(self, grid_pi, k1):
        P = BFamilyParams(k1=k1, k2=4.0, k3=1.0)
        st = State(u=cos_field(grid_pi), rho=Field.zero(grid_pi))
        out = rhs(P, st)
        want = -((k1 + 1.0) / 5.0) * np.sin(2.0 * grid_pi.x)
        assert np.max(np.abs(out.u.samples - want)) <= 1e-12
        assert np.max(np.abs(out.rho.samples)) == 0.0

    @pytest.mark.parametrize("P", [
        BFamilyParams.from_case("i", 2.0),
        BFamilyParams.from_case("i", 3.0),
        BFamilyParams.from_case("ii", 3.0),
    ])
    def test_both_components(self, grid_pi, P):
        st = State(u=cos_field(grid_pi), rho=cos_field(grid_pi))
        out = rhs(P, st)
        want_u = -((P.k1 + 1.0) / 5.0 + P.k2 / 10.0) * np.sin(2.0 * grid_pi.x)
        want_r = -P.k3 * np.sin(2.0 * grid_pi.x)
        assert np.max(np.abs(out.u.samples - want_u)) <= 1e-12
        assert np.max(np.abs(out.rho.samples - want_r)) <= 1e-12

    def test_quadratic_scaling(self, grid_pi, rng):
        P = BFamilyParams.from_case("i", 2.0)
        u = band_limited(grid_pi, rng)
        r = band_limited(grid_pi, rng)
        base = rhs(P, State(u=u, rho=r))
        scaled = rhs(P, State(u=3.0 * u, rho=3.0 * r))
        for a, b in ((scaled.u, base.u), (scaled.rho, base.rho)):
            ref = np.max(np.abs(b.samples)) * 9.0
            assert np.max(np.abs(a.samples - 9.0 * b.samples)) <= 1e-12 * ref

    def test_translation_equivariance(self, grid_pi, rng):
        P = BFamilyParams.from_case("ii", 3.0)
        u = band_limited(grid_pi, rng)
        r = band_limited(grid_pi, rng)
        shift = 37
        u_s = Field.from_samples(grid_pi, np.roll(u.samples, shift))
        r_s = Field.from_samples(grid_pi, np.roll(r.samples, shift))
        out = rhs(P, State(u=u, rho=r))
        out_s = rhs(P, State(u=u_s, rho=r_s))
        for a, b in ((out_s.u, out.u), (out_s.rho, out.rho)):
            ref = max(np.max(np.abs(b.samples)), 1e-300)
            assert np.max(np.abs(a.samples - np.roll(b.samples, shift))) <= 1e-11 * ref

    def test_rho_mass_flat_in_time(self, grid_pi, rng):
        # drho is a dealiased perfect derivative; its mean vanishes exactly
        P = BFamilyParams.from_case("i", 2.5)
        st = State(u=band_limited(grid_pi, rng), rho=band_limited(grid_pi, rng))
        out = rhs(P, st)
        scale = np.max(np.abs(st.rho.samples))
        assert abs(np.sum(out.rho.samples) * grid_pi.dx) <= 1e-12 * scale
        assert abs(np.sum(out.u.samples) * grid_pi.dx) <= 1e-12


class TestStateAndMomentum:
    def test_state_grid_mismatch(self, grid_pi, rng):
        other = make_grid(np.pi, 512)
        with pytest.raises(ValueError, match="different grids"):
            State(u=band_limited(grid_pi, rng), rho=band_limited(other, rng))

    def test_momentum_of_cos(self, grid_pi):
        st = State(u=cos_field(grid_pi), rho=Field.zero(grid_pi))
        m = momentum(st)
        # second derivative amplifies rounding by k^2
        assert np.max(np.abs(m.samples - 2.0 * np.cos(grid_pi.x))) <= 1e-11


class TestConservedQuantities:
    def test_keys_follow_subcase(self, grid_pi, rng):
        st = State(u=band_limited(grid_pi, rng), rho=band_limited(grid_pi, rng))
        ch = conserved_quantities(BFamilyParams.from_case("i", 2.0), st)
        assert set(ch) == {"rho_mass", "momentum_mass", "energy_2ch"}
        dp = conserved_quantities(BFamilyParams.from_case("ii", 3.0), st)
        assert set(dp) == {"rho_mass", "momentum_mass"}

    def test_energy_derivative_vanishes(self, grid_pi, rng):
        # dE/dt = 2 int (u du + u_x du_x + k2 rho drho) dx along the flow
        P = BFamilyParams.from_case("i", 2.0)
        u = band_limited(grid_pi, rng)
        r = band_limited(grid_pi, rng)
        out = rhs(P, State(u=u, rho=r))
        dx = grid_pi.dx

        def pair(a, b):
            return float(np.sum(a.samples * b.samples) * dx)

        d_good = 2.0 * (
            pair(u, out.u)
            + pair(derivative(u, 1), derivative(out.u, 1))
            + P.k2 * pair(r, out.rho)
        )
        scale = pair(u, u) + pair(r, r)
        assert abs(d_good) <= 1e-11 * scale
        # halving the rho^2 coefficient must break the balance; this guards
        # against silently weakening the functional
        d_bad = d_good - P.k2 * pair(r, out.rho)
        assert abs(d_bad) > 1e-6 * scale
