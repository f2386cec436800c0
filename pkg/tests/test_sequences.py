"""Packet construction: band limitation, closed forms, capacity limits."""

import numpy as np
import pytest

from bfamlab import (
    CARRIER_RATIO,
    BesovParams,
    BFamilyParams,
    BumpSpec,
    CapacityError,
    SequenceIndex,
    besov_norm,
    bump_phi,
    build_f_n,
    build_g_n,
    capacity_check,
    drift_fields,
    initial_data,
    lp_norm,
    make_grid,
    max_feasible_n,
)


class TestEnvelope:
    def test_spectrum_support(self, grid_lab):
        phi = bump_phi(grid_lab)
        xi = np.abs(grid_lab.xi)
        assert np.all(phi.spectrum[xi >= 0.5] == 0.0)
        # plateau of the transform: coefficient magnitude is exactly 1/(2L)
        # (the sign alternates with the recentering phase)
        inner = xi <= 0.25
        assert np.all(np.abs(phi.spectrum[inner]) == 1.0 / (2.0 * grid_lab.L))

    def test_real_and_even(self, grid_lab):
        phi = bump_phi(grid_lab)
        s = phi.samples
        assert np.max(np.abs(s[1:] - s[1:][::-1])) <= 1e-12 * np.max(np.abs(s))

    def test_l2_matches_refined_grid(self):
        # periodization and quadrature errors both sit at rounding level
        a = lp_norm(bump_phi(make_grid(64.0, 8192)), 2.0)
        b = lp_norm(bump_phi(make_grid(64.0, 32768)), 2.0)
        assert abs(a - b) <= 1e-10 * b

    def test_custom_spec_validation(self):
        with pytest.raises(ValueError, match="plateau"):
            BumpSpec(plateau=0.5, support=0.5)


class TestPacket:
    def test_band_limitation_exact(self, grid_lab):
        for n in (3, 4, 5):
            f = build_f_n(grid_lab, SequenceIndex(n=n, s=2.0))
            c = CARRIER_RATIO * 2.0**n
            out = (np.abs(np.abs(grid_lab.xi) - c)) >= 0.5
            assert np.all(f.spectrum[out] == 0.0)
            assert np.any(f.spectrum != 0.0)

    def test_pointwise_product_formula(self, grid_lab):
        # the packet differs from envelope-times-carrier only by wrapped
        # envelope copies whose carrier phase slips across the seam; the
        # mismatch is bounded by the envelope tail, largest at the seam
        idx = SequenceIndex(n=4, s=2.0)
        f = build_f_n(grid_lab, idx)
        phi = bump_phi(grid_lab)
        c = CARRIER_RATIO * 2.0**4
        want = 2.0 ** (-4 * 2.0) * phi.samples * np.sin(c * grid_lab.x)
        diff = np.abs(f.samples - want)
        peak = np.max(np.abs(want))
        bulk = np.abs(grid_lab.x) <= 32.0
        assert np.max(diff[bulk]) <= 1e-3 * peak
        assert np.max(diff) <= 0.01 * peak
        # the dominant correlation is still overwhelming
        corr = float(np.dot(f.samples, want) / np.dot(want, want))
        assert abs(corr - 1.0) <= 1e-3

    def test_vanishes_at_origin(self, grid_lab):
        idx = SequenceIndex(n=4, s=2.0)
        f = build_f_n(grid_lab, idx)
        i0 = np.argmin(np.abs(grid_lab.x))
        assert abs(f.samples[i0]) <= 1e-12 * np.max(np.abs(f.samples))

    def test_l2_norm_approaches_half_envelope_mass(self, grid_lab):
        # ||phi sin||_2 -> ||phi||_2 / sqrt(2) as the carrier grows
        phi_l2 = lp_norm(bump_phi(grid_lab), 2.0)
        for n in (4, 5):
            f = build_f_n(grid_lab, SequenceIndex(n=n, s=2.0))
            val = 2.0 ** (n * 2.0) * lp_norm(f, 2.0)
            assert abs(val - phi_l2 / np.sqrt(2.0)) <= 0.01 * phi_l2


class TestCapacity:
    def test_rejects_coarse_grid(self):
        grid = make_grid(64.0, 1024)
        with pytest.raises(CapacityError, match="maximal feasible n"):
            capacity_check(grid, 5)
        with pytest.raises(CapacityError):
            build_f_n(grid, SequenceIndex(n=5, s=2.0))

    def test_max_feasible_boundary(self, grid_lab):
        top = max_feasible_n(grid_lab)
        capacity_check(grid_lab, top)
        with pytest.raises(CapacityError):
            capacity_check(grid_lab, top + 1)

    def test_lab_grid_holds_n5(self, grid_lab):
        assert max_feasible_n(grid_lab) == 5

    def test_index_validation(self):
        with pytest.raises(ValueError, match="integer >= 3"):
            SequenceIndex(n=2, s=2.0)
        with pytest.raises(ValueError, match="integer >= 3"):
            SequenceIndex(n=4.5, s=2.0)


class TestDataPairs:
    def test_pair_shapes(self, grid_lab):
        idx = SequenceIndex(n=4, s=2.0)
        st1 = initial_data(grid_lab, idx, which=1)
        st2 = initial_data(grid_lab, idx, which=2)
        f = build_f_n(grid_lab, idx)
        assert np.array_equal(st1.u.spectrum, f.spectrum)
        assert np.array_equal(st1.rho.spectrum, (2.0**4) * f.spectrum)
        # disjoint spectral supports make the pair difference exactly g_n
        g = build_g_n(grid_lab, 4)
        assert np.array_equal(st2.u.spectrum - st1.u.spectrum, g.spectrum)
        assert np.array_equal(st2.rho.spectrum - st1.rho.spectrum, g.spectrum)

    def test_which_validation(self, grid_lab):
        with pytest.raises(ValueError, match="which must be 1 or 2"):
            initial_data(grid_lab, SequenceIndex(n=4, s=2.0), which=3)

    def test_g_halves_exactly(self, grid_lab):
        g4 = build_g_n(grid_lab, 4)
        g5 = build_g_n(grid_lab, 5)
        assert np.array_equal(g4.spectrum, 2.0 * g5.spectrum)

    def test_data_norms_uniformly_bounded(self, grid_lab, part_lab):
        # the scaling 2^{-ns} against weight 2^{ns} keeps the family bounded
        bp = BesovParams(s=2.0)
        vals = []
        for n in (3, 4, 5):
            st = initial_data(grid_lab, SequenceIndex(n=n, s=2.0), which=2)
            vals.append(
                besov_norm(part_lab, st.u, bp)
                + besov_norm(part_lab, st.rho, bp.with_s(1.0))
            )
        assert max(vals) / min(vals) <= 1.25
        assert max(vals) < 10.0


class TestDriftFields:
    def test_band_limited_and_real(self, grid_lab):
        P = BFamilyParams.from_case("i", 2.0)
        v0, w0 = drift_fields(grid_lab, SequenceIndex(n=4, s=2.0), P)
        edge = (2.0 / 3.0) * grid_lab.nyquist
        for f in (v0, w0):
            assert np.any(f.spectrum != 0.0)
            assert np.all(f.spectrum[np.abs(grid_lab.xi) > edge] == 0.0)

    def test_w0_linear_in_k3(self, grid_lab):
        idx = SequenceIndex(n=4, s=2.0)
        _, w1 = drift_fields(grid_lab, idx, BFamilyParams(k1=2.0, k2=4.0, k3=1.0))
        v2, w2 = drift_fields(grid_lab, idx, BFamilyParams(k1=2.0, k2=4.0, k3=2.0))
        assert np.array_equal(w2.spectrum, 2.0 * w1.spectrum)
        # v0 carries no parameter dependence
        v1, _ = drift_fields(grid_lab, idx, BFamilyParams(k1=9.0, k2=0.5, k3=1.0))
        assert np.array_equal(v1.spectrum, v2.spectrum)
