import numpy as np
import pytest

from zenonm import (
    GridTooCoarse,
    ModelParams,
    OverflowRiskWarning,
    TimeGrid,
    bath_moments_bruteforce,
    bath_moments_fast,
    survival_amplitude,
)


def _table(gamma, g, t_max=20.0, n=4001):
    p = ModelParams(lam=1.0, gamma=gamma, g=g)
    grid = TimeGrid(t_max, n)
    green = survival_amplitude(grid.times, p)
    return p, grid, green, bath_moments_fast(grid, green, p)


class TestEdgeCases:
    def test_time_zero_is_empty_domain(self):
        p, grid, green, table = _table(10.0, 1.0, n=1001)
        assert table.pop_b[0] == 0.0
        assert table.pop_m[0] == 0.0
        assert table.coh_bm[0] == 0.0
        brute = bath_moments_bruteforce(0.0, green[:1], p)
        assert (brute.pop_b, brute.pop_m, brute.coh_bm) == (0.0, 0.0, 0j)

    def test_g_zero_kills_sin_moments_exactly(self):
        p, grid, green, table = _table(10.0, 0.0, n=2001)
        assert np.all(table.pop_m == 0.0)
        assert np.all(table.coh_bm == 0.0)
        brute = bath_moments_bruteforce(grid.t_max, green, p)
        assert brute.pop_m == pytest.approx(0.0, abs=1e-15)
        assert brute.coh_bm == pytest.approx(0.0, abs=1e-15)

    def test_grid_too_coarse(self):
        p = ModelParams(lam=1.0, gamma=1.0, g=1.0)
        with pytest.raises(GridTooCoarse):
            bath_moments_bruteforce(1.0, np.ones(32, dtype=complex), p)
        with pytest.raises(GridTooCoarse):
            bath_moments_fast(TimeGrid(1.0, 32), np.ones(32, dtype=complex), p)

    def test_long_horizon_warns_and_stays_finite(self):
        p = ModelParams(lam=1.0, gamma=0.5, g=0.5)
        grid = TimeGrid(600.0, 6001)
        green = survival_amplitude(grid.times, p)
        with pytest.warns(OverflowRiskWarning):
            table = bath_moments_fast(grid, green, p)
        assert np.all(np.isfinite(table.pop_b))
        assert np.all(np.isfinite(table.pop_m))


class TestAgainstBruteForce:
    @pytest.mark.parametrize("gamma,g", [(10.0, 10.0), (0.1, 1.0), (20.0, 100.0)])
    def test_fast_matches_brute_to_rounding(self, gamma, g):
        p, grid, green, table = _table(gamma, g, n=2000)
        for k in (199, 777, 1500, 1999):
            t = grid.times[k]
            brute = bath_moments_bruteforce(t, green[: k + 1], p)
            assert abs(table.pop_b[k] - brute.pop_b) < 1e-8
            assert abs(table.pop_m[k] - brute.pop_m) < 1e-8
            assert abs(table.coh_bm[k] - brute.coh_bm) < 1e-8

    def test_brute_grid_size_check(self):
        p, grid, green, _ = _table(1.0, 1.0, n=256)
        with pytest.raises(ValueError):
            bath_moments_bruteforce(grid.t_max, green, p, n=512)


class TestInvariants:
    def test_nonnegativity_and_cauchy_schwarz(self):
        rng = np.random.default_rng(17)
        for _ in range(8):
            gamma, g = rng.uniform(0.05, 20.0), rng.uniform(0.0, 30.0)
            _, _, _, table = _table(gamma, g, n=2001)
            assert table.pop_b.min() >= -1e-9
            assert table.pop_m.min() >= -1e-9
            slack = table.pop_b * table.pop_m + 1e-9 - np.abs(table.coh_bm) ** 2
            assert slack.min() >= 0.0

    def test_norm_conservation_initially_excited(self):
        # pop_b + pop_m complements |G|^2 for a decayed excitation
        p, grid, green, table = _table(0.1, 1.0, n=2001)
        deficit = 1.0 - np.abs(green[-1]) ** 2
        brute = bath_moments_bruteforce(grid.t_max, green, p)
        assert abs((brute.pop_b + brute.pop_m) - deficit) < 1e-4
        assert abs((table.pop_b[-1] + table.pop_m[-1]) - deficit) < 1e-4

    def test_norm_conservation_generic_initial_states(self):
        from zenonm import lower_amplitudes
        rng = np.random.default_rng(23)
        p, grid, green, table = _table(10.0, 2.0, n=40001)
        for _ in range(5):
            amps = rng.normal(size=3) + 1j * rng.normal(size=3)
            amps /= np.linalg.norm(amps)
            a0, b0, m0 = amps
            beta, mu = lower_amplitudes(grid.times, b0, m0, p)
            total = (np.abs(a0 * green) ** 2 + np.abs(beta) ** 2 + np.abs(mu) ** 2
                     + abs(a0) ** 2 * (table.pop_b + table.pop_m))
            assert np.abs(total - 1.0).max() < 1e-6

    def test_hermiticity_of_swapped_cross_moment(self):
        # computing sum_j mu_j conj(beta_j) (sin paired with the unconjugated
        # amplitude, prefactor -i) must conjugate the shipped coherence
        p, grid, green, table = _table(10.0, 2.0, t_max=8.0, n=1601)
        t = grid.times[-1]
        w = np.full(grid.n, grid.step)
        w[0] *= 0.5
        w[-1] *= 0.5
        kernel = np.exp(-p.lam * np.abs(grid.times[:, None] - grid.times[None, :]))
        weighted = (w * green)[:, None] * (w * np.conj(green))[None, :] * kernel
        cos_out = np.cos(p.g * (t - grid.times))
        sin_out = np.sin(p.g * (t - grid.times))
        swapped = -1j * p.omega0_sq * (sin_out @ weighted @ cos_out)
        assert abs(np.conj(swapped) - table.coh_bm[-1]) < 1e-10

    def test_long_time_population_sloshing(self):
        # the mode-fed populations keep trading places long after the excited
        # level has emptied; only their difference keeps moving, not the total
        p, grid, green, table = _table(10.0, 1.0)
        late = grid.times >= 10.0
        assert np.abs(green[late]).max() ** 2 < 1e-3
        assert np.ptp(table.pop_b[late]) > 0.05
        assert np.ptp(table.pop_m[late]) > 0.05
        total = table.pop_b[late] + table.pop_m[late]
        assert np.ptp(total) < 1e-4

    def test_scale_invariance_in_lam(self):
        # (lam, gamma, g, t) -> (s lam, s gamma, s g, t/s) leaves the reduced
        # dynamics untouched; catches any dropped factor of lam
        scale = 2.5
        p_unit = ModelParams(lam=1.0, gamma=10.0, g=1.0)
        p_scaled = ModelParams(lam=scale, gamma=10.0 * scale, g=scale)
        grid_unit = TimeGrid(20.0, 2001)
        grid_scaled = TimeGrid(20.0 / scale, 2001)
        g_unit = survival_amplitude(grid_unit.times, p_unit)
        g_scaled = survival_amplitude(grid_scaled.times, p_scaled)
        np.testing.assert_allclose(g_scaled, g_unit, atol=1e-13)
        t_unit = bath_moments_fast(grid_unit, g_unit, p_unit)
        t_scaled = bath_moments_fast(grid_scaled, g_scaled, p_scaled)
        np.testing.assert_allclose(t_scaled.pop_b, t_unit.pop_b, atol=1e-13)
        np.testing.assert_allclose(t_scaled.pop_m, t_unit.pop_m, atol=1e-13)
        np.testing.assert_allclose(t_scaled.coh_bm, t_unit.coh_bm, atol=1e-13)

    def test_trapezoid_order_of_convergence(self):
        # halving the step should shrink the quadrature error ~4x
        p = ModelParams(lam=1.0, gamma=10.0, g=3.0)
        errors = []
        for n in (2001, 4001, 8001):
            grid = TimeGrid(10.0, n)
            green = survival_amplitude(grid.times, p)
            table = bath_moments_fast(grid, green, p)
            total = np.abs(green) ** 2 + table.pop_b + table.pop_m
            errors.append(np.abs(total - 1.0).max())
        assert errors[0] / errors[1] > 2.5
        assert errors[1] / errors[2] > 2.5
