import numpy as np
import pytest

from dtddsim import (ConfigurationError, baseline_powers, log_objective_oracle,
                     power_lp_oracle, solve_power_lp)
from dtddsim.power import _simplex_max

from conftest import random_scene, unit_columns

P_B = 0.1


def log_obj(p):
    return np.sum(np.log2(1.0 + p))


def test_single_ue_closed_form():
    rng = np.random.default_rng(0)
    for _ in range(20):
        w = unit_columns(rng, 6, 1)
        p = solve_power_lp(w, P_B, 1).p
        expected = P_B / np.max(np.abs(w[:, 0]) ** 2)
        np.testing.assert_allclose(p, [expected], rtol=1e-10)


def test_decoupled_identity_pattern():
    w = np.eye(2, dtype=complex)
    np.testing.assert_allclose(solve_power_lp(w, P_B, 2).p, [P_B, P_B], rtol=1e-12)


def test_matches_vertex_enumeration_oracle():
    rng = np.random.default_rng(42)
    for _ in range(200):
        k_dl = int(rng.integers(1, 4))
        n_dl = int(rng.integers(k_dl, 7))
        dummies = int(rng.integers(0, min(3, n_dl - k_dl) + 1))
        w = unit_columns(rng, n_dl, k_dl + dummies)
        got = solve_power_lp(w, P_B, k_dl)
        want = power_lp_oracle(w, P_B, k_dl)
        assert abs(got.p.sum() - want.p.sum()) <= 1e-6 * max(want.p.sum(), 1e-30)
        a = np.abs(w) ** 2
        assert np.all(a @ got.p <= P_B + 1e-9)
        assert np.all(got.p[k_dl:] == 0.0)
        assert np.all(want.p[k_dl:] == 0.0)


def test_feasible_at_production_sizes():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n_dl = int(rng.integers(4, 17))
        k_dl = int(rng.integers(1, n_dl + 1))
        w = unit_columns(rng, n_dl, k_dl)
        p = solve_power_lp(w, P_B, k_dl).p
        assert np.all(p >= 0)
        assert np.all(np.abs(w) ** 2 @ p <= P_B + 1e-9)


def test_lp_dominates_uniform_feasible_point():
    rng = np.random.default_rng(3)
    for _ in range(30):
        w = unit_columns(rng, 8, 4)
        a = np.abs(w) ** 2
        uniform = np.full(4, (P_B / 4) / a.sum(axis=1).max())
        assert np.all(a @ uniform <= P_B + 1e-12)
        assert solve_power_lp(w, P_B, 4).p.sum() >= uniform.sum() - 1e-12


def test_oracle_refuses_large_instances():
    rng = np.random.default_rng(1)
    with pytest.raises(ConfigurationError):
        power_lp_oracle(unit_columns(rng, 8, 4), P_B, 4)
    with pytest.raises(ConfigurationError):
        power_lp_oracle(unit_columns(rng, 7, 2), P_B, 2)


def test_zero_column_rejected():
    w = np.zeros((4, 1), dtype=complex)
    with pytest.raises(ConfigurationError):
        solve_power_lp(w, P_B, 1)
    with pytest.raises(ConfigurationError):
        power_lp_oracle(w, P_B, 1)


def test_simplex_detects_unbounded():
    with pytest.raises(RuntimeError):
        _simplex_max(np.array([1.0]), np.array([[-1.0]]), np.array([1.0]))


def test_log_oracle_single_variable_matches_lp():
    rng = np.random.default_rng(5)
    for _ in range(10):
        w = unit_columns(rng, 5, 1)
        lp = solve_power_lp(w, P_B, 1).p
        log = log_objective_oracle(w, P_B, 1).p
        np.testing.assert_allclose(log, lp, rtol=1e-6)


def test_log_oracle_decoupled_matches_lp():
    w = np.eye(3, dtype=complex)
    np.testing.assert_allclose(log_objective_oracle(w, P_B, 3).p,
                               solve_power_lp(w, P_B, 3).p, rtol=1e-6)


def test_log_oracle_beats_lp_point_on_its_own_objective():
    rng = np.random.default_rng(9)
    for _ in range(40):
        k_dl = int(rng.integers(2, 4))
        n_dl = int(rng.integers(k_dl, 7))
        w = unit_columns(rng, n_dl, k_dl)
        lp = solve_power_lp(w, P_B, k_dl).p[:k_dl]
        log = log_objective_oracle(w, P_B, k_dl).p[:k_dl]
        assert log_obj(log) >= log_obj(lp) - 1e-9
        assert np.all(np.abs(w) ** 2 @ log <= P_B + 1e-9)


def test_baseline_powers_assignment():
    snap, _, params = random_scene(seed=21, utilization=0.75)
    powers = baseline_powers(snap, params)
    serving_dl = snap.ue_placement.serving_bs[snap.dl_ues]
    assert np.all(powers.bs_power_w[serving_dl] == params.p_b_max_w)
    silent = np.setdiff1d(np.arange(16), serving_dl)
    assert np.all(powers.bs_power_w[silent] == 0.0)
    assert np.all(powers.ue_power_w[snap.ul_ues] == params.p_u_max_w)
    assert np.all(powers.ue_power_w[snap.dl_ues] == 0.0)
    assert np.count_nonzero(powers.bs_power_w) == snap.k_dl
    assert np.count_nonzero(powers.ue_power_w) == snap.k_ul


def test_baseline_powers_all_downlink_and_all_uplink():
    snap_dl, _, params = random_scene(seed=4, dl_probability=1.0, require_mixed=False)
    p_dl = baseline_powers(snap_dl, params)
    assert np.count_nonzero(p_dl.bs_power_w) == snap_dl.k
    assert np.count_nonzero(p_dl.ue_power_w) == 0
    snap_ul, _, _ = random_scene(seed=4, dl_probability=0.0, require_mixed=False)
    p_ul = baseline_powers(snap_ul, params)
    assert np.count_nonzero(p_ul.bs_power_w) == 0
    assert np.count_nonzero(p_ul.ue_power_w) == snap_ul.k
