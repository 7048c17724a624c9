import numpy as np
import pytest

from dtddsim import ConfigurationError, Topology, build_grid, drop_ues
from dtddsim.channel import path_loss_db
from dtddsim.topology import pairwise_distances, strongest_bs


def test_single_bs_sits_at_area_center():
    topo = build_grid(1, 40.0)
    np.testing.assert_allclose(topo.bs_positions, [[20.0, 20.0]])


def test_4x4_grid_matches_cell_center_formula():
    topo = build_grid(16, 40.0)
    # independent evaluation of the cell-center rule, row-major
    expected = []
    for row in range(4):
        for col in range(4):
            expected.append([(col + 0.5) * 10.0, (row + 0.5) * 10.0])
    np.testing.assert_allclose(topo.bs_positions, expected)
    np.testing.assert_allclose(topo.bs_positions[0], [5.0, 5.0])
    np.testing.assert_allclose(topo.bs_positions[15], [35.0, 35.0])


@pytest.mark.parametrize("n", [3, 0, -4, 5])
def test_non_square_bs_count_rejected(n):
    with pytest.raises(ConfigurationError):
        build_grid(n, 40.0)


def test_positions_outside_area_rejected():
    with pytest.raises(ConfigurationError):
        Topology(bs_positions=np.array([[50.0, 5.0]]), area_side=40.0)


def test_duplicate_positions_rejected():
    with pytest.raises(ConfigurationError):
        Topology(bs_positions=np.array([[5.0, 5.0], [5.0, 5.0], [1.0, 1.0], [2.0, 2.0]]),
                 area_side=40.0)


def test_pairwise_distances_basic():
    a = np.array([[0.0, 0.0], [3.0, 4.0]])
    b = np.array([[0.0, 0.0]])
    np.testing.assert_allclose(pairwise_distances(a, b), [[0.0], [5.0]])


def test_single_bs_single_ue():
    topo = build_grid(1, 40.0)
    placement = drop_ues(topo, 1, np.random.default_rng(0))
    assert placement.serving_bs.tolist() == [0]


def test_full_load_is_permutation():
    topo = build_grid(16, 40.0)
    placement = drop_ues(topo, 16, np.random.default_rng(1))
    assert sorted(placement.serving_bs.tolist()) == list(range(16))


def test_same_seed_reproduces_placement():
    topo = build_grid(16, 40.0)
    a = drop_ues(topo, 4, np.random.default_rng(42))
    b = drop_ues(topo, 4, np.random.default_rng(42))
    np.testing.assert_array_equal(a.positions, b.positions)
    np.testing.assert_array_equal(a.serving_bs, b.serving_bs)
    assert len(set(a.serving_bs.tolist())) == 4


def test_serving_bs_always_distinct():
    topo = build_grid(16, 40.0)
    for seed in range(40):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 17))
        placement = drop_ues(topo, k, rng)
        assert len(set(placement.serving_bs.tolist())) == k


def test_association_is_strongest_bs_with_index_tiebreak():
    topo = build_grid(16, 40.0)
    for seed in range(20):
        placement = drop_ues(topo, 10, np.random.default_rng(seed))
        for pos, bs in zip(placement.positions, placement.serving_bs):
            d = np.linalg.norm(topo.bs_positions - pos, axis=1)
            pl = path_loss_db(d, 2.0)
            assert np.all(pl >= pl[bs] - 1e-12)
            ties = np.flatnonzero(np.isclose(pl, pl[bs]))
            assert ties.min() == bs


def test_tiebreak_prefers_lowest_index_under_clamp():
    # both BSs are within the 3 m path-loss clamp of the probe point, so
    # their path losses tie exactly and the lower index must win
    topo = Topology(bs_positions=np.array([[10.0, 10.0], [11.0, 10.0],
                                           [30.0, 30.0], [31.0, 30.0]]),
                    area_side=40.0)
    assert strongest_bs(np.array([10.5, 10.0]), topo) == 0


def test_prefix_stable_under_redraws():
    # UE j's draws depend only on UEs 0..j, so a longer drop extends a
    # shorter one drawn from the same stream
    topo = build_grid(16, 40.0)
    for seed in range(10):
        short = drop_ues(topo, 5, np.random.default_rng(seed))
        full = drop_ues(topo, 16, np.random.default_rng(seed))
        np.testing.assert_array_equal(short.positions, full.positions[:5])
        np.testing.assert_array_equal(short.serving_bs, full.serving_bs[:5])


def test_too_many_ues_rejected():
    topo = build_grid(4, 40.0)
    with pytest.raises(ConfigurationError):
        drop_ues(topo, 5, np.random.default_rng(0))
