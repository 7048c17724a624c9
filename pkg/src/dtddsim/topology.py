"""BS grid deployment and uniform UE placement with strongest-BS association."""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError

# Association frequency; the path-loss frequency term is a distance-independent
# offset, so the strongest-BS ordering is the same at any carrier.
_ASSOC_FREQ_GHZ = 2.0


def pairwise_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix between two point sets.

    Args:
        a: [P, 2] coordinates in meters
        b: [Q, 2] coordinates in meters
    Returns:
        [P, Q] distances in meters
    """
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.sum(diff**2, axis=-1))


@dataclass
class Topology:
    """BS deployment over a square indoor area.

    bs_positions: [N, 2] coordinates in meters, one row per BS.
    area_side: side length of the service area in meters.
    """

    bs_positions: np.ndarray
    area_side: float

    def __post_init__(self):
        self.bs_positions = np.asarray(self.bs_positions, dtype=float)
        n = len(self.bs_positions)
        if math.isqrt(n) ** 2 != n:
            raise ConfigurationError(f"number of BSs must be a perfect square, got {n}")
        if self.area_side <= 0:
            raise ConfigurationError("area_side must be positive")
        if np.any(self.bs_positions < 0) or np.any(self.bs_positions > self.area_side):
            raise ConfigurationError("BS positions must lie within the area")
        if len(np.unique(self.bs_positions, axis=0)) != n:
            raise ConfigurationError("BS positions must be pairwise distinct")

    @property
    def n_bs(self) -> int:
        return len(self.bs_positions)


@dataclass
class UePlacement:
    """Active-UE positions and their serving BSs.

    positions: [K, 2] coordinates in meters.
    serving_bs: [K] BS indices; pairwise distinct (at most one UE per BS),
        each minimizing path loss over all BSs (ties to the lowest index).
    """

    positions: np.ndarray
    serving_bs: np.ndarray

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        self.serving_bs = np.asarray(self.serving_bs, dtype=int)
        if len(self.serving_bs) != len(self.positions):
            raise ConfigurationError("positions and serving_bs length mismatch")
        if len(np.unique(self.serving_bs)) != len(self.serving_bs):
            raise ConfigurationError("serving BSs must be distinct (<= 1 UE per BS)")

    def __len__(self) -> int:
        return len(self.positions)


def build_grid(n_bs: int, area_side: float) -> Topology:
    """Place n_bs BSs at the cell centers of a sqrt(n)-by-sqrt(n) grid.

    Row-major indexing: BS i sits at column i % side, row i // side, with
    coordinate ((col + 0.5) * d, (row + 0.5) * d) where d = area_side / side.
    """
    if n_bs < 1 or math.isqrt(n_bs) ** 2 != n_bs:
        raise ConfigurationError(f"grid deployment needs a perfect-square BS count, got {n_bs}")
    if area_side <= 0:
        raise ConfigurationError("area_side must be positive")
    side = math.isqrt(n_bs)
    d = area_side / side
    idx = np.arange(n_bs)
    cols = idx % side
    rows = idx // side
    positions = np.column_stack([(cols + 0.5) * d, (rows + 0.5) * d])
    return Topology(bs_positions=positions, area_side=area_side)


def strongest_bs(position: np.ndarray, topology: Topology) -> int:
    """Index of the BS with the lowest average path loss (ties: lowest index)."""
    from .channel import path_loss_db  # deferred: channel imports topology helpers

    d = np.linalg.norm(topology.bs_positions - position, axis=1)
    pl = path_loss_db(d, _ASSOC_FREQ_GHZ)
    return int(np.argmin(pl))  # argmin takes the first (lowest-index) minimum


def drop_ues(topology: Topology, k: int, rng: np.random.Generator) -> UePlacement:
    """Drop k UEs uniformly over the area, at most one per BS.

    UEs are placed in index order. Each UE is drawn i.i.d. uniform and
    associated to its strongest BS; if that BS is already taken the position
    is redrawn until a free BS results. Redraws never touch earlier UEs, so
    the first j placements are identical for any k >= j under the same
    stream.
    """
    if not 1 <= k <= topology.n_bs:
        raise ConfigurationError(
            f"cannot place {k} UEs on {topology.n_bs} BSs with <= 1 UE per BS"
        )
    positions = np.empty((k, 2))
    serving = np.empty(k, dtype=int)
    taken = set()
    for ue in range(k):
        while True:
            pos = rng.uniform(0.0, topology.area_side, size=2)
            bs = strongest_bs(pos, topology)
            if bs not in taken:
                break
        positions[ue] = pos
        serving[ue] = bs
        taken.add(bs)
    return UePlacement(positions=positions, serving_bs=serving)
