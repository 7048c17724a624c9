"""One traffic realization: active UEs, their directions, and the BS partition."""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError
from .topology import Topology, UePlacement, drop_ues


@dataclass
class TrafficConfig:
    """Per-snapshot traffic model.

    utilization: fraction of BSs with an active UE, K = round(utilization * N).
    dl_probability: per-UE probability of downlink direction (i.i.d.).
    require_mixed_traffic: redraw the direction vector (positions untouched)
        until the snapshot has at least one downlink and one uplink UE.
    """

    utilization: float = 1.0
    dl_probability: float = 0.5
    require_mixed_traffic: bool = False

    def __post_init__(self):
        if not 0.0 < self.utilization <= 1.0:
            raise ConfigurationError("utilization must be in (0, 1]")
        if not 0.0 <= self.dl_probability <= 1.0:
            raise ConfigurationError("dl_probability must be in [0, 1]")


@dataclass
class Snapshot:
    """Traffic realization over a known topology.

    Exposes the partition the transmission schemes work with: every BS
    serving an uplink UE joins the uplink set, every other BS (busy or idle)
    joins the downlink array.
    """

    ue_placement: UePlacement
    is_downlink: np.ndarray  # [K] bool, per-UE direction
    n_bs: int

    dl_ues: np.ndarray = field(init=False)  # UE indices with downlink traffic
    ul_ues: np.ndarray = field(init=False)  # UE indices with uplink traffic
    n_dl: np.ndarray = field(init=False)    # sorted BS indices in the downlink array
    ul_bs: np.ndarray = field(init=False)   # serving BS of ul_ues[j], in that order

    def __post_init__(self):
        self.is_downlink = np.asarray(self.is_downlink, dtype=bool)
        if len(self.is_downlink) != len(self.ue_placement):
            raise ConfigurationError("direction vector length != number of UEs")
        serving = self.ue_placement.serving_bs
        if len(serving) and (serving.min() < 0 or serving.max() >= self.n_bs):
            raise ConfigurationError("serving BS index out of range")
        self.dl_ues = np.flatnonzero(self.is_downlink)
        self.ul_ues = np.flatnonzero(~self.is_downlink)
        self.ul_bs = serving[self.ul_ues]
        self.n_dl = np.setdiff1d(np.arange(self.n_bs), self.ul_bs)

    @property
    def k(self) -> int:
        return len(self.ue_placement)

    @property
    def k_dl(self) -> int:
        return len(self.dl_ues)

    @property
    def k_ul(self) -> int:
        return len(self.ul_ues)

    @property
    def n_dl_count(self) -> int:
        return len(self.n_dl)

    @property
    def n_ul_count(self) -> int:
        return len(self.ul_bs)


def generate_snapshot(topology: Topology, traffic: TrafficConfig,
                      rng: np.random.Generator) -> Snapshot:
    """Drop K = round(utilization * N) UEs and assign directions.

    Positions are drawn first (see drop_ues), then one direction draw per UE.
    Under require_mixed_traffic only the direction vector is redrawn, so the
    spatial distribution stays unconditioned. Rounding is half-up.
    """
    n = topology.n_bs
    k = int(np.floor(traffic.utilization * n + 0.5))
    if k < 1:
        raise ConfigurationError(
            f"utilization {traffic.utilization} with {n} BSs yields no active UE"
        )
    if traffic.require_mixed_traffic:
        if k < 2:
            raise ConfigurationError("mixed traffic is impossible with a single UE")
        if traffic.dl_probability in (0.0, 1.0):
            raise ConfigurationError(
                "mixed traffic is impossible with a degenerate dl_probability"
            )
    placement = drop_ues(topology, k, rng)
    while True:
        is_downlink = rng.random(k) < traffic.dl_probability
        if not traffic.require_mixed_traffic:
            break
        if is_downlink.any() and not is_downlink.all():
            break
    return Snapshot(ue_placement=placement, is_downlink=is_downlink, n_bs=n)
