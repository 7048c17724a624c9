"""Propagation model: WINNER II A1 LOS path loss, Rayleigh fading, thermal noise.

One ChannelRealization holds every complex coefficient a snapshot needs:
BS-to-UE, BS-to-BS, UE-to-UE and UE-to-BS links. Each (transmitter,
receiver) pair gets exactly one independent fading draw per snapshot; no
reciprocity is assumed.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError
from .topology import Topology, pairwise_distances

# A1 indoor LOS validity range; also keeps the gain finite when a UE lands
# on top of a BS.
_D_MIN_M = 3.0
_D_MAX_M = 100.0

THERMAL_NOISE_DBM_HZ = -174.0


@dataclass
class RadioParams:
    """Link-budget constants for the whole network."""

    carrier_freq_ghz: float = 2.0
    bandwidth_hz: float = 10e6
    noise_figure_db: float = 9.0
    p_b_max_w: float = 0.1  # max BS transmit power
    p_u_max_w: float = 0.1  # max UE transmit power

    def __post_init__(self):
        for name in ("carrier_freq_ghz", "bandwidth_hz", "noise_figure_db",
                     "p_b_max_w", "p_u_max_w"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"RadioParams.{name} must be strictly positive")

    @property
    def noise_power_w(self) -> float:
        return noise_power(self.bandwidth_hz, self.noise_figure_db)


@dataclass
class ChannelRealization:
    """All complex channel coefficients for one snapshot.

    h_dl: [K_dl, N_dl] downlink UE i  <-  downlink BS n
    f_bs: [N_ul, N_dl] uplink BS b(j) <-  downlink BS n (BS-to-BS)
    g_ue: [K_dl, K_ul] downlink UE i  <-  uplink UE k   (UE-to-UE)
    h_ul: [K_ul, N_ul] uplink UE k    ->  uplink BS b(j), serving and
          interfering entries alike (column j is the BS serving uplink UE j)

    The label arrays record which UE/BS index each axis position refers to,
    so the precoder can be assembled from the realization alone.
    """

    h_dl: np.ndarray
    f_bs: np.ndarray
    g_ue: np.ndarray
    h_ul: np.ndarray
    dl_ues: np.ndarray  # [K_dl] UE indices for h_dl/g_ue rows
    ul_ues: np.ndarray  # [K_ul] UE indices for h_ul/g_ue's UL axis
    n_dl: np.ndarray    # [N_dl] BS indices for the downlink-array axis
    ul_bs: np.ndarray   # [N_ul] BS indices for f_bs rows / h_ul columns


def path_loss_db(distance_m, freq_ghz: float):
    """WINNER II A1 (indoor office/residential) LOS average path loss.

    PL = 18.7 log10(d) + 46.8 + 20 log10(f / 5.0)  [dB], with d clamped to
    [3, 100] m. Distance-independent beyond the clamp bounds, no shadowing.
    Accepts scalar or array distances.
    """
    if freq_ghz <= 0:
        raise ConfigurationError("freq_ghz must be positive")
    d = np.clip(np.asarray(distance_m, dtype=float), _D_MIN_M, _D_MAX_M)
    pl = 18.7 * np.log10(d) + 46.8 + 20.0 * np.log10(freq_ghz / 5.0)
    return pl if pl.ndim else float(pl)


def noise_power(bandwidth_hz: float, noise_figure_db: float) -> float:
    """Receiver noise power in watts: -174 dBm/Hz + 10 log10(B) + NF."""
    if bandwidth_hz <= 0:
        raise ConfigurationError("bandwidth_hz must be positive")
    dbm = THERMAL_NOISE_DBM_HZ + 10.0 * np.log10(bandwidth_hz) + noise_figure_db
    return float(10.0 ** ((dbm - 30.0) / 10.0))


def draw_channel(path_loss, rng: np.random.Generator):
    """Complex gain(s) sqrt(10^(-PL/10)) * z, z ~ CN(0, 1).

    path_loss may be a scalar or an array of dB values; one independent
    fading draw is made per entry. E[|result|^2] equals the path gain.
    """
    pl = np.asarray(path_loss, dtype=float)
    z = (rng.standard_normal(pl.shape) + 1j * rng.standard_normal(pl.shape)) / np.sqrt(2.0)
    out = np.sqrt(10.0 ** (-pl / 10.0)) * z
    return out if out.ndim else complex(out)


def build_channel_realization(snapshot, topology: Topology, params: RadioParams,
                              rng: np.random.Generator) -> ChannelRealization:
    """Draw all four coefficient matrices for one snapshot.

    Matrices are filled in a fixed order (h_dl, f_bs, g_ue, h_ul) so a given
    (snapshot, stream state) pair always produces the identical realization.
    The four matrices cover disjoint (tx, rx) pair types, so every physical
    pair is drawn exactly once.
    """
    ue_pos = snapshot.ue_placement.positions
    bs_pos = topology.bs_positions
    f = params.carrier_freq_ghz

    dl_ue_pos = ue_pos[snapshot.dl_ues]
    ul_ue_pos = ue_pos[snapshot.ul_ues]
    dl_bs_pos = bs_pos[snapshot.n_dl]
    ul_bs_pos = bs_pos[snapshot.ul_bs]

    h_dl = draw_channel(path_loss_db(pairwise_distances(dl_ue_pos, dl_bs_pos), f), rng)
    f_bs = draw_channel(path_loss_db(pairwise_distances(ul_bs_pos, dl_bs_pos), f), rng)
    g_ue = draw_channel(path_loss_db(pairwise_distances(dl_ue_pos, ul_ue_pos), f), rng)
    h_ul = draw_channel(path_loss_db(pairwise_distances(ul_ue_pos, ul_bs_pos), f), rng)

    return ChannelRealization(
        h_dl=np.asarray(h_dl).reshape(len(dl_ue_pos), len(dl_bs_pos)),
        f_bs=np.asarray(f_bs).reshape(len(ul_bs_pos), len(dl_bs_pos)),
        g_ue=np.asarray(g_ue).reshape(len(dl_ue_pos), len(ul_ue_pos)),
        h_ul=np.asarray(h_ul).reshape(len(ul_ue_pos), len(ul_bs_pos)),
        dl_ues=snapshot.dl_ues.copy(),
        ul_ues=snapshot.ul_ues.copy(),
        n_dl=snapshot.n_dl.copy(),
        ul_bs=snapshot.ul_bs.copy(),
    )
