"""SINR and rate evaluation for all three schemes, plus sweep-point statistics.

SINRs are evaluated exactly as the signal model states them, residual
precoder leakage included, so numerical conditioning effects stay
observable. Rates are B * log2(1 + gamma) bits per second.
"""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, RadioParams
from .exceptions import ConfigurationError
from .power import baseline_powers


@dataclass
class SnapshotMetrics:
    """Per-UE SINRs/rates and per-snapshot sums for one scheme."""

    scheme: str
    per_ue_sinr: np.ndarray      # [K] linear scale, UE drop order
    per_ue_rate_bps: np.ndarray  # [K]
    dl_sum_rate_bps: float
    ul_sum_rate_bps: float
    sum_rate_bps: float
    v_ul_used: int


@dataclass
class SweepPointSummary:
    """Aggregates over one sweep point's snapshots."""

    mean_sum_rate_bps: float
    mean_dl_sum_rate_bps: float
    mean_ul_sum_rate_bps: float
    fifth_percentile_user_rate_bps: float  # 5th pct of sum-rate / traffic load K
    n_samples: int


def sinr_downlink_jt(i: int, channel: ChannelRealization, w: np.ndarray,
                     p: np.ndarray, p_u: float, noise_w: float) -> float:
    """Downlink SINR under joint transmission for downlink slot i.

    gamma_i = |h_i^H w_i|^2 p_i /
              (sigma^2 + sum_{k != i} |h_i^H w_k|^2 p_k + sum_l |g_il|^2 P_u)

    i indexes the rows of h_dl (and the first K_dl precoder columns). The
    leakage sum runs over every other column, dummy streams included; their
    zero powers remove them arithmetically, not structurally.
    """
    hw = np.conj(channel.h_dl[i]) @ w
    terms = np.abs(hw) ** 2 * p
    desired = terms[i]
    mask = np.ones(len(terms), dtype=bool)
    mask[i] = False
    leakage = terms[mask].sum()
    ue_to_ue = (np.abs(channel.g_ue[i]) ** 2).sum() * p_u
    return float(desired / (noise_w + leakage + ue_to_ue))


def sinr_uplink_jt(j: int, channel: ChannelRealization, w: np.ndarray,
                   p: np.ndarray, p_u: float, noise_w: float) -> float:
    """Uplink SINR at the serving BS of uplink slot j under joint transmission.

    gamma_j = |h_jb(j)|^2 P_u /
              (sigma^2 + sum_{l != j} |h_lb(j)|^2 P_u + sum_k |f_b(j)^H w_k|^2 p_k)

    j indexes the columns of h_ul / rows of f_bs. For a BS included in the
    precoder the last term is numerically nulled by construction.
    """
    col = np.abs(channel.h_ul[:, j]) ** 2
    desired = col[j] * p_u
    mask = np.ones(len(col), dtype=bool)
    mask[j] = False
    other_ul = col[mask].sum() * p_u
    precoder_leak = float(np.abs(np.conj(channel.f_bs[j]) @ w) ** 2 @ p)
    return float(desired / (noise_w + other_ul + precoder_leak))


def jt_sinrs(snapshot, channel: ChannelRealization, params: RadioParams,
             w: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Per-UE SINRs (UE drop order) for a joint-transmission scheme."""
    noise_w = params.noise_power_w
    sinrs = np.zeros(snapshot.k)
    for slot, ue in enumerate(snapshot.dl_ues):
        sinrs[ue] = sinr_downlink_jt(slot, channel, w, p, params.p_u_max_w, noise_w)
    for slot, ue in enumerate(snapshot.ul_ues):
        sinrs[ue] = sinr_uplink_jt(slot, channel, w, p, params.p_u_max_w, noise_w)
    return sinrs


def uplink_only_sinrs(snapshot, channel: ChannelRealization,
                      params: RadioParams) -> np.ndarray:
    """Distributed uplink operation when no downlink traffic exists.

    No BS transmits, so the only impairments are noise and UE-to-BS
    interference from the other uplink UEs. All three schemes coincide here.
    """
    noise_w = params.noise_power_w
    sinrs = np.zeros(snapshot.k)
    for slot, ue in enumerate(snapshot.ul_ues):
        col = np.abs(channel.h_ul[:, slot]) ** 2
        mask = np.ones(len(col), dtype=bool)
        mask[slot] = False
        sinrs[ue] = col[slot] * params.p_u_max_w / (
            noise_w + col[mask].sum() * params.p_u_max_w)
    return sinrs


def baseline_sinrs(snapshot, channel: ChannelRealization,
                   params: RadioParams) -> np.ndarray:
    """Per-UE SINRs for the uncoordinated scheme, UE drop order.

    Downlink UE i hears its serving BS at P_b against the other serving
    downlink BSs plus UE-to-UE interference; uplink BS b(j) hears its UE
    against the other uplink UEs plus the serving downlink BSs. Idle BSs
    transmit nothing.
    """
    noise_w = params.noise_power_w
    powers = baseline_powers(snapshot, params)
    dl_col_power = powers.bs_power_w[snapshot.n_dl]  # per downlink-array column
    ul_ue_power = powers.ue_power_w[snapshot.ul_ues]

    # column of each downlink UE's serving BS within the downlink array
    col_of_bs = {int(bs): c for c, bs in enumerate(snapshot.n_dl.tolist())}

    sinrs = np.zeros(snapshot.k)
    for slot, ue in enumerate(snapshot.dl_ues):
        own_col = col_of_bs[int(snapshot.ue_placement.serving_bs[ue])]
        gains = np.abs(channel.h_dl[slot]) ** 2
        desired = gains[own_col] * params.p_b_max_w
        rx = gains * dl_col_power
        other_bs = rx.sum() - rx[own_col]
        ue_to_ue = (np.abs(channel.g_ue[slot]) ** 2 * ul_ue_power).sum()
        sinrs[ue] = desired / (noise_w + other_bs + ue_to_ue)

    for slot, ue in enumerate(snapshot.ul_ues):
        col = np.abs(channel.h_ul[:, slot]) ** 2
        desired = col[slot] * params.p_u_max_w
        mask = np.ones(len(col), dtype=bool)
        mask[slot] = False
        other_ul = (col[mask] * ul_ue_power[mask]).sum()
        bs_to_bs = (np.abs(channel.f_bs[slot]) ** 2 * dl_col_power).sum()
        sinrs[ue] = desired / (noise_w + other_ul + bs_to_bs)

    return sinrs


def snapshot_metrics(scheme: str, snapshot, sinrs: np.ndarray,
                     bandwidth_hz: float, v_ul_used: int) -> SnapshotMetrics:
    """Convert per-UE SINRs into rates and directional sums."""
    rates = bandwidth_hz * np.log2(1.0 + sinrs)
    dl = float(rates[snapshot.dl_ues].sum())
    ul = float(rates[snapshot.ul_ues].sum())
    return SnapshotMetrics(scheme=scheme, per_ue_sinr=sinrs, per_ue_rate_bps=rates,
                           dl_sum_rate_bps=dl, ul_sum_rate_bps=ul,
                           sum_rate_bps=dl + ul, v_ul_used=v_ul_used)


def aggregate(results, k: int) -> SweepPointSummary:
    """Mean sum-rates and the 5th-percentile-per-UE metric for one sweep point.

    The worst-user metric is the 5th percentile of per-snapshot sum-rate
    (linear interpolation on the sorted sample) divided by the traffic load
    K. A meaningful percentile wants >= 20 snapshots; fewer are accepted
    but mostly exercise the mean fields.
    """
    results = list(results)
    if not results:
        raise ConfigurationError("cannot aggregate an empty result list")
    if k < 1:
        raise ConfigurationError("traffic load k must be >= 1")
    total = np.array([r.sum_rate_bps for r in results])
    dl = np.array([r.dl_sum_rate_bps for r in results])
    ul = np.array([r.ul_sum_rate_bps for r in results])
    return SweepPointSummary(
        mean_sum_rate_bps=float(total.mean()),
        mean_dl_sum_rate_bps=float(dl.mean()),
        mean_ul_sum_rate_bps=float(ul.mean()),
        fifth_percentile_user_rate_bps=float(np.percentile(total, 5.0) / k),
        n_samples=len(results),
    )
