"""Monte Carlo sweep orchestration: deterministic streams, workers, outputs.

Every (utilization, snapshot) pair owns one random stream derived from the
master seed, and all schemes evaluate the same snapshot and channel drawn
from it. Output is therefore a pure function of the configuration,
independent of worker count and scheduling order.
"""

import dataclasses
import json
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from . import __version__
from .channel import RadioParams, build_channel_realization
from .exceptions import ConfigurationError, SingularChannelError
from .metrics import (SnapshotMetrics, aggregate, baseline_sinrs, jt_sinrs,
                      snapshot_metrics, uplink_only_sinrs)
from .power import solve_power_lp
from .precoding import build_precoder, v_ul, v_ul_max
from .snapshot import TrafficConfig, generate_snapshot
from .topology import build_grid

SCHEMES = ("baseline", "jt", "jt_ds")

CSV_HEADER = ("scheme,utilization,delta,snapshot,k_dl,k_ul,v_ul,"
              "dl_sum_rate_bps,ul_sum_rate_bps,sum_rate_bps,failed")

# default sweep for a 16-BS grid; the single-UE point (K=1) is omitted
# because it is interference-free and cannot carry mixed traffic
DEFAULT_UTILIZATIONS = (0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0)

FAILURE_RATE_WARN = 0.01


@dataclass
class SimulationConfig:
    n_bs: int = 16
    area_side: float = 40.0
    radio: RadioParams = field(default_factory=RadioParams)
    # traffic.utilization is replaced per sweep point from `utilizations`
    traffic: TrafficConfig = field(default_factory=lambda: TrafficConfig(
        utilization=1.0, dl_probability=0.5, require_mixed_traffic=True))
    schemes: tuple = SCHEMES
    delta: int = 0
    utilizations: tuple = DEFAULT_UTILIZATIONS
    snapshots_per_point: int = 10_000
    master_seed: int = 1
    worker_count: int = 1  # or "auto"

    def __post_init__(self):
        self.schemes = tuple(self.schemes)
        self.utilizations = tuple(float(u) for u in self.utilizations)
        unknown = set(self.schemes) - set(SCHEMES)
        if unknown:
            raise ConfigurationError(f"unknown schemes: {sorted(unknown)}")
        if not self.schemes:
            raise ConfigurationError("at least one scheme is required")
        if not self.utilizations:
            raise ConfigurationError("at least one utilization point is required")
        if any(not 0.0 < u <= 1.0 for u in self.utilizations):
            raise ConfigurationError("utilizations must lie in (0, 1]")
        if len(set(self.utilizations)) != len(self.utilizations):
            raise ConfigurationError("utilizations must be distinct "
                                     "(records are keyed by the value)")
        if self.snapshots_per_point < 1:
            raise ConfigurationError("snapshots_per_point must be >= 1")
        if self.delta < 0:
            raise ConfigurationError("delta must be >= 0")
        if self.worker_count != "auto":
            try:
                workers = int(self.worker_count)
            except (TypeError, ValueError):
                raise ConfigurationError("worker_count must be an integer or 'auto'")
            if workers < 1:
                raise ConfigurationError("worker_count must be >= 1 or 'auto'")


@dataclass
class Record:
    """One scheme evaluation of one snapshot."""

    scheme: str
    utilization: float
    delta: int
    snapshot: int
    k_dl: int
    k_ul: int
    v_ul: int
    dl_sum_rate_bps: float
    ul_sum_rate_bps: float
    sum_rate_bps: float
    failed: bool


@dataclass
class RunResult:
    records: list
    summaries: list  # one dict per (scheme, utilization)
    config: SimulationConfig
    version: str


def derive_stream(master_seed: int, utilization_index: int,
                  snapshot_index: int) -> np.random.Generator:
    """Independent, reproducible stream keyed by (seed, sweep point, snapshot).

    The scheme deliberately does not enter the key: all schemes share the
    realization so their comparison is paired.
    """
    ss = np.random.SeedSequence(entropy=master_seed,
                                spawn_key=(utilization_index, snapshot_index))
    return np.random.default_rng(ss)


def realize_point(config: SimulationConfig, utilization_index: int,
                  snapshot_index: int):
    """Generate the shared (snapshot, channel) pair for one sweep task."""
    topology = build_grid(config.n_bs, config.area_side)
    traffic = dataclasses.replace(
        config.traffic, utilization=config.utilizations[utilization_index])
    rng = derive_stream(config.master_seed, utilization_index, snapshot_index)
    snap = generate_snapshot(topology, traffic, rng)
    chan = build_channel_realization(snap, topology, config.radio, rng)
    return snap, chan


def evaluate_scheme(scheme: str, snap, chan, params: RadioParams,
                    delta: int = 0) -> SnapshotMetrics:
    """Run one scheme's pipeline on a shared snapshot/channel realization.

    baseline: fixed maximum powers, no precoding.
    jt:       zero-forcing precoder over the downlink UEs + power LP.
    jt_ds:    baseline uplink SINRs pick the V_ul(delta) worst uplink BSs,
              which join the precoder as zero-power rows, then power LP.
    Without downlink traffic every scheme degrades to distributed uplink
    operation with no BS transmitting.
    """
    if scheme not in SCHEMES:
        raise ConfigurationError(f"unknown scheme {scheme!r}")
    if scheme == "baseline":
        sinrs = baseline_sinrs(snap, chan, params)
        return snapshot_metrics(scheme, snap, sinrs, params.bandwidth_hz, 0)
    if snap.k_dl == 0:
        sinrs = uplink_only_sinrs(snap, chan, params)
        return snapshot_metrics(scheme, snap, sinrs, params.bandwidth_hz, 0)
    v = 0
    base = None
    if scheme == "jt_ds":
        v = v_ul(delta, v_ul_max(snap.n_ul_count, snap.n_dl_count, snap.k_dl))
        if v > 0:
            base = baseline_sinrs(snap, chan, params)
    precoder = build_precoder(snap, chan, v, base)
    alloc = solve_power_lp(precoder.w, params.p_b_max_w, snap.k_dl)
    sinrs = jt_sinrs(snap, chan, params, precoder.w, alloc.p)
    return snapshot_metrics(scheme, snap, sinrs, params.bandwidth_hz, precoder.v_ul)


def _attempted_v_ul(scheme: str, snap, delta: int) -> int:
    if scheme != "jt_ds" or snap.k_dl == 0:
        return 0
    return v_ul(delta, v_ul_max(snap.n_ul_count, snap.n_dl_count, snap.k_dl))


def _run_task(config: SimulationConfig, task) -> list:
    u_idx, s_idx = task
    utilization = config.utilizations[u_idx]
    snap, chan = realize_point(config, u_idx, s_idx)
    records = []
    for scheme in SCHEMES:
        if scheme not in config.schemes:
            continue
        try:
            m = evaluate_scheme(scheme, snap, chan, config.radio, config.delta)
            rec = Record(scheme, utilization, config.delta, s_idx,
                         snap.k_dl, snap.k_ul, m.v_ul_used,
                         m.dl_sum_rate_bps, m.ul_sum_rate_bps, m.sum_rate_bps,
                         failed=False)
        except SingularChannelError:
            rec = Record(scheme, utilization, config.delta, s_idx,
                         snap.k_dl, snap.k_ul,
                         _attempted_v_ul(scheme, snap, config.delta),
                         float("nan"), float("nan"), float("nan"), failed=True)
        records.append(rec)
    return records


def _resolve_workers(config: SimulationConfig) -> int:
    if config.worker_count == "auto":
        return os.cpu_count() or 1
    return int(config.worker_count)


def run_sweep(config: SimulationConfig) -> RunResult:
    """Run every (scheme, utilization, snapshot) combination and aggregate.

    Snapshot/channel realizations are generated once per (utilization,
    snapshot) and shared across schemes. Failed (rank-deficient) snapshots
    are kept in the record list with their flag set and excluded from the
    aggregates; a failure rate above 1% triggers a warning.
    """
    tasks = [(u_idx, s_idx)
             for u_idx in range(len(config.utilizations))
             for s_idx in range(config.snapshots_per_point)]
    workers = _resolve_workers(config)
    if workers == 1 or len(tasks) == 1:
        per_task = [_run_task(config, t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_task = list(pool.map(partial(_run_task, config), tasks,
                                     chunksize=chunk))
    records = [rec for recs in per_task for rec in recs]
    records.sort(key=lambda r: (r.scheme, r.utilization, r.snapshot))

    summaries = []
    n_failed_total = 0
    for scheme in SCHEMES:
        if scheme not in config.schemes:
            continue
        for utilization in config.utilizations:
            point = [r for r in records
                     if r.scheme == scheme and r.utilization == utilization]
            ok = [r for r in point if not r.failed]
            n_failed = len(point) - len(ok)
            n_failed_total += n_failed
            k = int(np.floor(utilization * config.n_bs + 0.5))
            entry = {
                "scheme": scheme,
                "utilization": utilization,
                "delta": config.delta,
                "traffic_load_k": k,
                "n_snapshots": len(point),
                "n_failed": n_failed,
            }
            if ok:
                s = aggregate(ok, k)
                entry.update({
                    "mean_sum_rate_bps": s.mean_sum_rate_bps,
                    "mean_dl_sum_rate_bps": s.mean_dl_sum_rate_bps,
                    "mean_ul_sum_rate_bps": s.mean_ul_sum_rate_bps,
                    "fifth_percentile_user_rate_bps": s.fifth_percentile_user_rate_bps,
                })
            else:
                entry.update({
                    "mean_sum_rate_bps": None,
                    "mean_dl_sum_rate_bps": None,
                    "mean_ul_sum_rate_bps": None,
                    "fifth_percentile_user_rate_bps": None,
                })
            summaries.append(entry)

    failure_rate = n_failed_total / max(len(records), 1)
    if failure_rate > FAILURE_RATE_WARN:
        warnings.warn(f"{failure_rate:.2%} of snapshot evaluations failed "
                      "(rank-deficient channels)", RuntimeWarning)
    return RunResult(records=records, summaries=summaries, config=config,
                     version=__version__)


def _fmt(x) -> str:
    """12-significant-digit text form used across all output files."""
    return f"{float(x):.12g}"


def _round12(x):
    return None if x is None else float(_fmt(x))


def write_results(result: RunResult, out_dir) -> dict:
    """Write records.csv, summary.json and config.json under out_dir.

    Rows are ordered by (scheme, utilization, snapshot) and all numbers are
    serialized with 12 significant digits, so identical configurations
    produce byte-identical files.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {name: os.path.join(out_dir, name)
             for name in ("records.csv", "summary.json", "config.json")}

    lines = [CSV_HEADER]
    for r in result.records:
        lines.append(",".join([
            r.scheme, _fmt(r.utilization), str(r.delta), str(r.snapshot),
            str(r.k_dl), str(r.k_ul), str(r.v_ul),
            _fmt(r.dl_sum_rate_bps), _fmt(r.ul_sum_rate_bps),
            _fmt(r.sum_rate_bps), str(int(r.failed)),
        ]))
    with open(paths["records.csv"], "w") as fh:
        fh.write("\n".join(lines) + "\n")

    summaries = []
    for entry in result.summaries:
        out = dict(entry)
        for key in ("mean_sum_rate_bps", "mean_dl_sum_rate_bps",
                    "mean_ul_sum_rate_bps", "fifth_percentile_user_rate_bps"):
            out[key] = _round12(out[key])
        out["utilization"] = _round12(out["utilization"])
        summaries.append(out)
    with open(paths["summary.json"], "w") as fh:
        json.dump(summaries, fh, indent=2)
        fh.write("\n")

    config = dataclasses.asdict(result.config)
    config["schemes"] = list(result.config.schemes)
    config["utilizations"] = [_round12(u) for u in result.config.utilizations]
    config["version"] = result.version
    with open(paths["config.json"], "w") as fh:
        json.dump(config, fh, indent=2)
        fh.write("\n")
    return paths
