"""Downlink power allocation under per-antenna constraints.

The production path maximizes the plain power sum over the data streams,
which is a linear program: maximize sum_k p_k subject to
sum_k |w_nk|^2 p_k <= P_b for every antenna n and p >= 0, with the dummy
streams pinned at zero. Instances are tiny (at most N variables and N
constraints), so the LP is solved by an in-repo dense simplex. Two
desk-scale oracles back it in tests: exact vertex enumeration for the LP
and the concave log-sum objective it relaxes.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import minimize

from .exceptions import ConfigurationError

_FEAS_TOL = 1e-9
# vertex-enumeration oracle stays exact only at desk scale
_ORACLE_MAX_K_DL = 3
_ORACLE_MAX_N_DL = 6


@dataclass
class PowerAllocation:
    """Per-stream downlink powers, length K_dl + V_ul, dummy entries zero."""

    p: np.ndarray

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float)


@dataclass
class BaselinePowers:
    """Uncoordinated transmit powers: serving BSs at P_b, uplink UEs at P_u."""

    bs_power_w: np.ndarray  # [N] per-BS
    ue_power_w: np.ndarray  # [K] per-UE


def _simplex_max(c: np.ndarray, a: np.ndarray, b: np.ndarray, tol: float = 1e-11) -> np.ndarray:
    """Maximize c @ x s.t. a @ x <= b, x >= 0, where b >= 0.

    Dense tableau simplex starting from the slack basis (the origin is
    feasible). Bland's rule on both the entering and leaving choice, so the
    method cannot cycle.
    """
    m, n = a.shape
    t = np.zeros((m + 1, n + m + 1))
    t[:m, :n] = a
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = b
    t[m, :n] = c
    basis = list(range(n, n + m))
    for _ in range(200 * (n + m + 1)):
        reduced = t[m, :n + m]
        entering = -1
        for j in range(n + m):
            if reduced[j] > tol:
                entering = j
                break
        if entering < 0:
            x = np.zeros(n + m)
            x[basis] = t[:m, -1]
            return x[:n]
        col = t[:m, entering]
        pos = col > tol
        if not pos.any():
            raise RuntimeError("LP is unbounded")
        ratios = np.full(m, np.inf)
        ratios[pos] = t[:m, -1][pos] / col[pos]
        best = ratios.min()
        ties = [i for i in range(m) if pos[i] and ratios[i] <= best + tol * (1.0 + best)]
        leaving = min(ties, key=lambda i: basis[i])
        t[leaving] /= t[leaving, entering]
        for r in range(m + 1):
            if r != leaving and t[r, entering] != 0.0:
                t[r] -= t[r, entering] * t[leaving]
        basis[leaving] = entering
    raise RuntimeError("simplex failed to converge")


def _antenna_gains(w: np.ndarray, k_dl: int) -> np.ndarray:
    """|w_nk|^2 over the data columns; zero columns are rejected upstream."""
    w = np.asarray(w)
    if k_dl < 1:
        raise ConfigurationError("power allocation needs at least one downlink UE")
    if k_dl > w.shape[1]:
        raise ConfigurationError("k_dl exceeds the number of precoder columns")
    a = np.abs(w[:, :k_dl]) ** 2
    if np.any(a.max(axis=0) <= 1e-30):
        raise ConfigurationError("all-zero precoder column (violates unit-norm precondition)")
    return a


def solve_power_lp(w: np.ndarray, p_b: float, k_dl: int) -> PowerAllocation:
    """Sum-power-maximizing downlink allocation for a normalized precoder.

    Returns p of length w.shape[1]: the LP maximizer over the first k_dl
    entries, zeros for the dummy streams. Any vertex optimum is acceptable;
    the optimal objective value is unique even when the optimizer is not.
    """
    a = _antenna_gains(w, k_dl)
    b = np.full(a.shape[0], float(p_b))
    x = _simplex_max(np.ones(k_dl), a, b)
    p = np.zeros(w.shape[1])
    p[:k_dl] = np.maximum(x, 0.0)
    return PowerAllocation(p=p)


def power_lp_oracle(w: np.ndarray, p_b: float, k_dl: int) -> PowerAllocation:
    """Exact LP optimum by enumerating every basic feasible solution.

    Ground truth for solve_power_lp; refuses anything beyond K_dl <= 3,
    N_dl <= 6 where the enumeration stops being obviously exact and cheap.
    """
    a = _antenna_gains(w, k_dl)
    n_dl = a.shape[0]
    if k_dl > _ORACLE_MAX_K_DL or n_dl > _ORACLE_MAX_N_DL:
        raise ConfigurationError(
            f"oracle limited to K_dl <= {_ORACLE_MAX_K_DL}, N_dl <= {_ORACLE_MAX_N_DL}"
        )
    # constraint rows: a x <= p_b and -x <= 0
    rows = np.vstack([a, -np.eye(k_dl)])
    rhs = np.concatenate([np.full(n_dl, float(p_b)), np.zeros(k_dl)])
    best_x, best_obj = None, -np.inf
    for subset in combinations(range(len(rows)), k_dl):
        g = rows[list(subset)]
        if abs(np.linalg.det(g)) < 1e-12:
            continue
        x = np.linalg.solve(g, rhs[list(subset)])
        if np.all(a @ x <= p_b + _FEAS_TOL) and np.all(x >= -_FEAS_TOL):
            obj = x.sum()
            if obj > best_obj:
                best_obj, best_x = obj, x
    p = np.zeros(w.shape[1])
    p[:k_dl] = np.maximum(best_x, 0.0)
    return PowerAllocation(p=p)


def log_objective_oracle(w: np.ndarray, p_b: float, k_dl: int) -> PowerAllocation:
    """Maximize sum_k log2(1 + p_k) under the same per-antenna constraints.

    The concave program the linear objective relaxes; desk-scale only, used
    to quantify the relaxation gap. Solved by SLSQP from two starts (an
    interior point and the LP vertex), keeping the better.
    """
    a = _antenna_gains(w, k_dl)
    n_dl = a.shape[0]
    if k_dl > _ORACLE_MAX_K_DL or n_dl > _ORACLE_MAX_N_DL:
        raise ConfigurationError(
            f"oracle limited to K_dl <= {_ORACLE_MAX_K_DL}, N_dl <= {_ORACLE_MAX_N_DL}"
        )

    def neg_obj(p):
        return -np.sum(np.log2(1.0 + p))

    def neg_grad(p):
        return -1.0 / ((1.0 + p) * np.log(2.0))

    cons = [{"type": "ineq", "fun": lambda p: p_b - a @ p, "jac": lambda p: -a}]
    bounds = [(0.0, None)] * k_dl
    interior = np.full(k_dl, 0.9 * p_b / max(a.sum(axis=1).max(), 1e-30))
    starts = [interior, solve_power_lp(w, p_b, k_dl).p[:k_dl]]
    best_x, best_val = None, np.inf
    for x0 in starts:
        res = minimize(neg_obj, x0, jac=neg_grad, bounds=bounds, constraints=cons,
                       method="SLSQP", options={"maxiter": 500, "ftol": 1e-14})
        x = np.maximum(res.x, 0.0)
        if np.all(a @ x <= p_b + _FEAS_TOL):
            val = neg_obj(x)
            if val < best_val:
                best_val, best_x = val, x
    if best_x is None:
        raise RuntimeError("log-objective solver failed to produce a feasible point")
    p = np.zeros(w.shape[1])
    p[:k_dl] = best_x
    return PowerAllocation(p=p)


def baseline_powers(snapshot, params) -> BaselinePowers:
    """Uncoordinated scheme: fixed maximum powers, no precoding.

    Every BS serving a downlink UE transmits at P_b, every uplink UE at P_u;
    idle BSs stay silent (there is no joint transmission to recruit them).
    """
    bs_power = np.zeros(snapshot.n_bs)
    bs_power[snapshot.ue_placement.serving_bs[snapshot.dl_ues]] = params.p_b_max_w
    ue_power = np.zeros(snapshot.k)
    ue_power[snapshot.ul_ues] = params.p_u_max_w
    return BaselinePowers(bs_power_w=bs_power, ue_power_w=ue_power)
