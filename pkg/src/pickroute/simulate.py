"""Monte Carlo oracle: sample orders, evaluate the route-time equations
directly, and estimate picking-time moments with standard errors.

Each route-time equation is evaluated literally on sampled orders, so the
simulator shares no code with the analytic moment formulas.  A scalar
reference implementation (:func:`route_time`) defines the semantics; the
replication driver uses an equivalent vectorized engine (consistency between
the two is pinned by tests).

Reproducibility: replications are processed in fixed-size batches, each with
its own counter-based Philox stream keyed by (seed, batch index).  Identical
(seed, n) always produce bit-identical estimates, and batches could be
evaluated in parallel without changing the result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .heuristics import HEURISTICS, PickTimeModel, WarehouseConfig
from .orderdist import OrderSizeDistribution

__all__ = ["SampledOrder", "McEstimate", "sample_order", "route_time",
           "run_replications", "run_replications_all", "route_times_batch"]

_BATCH = 1 << 17  # fixed batch size; part of the reproducible stream layout


@dataclass(frozen=True)
class SampledOrder:
    m: int
    items: tuple  # ((aisle in 1..k, position in [0,1]), ...)


@dataclass(frozen=True)
class McEstimate:
    n: int
    mean_t: float
    se_mean: float
    mean_t2: float
    se_t2: float


def _rng_for_batch(seed: int, batch: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(batch,))
    return np.random.Generator(np.random.Philox(ss))


def sample_order(cfg: WarehouseConfig, dist: OrderSizeDistribution,
                 rng: np.random.Generator) -> SampledOrder:
    """One order: size from the distribution, uniform aisle and position per item."""
    m = int(dist.sample(rng))
    aisles = rng.integers(1, cfg.k + 1, size=m)
    positions = rng.random(m)
    return SampledOrder(m, tuple((int(a), float(p)) for a, p in zip(aisles, positions)))


def route_time(cfg: WarehouseConfig, heuristic: str, order: SampledOrder,
               pick_samples) -> float:
    """Total picking time of one order under the named heuristic.

    ``pick_samples`` holds one pick duration per item.  Largest gaps count the
    spacings to both aisle ends; the midpoint split sends an item exactly at
    the middle to the back half.
    """
    if order.m < 1 or not order.items:
        raise ValueError("route_time requires a nonempty order")
    if len(pick_samples) != order.m:
        raise ValueError("pick_samples length must equal the order size")
    k, l, wa, v = cfg.k, cfg.l, cfg.wa, cfg.v

    per_aisle: dict[int, list[float]] = {}
    for aisle, pos in order.items:
        per_aisle.setdefault(aisle, []).append(pos)
    kplus = max(per_aisle)
    kminus = min(per_aisle)
    t_pick = float(sum(pick_samples))
    t_cross = (2.0 * wa / v) * (kplus - 1)

    if heuristic == "return":
        within = sum(max(ps) for ps in per_aisle.values())
        return t_pick + (2.0 * l / v) * within + t_cross

    if heuristic == "midpoint":
        within = 0.0
        for aisle in range(kminus + 1, kplus):
            ps = per_aisle.get(aisle)
            if not ps:
                continue
            front = [p for p in ps if p < 0.5]
            back = [p for p in ps if p >= 0.5]
            a_f = max(front) / 0.5 if front else 0.0
            a_b = (1.0 - min(back)) / 0.5 if back else 0.0
            within += a_f + a_b
        return t_pick + (l / v) * within + 2.0 * l / v + t_cross

    if heuristic == "largest-gap":
        within = 0.0
        for aisle in range(kminus + 1, kplus):
            ps = per_aisle.get(aisle)
            if not ps:
                continue  # empty aisle: the whole aisle is the gap
            sp = sorted(ps)
            gaps = [sp[0]] + [b - a for a, b in zip(sp, sp[1:])] + [1.0 - sp[-1]]
            within += 1.0 - max(gaps)
        return t_pick + (2.0 * l / v) * within + 2.0 * l / v + t_cross

    if heuristic == "s-shaped":
        occupied = len(per_aisle)
        odd = occupied % 2
        a_last = max(per_aisle[kplus])
        return t_pick + (l / v) * (occupied + odd * (2.0 * a_last - 1.0)) + t_cross

    raise ValueError(f"unknown heuristic {heuristic!r}; expected one of {HEURISTICS}")


def _pick_sums(pick: PickTimeModel, m: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Total pick time per order: gamma with matched first two moments."""
    scv = pick.scv
    if pick.mean == 0.0:
        return np.zeros(m.shape)
    if scv <= 0.0:
        return m * pick.mean
    shape = 1.0 / scv
    scale = pick.mean * scv
    return rng.gamma(shape * m, scale)


def _batch_route_times(cfg: WarehouseConfig, dist: OrderSizeDistribution,
                       pick: PickTimeModel, b: int, rng: np.random.Generator):
    """Route times for b orders, all heuristics at once (shared samples)."""
    k, l, wa, v = cfg.k, cfg.l, cfg.wa, cfg.v
    m = dist.sample(rng, size=b)
    total = int(m.sum())
    oid = np.repeat(np.arange(b, dtype=np.int64), m)
    aisle = rng.integers(0, k, size=total)
    pos = rng.random(total)
    picks = _pick_sums(pick, m, rng)

    cell = oid * k + aisle
    order = np.lexsort((pos, cell))
    sc = cell[order]
    sp = pos[order]

    first = np.empty(total, dtype=bool)
    first[0] = True
    np.not_equal(sc[1:], sc[:-1], out=first[1:])
    last = np.empty(total, dtype=bool)
    last[-1] = True
    np.not_equal(sc[1:], sc[:-1], out=last[:-1])
    starts = np.flatnonzero(first)
    occupied_cells = sc[starts]

    counts = np.bincount(cell, minlength=b * k).reshape(b, k)

    # furthest item: positions are sorted within each cell
    a_mat = np.zeros(b * k)
    a_mat[occupied_cells] = sp[last]
    a_mat = a_mat.reshape(b, k)

    # largest gap: max of (first position, inner spacings, trailing space)
    gap_before = np.empty(total)
    gap_before[0] = sp[0]
    np.subtract(sp[1:], sp[:-1], out=gap_before[1:])
    gap_before[first] = sp[first]
    d_mat = np.ones(b * k)
    d_mat[occupied_cells] = np.maximum(np.maximum.reduceat(gap_before, starts), 1.0 - sp[last])
    d_mat = d_mat.reshape(b, k)

    # half-aisle maxima, as fractions of the half length
    front_val = np.where(sp < 0.5, sp, 0.0)
    back_val = np.where(sp >= 0.5, 1.0 - sp, 0.0)
    af_mat = np.zeros(b * k)
    af_mat[occupied_cells] = np.maximum.reduceat(front_val, starts) * 2.0
    ab_mat = np.zeros(b * k)
    ab_mat[occupied_cells] = np.maximum.reduceat(back_val, starts) * 2.0
    af_mat = af_mat.reshape(b, k)
    ab_mat = ab_mat.reshape(b, k)

    occ = counts > 0
    idx = np.arange(1, k + 1)
    kplus = np.max(np.where(occ, idx, 0), axis=1)
    kminus = np.min(np.where(occ, idx, k + 1), axis=1)
    n_occ = occ.sum(axis=1)
    iodd = (n_occ % 2).astype(np.float64)
    a_last = a_mat[np.arange(b), kplus - 1]

    interior = (idx > kminus[:, None]) & (idx < kplus[:, None])
    s_mid = np.sum((af_mat + ab_mat) * interior, axis=1)
    s_gap = np.sum((1.0 - d_mat) * interior, axis=1)
    s_ret = a_mat.sum(axis=1)

    cross = (2.0 * wa / v) * (kplus - 1)
    times = {
        "return": picks + (2.0 * l / v) * s_ret + cross,
        "midpoint": picks + (l / v) * s_mid + 2.0 * l / v + cross,
        "largest-gap": picks + (2.0 * l / v) * s_gap + 2.0 * l / v + cross,
        "s-shaped": picks + (l / v) * (n_occ + iodd * (2.0 * a_last - 1.0)) + cross,
    }
    return times


def route_times_batch(cfg: WarehouseConfig, dist: OrderSizeDistribution,
                      pick: PickTimeModel, n: int, seed: int) -> dict[str, np.ndarray]:
    """Per-order route times for all heuristics with shared samples."""
    out = {h: [] for h in HEURISTICS}
    done = 0
    batch = 0
    while done < n:
        b = min(_BATCH, n - done)
        times = _batch_route_times(cfg, dist, pick, b, _rng_for_batch(seed, batch))
        for h in HEURISTICS:
            out[h].append(times[h])
        done += b
        batch += 1
    return {h: np.concatenate(v) for h, v in out.items()}


def run_replications_all(cfg: WarehouseConfig, dist: OrderSizeDistribution,
                         pick: PickTimeModel, n: int, seed: int) -> dict[str, McEstimate]:
    """Moment estimates for every heuristic from one shared set of samples."""
    if n < 2:
        raise ValueError(f"need at least 2 replications, got {n}")
    sums = {h: [0.0, 0.0, 0.0] for h in HEURISTICS}  # sum t, t^2, t^4
    done = 0
    batch = 0
    while done < n:
        b = min(_BATCH, n - done)
        times = _batch_route_times(cfg, dist, pick, b, _rng_for_batch(seed, batch))
        for h in HEURISTICS:
            t = times[h]
            t2 = t * t
            s = sums[h]
            s[0] += float(np.sum(t))
            s[1] += float(np.sum(t2))
            s[2] += float(np.sum(t2 * t2))
        done += b
        batch += 1

    out = {}
    for h in HEURISTICS:
        s1, s2, s4 = sums[h]
        mean_t = s1 / n
        mean_t2 = s2 / n
        var_t = max(s2 / n - mean_t ** 2, 0.0) * n / (n - 1)
        var_t2 = max(s4 / n - mean_t2 ** 2, 0.0) * n / (n - 1)
        out[h] = McEstimate(n, mean_t, math.sqrt(var_t / n), mean_t2, math.sqrt(var_t2 / n))
    return out


def run_replications(cfg: WarehouseConfig, dist: OrderSizeDistribution,
                     pick: PickTimeModel, heuristic: str, n: int, seed: int) -> McEstimate:
    """Moment estimates for one heuristic; deterministic in (seed, n)."""
    if heuristic not in HEURISTICS:
        raise ValueError(f"unknown heuristic {heuristic!r}; expected one of {HEURISTICS}")
    return run_replications_all(cfg, dist, pick, n, seed)[heuristic]
