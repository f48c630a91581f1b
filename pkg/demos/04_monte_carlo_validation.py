"""Analytic moments vs the Monte Carlo oracle.

The simulator evaluates the route-time equations directly on sampled orders,
sharing no code with the analytic engine, so z-scores within +-4 across
configurations are strong evidence both are right.
"""
from pickroute import (
    HEURISTICS,
    PickTimeModel,
    WarehouseConfig,
    compute_moments,
    parse_dist_spec,
    run_replications_all,
)

N = 200_000
pick = PickTimeModel.from_scv(10.0, 1.0)
print(f"{N} replications per cell, pick time mean 10 s, SCV 1\n")
print(f"{'dist':>9} {'k':>2} {'heuristic':>12} {'analytic':>10} {'simulated':>10} "
      f"{'z(E[T])':>8} {'z(E[T^2])':>9}")
for spec in ("det:3", "spois:4", "geom:8"):
    dist = parse_dist_spec(spec)
    for k in (2, 5):
        cfg = WarehouseConfig(k, 20.0, 2.5, 3000 / 3600)
        est = run_replications_all(cfg, dist, pick, N, seed=2)
        for h in HEURISTICS:
            rep = compute_moments(cfg, dist, pick, h)
            e = est[h]
            z1 = (rep.e_t - e.mean_t) / e.se_mean
            z2 = (rep.e_t2 - e.mean_t2) / e.se_t2
            print(f"{spec:>9} {k:>2} {h:>12} {rep.e_t:10.3f} {e.mean_t:10.3f} "
                  f"{z1:8.2f} {z2:9.2f}")
