"""Order-lead time: the picking floor as an M/G/c queue.

The heuristic with the shortest mean picking time is not automatically the
one with the shortest lead time: waiting amplifies the variance of the
picking time, so a slightly slower but steadier route can win.
"""
from pickroute import (
    Geometric,
    HEURISTICS,
    PickTimeModel,
    QueueScenario,
    WarehouseConfig,
    compute_moments,
    lead_time_estimate,
)

cfg = WarehouseConfig(k=5, l=20.0, wa=2.5, v=0.83)
pick = PickTimeModel.from_scv(5.0, 0.5)
dist = Geometric(1 / 32)
scenario = QueueScenario(c=5, lam=51 / 3600)  # five pickers, 51 orders per hour

print("five pickers, 51 orders/hour, geometric orders of mean 32\n")
print(f"{'heuristic':>12} {'E[T]':>8} {'SD[T]':>8} {'rho':>6} {'Q(wait)':>8} {'E[R]':>10}")
for h in HEURISTICS:
    rep = compute_moments(cfg, dist, pick, h)
    lead = lead_time_estimate(rep, scenario)
    e_r = f"{lead.e_r:10.2f}" if lead.stable else "        NA"
    q = f"{lead.q_wait:8.3f}" if lead.stable else "      NA"
    print(f"{h:>12} {rep.e_t:8.2f} {rep.sd_t:8.2f} {lead.rho:6.3f} {q} {e_r}")

print("\nthe return route saturates the pickers (rho near 1) so its lead time")
print("explodes; largest-gap and S-shaped have nearly equal picking times, but")
print("S-shaped's lower variance gives it the edge once waiting is counted.")
