"""Warehouse-shape optimization at fixed total aisle length.

With k * l = 100 m held fixed, more aisles mean shorter aisles but more
cross-aisle walking; each heuristic prefers a different shape, and the best
(k, heuristic) pair changes when the objective switches from picking time to
lead time.
"""
from pickroute import (
    Geometric,
    HEURISTICS,
    PickTimeModel,
    QueueScenario,
    layout_sweep,
    recommend,
)

dist = Geometric(1 / 18)
pick = PickTimeModel.from_scv(5.0, 1.0)
scenario = QueueScenario(c=10, lam=145 / 3600)
rows = layout_sweep(100.0, range(2, 25), 2.5, 3000 / 3600, dist, pick, scenario)

print("ten pickers, 145 orders/hour, geometric orders of mean 18, k*l = 100 m\n")
header = f"{'k':>3} {'l':>6}"
for h in HEURISTICS:
    header += f" {h + ' E[T]':>14} {'E[R]':>9}"
print(header)
for row in rows:
    line = f"{row.k:>3} {row.l:6.2f}"
    for h in HEURISTICS:
        cell = row.cells[h]
        e_r = f"{cell.e_r:9.2f}" if cell.e_r is not None else "       NA"
        line += f" {cell.e_t:14.2f} {e_r}"
    print(line)

k_t, h_t = recommend(rows, "mean_pick_time")
k_r, h_r = recommend(rows, "lead_time")
print(f"\nfastest picking:  k = {k_t:2d} with {h_t}")
print(f"shortest lead time: k = {k_r:2d} with {h_r}")
print("\nnote the S-shaped column: even aisle counts are locally better than odd")
print("ones, because an even count lets the picker finish at the front without a")
print("wasted return leg in the last aisle.")
