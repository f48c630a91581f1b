"""Order-size distributions and their generating functions.

Every analytic formula in the package touches the order-size distribution
only through E[x^M] and its derivatives.  This script compares the built-in
families at a common mean and shows the moment/sampler agreement.
"""
import numpy as np

from pickroute import Deterministic, Geometric, ShiftedNegBinomial, ShiftedPoisson

MEAN = 12.0
dists = [
    Deterministic(12),
    ShiftedPoisson(MEAN - 1),
    Geometric(1 / MEAN),
    ShiftedNegBinomial(4, 4 / MEAN),
]

print(f"{'spec':>12} {'mean':>8} {'E[M(M-1)]':>12} {'variance':>10}")
for d in dists:
    mean = d.mean()
    f2 = d.factorial2()
    var = f2 + mean - mean * mean
    print(f"{d.spec():>12} {mean:8.2f} {f2:12.2f} {var:10.2f}")

print("\nPGF values (larger near x=1 means 'more small orders likely'):")
xs = [0.25, 0.5, 0.75, 0.9, 1.0]
print(f"{'spec':>12} " + " ".join(f"x={x:<6}" for x in xs))
for d in dists:
    print(f"{d.spec():>12} " + " ".join(f"{d.pgf(x):<8.4f}" for x in xs))

print("\nsampler agreement (200000 draws):")
rng = np.random.default_rng(1)
for d in dists:
    draws = d.sample(rng, size=200_000)
    print(f"{d.spec():>12} sample mean {draws.mean():8.3f}  analytic {d.mean():8.3f}")
