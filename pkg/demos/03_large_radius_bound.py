"""
How large a ball guarantees a small average
===========================================

For a mean-zero field, a ball much larger than the box contains many whole
periods, and only a thin shell of partial cells can contribute.  Compare the
sharp radius with the older, cruder estimate and check it on random fields.
"""

import numpy as np

from mixscale import prior_sg_bound, random_meanzero, sg_upper_bound, sup_ball_average

for kappa in (0.01, 0.1, 0.3, 0.5, 0.9):
    sharp = sg_upper_bound(1.0, 2, kappa)
    old = prior_sg_bound(1.0, kappa)
    print(f"kappa={kappa:<5} radius {sharp:9.3f}   older estimate {old:9.3f}")

worst = 0.0
for seed in range(1, 11):
    f = random_meanzero(seed, 0.5, 128)
    for kappa in (0.1, 0.5, 0.9):
        worst = max(worst, sup_ball_average(f, sg_upper_bound(1.0, 2, kappa)) / kappa)
print(f"largest sup|A_r f| / (kappa ||f||) seen: {worst:.4f}")
