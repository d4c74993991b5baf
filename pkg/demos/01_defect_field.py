"""
A field that looks mixed at one radius but not at a larger one
==============================================================

A small disk of value 1 sits on a slightly negative background.  Balls of
radius 1/2 never see enough of the disk to matter, yet balls of radius 0.55
centered on the far edge of the box wrap around and catch the whole disk.
"""

import numpy as np

from mixscale import ball_average, ball_average_at, defect_field, sup_ball_average

f = defect_field(0.05, 1024)
kappa = f.meta["kappa"]
print(f"background level {f.meta['background']:.6f}, kappa {kappa:.7f}")

# every radius-1/2 average is already below kappa
print(f"sup |A_0.5 f| = {sup_ball_average(f, 0.5):.7f}")

# but the radius-0.55 ball about (1, 1/2) contains the disk
print(f"A_0.55 f(1, 1/2) = {ball_average_at(f, 0.55, (1.0, 0.5)):.7f}")

bad = np.abs(ball_average(f, 0.55).values) > kappa
print(f"{bad.sum()} of {bad.size} grid points fail at r = 0.55")
