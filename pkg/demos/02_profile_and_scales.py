"""
Sup-average profile and the two geometric scales
================================================

The profile F(r) = sup |A_r f| is scanned on log-spaced radii.  The plain
scale is the first radius below the threshold; the strong scale waits until
the profile stays below for good.
"""

from mixscale import (
    default_radii,
    defect_field,
    geometric_mixing_scale,
    radius_scan,
    random_meanzero,
    strong_geometric_mixing_scale,
    sup_average_profile,
)

f = defect_field(0.05, 512)
kappa = f.meta["kappa"]
profile = sup_average_profile(f, radius_scan(0.05, 0.7, 27, "linear"))
for r, v in zip(profile.radii, profile.values):
    print(f"  r={r:.3f}  F={v:.5f}  {'ok' if v <= kappa else 'FAIL'}")

g = geometric_mixing_scale(profile, kappa)
sg = strong_geometric_mixing_scale(profile, kappa)
print(f"G = {g.scale:.3f}, SG = {sg.scale:.3f}")

# a smooth random field, scanned out to the radius where the strong scale is certain
f = random_meanzero(seed=4, decay=1.0, n=256)
profile = sup_average_profile(f, default_radii(f, 0.1))
for kappa in (0.1, 0.3, 0.5, 0.9):
    g = geometric_mixing_scale(profile, kappa).scale
    sg = strong_geometric_mixing_scale(profile, kappa)
    print(f"kappa={kappa}: G={g:.4f} SG={sg.scale:.4f} certified={sg.certified}")
