"""Acceptance suite: one logged pass/fail line per criterion (see the terminal summary)."""

import math
import time

import numpy as np
import pytest
from scipy.stats import spearmanr

from mixscale.averaging import ball_average, ball_average_at, sup_average_profile, sup_ball_average
from mixscale.fields import cosine_field, defect_field, defect_kappa, random_meanzero
from mixscale.grid import sup_norm
from mixscale.scales import (
    crippa_radius,
    default_radii,
    geometric_mixing_scale,
    remark_identity_check,
    sg_upper_bound,
    strong_geometric_mixing_scale,
    verify_crippa_implication,
)
from mixscale.spectral import h_minus_1

KAPPAS = (0.1, 0.3, 0.5, 0.9)
CRIPPA_RADII = (0.05, 0.1, 0.2, 0.4, 0.8)

# First verified standard run (stripe m=1, N=512, a = tau = mode = 1, eight phases).
FROZEN_INITIAL = {"h_minus_1": 0.90690659, "g_kappa_0.1": 0.64032391, "sg_kappa_0.1": 1.01159161, "pairing": 0.63662377}
FROZEN_FINAL = {"h_minus_1": 0.0606671, "g_kappa_0.1": 0.18914072, "sg_kappa_0.1": 0.18914072, "pairing": 0.03688287}
FROZEN_RTOL = 1e-6


@pytest.mark.slow
def test_defect_example(acceptance_log):
    start = time.perf_counter()
    f = defect_field(0.05, 1024)
    kappa = defect_kappa(0.05)
    f_half = sup_ball_average(f, 0.5)
    at_point = ball_average_at(f, 0.55, (1.0, 0.5))
    violating = int(np.count_nonzero(np.abs(ball_average(f, 0.55).values) > kappa * sup_norm(f)))
    elapsed = time.perf_counter() - start

    checks = {
        "a": abs(kappa - 0.0079162) <= 1e-6,
        "b": f_half <= 1.02 * kappa,
        "c": abs(at_point - 0.0087) <= 0.03 * 0.0087,
        "d": violating >= 10,
        "time": elapsed < 30,
    }
    acceptance_log(
        "1 defect example",
        all(checks.values()),
        f"kappa={kappa:.7f} F(0.5)={f_half:.7f} A(1,1/2;0.55)={at_point:.7f} "
        f"violating_cells={violating} time={elapsed:.1f}s",
    )
    assert all(checks.values()), checks


@pytest.mark.slow
def test_large_radius_bound(corpus, acceptance_log):
    start = time.perf_counter()
    violations = []
    worst = 0.0
    for i, f in enumerate(corpus):
        s = sup_norm(f)
        for kappa in KAPPAS:
            value = sup_ball_average(f, sg_upper_bound(1.0, 2, kappa))
            worst = max(worst, value / (kappa * s))
            if value > kappa * s:
                violations.append((i, kappa))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 120
    acceptance_log(
        "2 large-radius bound",
        ok,
        f"{len(corpus) * len(KAPPAS)} cases, violations={len(violations)}, "
        f"max ratio={worst:.3g}, time={elapsed:.1f}s",
    )
    assert ok, violations


def test_closed_forms_agree(acceptance_log):
    kappas = np.linspace(0.001, 0.999, 102)[1:-1]
    worst = 0.0
    all_below = True
    for kappa in kappas:
        lhs, rhs = remark_identity_check(kappa)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
        all_below &= lhs < 4 * math.sqrt(2) / kappa
    ok = worst <= 1e-12 and all_below
    acceptance_log("3 closed forms", ok, f"100 kappas, max rel diff={worst:.2e}, below prior bound={all_below}")
    assert ok


def test_single_mode_norms(acceptance_log):
    errors = []
    for m in (1, 2, 4, 8, 16, 32, 64):
        for axis in ("x", "y"):
            value = h_minus_1(cosine_field(m, 256, axis=axis))
            errors.append(abs(value - 1 / (math.sqrt(2) * m)))
    worst = max(errors)
    ok = worst <= 1e-10
    acceptance_log("4 spectral exactness", ok, f"m in 1..64, max abs err={worst:.2e}")
    assert ok


@pytest.mark.slow
def test_small_to_large_ball(corpus, acceptance_log):
    start = time.perf_counter()
    violations, non_vacuous, total = [], 0, 0
    for i, f in enumerate(corpus):
        for kappa in KAPPAS:
            for r in CRIPPA_RADII:
                rep = verify_crippa_implication(f, kappa, r, crippa_radius(kappa, r))
                total += 1
                non_vacuous += rep.hypothesis_holds
                if rep.violated:
                    violations.append((i, kappa, r))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 300
    acceptance_log(
        "5 small-to-large ball",
        ok,
        f"{total} cases, hypothesis held in {non_vacuous}, violations={len(violations)}, time={elapsed:.1f}s",
    )
    assert ok, violations


@pytest.mark.slow
def test_co_decay(standard_run, acceptance_log):
    ts = standard_run
    h = ts.column("h_minus_1")
    g = ts.column("g_kappa_0.1")
    sg = ts.column("sg_kappa_0.1")
    pairing = ts.max_pairing()
    series = {"h_minus_1": h, "g_kappa_0.1": g, "sg_kappa_0.1": sg, "pairing": pairing}

    decay = {
        "h_minus_1": h[-1] <= h[0] / 4,
        "g": g[-1] <= g[0] / 2,
        "sg": sg[-1] <= sg[0] / 2,
        "pairing": pairing[-1] <= pairing[0] / 4,
    }
    frozen = all(
        math.isclose(series[k][0], FROZEN_INITIAL[k], rel_tol=FROZEN_RTOL)
        and math.isclose(series[k][-1], FROZEN_FINAL[k], rel_tol=FROZEN_RTOL)
        for k in series
    )
    names = list(series)
    rhos = [spearmanr(series[a], series[b])[0] for i, a in enumerate(names) for b in names[i + 1:]]
    conserved = ts.metadata["mean_drift"] <= 1e-8 and np.max(ts.column("sup_norm")) <= 1.05
    elapsed = ts.metadata["wall_time"]
    ok = all(decay.values()) and frozen and min(rhos) > 0 and conserved and elapsed < 300
    acceptance_log(
        "6 co-decay",
        ok,
        f"H-1 {h[0]:.4f}->{h[-1]:.4f}, G {g[0]:.4f}->{g[-1]:.4f}, SG {sg[0]:.4f}->{sg[-1]:.4f}, "
        f"pairing {pairing[0]:.4f}->{pairing[-1]:.4f}, min spearman={min(rhos):.2f}, "
        f"frozen={frozen}, time={elapsed:.1f}s",
    )
    assert all(decay.values()), decay
    assert frozen
    assert min(rhos) > 0
    assert conserved


def test_fft_matches_direct(acceptance_log):
    f = random_meanzero(3, 1.0, 64)
    radii = (0.01, 0.03, 0.05, 0.1, 0.17, 0.25, 0.33, 0.45, 0.6, 0.8)
    assert any(2 * r > 1.0 for r in radii)
    worst = max(
        float(np.max(np.abs(ball_average(f, r).values - ball_average(f, r, method="direct").values)))
        for r in radii
    )
    ok = worst <= 1e-10
    acceptance_log("7 fft vs direct", ok, f"N=64, 10 radii up to 0.8, max abs diff={worst:.2e}")
    assert ok


@pytest.mark.slow
def test_scale_ordering(corpus, acceptance_log):
    order_violations, mono_violations = [], []
    for i, f in enumerate(corpus):
        radii = default_radii(f, min(KAPPAS))
        profile = sup_average_profile(f, radii)
        gs, sgs = [], []
        for kappa in KAPPAS:
            g = geometric_mixing_scale(profile, kappa).scale
            sg = strong_geometric_mixing_scale(profile, kappa).scale
            if g is None or sg is None:
                order_violations.append((i, kappa, "missing"))
                continue
            step = radii[min(np.searchsorted(radii, sg) + 1, len(radii) - 1)] - sg
            if g > sg + step:
                order_violations.append((i, kappa))
            gs.append(g)
            sgs.append(sg)
        if np.any(np.diff(gs) > 0) or np.any(np.diff(sgs) > 0):
            mono_violations.append(i)
    ok = not order_violations and not mono_violations
    acceptance_log(
        "8 scale ordering",
        ok,
        f"{len(corpus)} fields x {len(KAPPAS)} kappas, G>SG+step: {len(order_violations)}, "
        f"non-monotone in kappa: {len(mono_violations)}",
    )
    assert ok, (order_violations, mono_violations)
