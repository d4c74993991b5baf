"""
Geometric mixing scales extracted from a sup-average profile.

Both scales reduce to the profile ``F(r) = sup_x |A_r f(x)|``:

* ``G(f; kappa)`` is the smallest scanned radius with ``F(r) <= kappa ||f||_inf``;
* ``SG(f; kappa)`` is the scanned radius just above the last one with
  ``F(r) > kappa ||f||_inf``.  Taking the supremum over points of each point's
  last failing radius is the same as the last radius at which *some* point
  fails, so per-point radii are never formed.

``F`` is not monotone in ``r``, which is why the radii are scanned rather than
bisected.  Scanned values are outer approximations, accurate to one scan step.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .averaging import SupAverageProfile, sup_ball_average
from .errors import ValidationError
from .grid import ScalarField, sup_norm

DEFAULT_SCAN_COUNT = 64
SCAN_MARGIN = 1.05


class ScanRangeWarning(UserWarning):
    """The radius scan stops short of the certification bound."""


def check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not 0.0 < kappa < 1.0:
        raise ValidationError(f"kappa must lie strictly between 0 and 1, got {kappa}")
    return kappa


def sg_upper_bound(side_length: float, d: int, kappa: float) -> float:
    """Radius beyond which every ball average of a mean-zero field is kappa-small.

    ``L sqrt(d) / (1 - (1 - kappa)^(1/d))``, evaluated with ``expm1``/``log1p``
    so that small kappa does not lose digits to cancellation.
    """
    kappa = check_kappa(kappa)
    if not (np.isfinite(side_length) and side_length > 0):
        raise ValidationError(f"side length must be positive, got {side_length}")
    if int(d) != d or d < 1:
        raise ValidationError(f"dimension must be a positive integer, got {d}")
    denom = -math.expm1(math.log1p(-kappa) / d)
    return side_length * math.sqrt(d) / denom


def prior_sg_bound(side_length: float, kappa: float) -> float:
    """The older two-dimensional estimate ``4 sqrt(2) L / kappa``."""
    return 4.0 * math.sqrt(2.0) * side_length / check_kappa(kappa)


def remark_identity_check(kappa: float) -> tuple[float, float]:
    """Both closed forms of the d = 2 bound at L = 1; they agree algebraically."""
    kappa = check_kappa(kappa)
    root = math.sqrt(1.0 - kappa)
    lhs = sg_upper_bound(1.0, 2, kappa)
    rhs = math.sqrt(2.0) * (1.0 + root) / kappa
    return lhs, rhs


def radius_scan(rmin: float, rmax: float, count: int = DEFAULT_SCAN_COUNT, spacing: str = "log") -> np.ndarray:
    if not (0 < rmin < rmax) or count < 2:
        raise ValidationError(f"need 0 < rmin < rmax and count >= 2, got ({rmin}, {rmax}, {count})")
    if spacing == "log":
        return np.geomspace(rmin, rmax, count)
    if spacing == "linear":
        return np.linspace(rmin, rmax, count)
    raise ValidationError(f"spacing must be 'log' or 'linear', got {spacing!r}")


def default_radii(f: ScalarField, kappa: float, count: int = DEFAULT_SCAN_COUNT) -> np.ndarray:
    """Log-spaced radii from one cell width to 5% past the certification bound."""
    rmax = SCAN_MARGIN * sg_upper_bound(f.side_length, 2, kappa)
    return radius_scan(f.h, rmax, count, "log")


@dataclass(frozen=True, eq=False)
class ScaleReport:
    """Result of a scale extraction.

    ``scale`` is ``None`` when no scanned radius qualifies.  ``held_at_max``
    records whether the kappa condition holds at the largest scanned radius.
    ``certified`` is only meaningful for the strong scale: the scan reaches
    the radius past which no failure is possible for mean-zero fields.
    """

    kind: str
    kappa: float
    scale: float | None
    radii: np.ndarray
    profile: SupAverageProfile
    held_at_max: bool
    certified: bool

    @property
    def found(self) -> bool:
        return self.scale is not None


def _threshold_mask(profile: SupAverageProfile, kappa: float) -> np.ndarray:
    if len(profile) == 0:
        raise ValidationError("profile is empty")
    return profile.values <= kappa * profile.sup_norm


def geometric_mixing_scale(profile: SupAverageProfile, kappa: float) -> ScaleReport:
    kappa = check_kappa(kappa)
    ok = _threshold_mask(profile, kappa)
    idx = np.flatnonzero(ok)
    scale = float(profile.radii[idx[0]]) if idx.size else None
    return ScaleReport("G", kappa, scale, profile.radii, profile, bool(ok[-1]), False)


def strong_geometric_mixing_scale(
    profile: SupAverageProfile, kappa: float, require_certified: bool = False
) -> ScaleReport:
    """Strong scale from a profile.

    If ``require_certified`` is set and the scan stops below the bound of
    :func:`sg_upper_bound`, a :class:`ScanRangeWarning` is emitted; the value
    is still returned, flagged uncertified.
    """
    kappa = check_kappa(kappa)
    ok = _threshold_mask(profile, kappa)
    failures = np.flatnonzero(~ok)
    if failures.size == 0:
        scale = float(profile.radii[0])
    elif failures[-1] + 1 < len(profile):
        scale = float(profile.radii[failures[-1] + 1])
    else:
        scale = None
    bound = sg_upper_bound(profile.side_length, 2, kappa)
    certified = bool(profile.radii[-1] >= bound)
    if require_certified and not certified:
        warnings.warn(
            f"radius scan ends at {profile.radii[-1]:.4g}, below the certification bound {bound:.4g}",
            ScanRangeWarning,
            stacklevel=2,
        )
    return ScaleReport("SG", kappa, scale, profile.radii, profile, bool(ok[-1]), certified)


def crippa_radius(kappa: float, r: float) -> float:
    """Largest small-ball radius ``kappa r / 12`` for the large-ball averaging estimate."""
    if not r > 0:
        raise ValidationError(f"radius must be positive, got {r}")
    return kappa * r / 12.0


@dataclass(frozen=True)
class CrippaReport:
    kappa: float
    r: float
    delta: float
    small_ball_sup: float
    large_ball_sup: float
    sup_norm: float
    hypothesis_holds: bool
    conclusion_holds: bool

    @property
    def violated(self) -> bool:
        return self.hypothesis_holds and not self.conclusion_holds


def verify_crippa_implication(f: ScalarField, kappa: float, r: float, delta: float | None = None) -> CrippaReport:
    """Check whether kappa/2-smallness at radius delta carries over to kappa-smallness at r.

    The hypothesis is ``sup |A_delta f| <= (kappa/2) ||f||_inf`` and the
    conclusion ``sup |A_r f| <= kappa ||f||_inf``; the estimate says the first
    implies the second whenever ``delta <= kappa r / 12``.
    """
    kappa = check_kappa(kappa)
    if not r > 0:
        raise ValidationError(f"radius must be positive, got {r}")
    limit = crippa_radius(kappa, r)
    if delta is None:
        delta = limit
    if not 0 < delta <= limit * (1 + 1e-12) or not delta < r:
        raise ValidationError(f"need 0 < delta <= kappa*r/12 = {limit:.6g}, got {delta}")
    s = sup_norm(f)
    small = sup_ball_average(f, delta)
    large = sup_ball_average(f, r)
    return CrippaReport(
        kappa, float(r), float(delta), small, large, s,
        small <= 0.5 * kappa * s, large <= kappa * s,
    )
