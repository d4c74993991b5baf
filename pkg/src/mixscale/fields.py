"""Canonical test fields: the disk defect field, stripes, and seeded random fields."""

from __future__ import annotations

import math

import numpy as np

from .errors import ValidationError
from .grid import ScalarField

DEFAULT_DECAYS = (0.5, 1.0, 2.0)
DEFAULT_SEEDS = range(1, 51)


def defect_kappa(eps: float) -> float:
    """Background magnitude ``pi eps^2 / (1 - pi eps^2)`` of the defect field."""
    a = math.pi * eps * eps
    return a / (1.0 - a)


def defect_eps(kappa: float) -> float:
    """Inverse of :func:`defect_kappa`: ``sqrt(kappa / ((1 + kappa) pi))``."""
    return math.sqrt(kappa / ((1.0 + kappa) * math.pi))


def defect_field(eps: float, n: int) -> ScalarField:
    """Unit disk of radius ``eps`` about (1/2, 1/2) on a slightly negative background.

    Cells are assigned by center membership.  The disk keeps the value 1 and
    the background level is shifted uniformly so that the grid mean is zero;
    the shift compensates the pixelated disk area and is stored in
    ``meta["mean_correction"]`` along with the uncorrected grid mean.
    """
    if not 0 < eps < 0.5:
        raise ValidationError(f"eps must lie in (0, 1/2), got {eps}")
    c = (np.arange(n) + 0.5) / n
    X, Y = np.meshgrid(c, c)
    disk = (X - 0.5) ** 2 + (Y - 0.5) ** 2 <= eps * eps
    n_in = int(disk.sum())
    nominal = -defect_kappa(eps)
    raw_mean = (n_in + (n * n - n_in) * nominal) / (n * n)
    level = -n_in / (n * n - n_in)
    values = np.where(disk, 1.0, level)
    return ScalarField(
        values,
        1.0,
        {
            "kind": "defect",
            "eps": eps,
            "kappa": defect_kappa(eps),
            "background": nominal,
            "raw_mean": raw_mean,
            "mean_correction": level - nominal,
        },
    )


def stripe_field(m: int, n: int, side_length: float = 1.0) -> ScalarField:
    """``sign(sin(2 pi m x / L))`` at cell centers.

    The cell centers are symmetric under ``x -> L - x`` which flips the sign,
    so the grid mean is exactly zero; samples that land on a zero of the sine
    keep the value 0.
    """
    if not (int(m) == m and 1 <= m < n / 2):
        raise ValidationError(f"stripe mode must satisfy 1 <= m < N/2, got m={m}, N={n}")
    x = (np.arange(n) + 0.5) / n
    row = np.sign(np.sin(2 * np.pi * m * x))
    return ScalarField(np.tile(row, (n, 1)), side_length, {"kind": "stripe", "m": int(m)})


def cosine_field(m: int, n: int, side_length: float = 1.0, axis: str = "x") -> ScalarField:
    """Single Fourier mode ``cos(2 pi m x / L)`` (or along y)."""
    if axis == "x":
        fn = lambda X, Y: np.cos(2 * np.pi * m * X / side_length)
    elif axis == "y":
        fn = lambda X, Y: np.cos(2 * np.pi * m * Y / side_length)
    else:
        raise ValidationError(f"axis must be 'x' or 'y', got {axis!r}")
    return ScalarField.from_function(fn, n, side_length, kind="cosine", m=m, axis=axis)


def random_meanzero(seed: int, decay: float, n: int, side_length: float = 1.0) -> ScalarField:
    """Random field with Fourier amplitudes ``|k|^-decay`` normalized to sup norm 1.

    Complex Gaussian coefficients are drawn from ``numpy.random.default_rng(seed)``;
    taking the real part of the inverse transform is the conjugate
    symmetrization.  The k = 0 coefficient is zeroed and residual round-off in
    the mean is removed before rescaling.
    """
    if decay < 0:
        raise ValidationError(f"decay must be nonnegative, got {decay}")
    rng = np.random.default_rng(seed)
    k = np.fft.fftfreq(n, d=1.0 / n)
    KX, KY = np.meshgrid(k, k)
    kk = np.hypot(KX, KY)
    kk[0, 0] = 1.0
    coeffs = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * kk ** (-float(decay))
    coeffs[0, 0] = 0.0
    values = np.fft.ifft2(coeffs).real
    values -= values.mean()
    values /= np.max(np.abs(values))
    return ScalarField(values, side_length, {"kind": "random", "seed": seed, "decay": decay})


def default_corpus(n: int = 256, side_length: float = 1.0, count: int = 50) -> list[ScalarField]:
    """Reproducible corpus: seeds 1..count, decays cycling through 0.5, 1, 2."""
    return [
        random_meanzero(seed, DEFAULT_DECAYS[(seed - 1) % len(DEFAULT_DECAYS)], n, side_length)
        for seed in range(1, count + 1)
    ]
