"""
Fourier coefficients of periodic grid fields and homogeneous Sobolev norms.

Coefficients are normalized so that ``coeff(0)`` is the field mean and
``coeff(k)`` matches the Fourier series coefficient of the sampled function
for ``|k_x|, |k_y| < N/2``.  The half-cell offset of the cell-centered grid is
folded into a phase factor, so ``cos(2 pi x / L)`` gives exactly 1/2 at
``k = (+-1, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MeanNotZeroError
from .grid import ScalarField, sup_norm

MEAN_ZERO_RTOL = 1e-8


def wavenumbers(n: int) -> np.ndarray:
    """Signed integer wavenumbers in FFT order: 0, 1, ..., N/2-1, -N/2, ..., -1."""
    return np.fft.fftfreq(n, d=1.0 / n)


def _half_cell_phase(n: int) -> np.ndarray:
    k = wavenumbers(n)
    p = np.exp(-1j * np.pi * k / n)
    return p[:, None] * p[None, :]


@dataclass(frozen=True, eq=False)
class FourierCoeffs:
    """Complex coefficients in FFT order; axis 0 is k_y, axis 1 is k_x."""

    coeffs: np.ndarray
    side_length: float = 1.0

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    def coeff(self, kx: int, ky: int) -> complex:
        half = self.n // 2
        if not (-half <= kx < half and -half <= ky < half):
            raise IndexError(f"wavevector ({kx}, {ky}) outside the resolved band")
        return complex(self.coeffs[ky % self.n, kx % self.n])

    def wavevector_grid(self) -> tuple[np.ndarray, np.ndarray]:
        k = wavenumbers(self.n)
        KX, KY = np.meshgrid(k, k)
        return KX, KY


def analyze(f: ScalarField) -> FourierCoeffs:
    c = np.fft.fft2(f.values) / f.n**2
    c *= _half_cell_phase(f.n)
    return FourierCoeffs(c, f.side_length)


def synthesize(c: FourierCoeffs) -> ScalarField:
    """Inverse of :func:`analyze`; the imaginary residue of real data is dropped."""
    raw = c.coeffs / _half_cell_phase(c.n) * c.n**2
    return ScalarField(np.fft.ifft2(raw).real, c.side_length)


def sobolev_norm(f: ScalarField, s: float) -> float:
    """Homogeneous Sobolev norm of order ``s``.

    Returns ``sqrt(sum_{k != 0} (|k|/L)^(2s) |c_k|^2)``.  For ``s < 0`` the field
    must be mean-zero (relative to ``max(1, ||f||_inf)``), otherwise
    :class:`MeanNotZeroError` is raised.  ``s = -1`` is the functional mixing
    scale; ``s = 0`` is the RMS of the demeaned field.
    """
    if s < 0:
        m = float(np.mean(f.values))
        if abs(m) > MEAN_ZERO_RTOL * max(1.0, sup_norm(f)):
            raise MeanNotZeroError(
                f"Sobolev norm of order {s} needs a mean-zero field; mean is {m:.3e}"
            )
    c = np.fft.fft2(f.values) / f.n**2
    KX, KY = np.meshgrid(wavenumbers(f.n), wavenumbers(f.n))
    k2 = (KX**2 + KY**2) / f.side_length**2
    k2[0, 0] = 1.0
    weight = k2**s
    weight[0, 0] = 0.0
    return float(np.sqrt(np.sum(weight * np.abs(c) ** 2)))


def h_minus_1(f: ScalarField) -> float:
    return sobolev_norm(f, -1.0)
