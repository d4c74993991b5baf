"""
Periodic scalar fields on the square box [0, L]^2.

Grid point ``values[i, j]`` sits at the cell center
``x = ((j + 1/2) h, (i + 1/2) h)`` with ``h = L / N``: row index is the
y coordinate, column index the x coordinate.  All integrals use the
midpoint rule on these cells.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .errors import (
    MalformedHeaderError,
    NonFiniteEntryError,
    ShapeMismatchError,
    ValidationError,
)

MIN_N = 4
FILE_MAGIC = "MIXFIELD 1"


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Immutable N x N periodic grid function with its box side length."""

    values: np.ndarray
    side_length: float = 1.0
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValidationError(f"field must be a square matrix, got shape {values.shape}")
        if values.shape[0] < MIN_N:
            raise ValidationError(f"field needs N >= {MIN_N}, got N={values.shape[0]}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("field contains non-finite values")
        side = float(self.side_length)
        if not (np.isfinite(side) and side > 0):
            raise ValidationError(f"side length must be positive, got {self.side_length}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "side_length", side)
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def h(self) -> float:
        return self.side_length / self.n

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(X, Y)`` cell-center coordinate matrices shaped like ``values``."""
        c = (np.arange(self.n) + 0.5) * self.h
        X, Y = np.meshgrid(c, c)
        return X, Y

    def with_values(self, values, **meta) -> "ScalarField":
        return ScalarField(values, self.side_length, {**self.meta, **meta})

    @classmethod
    def from_function(cls, func, n: int, side_length: float = 1.0, **meta) -> "ScalarField":
        """Sample ``func(x, y)`` (vectorized) at the cell centers."""
        c = (np.arange(n) + 0.5) * (side_length / n)
        X, Y = np.meshgrid(c, c)
        return cls(np.broadcast_to(func(X, Y), (n, n)), side_length, meta)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def mean(f: ScalarField) -> float:
    """Domain average; the midpoint rule reduces it to the grid mean."""
    return float(np.mean(f.values))


def variance(f: ScalarField) -> float:
    """Mean of squares minus squared mean, clipped at zero against round-off."""
    m = mean(f)
    return max(float(np.mean(f.values**2)) - m * m, 0.0)


def sup_norm(f: ScalarField) -> float:
    return float(np.max(np.abs(f.values)))


def demean(f: ScalarField) -> ScalarField:
    """Subtract the mean.  A second centering pass removes residual round-off."""
    v = f.values - np.mean(f.values)
    v = v - np.mean(v)
    return f.with_values(v)


def l2_norm(f: ScalarField) -> float:
    """Midpoint-rule L^2 norm over the box."""
    return float(np.sqrt(np.sum(f.values**2)) * f.h)


def inner(f: ScalarField, g) -> float:
    """Midpoint-rule L^2 pairing of ``f`` with a field or an array on the same grid."""
    gv = g.values if isinstance(g, ScalarField) else np.asarray(g, dtype=np.float64)
    return float(np.sum(f.values * gv) * f.h**2)


# -- MIXFIELD v1 file format -------------------------------------------------

def store_field(f: ScalarField, path) -> None:
    """Write ``f`` in MIXFIELD v1 format with 17 significant digits."""
    lines = [FILE_MAGIC, f"lambda={f.side_length!r} n={f.n}"]
    for row in f.values:
        lines.append(" ".join(format(v, ".17g") for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_header(line: str) -> tuple[float, int]:
    parts = dict(p.split("=", 1) for p in line.split() if "=" in p)
    if set(parts) != {"lambda", "n"} or len(line.split()) != 2:
        raise MalformedHeaderError(f"expected 'lambda=<decimal> n=<int>', got {line!r}")
    try:
        lam = float(parts["lambda"])
        n = int(parts["n"])
    except ValueError as exc:
        raise MalformedHeaderError(f"cannot parse header {line!r}") from exc
    if not (np.isfinite(lam) and lam > 0):
        raise MalformedHeaderError(f"lambda must be positive and finite, got {parts['lambda']}")
    return lam, n


def load_field(path: str | os.PathLike) -> ScalarField:
    """Read a MIXFIELD v1 file.

    Raises
    ------
    MalformedHeaderError
        Missing magic line or unparsable ``lambda=... n=...`` line.
    ShapeMismatchError
        ``n`` below the minimum grid size, or row/column counts that disagree with ``n``.
    NonFiniteEntryError
        Any NaN or infinite entry, or a token that is not a decimal number.
    OSError
        The file cannot be read.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != FILE_MAGIC:
        raise MalformedHeaderError(f"first line must be {FILE_MAGIC!r}")
    if len(lines) < 2:
        raise MalformedHeaderError("missing 'lambda=... n=...' line")
    lam, n = _parse_header(lines[1].strip())
    if n < MIN_N:
        raise ShapeMismatchError(f"n must be >= {MIN_N}, got {n}")
    rows = lines[2:]
    if len(rows) != n:
        raise ShapeMismatchError(f"expected {n} data rows, found {len(rows)}")
    values = np.empty((n, n))
    for i, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != n:
            raise ShapeMismatchError(f"row {i} has {len(tokens)} entries, expected {n}")
        try:
            values[i] = [float(t) for t in tokens]
        except ValueError as exc:
            raise NonFiniteEntryError(f"row {i}: non-numeric entry") from exc
        if not np.all(np.isfinite(values[i])):
            raise NonFiniteEntryError(f"row {i} contains a non-finite entry")
    return ScalarField(values, lam)
