import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from mixscale import grid
from mixscale.errors import (
    MalformedHeaderError,
    NonFiniteEntryError,
    ShapeMismatchError,
    ValidationError,
)
from mixscale.grid import ScalarField, demean, load_field, mean, store_field, sup_norm, variance

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
field_values = arrays(np.float64, (8, 8), elements=finite)


def half_and_half(n=16, lo=-1.0, hi=1.0):
    v = np.full((n, n), hi)
    v[:, n // 2:] = lo
    return ScalarField(v)


class TestScalarField:
    def test_values_are_read_only_copies(self):
        src = np.zeros((4, 4))
        f = ScalarField(src)
        src[0, 0] = 1.0
        assert f.values[0, 0] == 0.0
        with pytest.raises(ValueError):
            f.values[0, 0] = 2.0

    @pytest.mark.parametrize("values", [np.zeros((3, 3)), np.zeros((4, 5)), np.zeros(16)])
    def test_rejects_bad_shapes(self, values):
        with pytest.raises(ValidationError):
            ScalarField(values)

    def test_rejects_non_finite(self):
        v = np.zeros((4, 4))
        v[1, 2] = np.inf
        with pytest.raises(ValidationError):
            ScalarField(v)

    def test_rejects_bad_side_length(self):
        with pytest.raises(ValidationError):
            ScalarField(np.zeros((4, 4)), side_length=0.0)

    def test_cell_centers(self):
        f = ScalarField(np.zeros((4, 4)), side_length=2.0)
        X, Y = f.centers()
        assert f.h == 0.5
        assert X[0, :].tolist() == [0.25, 0.75, 1.25, 1.75]
        # rows index y
        assert Y[:, 0].tolist() == [0.25, 0.75, 1.25, 1.75]


class TestStatistics:
    @pytest.mark.parametrize("n", [4, 17, 64])
    def test_constant_field(self, n):
        f = ScalarField(np.full((n, n), 3.0))
        assert mean(f) == pytest.approx(3.0, abs=1e-15)
        assert variance(f) == pytest.approx(0.0, abs=1e-14)

    def test_half_and_half(self):
        f = half_and_half()
        assert mean(f) == 0.0
        assert variance(f) == 1.0
        assert sup_norm(f) == 1.0

    def test_zero_field_sup_norm(self):
        assert sup_norm(ScalarField(np.zeros((8, 8)))) == 0.0

    def test_demean_constant_gives_zero(self):
        f = demean(ScalarField(np.full((8, 8), 3.7)))
        assert np.all(np.abs(f.values) < 1e-15)

    def test_demean_two_level(self):
        f = demean(half_and_half(lo=0.0, hi=2.0))
        assert set(np.unique(f.values)) == {-1.0, 1.0}

    def test_demean_is_idempotent_on_meanzero(self):
        f = half_and_half()
        assert np.array_equal(demean(f).values, f.values)

    def test_defect_variance(self, defect1024):
        # Two-level field: variance collapses algebraically to pi eps^2 / (1 - pi eps^2).
        brute = float(np.sum(defect1024.values**2) / defect1024.n**2)
        assert variance(defect1024) == pytest.approx(brute, rel=1e-12)
        assert variance(defect1024) == pytest.approx(0.0079162, rel=0.05)

    @settings(max_examples=50, deadline=None)
    @given(field_values, finite)
    def test_variance_shift_invariant(self, v, c):
        f = ScalarField(v)
        scale = max(1.0, float(np.mean(v**2)), c * c)
        assert abs(variance(f.with_values(v + c)) - variance(f)) <= 1e-9 * scale

    @settings(max_examples=50, deadline=None)
    @given(field_values)
    def test_variance_of_demeaned(self, v):
        f = ScalarField(v)
        assert variance(demean(f)) == pytest.approx(variance(f), rel=1e-10, abs=1e-9)
        assert abs(mean(demean(f))) <= 1e-12 * max(1.0, sup_norm(f))

    @settings(max_examples=50, deadline=None)
    @given(field_values, finite)
    def test_sup_norm_homogeneous(self, v, c):
        f = ScalarField(v)
        assert sup_norm(f.with_values(c * v)) == abs(c) * sup_norm(f)

    def test_variance_nonnegative(self, rng):
        for _ in range(10):
            assert variance(ScalarField(rng.standard_normal((8, 8)) + 1e6)) >= 0.0


class TestFieldFile:
    def test_round_trip_is_bit_exact(self, tmp_path, rng):
        f = ScalarField(rng.standard_normal((64, 64)) * 10.0 ** rng.integers(-20, 20, (64, 64)), 0.7)
        path = tmp_path / "f.field"
        store_field(f, path)
        g = load_field(path)
        assert np.array_equal(f.values, g.values)
        assert g.side_length == 0.7

    def test_layout(self, tmp_path):
        v = np.arange(16.0).reshape(4, 4)
        path = tmp_path / "f.field"
        store_field(ScalarField(v), path)
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == "MIXFIELD 1"
        assert lines[1] == "lambda=1.0 n=4"
        assert lines[2].split() == ["0", "1", "2", "3"]
        assert len(lines) == 6

    def _write(self, tmp_path, text):
        path = tmp_path / "bad.field"
        path.write_text(text, encoding="utf-8")
        return path

    def test_nan_entry(self, tmp_path):
        rows = "\n".join(["0 0 0 0"] * 3 + ["0 nan 0 0"])
        with pytest.raises(NonFiniteEntryError):
            load_field(self._write(tmp_path, f"MIXFIELD 1\nlambda=1 n=4\n{rows}\n"))

    def test_zero_size_header(self, tmp_path):
        with pytest.raises(ShapeMismatchError):
            load_field(self._write(tmp_path, "MIXFIELD 1\nlambda=1 n=0\n"))

    @pytest.mark.parametrize(
        "text",
        ["MIXFIELD 2\nlambda=1 n=4\n", "lambda=1 n=4\n", "MIXFIELD 1\nlam=1 n=4\n", "MIXFIELD 1\nlambda=x n=4\n", "MIXFIELD 1\n"],
    )
    def test_malformed_header(self, tmp_path, text):
        with pytest.raises(MalformedHeaderError):
            load_field(self._write(tmp_path, text))

    def test_row_count_mismatch(self, tmp_path):
        rows = "\n".join(["0 0 0 0"] * 3)
        with pytest.raises(ShapeMismatchError):
            load_field(self._write(tmp_path, f"MIXFIELD 1\nlambda=1 n=4\n{rows}\n"))

    def test_row_length_mismatch(self, tmp_path):
        rows = "\n".join(["0 0 0 0"] * 3 + ["0 0 0"])
        with pytest.raises(ShapeMismatchError):
            load_field(self._write(tmp_path, f"MIXFIELD 1\nlambda=1 n=4\n{rows}\n"))

    def test_errors_are_distinct(self):
        kinds = {MalformedHeaderError, NonFiniteEntryError, ShapeMismatchError}
        assert all(not issubclass(a, b) for a in kinds for b in kinds if a is not b)

    def test_l2_and_inner_helpers(self):
        f = half_and_half()
        assert grid.l2_norm(f) == pytest.approx(1.0)
        assert grid.inner(f, f) == pytest.approx(1.0)
