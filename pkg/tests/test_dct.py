import numpy as np
import pytest

from lorenzdct.dct import (
    SparseCoeffs,
    UNIT_GUARD_EPS,
    dct1,
    dct2,
    energy_select,
    idct1,
    idct2,
    reconstruct_sparse,
)


def dct1_direct(x):
    """O(L^2) direct-sum oracle for the orthonormal type-II DCT."""
    x = np.asarray(x, dtype=np.float64)
    L = x.size
    out = np.zeros(L)
    for k in range(L):
        s = 0.0
        for n in range(L):
            s += x[n] * np.cos(np.pi * k * (2 * n + 1) / (2 * L))
        out[k] = (np.sqrt(1.0 / L) if k == 0 else np.sqrt(2.0 / L)) * s
    return out


def dct2_direct(f):
    """O(N^4) direct-sum oracle for the orthonormal 2-D type-II DCT."""
    f = np.asarray(f, dtype=np.float64)
    N = f.shape[0]
    out = np.zeros((N, N))
    for v in range(N):
        cv = np.sqrt(1.0 / N) if v == 0 else np.sqrt(2.0 / N)
        for u in range(N):
            cu = np.sqrt(1.0 / N) if u == 0 else np.sqrt(2.0 / N)
            s = 0.0
            for y in range(N):
                for x in range(N):
                    s += (
                        f[y, x]
                        * np.cos(np.pi * v * (2 * y + 1) / (2 * N))
                        * np.cos(np.pi * u * (2 * x + 1) / (2 * N))
                    )
            out[v, u] = cv * cu * s
    return out


class TestDct1:
    def test_constant_is_dc_only(self):
        assert np.allclose(dct1([1, 1, 1, 1]), [2, 0, 0, 0], atol=1e-12)

    def test_matches_direct_sum(self, rng):
        x = rng.uniform(-100, 100, 16)
        assert np.max(np.abs(dct1(x) - dct1_direct(x))) < 1e-10

    def test_roundtrip(self, rng):
        x = rng.uniform(0, 255, 301)
        assert np.max(np.abs(idct1(dct1(x)) - x)) < 1e-9

    def test_parseval(self, rng):
        x = rng.uniform(-50, 50, 128)
        ex, ec = np.sum(x * x), np.sum(dct1(x) ** 2)
        assert abs(ex - ec) < 1e-9 * ex


class TestDct2:
    def test_constant_matrix_dc_only(self):
        F = dct2(np.full((6, 6), 4.0))
        assert abs(F[0, 0] - 4.0 * 6) < 1e-12
        F[0, 0] = 0.0
        assert np.max(np.abs(F)) < 1e-12

    def test_zero_matrix(self):
        assert np.max(np.abs(dct2(np.zeros((5, 5))))) == 0.0

    def test_matches_direct_sum_8x8(self, rng):
        f = rng.uniform(0, 255, (8, 8))
        assert np.max(np.abs(dct2(f) - dct2_direct(f))) < 1e-10

    def test_roundtrip(self, rng):
        f = rng.uniform(0, 255, (64, 64))
        assert np.max(np.abs(idct2(dct2(f)) - f)) < 1e-9

    def test_dc_only_gives_constant(self):
        F = np.zeros((4, 4))
        F[0, 0] = 8.0
        out = idct2(F)
        assert np.max(np.abs(out - out[0, 0])) < 1e-12

    def test_orthonormality(self, rng):
        f = rng.uniform(-10, 10, (32, 32))
        nf, nF = np.linalg.norm(f), np.linalg.norm(dct2(f))
        assert abs(nf - nF) < 1e-9 * nf

    def test_linearity(self, rng):
        f, g = rng.uniform(-5, 5, (16, 16)), rng.uniform(-5, 5, (16, 16))
        lhs = dct2(2.5 * f - 1.25 * g)
        rhs = 2.5 * dct2(f) - 1.25 * dct2(g)
        assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_rejects_non_2d(self):
        with pytest.raises(ValueError):
            dct2(np.zeros(4))


class TestEnergySelect:
    def test_dc_only_single_entry(self):
        s = energy_select(dct2(np.full((8, 8), 9.0)), 0.999)
        assert len(s) == 1
        assert (s.rows[0], s.cols[0]) == (0, 0)

    def test_zero_energy_empty(self):
        s = energy_select(np.zeros((4, 4)), 0.999)
        assert len(s) == 0
        assert s.energy_fraction == 1.0

    def test_tie_break_row_major(self):
        m = np.array([[2.0, -2.0], [2.0, 2.0]])
        s = energy_select(m, 0.5)
        assert list(zip(s.rows, s.cols)) == [(0, 0), (0, 1)]

    def test_subunit_coefficients_dropped(self):
        m = np.array([[100.0, 0.5], [0.25, 3.0]])
        s = energy_select(m, 1.0)
        vals = {(r, c): v for r, c, v in zip(s.rows, s.cols, s.values)}
        assert (0, 1) not in vals and (1, 0) not in vals
        assert vals[(0, 0)] == 100.0 and vals[(1, 1)] == 3.0

    def test_unit_guard_bucket(self):
        m = np.array([[50.0, 1.0], [0.0, -1.0]])
        s = energy_select(m, 1.0)
        small = sorted(abs(v) for v in s.values)[:2]
        for v in small:
            assert v > 1.0 + UNIT_GUARD_EPS
            assert np.log10(v) > 0.0

    def test_sorted_descending_and_unique_positions(self, rng):
        m = rng.uniform(-300, 300, (12, 12))
        s = energy_select(m, 0.99)
        mags = np.abs(s.values)
        assert np.all(mags[:-1] >= mags[1:])
        assert len({(r, c) for r, c in zip(s.rows, s.cols)}) == len(s)

    def test_energy_fraction_reported(self, rng):
        m = rng.uniform(-300, 300, (16, 16))
        s = energy_select(m, 0.95)
        total = np.sum(m * m)
        assert np.sum(s.values**2) >= s.energy_fraction * total - 1e-9 * total
        assert s.energy_fraction >= 0.95 - 1e-6

    def test_one_dimensional_input(self):
        s = energy_select(np.array([10.0, 0.0, -20.0, 0.0]), 1.0)
        assert s.dims == (1, 4)
        assert list(s.rows) == [0, 0]
        assert list(s.cols) == [2, 0]

    def test_bad_fraction(self):
        with pytest.raises(ValueError):
            energy_select(np.ones((2, 2)), 0.0)
        with pytest.raises(ValueError):
            energy_select(np.ones((2, 2)), 1.5)

    def test_invariant_enforced_at_construction(self):
        with pytest.raises(ValueError):
            SparseCoeffs(
                (2, 2),
                np.array([0]),
                np.array([0]),
                np.array([0.5]),
                1.0,
            )


class TestReconstructSparse:
    def test_empty_gives_zero(self):
        s = energy_select(np.zeros((4, 4)), 0.999)
        assert np.max(np.abs(reconstruct_sparse(s))) == 0.0

    def test_full_selection_roundtrip(self, rng):
        # coefficients built away from the sub-unit cutoff
        F = rng.uniform(1.5, 100.0, (8, 8)) * rng.choice([-1.0, 1.0], (8, 8))
        f = idct2(F)
        s = energy_select(dct2(f), 1.0)
        assert len(s) == 64
        assert np.max(np.abs(reconstruct_sparse(s) - f)) < 1e-9

    def test_selected_energy_survives(self, rng):
        f = rng.uniform(0, 255, (32, 32))
        s = energy_select(dct2(f), 0.999)
        recon = reconstruct_sparse(s)
        assert np.sum(recon**2) >= 0.998 * np.sum(f * f)
