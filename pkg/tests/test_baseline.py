"""Reference balanced-truncation bound and its spectral quantity."""

import math

import numpy as np
import pytest

from cfrac.baseline import (
    balanced_truncation_bound,
    power_iteration,
    spectral_quantity,
    tridiag_matrix,
)
from cfrac.srg import lambda_chain


class TestTridiagMatrix:
    def test_n2(self):
        assert np.array_equal(tridiag_matrix(2), np.array([[-2.0, 1.0], [0.0, 0.0]]))

    def test_n3(self):
        expected = np.array([[-2.0, 1.0, 0.0], [1.0, -2.0, 1.0], [0.0, 0.0, 0.0]])
        assert np.array_equal(tridiag_matrix(3), expected)

    def test_interior_row_sums_vanish(self):
        m = tridiag_matrix(12)
        sums = m.sum(axis=1)
        assert np.allclose(sums[1:-1], 0.0)

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            tridiag_matrix(1)


class TestSpectralQuantity:
    def test_n2_by_characteristic_polynomial(self):
        # [[-2, 1], [0, 0]]: det(M - xI) = x(x + 2), eigenvalues {-2, 0}
        assert spectral_quantity(2) == pytest.approx(2.0)

    def test_limit_is_four(self):
        assert abs(spectral_quantity(800) - 4.0) < 0.01
        assert abs(spectral_quantity(100_000) - 4.0) < 1e-8

    def test_closed_form_matches_power_iteration(self):
        for n in list(range(2, 30)) + [50, 100, 200]:
            l_numeric = power_iteration(tridiag_matrix(n))
            assert abs(spectral_quantity(n) - l_numeric) < 1e-8, n

    def test_closed_form_matches_dense_eigensolver(self):
        for n in (5, 17, 64):
            eigs = np.linalg.eigvals(tridiag_matrix(n))
            assert spectral_quantity(n) == pytest.approx(np.max(np.abs(eigs)), abs=1e-10)

    def test_strictly_increasing(self):
        values = [spectral_quantity(n) for n in range(2, 120)]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestBound:
    def test_n10_closed_form(self):
        out = balanced_truncation_bound(10, 3, 2.0)
        l = 2.0 - 2.0 * math.cos(9.0 * math.pi / 10.0)
        assert out.l == pytest.approx(l)
        assert out.gamma == pytest.approx(2.0 * l)
        assert out.bound == pytest.approx(7.0 / (1.0 - 2.0 * l) ** 2)
        # cross-check the same arithmetic against the iterative eigensolver
        l_num = power_iteration(tridiag_matrix(10))
        assert out.bound == pytest.approx(7.0 / (1.0 - 2.0 * l_num) ** 2, abs=1e-6)

    def test_diverges_linearly(self):
        b100 = balanced_truncation_bound(100, 3, 2.0).bound
        b800 = balanced_truncation_bound(800, 3, 2.0).bound
        assert b800 > b100 > balanced_truncation_bound(20, 3, 2.0).bound
        # asymptotically (n - r) / 49
        assert b800 == pytest.approx((800 - 3) / (1.0 - 2.0 * spectral_quantity(800)) ** 2)

    def test_crossing_near_39(self):
        series = lambda_chain(2.0, 900)
        crossing = None
        for n in range(10, 200):
            if balanced_truncation_bound(n, 3, 2.0).bound > series.values[n - 1]:
                crossing = n
                break
        assert crossing is not None and 37 <= crossing <= 41

    def test_monotone_in_n_for_gamma_above_one(self):
        values = [balanced_truncation_bound(n, 3, 2.0).bound for n in range(10, 200)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_unit_gamma_is_infinite(self):
        n = 10
        lam = 1.0 / spectral_quantity(n)
        out = balanced_truncation_bound(n, 3, lam)
        assert math.isinf(out.bound)

    def test_requires_n_above_r(self):
        with pytest.raises(ValueError):
            balanced_truncation_bound(3, 3, 1.0)
