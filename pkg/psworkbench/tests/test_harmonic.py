'''
    Test cases for the sawtooth, its trigonometric approximation
    and the smooth cut-off functions.
'''

import math
import unittest

import numpy as np

from psworkbench.exceptions import InvalidParameterException
from psworkbench.harmonic import (psi, e, vaaler, vaaler_weight, smooth_theta, theta_family, SmoothTheta,
                                  counting_identity_check, irwin_hall_cdf, vaaler_table, theta_table)

from . import quick
from .helpers.sequences import rng, non_integer_pairs


def chunks(points, size=10000):
    grid = np.arange(points) / points
    for start in range(0, points, size):
        yield grid[start:start + size]


class Sawtooth(unittest.TestCase):

    def test_values(self):
        self.assertAlmostEqual(0.25, psi(0.25))
        self.assertAlmostEqual(0.5, psi(0))
        self.assertAlmostEqual(-0.3, psi(-4.2))

    def test_periodic(self):
        x = np.linspace(-3, 3, 101)
        self.assertTrue(np.allclose(psi(x), psi(x + 7)))

    def test_e_reduces_argument(self):
        self.assertAlmostEqual(1.0, abs(e(1e12 + 0.25)))
        self.assertAlmostEqual(1j, e(10 ** 9 + 0.25))


class Vaaler(unittest.TestCase):

    def test_b0(self):
        self.assertAlmostEqual(1 / 22, vaaler(10).coefficient_b(0), places=15)

    def test_b_mass(self):
        for H in (1, 5, 10, 50):
            self.assertAlmostEqual(0.5, float(np.sum(vaaler(H).b)), places=12)

    def test_symmetry(self):
        approx = vaaler(5)
        for h in range(1, 6):
            self.assertAlmostEqual(approx.coefficient_a(-h), approx.coefficient_a(h).conjugate())
            self.assertEqual(approx.coefficient_b(-h), approx.coefficient_b(h))

    def test_coefficient_decay(self):
        for H in (5, 10, 50):
            approx = vaaler(H)
            for h in range(1, H + 1):
                self.assertTrue(abs(approx.coefficient_a(h)) * h <= 1 / math.pi + 0.01)
                self.assertTrue(approx.coefficient_b(h) * (H + 1) <= 1)
            self.assertTrue(approx.coefficient_b(0) <= approx.B_CONSTANT * 2 / (H + 1))

    def test_weight(self):
        self.assertEqual(1.0, float(vaaler_weight(0)))
        self.assertAlmostEqual(0.5, float(vaaler_weight(0.5)))

    def test_majorant(self):
        points = 10 ** 4 if quick else 10 ** 5
        for H in (5, 10, 50):
            approx = vaaler(H)
            for x in chunks(points):
                self.assertTrue(np.min(approx.slack(x)) >= -1e-10)
                self.assertTrue(np.max(np.abs(np.imag(approx.majorant(x, with_imaginary=True)))) <= 1e-12)

    def test_rejects(self):
        with self.assertRaises(InvalidParameterException):
            vaaler(0)

    def test_table(self):
        rows = vaaler_table(10, [0.0, 0.25])
        self.assertEqual(2, len(rows))
        self.assertAlmostEqual(0.5, rows[0][1])
        self.assertAlmostEqual(0.5, rows[0][3])


class Smoothing(unittest.TestCase):

    def setUp(self):
        self.theta = smooth_theta(-1 / 64, 1 / 64, 1 / 32, 3)
        self.grid = np.arange(10 ** 4) / 10 ** 4

    def test_irwin_hall(self):
        self.assertAlmostEqual(0.5, float(irwin_hall_cdf(1.5, 3)))
        self.assertAlmostEqual(0.0, float(irwin_hall_cdf(-1, 3)))
        self.assertAlmostEqual(1.0, float(irwin_hall_cdf(4, 3)))
        self.assertAlmostEqual(1 / 6, float(irwin_hall_cdf(1, 3)))

    def test_range(self):
        values = self.theta(self.grid)
        self.assertTrue(np.min(values) >= 0)
        self.assertTrue(np.max(values) <= 1 + 1e-12)

    def test_plateau_and_zero_zone(self):
        self.assertAlmostEqual(1.0, self.theta(0.0), places=9)
        zero_zone = self.grid[(self.grid >= 1 / 32) & (self.grid <= 1 - 1 / 32)]
        self.assertTrue(np.max(np.abs(self.theta(zero_zone))) <= 1e-9)

    def test_wide_plateau(self):
        theta = smooth_theta(0.1, 0.6, 0.2, 4)
        plateau = np.linspace(0.2, 0.5, 31)
        self.assertTrue(np.allclose(theta(plateau), 1.0, atol=1e-9))
        zero = np.linspace(0.7, 1.0, 31)
        self.assertTrue(np.allclose(theta(zero), 0.0, atol=1e-9))

    def test_mean_value(self):
        self.assertEqual(1 / 32, self.theta.g(0).real)
        self.assertAlmostEqual(1 / 32, float(np.mean(self.theta(self.grid))), places=9)

    def test_fourier_bound(self):
        m = np.concatenate([np.arange(-1000, 0), np.arange(1, 1001)])
        self.assertTrue(np.all(np.abs(self.theta.g(m)) <= self.theta.fourier_bound(m) + 1e-15))

    def test_fourier_matches_pointwise(self):
        x = np.linspace(0, 1, 257)
        self.assertTrue(np.max(np.abs(self.theta.partial_sum(x, 4000) - self.theta(x))) < 1e-6)

    def test_rejects(self):
        with self.assertRaises(InvalidParameterException):
            smooth_theta(0, 0.5, 0.3, 2)
        with self.assertRaises(InvalidParameterException):
            smooth_theta(0, 0.01, 0.1, 2)
        with self.assertRaises(InvalidParameterException):
            smooth_theta(0, 0.5, 0.1, 0)
        SmoothTheta(-0.25, 0.25, 0.5, 2, strict=False)


class Family(unittest.TestCase):

    def test_partition_small(self):
        family = theta_family(1, 8)
        x = np.arange(10 ** 4) / 10 ** 4
        self.assertTrue(np.max(np.abs(family.member(0, x) + family.member(1, x) - 1)) <= 1e-9)

    def test_partition(self):
        family = theta_family(16, 8)
        x = np.arange(10 ** 4) / 10 ** 4
        self.assertTrue(np.max(np.abs(family.total(x) - 1)) <= 1e-9)

    def test_mean_values(self):
        for Z in (1, 3, 16):
            family = theta_family(Z, 8)
            total = sum(family.g(z, 0).real for z in range(2 * Z))
            self.assertAlmostEqual(1.0, total)

    def test_coefficient_size(self):
        family = theta_family(16, 8)
        m = np.arange(-200, 201)
        for z in (0, 5, 31):
            self.assertTrue(np.all(np.abs(family.g(z, m)) <= 1 / 32 + 1e-15))

    def test_truncation(self):
        Z, r = 16, 8
        family = theta_family(Z, r)
        x = np.linspace(0, 1, 2001)
        for z in (0, 7):
            coarse = np.max(np.abs(family.partial_sum(z, x, 4 * Z * r) - family.member(z, x)))
            fine = np.max(np.abs(family.partial_sum(z, x, 8 * Z * r) - family.member(z, x)))
            self.assertTrue(coarse < 1e-7)
            self.assertTrue(fine < 1e-9)
            self.assertTrue(fine < coarse)

    def test_table(self):
        rows = theta_table(4, 8, [0.0, 0.5])
        for x, first, total in rows:
            self.assertAlmostEqual(1.0, total)
        self.assertAlmostEqual(1.0, rows[0][1])


class CountingIdentity(unittest.TestCase):

    def test_examples(self):
        lhs, rhs = counting_identity_check(1.5, 4.2)
        self.assertEqual(3, lhs)
        self.assertAlmostEqual(3.0, rhs, places=12)
        lhs, rhs = counting_identity_check(0.1, 0.9)
        self.assertEqual(0, lhs)
        self.assertAlmostEqual(0.0, rhs, places=12)

    def test_unit_interval(self):
        for a in (0.3, -7.9, 123.456):
            lhs, rhs = counting_identity_check(a, a + 1)
            self.assertEqual(1, lhs)
            self.assertAlmostEqual(1.0, rhs, places=9)

    def test_random(self):
        for a, b in non_integer_pairs(rng(), 10 ** 4):
            lhs, rhs = counting_identity_check(a, b)
            self.assertTrue(abs(lhs - rhs) <= 1e-9 * max(1.0, abs(b)))

    def test_integer_endpoints(self):
        with self.assertLogs('psworkbench', level='WARNING'):
            lhs, rhs = counting_identity_check(1, 3)
        self.assertEqual(2, lhs)
        self.assertAlmostEqual(2.0, rhs)

    def test_rejects(self):
        with self.assertRaises(InvalidParameterException):
            counting_identity_check(2.0, 1.0)
