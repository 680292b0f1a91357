#!/usr/bin/env python3
"""
Tests for the C(nu) counterexample family and its minor witnesses
"""

import sys
import unittest
from pathlib import Path

# Add parent directory to path before local imports
sys.path.append(str(Path(__file__).parent.parent))

# Local imports after sys.path modification
from counterexamples import (MinorCheckReport, deleted_column_matrix,  # noqa: E402
                             deleted_column_witness, gen_cnu, gen_family,
                             minor_rank_le4_check)
from fixtures.matrices import matrix  # noqa: E402
from trop_core import verify_product  # noqa: E402

C2 = [
    [10, 20, 21, 21, 0, 2, 2, 2],
    [11, 30, 39, 41, 0, 2, 2, 2],
    [11, 31, 51, 60, 0, 2, 2, 2],
    [7, 17, 27, 0, 0, 0, 0, 2],
    [11, 11, 11, 0, 0, 2, 0, 2],
    [2, 2, 2, 2, 2, 0, 2, 2],
    [2, 2, 2, 0, 2, 2, 0, 2],
    [0, 0, 0, 0, 2, 2, 2, 0],
]


class TestGenCnu(unittest.TestCase):
    """Test the construction of C(nu)"""

    def test_c2_entries(self):
        self.assertEqual(gen_cnu(2), matrix(C2))

    def test_shape(self):
        for nu in (2, 3, 7):
            self.assertEqual(gen_cnu(nu).shape, (nu + 6, nu + 6))
            self.assertTrue(gen_cnu(nu).is_finite())

    def test_nu_too_small(self):
        with self.assertRaises(ValueError):
            gen_cnu(1)


class TestDeletedColumnWitnesses(unittest.TestCase):
    """Test the rank-4 factorizations of C(nu) minus one column"""

    def test_every_column(self):
        for nu in range(2, 11):
            for mu in range(1, nu + 2):
                with self.subTest(nu=nu, mu=mu):
                    f = deleted_column_witness(nu, mu)
                    self.assertEqual(f.inner_dim, 4)
                    self.assertTrue(verify_product(deleted_column_matrix(nu, mu), f))

    def test_deleted_column_matrix(self):
        """Test that only column mu is removed"""
        full = gen_cnu(3)
        a = deleted_column_matrix(3, 2)
        self.assertEqual(a.shape, (9, 8))
        self.assertEqual(a, full.submatrix(range(9), [0, 2, 3, 4, 5, 6, 7, 8]))
        self.assertTrue(deleted_column_matrix.__doc__)

    def test_mu_range(self):
        with self.assertRaises(ValueError):
            deleted_column_witness(3, 0)
        with self.assertRaises(ValueError):
            deleted_column_witness(3, 5)


class TestMinorCheck(unittest.TestCase):
    """Test the minor check report"""

    def test_passes(self):
        report = minor_rank_le4_check(3)
        self.assertTrue(report.passed)
        self.assertEqual(sorted(report.per_mu), [1, 2, 3, 4])
        self.assertEqual(report.lines()[0], "mu=1: pass")

    def test_sampled_minors(self):
        report = minor_rank_le4_check(4, samples=25, seed=7)
        self.assertEqual(report.samples, 25)
        self.assertEqual(report.sample_failures, 0)
        self.assertEqual(report.lines()[-1], "sampled 25 4x4 minors, 0 failures")

    def test_report_failure(self):
        report = MinorCheckReport(2, per_mu={1: True, 2: False})
        self.assertFalse(report.passed)
        self.assertIn("mu=2: FAIL", report.lines())


class TestFamily(unittest.TestCase):
    """Test the bordered family for larger k"""

    def test_base_member(self):
        self.assertEqual(gen_family(4, 2), gen_cnu(2))

    def test_bordered_member(self):
        a = gen_family(5, 2)
        self.assertEqual(a.shape, (9, 9))
        self.assertTrue(a.is_finite())
        for i in range(a.rows):
            self.assertEqual(min(a.row(i)), 0)

    def test_k_too_small(self):
        with self.assertRaises(ValueError):
            gen_family(3, 2)


if __name__ == "__main__":
    unittest.main()
