#!/usr/bin/env python3
"""
Tests for the troprank command line
"""

import shutil
import sys
import tempfile
import unittest
from io import StringIO
from pathlib import Path
from unittest.mock import patch

# Add parent directory to path before local imports
sys.path.append(str(Path(__file__).parent.parent))

# Local imports after sys.path modification
from counterexamples import gen_cnu  # noqa: E402
from fixtures.matrices import (CERTIFICATE_4X4, OFF_DIAGONAL_3X3,  # noqa: E402
                               RANK3_LEFT, RANK3_RIGHT, matrix,
                               write_temp_matrix)
from trop_core import (INF, Factorization, format_matrix,  # noqa: E402
                       parse_matrix, read_matrix, trop_mat_mul, verify_product)
from troprank_cli import EXIT_ERROR, EXIT_NO, EXIT_YES, main  # noqa: E402


class TestTroprankCli(unittest.TestCase):
    """Test every verb through main()"""

    def setUp(self):
        """Set up a scratch directory"""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up the scratch directory"""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def write(self, rows):
        return str(write_temp_matrix(rows, self.temp_dir))

    def write_text(self, name, text):
        path = Path(self.temp_dir) / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def run_cli(self, *argv):
        with patch("sys.stdout", new_callable=StringIO) as out:
            with patch("sys.stderr", new_callable=StringIO) as err:
                code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_mul(self):
        code, out, _ = self.run_cli("mul", self.write([[0, 1], [1, 0]]), self.write([[0], [1]]))
        self.assertEqual(code, EXIT_YES)
        self.assertEqual(out, "2 1\n0\n1\n")

    def test_mul_shape_mismatch(self):
        code, out, err = self.run_cli("mul", self.write([[0, 1]]), self.write([[0, 1]]))
        self.assertEqual(code, EXIT_ERROR)
        self.assertEqual(out, "")
        self.assertIn("❌", err)

    def test_troprank(self):
        code, out, _ = self.run_cli("troprank", self.write(OFF_DIAGONAL_3X3))
        self.assertEqual((code, out), (EXIT_YES, "2\n"))

    def test_troprank_cap(self):
        code, _, err = self.run_cli("--cap", "2", "troprank", self.write(OFF_DIAGONAL_3X3))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("enumeration cap exceeded", err)

    def test_perm(self):
        code, out, _ = self.run_cli("perm", self.write([[0, 0], [0, 0]]))
        self.assertEqual((code, out), (EXIT_YES, "0\nsingular\n"))
        code, out, _ = self.run_cli("perm", self.write([[0, 1], [1, 0]]))
        self.assertEqual(out, "0\nnonsingular\n")

    def test_rank3_no_with_certificate(self):
        code, out, _ = self.run_cli("rank3", self.write(CERTIFICATE_4X4))
        self.assertEqual(code, EXIT_NO)
        self.assertEqual(
            out.splitlines(),
            [
                "NO",
                "factor rank of the 4x4 matrix exceeds 3",
                "zero row 4 with line 4 gives a rank-4 certificate",
            ],
        )

    def test_rank3_yes_with_witness_files(self):
        """Test that --witness writes B and C that multiply back"""
        a = trop_mat_mul(matrix(RANK3_LEFT), matrix(RANK3_RIGHT))
        prefix = str(Path(self.temp_dir) / "out" / "w")
        code, out, _ = self.run_cli("rank3", self.write(a.entries), "--witness", prefix)
        self.assertEqual(code, EXIT_YES)
        self.assertEqual(out.splitlines()[0], "YES")
        self.assertIn("📁 Saved", out)
        f = Factorization(read_matrix(prefix + ".B"), read_matrix(prefix + ".C"))
        self.assertEqual(f.inner_dim, 3)
        self.assertTrue(verify_product(a, f))

    def test_rank3_with_infinity(self):
        """Test that INF entries are eliminated and restored"""
        rows = [[0, INF, 7, 1], [4, 0, 2, 5], [2, 1, 0, 4], [2, 2, 2, 3]]
        code, out, _ = self.run_cli("rank3", self.write(rows))
        self.assertEqual(code, EXIT_YES)
        text = out.split("B =\n", 1)[1]
        left_text, right_text = text.split("C =\n")
        f = Factorization(parse_matrix(left_text), parse_matrix(right_text))
        self.assertTrue(verify_product(matrix(rows), f))

    def test_factor_rank(self):
        code, out, _ = self.run_cli("factor-rank", self.write(OFF_DIAGONAL_3X3))
        self.assertEqual((code, out), (EXIT_YES, "3\n"))

    def test_factor_rank_budget(self):
        rows = [[0, 1, 2, 3], [1, 0, 1, 2], [2, 1, 0, 1], [3, 2, 1, 0]]
        code, _, err = self.run_cli("factor-rank", self.write(rows), "--budget", "10")
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("budget", err)

    def test_verify(self):
        a = self.write([[0, 1], [1, 0]])
        b = self.write([[0, 1], [1, 0]])
        c = self.write([[0, INF], [INF, 0]])
        code, out, _ = self.run_cli("verify", a, b, c)
        self.assertEqual((code, out.splitlines()[0]), (EXIT_YES, "YES"))
        code, out, _ = self.run_cli("verify", a, c, c)
        self.assertEqual((code, out.splitlines()[0]), (EXIT_NO, "NO"))

    def test_reduce_ss(self):
        split = self.write_text("pair.txt", "2 1\n1 2\n")
        code, out, _ = self.run_cli("reduce-ss", split)
        self.assertEqual(code, EXIT_YES)
        lines = out.splitlines()
        self.assertEqual(lines[:2], ["YES", "gadget for k=8: 12x12 (raw, with inf)"])
        gadget = parse_matrix("\n".join(lines[2:]))
        self.assertEqual(gadget.shape, (12, 12))
        self.assertFalse(gadget.is_finite())

    def test_reduce_ss_help_names_both_outputs(self):
        with patch("sys.stdout", new_callable=StringIO) as out:
            with self.assertRaises(SystemExit) as cm:
                main(["reduce-ss", "--help"])
        self.assertEqual(cm.exception.code, 0)
        text = " ".join(out.getvalue().split())
        self.assertIn("raw gadget with inf", text)
        self.assertIn("bordered, normalized, finite matrix", text)

    def test_reduce_ss_to_file(self):
        split = self.write_text("pair.txt", "2 1\n1 2\n")
        target = Path(self.temp_dir) / "gadgets" / "k9.txt"
        code, out, _ = self.run_cli("reduce-ss", split, "--k", "9", "--out", str(target))
        self.assertEqual(code, EXIT_YES)
        self.assertIn("gadget for k=9: 13x13 (bordered, normalized, finite)", out)
        self.assertTrue(read_matrix(target).is_finite())

    def test_reduce_ss_inadmissible(self):
        ssref = self.write_text("bad.txt", "2 3\n1 3\n1\n2\n3\n")
        code, out, _ = self.run_cli("reduce-ss", ssref, "--format", "ssref")
        self.assertEqual(code, EXIT_NO)
        self.assertEqual(out.splitlines()[0], "NO")

    def test_witness_ss(self):
        """Test that the written witness factors the reduce-ss gadget"""
        split = self.write_text("path.txt", "3 2\n1 2\n2 3\n")
        gadget = Path(self.temp_dir) / "a.txt"
        out_b = Path(self.temp_dir) / "b.txt"
        out_c = Path(self.temp_dir) / "c.txt"
        self.run_cli("reduce-ss", split, "--out", str(gadget))
        code, out, _ = self.run_cli(
            "witness-ss", split, "--out-b", str(out_b), "--out-c", str(out_c)
        )
        self.assertEqual(code, EXIT_YES)
        self.assertEqual(out.splitlines()[:2], ["YES", "split [2] | [1, 3]"])
        f = Factorization(read_matrix(out_b), read_matrix(out_c))
        self.assertTrue(verify_product(read_matrix(gadget), f))

    def test_witness_ss_no(self):
        split = self.write_text("triangle.txt", "3 3\n1 2\n2 3\n1 3\n")
        code, out, _ = self.run_cli("witness-ss", split)
        self.assertEqual(code, EXIT_NO)
        self.assertEqual(out.splitlines()[0], "NO")

    def test_gen_cnu(self):
        code, out, _ = self.run_cli("gen-cnu", "--nu", "2")
        self.assertEqual(code, EXIT_YES)
        self.assertEqual(out, format_matrix(gen_cnu(2)))

    def test_gen_family_to_file(self):
        target = Path(self.temp_dir) / "c5.txt"
        code, _, _ = self.run_cli("gen-cnu", "--nu", "2", "--k", "5", "--out", str(target))
        self.assertEqual(code, EXIT_YES)
        self.assertEqual(read_matrix(target).shape, (9, 9))

    def test_check_cnu(self):
        code, out, _ = self.run_cli("check-cnu", "--nu", "2", "--samples", "5", "--seed", "3")
        self.assertEqual(code, EXIT_YES)
        lines = out.splitlines()
        self.assertEqual(lines[0], "YES")
        self.assertIn("sampled 5 2x2 minors, 0 failures", lines)

    def test_bad_matrix_file(self):
        code, _, err = self.run_cli("troprank", self.write_text("bad.txt", "2 2\n0 x\n1 1\n"))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("line 2, column 3", err)

    def test_missing_file(self):
        code, _, err = self.run_cli("troprank", str(Path(self.temp_dir) / "nope.txt"))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("❌", err)

    def test_unknown_verb(self):
        with patch("sys.stderr", new_callable=StringIO):
            with self.assertRaises(SystemExit) as cm:
                main(["factorize"])
        self.assertEqual(cm.exception.code, 2)

    def test_version(self):
        with patch("sys.stdout", new_callable=StringIO) as out:
            with self.assertRaises(SystemExit) as cm:
                main(["--version"])
        self.assertEqual(cm.exception.code, 0)
        self.assertIn("troprank 1.0.0", out.getvalue())

    def test_argv_fallback(self):
        """Test that main() reads sys.argv when no list is given"""
        with patch("sys.argv", ["troprank", "perm", self.write([[3]])]):
            with patch("sys.stdout", new_callable=StringIO) as out:
                self.assertEqual(main(), EXIT_YES)
        self.assertEqual(out.getvalue(), "3\nnonsingular\n")


if __name__ == "__main__":
    unittest.main()
