#!/usr/bin/env python3
"""
Tests for the two-variable constraint solver and its elimination cross-check
"""

import sys
import unittest
from fractions import Fraction
from pathlib import Path

from hypothesis import given, settings, strategies as st

# Add parent directory to path before local imports
sys.path.append(str(Path(__file__).parent.parent))

# Local imports after sys.path modification
from constraints import (AT_LEAST, IncrementalSolver,  # noqa: E402
                         MalformedSystemError, TwoVarConstraint, TwoVarSystem,
                         at_least, check_assignment, eliminate_oracle, equals,
                         solve_two_var, sum_at_least, sum_equals)

NUM_VARS = 6


@st.composite
def constraints(draw):
    kind = draw(st.sampled_from(["at_least", "equals", "sum_at_least", "sum_equals"]))
    x = draw(st.integers(0, NUM_VARS - 1))
    c = draw(st.integers(-4, 4))
    if kind == "at_least":
        return at_least(x, c)
    if kind == "equals":
        return equals(x, c)
    y = draw(st.integers(0, NUM_VARS - 1))
    return sum_at_least(x, y, c) if kind == "sum_at_least" else sum_equals(x, y, c)


systems = st.lists(constraints(), max_size=20).map(lambda cs: TwoVarSystem.of(NUM_VARS, cs))
reordered = st.lists(constraints(), max_size=20).flatmap(
    lambda cs: st.tuples(st.just(cs), st.permutations(cs))
)


class TestConstraintModel(unittest.TestCase):
    """Test constraint construction and validation"""

    def test_arity_checked(self):
        with self.assertRaises(MalformedSystemError):
            TwoVarConstraint(AT_LEAST, 0, Fraction(1), 1)
        with self.assertRaises(MalformedSystemError):
            TwoVarConstraint("sum_at_least", 0, Fraction(1))

    def test_unknown_kind(self):
        with self.assertRaises(MalformedSystemError):
            TwoVarConstraint("at_most", 0, Fraction(1))

    def test_variable_out_of_range(self):
        """Test that the message names the variable"""
        with self.assertRaises(MalformedSystemError) as cm:
            TwoVarSystem.of(1, [at_least(1, 0)])
        self.assertIn("x1", str(cm.exception))

    def test_infinite_constant_rejected(self):
        with self.assertRaises(MalformedSystemError):
            at_least(0, "inf")

    def test_holds(self):
        values = {0: Fraction(1), 1: Fraction(2)}
        self.assertTrue(sum_equals(0, 1, 3).holds(values))
        self.assertFalse(sum_at_least(0, 1, 4).holds(values))
        self.assertTrue(equals(1, 2).holds(values))
        self.assertEqual(str(sum_at_least(0, 1, 4)), "x0 + x1 >= 4")

    def test_check_assignment_needs_every_variable(self):
        system = TwoVarSystem.of(2, [at_least(0, 0)])
        self.assertFalse(check_assignment(system, {0: Fraction(1)}))
        self.assertTrue(check_assignment(system, {0: Fraction(1), 1: Fraction(0)}))


class TestSolver(unittest.TestCase):
    """Test feasibility decisions and exact assignments"""

    def test_feasible_by_hand(self):
        system = TwoVarSystem.of(2, [at_least(0, 1), sum_equals(0, 1, 3), at_least(1, 2)])
        values = solve_two_var(system)
        self.assertEqual(values, {0: Fraction(1), 1: Fraction(2)})

    def test_infeasible_by_hand(self):
        system = TwoVarSystem.of(2, [at_least(0, 2), at_least(1, 2), sum_equals(0, 1, 3)])
        self.assertIsNone(solve_two_var(system))
        self.assertFalse(eliminate_oracle(system))

    def test_fractional_solution(self):
        """Test that halves come out exactly"""
        system = TwoVarSystem.of(2, [sum_equals(0, 1, 1), sum_equals(0, 0, 1)])
        values = solve_two_var(system)
        self.assertEqual(values[0], Fraction(1, 2))
        self.assertEqual(values[1], Fraction(1, 2))

    def test_empty_system(self):
        self.assertEqual(solve_two_var(TwoVarSystem.of(2, [])), {0: 0, 1: 0})
        self.assertEqual(solve_two_var(TwoVarSystem.of(0, [])), {})

    def test_contradictory_equalities(self):
        system = TwoVarSystem.of(1, [equals(0, 1), equals(0, 2)])
        self.assertIsNone(solve_two_var(system))

    def test_push_and_pop(self):
        """Test that popping a frame restores the earlier verdict"""
        solver = IncrementalSolver(TwoVarSystem.of(2, [at_least(0, 0)]))
        self.assertTrue(solver.feasible)
        self.assertTrue(solver.push([sum_equals(0, 1, 5)]))
        self.assertFalse(solver.push([equals(0, -1)]))
        self.assertIsNone(solver.assignment())
        solver.pop()
        values = solver.assignment()
        self.assertEqual(values[0] + values[1], 5)
        self.assertGreaterEqual(values[0], 0)
        solver.pop()
        self.assertTrue(solver.feasible)

    def test_push_checks_range(self):
        solver = IncrementalSolver(TwoVarSystem.of(1, []))
        with self.assertRaises(MalformedSystemError):
            solver.push([at_least(3, 0)])

    @given(systems)
    @settings(max_examples=500, deadline=None)
    def test_agrees_with_elimination(self, system):
        """Test the graph method against Fourier-Motzkin elimination"""
        values = solve_two_var(system)
        self.assertEqual(values is not None, eliminate_oracle(system))
        if values is not None:
            self.assertTrue(check_assignment(system, values))

    @given(reordered)
    @settings(max_examples=200, deadline=None)
    def test_order_does_not_matter(self, pair):
        original, shuffled = pair
        values = solve_two_var(TwoVarSystem.of(NUM_VARS, shuffled))
        system = TwoVarSystem.of(NUM_VARS, original)
        self.assertEqual(values is not None, solve_two_var(system) is not None)
        if values is not None:
            self.assertTrue(check_assignment(system, values))

    def test_long_negative_cycle(self):
        """Test a contradiction that only shows up around all six variables"""
        chain = [sum_equals(i, i + 1, 0) for i in range(5)]
        system = TwoVarSystem.of(6, chain + [sum_at_least(5, 0, 1), at_least(0, 0), equals(5, 0)])
        self.assertIsNone(solve_two_var(system))
        self.assertFalse(eliminate_oracle(system))

    @given(systems, systems)
    @settings(max_examples=100, deadline=None)
    def test_incremental_matches_batch(self, base, extra):
        solver = IncrementalSolver(base)
        solver.push(extra.constraints)
        merged = base.extend(extra.constraints)
        self.assertEqual(solver.feasible, solve_two_var(merged) is not None)


if __name__ == "__main__":
    unittest.main()
