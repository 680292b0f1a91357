#!/usr/bin/env python3
"""
Linear systems with at most two unknowns per constraint, all with unit
coefficients: x >= c, x = c, x + y >= c and x + y = c.

Every unknown x is split into a pair of signed nodes holding x and -x.
A constraint then becomes a pair of difference edges between signed
nodes, and the system is feasible exactly when that graph has no
negative cycle. Potentials found by relaxation give the assignment
x = (d(+x) - d(-x)) / 2.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

try:
    from .trop_core import TropError, to_trop
except ImportError:
    from trop_core import TropError, to_trop

logger = logging.getLogger(__name__)

AT_LEAST = "at_least"
EQUALS = "equals"
SUM_AT_LEAST = "sum_at_least"
SUM_EQUALS = "sum_equals"

KINDS = (AT_LEAST, EQUALS, SUM_AT_LEAST, SUM_EQUALS)

Assignment = Dict[int, Fraction]


class MalformedSystemError(TropError, ValueError):
    """A constraint refers to a variable outside the system"""


@dataclass(frozen=True)
class TwoVarConstraint:
    kind: str
    x: int
    c: Fraction
    y: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedSystemError(f"unknown constraint kind {self.kind!r}")
        if (self.y is None) != (self.kind in (AT_LEAST, EQUALS)):
            raise MalformedSystemError(f"{self.kind} constraint has the wrong arity")

    def variables(self) -> Tuple[int, ...]:
        return (self.x,) if self.y is None else (self.x, self.y)

    def lhs(self, values: Assignment) -> Fraction:
        if self.y is None:
            return values[self.x]
        return values[self.x] + values[self.y]

    def holds(self, values: Assignment) -> bool:
        total = self.lhs(values)
        if self.kind in (EQUALS, SUM_EQUALS):
            return total == self.c
        return total >= self.c

    def __str__(self) -> str:
        left = f"x{self.x}" if self.y is None else f"x{self.x} + x{self.y}"
        op = "=" if self.kind in (EQUALS, SUM_EQUALS) else ">="
        return f"{left} {op} {self.c}"


def _exact(c) -> Fraction:
    value = to_trop(c)
    if not isinstance(value, Fraction):
        raise MalformedSystemError("constraint constants must be finite")
    return value


def at_least(x: int, c) -> TwoVarConstraint:
    return TwoVarConstraint(AT_LEAST, x, _exact(c))


def equals(x: int, c) -> TwoVarConstraint:
    return TwoVarConstraint(EQUALS, x, _exact(c))


def sum_at_least(x: int, y: int, c) -> TwoVarConstraint:
    return TwoVarConstraint(SUM_AT_LEAST, x, _exact(c), y)


def sum_equals(x: int, y: int, c) -> TwoVarConstraint:
    return TwoVarConstraint(SUM_EQUALS, x, _exact(c), y)


@dataclass(frozen=True)
class TwoVarSystem:
    """Conjunction of two-variable constraints over x0 .. x(num_vars-1)"""

    num_vars: int
    constraints: Tuple[TwoVarConstraint, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.num_vars < 0:
            raise MalformedSystemError("variable count cannot be negative")
        for constraint in self.constraints:
            for var in constraint.variables():
                if not 0 <= var < self.num_vars:
                    raise MalformedSystemError(
                        f"variable x{var} out of range in '{constraint}' "
                        f"(system has {self.num_vars} variables)"
                    )

    @classmethod
    def of(cls, num_vars: int, constraints: Iterable[TwoVarConstraint]) -> "TwoVarSystem":
        return cls(num_vars, tuple(constraints))

    def extend(self, constraints: Iterable[TwoVarConstraint]) -> "TwoVarSystem":
        return TwoVarSystem(self.num_vars, self.constraints + tuple(constraints))

    def __len__(self) -> int:
        return len(self.constraints)


def check_assignment(system: TwoVarSystem, values: Assignment) -> bool:
    """Substitute values into every constraint and compare exactly"""
    if any(var not in values for var in range(system.num_vars)):
        return False
    return all(constraint.holds(values) for constraint in system.constraints)


# ---------------------------------------------------------------------------
# Signed-node graph
# ---------------------------------------------------------------------------

Edge = Tuple[int, int, Fraction]


def _node(var: int, sign: int) -> int:
    return 2 * var if sign > 0 else 2 * var + 1


def _inequality_edges(s1: int, x: int, s2: int, y: int, c: Fraction) -> List[Edge]:
    """Edges for s1*x + s2*y >= c; d(v) <= d(u) + w for each (u, v, w)"""
    return [
        (_node(x, s1), _node(y, -s2), -c),
        (_node(y, s2), _node(x, -s1), -c),
    ]


def constraint_edges(constraint: TwoVarConstraint) -> List[Edge]:
    c = constraint.c
    x = constraint.x
    if constraint.y is None:
        edges = _inequality_edges(1, x, 1, x, 2 * c)
        if constraint.kind == EQUALS:
            edges += _inequality_edges(-1, x, -1, x, -2 * c)
        return edges
    y = constraint.y
    edges = _inequality_edges(1, x, 1, y, c)
    if constraint.kind == SUM_EQUALS:
        edges += _inequality_edges(-1, x, -1, y, -c)
    return edges


def _relax(
    num_nodes: int, adjacency: List[List[Tuple[int, Fraction]]], dist: List[Fraction], dirty: Sequence[int]
) -> bool:
    """Queue-driven relaxation in place; False on a negative cycle.

    hops[v] is the edge count of the walk behind dist[v]; a walk longer
    than the node count repeats a node, which only a negative cycle allows.
    """
    queue = list(dict.fromkeys(dirty))
    queued = [False] * num_nodes
    for u in queue:
        queued[u] = True
    hops = [0] * num_nodes
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        queued[u] = False
        du = dist[u]
        for v, w in adjacency[u]:
            candidate = du + w
            if candidate < dist[v]:
                dist[v] = candidate
                hops[v] = hops[u] + 1
                if hops[v] > num_nodes:
                    return False
                if not queued[v]:
                    queued[v] = True
                    queue.append(v)
        if head > 4096 and head * 2 > len(queue):
            queue = queue[head:]
            head = 0
    return True


class IncrementalSolver:
    """Feasibility of a growing two-variable system.

    Constraints are pushed in frames and popped in reverse order; the
    potentials of a feasible frame are reused as the starting point of
    the next one.
    """

    def __init__(self, system: TwoVarSystem):
        self.num_vars = system.num_vars
        self._num_nodes = 2 * system.num_vars
        self._adjacency: List[List[Tuple[int, Fraction]]] = [[] for _ in range(self._num_nodes)]
        self._frames: List[Tuple[List[Tuple[int, int]], List[Fraction], bool]] = []
        self._dist: List[Fraction] = [Fraction(0)] * self._num_nodes
        self.feasible = True
        self.solves = 0
        self.push(system.constraints)

    def push(self, constraints: Iterable[TwoVarConstraint]) -> bool:
        added: List[Tuple[int, int]] = []
        dirty: List[int] = []
        for constraint in constraints:
            for var in constraint.variables():
                if not 0 <= var < self.num_vars:
                    raise MalformedSystemError(f"variable x{var} out of range in '{constraint}'")
            for u, v, w in constraint_edges(constraint):
                self._adjacency[u].append((v, w))
                added.append((u, len(self._adjacency[u]) - 1))
                dirty.append(u)
        self._frames.append((added, list(self._dist), self.feasible))
        if self.feasible:
            self.solves += 1
            self.feasible = _relax(self._num_nodes, self._adjacency, self._dist, dirty)
        return self.feasible

    def pop(self):
        added, dist, feasible = self._frames.pop()
        for u, _ in reversed(added):
            self._adjacency[u].pop()
        self._dist = dist
        self.feasible = feasible

    def assignment(self) -> Optional[Assignment]:
        if not self.feasible:
            return None
        d = self._dist
        return {var: (d[2 * var] - d[2 * var + 1]) / 2 for var in range(self.num_vars)}


def solve_two_var(system: TwoVarSystem) -> Optional[Assignment]:
    """Decide feasibility and return an exact satisfying assignment.

    Returns:
        variable id -> Fraction, or None when the system is infeasible
    """
    solver = IncrementalSolver(system)
    values = solver.assignment()
    if values is None:
        logger.debug("infeasible: %d constraints over %d variables", len(system), system.num_vars)
        return None
    if not check_assignment(system, values):
        raise TropError("relaxation produced an assignment that violates the system")
    return values


# ---------------------------------------------------------------------------
# Elimination oracle
# ---------------------------------------------------------------------------

Row = Tuple[Tuple[Tuple[int, Fraction], ...], Fraction]


def _as_rows(constraint: TwoVarConstraint) -> List[Dict[int, Fraction]]:
    coefs: Dict[int, Fraction] = {}
    for var in constraint.variables():
        coefs[var] = coefs.get(var, Fraction(0)) + 1
    rows = [(coefs, constraint.c)]
    if constraint.kind in (EQUALS, SUM_EQUALS):
        rows.append(({v: -a for v, a in coefs.items()}, -constraint.c))
    return rows


def _normalize(coefs: Dict[int, Fraction], c: Fraction) -> Row:
    coefs = {v: a for v, a in coefs.items() if a != 0}
    if coefs:
        scale = max(abs(a) for a in coefs.values())
        coefs = {v: a / scale for v, a in coefs.items()}
        c = c / scale
    return tuple(sorted(coefs.items())), c


def _add_row(table: Dict[tuple, Fraction], row: Row):
    key, c = row
    if key not in table or c > table[key]:
        table[key] = c


def eliminate_oracle(system: TwoVarSystem) -> bool:
    """Fourier-Motzkin elimination: True iff the system is feasible.

    Independent of the graph method and exponential in the worst case;
    meant for small systems only.
    """
    table: Dict[tuple, Fraction] = {}
    for constraint in system.constraints:
        for coefs, c in _as_rows(constraint):
            _add_row(table, _normalize(coefs, c))

    for pivot in range(system.num_vars):
        upper, lower, rest = [], [], {}
        for key, c in table.items():
            coefs = dict(key)
            a = coefs.get(pivot, Fraction(0))
            if a > 0:
                lower.append((coefs, c, a))
            elif a < 0:
                upper.append((coefs, c, a))
            else:
                rest[key] = c
        for lo_coefs, lo_c, lo_a in lower:
            for up_coefs, up_c, up_a in upper:
                merged: Dict[int, Fraction] = {}
                for v, a in lo_coefs.items():
                    merged[v] = merged.get(v, Fraction(0)) + a / lo_a
                for v, a in up_coefs.items():
                    merged[v] = merged.get(v, Fraction(0)) + a / -up_a
                merged.pop(pivot, None)
                _add_row(rest, _normalize(merged, lo_c / lo_a + up_c / -up_a))
        table = rest
        if any(not key and c > 0 for key, c in table.items()):
            return False

    return all(c <= 0 for key, c in table.items() if not key)
