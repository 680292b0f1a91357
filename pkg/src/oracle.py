#!/usr/bin/env python3
"""
Exhaustive factor-rank oracle for tiny matrices.

For a candidate inner dimension k every cell (i, j) is assigned the slot
tau that attains min_tau (B[i][tau] + C[tau][j]). Each such winner pattern
turns the factorization question into a two-variable system; the pattern
search walks the cells in row-major order and abandons a prefix as soon as
its system becomes infeasible.
"""

import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

try:
    from .constraints import IncrementalSolver, TwoVarSystem, sum_at_least, sum_equals
    from .reductions import eliminate_infinity, restore_infinity
    from .trop_core import (
        INF,
        Factorization,
        TropError,
        TropMatrix,
        factor_rank_le1,
        scale_normalize,
        trivial_factorization,
        verify_product,
    )
except ImportError:
    from constraints import IncrementalSolver, TwoVarSystem, sum_at_least, sum_equals
    from reductions import eliminate_infinity, restore_infinity
    from trop_core import (
        INF,
        Factorization,
        TropError,
        TropMatrix,
        factor_rank_le1,
        scale_normalize,
        trivial_factorization,
        verify_product,
    )

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "TROPRANK_BUDGET"


class OracleBudgetError(TropError):
    """The number of winner patterns exceeds the enumeration budget"""


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    """Pattern budget from TROPRANK_BUDGET, or the default when unset"""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class WinnerPattern:
    """Winning slot (0-based) of every cell of the target"""

    grid: Tuple[Tuple[int, ...], ...]
    k: int

    def __post_init__(self):
        for row in self.grid:
            for tau in row:
                if not 0 <= tau < self.k:
                    raise ValueError(f"winner {tau} outside 0..{self.k - 1}")


class _Layout:
    """Variable numbering: B[i][tau] first, then C[tau][j]"""

    def __init__(self, m: int, n: int, k: int):
        self.m, self.n, self.k = m, n, k

    @property
    def size(self) -> int:
        return (self.m + self.n) * self.k

    def b(self, i: int, tau: int) -> int:
        return i * self.k + tau

    def c(self, tau: int, j: int) -> int:
        return self.m * self.k + tau * self.n + j

    def factorization(self, values: Dict[int, Fraction]) -> Factorization:
        left = TropMatrix(
            tuple(tuple(values[self.b(i, t)] for t in range(self.k)) for i in range(self.m))
        )
        right = TropMatrix(
            tuple(tuple(values[self.c(t, j)] for j in range(self.n)) for t in range(self.k))
        )
        return Factorization(left, right)


def _base_constraints(a: TropMatrix, layout: _Layout) -> list:
    return [
        sum_at_least(layout.b(i, t), layout.c(t, j), a[i, j])
        for i in range(a.rows)
        for j in range(a.cols)
        for t in range(layout.k)
    ]


def pattern_system(a: TropMatrix, pattern: WinnerPattern) -> TwoVarSystem:
    """The system whose solutions are exactly the witnesses with this pattern"""
    if not a.is_finite():
        raise ValueError("winner-pattern systems need a finite target")
    if len(pattern.grid) != a.rows or any(len(r) != a.cols for r in pattern.grid):
        raise ValueError("pattern shape does not match the target")
    layout = _Layout(a.rows, a.cols, pattern.k)
    winners = [
        sum_equals(layout.b(i, t), layout.c(t, j), a[i, j])
        for i, row in enumerate(pattern.grid)
        for j, t in enumerate(row)
    ]
    return TwoVarSystem.of(layout.size, _base_constraints(a, layout) + winners)


def _search_finite(a: TropMatrix, k: int) -> Optional[Factorization]:
    layout = _Layout(a.rows, a.cols, k)
    solver = IncrementalSolver(TwoVarSystem.of(layout.size, _base_constraints(a, layout)))
    cells = [(i, j) for i in range(a.rows) for j in range(a.cols)]
    visited = 0

    # explicit stack of (cell index, next slot to try)
    stack: List[int] = [0]
    while stack:
        depth = len(stack) - 1
        if depth == len(cells):
            break
        tau = stack[-1]
        if tau == k:
            stack.pop()
            if stack:
                solver.pop()
                stack[-1] += 1
            continue
        i, j = cells[depth]
        visited += 1
        if solver.push([sum_equals(layout.b(i, tau), layout.c(tau, j), a[i, j])]):
            stack.append(0)
        else:
            solver.pop()
            stack[-1] += 1

    logger.debug(
        "oracle %dx%d k=%d: %d pattern prefixes, %d solves",
        a.rows, a.cols, k, visited, solver.solves,
    )
    if not stack:
        return None
    return layout.factorization(solver.assignment())


def factor_rank_le_k(
    a: TropMatrix, k: int, budget: Optional[int] = None
) -> Optional[Factorization]:
    """Decide factor rank <= k by winner-pattern enumeration.

    Args:
        a: target matrix, INF entries allowed
        k: candidate inner dimension (>= 1)
        budget: largest admissible pattern count k**(m*n); defaults to
            TROPRANK_BUDGET or DEFAULT_BUDGET

    Returns:
        A verified factorization with inner dimension k, or None when the
        factor rank exceeds k

    Raises:
        OracleBudgetError: if k**(m*n) is above the budget
    """
    if k < 1:
        raise ValueError(f"inner dimension must be at least 1, got {k}")
    m, n = a.shape
    if k >= min(m, n):
        return trivial_factorization(a, k)
    if k == 1:
        return factor_rank_le1(a)

    if budget is None:
        budget = budget_from_env()

    dead_rows = set(a.infinite_rows())
    dead_cols = set(a.infinite_columns())
    if dead_rows or dead_cols:
        live_rows = [i for i in range(m) if i not in dead_rows]
        live_cols = [j for j in range(n) if j not in dead_cols]
        if not live_rows:
            return Factorization(TropMatrix.filled(m, k, INF), TropMatrix.filled(k, n, 0))
        core = factor_rank_le_k(a.submatrix(live_rows, live_cols), k, budget)
        if core is None:
            return None
        return _reinsert_dead_lines(a, core, live_rows, live_cols)

    if not a.is_finite():
        normalized, scaling = scale_normalize(a)
        finite = factor_rank_le_k(eliminate_infinity(normalized), k, budget)
        if finite is None:
            return None
        f = scaling.inverse().transport(restore_infinity(normalized, finite))
        return _checked(a, f)

    patterns = k ** (m * n)
    if patterns > budget:
        raise OracleBudgetError(
            f"{k}^{m * n} = {patterns} winner patterns exceed the budget of {budget}"
        )
    f = _search_finite(a, k)
    return None if f is None else _checked(a, f)


def _reinsert_dead_lines(
    a: TropMatrix, core: Factorization, live_rows: List[int], live_cols: List[int]
) -> Factorization:
    k = core.inner_dim
    row_of = {i: r for r, i in enumerate(live_rows)}
    col_of = {j: c for c, j in enumerate(live_cols)}
    left = TropMatrix(
        tuple(
            core.left.row(row_of[i]) if i in row_of else (INF,) * k for i in range(a.rows)
        )
    )
    right = TropMatrix(
        tuple(
            tuple(core.right[t, col_of[j]] if j in col_of else INF for j in range(a.cols))
            for t in range(k)
        )
    )
    return _checked(a, Factorization(left, right))


def _checked(a: TropMatrix, f: Factorization) -> Factorization:
    if not verify_product(a, f):
        raise TropError("oracle witness does not multiply back to the target")
    return f


def factor_rank_exact(a: TropMatrix, budget: Optional[int] = None) -> int:
    """Least k with factor_rank_le_k(a, k) non-empty"""
    for k in range(1, min(a.rows, a.cols) + 1):
        if factor_rank_le_k(a, k, budget) is not None:
            return k
    return min(a.rows, a.cols)
