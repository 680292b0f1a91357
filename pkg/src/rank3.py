#!/usr/bin/env python3
"""
Polynomial-time decision of factor rank <= 3.

Outline of decide_factor_rank_le3:

  1. find a 3x3 submatrix of factor rank 3 (none means rank <= 2);
  2. scale the whole matrix so every row and column has minimum 0 and
     the chosen corner has zeros exactly on its diagonal, or exactly off it;
  3. drop all-zero rows and columns, or report the 4x4 certificate of
     rank >= 4 they sometimes expose;
  4. read off which entries of B and C must vanish;
  5. fix one zero and one row/column maximum per line of B and C;
  6. split on the min{u_i, v_j} blocks (2 ways each, at most 64 branches);
  7. every remaining cell is a two-variable constraint; solve.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

try:
    from .constraints import TwoVarSystem, at_least, equals, solve_two_var, sum_at_least, sum_equals
    from .oracle import factor_rank_le_k
    from .trop_core import (
        Factorization,
        Scaling,
        TropError,
        TropMatrix,
        factor_rank_le1,
        pad_factorization,
        trivial_factorization,
        verify_product,
    )
except ImportError:
    from constraints import TwoVarSystem, at_least, equals, solve_two_var, sum_at_least, sum_equals
    from oracle import factor_rank_le_k
    from trop_core import (
        Factorization,
        Scaling,
        TropError,
        TropMatrix,
        factor_rank_le1,
        pad_factorization,
        trivial_factorization,
        verify_product,
    )

logger = logging.getLogger(__name__)

DIAGONAL = "diagonal"
OFF_DIAGONAL = "off_diagonal"
MAX_SYSTEMS_PER_PLACEMENT = 192

SLOTS = frozenset(range(3))


class UnhandledPatternError(TropError):
    """A full-rank 3x3 corner fits neither zero pattern"""


@dataclass
class DecisionTrace:
    """What the decider did, for tests and --verbose output"""

    placements: int = 0
    systems: List[int] = field(default_factory=list)
    form: Optional[str] = None
    certificate: Optional[Tuple[str, int, int]] = None
    low_rank: bool = False

    @property
    def max_systems(self) -> int:
        return max(self.systems, default=0)


# ---------------------------------------------------------------------------
# Rank <= 2
# ---------------------------------------------------------------------------


def column_pair_witness(a: TropMatrix) -> Optional[Factorization]:
    """Try B = two columns of a, with C the greatest solution of B (x) C <= a"""
    if not a.is_finite():
        return None
    for p, q in itertools.combinations_with_replacement(range(a.cols), 2):
        basis = [a.column(p), a.column(q)]
        left = TropMatrix(tuple(tuple(col[i] for col in basis) for i in range(a.rows)))
        right = TropMatrix(
            tuple(
                tuple(max(a[i, j] - col[i] for i in range(a.rows)) for j in range(a.cols))
                for col in basis
            )
        )
        f = Factorization(left, right)
        if verify_product(a, f):
            return f
    return None


def factor_rank_le2(a: TropMatrix, budget: Optional[int] = None) -> Optional[Factorization]:
    """Inner-dimension-2 witness, or None when the factor rank exceeds 2"""
    if min(a.rows, a.cols) <= 2:
        return trivial_factorization(a, 2)
    f = column_pair_witness(a)
    if f is not None:
        return f
    f = column_pair_witness(a.transpose())
    if f is not None:
        return f.transpose()
    return factor_rank_le_k(a, 2, budget)


def iter_fullrank_3x3(
    a: TropMatrix, budget: Optional[int] = None
) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """(rows, cols) of every 3x3 submatrix of factor rank 3, lexicographically"""
    for rows in itertools.combinations(range(a.rows), 3):
        for cols in itertools.combinations(range(a.cols), 3):
            if factor_rank_le2(a.submatrix(rows, cols), budget) is None:
                yield rows, cols


def find_fullrank_3x3(
    a: TropMatrix, budget: Optional[int] = None
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    return next(iter_fullrank_3x3(a, budget), None)


# ---------------------------------------------------------------------------
# Corner scaling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CornerScaling:
    """Offsets putting a 3x3 corner, columns taken in col_order, into a zero form"""

    form: str
    col_order: Tuple[int, int, int]
    row_offsets: Tuple[Fraction, Fraction, Fraction]
    col_offsets: Tuple[Fraction, Fraction, Fraction]

    def scaled(self, sub: TropMatrix) -> List[List[Fraction]]:
        return [
            [
                sub[a, self.col_order[b]] + self.row_offsets[a] + self.col_offsets[b]
                for b in range(3)
            ]
            for a in range(3)
        ]


def _has_form(d: List[List[Fraction]], form: str) -> bool:
    for a in range(3):
        for b in range(3):
            on_diagonal = a == b
            zero = d[a][b] == 0
            if form == DIAGONAL and (zero != on_diagonal or d[a][b] < 0):
                return False
            if form == OFF_DIAGONAL and (zero == on_diagonal or d[a][b] < 0):
                return False
    return True


def _diagonal_scaling(sub: TropMatrix) -> Optional[CornerScaling]:
    sums = {
        perm: sum(sub[a, perm[a]] for a in range(3))
        for perm in itertools.permutations(range(3))
    }
    best = min(sums.values())
    winners = [perm for perm, total in sums.items() if total == best]
    if len(winners) != 1:
        return None
    order = winners[0]
    d = [[sub[a, order[b]] for b in range(3)] for a in range(3)]
    w = [[d[a][b] - d[b][b] for b in range(3)] for a in range(3)]

    cycles = [w[a][b] + w[b][a] for a, b in itertools.combinations(range(3), 2)]
    cycles += [w[0][1] + w[1][2] + w[2][0], w[0][2] + w[2][1] + w[1][0]]
    slack = min(cycles) / 3

    potential = [Fraction(0)] * 3
    for _ in range(3):
        for a, b in itertools.permutations(range(3), 2):
            potential[b] = min(potential[b], potential[a] + w[a][b] - slack)

    cols = tuple(-d[b][b] - potential[b] for b in range(3))
    candidate = CornerScaling(DIAGONAL, order, tuple(potential), cols)
    return candidate if _has_form(candidate.scaled(sub), DIAGONAL) else None


def _off_diagonal_scaling(sub: TropMatrix) -> Optional[CornerScaling]:
    for order in itertools.permutations(range(3)):
        d = [[sub[a, order[b]] for b in range(3)] for a in range(3)]
        r0 = Fraction(0)
        c1, c2 = -d[0][1], -d[0][2]
        r1, r2 = -d[1][2] - c2, -d[2][1] - c1
        c0 = -d[1][0] - r1
        candidate = CornerScaling(OFF_DIAGONAL, order, (r0, r1, r2), (c0, c1, c2))
        if _has_form(candidate.scaled(sub), OFF_DIAGONAL):
            return candidate
    return None


def corner_scaling(sub: TropMatrix) -> CornerScaling:
    """Scale a full-rank 3x3 block to zeros exactly on, or exactly off, its diagonal.

    The diagonal form exists iff a single permutation attains the
    permanent; otherwise the off-diagonal form is tried in every column
    order.

    Raises:
        UnhandledPatternError: if neither form can be reached
    """
    for attempt in (_diagonal_scaling, _off_diagonal_scaling):
        found = attempt(sub)
        if found is not None:
            return found
    raise UnhandledPatternError(f"corner fits neither zero pattern:\n{sub}")


# ---------------------------------------------------------------------------
# Min-decomposable blocks
# ---------------------------------------------------------------------------


def techmin_split(
    values: Sequence[Sequence[Fraction]], rows: Sequence[int], cols: Sequence[int]
) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
    """Row maxima and column maxima of the block values[rows][cols].

    If values[i][j] = min(u_i, v_j) on the block, then u equals the row
    maxima or v equals the column maxima.
    """
    row_max = {i: max(values[i][j] for j in cols) for i in rows}
    col_max = {j: max(values[i][j] for i in rows) for j in cols}
    return row_max, col_max


def techmin_holds(
    values: Sequence[Sequence[Fraction]], u: Sequence[Fraction], v: Sequence[Fraction]
) -> bool:
    """Dichotomy check for one solution (u, v) of values[i][j] = min(u_i, v_j)"""
    rows, cols = range(len(u)), range(len(v))
    if any(values[i][j] != min(u[i], v[j]) for i in rows for j in cols):
        raise ValueError("u and v do not decompose the block")
    row_max, col_max = techmin_split(values, rows, cols)
    return all(u[i] == row_max[i] for i in rows) or all(v[j] == col_max[j] for j in cols)


# ---------------------------------------------------------------------------
# Branch systems
# ---------------------------------------------------------------------------


@dataclass
class _Slots:
    """Zero sets and the fixed slots of every row of B and column of C"""

    zb: List[FrozenSet[int]]
    zc: List[FrozenSet[int]]
    row_zero: List[int]
    row_peak: List[int]
    row_free: List[int]
    row_max: List[Fraction]
    col_zero: List[int]
    col_peak: List[int]
    col_free: List[int]
    col_max: List[Fraction]


def _zero_patterns(
    q: List[List[Fraction]], corner_rows: List[int], corner_cols: List[int], right_form: str
) -> Optional[Tuple[List[FrozenSet[int]], List[FrozenSet[int]]]]:
    m, n = len(q), len(q[0])
    zc = [frozenset(t for t in range(3) if q[corner_rows[t]][j] == 0) for j in range(n)]
    if right_form == DIAGONAL:
        zb = [frozenset(t for t in range(3) if q[i][corner_cols[t]] == 0) for i in range(m)]
    else:
        zb = []
        for i in range(m):
            positive = [j for j in corner_cols if q[i][j] > 0]
            positive = positive or [j for j in range(n) if q[i][j] > 0]
            if not positive:
                return None
            zb.append(SLOTS - zc[positive[0]])

    if not all(zb) or not all(zc):
        return None
    for i in range(m):
        for j in range(n):
            if (q[i][j] == 0) != bool(zb[i] & zc[j]):
                return None
    return zb, zc


def _slots(q: List[List[Fraction]], zb, zc) -> _Slots:
    m, n = len(q), len(q[0])
    row_zero, row_peak, row_max = [], [], []
    for i in range(m):
        peak = max(range(n), key=lambda j: q[i][j])
        row_zero.append(min(zb[i]))
        row_peak.append(min(zc[peak]))
        row_max.append(q[i][peak])
    col_zero, col_peak, col_max = [], [], []
    for j in range(n):
        peak = max(range(m), key=lambda i: q[i][j])
        col_zero.append(min(zc[j]))
        col_peak.append(min(zb[peak]))
        col_max.append(q[peak][j])
    return _Slots(
        zb, zc,
        row_zero, row_peak, [3 - a - b for a, b in zip(row_zero, row_peak)], row_max,
        col_zero, col_peak, [3 - a - b for a, b in zip(col_zero, col_peak)], col_max,
    )


def _techmin_blocks(s: _Slots) -> List[Tuple[List[int], List[int]]]:
    """Blocks where both free slots can attain the minimum"""
    blocks = []
    for p1, p2, p3 in itertools.permutations(range(3)):
        rows = [i for i in range(len(s.zb)) if (s.row_zero[i], s.row_peak[i]) == (p1, p2)]
        cols = [j for j in range(len(s.zc)) if (s.col_zero[j], s.col_peak[j]) == (p3, p2)]
        if rows and cols:
            blocks.append((rows, cols))
    return blocks


def _solve_branch(
    q: List[List[Fraction]],
    s: _Slots,
    fixed_rows: Dict[int, Fraction],
    fixed_cols: Dict[int, Fraction],
) -> Optional[Tuple[List[List[Fraction]], List[List[Fraction]]]]:
    m, n = len(q), len(q[0])
    zero = Fraction(0)

    for i, value in fixed_rows.items():
        if s.row_free[i] in s.zb[i] and value != 0:
            return None
    for j, value in fixed_cols.items():
        if s.col_free[j] in s.zc[j] and value != 0:
            return None

    # (constant, variable id); exactly one of the two is meaningful
    def left_term(i: int, t: int):
        if t == s.row_zero[i]:
            return zero, None
        if t == s.row_peak[i]:
            return s.row_max[i], None
        if t in s.zb[i]:
            return zero, None
        if i in fixed_rows:
            return fixed_rows[i], None
        return None, i

    def right_term(t: int, j: int):
        if t == s.col_zero[j]:
            return zero, None
        if t == s.col_peak[j]:
            return s.col_max[j], None
        if t in s.zc[j]:
            return zero, None
        if j in fixed_cols:
            return fixed_cols[j], None
        return None, m + j

    constraints = [at_least(var, 0) for var in range(m + n)]
    for i in range(m):
        for j in range(n):
            target = q[i][j]
            satisfied = False
            candidates = []
            for t in range(3):
                b_const, b_var = left_term(i, t)
                c_const, c_var = right_term(t, j)
                if b_var is None and c_var is None:
                    total = b_const + c_const
                    if total < target:
                        return None
                    satisfied = satisfied or total == target
                elif b_var is not None and c_var is not None:
                    constraints.append(sum_at_least(b_var, c_var, target))
                    if target > 0:
                        candidates.append(sum_equals(b_var, c_var, target))
                else:
                    var, known = (b_var, c_const) if b_var is not None else (c_var, b_const)
                    constraints.append(at_least(var, target - known))
                    if known < target:
                        candidates.append(equals(var, target - known))
            if satisfied:
                continue
            if not candidates:
                return None
            if len(candidates) > 1:
                raise UnhandledPatternError(f"cell ({i}, {j}) has two undetermined minima")
            constraints.append(candidates[0])

    values = solve_two_var(TwoVarSystem.of(m + n, constraints))
    if values is None:
        return None

    def resolve(pair):
        const, var = pair
        return values[var] if var is not None else const

    left = [[resolve(left_term(i, t)) for t in range(3)] for i in range(m)]
    right = [[resolve(right_term(t, j)) for j in range(n)] for t in range(3)]
    return left, right


def _solve_case(
    q: List[List[Fraction]],
    corner_rows: List[int],
    corner_cols: List[int],
    right_form: str,
    trace: DecisionTrace,
) -> Optional[Tuple[List[List[Fraction]], List[List[Fraction]]]]:
    """B has a diagonal corner, C the given right_form corner"""
    patterns = _zero_patterns(q, corner_rows, corner_cols, right_form)
    if patterns is None:
        return None
    s = _slots(q, *patterns)
    blocks = _techmin_blocks(s)
    logger.debug("case %s: %d techmin blocks", right_form, len(blocks))

    for choice in itertools.product((0, 1), repeat=len(blocks)):
        fixed_rows: Dict[int, Fraction] = {}
        fixed_cols: Dict[int, Fraction] = {}
        for (rows, cols), bit in zip(blocks, choice):
            row_max, col_max = techmin_split(q, rows, cols)
            if bit == 0:
                fixed_rows.update(row_max)
            else:
                fixed_cols.update(col_max)
        trace.systems[-1] += 1
        found = _solve_branch(q, s, fixed_rows, fixed_cols)
        if found is not None:
            return found
    return None


def _transpose(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    return [list(col) for col in zip(*rows)]


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def _extend_scaling(
    a: TropMatrix, corner_rows: List[int], corner_cols: List[int], corner: CornerScaling
) -> Scaling:
    """Grow the corner offsets so the whole matrix has row and column minima 0"""
    alpha: List[Optional[Fraction]] = [None] * a.rows
    beta: List[Optional[Fraction]] = [None] * a.cols
    for t, i in enumerate(corner_rows):
        alpha[i] = corner.row_offsets[t]
    for t, j in enumerate(corner_cols):
        beta[j] = corner.col_offsets[t]
    for i in range(a.rows):
        if alpha[i] is None:
            alpha[i] = -min(a[i, j] + beta[j] for j in corner_cols)
    for j in range(a.cols):
        if beta[j] is None:
            beta[j] = -min(a[i, j] + alpha[i] for i in range(a.rows))
    return Scaling(tuple(alpha), tuple(beta))


def _decide_at(
    a: TropMatrix, rows: Sequence[int], cols: Sequence[int], trace: DecisionTrace
) -> Optional[Factorization]:
    corner = corner_scaling(a.submatrix(rows, cols))
    corner_rows = list(rows)
    corner_cols = [cols[c] for c in corner.col_order]
    scaling = _extend_scaling(a, corner_rows, corner_cols, corner)
    scaled = scaling.apply(a)
    p = [list(row) for row in scaled.entries]
    m, n = a.shape
    trace.form = corner.form
    trace.systems.append(0)
    logger.debug("placement rows=%s cols=%s form=%s", corner_rows, corner_cols, corner.form)

    zero_cols = [j for j in range(n) if all(p[i][j] == 0 for i in range(m))]
    for j in zero_cols:
        for i in range(m):
            if all(p[i][k] > 0 for k in corner_cols):
                trace.certificate = ("column", j, i)
                return None
    zero_rows = [i for i in range(m) if all(x == 0 for x in p[i])]
    for i in zero_rows:
        for j in range(n):
            if all(p[r][j] > 0 for r in corner_rows):
                trace.certificate = ("row", i, j)
                return None

    kept_rows = [i for i in range(m) if i not in zero_rows]
    kept_cols = [j for j in range(n) if j not in zero_cols]
    row_pos = {i: r for r, i in enumerate(kept_rows)}
    col_pos = {j: c for c, j in enumerate(kept_cols)}
    q = [[p[i][j] for j in kept_cols] for i in kept_rows]
    q_rows = [row_pos[i] for i in corner_rows]
    q_cols = [col_pos[j] for j in corner_cols]

    if corner.form == DIAGONAL:
        cases = [(False, DIAGONAL)]
    else:
        cases = [(False, OFF_DIAGONAL), (True, OFF_DIAGONAL)]

    for transposed, right_form in cases:
        if transposed:
            found = _solve_case(_transpose(q), q_cols, q_rows, right_form, trace)
            if found is not None:
                left_t, right_t = found
                found = _transpose(right_t), _transpose(left_t)
        else:
            found = _solve_case(q, q_rows, q_cols, right_form, trace)
        if found is None:
            continue

        left_q, right_q = found
        left = [
            left_q[row_pos[i]] if i in row_pos
            else [min(left_q[row_pos[r]][t] for r in corner_rows) for t in range(3)]
            for i in range(m)
        ]
        right = [
            [
                right_q[t][col_pos[j]] if j in col_pos
                else min(right_q[t][col_pos[k]] for k in corner_cols)
                for j in range(n)
            ]
            for t in range(3)
        ]
        f = Factorization(TropMatrix.from_rows(left), TropMatrix.from_rows(right))
        if not verify_product(scaled, f):
            raise TropError("branch solution does not reproduce the scaled matrix")
        return scaling.inverse().transport(f)
    return None


def decide_factor_rank_le3(
    a: TropMatrix,
    trace: Optional[DecisionTrace] = None,
    budget: Optional[int] = None,
) -> Optional[Factorization]:
    """Witness of inner dimension 3 iff the factor rank of a is at most 3.

    Args:
        a: finite matrix (eliminate INF entries first)
        trace: optional DecisionTrace filled in while deciding
        budget: pattern budget for the rank-2 fallback oracle

    Raises:
        UnhandledPatternError: if no full-rank corner fits a known pattern
    """
    if not a.is_finite():
        raise ValueError("rank-3 decision needs a finite matrix; eliminate INF entries first")
    if trace is None:
        trace = DecisionTrace()
    if min(a.rows, a.cols) <= 3:
        return trivial_factorization(a, 3)

    unhandled: Optional[UnhandledPatternError] = None
    for rows, cols in iter_fullrank_3x3(a, budget):
        trace.placements += 1
        try:
            f = _decide_at(a, rows, cols, trace)
        except UnhandledPatternError as e:
            logger.debug("placement %s x %s unhandled: %s", rows, cols, e)
            unhandled = e
            continue
        if f is not None and not verify_product(a, f):
            raise TropError("rank-3 witness does not multiply back to the input")
        return f
    if unhandled is not None:
        raise unhandled

    trace.low_rank = True
    f = factor_rank_le1(a) or factor_rank_le2(a, budget)
    if f is None:
        raise TropError("no full-rank 3x3 submatrix, yet the factor rank exceeds 2")
    return pad_factorization(a, f, 3)
