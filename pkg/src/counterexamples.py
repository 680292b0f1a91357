#!/usr/bin/env python3
"""
Matrices of factor rank above 4 whose small minors all have factor rank
at most 4, with explicit rank-4 factorizations of every matrix obtained
by deleting one of the first nu+1 columns.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

try:
    from .reductions import border, eliminate_infinity
    from .trop_core import Factorization, TropMatrix, scale_normalize, verify_product
except ImportError:
    from reductions import border, eliminate_infinity
    from trop_core import Factorization, TropMatrix, scale_normalize, verify_product

logger = logging.getLogger(__name__)

BASE_RANK = 4


def _check_nu(nu: int):
    if nu < 2:
        raise ValueError(f"nu must be at least 2, got {nu}")


def gen_cnu(nu: int) -> TropMatrix:
    """The (nu+6) x (nu+6) matrix C(nu); indices below are 1-based"""
    _check_nu(nu)
    size = nu + 6
    c: List[List[int]] = [[0] * size for _ in range(size)]

    def put(row: int, col: int, value: int):
        c[row - 1][col - 1] = value

    for u in range(1, nu + 2):
        for v in range(1, nu + 3):
            put(u, v, min(10 * u + 10 * v - 10, 20 * u + 1, 20 * v - 9))
        put(u, nu + 3, 0)
        for v in (nu + 4, nu + 5, nu + 6):
            put(u, v, 2)
    put(nu, nu + 1, 20 * nu - 1)
    put(nu + 1, nu + 1, 20 * nu + 11)

    for u in range(1, nu + 2):
        put(nu + 2, u, 10 * u - 3)
        put(nu + 3, u, 11)
        put(nu + 4, u, 2)
        put(nu + 5, u, 2)
        put(nu + 6, u, 0)

    corner = [
        [0, 0, 0, 0, 2],
        [0, 0, 2, 0, 2],
        [2, 2, 0, 2, 2],
        [0, 2, 2, 0, 2],
        [0, 2, 2, 2, 0],
    ]
    for r, row in enumerate(corner):
        for s, value in enumerate(row):
            put(nu + 2 + r, nu + 2 + s, value)
    return TropMatrix.from_rows(c)


def deleted_column_matrix(nu: int, mu: int) -> TropMatrix:
    """C(nu) without column mu (1-based)"""
    _check_mu(nu, mu)
    return gen_cnu(nu).delete_column(mu - 1)


def _check_mu(nu: int, mu: int):
    _check_nu(nu)
    if not 1 <= mu <= nu + 1:
        raise ValueError(f"mu must lie in 1..{nu + 1}, got {mu}")


def deleted_column_witness(nu: int, mu: int) -> Factorization:
    """Inner-dimension-4 factorization of C(nu) without column mu"""
    _check_mu(nu, mu)

    left: List[List[int]] = []
    for i in range(1, nu + 2):
        if i == nu + 1:
            second = 20 * nu + 21
        elif i < mu:
            second = 10 * i - 7
        else:
            second = 10 * i - 8
        left.append([0, second, 20 * i + 1, 20 * i + 1])
    left += [
        [0, 0, 0, 10 * nu + 7],
        [0, 11, 0, 11],
        [2, 0, 2, 2],
        [2, 2, 0, 2],
        [2, 2, 2, 0],
    ]

    columns: List[List[int]] = []
    for j in range(1, nu + 2):
        if j == mu:
            continue
        third = 11 if j == 1 else 10 * j - 3
        second = 10 * j - 3 if j < mu or j == nu + 1 else 10 * j - 2
        columns.append([20 * j - 9, second, third, 0])
    tail = [
        [20 * nu + 20, 0, 2, 2, 2],
        [20 * nu + 20, 2, 0, 2, 2],
        [0, 2, 2, 0, 2],
        [0, 2, 2, 2, 0],
    ]
    columns += [list(col) for col in zip(*tail)]
    right = [list(row) for row in zip(*columns)]
    return Factorization(TropMatrix.from_rows(left), TropMatrix.from_rows(right))


@dataclass
class MinorCheckReport:
    """Outcome of checking the rank-4 witnesses of C(nu)"""

    nu: int
    per_mu: Dict[int, bool] = field(default_factory=dict)
    samples: int = 0
    sample_failures: int = 0

    @property
    def passed(self) -> bool:
        return all(self.per_mu.values()) and self.sample_failures == 0

    def lines(self) -> List[str]:
        out = [
            f"mu={mu}: {'pass' if ok else 'FAIL'}" for mu, ok in sorted(self.per_mu.items())
        ]
        if self.samples:
            out.append(
                f"sampled {self.samples} {self.nu}x{self.nu} minors, "
                f"{self.sample_failures} failures"
            )
        return out


def _restricted(f: Factorization, rows: List[int], cols: List[int]) -> Factorization:
    return Factorization(
        f.left.submatrix(rows, range(f.inner_dim)),
        f.right.submatrix(range(f.inner_dim), cols),
    )


def minor_rank_le4_check(
    nu: int, samples: int = 0, seed: Optional[int] = None
) -> MinorCheckReport:
    """Verify every deleted-column witness, then restrict it to sampled minors.

    A nu x nu minor misses at least one of the first nu+1 columns, so the
    witness for that column restricts to a rank-4 factorization of it.
    """
    _check_nu(nu)
    report = MinorCheckReport(nu)
    full = gen_cnu(nu)
    witnesses = {}
    for mu in range(1, nu + 2):
        f = deleted_column_witness(nu, mu)
        witnesses[mu] = f
        report.per_mu[mu] = verify_product(full.delete_column(mu - 1), f)

    rng = random.Random(seed)
    size = nu + 6
    for _ in range(samples):
        rows = sorted(rng.sample(range(size), nu))
        cols = sorted(rng.sample(range(size), nu))
        mu = next(j + 1 for j in range(nu + 1) if j not in cols)
        # column positions once column mu is gone
        shifted = [j if j < mu - 1 else j - 1 for j in cols]
        f = _restricted(witnesses[mu], rows, shifted)
        report.samples += 1
        if not verify_product(full.submatrix(rows, cols), f):
            report.sample_failures += 1

    logger.debug("C(%d) minor check: %s", nu, report.per_mu)
    return report


def gen_family(k: int, nu: int) -> TropMatrix:
    """Finite matrix of factor rank above k with all nu x nu minors of rank <= k"""
    if k < BASE_RANK:
        raise ValueError(f"k must be at least {BASE_RANK}, got {k}")
    a = gen_cnu(nu)
    if k == BASE_RANK:
        return a
    for _ in range(k - BASE_RANK):
        a = border(a)
    normalized, _ = scale_normalize(a)
    return eliminate_infinity(normalized)
