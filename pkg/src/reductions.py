#!/usr/bin/env python3
"""
Hardness machinery for factor rank at least 8.

SET SPLITTING instances are rewritten into the band form (breakpoints
sigma and blocks R), encoded as a gadget matrix whose factor rank is at
most 8 exactly when the band instance splits, and pushed to any larger
inner dimension by bordering. The helpers that move factorizations
across bordering, infinity elimination and integer rounding live here
as well.
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

try:
    from .trop_core import (
        INF,
        Factorization,
        MatrixFormatError,
        TropError,
        TropMatrix,
        finitize,
        scale_normalize,
        trop_mat_mul,
        verify_product,
    )
except ImportError:
    from trop_core import (
        INF,
        Factorization,
        MatrixFormatError,
        TropError,
        TropMatrix,
        finitize,
        scale_normalize,
        trop_mat_mul,
        verify_product,
    )

logger = logging.getLogger(__name__)

# Largest ground set split by exhaustive 2^n enumeration.
BRUTE_FORCE_LIMIT = 20

SPADES = 9
NATURALS = 10
GADGET_RANK = 8


class InadmissibleInstanceError(TropError, ValueError):
    """Two breakpoints lie closer than 2 apart"""


class InvalidWitnessError(TropError, ValueError):
    """A split or a factorization does not certify what it claims"""


class InstanceFormatError(MatrixFormatError):
    """Text input does not follow an instance file format"""


# ---------------------------------------------------------------------------
# Infinity elimination, bordering, integer witnesses
# ---------------------------------------------------------------------------


def _require_normalized(a: TropMatrix):
    for i, row in enumerate(a.entries):
        finite = [x for x in row if x is not INF]
        if not finite or min(finite) != 0:
            raise ValueError(
                f"row {i + 1} does not have minimum 0; run scale_normalize first"
            )
    for j in range(a.cols):
        finite = [x for x in a.column(j) if x is not INF]
        if not finite or min(finite) != 0:
            raise ValueError(
                f"column {j + 1} does not have minimum 0; run scale_normalize first"
            )


def eliminate_infinity(a: TropMatrix) -> TropMatrix:
    """Replace every INF by 2g + 1, g the largest finite entry.

    The input must have minimum 0 in every row and column; the factor
    rank is unchanged.
    """
    _require_normalized(a)
    big = 2 * a.max_finite() + 1
    return a.map(lambda x: big if x is INF else x)


def restore_infinity(a: TropMatrix, f: Factorization) -> Factorization:
    """Carry a factorization of eliminate_infinity(a) back to a"""
    _require_normalized(a)
    g = a.max_finite()
    shifts = []
    for t in range(f.inner_dim):
        column = [x for x in f.left.column(t) if x is not INF]
        shifts.append(min(column) if column else Fraction(0))

    def cut(x):
        return INF if x is INF or x > g else x

    left = TropMatrix(
        tuple(
            tuple(cut(x - shifts[t]) if x is not INF else INF for t, x in enumerate(row))
            for row in f.left.entries
        )
    )
    right = TropMatrix(
        tuple(
            tuple(cut(x + shifts[t]) if x is not INF else INF for x in row)
            for t, row in enumerate(f.right.entries)
        )
    )
    restored = Factorization(left, right)
    if not verify_product(a, restored):
        raise InvalidWitnessError("factorization does not factor the infinity-free matrix")
    return restored


def elimination_matrix(a: TropMatrix) -> TropMatrix:
    """E with 0 on the diagonal and 2g + 1 elsewhere, so E (x) a drops INF"""
    big = 2 * a.max_finite() + 1
    return TropMatrix.identity(a.rows, big)


def eliminate_witness(a: TropMatrix, f: Factorization) -> Factorization:
    """Move a factorization of a to eliminate_infinity(a) via E (x) B"""
    eliminated = eliminate_infinity(a)
    if not verify_product(a, f):
        raise InvalidWitnessError("factorization does not factor the input matrix")
    moved = Factorization(trop_mat_mul(elimination_matrix(a), f.left), f.right)
    return finitize(eliminated, moved)


def border(a: TropMatrix) -> TropMatrix:
    """Append an INF row and column that meet in a single 0"""
    zero = Fraction(0)
    entries = tuple(row + (INF,) for row in a.entries)
    entries += ((INF,) * a.cols + (zero,),)
    return TropMatrix(entries)


def border_witness(f: Factorization) -> Factorization:
    """Factorization of border(a) from one of a, one slot wider"""
    zero = Fraction(0)
    left = TropMatrix(
        tuple(row + (INF,) for row in f.left.entries) + ((INF,) * f.inner_dim + (zero,),)
    )
    right = TropMatrix(
        tuple(row + (INF,) for row in f.right.entries) + ((INF,) * f.right.cols + (zero,),)
    )
    return Factorization(left, right)


def integerize(target: TropMatrix, f: Factorization) -> Factorization:
    """Integer factorization with entries bounded by h = |g| + |l|.

    B is rounded down and C up, the column minima of B are moved into
    the rows of C, and whatever still exceeds h is capped at h.
    """
    if not target.is_finite() or any(x.denominator != 1 for x in target.values()):
        raise ValueError("integerize needs a finite integer target")
    if not verify_product(target, f):
        raise InvalidWitnessError("factorization does not factor the target")
    h = abs(target.max_finite()) + abs(target.min_finite())

    left = [[x if x is INF else Fraction(math.floor(x)) for x in row] for row in f.left.entries]
    right = [[x if x is INF else Fraction(math.ceil(x)) for x in row] for row in f.right.entries]
    for t in range(f.inner_dim):
        column = [row[t] for row in left if row[t] is not INF]
        if not column:
            for row in left:
                row[t] = h
            right[t] = [h] * len(right[t])
            continue
        low = min(column)
        for row in left:
            if row[t] is not INF:
                row[t] -= low
        right[t] = [x if x is INF else x + low for x in right[t]]

    def cap(x):
        return h if x is INF or x > h else x

    result = Factorization(
        TropMatrix(tuple(tuple(cap(x) for x in row) for row in left)),
        TropMatrix(tuple(tuple(cap(x) for x in row) for row in right)),
    )
    if not verify_product(target, result):
        raise TropError("integer rounding changed the product")
    return result


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitInstance:
    """Ground set {1..n} and a family of its subsets"""

    n: int
    subsets: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("the ground set must be nonempty")
        for index, subset in enumerate(self.subsets, start=1):
            if not subset:
                raise ValueError(f"subset {index} is empty")
            if len(set(subset)) != len(subset):
                raise ValueError(f"subset {index} repeats an element")
            for x in subset:
                if not 1 <= x <= self.n:
                    raise ValueError(f"subset {index} mentions {x}, outside 1..{self.n}")

    @classmethod
    def of(cls, n: int, subsets: Iterable[Iterable[int]]) -> "SplitInstance":
        return cls(n, tuple(tuple(sorted(s)) for s in subsets))

    @property
    def m(self) -> int:
        return len(self.subsets)


@dataclass(frozen=True)
class SsrefInstance:
    """Breakpoints sigma_0 = 0 <= ... <= sigma_m and blocks R_1..R_n"""

    sigma: Tuple[int, ...]
    blocks: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        if not self.sigma or self.sigma[0] != 0:
            raise ValueError("breakpoints must start with sigma_0 = 0")
        if any(b < a for a, b in zip(self.sigma, self.sigma[1:])):
            raise ValueError("breakpoints must be nondecreasing")
        if not self.blocks:
            raise ValueError("at least one block is required")
        seen: Dict[int, int] = {}
        for index, block in enumerate(self.blocks, start=1):
            for u in block:
                if u in seen:
                    raise ValueError(f"{u} lies in blocks {seen[u]} and {index}")
                seen[u] = index
        if set(seen) != set(range(1, self.total + 1)):
            raise ValueError(f"blocks must partition 1..{self.total}")
        object.__setattr__(self, "_nu", seen)

    @classmethod
    def of(cls, sigma: Sequence[int], blocks: Iterable[Iterable[int]]) -> "SsrefInstance":
        return cls(tuple(sigma), tuple(frozenset(b) for b in blocks))

    @property
    def m(self) -> int:
        return len(self.sigma) - 1

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def total(self) -> int:
        """sigma_m, written sigma in the formulas"""
        return self.sigma[-1]

    @property
    def hearts(self) -> int:
        return self.total - self.m

    @property
    def big_g(self) -> int:
        return 21 * self.total

    def nu(self, u: int) -> int:
        """Index of the block holding u"""
        try:
            return self._nu[u]
        except KeyError:
            raise ValueError(f"{u} is outside 1..{self.total}")

    def band(self, mu: int) -> range:
        return range(self.sigma[mu - 1] + 1, self.sigma[mu] + 1)

    def band_of(self, u: int) -> int:
        for mu in range(1, self.m + 1):
            if self.sigma[mu - 1] < u <= self.sigma[mu]:
                return mu
        raise ValueError(f"{u} is outside 1..{self.total}")

    def heart_band(self, v: int) -> int:
        """Band whose heart rows sigma_(mu-1)-mu+2 .. sigma_mu-mu contain v"""
        for mu in range(1, self.m + 1):
            if self.sigma[mu - 1] - mu + 2 <= v <= self.sigma[mu] - mu:
                return mu
        raise ValueError(f"heart row {v} is outside 1..{self.hearts}")

    @property
    def admissible(self) -> bool:
        return all(b - a >= 2 for a, b in zip(self.sigma, self.sigma[1:]))


@dataclass(frozen=True)
class SplittingWitness:
    """A split of the block indices plus the band heads H_mu"""

    phi1: FrozenSet[int]
    phi2: FrozenSet[int]
    heads: Tuple[int, ...]

    def side(self, eta: int) -> int:
        return 1 if eta in self.phi1 else 2

    def part(self, chi: int) -> FrozenSet[int]:
        return self.phi1 if chi == 1 else self.phi2


def splitting_witness(
    inst: SsrefInstance, phi1: Iterable[int], phi2: Optional[Iterable[int]] = None
) -> SplittingWitness:
    """Validate a split and compute its band heads.

    Raises:
        InvalidWitnessError: if the parts overlap, miss a block, or some
            band sees only one side
    """
    phi1 = frozenset(phi1)
    everything = frozenset(range(1, inst.n + 1))
    phi2 = everything - phi1 if phi2 is None else frozenset(phi2)
    if phi1 & phi2 or (phi1 | phi2) != everything:
        raise InvalidWitnessError(f"{sorted(phi1)} and {sorted(phi2)} do not split 1..{inst.n}")

    heads = []
    for mu in range(1, inst.m + 1):
        if not inst.band(mu):
            raise InvalidWitnessError(f"band {mu} is empty")
        last_side = inst.nu(inst.sigma[mu]) in phi1
        opposite = [h for h in inst.band(mu) if (inst.nu(h) in phi1) != last_side]
        if not opposite:
            raise InvalidWitnessError(f"band {mu} is not split by {sorted(phi1)}")
        heads.append(max(opposite))
    return SplittingWitness(phi1, phi2, tuple(heads))


def split_brute_force(s: SplitInstance) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """Direct 2^n search for a split leaving no subset monochromatic"""
    if s.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"ground set of {s.n} exceeds the brute-force limit {BRUTE_FORCE_LIMIT}")
    everything = frozenset(range(1, s.n + 1))
    for mask in range(1 << s.n):
        phi1 = frozenset(x for x in everything if mask >> (x - 1) & 1)
        if all(0 < len(phi1.intersection(subset)) < len(subset) for subset in s.subsets):
            return phi1, everything - phi1
    return None


def ssref_brute_force(inst: SsrefInstance) -> Optional[SplittingWitness]:
    """Search all 2^n splits of the block indices"""
    if inst.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"{inst.n} blocks exceed the brute-force limit {BRUTE_FORCE_LIMIT}")
    for mask in range(1 << inst.n):
        phi1 = [eta for eta in range(1, inst.n + 1) if mask >> (eta - 1) & 1]
        try:
            return splitting_witness(inst, phi1)
        except InvalidWitnessError:
            continue
    return None


def ssref_answer(inst: SsrefInstance) -> Optional[SplittingWitness]:
    """'no' at once for inadmissible breakpoints, brute force otherwise"""
    if not inst.admissible:
        logger.debug("breakpoints %s are inadmissible; answer is no", inst.sigma)
        return None
    return ssref_brute_force(inst)


def split_to_ssref(s: SplitInstance) -> SsrefInstance:
    """Number every (element, subset) incidence inside its subset's band.

    Incidences of subset j take the numbers sigma_(j-1)+1 .. sigma_j in
    ascending element order; block i collects the numbers of element i.
    """
    sigma = [0]
    blocks: List[List[int]] = [[] for _ in range(s.n)]
    for subset in s.subsets:
        start = sigma[-1]
        for offset, element in enumerate(sorted(subset), start=1):
            blocks[element - 1].append(start + offset)
        sigma.append(start + len(subset))
    return SsrefInstance.of(sigma, blocks)


# ---------------------------------------------------------------------------
# Gadget matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetLayout:
    """0-based positions of the labeled rows and columns"""

    n: int
    hearts: int
    sharps: int

    def spade(self, k: int) -> int:
        return k - 1

    def diamond(self, eta: int) -> int:
        return SPADES + eta - 1

    def heart(self, v: int) -> int:
        return SPADES + self.n + v - 1

    def natural(self, t: int) -> int:
        return t - 1

    def sharp(self, u: int) -> int:
        return NATURALS + u - 1

    @property
    def rows(self) -> int:
        return SPADES + self.n + self.hearts

    @property
    def cols(self) -> int:
        return NATURALS + self.sharps

    def row_labels(self) -> Tuple[str, ...]:
        return (
            tuple(f"{k}♠" for k in range(1, SPADES + 1))
            + tuple(f"{eta}♦" for eta in range(1, self.n + 1))
            + tuple(f"{v}♥" for v in range(1, self.hearts + 1))
        )

    def col_labels(self) -> Tuple[str, ...]:
        return tuple(f"{t}♮" for t in range(1, NATURALS + 1)) + tuple(
            f"{u}♯" for u in range(1, self.sharps + 1)
        )


def layout_for(inst: SsrefInstance) -> GadgetLayout:
    return GadgetLayout(inst.n, inst.hearts, inst.total)


def gamma(inst: SsrefInstance, u: int) -> int:
    if not 1 <= u <= inst.total:
        raise ValueError(f"u = {u} is outside 1..{inst.total}")
    lam = max(i for i in range(inst.m + 1) if u >= inst.sigma[i])
    return 20 * u - 10 * lam - 9


def rho(inst: SsrefInstance, v: int) -> int:
    if not 1 <= v <= inst.hearts:
        raise ValueError(f"v = {v} is outside 1..{inst.hearts}")
    mu = max(i for i in range(inst.m + 1) if v > inst.sigma[i] - i)
    return 20 * v + 10 * mu + 1


def gamma_rho(inst: SsrefInstance, u: int, v: int) -> Tuple[int, int, int]:
    """(gamma_u, rho_v, G)"""
    return gamma(inst, u), rho(inst, v), inst.big_g


def _is_band_start(inst: SsrefInstance, u: int) -> bool:
    return any(u == inst.sigma[mu - 1] + 1 for mu in range(1, inst.m + 1))


def _spade5(inst: SsrefInstance, u: int) -> int:
    return 10 * u + 1 if _is_band_start(inst, u) else 10 * u - 3


def spade_natural_block(n: int, g: int) -> List[List]:
    """The fixed 9 x 10 corner of the gadget"""
    i = INF
    g_prime = -2 * (n + 1) * g
    return [
        [2, 0, 2, 0, 0, 2, 2, 2, i, i],
        [2, 0, 0, 2, 2, 2, 2, 2, i, i],
        [2, 2, 0, 2, 0, 2, 2, 2, i, i],
        [0, 2, 2, 2, 2, 2, 2, 0, i, i],
        [2, 2, 2, 2, 2, 0, 2, 0, i, i],
        [2, 0, 0, 2, 0, 0, 0, 0, i, i],
        [2, 2, 2, 2, 2, 2, 0, i, i, i],
        [i, i, i, i, i, i, i, i, 0, i],
        [i, i, i, i, i, i, i, g_prime, i, 0],
    ]


def spade_witness_block() -> List[List]:
    """Rows 1..9 (spades) of the left witness factor"""
    i = INF
    return [
        [2, 2, 0, 2, 2, 2, i, i],
        [0, 2, 2, 2, 2, 2, i, i],
        [2, 0, 2, 2, 2, 2, i, i],
        [2, 2, i, 0, 2, 2, i, i],
        [i, i, i, i, 0, 2, i, i],
        [0, 0, i, i, 0, 0, i, i],
        [i, i, i, i, i, 0, i, i],
        [i, i, i, i, i, i, 0, i],
        [i, i, i, i, i, i, i, 0],
    ]


def natural_witness_block(n: int, g: int) -> List[List]:
    """Columns 1..10 (naturals) of the right witness factor"""
    i = INF
    g_prime = -2 * (n + 1) * g
    return [
        [2, 0, 0, 2, 2, 2, 2, i, i, i],
        [2, 2, 0, 2, 0, 2, 2, i, i, i],
        [2, 0, 2, 0, 0, 2, 2, i, i, i],
        [0, 2, 2, 2, 2, 2, 2, 0, i, i],
        [2, 2, 2, 2, 2, 0, 2, 0, i, i],
        [2, 2, 2, 2, 2, 2, 0, i, i, i],
        [i, i, i, i, i, i, i, i, 0, i],
        [i, i, i, i, i, i, i, g_prime, i, 0],
    ]


def _heart_sharp(inst: SsrefInstance, v: int, u: int) -> int:
    on_breakpoint = any(
        u == v + mu == inst.sigma[mu] for mu in range(1, inst.m + 1)
    )
    cross = 10 * (u + v) - (11 if on_breakpoint else 10)
    return min(gamma(inst, u), rho(inst, v), cross)


def build_gadget(inst: SsrefInstance) -> TropMatrix:
    """Labeled gadget matrix of shape (sigma-m+n+9) x (sigma+10).

    Raises:
        InadmissibleInstanceError: if two breakpoints are closer than 2
    """
    if not inst.admissible:
        raise InadmissibleInstanceError(
            f"breakpoints {list(inst.sigma)} have neighbours closer than 2"
        )
    n, g = inst.n, inst.big_g
    layout = layout_for(inst)
    rows: List[List] = []

    for k, corner in enumerate(spade_natural_block(n, g), start=1):
        row = list(corner)
        for u in range(1, inst.total + 1):
            nu = inst.nu(u)
            row.append({
                4: 0,
                5: _spade5(inst, u),
                6: 10 * u - 3,
                7: gamma(inst, u),
                8: -2 * g * nu + g,
                9: -2 * g * (n + 1 - nu) + g,
            }.get(k, 2))
        rows.append(row)

    for eta in range(1, n + 1):
        row = [2, 0, 0, 0, 0, 2, 2, -2 * eta * g, 2 * eta * g, 2 * (n + 1 - eta) * g]
        for u in range(1, inst.total + 1):
            row.append(min(gamma(inst, u), g - 2 * g * abs(eta - inst.nu(u))))
        rows.append(row)

    for v in range(1, inst.hearts + 1):
        row = [2, 2, 2, 2, 2, 2, 0, rho(inst, v), INF, INF]
        for u in range(1, inst.total + 1):
            row.append(_heart_sharp(inst, v, u))
        rows.append(row)

    logger.debug("gadget for sigma=%s, n=%d: %dx%d", inst.sigma, n, layout.rows, layout.cols)
    return TropMatrix.from_rows(rows, layout.row_labels(), layout.col_labels())


def witness_from_splitting(inst: SsrefInstance, w: SplittingWitness) -> Factorization:
    """Inner-dimension-8 factorization of build_gadget(inst) from a split"""
    checked = splitting_witness(inst, w.phi1, w.phi2)
    if checked.heads != w.heads:
        raise InvalidWitnessError(f"band heads {w.heads} should be {checked.heads}")
    n, g = inst.n, inst.big_g

    left: List[List] = [list(row) for row in spade_witness_block()]
    for eta in range(1, n + 1):
        left.append(
            [0 if eta in w.phi1 else INF, 0 if eta in w.phi2 else INF,
             0, INF, INF, 2, 2 * eta * g, 2 * (n + 1 - eta) * g]
        )
    for v in range(1, inst.hearts + 1):
        mu = inst.heart_band(v)
        head_row = w.heads[mu - 1] - mu + 1
        head_block = inst.nu(w.heads[mu - 1])
        pair = []
        for chi in (1, 2):
            if v < head_row:
                pair.append(10 * v - 7)
            elif v > head_row:
                pair.append(10 * v - 8)
            else:
                pair.append(10 * v - 8 if head_block in w.part(chi) else 10 * v - 7)
        r = rho(inst, v)
        left.append(pair + [INF, r, r, 0, INF, INF])

    right: List[List] = [list(row) for row in natural_witness_block(n, g)]
    for t in range(GADGET_RANK):
        for u in range(1, inst.total + 1):
            right[t].append(_right_sharp(inst, w, t + 1, u))

    layout = layout_for(inst)
    f = Factorization(
        TropMatrix.from_rows(left, row_labels=layout.row_labels()),
        TropMatrix.from_rows(right, col_labels=layout.col_labels()),
    )
    if not verify_product(build_gadget(inst), f):
        raise TropError("split witness does not reproduce the gadget")
    return f


def _right_sharp(inst: SsrefInstance, w: SplittingWitness, t: int, u: int):
    g, nu = inst.big_g, inst.nu(u)
    if t in (1, 2):
        if nu in w.part(t):
            return gamma(inst, u)
        mu = inst.band_of(u)
        head = w.heads[mu - 1]
        if head < u < inst.sigma[mu]:
            return 10 * u - 2
        return 10 * u - 3
    return {
        3: gamma(inst, u),
        4: 0,
        5: _spade5(inst, u),
        6: gamma(inst, u),
        7: -2 * nu * g + g,
        8: -2 * (inst.n + 1 - nu) * g + g,
    }[t]


def gadget_for_k(inst: SsrefInstance, k: int) -> TropMatrix:
    """Finite matrix with factor rank <= k iff the instance splits (k >= 8)"""
    if k < GADGET_RANK:
        raise ValueError(f"k must be at least {GADGET_RANK}, got {k}")
    a = build_gadget(inst)
    for _ in range(k - GADGET_RANK):
        a = border(a)
    normalized, _ = scale_normalize(a)
    return eliminate_infinity(normalized)


def gadget_witness_for_k(inst: SsrefInstance, w: SplittingWitness, k: int) -> Factorization:
    """Inner-dimension-k factorization of gadget_for_k(inst, k)"""
    if k < GADGET_RANK:
        raise ValueError(f"k must be at least {GADGET_RANK}, got {k}")
    a = build_gadget(inst)
    f = witness_from_splitting(inst, w)
    for _ in range(k - GADGET_RANK):
        a, f = border(a), border_witness(f)
    normalized, scaling = scale_normalize(a)
    return eliminate_witness(normalized, scaling.transport(f))


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def _int_tokens(text: str, line: int) -> List[int]:
    values = []
    for match in re.finditer(r"\S+", text):
        token = match.group()
        try:
            values.append(int(token))
        except ValueError:
            raise InstanceFormatError(f"expected an integer, got {token!r}", line, match.start() + 1)
    return values


def _lines(text: str, expected: int, header: int) -> List[str]:
    lines = text.splitlines()
    body = lines[header:]
    while len(body) > expected and not body[-1].strip():
        body.pop()
    if len(body) > expected:
        raise InstanceFormatError(f"expected {expected} lines after the header", header + expected + 1, 1)
    return body + [""] * (expected - len(body))


def parse_split_instance(text: str) -> SplitInstance:
    """'n m' then m lines, each listing one subset"""
    lines = text.splitlines()
    if not lines:
        raise InstanceFormatError("empty input", 1, 1)
    header = _int_tokens(lines[0], 1)
    if len(header) != 2:
        raise InstanceFormatError("header must be 'n m'", 1, 1)
    n, m = header
    body = _lines(text, m, 1)
    subsets = [_int_tokens(line, number) for number, line in enumerate(body, start=2)]
    try:
        return SplitInstance.of(n, subsets)
    except ValueError as e:
        raise InstanceFormatError(str(e), 1, 1)


def parse_ssref_instance(text: str) -> SsrefInstance:
    """'m n', the breakpoints sigma_1..sigma_m, then n block lines"""
    lines = text.splitlines()
    if not lines:
        raise InstanceFormatError("empty input", 1, 1)
    header = _int_tokens(lines[0], 1)
    if len(header) != 2:
        raise InstanceFormatError("header must be 'm n'", 1, 1)
    m, n = header
    body = _lines(text, n + 1, 1)
    sigma = _int_tokens(body[0], 2)
    if len(sigma) != m:
        raise InstanceFormatError(f"expected {m} breakpoints, found {len(sigma)}", 2, 1)
    blocks = [_int_tokens(line, number) for number, line in enumerate(body[1:], start=3)]
    try:
        return SsrefInstance.of([0] + sigma, blocks)
    except ValueError as e:
        raise InstanceFormatError(str(e), 1, 1)


def format_split_instance(s: SplitInstance) -> str:
    lines = [f"{s.n} {s.m}"] + [" ".join(str(x) for x in subset) for subset in s.subsets]
    return "\n".join(lines) + "\n"


def format_ssref_instance(inst: SsrefInstance) -> str:
    lines = [f"{inst.m} {inst.n}", " ".join(str(x) for x in inst.sigma[1:])]
    lines += [" ".join(str(x) for x in sorted(block)) for block in inst.blocks]
    return "\n".join(lines) + "\n"


def read_instance(path: Union[str, Path], fmt: str = "split") -> SsrefInstance:
    """Load an instance file as band form, converting SET SPLITTING input"""
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "split":
        return split_to_ssref(parse_split_instance(text))
    if fmt == "ssref":
        return parse_ssref_instance(text)
    raise ValueError(f"unknown instance format {fmt!r}")
