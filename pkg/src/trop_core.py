#!/usr/bin/env python3
"""
Exact tropical (min-plus) arithmetic for the troprank toolkit.

Finite values are ``fractions.Fraction`` instances, so nothing is ever
rounded. The formal infinity ``INF`` is the additive identity of the
semiring (``min``) and absorbs under tropical multiplication (``+``).
"""

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

# Largest square size enumerated by the permanent and tropical rank.
ENUMERATION_CAP = 9


class TropError(Exception):
    """Base class for every error raised by the toolkit"""


class DimensionError(TropError, ValueError):
    """Shapes of the operands do not fit together"""


class ImproperMatrixError(TropError, ValueError):
    """A row or column consists of infinite entries only"""


class EnumerationCapError(TropError):
    """An exhaustive enumeration would exceed its configured cap"""


class MatrixFormatError(TropError, ValueError):
    """Text input does not follow the matrix file format"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")


class _Infinity:
    """The formal +inf of the extended tropical semiring (a singleton)"""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("troprank-infinity")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

TropValue = Union[Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def to_trop(x) -> TropValue:
    """Coerce ints, Fractions, 'p/q' strings and 'inf' into a TropValue.

    Floats are rejected: every finite value must be exact.
    """
    if x is INF:
        return INF
    if isinstance(x, bool):
        raise TypeError("booleans are not tropical values")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        token = x.strip()
        if token == "inf":
            return INF
        return Fraction(token)
    raise TypeError(f"cannot use {type(x).__name__} as an exact tropical value")


def trop_add(a: TropValue, b: TropValue) -> TropValue:
    """Tropical sum: the minimum"""
    return b if a > b else a


def trop_mul(a: TropValue, b: TropValue) -> TropValue:
    """Tropical product: ordinary sum, with INF absorbing"""
    if a is INF or b is INF:
        return INF
    return a + b


def format_value(x: TropValue) -> str:
    if x is INF:
        return "inf"
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TropMatrix:
    """Dense matrix over the rationals extended by INF.

    Labels are presentation only; equality compares entries.
    """

    entries: Tuple[Tuple[TropValue, ...], ...]
    row_labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    col_labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionError("a tropical matrix needs at least one row and one column")
        width = len(self.entries[0])
        for i, row in enumerate(self.entries):
            if len(row) != width:
                raise DimensionError(
                    f"row {i + 1} has {len(row)} entries, expected {width}"
                )
        if self.row_labels is not None and len(self.row_labels) != len(self.entries):
            raise DimensionError("row label count does not match the row count")
        if self.col_labels is not None and len(self.col_labels) != width:
            raise DimensionError("column label count does not match the column count")

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Iterable],
        row_labels: Optional[Sequence[str]] = None,
        col_labels: Optional[Sequence[str]] = None,
    ) -> "TropMatrix":
        entries = tuple(tuple(to_trop(x) for x in row) for row in rows)
        return cls(
            entries,
            tuple(row_labels) if row_labels is not None else None,
            tuple(col_labels) if col_labels is not None else None,
        )

    @classmethod
    def filled(cls, rows: int, cols: int, value=INF) -> "TropMatrix":
        value = to_trop(value)
        return cls(tuple(tuple(value for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, off: TropValue = INF) -> "TropMatrix":
        """Tropical identity: 0 on the diagonal, ``off`` elsewhere"""
        off = to_trop(off)
        zero = Fraction(0)
        return cls(
            tuple(tuple(zero if i == j else off for j in range(n)) for i in range(n))
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> TropValue:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[TropValue, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[TropValue, ...]:
        return tuple(row[j] for row in self.entries)

    def values(self) -> Iterable[TropValue]:
        for row in self.entries:
            yield from row

    def transpose(self) -> "TropMatrix":
        return TropMatrix(
            tuple(zip(*self.entries)), self.col_labels, self.row_labels
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "TropMatrix":
        return TropMatrix(
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
            tuple(self.row_labels[i] for i in rows) if self.row_labels else None,
            tuple(self.col_labels[j] for j in cols) if self.col_labels else None,
        )

    def permute(self, rows: Sequence[int], cols: Sequence[int]) -> "TropMatrix":
        if sorted(rows) != list(range(self.rows)) or sorted(cols) != list(range(self.cols)):
            raise DimensionError("permute needs a permutation of every row and column")
        return self.submatrix(rows, cols)

    def delete_column(self, j: int) -> "TropMatrix":
        return self.submatrix(range(self.rows), [c for c in range(self.cols) if c != j])

    def is_finite(self) -> bool:
        return all(x is not INF for x in self.values())

    def infinite_rows(self) -> List[int]:
        return [i for i, row in enumerate(self.entries) if all(x is INF for x in row)]

    def infinite_columns(self) -> List[int]:
        return [
            j for j in range(self.cols) if all(row[j] is INF for row in self.entries)
        ]

    def is_proper(self) -> bool:
        return not self.infinite_rows() and not self.infinite_columns()

    def max_finite(self) -> Optional[Fraction]:
        finite = [x for x in self.values() if x is not INF]
        return max(finite) if finite else None

    def min_finite(self) -> Optional[Fraction]:
        finite = [x for x in self.values() if x is not INF]
        return min(finite) if finite else None

    def map(self, fn) -> "TropMatrix":
        return TropMatrix(
            tuple(tuple(fn(x) for x in row) for row in self.entries),
            self.row_labels,
            self.col_labels,
        )

    def with_labels(self, row_labels=None, col_labels=None) -> "TropMatrix":
        return TropMatrix(
            self.entries,
            tuple(row_labels) if row_labels is not None else None,
            tuple(col_labels) if col_labels is not None else None,
        )

    def row_index(self, label: str) -> int:
        if self.row_labels is None:
            raise KeyError(label)
        return self.row_labels.index(label)

    def col_index(self, label: str) -> int:
        if self.col_labels is None:
            raise KeyError(label)
        return self.col_labels.index(label)

    def entry(self, row_label: str, col_label: str) -> TropValue:
        """Look an entry up by its row and column labels"""
        return self.entries[self.row_index(row_label)][self.col_index(col_label)]

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True)
class Factorization:
    """A pair (B, C) whose tropical product is claimed to equal a target"""

    left: TropMatrix
    right: TropMatrix

    def __post_init__(self):
        if self.left.cols != self.right.rows:
            raise DimensionError(
                f"inner dimensions differ: left is {self.left.rows}x{self.left.cols}, "
                f"right is {self.right.rows}x{self.right.cols}"
            )

    @property
    def inner_dim(self) -> int:
        return self.left.cols

    def product(self) -> TropMatrix:
        return trop_mat_mul(self.left, self.right)

    def transpose(self) -> "Factorization":
        """(B, C) of A becomes (C^T, B^T) of A^T"""
        return Factorization(self.right.transpose(), self.left.transpose())

    def __str__(self) -> str:
        return f"B =\n{format_matrix(self.left)}\nC =\n{format_matrix(self.right)}"


@dataclass(frozen=True)
class Scaling:
    """Row and column offsets; applying gives a_ij + row_i + col_j"""

    row_offsets: Tuple[Fraction, ...]
    col_offsets: Tuple[Fraction, ...]

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Scaling":
        return cls((Fraction(0),) * rows, (Fraction(0),) * cols)

    def _check(self, rows: int, cols: int):
        if len(self.row_offsets) != rows or len(self.col_offsets) != cols:
            raise DimensionError(
                f"scaling is {len(self.row_offsets)}x{len(self.col_offsets)}, "
                f"matrix is {rows}x{cols}"
            )

    def apply(self, a: TropMatrix) -> TropMatrix:
        self._check(a.rows, a.cols)
        return TropMatrix(
            tuple(
                tuple(
                    trop_mul(x, self.row_offsets[i] + self.col_offsets[j])
                    for j, x in enumerate(row)
                )
                for i, row in enumerate(a.entries)
            ),
            a.row_labels,
            a.col_labels,
        )

    def inverse(self) -> "Scaling":
        return Scaling(
            tuple(-x for x in self.row_offsets), tuple(-x for x in self.col_offsets)
        )

    def transport(self, f: Factorization) -> Factorization:
        """Factorization of a  ->  factorization of apply(a)"""
        self._check(f.left.rows, f.right.cols)
        left = TropMatrix(
            tuple(
                tuple(trop_mul(x, self.row_offsets[i]) for x in row)
                for i, row in enumerate(f.left.entries)
            )
        )
        right = TropMatrix(
            tuple(
                tuple(trop_mul(x, self.col_offsets[j]) for j, x in enumerate(row))
                for row in f.right.entries
            )
        )
        return Factorization(left, right)


def trop_mat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Min-plus product: result_ij = min_t (a_it + b_tj)"""
    if a.cols != b.rows:
        raise DimensionError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}"
        )
    columns = [b.column(j) for j in range(b.cols)]
    entries = []
    for row in a.entries:
        out = []
        for col in columns:
            best = INF
            for x, y in zip(row, col):
                if x is INF or y is INF:
                    continue
                s = x + y
                if best is INF or s < best:
                    best = s
            out.append(best)
        entries.append(tuple(out))
    return TropMatrix(tuple(entries), a.row_labels, b.col_labels)


def verify_product(target: TropMatrix, f: Factorization) -> bool:
    """True iff B (x) C equals the target exactly"""
    if f.left.rows != target.rows or f.right.cols != target.cols:
        raise DimensionError(
            f"factorization yields {f.left.rows}x{f.right.cols}, "
            f"target is {target.rows}x{target.cols}"
        )
    return trop_mat_mul(f.left, f.right).entries == target.entries


def scale_normalize(a: TropMatrix) -> Tuple[TropMatrix, Scaling]:
    """Subtract row minima, then column minima.

    The result has minimum 0 in every row and every column.

    Raises:
        ImproperMatrixError: if a row or column is entirely INF
    """
    bad_rows = a.infinite_rows()
    if bad_rows:
        raise ImproperMatrixError(f"row {bad_rows[0] + 1} has no finite entry")
    bad_cols = a.infinite_columns()
    if bad_cols:
        raise ImproperMatrixError(f"column {bad_cols[0] + 1} has no finite entry")

    row_offsets = tuple(-min(x for x in row if x is not INF) for row in a.entries)
    col_offsets = tuple(
        -min(
            a.entries[i][j] + row_offsets[i]
            for i in range(a.rows)
            if a.entries[i][j] is not INF
        )
        for j in range(a.cols)
    )
    scaling = Scaling(row_offsets, col_offsets)
    return scaling.apply(a), scaling


def _check_cap(n: int, cap: Optional[int]):
    limit = ENUMERATION_CAP if cap is None else cap
    if n > limit:
        raise EnumerationCapError(
            f"enumeration cap exceeded: size {n} is above the cap of {limit}"
        )


def tropical_permanent(d: TropMatrix, cap: Optional[int] = None) -> Tuple[TropValue, bool]:
    """Minimum over all permutations of the selected entry sums.

    Returns:
        (value, attained_twice) where attained_twice says whether at least
        two permutations reach the minimum
    """
    if d.rows != d.cols:
        raise DimensionError(f"permanent needs a square matrix, got {d.rows}x{d.cols}")
    _check_cap(d.rows, cap)

    best = INF
    hits = 0
    for perm in itertools.permutations(range(d.rows)):
        total = Fraction(0)
        for i, j in enumerate(perm):
            total = trop_mul(total, d.entries[i][j])
            if total is INF:
                break
        if total < best:
            best, hits = total, 1
        elif total == best:
            hits += 1
    return best, hits >= 2


def tropical_rank(a: TropMatrix, cap: Optional[int] = None) -> int:
    """Largest r with a nonsingular r x r submatrix.

    A submatrix counts as nonsingular only when its permanent is finite
    and attained by exactly one permutation.
    """
    size = min(a.rows, a.cols)
    _check_cap(size, cap)
    for r in range(size, 0, -1):
        for rows in itertools.combinations(range(a.rows), r):
            for cols in itertools.combinations(range(a.cols), r):
                value, twice = tropical_permanent(a.submatrix(rows, cols), cap)
                if value is not INF and not twice:
                    return r
    return 0


def factor_rank_le1(a: TropMatrix) -> Optional[Factorization]:
    """Rank-1 test: a_ij = b_i + c_j under the INF conventions"""
    dead = set(a.infinite_rows())
    live_rows = [i for i in range(a.rows) if i not in dead]
    if not live_rows:
        left = TropMatrix.filled(a.rows, 1, INF)
        right = TropMatrix.filled(1, a.cols, 0)
        return Factorization(left, right)

    i0 = live_rows[0]
    j0 = next(j for j, x in enumerate(a.entries[i0]) if x is not INF)
    pivot = a.entries[i0][j0]
    left = TropMatrix(
        tuple(
            (INF if a.entries[i][j0] is INF else a.entries[i][j0] - pivot,)
            for i in range(a.rows)
        )
    )
    right = TropMatrix((tuple(a.entries[i0]),))
    f = Factorization(left, right)
    return f if verify_product(a, f) else None


def trivial_factorization(a: TropMatrix, k: int) -> Factorization:
    """Witness of inner dimension k for any k >= min(m, n).

    The short side gets a tropical identity; the spare slots are
    dominated so they never win a minimum.
    """
    m, n = a.shape
    if k < min(m, n):
        raise ValueError(f"inner dimension {k} is below min({m}, {n})")
    if a.is_finite():
        top, bottom = a.max_finite(), a.min_finite()
        off = top - bottom + 1
        pad = top
    else:
        off = pad = INF

    zero = Fraction(0)
    if n <= k:
        left = TropMatrix(
            tuple(
                tuple(a.entries[i][t] if t < n else pad for t in range(k))
                for i in range(m)
            )
        )
        right = TropMatrix(
            tuple(
                tuple(zero if t == j else off for j in range(n)) for t in range(k)
            )
        )
    else:
        left = TropMatrix(
            tuple(tuple(zero if t == i else off for t in range(k)) for i in range(m))
        )
        right = TropMatrix(
            tuple(
                tuple(a.entries[t][j] if t < m else pad for j in range(n))
                for t in range(k)
            )
        )
    return Factorization(left, right)


def pad_factorization(target: TropMatrix, f: Factorization, k: int) -> Factorization:
    """Raise the inner dimension of f to k with slots that never win"""
    if k < f.inner_dim:
        raise ValueError(f"cannot pad inner dimension {f.inner_dim} down to {k}")
    extra = k - f.inner_dim
    if extra == 0:
        return f
    zero = Fraction(0)
    col_pad = []
    for j in range(target.cols):
        column = target.column(j)
        col_pad.append(INF if any(x is INF for x in column) else max(column))
    left = TropMatrix(tuple(row + (zero,) * extra for row in f.left.entries))
    right = TropMatrix(f.right.entries + tuple(tuple(col_pad) for _ in range(extra)))
    return Factorization(left, right)


def finitize(target: TropMatrix, f: Factorization) -> Factorization:
    """Replace INF entries of B and C by one large real.

    Valid whenever the target is finite: the replaced terms then stay
    strictly above every target entry.
    """
    if not target.is_finite():
        raise ValueError("finitize needs a finite target")
    if not verify_product(target, f):
        raise ValueError("factorization does not multiply to the target")
    big = abs(target.max_finite()) + 1
    for part in (f.left, f.right):
        low = part.min_finite()
        if low is not None:
            big += abs(low)

    def fill(x):
        return big if x is INF else x

    return Factorization(f.left.map(fill), f.right.map(fill))


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"^(inf|[+-]?\d+(/\d+)?)$")


def _parse_token(token: str, line: int, column: int) -> TropValue:
    if not _TOKEN.match(token):
        raise MatrixFormatError(f"bad entry {token!r}", line, column)
    if token == "inf":
        return INF
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise MatrixFormatError(f"zero denominator in {token!r}", line, column)


def _tokens(text: str) -> List[Tuple[int, int, str]]:
    """Split a line into (start column, token) pairs, columns 1-based"""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", text)]


def parse_matrix(text: str) -> TropMatrix:
    """Parse the 'm n' header plus m rows of n tokens"""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MatrixFormatError("empty input", 1, 1)

    header = _tokens(lines[0])
    if len(header) != 2 or not all(tok.isdigit() for _, tok in header):
        raise MatrixFormatError("header must be two positive integers 'm n'", 1, 1)
    m, n = (int(tok) for _, tok in header)
    if m < 1 or n < 1:
        raise MatrixFormatError("matrix dimensions must be positive", 1, 1)
    if len(lines) - 1 != m:
        line = m + 2 if len(lines) - 1 > m else len(lines) + 1
        raise MatrixFormatError(f"expected {m} rows, found {len(lines) - 1}", line, 1)

    rows = []
    for offset, text_line in enumerate(lines[1:], start=2):
        tokens = _tokens(text_line)
        if len(tokens) != n:
            column = tokens[n][0] if len(tokens) > n else len(text_line) + 1
            raise MatrixFormatError(
                f"expected {n} entries, found {len(tokens)}", offset, column
            )
        rows.append(tuple(_parse_token(tok, offset, col) for col, tok in tokens))
    return TropMatrix(tuple(rows))


def format_matrix(a: TropMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    for row in a.entries:
        lines.append(" ".join(format_value(x) for x in row))
    return "\n".join(lines) + "\n"


def read_matrix(path: Union[str, Path]) -> TropMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def write_matrix(a: TropMatrix, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_matrix(a), encoding="utf-8")
    return path
