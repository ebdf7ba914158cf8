"""Exact sparse linear algebra over ℚ, the truncated Novikov field and bulk rings.

Matrices are handed in as sparse columns ``{row: RingElement}``. When every
entry is a T^0 constant the work is delegated to sympy's sparse ``SDM``
over ``QQ``. Entries without bulk monomials go through a Gauss-Jordan pass
that pivots on the entry of least T-valuation in each column and tracks the
worst precision it touched.

Entries with bulk variables or symbols live in a local ring: an element is
a unit exactly when its bulk-constant part is nonzero, and the bulk ideal
is nilpotent at the ring's bulk-degree cap. Elimination there pivots only
on units. When a nonzero block of bulk-ideal entries is left over, the
image is not free and the query raises ``NotFree``.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices.sdm import SDM

from nchodge.config import get_settings
from nchodge.errors import InversionAtZeroPrecision, NotFree, PrecisionExhausted, TooLarge
from nchodge.scalars.novikov import NovikovScalar
from nchodge.scalars.ring import BulkRingDescriptor, RingElement

logger = logging.getLogger(__name__)

Column = Mapping[int, RingElement]
Row = dict[int, NovikovScalar]
ElementRow = dict[int, RingElement]


@dataclass
class Echelon:
    """
    Reduced row echelon form of a matrix.

    Row ``r`` of ``rows`` has its leading 1 in column ``pivots[r]`` and zeros
    in every other pivot column. ``consistent`` is False when a column at or
    past the pivot limit is not in the span of the columns before it.
    """

    pivots: list[int]
    rows: dict[int, ElementRow] = field(default_factory=dict)
    n_cols: int = 0
    precision: Fraction | None = None
    exact_path: bool = True
    over_bulk: bool = False
    consistent: bool = True

    @property
    def rank(self) -> int:
        return len(self.pivots)


@dataclass
class RankResult:
    """Rank over the Novikov field (or of a free image over a bulk ring), valid at the reported precision."""

    rank: int
    precision: Fraction | None = None
    exact_path: bool = True

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "precision": None if self.precision is None else str(self.precision),
            "exact_path": self.exact_path,
        }


class _PrecisionWatch:
    """Lowest precision touched during elimination, checked against the floor."""

    def __init__(self) -> None:
        self.floor = get_settings().floor
        self.worst: Fraction | None = None

    def note(self, precision: Fraction | None) -> None:
        if precision is None:
            return
        self.worst = precision if self.worst is None else min(self.worst, precision)
        if self.worst < self.floor:
            raise PrecisionExhausted(
                f"elimination precision fell to T^{self.worst}, below the floor T^{self.floor}"
            )


def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _lower(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    return a if b is None else min(a, b)


def _entry_rows(columns: Sequence[Column]) -> tuple[dict[int, ElementRow], BulkRingDescriptor | None]:
    """Transpose columns into sparse rows, dropping zero entries."""
    rows: dict[int, ElementRow] = {}
    ring: BulkRingDescriptor | None = None
    for j, column in enumerate(columns):
        for i, entry in column.items():
            if entry.is_zero():
                continue
            if ring is None:
                ring = entry.ring
            rows.setdefault(i, {})[j] = entry
    return rows, ring


def _scalars(rows: dict[int, ElementRow]) -> dict[int, Row]:
    return {i: {j: e.constant_scalar() for j, e in row.items()} for i, row in rows.items()}


def _wrap(ring: BulkRingDescriptor, rows: dict[int, Row]) -> dict[int, ElementRow]:
    return {r: {j: RingElement.from_scalar(ring, s) for j, s in row.items()} for r, row in rows.items()}


def _over(ring: BulkRingDescriptor, value: RingElement) -> RingElement:
    """Rewrap a bulk-free value over the caller's ring."""
    if value.is_scalar():
        return RingElement.from_scalar(ring, value.constant_scalar())
    return value


def _check_size(n_rows: int, n_cols: int) -> None:
    cap = get_settings().max_complex_dimension
    size = max(n_rows, n_cols)
    if size > cap:
        raise TooLarge("matrix", size, cap)


def is_unit(entry: RingElement) -> bool:
    """True if the bulk-constant part is nonzero."""
    return not entry.constant_scalar().is_zero()


def invert_unit(entry: RingElement) -> RingElement:
    """
    Inverse of ``c + n`` with ``c`` a nonzero Novikov scalar and ``n`` in the bulk ideal.

    Sums ``c^-1 * (-n c^-1)^k`` until the bulk-degree cap kills the terms.

    Raises:
        NotFree: If the bulk-constant part is zero
        PrecisionExhausted: If ``c`` cannot be inverted at its precision
    """
    ring = entry.ring
    constant = entry.constant_scalar()
    if constant.is_zero():
        raise NotFree(f"{entry} lies in the bulk ideal and has no inverse")
    try:
        c_inverse = RingElement.from_scalar(
            ring, constant.invert(get_settings().inverse_relative_precision)
        )
    except InversionAtZeroPrecision as e:
        raise PrecisionExhausted(str(e)) from e
    step = -((entry - RingElement.from_scalar(ring, constant)) * c_inverse)
    inverse = term = c_inverse
    for _ in range(ring.truncation.bulk_degree_max):
        term = term * step
        if term.is_zero():
            break
        inverse = inverse + term
    return inverse


def _rref_rational(rows: dict[int, Row], n_rows: int, n_cols: int) -> tuple[dict, list[int]]:
    sdm = SDM(
        {i: {j: _to_qq(s.rational_value()) for j, s in row.items()} for i, row in rows.items()},
        (max(n_rows, 1), n_cols),
        QQ,
    )
    reduced, pivots = sdm.rref()
    converted = {
        r: {j: NovikovScalar.constant(_from_qq(v)) for j, v in row.items()}
        for r, row in reduced.items()
    }
    return converted, list(pivots)


def _rref_novikov(rows: dict[int, Row], n_cols: int) -> tuple[dict, list[int], Fraction | None]:
    """Gauss-Jordan elimination with least-valuation pivoting per column."""
    relative = get_settings().inverse_relative_precision
    watch = _PrecisionWatch()
    work = [dict(row) for _, row in sorted(rows.items())]
    pivots: list[int] = []

    top = 0
    for column in range(n_cols):
        candidates = [i for i in range(top, len(work)) if column in work[i]]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (work[i][column].valuation, i))
        work[top], work[best] = work[best], work[top]
        pivot_row = work[top]
        try:
            inverse = pivot_row[column].invert(relative)
        except InversionAtZeroPrecision as e:
            raise PrecisionExhausted(str(e)) from e
        normalized: Row = {}
        for j, value in pivot_row.items():
            scaled = NovikovScalar.one() if j == column else value * inverse
            watch.note(scaled.precision)
            if not scaled.is_zero():
                normalized[j] = scaled
        work[top] = normalized
        for i, row in enumerate(work):
            if i == top or column not in row:
                continue
            factor = row[column]
            updated = dict(row)
            del updated[column]
            for j, value in normalized.items():
                if j == column:
                    continue
                delta = factor * value
                current = updated[j] - delta if j in updated else -delta
                watch.note(current.precision)
                if current.is_zero():
                    updated.pop(j, None)
                else:
                    updated[j] = current
            work[i] = updated
        pivots.append(column)
        top += 1
    reduced = {r: work[r] for r in range(top)}
    return reduced, pivots, watch.worst


def _rref_bulk(
    rows: dict[int, ElementRow], n_cols: int, pivot_limit: int
) -> tuple[dict[int, ElementRow], list[int], list[ElementRow], Fraction | None]:
    """
    Gauss-Jordan elimination over a bulk ring, pivoting on units left to right.

    Columns without a unit entry are skipped; their entries stay in the
    bulk ideal under the remaining row operations.

    Returns:
        Pivot rows, pivot columns, leftover rows and the worst precision

    Raises:
        NotFree: If a leftover row has a nonzero entry before the pivot limit
    """
    watch = _PrecisionWatch()
    work = [dict(row) for _, row in sorted(rows.items())]
    pivots: list[int] = []

    top = 0
    for column in range(min(n_cols, pivot_limit)):
        candidates = [
            i for i in range(top, len(work)) if column in work[i] and is_unit(work[i][column])
        ]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (work[i][column].constant_scalar().valuation, i))
        work[top], work[best] = work[best], work[top]
        inverse = invert_unit(work[top][column])
        normalized: ElementRow = {}
        for j, value in work[top].items():
            scaled = RingElement.one(value.ring) if j == column else inverse * value
            watch.note(scaled.precision())
            if not scaled.is_zero():
                normalized[j] = scaled
        work[top] = normalized
        for i, row in enumerate(work):
            if i == top or column not in row:
                continue
            factor = row[column]
            updated = dict(row)
            del updated[column]
            for j, value in normalized.items():
                if j == column:
                    continue
                delta = factor * value
                current = updated[j] - delta if j in updated else -delta
                watch.note(current.precision())
                if current.is_zero():
                    updated.pop(j, None)
                else:
                    updated[j] = current
            work[i] = updated
        pivots.append(column)
        top += 1

    leftover = work[top:]
    stuck = sorted({j for row in leftover for j in row if j < pivot_limit})
    if stuck:
        raise NotFree(
            f"columns {stuck[:5]} keep nonzero bulk-ideal entries after elimination; "
            "the image is not free over the bulk ring"
        )
    return {r: work[r] for r in range(top)}, pivots, leftover, watch.worst


def echelon(columns: Sequence[Column], n_rows: int, pivot_limit: int | None = None) -> Echelon:
    """
    Reduced row echelon form of the matrix with the given columns.

    Args:
        columns: Sparse columns
        n_rows: Number of rows
        pivot_limit: Columns from this index on are right-hand sides; defaults
            to every column

    Raises:
        TooLarge: If the matrix exceeds the configured dimension cap
        PrecisionExhausted: If elimination loses precision below the floor
        NotFree: If the entries involve bulk monomials and the image is not free
    """
    n_cols = len(columns)
    _check_size(n_rows, n_cols)
    limit = n_cols if pivot_limit is None else pivot_limit
    rows, ring = _entry_rows(columns)
    precision = min(
        (p for row in rows.values() for e in row.values() if (p := e.precision()) is not None),
        default=None,
    )
    if ring is None:
        return Echelon(pivots=[], n_cols=n_cols, precision=precision)

    entries = [e for row in rows.values() for e in row.values()]
    if all(e.is_rational() for e in entries):
        reduced, pivots = _rref_rational(_scalars(rows), n_rows, n_cols)
        consistent = all(p < limit for p in pivots)
        return Echelon(pivots, _wrap(ring, reduced), n_cols, precision, True, False, consistent)

    if all(e.is_scalar() for e in entries):
        reduced, pivots, worst = _rref_novikov(_scalars(rows), n_cols)
        logger.debug("Novikov elimination: %d columns, rank %d", n_cols, len(pivots))
        consistent = all(p < limit for p in pivots)
        return Echelon(
            pivots, _wrap(ring, reduced), n_cols, _lower(precision, worst), False, False, consistent
        )

    bulk_rows, pivots, leftover, worst = _rref_bulk(rows, n_cols, limit)
    logger.debug("bulk-ring elimination: %d columns, rank %d", n_cols, len(pivots))
    consistent = not any(leftover)
    return Echelon(pivots, bulk_rows, n_cols, _lower(precision, worst), False, True, consistent)


def rank(columns: Sequence[Column], n_rows: int) -> RankResult:
    """Rank of the matrix with the given columns."""
    result = echelon(columns, n_rows)
    return RankResult(result.rank, result.precision, result.exact_path)


def independent_columns(columns: Sequence[Column], n_rows: int) -> list[int]:
    """Indices of the greedy left-to-right maximal independent set of columns."""
    return list(echelon(columns, n_rows).pivots)


def kernel(
    ring: BulkRingDescriptor, columns: Sequence[Column], n_rows: int
) -> list[dict[int, RingElement]]:
    """Basis of the kernel, one vector ``{column index: coefficient}`` per free column."""
    reduced = echelon(columns, n_rows)
    pivot_set = set(reduced.pivots)
    basis: list[dict[int, RingElement]] = []
    for j in range(reduced.n_cols):
        if j in pivot_set:
            continue
        vector = {j: RingElement.one(ring)}
        for r, row in reduced.rows.items():
            if j in row:
                vector[reduced.pivots[r]] = _over(ring, -row[j])
        basis.append({k: v for k, v in vector.items() if not v.is_zero()})
    return basis


def solve(
    ring: BulkRingDescriptor,
    columns: Sequence[Column],
    n_rows: int,
    target: Column,
) -> dict[int, RingElement] | None:
    """
    Coefficients ``x`` with ``sum_j x_j * column_j = target``, or None.

    Free variables are set to zero, so the answer is the particular
    solution read off the reduced augmented matrix.
    """
    last = len(columns)
    reduced = echelon(list(columns) + [target], n_rows, pivot_limit=last)
    if not reduced.consistent:
        return None
    solution: dict[int, RingElement] = {}
    for r, row in reduced.rows.items():
        if last in row:
            value = _over(ring, row[last])
            if not value.is_zero():
                solution[reduced.pivots[r]] = value
    return solution


def in_span(columns: Sequence[Column], n_rows: int, target: Column) -> bool:
    """True if the target is a combination of the columns."""
    if not any(not v.is_zero() for v in target.values()):
        return True
    return echelon(list(columns) + [target], n_rows, pivot_limit=len(columns)).consistent


def determinant_valuation(matrix: Sequence[Sequence[RingElement]]) -> Fraction | None:
    """
    T-valuation of the bulk-constant part of the determinant of a square matrix.

    Without bulk monomials this is the T-valuation of the determinant. None
    means the matrix is not invertible over the ring: its determinant lies
    in the bulk ideal (or is zero).
    """
    n = len(matrix)
    work = {
        i: {j: matrix[i][j] for j in range(n) if not matrix[i][j].is_zero()} for i in range(n)
    }
    valuation = Fraction(0)
    used: set[int] = set()
    for column in range(n):
        candidates = [
            i for i, row in work.items() if i not in used and column in row and is_unit(row[column])
        ]
        if not candidates:
            return None
        best = min(candidates, key=lambda i: (work[i][column].constant_scalar().valuation, i))
        pivot = work[best][column]
        valuation += pivot.constant_scalar().valuation or Fraction(0)
        used.add(best)
        inverse = invert_unit(pivot)
        for i, row in work.items():
            if i in used or column not in row:
                continue
            factor = row[column] * inverse
            for j, value in work[best].items():
                current = row[j] - factor * value if j in row else -(factor * value)
                if current.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = current
            row.pop(column, None)
    return valuation


def residue_rank(columns: Sequence[Column], n_rows: int) -> int:
    """
    Rank after setting every bulk variable and symbol to zero.

    Over a bulk ring, a square matrix is invertible exactly when this rank is full.
    """
    fiber = [{i: e.specialize_bulk_zero() for i, e in column.items()} for column in columns]
    return rank(fiber, n_rows).rank
