"""Confusion matrices, class-ratio measures, and the row-scaling equivalence relation.

Layout convention used throughout the package: ``counts[i][j]`` is the number
of test points whose true class is ``i`` and predicted class is ``j``.  For
two classes, row 0 is the positive (minority) class and row 1 the negative
(majority) class, so the cells read::

    [[TP, FN],
     [FP, TN]]

Two matrices are *equivalent* when their row-normalized profiles agree, i.e.
``counts[i][j] / row_sum(i)`` is identical for every cell.  Equivalence is the
formal statement that the same classifier produced both matrices on test sets
with different class mixes.  Equivalence checks and row scalings are done in
exact rational arithmetic so that invariance audits can distinguish a true
value change from floating-point noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Sequence


class MatrixError(ValueError):
    """Base class for confusion-matrix validation failures."""


class NonSquareError(MatrixError):
    """The count grid is not square."""


class TooFewClassesError(MatrixError):
    """Fewer than two classes."""


class NegativeEntryError(MatrixError):
    """A cell is negative or not an integer."""


class EmptyRowError(MatrixError):
    """Some true class has no test points (row sum zero)."""


class DimensionMismatchError(MatrixError):
    """Operands have incompatible class counts."""


class ZeroClassCountError(MatrixError):
    """A per-class count is zero or negative."""


class NonIntegerScalingError(MatrixError):
    """A row scaling would produce non-integer cell counts."""


class UnknownLabelError(MatrixError):
    """A label in the records is missing from the declared class list."""


class IntegralityError(MatrixError):
    """Requested exact construction cannot be realized with integer counts."""


def to_fraction(value) -> Fraction:
    """Coerce a number to an exact ``Fraction``.

    Floats are converted through their shortest decimal representation, so
    configuration values like ``0.6`` mean exactly ``3/5`` rather than the
    nearest binary double.  Strings accept both ``"0.6"`` and ``"3/5"``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not valid numeric values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _check_cell(value, i: int, j: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int,)):
        # numpy integers slip through isinstance(int); accept anything that
        # round-trips exactly through int().
        try:
            as_int = int(value)
        except (TypeError, ValueError):
            raise NegativeEntryError(
                f"row {i + 1}, column {j + 1}: entry {value!r} is not an integer"
            ) from None
        if as_int != value or isinstance(value, (bool, float)):
            raise NegativeEntryError(
                f"row {i + 1}, column {j + 1}: entry {value!r} is not an integer"
            )
        value = as_int
    if value < 0:
        raise NegativeEntryError(
            f"row {i + 1}, column {j + 1}: entry {value} is negative"
        )
    return int(value)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Validated square grid of non-negative integer counts with positive row sums."""

    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = [tuple(row) for row in self.counts]
        class_count = len(rows)
        if class_count < 2:
            raise TooFewClassesError(f"need at least 2 classes, got {class_count}")
        for i, row in enumerate(rows):
            if len(row) != class_count:
                raise NonSquareError(
                    f"row {i + 1} has {len(row)} entries, expected {class_count}"
                )
        rows = tuple(
            tuple(_check_cell(v, i, j) for j, v in enumerate(row))
            for i, row in enumerate(rows)
        )
        for i, row in enumerate(rows):
            if sum(row) == 0:
                raise EmptyRowError(f"row {i + 1} sums to zero (class has no test points)")
        object.__setattr__(self, "counts", rows)

    @property
    def class_count(self) -> int:
        return len(self.counts)

    @cached_property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    @cached_property
    def col_sums(self) -> tuple[int, ...]:
        c = self.class_count
        return tuple(sum(self.counts[i][j] for i in range(c)) for j in range(c))

    @cached_property
    def total(self) -> int:
        return sum(self.row_sums)

    def row_profile(self) -> tuple[tuple[Fraction, ...], ...]:
        """Exact row-normalized rates ``counts[i][j] / row_sum(i)``."""
        return tuple(
            tuple(Fraction(v, n) for v in row)
            for row, n in zip(self.counts, self.row_sums)
        )

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.counts]


def validate(grid: Sequence[Sequence[int]]) -> ConfusionMatrix:
    """Validate a count grid and return it as a :class:`ConfusionMatrix`."""
    return ConfusionMatrix(tuple(tuple(row) for row in grid))


@dataclass(frozen=True)
class ClassRatioProfile:
    """Per-class counts together with all pairwise count ratios.

    The same structure measures training imbalance and test-set imbalance;
    only the source of the counts differs.
    """

    per_class_counts: tuple[int, ...]
    ratio_set: frozenset[Fraction]
    max_ratio: Fraction

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "ClassRatioProfile":
        counts = tuple(int(c) for c in counts)
        if len(counts) < 2:
            raise ZeroClassCountError("need at least 2 class counts")
        for c in counts:
            if c <= 0:
                raise ZeroClassCountError(f"class count {c} is not positive")
        ratios = frozenset(
            Fraction(a, b) for i, a in enumerate(counts) for j, b in enumerate(counts) if i != j
        )
        return cls(counts, ratios, max(ratios))


def max_ratio(counts: Sequence[int]) -> Fraction:
    """Largest pairwise ratio among positive per-class counts.

    Equals ``max(counts) / min(counts)``; this is the imbalance measure for
    whichever set (training or test) the counts came from.
    """
    return ClassRatioProfile.from_counts(counts).max_ratio


@dataclass(frozen=True)
class RowScaling:
    """Per-row positive rational factors witnessing the equivalence relation.

    Only rational factors can keep scaled counts integral, so witnesses are
    restricted to ``Fraction`` values.  Use :meth:`for_matrix` to construct a
    scaling checked against a target matrix.
    """

    factors: tuple[Fraction, ...]

    def __post_init__(self):
        factors = tuple(to_fraction(f) for f in self.factors)
        if not factors:
            raise MatrixError("scaling needs at least one factor")
        for f in factors:
            if f <= 0:
                raise MatrixError(f"scaling factor {f} is not positive")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def for_matrix(cls, matrix: ConfusionMatrix, factors: Sequence) -> "RowScaling":
        """Build a scaling and verify it keeps every cell of ``matrix`` integral."""
        scaling = cls(tuple(to_fraction(f) for f in factors))
        if len(scaling.factors) != matrix.class_count:
            raise DimensionMismatchError(
                f"{len(scaling.factors)} factors for a {matrix.class_count}-class matrix"
            )
        scaling.check(matrix)
        return scaling

    def check(self, matrix: ConfusionMatrix) -> None:
        if len(self.factors) != matrix.class_count:
            raise DimensionMismatchError(
                f"{len(self.factors)} factors for a {matrix.class_count}-class matrix"
            )
        for i, (factor, row) in enumerate(zip(self.factors, matrix.counts)):
            for j, v in enumerate(row):
                if (factor * v).denominator != 1:
                    raise NonIntegerScalingError(
                        f"row {i + 1}, column {j + 1}: {factor} * {v} is not an integer"
                    )


def apply_scaling(matrix: ConfusionMatrix, scaling: RowScaling) -> ConfusionMatrix:
    """Multiply each row by its factor, returning a matrix equivalent to the input."""
    scaling.check(matrix)
    scaled = tuple(
        tuple(int(factor * v) for v in row)
        for factor, row in zip(scaling.factors, matrix.counts)
    )
    return ConfusionMatrix(scaled)


def are_equivalent(a: ConfusionMatrix, b: ConfusionMatrix) -> bool:
    """Exact test of ``a ~ b``: identical row-normalized profiles."""
    if a.class_count != b.class_count:
        raise DimensionMismatchError(
            f"cannot compare a {a.class_count}-class with a {b.class_count}-class matrix"
        )
    return a.row_profile() == b.row_profile()


def ingest_labels(
    records: Iterable[tuple[Hashable, Hashable]],
    class_list: Sequence[Hashable] | None = None,
) -> ConfusionMatrix:
    """Tally (true, predicted) label pairs into a confusion matrix.

    Row/column order follows ``class_list``; when omitted, classes are taken
    in first-appearance order over the records (true label first, then the
    predicted label of the same pair).
    """
    records = list(records)
    if class_list is None:
        seen: dict[Hashable, None] = {}
        for t, p in records:
            seen.setdefault(t, None)
            seen.setdefault(p, None)
        class_list = list(seen)
    index = {label: i for i, label in enumerate(class_list)}
    if len(index) != len(class_list):
        raise MatrixError("class list contains duplicate labels")
    if len(index) < 2:
        raise TooFewClassesError("need at least 2 classes to tally a confusion matrix")
    c = len(index)
    grid = [[0] * c for _ in range(c)]
    for t, p in records:
        if t not in index:
            raise UnknownLabelError(f"true label {t!r} is not in the class list")
        if p not in index:
            raise UnknownLabelError(f"predicted label {p!r} is not in the class list")
        grid[index[t]][index[p]] += 1
    return ConfusionMatrix(tuple(tuple(row) for row in grid))
