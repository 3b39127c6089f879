"""Confusion-matrix performance indices for imbalanced classification.

The package evaluates thirteen two-class and multi-class indices, audits each
against three robustness conditions (test-mix invariance, class-count-stable
bounds, single-class collapse), and runs synthetic distortion experiments
that show how the non-invariant indices drift when the test set changes while
the classifier does not.
"""

from .confusion import (
    ClassRatioProfile,
    ConfusionMatrix,
    DimensionMismatchError,
    EmptyRowError,
    IntegralityError,
    MatrixError,
    NegativeEntryError,
    NonIntegerScalingError,
    NonSquareError,
    RowScaling,
    TooFewClassesError,
    UnknownLabelError,
    ZeroClassCountError,
    apply_scaling,
    are_equivalent,
    ingest_labels,
    max_ratio,
    to_fraction,
    validate,
)
from .multiclass import ProfileRequiredError, lambda_c, theoretical_bounds
from .registry import (
    ALL_INDEX_IDS,
    AUDITED_INDEX_IDS,
    BINARY_INDEX_IDS,
    DEFAULT_SEED,
    MULTI_INDEX_IDS,
    UnknownIndexError,
    applicable_index_ids,
    evaluate,
    exact,
    get_index,
)
from .values import IndexValue

__version__ = "0.1.0"

__all__ = [
    "ClassRatioProfile",
    "ConfusionMatrix",
    "DimensionMismatchError",
    "EmptyRowError",
    "IndexValue",
    "IntegralityError",
    "MatrixError",
    "NegativeEntryError",
    "NonIntegerScalingError",
    "NonSquareError",
    "ProfileRequiredError",
    "RowScaling",
    "TooFewClassesError",
    "UnknownIndexError",
    "UnknownLabelError",
    "ZeroClassCountError",
    "ALL_INDEX_IDS",
    "AUDITED_INDEX_IDS",
    "BINARY_INDEX_IDS",
    "MULTI_INDEX_IDS",
    "DEFAULT_SEED",
    "apply_scaling",
    "applicable_index_ids",
    "are_equivalent",
    "evaluate",
    "exact",
    "get_index",
    "ingest_labels",
    "lambda_c",
    "max_ratio",
    "theoretical_bounds",
    "to_fraction",
    "validate",
    "__version__",
]
