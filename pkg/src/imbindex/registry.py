"""Stable index ids, evaluator dispatch, and package-wide defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

from . import binary, multiclass
from .confusion import ConfusionMatrix, DimensionMismatchError
from .exact import ExactEval, evaluate_exact
from .values import IndexValue

DEFAULT_SEED = 1729
SEED_ENV_VAR = "IMBINDEX_SEED"


class UnknownIndexError(ValueError):
    """The index id is not one of the stable ids listed in the registry."""


@dataclass(frozen=True)
class IndexSpec:
    index_id: str
    label: str
    binary_only: bool
    evaluate: Callable[[ConfusionMatrix], IndexValue]


_SPECS = (
    IndexSpec("gmean2", "GMean (two-class)", True, binary.gmean2),
    IndexSpec("auroc", "AUROC (two-class, discrete)", True, binary.auroc),
    IndexSpec("precision", "Precision", True, binary.precision),
    IndexSpec("recall", "Recall", True, binary.recall),
    IndexSpec("specificity", "Specificity", True, binary.specificity),
    IndexSpec("aurpc", "AURPC (two-class, discrete)", True, binary.aurpc),
    IndexSpec("m_precision", "mPrecision (rate-corrected)", True, binary.m_precision),
    IndexSpec("m_aurpc", "mAURPC (rate-corrected)", True, binary.m_aurpc),
    IndexSpec("gmean_c", "GMean (multi-class)", False, multiclass.gmean_c),
    IndexSpec("acsa", "ACSA (mean class accuracy)", False, multiclass.acsa),
    IndexSpec("auroc_ovo", "AUROC-OVO", False, multiclass.auroc_ovo),
    IndexSpec("auroc_ova", "AUROC-OVA", False, multiclass.auroc_ova),
    IndexSpec("n_auroc_ova", "nAUROC-OVA (floor-normalized)", False, multiclass.n_auroc_ova),
    IndexSpec("aurpc_ova", "AURPC-OVA", False, multiclass.aurpc_ova),
    IndexSpec("m_aurpc_ova", "mAURPC-OVA (rate-corrected)", False, multiclass.m_aurpc_ova),
)

INDEX_SPECS: dict[str, IndexSpec] = {spec.index_id: spec for spec in _SPECS}
ALL_INDEX_IDS: tuple[str, ...] = tuple(spec.index_id for spec in _SPECS)
BINARY_INDEX_IDS: tuple[str, ...] = tuple(s.index_id for s in _SPECS if s.binary_only)
MULTI_INDEX_IDS: tuple[str, ...] = tuple(s.index_id for s in _SPECS if not s.binary_only)

# The thirteen indices covered by the built-in expected-verdict table (recall
# and specificity are evaluator conveniences without verdict rows).
AUDITED_INDEX_IDS: tuple[str, ...] = tuple(
    i for i in ALL_INDEX_IDS if i not in ("recall", "specificity")
)


def get_index(index_id: str) -> IndexSpec:
    try:
        return INDEX_SPECS[index_id]
    except KeyError:
        known = ", ".join(ALL_INDEX_IDS)
        raise UnknownIndexError(f"unknown index {index_id!r}; known ids: {known}") from None


def evaluate(index_id: str, m: ConfusionMatrix) -> IndexValue:
    """Evaluate one index (float path) on a validated matrix."""
    return get_index(index_id).evaluate(m)


def exact(index_id: str, m: ConfusionMatrix) -> ExactEval | None:
    """Evaluate one index on the exact rational path; ``None`` when undefined."""
    spec = get_index(index_id)
    if spec.binary_only and m.class_count != 2:
        raise DimensionMismatchError(
            f"{index_id} is a two-class index, got {m.class_count} classes"
        )
    return evaluate_exact(index_id, m)


def applicable_index_ids(class_count: int) -> tuple[str, ...]:
    """Ids meaningful for a given class count (two-class ids only at C = 2)."""
    if class_count == 2:
        return ALL_INDEX_IDS
    return MULTI_INDEX_IDS


def default_seed() -> int:
    """Fixed default seed, overridable through the environment."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None
