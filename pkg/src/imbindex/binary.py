"""Two-class performance indices over the [[TP, FN], [FP, TN]] layout.

``gmean2``, ``auroc``, ``recall``, and ``specificity`` depend only on the
row-normalized rates and are therefore immune to changes in the test-set
class mix.  ``precision`` and ``aurpc`` use the raw false-positive count and
are not; ``m_precision`` and ``m_aurpc`` are their rate-corrected variants
that restore the immunity.
"""

from __future__ import annotations

import math

from .confusion import ConfusionMatrix, DimensionMismatchError
from .values import IndexValue, defined, undefined


def _cells(m: ConfusionMatrix) -> tuple[int, int, int, int]:
    if m.class_count != 2:
        raise DimensionMismatchError(
            f"two-class index requires a 2-class matrix, got {m.class_count} classes"
        )
    (tp, fn), (fp, tn) = m.counts
    return tp, fn, fp, tn


def gmean2(m: ConfusionMatrix) -> IndexValue:
    """Geometric mean of the positive- and negative-class accuracies."""
    tp, fn, fp, tn = _cells(m)
    return defined("gmean2", math.sqrt((tp / (tp + fn)) * (tn / (fp + tn))))


def auroc(m: ConfusionMatrix) -> IndexValue:
    """Arithmetic mean of the two class accuracies (discrete two-class AUROC)."""
    tp, fn, fp, tn = _cells(m)
    return defined("auroc", 0.5 * (tp / (tp + fn) + tn / (fp + tn)))


def precision(m: ConfusionMatrix) -> IndexValue:
    """TP / (TP + FP); undefined when nothing is predicted positive."""
    tp, fn, fp, tn = _cells(m)
    if tp + fp == 0:
        return undefined("precision", "no positive predictions")
    return defined("precision", tp / (tp + fp))


def recall(m: ConfusionMatrix) -> IndexValue:
    """Positive-class accuracy TP / (TP + FN)."""
    tp, fn, fp, tn = _cells(m)
    return defined("recall", tp / (tp + fn))


def specificity(m: ConfusionMatrix) -> IndexValue:
    """Negative-class accuracy TN / (FP + TN)."""
    tp, fn, fp, tn = _cells(m)
    return defined("specificity", tn / (fp + tn))


def aurpc(m: ConfusionMatrix) -> IndexValue:
    """Mean of recall and precision; inherits precision's undefined case."""
    tp, fn, fp, tn = _cells(m)
    if tp + fp == 0:
        return undefined("aurpc", "no positive predictions")
    return defined("aurpc", 0.5 * (tp / (tp + fn) + tp / (tp + fp)))


def m_precision(m: ConfusionMatrix) -> IndexValue:
    """Rate-corrected precision: (TP/n1) / ((TP/n1) + (FP/n2))."""
    tp, fn, fp, tn = _cells(m)
    tpr = tp / (tp + fn)
    fpr = fp / (fp + tn)
    if tpr + fpr == 0:
        return undefined("m_precision", "no positive predictions in rate terms")
    return defined("m_precision", tpr / (tpr + fpr))


def m_aurpc(m: ConfusionMatrix) -> IndexValue:
    """Mean of recall and rate-corrected precision."""
    tp, fn, fp, tn = _cells(m)
    tpr = tp / (tp + fn)
    fpr = fp / (fp + tn)
    if tpr + fpr == 0:
        return undefined("m_aurpc", "no positive predictions in rate terms")
    return defined("m_aurpc", 0.5 * (tpr + tpr / (tpr + fpr)))
