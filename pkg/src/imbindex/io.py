"""CSV interfaces: confusion-matrix files and (true, predicted) label files."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

from .confusion import ConfusionMatrix, MatrixError


def _is_int(token: str) -> bool:
    token = token.strip()
    if not token:
        return False
    if token[0] in "+-":
        token = token[1:]
    return token.isdigit()


def read_matrix_csv(path) -> tuple[ConfusionMatrix, tuple[str, ...] | None]:
    """Read a confusion matrix: one row per true class, integers only.

    An optional first row of class labels is detected by the presence of any
    non-integer token.  Returns the validated matrix and the labels (or None).
    """
    path = Path(path)
    with path.open(newline="") as fh:
        raw = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    if not raw:
        raise MatrixError(f"{path}: file contains no rows")
    labels: tuple[str, ...] | None = None
    if not all(_is_int(cell) for cell in raw[0]):
        labels = tuple(cell.strip() for cell in raw[0])
        raw = raw[1:]
        if not raw:
            raise MatrixError(f"{path}: header row but no count rows")
    grid = []
    for i, row in enumerate(raw):
        parsed = []
        for j, cell in enumerate(row):
            if not _is_int(cell):
                raise MatrixError(
                    f"{path}: row {i + 1}, column {j + 1}: {cell.strip()!r} is not an integer"
                )
            parsed.append(int(cell))
        grid.append(tuple(parsed))
    matrix = ConfusionMatrix(tuple(grid))
    if labels is not None and len(labels) != matrix.class_count:
        raise MatrixError(
            f"{path}: header has {len(labels)} labels for {matrix.class_count} classes"
        )
    return matrix, labels


def write_matrix_csv(path, matrix: ConfusionMatrix, labels: Sequence[str] | None = None) -> None:
    """Write a matrix in the same format :func:`read_matrix_csv` accepts."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        if labels is not None:
            if len(labels) != matrix.class_count:
                raise MatrixError(
                    f"{len(labels)} labels for {matrix.class_count} classes"
                )
            writer.writerow(labels)
        for row in matrix.counts:
            writer.writerow(row)


def read_label_pairs(path) -> list[tuple[str, str]]:
    """Read (true, predicted) string pairs from a two-column CSV.

    A ``true,predicted`` header row is skipped when present.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        raw = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    if not raw:
        raise MatrixError(f"{path}: file contains no rows")
    first = [cell.strip().lower() for cell in raw[0][:2]]
    if first == ["true", "predicted"]:
        raw = raw[1:]
    pairs = []
    for i, row in enumerate(raw):
        if len(row) < 2:
            raise MatrixError(f"{path}: row {i + 1} has fewer than 2 columns")
        pairs.append((row[0].strip(), row[1].strip()))
    return pairs
