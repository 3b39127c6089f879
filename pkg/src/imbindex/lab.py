"""Synthetic distortion experiments: Gaussian data, threshold classifiers,
test-mix resampling, and index-stability summaries.

Two resampling modes are provided.  Point mode subsamples labeled points
(never oversamples) and mirrors a real experiment, so it carries sampling
noise.  Matrix mode rescales confusion-matrix rows by exact rational factors,
which changes the test mix while provably preserving the row profile; it
isolates the distortion an index suffers from the mix change alone.

Experiments are declarative (frozen dataclass specs, loadable from JSON) and
deterministic: trial ``t`` of an experiment with seed ``s`` draws all its
randomness from a stream derived from ``(s, t)``.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .confusion import (
    ConfusionMatrix,
    EmptyRowError,
    IntegralityError,
    MatrixError,
    RowScaling,
    apply_scaling,
    to_fraction,
)
from .registry import DEFAULT_SEED, evaluate, get_index

STATUS_OK = "ok"


class UnachievableRRTError(MatrixError):
    """The requested test-mix ratio cannot be reached by subsampling."""


class SpecError(ValueError):
    """An experiment spec failed validation; the message names the field."""


# ---------------------------------------------------------------------------
# synthetic data


@dataclass(frozen=True)
class GaussianClassSpec:
    """One 2-D Gaussian class: mean, diagonal covariance, and sample count."""

    label: str
    mean: tuple[float, float]
    variances: tuple[float, float]
    sample_count: int

    def __post_init__(self):
        object.__setattr__(self, "mean", (float(self.mean[0]), float(self.mean[1])))
        object.__setattr__(
            self, "variances", (float(self.variances[0]), float(self.variances[1]))
        )
        if self.variances[0] <= 0 or self.variances[1] <= 0:
            raise SpecError(f"class {self.label!r}: variances must be positive")
        if self.sample_count < 1:
            raise SpecError(f"class {self.label!r}: sample_count must be >= 1")


@dataclass(frozen=True)
class PointSet:
    """Labeled 2-D points; ``xy`` is (N, 2) float64, ``labels`` is (N,) strings."""

    xy: np.ndarray
    labels: np.ndarray

    def class_counts(self) -> dict[str, int]:
        unique, counts = np.unique(self.labels, return_counts=True)
        return {str(u): int(c) for u, c in zip(unique, counts)}

    def __len__(self) -> int:
        return len(self.labels)


def generate_gaussian_dataset(
    specs: Sequence[GaussianClassSpec], seed: int | np.random.Generator
) -> PointSet:
    """Sample every class spec in order from one seeded stream."""
    if len(specs) < 2:
        raise SpecError("need at least 2 class specs")
    rng = np.random.default_rng(seed)
    blocks = []
    labels = []
    for spec in specs:
        std = np.sqrt(np.asarray(spec.variances))
        block = np.asarray(spec.mean) + rng.standard_normal((spec.sample_count, 2)) * std
        blocks.append(block)
        labels.extend([spec.label] * spec.sample_count)
    return PointSet(np.vstack(blocks), np.asarray(labels))


def threshold_classifier_confusion(
    points: PointSet,
    threshold: float,
    positive_label: str,
    positive_side: str = "greater",
) -> ConfusionMatrix:
    """Tally a vertical-line decision rule at ``x = threshold`` into a 2x2 matrix.

    Row 0 is the positive class.  ``positive_side`` selects which half-plane
    is predicted positive: ``"greater"`` means x > threshold, ``"less"``
    means x < threshold.
    """
    labels = points.labels
    distinct = sorted(set(str(v) for v in labels))
    if len(distinct) != 2:
        raise MatrixError(f"threshold classifier needs exactly 2 classes, got {distinct}")
    if positive_label not in distinct:
        raise MatrixError(f"positive label {positive_label!r} not present in {distinct}")
    if positive_side not in ("greater", "less"):
        raise MatrixError(f"positive_side must be 'greater' or 'less', got {positive_side!r}")
    x = points.xy[:, 0]
    pred_pos = x > threshold if positive_side == "greater" else x < threshold
    is_pos = labels == positive_label
    tp = int(np.sum(is_pos & pred_pos))
    fn = int(np.sum(is_pos & ~pred_pos))
    fp = int(np.sum(~is_pos & pred_pos))
    tn = int(np.sum(~is_pos & ~pred_pos))
    if tp + fn == 0 or fp + tn == 0:
        raise EmptyRowError("a class has no points")
    return ConfusionMatrix(((tp, fn), (fp, tn)))


# ---------------------------------------------------------------------------
# test-mix resampling


def resample_points_to_rrt(
    points: PointSet,
    target,
    majority_label: str,
    seed: int | np.random.Generator,
) -> PointSet:
    """Subsample a two-class point set to the requested majority/minority ratio.

    The ratio is counted as ``n(majority_label) / n(other)``.  When the target
    is reachable by shrinking the minority class the majority is kept intact;
    otherwise the majority is shrunk.  Points are never duplicated.
    """
    target = to_fraction(target)
    if target <= 0:
        raise UnachievableRRTError(f"target ratio {target} is not positive")
    counts = points.class_counts()
    if len(counts) != 2:
        raise MatrixError(f"point-mode resampling needs 2 classes, got {sorted(counts)}")
    if majority_label not in counts:
        raise MatrixError(f"majority label {majority_label!r} not present")
    (minority_label,) = [k for k in counts if k != majority_label]
    n_maj = counts[majority_label]
    n_min = counts[minority_label]

    want_min = round(n_maj / target)
    if 0 < want_min <= n_min:
        keep = {majority_label: n_maj, minority_label: want_min}
    else:
        want_maj = round(n_min * target)
        if not 0 < want_maj <= n_maj:
            raise UnachievableRRTError(
                f"ratio {target} unreachable from counts {n_maj}/{n_min} by subsampling"
            )
        keep = {majority_label: want_maj, minority_label: n_min}

    rng = np.random.default_rng(seed)
    kept_indices = []
    for label in (majority_label, minority_label):
        idx = np.flatnonzero(points.labels == label)
        k = keep[label]
        if k < len(idx):
            idx = np.sort(rng.choice(idx, size=k, replace=False))
        kept_indices.append(idx)
    order = np.sort(np.concatenate(kept_indices))
    return PointSet(points.xy[order], points.labels[order])


def rescale_matrix_to_rrt(m: ConfusionMatrix, target) -> ConfusionMatrix:
    """Exactly rescale a 2-class matrix so row sums realize the target ratio.

    Row 0 (the minority/positive row) is kept fixed and row 1 is scaled to
    ``target * row_sum(0)``; the result is equivalent to the input.  Raises
    when the scaling breaks integrality.
    """
    if m.class_count != 2:
        raise MatrixError("rrt rescaling applies to 2-class matrices; pass counts for C > 2")
    target = to_fraction(target)
    if target <= 0:
        raise UnachievableRRTError(f"target ratio {target} is not positive")
    new_majority = target * m.row_sums[0]
    if new_majority.denominator != 1:
        raise IntegralityError(
            f"target {target} with minority row sum {m.row_sums[0]} is not an integer count"
        )
    factor = Fraction(int(new_majority), m.row_sums[1])
    scaling = RowScaling.for_matrix(m, (Fraction(1), factor))
    return apply_scaling(m, scaling)


def rescale_matrix_to_counts(m: ConfusionMatrix, per_class_counts: Sequence[int]) -> ConfusionMatrix:
    """Exactly rescale each row to the requested per-class count."""
    if len(per_class_counts) != m.class_count:
        raise MatrixError(
            f"{len(per_class_counts)} target counts for a {m.class_count}-class matrix"
        )
    factors = []
    for target, current in zip(per_class_counts, m.row_sums):
        target = int(target)
        if target <= 0:
            raise MatrixError("target counts must be positive")
        factors.append(Fraction(target, current))
    scaling = RowScaling.for_matrix(m, tuple(factors))
    return apply_scaling(m, scaling)


def resample_to_rrt(obj, target=None, *, majority_label=None, seed=None, counts=None):
    """Mode dispatcher: point sets resample stochastically, matrices rescale exactly."""
    if isinstance(obj, PointSet):
        if majority_label is None or seed is None:
            raise MatrixError("point-mode resampling needs majority_label and seed")
        return resample_points_to_rrt(obj, target, majority_label, seed)
    if isinstance(obj, ConfusionMatrix):
        if counts is not None:
            return rescale_matrix_to_counts(obj, counts)
        return rescale_matrix_to_rrt(obj, target)
    raise TypeError(f"cannot resample {type(obj).__name__}")


def synthetic_multiclass_confusion(
    class_count: int,
    accuracy,
    profile: Sequence[int],
) -> ConfusionMatrix:
    """Matrix with per-class accuracy ``accuracy`` and uniform off-diagonal errors.

    ``accuracy * n_i`` must be an integer for every class (pick profiles
    accordingly); the off-diagonal remainder of each row goes to the
    lowest-indexed other class.
    """
    accuracy = to_fraction(accuracy)
    if not 0 <= accuracy <= 1:
        raise MatrixError(f"accuracy {accuracy} outside [0, 1]")
    profile = tuple(int(v) for v in profile)
    if len(profile) != class_count:
        raise MatrixError(f"profile has {len(profile)} counts, class_count is {class_count}")
    rows = []
    for i, n_i in enumerate(profile):
        if n_i <= 0:
            raise MatrixError("profile counts must be positive")
        diag = accuracy * n_i
        if diag.denominator != 1:
            raise IntegralityError(
                f"accuracy {accuracy} with class count {n_i} gives non-integer diagonal"
            )
        diag = int(diag)
        off = n_i - diag
        others = [j for j in range(class_count) if j != i]
        base, rem = divmod(off, class_count - 1)
        row = [0] * class_count
        row[i] = diag
        for j in others:
            row[j] = base
        row[others[0]] += rem
        rows.append(tuple(row))
    return ConfusionMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# experiment specs


@dataclass(frozen=True)
class Type1SweepSpec:
    """Two-class threshold sweep over a schedule of test-mix ratios."""

    experiment: str
    generators: tuple[GaussianClassSpec, ...]
    positive_label: str
    positive_side: str
    majority_label: str
    thresholds: tuple[float, ...]
    rrt_schedule: tuple[Fraction, ...]
    indices: tuple[str, ...]
    trials: int
    seed: int

    kind = "type1_sweep"


@dataclass(frozen=True)
class GrowthStep:
    class_count: int
    profile: tuple[int, ...]


@dataclass(frozen=True)
class Type2GrowthSpec:
    """Accuracy-profiled matrices over a growing class count."""

    experiment: str
    steps: tuple[GrowthStep, ...]
    accuracy_sweep: tuple[Fraction, ...]
    indices: tuple[str, ...]
    seed: int

    kind = "type2_growth"


@dataclass(frozen=True)
class MatrixStabilityDataset:
    """Matrix-mode stability dataset: exact row rescaling along the schedule.

    Schedule entries are ratios for 2-class matrices or per-class count lists
    for larger matrices.
    """

    dataset_id: str
    matrix: ConfusionMatrix
    schedule: tuple
    indices: tuple[str, ...]

    mode = "matrix"


@dataclass(frozen=True)
class PointStabilityDataset:
    """Point-mode stability dataset: seeded subsampling then a fixed classifier."""

    dataset_id: str
    generators: tuple[GaussianClassSpec, ...]
    threshold: float
    positive_label: str
    positive_side: str
    majority_label: str
    schedule: tuple[Fraction, ...]
    trials: int
    indices: tuple[str, ...]

    mode = "point"


@dataclass(frozen=True)
class RRTStabilitySpec:
    """Index stability across a test-mix schedule, per dataset."""

    experiment: str
    datasets: tuple
    seed: int

    kind = "rrt_stability"


ExperimentSpec = Type1SweepSpec | Type2GrowthSpec | RRTStabilitySpec


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise SpecError(f"{where}.{key}: missing required field")
    return obj[key]


def _generators(raw, where: str) -> tuple[GaussianClassSpec, ...]:
    out = []
    for g_idx, g in enumerate(raw):
        spot = f"{where}[{g_idx}]"
        try:
            out.append(
                GaussianClassSpec(
                    label=str(_need(g, "label", spot)),
                    mean=tuple(_need(g, "mean", spot)),
                    variances=tuple(_need(g, "variances", spot)),
                    sample_count=int(_need(g, "sample_count", spot)),
                )
            )
        except (TypeError, IndexError) as err:
            raise SpecError(f"{spot}: {err}") from None
    if len(out) < 2:
        raise SpecError(f"{where}: need at least 2 generators")
    return tuple(out)


def _index_list(raw, where: str) -> tuple[str, ...]:
    ids = tuple(str(i) for i in raw)
    if not ids:
        raise SpecError(f"{where}: at least one index required")
    for i in ids:
        get_index(i)
    return ids


def load_spec(source) -> ExperimentSpec:
    """Parse an experiment spec from a dict, JSON string, or file path."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        if path.exists():
            raw = json.loads(path.read_text())
        else:
            raw = json.loads(str(source))
    else:
        raw = source
    if not isinstance(raw, dict):
        raise SpecError("spec: expected a JSON object")

    kind = _need(raw, "kind", "spec")
    experiment = str(_need(raw, "experiment", "spec"))
    seed = int(raw.get("seed", DEFAULT_SEED))

    if kind == "type1_sweep":
        schedule = tuple(to_fraction(v) for v in _need(raw, "rrt_schedule", "spec"))
        if any(v <= 0 for v in schedule):
            raise SpecError("spec.rrt_schedule: entries must be positive")
        trials = int(raw.get("trials", 1))
        if trials < 1:
            raise SpecError("spec.trials: must be >= 1")
        return Type1SweepSpec(
            experiment=experiment,
            generators=_generators(_need(raw, "generators", "spec"), "spec.generators"),
            positive_label=str(_need(raw, "positive_label", "spec")),
            positive_side=str(raw.get("positive_side", "greater")),
            majority_label=str(_need(raw, "majority_label", "spec")),
            thresholds=tuple(float(t) for t in _need(raw, "thresholds", "spec")),
            rrt_schedule=schedule,
            indices=_index_list(_need(raw, "indices", "spec"), "spec.indices"),
            trials=trials,
            seed=seed,
        )

    if kind == "type2_growth":
        steps = []
        for s_idx, s in enumerate(_need(raw, "steps", "spec")):
            spot = f"spec.steps[{s_idx}]"
            profile = tuple(int(v) for v in _need(s, "profile", spot))
            class_count = int(s.get("class_count", len(profile)))
            if class_count != len(profile):
                raise SpecError(f"{spot}.profile: {len(profile)} counts for C={class_count}")
            steps.append(GrowthStep(class_count, profile))
        if not steps:
            raise SpecError("spec.steps: at least one step required")
        sweep = tuple(to_fraction(a) for a in _need(raw, "accuracy_sweep", "spec"))
        if not sweep:
            raise SpecError("spec.accuracy_sweep: at least one accuracy required")
        return Type2GrowthSpec(
            experiment=experiment,
            steps=tuple(steps),
            accuracy_sweep=sweep,
            indices=_index_list(_need(raw, "indices", "spec"), "spec.indices"),
            seed=seed,
        )

    if kind == "rrt_stability":
        datasets = []
        for d_idx, d in enumerate(_need(raw, "datasets", "spec")):
            spot = f"spec.datasets[{d_idx}]"
            mode = str(_need(d, "mode", spot))
            dataset_id = str(_need(d, "id", spot))
            indices = _index_list(_need(d, "indices", spot), f"{spot}.indices")
            schedule_raw = _need(d, "schedule", spot)
            if not schedule_raw:
                raise SpecError(f"{spot}.schedule: must be non-empty")
            if mode == "matrix":
                matrix = ConfusionMatrix(tuple(tuple(r) for r in _need(d, "matrix", spot)))
                schedule = tuple(
                    tuple(int(v) for v in entry) if isinstance(entry, (list, tuple))
                    else to_fraction(entry)
                    for entry in schedule_raw
                )
                datasets.append(MatrixStabilityDataset(dataset_id, matrix, schedule, indices))
            elif mode == "point":
                trials = int(d.get("trials", 1))
                if trials < 1:
                    raise SpecError(f"{spot}.trials: must be >= 1")
                datasets.append(
                    PointStabilityDataset(
                        dataset_id=dataset_id,
                        generators=_generators(_need(d, "generators", spot), f"{spot}.generators"),
                        threshold=float(_need(d, "threshold", spot)),
                        positive_label=str(_need(d, "positive_label", spot)),
                        positive_side=str(d.get("positive_side", "greater")),
                        majority_label=str(_need(d, "majority_label", spot)),
                        schedule=tuple(to_fraction(v) for v in schedule_raw),
                        trials=trials,
                        indices=indices,
                    )
                )
            else:
                raise SpecError(f"{spot}.mode: expected 'matrix' or 'point', got {mode!r}")
        if not datasets:
            raise SpecError("spec.datasets: at least one dataset required")
        ids = [d.dataset_id for d in datasets]
        if len(set(ids)) != len(ids):
            raise SpecError("spec.datasets: dataset ids must be unique")
        return RRTStabilitySpec(experiment=experiment, datasets=tuple(datasets), seed=seed)

    raise SpecError(f"spec.kind: unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# experiment results


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    trial: int
    setting: str
    rrt_or_c: str
    index: str
    value: float | None
    status: str


@dataclass(frozen=True)
class SummaryRow:
    experiment: str
    setting: str
    index: str
    rrt_or_c: str
    statistic: str
    value: float | None
    status: str


@dataclass(frozen=True)
class ExperimentResult:
    experiment: str
    rows: tuple[ResultRow, ...]
    summary: tuple[SummaryRow, ...]

    def stds(self) -> dict[tuple[str, str], float | None]:
        """(setting, index) -> standard deviation over the schedule."""
        return {
            (r.setting, r.index): r.value
            for r in self.summary
            if r.statistic == "std"
        }

    def mins(self) -> dict[tuple[str, str], float | None]:
        """(rrt_or_c, index) -> minimum over the sweep (growth experiments)."""
        return {
            (r.rrt_or_c, r.index): r.value
            for r in self.summary
            if r.statistic == "min"
        }

    def means(self) -> dict[tuple[str, str, str], float | None]:
        """(setting, index, rrt_or_c) -> mean over trials."""
        return {
            (r.setting, r.index, r.rrt_or_c): r.value
            for r in self.summary
            if r.statistic == "mean"
        }

    def digest(self) -> dict[str, float | None]:
        """Per index: mean of the schedule standard deviations across settings."""
        per_index: dict[str, list[float]] = {}
        seen: set[str] = set()
        for r in self.summary:
            if r.statistic != "std":
                continue
            seen.add(r.index)
            if r.value is not None:
                per_index.setdefault(r.index, []).append(r.value)
        return {
            i: (statistics.fmean(vals) if (vals := per_index.get(i)) else None)
            for i in sorted(seen)
        }

    def write_csv(self, output_dir) -> tuple[Path, Path]:
        """Write ``<experiment>_long.csv`` and ``<experiment>_summary.csv``."""
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        long_path = output_dir / f"{self.experiment}_long.csv"
        summary_path = output_dir / f"{self.experiment}_summary.csv"
        with long_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["experiment", "trial", "setting", "rrt_or_c", "index", "value", "status"])
            for r in self.rows:
                writer.writerow(
                    [r.experiment, r.trial, r.setting, r.rrt_or_c, r.index,
                     "UNDEFINED" if r.value is None else repr(r.value), r.status]
                )
        with summary_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["experiment", "setting", "index", "rrt_or_c", "statistic", "value", "status"])
            for r in self.summary:
                writer.writerow(
                    [r.experiment, r.setting, r.index, r.rrt_or_c, r.statistic,
                     "UNDEFINED" if r.value is None else repr(r.value), r.status]
                )
        return long_path, summary_path


def _row(experiment, trial, setting, rrt_or_c, index_id, matrix) -> ResultRow:
    iv = evaluate(index_id, matrix)
    if iv.defined:
        return ResultRow(experiment, trial, setting, rrt_or_c, index_id, iv.value, STATUS_OK)
    return ResultRow(experiment, trial, setting, rrt_or_c, index_id, None, iv.reason)


def _error_rows(experiment, trial, setting, rrt_or_c, indices, err) -> list[ResultRow]:
    reason = f"{type(err).__name__}: {err}"
    return [
        ResultRow(experiment, trial, setting, rrt_or_c, i, None, reason) for i in indices
    ]


def _schedule_key(entry) -> str:
    if isinstance(entry, tuple):
        return "x".join(str(v) for v in entry)
    return str(entry)


def _mean_and_std_summary(
    experiment: str,
    rows: Sequence[ResultRow],
    indices: Sequence[str],
    settings: Sequence[str],
    schedule_keys: Sequence[str],
) -> list[SummaryRow]:
    """Per (setting, index, schedule entry): mean over trials; then the
    standard deviation of those means over the schedule."""
    summary: list[SummaryRow] = []
    cells: dict[tuple[str, str, str], list[float]] = {}
    missing: dict[tuple[str, str, str], str] = {}
    for r in rows:
        key = (r.setting, r.index, r.rrt_or_c)
        if r.value is None:
            missing.setdefault(key, r.status)
        else:
            cells.setdefault(key, []).append(r.value)
    for setting in settings:
        for index_id in indices:
            means: list[float] = []
            broken: str | None = None
            for sched in schedule_keys:
                key = (setting, index_id, sched)
                if key in missing:
                    status = missing[key]
                    summary.append(
                        SummaryRow(experiment, setting, index_id, sched, "mean", None, status)
                    )
                    broken = broken or f"undefined at {sched}"
                    continue
                vals = cells.get(key)
                if not vals:
                    continue
                mean = statistics.fmean(vals)
                means.append(mean)
                summary.append(
                    SummaryRow(experiment, setting, index_id, sched, "mean", mean, STATUS_OK)
                )
            if broken is not None or len(means) != len(schedule_keys):
                summary.append(
                    SummaryRow(
                        experiment, setting, index_id, "", "std", None,
                        broken or "incomplete schedule",
                    )
                )
            else:
                summary.append(
                    SummaryRow(
                        experiment, setting, index_id, "", "std",
                        statistics.pstdev(means), STATUS_OK,
                    )
                )
    return summary


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Run a declarative experiment; per-cell failures become undefined rows."""
    if isinstance(spec, Type1SweepSpec):
        return _run_type1(spec)
    if isinstance(spec, Type2GrowthSpec):
        return _run_type2(spec)
    if isinstance(spec, RRTStabilitySpec):
        return _run_stability(spec)
    raise SpecError(f"unknown experiment spec type {type(spec).__name__}")


def _run_type1(spec: Type1SweepSpec) -> ExperimentResult:
    rows: list[ResultRow] = []
    settings = [f"t={t:g}" for t in spec.thresholds]
    schedule_keys = [str(r) for r in spec.rrt_schedule]
    for trial in range(spec.trials):
        points = generate_gaussian_dataset(spec.generators, np.random.default_rng([spec.seed, trial]))
        for s_idx, ratio in enumerate(spec.rrt_schedule):
            try:
                resampled = resample_points_to_rrt(
                    points, ratio, spec.majority_label,
                    np.random.default_rng([spec.seed, trial, s_idx]),
                )
            except MatrixError as err:
                for setting in settings:
                    rows.extend(
                        _error_rows(spec.experiment, trial, setting, str(ratio), spec.indices, err)
                    )
                continue
            for threshold, setting in zip(spec.thresholds, settings):
                try:
                    matrix = threshold_classifier_confusion(
                        resampled, threshold, spec.positive_label, spec.positive_side
                    )
                except MatrixError as err:
                    rows.extend(
                        _error_rows(spec.experiment, trial, setting, str(ratio), spec.indices, err)
                    )
                    continue
                for index_id in spec.indices:
                    rows.append(
                        _row(spec.experiment, trial, setting, str(ratio), index_id, matrix)
                    )
    summary = _mean_and_std_summary(spec.experiment, rows, spec.indices, settings, schedule_keys)
    return ExperimentResult(spec.experiment, tuple(rows), tuple(summary))


def _run_type2(spec: Type2GrowthSpec) -> ExperimentResult:
    rows: list[ResultRow] = []
    for step in spec.steps:
        for accuracy in spec.accuracy_sweep:
            setting = f"a={accuracy}"
            rrt_or_c = str(step.class_count)
            try:
                matrix = synthetic_multiclass_confusion(step.class_count, accuracy, step.profile)
            except MatrixError as err:
                rows.extend(_error_rows(spec.experiment, 0, setting, rrt_or_c, spec.indices, err))
                continue
            for index_id in spec.indices:
                rows.append(_row(spec.experiment, 0, setting, rrt_or_c, index_id, matrix))
    summary: list[SummaryRow] = []
    for step in spec.steps:
        rrt_or_c = str(step.class_count)
        for index_id in spec.indices:
            values = [
                r.value for r in rows
                if r.rrt_or_c == rrt_or_c and r.index == index_id and r.value is not None
            ]
            if values:
                summary.append(
                    SummaryRow(spec.experiment, "sweep", index_id, rrt_or_c, "min",
                               min(values), STATUS_OK)
                )
            else:
                summary.append(
                    SummaryRow(spec.experiment, "sweep", index_id, rrt_or_c, "min",
                               None, "undefined on entire sweep")
                )
    return ExperimentResult(spec.experiment, tuple(rows), tuple(summary))


def _run_stability(spec: RRTStabilitySpec) -> ExperimentResult:
    rows: list[ResultRow] = []
    all_summary: list[SummaryRow] = []
    for d_idx, dataset in enumerate(spec.datasets):
        schedule_keys = [_schedule_key(e) for e in dataset.schedule]
        if isinstance(dataset, MatrixStabilityDataset):
            for entry, key in zip(dataset.schedule, schedule_keys):
                try:
                    if isinstance(entry, tuple):
                        matrix = rescale_matrix_to_counts(dataset.matrix, entry)
                    else:
                        matrix = rescale_matrix_to_rrt(dataset.matrix, entry)
                except MatrixError as err:
                    rows.extend(
                        _error_rows(spec.experiment, 0, dataset.dataset_id, key, dataset.indices, err)
                    )
                    continue
                for index_id in dataset.indices:
                    rows.append(_row(spec.experiment, 0, dataset.dataset_id, key, index_id, matrix))
        else:
            for trial in range(dataset.trials):
                points = generate_gaussian_dataset(
                    dataset.generators, np.random.default_rng([spec.seed, d_idx, trial])
                )
                for s_idx, ratio in enumerate(dataset.schedule):
                    key = schedule_keys[s_idx]
                    try:
                        resampled = resample_points_to_rrt(
                            points, ratio, dataset.majority_label,
                            np.random.default_rng([spec.seed, d_idx, trial, s_idx]),
                        )
                        matrix = threshold_classifier_confusion(
                            resampled, dataset.threshold,
                            dataset.positive_label, dataset.positive_side,
                        )
                    except MatrixError as err:
                        rows.extend(
                            _error_rows(spec.experiment, trial, dataset.dataset_id, key,
                                        dataset.indices, err)
                        )
                        continue
                    for index_id in dataset.indices:
                        rows.append(
                            _row(spec.experiment, trial, dataset.dataset_id, key, index_id, matrix)
                        )
        dataset_rows = [r for r in rows if r.setting == dataset.dataset_id]
        all_summary.extend(
            _mean_and_std_summary(
                spec.experiment, dataset_rows, dataset.indices,
                [dataset.dataset_id], schedule_keys,
            )
        )
    return ExperimentResult(spec.experiment, tuple(rows), tuple(all_summary))


def normalized_stability(
    result: ExperimentResult, index_ids: Sequence[str]
) -> list[SummaryRow]:
    """Per (dataset, index): schedule std divided by the index's minimum std.

    A zero minimum cannot normalize anything; those indices are reported with
    an undefined ratio rather than a division blowup.
    """
    stds = result.stds()
    settings = sorted({setting for setting, _ in stds})
    if len(settings) < 2:
        raise SpecError("normalized stability needs results from at least 2 datasets")
    out: list[SummaryRow] = []
    for index_id in index_ids:
        per_dataset = {s: stds.get((s, index_id)) for s in settings}
        present = {s: v for s, v in per_dataset.items() if v is not None}
        if len(present) < 2:
            raise SpecError(f"index {index_id}: standard deviations available for < 2 datasets")
        floor = min(present.values())
        for setting in settings:
            value = per_dataset.get(setting)
            if value is None:
                out.append(
                    SummaryRow(result.experiment, setting, index_id, "", "normalized_std",
                               None, "std undefined")
                )
            elif floor == 0:
                out.append(
                    SummaryRow(result.experiment, setting, index_id, "", "normalized_std",
                               None, "degenerate normalizer: minimum std is 0")
                )
            else:
                out.append(
                    SummaryRow(result.experiment, setting, index_id, "", "normalized_std",
                               value / floor, STATUS_OK)
                )
    return out
