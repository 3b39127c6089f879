"""Mechanical audits of index behavior under the three robustness conditions.

Condition 1 (test-mix invariance): the index value must not change across
equivalent matrices, i.e. under positive row scalings.  Audited by sampling
random valid matrices and random integrality-preserving scalings; a violation
is declared only after the exact rational oracle confirms the two values
differ, so rounding noise can never produce a false violation.

Condition 2 (class-count-stable bounds): the index's closed-form value bounds
must not depend on the number of classes.  Audited by comparing closed-form
bounds across a class-count range, with an exhaustive enumeration of all
matrices over fixed small row sums as the independent check that the bounds
are attained and never crossed.

Condition 3 (single-class collapse): when one class's accuracy is driven to
zero along a collapse family, the index limit must stay strictly above the
index's global lower bound, otherwise the index forgets every other class.

Determinism contract: every audit derives the randomness of trial ``t`` from
``(seed, t)`` alone, so trials are order-independent and a report is exactly
reproducible from its recorded seed.  When a violation exists the stored
witness is the one with the lowest trial number.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .confusion import (
    ConfusionMatrix,
    IntegralityError,
    MatrixError,
    RowScaling,
    apply_scaling,
    to_fraction,
)
from .exact import ExactEval
from .multiclass import bounds_exact
from .registry import (
    AUDITED_INDEX_IDS,
    DEFAULT_SEED,
    evaluate,
    exact,
    get_index,
)

FLOAT_TOL = 1e-12
COLLAPSE_TOL = 1e-9
DEFAULT_TRIALS = 500
DEFAULT_BUDGET = 2_000_000
DEFAULT_C_RANGE = (2, 3, 4)

VERDICT_INVARIANT = "Invariant"
VERDICT_VIOLATED = "Violated"
VERDICT_STABLE = "StableBounds"
VERDICT_C_DEPENDENT = "CDependentBounds"
VERDICT_INFORMATIVE = "Informative"
VERDICT_COLLAPSES = "Collapses"
VERDICT_NOT_APPLICABLE = "NotApplicable"

# Indices with a single-class-collapse verdict: closed-form limit where one
# exists, otherwise a strict floor the limit provably exceeds.
_COLLAPSE_LIMITS = {
    "gmean_c": lambda c: Fraction(0),
    "acsa": lambda c: Fraction(c - 1, c),
}
_COLLAPSE_FLOORS = {
    "m_aurpc_ova": lambda c: Fraction(3 * (c - 1), 4 * c),
}

# Expected verdict rows (condition 1, condition 2, condition 3) for the
# thirteen audited indices; ``--check-paper`` compares against this table.
EXPECTED_VERDICTS: dict[str, tuple[str, str, str]] = {
    "gmean2": (VERDICT_INVARIANT, VERDICT_NOT_APPLICABLE, VERDICT_NOT_APPLICABLE),
    "auroc": (VERDICT_INVARIANT, VERDICT_NOT_APPLICABLE, VERDICT_NOT_APPLICABLE),
    "precision": (VERDICT_VIOLATED, VERDICT_NOT_APPLICABLE, VERDICT_NOT_APPLICABLE),
    "aurpc": (VERDICT_VIOLATED, VERDICT_NOT_APPLICABLE, VERDICT_NOT_APPLICABLE),
    "m_precision": (VERDICT_INVARIANT, VERDICT_NOT_APPLICABLE, VERDICT_NOT_APPLICABLE),
    "m_aurpc": (VERDICT_INVARIANT, VERDICT_NOT_APPLICABLE, VERDICT_NOT_APPLICABLE),
    "gmean_c": (VERDICT_INVARIANT, VERDICT_STABLE, VERDICT_COLLAPSES),
    "acsa": (VERDICT_INVARIANT, VERDICT_STABLE, VERDICT_INFORMATIVE),
    "auroc_ovo": (VERDICT_INVARIANT, VERDICT_C_DEPENDENT, VERDICT_NOT_APPLICABLE),
    "auroc_ova": (VERDICT_VIOLATED, VERDICT_C_DEPENDENT, VERDICT_NOT_APPLICABLE),
    "n_auroc_ova": (VERDICT_VIOLATED, VERDICT_STABLE, VERDICT_NOT_APPLICABLE),
    "aurpc_ova": (VERDICT_VIOLATED, VERDICT_STABLE, VERDICT_NOT_APPLICABLE),
    "m_aurpc_ova": (VERDICT_INVARIANT, VERDICT_STABLE, VERDICT_INFORMATIVE),
}


class BudgetExceededError(RuntimeError):
    """Exhaustive enumeration would exceed the configured matrix budget."""


# ---------------------------------------------------------------------------
# randomized matrix and scaling generation


def uniform_composition(rng: np.random.Generator, total: int, bins: int) -> tuple[int, ...]:
    """Uniformly random composition of ``total`` into ``bins`` non-negative parts."""
    if bins == 1:
        return (total,)
    slots = total + bins - 1
    bars = np.sort(rng.choice(slots, size=bins - 1, replace=False))
    parts = [int(bars[0])]
    for k in range(1, bins - 1):
        parts.append(int(bars[k] - bars[k - 1] - 1))
    parts.append(int(slots - bars[-1] - 1))
    return tuple(parts)


def sample_matrix(rng: np.random.Generator, class_count: int) -> ConfusionMatrix:
    """Random valid matrix: row sums uniform on [5, 50], cells by uniform composition."""
    rows = []
    for _ in range(class_count):
        total = int(rng.integers(5, 51))
        rows.append(uniform_composition(rng, total, class_count))
    return ConfusionMatrix(tuple(rows))


_SCALING_CANDIDATES = tuple(Fraction(1, d) for d in (5, 4, 3, 2)) + tuple(
    Fraction(k) for k in (1, 2, 3, 4, 5)
)
_INTEGER_CANDIDATES = tuple(Fraction(k) for k in (1, 2, 3, 4, 5))


def sample_scaling(rng: np.random.Generator, m: ConfusionMatrix) -> RowScaling:
    """Random integrality-preserving row scaling with at least two distinct factors."""
    factors = []
    for row in m.counts:
        valid = [
            b for b in _SCALING_CANDIDATES
            if all(v % b.denominator == 0 for v in row)
        ]
        factors.append(valid[int(rng.integers(len(valid)))])
    if len(set(factors)) == 1:
        row_idx = int(rng.integers(m.class_count))
        alternatives = [b for b in _INTEGER_CANDIDATES if b != factors[row_idx]]
        factors[row_idx] = alternatives[int(rng.integers(len(alternatives)))]
    return RowScaling.for_matrix(m, tuple(factors))


# ---------------------------------------------------------------------------
# condition 1


@dataclass(frozen=True)
class Condition1Witness:
    trial: int
    matrix: ConfusionMatrix
    factors: tuple[Fraction, ...]
    value_before: float
    value_after: float
    exact_before: Fraction
    exact_after: Fraction

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "matrix": self.matrix.to_lists(),
            "factors": [str(f) for f in self.factors],
            "value_before": self.value_before,
            "value_after": self.value_after,
            "exact_before": str(self.exact_before),
            "exact_after": str(self.exact_after),
        }


@dataclass(frozen=True)
class Condition1Result:
    index: str
    verdict: str
    trials: int
    class_count: int
    seed: int
    resampled_undefined: int
    max_float_drift: float
    witness: Condition1Witness | None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "trials": self.trials,
            "class_count": self.class_count,
            "seed": self.seed,
            "resampled_undefined": self.resampled_undefined,
            "max_float_drift": self.max_float_drift,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def _sample_defined(
    rng: np.random.Generator, index_id: str, class_count: int
) -> tuple[ConfusionMatrix, ExactEval, int]:
    """Sample until the index is defined on the matrix (bounded retries)."""
    resampled = 0
    for _ in range(200):
        m = sample_matrix(rng, class_count)
        ev = exact(index_id, m)
        if ev is not None:
            return m, ev, resampled
        resampled += 1
    raise RuntimeError(f"{index_id} undefined on 200 consecutive sampled matrices")


def audit_condition1(
    index_id: str,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    class_count: int | None = None,
) -> Condition1Result:
    """Randomized row-scaling invariance audit with exact-rational confirmation.

    Trial ``t`` draws its matrix and scaling from a stream seeded by
    ``(seed, t)``.  The verdict is Violated on the first exact disagreement
    (lowest trial index); Invariant requires every trial to agree both in
    floats (within 1e-12) and exactly.
    """
    spec = get_index(index_id)
    if spec.binary_only:
        if class_count not in (None, 2):
            raise MatrixError(f"{index_id} is a two-class index; class_count must be 2")
        class_count = 2
    else:
        class_count = class_count or 3
        if class_count < 2:
            raise MatrixError("class_count must be at least 2")
    if trials < 1:
        raise ValueError("trials must be at least 1")

    resampled_total = 0
    max_drift = 0.0
    witness = None
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        m, exact_before, resampled = _sample_defined(rng, index_id, class_count)
        resampled_total += resampled
        scaling = sample_scaling(rng, m)
        scaled = apply_scaling(m, scaling)
        exact_after = exact(index_id, scaled)
        value_before = evaluate(index_id, m).require()
        value_after = evaluate(index_id, scaled).require()
        max_drift = max(max_drift, abs(value_after - value_before))
        if exact_after is None or exact_before.key != exact_after.key:
            witness = Condition1Witness(
                trial=trial,
                matrix=m,
                factors=scaling.factors,
                value_before=value_before,
                value_after=value_after,
                exact_before=exact_before.key,
                exact_after=exact_after.key if exact_after else Fraction(-1),
            )
            break
    verdict = VERDICT_VIOLATED if witness else VERDICT_INVARIANT
    return Condition1Result(
        index=index_id,
        verdict=verdict,
        trials=trials,
        class_count=class_count,
        seed=seed,
        resampled_undefined=resampled_total,
        max_float_drift=max_drift,
        witness=witness,
    )


# ---------------------------------------------------------------------------
# exhaustive enumeration over fixed row sums


@lru_cache(maxsize=None)
def _compositions(total: int, bins: int) -> tuple[tuple[int, ...], ...]:
    if bins == 1:
        return ((total,),)
    return tuple(
        (first,) + rest
        for first in range(total + 1)
        for rest in _compositions(total - first, bins - 1)
    )


def enumeration_size(row_sums: Sequence[int]) -> int:
    """Number of matrices with the given row sums."""
    bins = len(row_sums)
    return math.prod(math.comb(s + bins - 1, bins - 1) for s in row_sums)


def iter_matrices(row_sums: Sequence[int]) -> Iterator[ConfusionMatrix]:
    """All valid matrices with the given row sums, in lexicographic row order."""
    bins = len(row_sums)
    for rows in itertools.product(*(_compositions(s, bins) for s in row_sums)):
        yield ConfusionMatrix(rows)


def default_row_sums(class_count: int) -> tuple[int, ...]:
    """Row sums keeping exhaustive enumeration small as the class count grows."""
    if class_count <= 3:
        per_row = 3
    elif class_count == 4:
        per_row = 2
    else:
        per_row = 1
    return (per_row,) * class_count


@dataclass(frozen=True)
class ExtremalResult:
    index: str
    row_sums: tuple[int, ...]
    min_matrix: ConfusionMatrix
    max_matrix: ConfusionMatrix
    min_value: float
    max_value: float
    exact_min: Fraction
    exact_max: Fraction
    matrix_count: int
    undefined_count: int


def _scan_extremal(index_ids: Sequence[str], row_sums: Sequence[int], budget: int):
    size = enumeration_size(row_sums)
    if size > budget:
        raise BudgetExceededError(
            f"row sums {tuple(row_sums)} require {size} matrices, budget is {budget}"
        )
    state = {i: [None, None, None, None, 0] for i in index_ids}
    # state: [min_val, argmin, max_val, argmax, undefined_count]
    count = 0
    for m in iter_matrices(row_sums):
        count += 1
        for index_id in index_ids:
            iv = evaluate(index_id, m)
            st = state[index_id]
            if not iv.defined:
                st[4] += 1
                continue
            v = iv.value
            if st[0] is None or v < st[0]:
                st[0], st[1] = v, m
            if st[2] is None or v > st[2]:
                st[2], st[3] = v, m
    return state, count


def enumerate_extremal(
    index_id: str,
    row_sums: Sequence[int],
    budget: int = DEFAULT_BUDGET,
) -> ExtremalResult:
    """Exact extrema of an index over all matrices with the given row sums.

    The scan runs in floats for speed; the extremal matrices are re-evaluated
    on the exact rational path, which is safe because distinct values over
    these small denominators are separated far beyond double rounding error.
    Ties keep the first matrix in enumeration order.
    """
    state, count = _scan_extremal([index_id], row_sums, budget)
    min_val, argmin, max_val, argmax, undefined = state[index_id]
    if argmin is None:
        raise MatrixError(f"{index_id} is undefined on every matrix with rows {row_sums}")
    exact_min = exact(index_id, argmin)
    exact_max = exact(index_id, argmax)
    return ExtremalResult(
        index=index_id,
        row_sums=tuple(int(s) for s in row_sums),
        min_matrix=argmin,
        max_matrix=argmax,
        min_value=exact_min.value,
        max_value=exact_max.value,
        exact_min=exact_min.key,
        exact_max=exact_max.key,
        matrix_count=count,
        undefined_count=undefined,
    )


# ---------------------------------------------------------------------------
# condition 2


@dataclass(frozen=True)
class BoundRow:
    class_count: int
    row_sums: tuple[int, ...]
    enumerated_min: float
    enumerated_max: float
    theoretical_min: float
    theoretical_max: float
    matrix_count: int
    undefined_count: int

    def to_dict(self) -> dict:
        return {
            "class_count": self.class_count,
            "row_sums": list(self.row_sums),
            "enumerated_min": self.enumerated_min,
            "enumerated_max": self.enumerated_max,
            "theoretical_min": self.theoretical_min,
            "theoretical_max": self.theoretical_max,
            "matrix_count": self.matrix_count,
            "undefined_count": self.undefined_count,
        }


@dataclass(frozen=True)
class Condition2Result:
    index: str
    verdict: str
    table: tuple[BoundRow, ...]

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "table": [row.to_dict() for row in self.table]}

    @classmethod
    def not_applicable(cls, index_id: str) -> "Condition2Result":
        return cls(index_id, VERDICT_NOT_APPLICABLE, ())


def audit_condition2_many(
    index_ids: Sequence[str],
    c_range: Sequence[int] = DEFAULT_C_RANGE,
    rows_by_c: dict[int, Sequence[int]] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> dict[str, Condition2Result]:
    """Bound audit for several indices sharing one enumeration pass per class count."""
    c_values = sorted(set(int(c) for c in c_range))
    if not c_values or c_values[0] < 2:
        raise MatrixError("class-count range must contain values >= 2")
    for index_id in index_ids:
        if get_index(index_id).binary_only:
            raise MatrixError(
                f"{index_id} is a two-class index; condition 2 needs a class-count range"
            )
    rows_for = {
        c: tuple(rows_by_c[c]) if rows_by_c and c in rows_by_c else default_row_sums(c)
        for c in c_values
    }

    tables: dict[str, list[BoundRow]] = {i: [] for i in index_ids}
    theory: dict[str, list[tuple[Fraction, Fraction]]] = {i: [] for i in index_ids}
    for c in c_values:
        row_sums = rows_for[c]
        if len(row_sums) != c:
            raise MatrixError(f"row sums {row_sums} do not match class count {c}")
        state, count = _scan_extremal(index_ids, row_sums, budget)
        for index_id in index_ids:
            min_val, argmin, max_val, argmax, undefined = state[index_id]
            if argmin is None:
                raise MatrixError(
                    f"{index_id} is undefined on every matrix with rows {row_sums}"
                )
            lo, hi = bounds_exact(index_id, c, profile=row_sums)
            theory[index_id].append((lo, hi))
            exact_min = exact(index_id, argmin)
            exact_max = exact(index_id, argmax)
            tables[index_id].append(
                BoundRow(
                    class_count=c,
                    row_sums=row_sums,
                    enumerated_min=exact_min.value,
                    enumerated_max=exact_max.value,
                    theoretical_min=float(lo),
                    theoretical_max=float(hi),
                    matrix_count=count,
                    undefined_count=undefined,
                )
            )

    out = {}
    for index_id in index_ids:
        pairs = theory[index_id]
        stable = all(p == pairs[0] for p in pairs)
        verdict = VERDICT_STABLE if stable else VERDICT_C_DEPENDENT
        out[index_id] = Condition2Result(index_id, verdict, tuple(tables[index_id]))
    return out


def audit_condition2(
    index_id: str,
    c_range: Sequence[int] = DEFAULT_C_RANGE,
    rows_by_c: dict[int, Sequence[int]] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Condition2Result:
    """Bound audit for one index across a class-count range."""
    return audit_condition2_many([index_id], c_range, rows_by_c, budget)[index_id]


# ---------------------------------------------------------------------------
# condition 3


@dataclass(frozen=True)
class CollapseFamily:
    """Matrices where one class's accuracy is ``eps`` and all others ``1 - eps``.

    Off-diagonal mass in each row is split evenly over the other classes, with
    the integer remainder assigned to the lowest-indexed other class.
    """

    class_count: int
    collapsed_class: int
    epsilons: tuple[Fraction, ...]
    matrices: tuple[ConfusionMatrix, ...]


def build_collapse_family(
    class_count: int,
    collapsed_class: int,
    epsilons: Sequence,
    row_sums: Sequence[int],
) -> CollapseFamily:
    """Construct the collapse family for a decreasing epsilon schedule.

    Every ``eps * row_sum`` and ``(1 - eps) * row_sum`` must be an integer;
    choose row sums as multiples of the epsilon denominators.  The schedule
    must strictly decrease and start at or below ``1 / class_count``.
    """
    if class_count < 2:
        raise MatrixError("class_count must be at least 2")
    if not 0 <= collapsed_class < class_count:
        raise MatrixError(f"collapsed_class {collapsed_class} out of range")
    eps = tuple(to_fraction(e) for e in epsilons)
    if not eps:
        raise MatrixError("epsilon schedule is empty")
    if any(e <= 0 for e in eps):
        raise MatrixError("epsilons must be positive")
    if eps[0] > Fraction(1, class_count):
        raise MatrixError(
            f"first epsilon {eps[0]} exceeds 1/{class_count}, the collapse entry point"
        )
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise MatrixError("epsilon schedule must strictly decrease")
    sums = tuple(int(s) for s in row_sums)
    if len(sums) != class_count or any(s <= 0 for s in sums):
        raise MatrixError(f"row sums {sums} invalid for {class_count} classes")

    matrices = []
    for e in eps:
        rows = []
        for r in range(class_count):
            diag_rate = e if r == collapsed_class else 1 - e
            diag = diag_rate * sums[r]
            if diag.denominator != 1:
                raise IntegralityError(
                    f"epsilon {e} with row sum {sums[r]} gives non-integer diagonal {diag}"
                )
            diag = int(diag)
            off = sums[r] - diag
            others = [j for j in range(class_count) if j != r]
            base, rem = divmod(off, class_count - 1)
            row = [0] * class_count
            row[r] = diag
            for j in others:
                row[j] = base
            row[others[0]] += rem
            rows.append(tuple(row))
        matrices.append(ConfusionMatrix(tuple(rows)))
    return CollapseFamily(class_count, collapsed_class, eps, tuple(matrices))


@dataclass(frozen=True)
class Condition3Result:
    index: str
    verdict: str
    class_count: int
    collapsed_class: int
    epsilons: tuple[Fraction, ...]
    values: tuple[float, ...]
    empirical_limit: float | None
    theoretical_limit: float | None
    lower_bound: float | None
    strict_floor: float | None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "class_count": self.class_count,
            "collapsed_class": self.collapsed_class,
            "epsilons": [str(e) for e in self.epsilons],
            "values": list(self.values),
            "empirical_limit": self.empirical_limit,
            "theoretical_limit": self.theoretical_limit,
            "lower_bound": self.lower_bound,
            "strict_floor": self.strict_floor,
        }

    @classmethod
    def not_applicable(cls, index_id: str) -> "Condition3Result":
        return cls(index_id, VERDICT_NOT_APPLICABLE, 0, 0, (), (), None, None, None, None)


def default_collapse_family(class_count: int, collapsed_class: int = 0) -> CollapseFamily:
    """Family with epsilons 1/C, 1/100, 1/10000; row sums C*10^4 keep all integral."""
    eps = (Fraction(1, class_count), Fraction(1, 100), Fraction(1, 10000))
    return build_collapse_family(
        class_count, collapsed_class, eps, (class_count * 10_000,) * class_count
    )


def audit_condition3(index_id: str, family: CollapseFamily) -> Condition3Result:
    """Evaluate an index along a collapse family and compare its limit to the floor.

    For the indices with a known closed-form limit the verdict follows the
    closed form (a finite epsilon cannot certify a limit of zero on its own);
    the evaluated series is recorded as the empirical evidence.  For any other
    index the verdict falls back to comparing the value at the smallest
    epsilon against the index's lower bound.
    """
    spec = get_index(index_id)
    if spec.binary_only and family.class_count != 2:
        raise MatrixError(f"{index_id} is a two-class index")
    values = tuple(evaluate(index_id, m).require() for m in family.matrices)
    empirical = values[-1]
    c = family.class_count
    profile = family.matrices[0].row_sums
    lo, _hi = bounds_exact(index_id, c, profile=profile)

    limit_fn = _COLLAPSE_LIMITS.get(index_id)
    floor_fn = _COLLAPSE_FLOORS.get(index_id)
    theoretical = float(limit_fn(c)) if limit_fn else None
    floor = float(floor_fn(c)) if floor_fn else None

    if limit_fn is not None:
        collapses = abs(float(limit_fn(c)) - float(lo)) <= COLLAPSE_TOL
    elif floor_fn is not None:
        exceeds = all(v > floor for v in values) and floor > float(lo)
        collapses = not exceeds and abs(empirical - float(lo)) <= COLLAPSE_TOL
    else:
        collapses = abs(empirical - float(lo)) <= COLLAPSE_TOL
    verdict = VERDICT_COLLAPSES if collapses else VERDICT_INFORMATIVE
    return Condition3Result(
        index=index_id,
        verdict=verdict,
        class_count=c,
        collapsed_class=family.collapsed_class,
        epsilons=family.epsilons,
        values=values,
        empirical_limit=empirical,
        theoretical_limit=theoretical,
        lower_bound=float(lo),
        strict_floor=floor,
    )


# ---------------------------------------------------------------------------
# full reports


_CONDITION3_SCOPE = frozenset(_COLLAPSE_LIMITS) | frozenset(_COLLAPSE_FLOORS)


@dataclass(frozen=True)
class AuditReport:
    index: str
    seed: int
    condition1: Condition1Result | None
    condition2: Condition2Result | None
    condition3: Condition3Result | None

    def to_dict(self) -> dict:
        out: dict = {"index": self.index, "seed": self.seed}
        if self.condition1 is not None:
            out["condition1"] = self.condition1.to_dict()
        if self.condition2 is not None:
            out["condition2"] = self.condition2.to_dict()
        if self.condition3 is not None:
            out["condition3"] = self.condition3.to_dict()
        return out

    def verdict_row(self) -> tuple[str, str, str]:
        return (
            self.condition1.verdict if self.condition1 else VERDICT_NOT_APPLICABLE,
            self.condition2.verdict if self.condition2 else VERDICT_NOT_APPLICABLE,
            self.condition3.verdict if self.condition3 else VERDICT_NOT_APPLICABLE,
        )


def audit_index(
    index_id: str,
    conditions: Iterable[int] = (1, 2, 3),
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    class_count: int | None = None,
    c_range: Sequence[int] = DEFAULT_C_RANGE,
    rows_by_c: dict[int, Sequence[int]] | None = None,
    budget: int = DEFAULT_BUDGET,
    _shared_condition2: dict[str, Condition2Result] | None = None,
) -> AuditReport:
    """Run the requested condition audits for one index."""
    conditions = set(conditions)
    if not conditions <= {1, 2, 3}:
        raise ValueError(f"conditions must be among 1, 2, 3; got {sorted(conditions)}")
    spec = get_index(index_id)

    cond1 = None
    if 1 in conditions:
        cond1 = audit_condition1(index_id, trials=trials, seed=seed, class_count=class_count)

    cond2 = None
    if 2 in conditions:
        if spec.binary_only:
            cond2 = Condition2Result.not_applicable(index_id)
        elif _shared_condition2 is not None:
            cond2 = _shared_condition2[index_id]
        else:
            cond2 = audit_condition2(index_id, c_range=c_range, rows_by_c=rows_by_c, budget=budget)

    cond3 = None
    if 3 in conditions:
        if spec.binary_only or index_id not in _CONDITION3_SCOPE:
            cond3 = Condition3Result.not_applicable(index_id)
        else:
            family = default_collapse_family(class_count or 3)
            cond3 = audit_condition3(index_id, family)

    return AuditReport(index_id, seed, cond1, cond2, cond3)


def audit_all(
    index_ids: Sequence[str] | None = None,
    conditions: Iterable[int] = (1, 2, 3),
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    class_count: int | None = None,
    c_range: Sequence[int] = DEFAULT_C_RANGE,
    rows_by_c: dict[int, Sequence[int]] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[AuditReport]:
    """Audit several indices, sharing the condition-2 enumeration pass."""
    ids = tuple(index_ids) if index_ids is not None else AUDITED_INDEX_IDS
    conditions = set(conditions)
    shared = None
    if 2 in conditions:
        multi = [i for i in ids if not get_index(i).binary_only]
        if multi:
            shared = audit_condition2_many(multi, c_range=c_range, rows_by_c=rows_by_c, budget=budget)
    return [
        audit_index(
            i,
            conditions=conditions,
            trials=trials,
            seed=seed,
            class_count=class_count,
            c_range=c_range,
            rows_by_c=rows_by_c,
            budget=budget,
            _shared_condition2=shared,
        )
        for i in ids
    ]


def conformance_mismatches(reports: Sequence[AuditReport]) -> list[str]:
    """Compare audited verdicts with the expected table; empty list means conformance.

    Only conditions that were actually audited are compared, and only for
    indices that have an expected row.
    """
    problems = []
    for report in reports:
        expected = EXPECTED_VERDICTS.get(report.index)
        if expected is None:
            continue
        actual = (report.condition1, report.condition2, report.condition3)
        for cond_num, (exp, act) in enumerate(zip(expected, actual), start=1):
            if act is None:
                continue
            if act.verdict != exp:
                problems.append(
                    f"{report.index}: condition {cond_num} expected {exp}, got {act.verdict}"
                )
    return problems


def reports_to_json(reports: Sequence[AuditReport], indent: int = 2) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=indent)
