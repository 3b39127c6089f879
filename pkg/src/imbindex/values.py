"""Result type shared by all index evaluators."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IndexValue:
    """An evaluated index: either a number in its range or an explicit undefined.

    Undefined results never degrade silently to 0, 1, or NaN; the reason names
    the vanishing denominator so downstream audits and reports can surface it.
    """

    index: str
    value: float | None
    reason: str | None = None

    @property
    def defined(self) -> bool:
        return self.value is not None

    def require(self) -> float:
        if self.value is None:
            raise ValueError(f"{self.index} is undefined: {self.reason}")
        return self.value


def defined(index: str, value: float) -> IndexValue:
    return IndexValue(index, float(value))


def undefined(index: str, reason: str) -> IndexValue:
    return IndexValue(index, None, reason)
