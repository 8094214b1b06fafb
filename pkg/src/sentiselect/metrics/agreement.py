"""Krippendorff's alpha with the interval difference metric.

alpha = 1 - D_o / D_e, where observed disagreement D_o averages squared
differences between ratings of the same item and expected disagreement
D_e averages them over all pairable ratings regardless of item. Ratings
here are numeric scales with meaningful distances, hence the interval
metric delta(v, v') = (v - v')^2. Missing cells follow the standard
pairable-value accounting: an item with fewer than two ratings
contributes nothing at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import InvalidArgumentError, UndefinedStatisticError


@dataclass(frozen=True)
class AgreementMatrix:
    """Items x annotators grid of optional ratings (None = missing)."""

    values: tuple[tuple[float | None, ...], ...]

    def __post_init__(self):
        rows = tuple(
            tuple(None if v is None else float(v) for v in row) for row in self.values
        )
        object.__setattr__(self, "values", rows)
        if not rows:
            raise InvalidArgumentError("agreement matrix has no items")
        width = len(rows[0])
        if width < 2:
            raise InvalidArgumentError("need at least 2 annotators")
        if any(len(row) != width for row in rows):
            raise InvalidArgumentError("ragged agreement matrix")
        if not any(self._present(row) >= 2 for row in rows):
            raise InvalidArgumentError("no item has 2 or more ratings")

    @staticmethod
    def _present(row) -> int:
        return sum(1 for v in row if v is not None)

    def pairable_units(self) -> list[list[float]]:
        """Ratings of items that have at least two of them."""
        return [
            [v for v in row if v is not None]
            for row in self.values
            if self._present(row) >= 2
        ]


def krippendorff_alpha_interval(matrix: AgreementMatrix) -> float:
    """alpha = 1 - D_o/D_e with delta(v, v') = (v - v')^2.

    Raises UndefinedStatisticError when every pairable rating is
    identical (D_e = 0): agreement is then vacuous, not perfect.
    """
    units = matrix.pairable_units()
    n_pairable = sum(len(unit) for unit in units)
    if n_pairable < 2:
        raise InvalidArgumentError("need at least 2 pairable ratings")

    observed = math.fsum(
        math.fsum((a - b) ** 2 for a in unit for b in unit) / (len(unit) - 1)
        for unit in units
    ) / n_pairable

    # Sum of (a - b)^2 over all ordered pairs equals 2n*sum(v^2) - 2*(sum v)^2.
    pooled = [v for unit in units for v in unit]
    sum_v = math.fsum(pooled)
    sum_v2 = math.fsum(v * v for v in pooled)
    expected = (2.0 * n_pairable * sum_v2 - 2.0 * sum_v * sum_v) / (n_pairable * (n_pairable - 1))

    if expected == 0.0:
        raise UndefinedStatisticError(
            "expected disagreement is zero (all pairable ratings identical)"
        )
    return 1.0 - observed / expected
