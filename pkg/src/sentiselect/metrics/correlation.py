"""Pearson's r with a two-tailed p-value from the exact t-distribution.

The p-value uses the regularized incomplete beta identity
P(|T| >= t) = I_x(df/2, 1/2) with x = df / (df + t^2), which matches
reference statistical software even at small sample sizes where the
normal approximation drifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from ..errors import InvalidArgumentError, UndefinedStatisticError


@dataclass(frozen=True)
class PairedSamples:
    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(float(v) for v in self.xs))
        object.__setattr__(self, "ys", tuple(float(v) for v in self.ys))
        if len(self.xs) != len(self.ys):
            raise InvalidArgumentError(
                f"paired samples need equal lengths, got {len(self.xs)} and {len(self.ys)}"
            )
        if len(self.xs) < 3:
            raise InvalidArgumentError(f"need at least 3 pairs, got {len(self.xs)}")

    def __len__(self) -> int:
        return len(self.xs)


def pearson_r(samples: PairedSamples) -> tuple[float, float]:
    """Return (r, two-tailed p). Zero variance in either series is an error."""
    x = np.asarray(samples.xs, dtype=np.float64)
    y = np.asarray(samples.ys, dtype=np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedStatisticError("correlation undefined for a zero-variance series")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))

    df = len(samples) - 2
    if abs(r) == 1.0:
        return r, 0.0
    t_squared = r * r * df / (1.0 - r * r)
    p = float(betainc(df / 2.0, 0.5, df / (df + t_squared)))
    return r, p
