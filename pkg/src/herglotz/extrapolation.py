"""Neville extrapolation of boundary limits over geometric schedules.

Samples at y_k = y0 * ratio^k are polynomial-extrapolated to y = 0.  The
tableau depth is capped so that the returned diagonal entry only depends on the
smallest sampled heights, which keeps the extrapolation inside the disc of
analyticity even when nearby boundary singularities limit its radius.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NonConvergentLimitError, SpecError

__all__ = ["LimitSchedule", "ExtrapolatedLimit", "neville_zero_limit",
           "limit_from_samples", "aitken_limit", "best_limit"]

DIVERGENCE_FACTOR = 1e-4


@dataclass(frozen=True)
class LimitSchedule:
    """Geometric height schedule y_k = y0 * ratio^k, k = 0..steps-1."""

    y0: float = 0.5
    ratio: float = 0.5
    steps: int = 12
    order: int = 8

    def __post_init__(self):
        if not (self.y0 > 0 and 0.0 < self.ratio < 1.0):
            raise SpecError("require y0 > 0 and ratio in (0, 1)")
        if self.steps < 3 or self.order < 1:
            raise SpecError("require steps >= 3 and order >= 1")
        if self.y0 * self.ratio ** self.steps <= 1e-13:
            raise SpecError("schedule descends below the floating-point floor")

    @property
    def heights(self) -> np.ndarray:
        return self.y0 * self.ratio ** np.arange(self.steps)


@dataclass(frozen=True)
class ExtrapolatedLimit:
    """Result of a y -> 0 extrapolation: final tableau entry plus an error estimate."""

    value: complex
    error_estimate: float
    sequence: tuple = field(default_factory=tuple)

    @property
    def converged(self) -> bool:
        return self.error_estimate <= DIVERGENCE_FACTOR * (1.0 + abs(self.value))

    def require_converged(self, what: str = "limit") -> complex:
        if not self.converged:
            raise NonConvergentLimitError(
                f"{what} did not converge: error estimate {self.error_estimate:.3e} "
                f"at value {self.value:.6g}")
        return self.value

    def to_json(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "error": self.error_estimate,
            "sequence": [[y, v.real, v.imag] for y, v in self.sequence],
        }


def neville_zero_limit(xs: Sequence[float], fs, order: int = 8):
    """Polynomial extrapolation of samples (xs, fs) to x = 0.

    fs may be one-dimensional or of shape (len(xs), ...): trailing axes are
    extrapolated in a single vectorized tableau.  Returns (value, error) with
    error the difference of the last two tableau diagonal entries.
    """
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=complex)
    n = len(xs)
    if n < 2:
        return fs[0], np.full(fs.shape[1:], np.inf, dtype=float)
    rows = [fs[0]]
    prev = [fs[0]]
    for i in range(1, n):
        cur = [fs[i]]
        depth = min(i, order)
        for j in range(1, depth + 1):
            # P at 0 through nodes x_{i-j}..x_i.
            num = xs[i] * prev[j - 1] - xs[i - j] * cur[j - 1]
            cur.append(num / (xs[i] - xs[i - j]))
        rows.append(cur[-1])
        prev = cur
    value = rows[-1]
    err = np.abs(rows[-1] - rows[-2])
    return value, err


def limit_from_samples(ys: Sequence[float], values: Sequence[complex],
                       order: int = 8) -> ExtrapolatedLimit:
    value, err = neville_zero_limit(ys, values, order=order)
    seq = tuple((float(y), complex(v)) for y, v in zip(ys, values))
    return ExtrapolatedLimit(complex(value), float(err), seq)


def aitken_limit(values, passes: int = 2):
    """Iterated Aitken delta-squared acceleration of a convergent sequence.

    Handles geometrically convergent tails of unknown ratio (fractional-power
    boundary rates on geometric height schedules), which defeat polynomial
    extrapolation.  Works along axis 0; returns (value, error_estimate).
    """
    v = np.asarray(values, dtype=complex)
    for _ in range(passes):
        if v.shape[0] < 3:
            break
        d1 = v[1:] - v[:-1]
        d2 = d1[1:] - d1[:-1]
        with np.errstate(divide="ignore", invalid="ignore"):
            corr = np.where(d2 != 0, d1[1:] ** 2 / np.where(d2 != 0, d2, 1.0), 0.0)
        v = v[2:] - corr
    if v.shape[0] >= 2:
        err = np.abs(v[-1] - v[-2])
    else:
        err = np.full(v.shape[1:], np.inf, dtype=float)
    return v[-1], err


def best_limit(xs, values, order: int = 8):
    """Neville extrapolation with Aitken fallback, componentwise by error estimate.

    The fallback is rejected wherever the raw samples grow along the schedule:
    Aitken assigns divergent geometric sequences their finite anti-limit with
    a spuriously small error estimate, which would mask true divergence.
    """
    values = np.asarray(values, dtype=complex)
    nev_val, nev_err = neville_zero_limit(xs, values, order=order)
    ait_val, ait_err = aitken_limit(values)
    nev_val, nev_err = np.asarray(nev_val), np.asarray(nev_err)
    ait_val, ait_err = np.asarray(ait_val), np.asarray(ait_err)
    grew = np.abs(values[-1]) > 8.0 * (np.abs(values[0]) + 1.0)
    use_nev = (nev_err <= ait_err) | grew
    value = np.where(use_nev, nev_val, ait_val)
    err = np.where(use_nev, nev_err, ait_err)
    if value.ndim == 0:
        return complex(value), float(err)
    return value, err
