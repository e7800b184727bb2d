"""Numerical recovery of boundary data from off-boundary evaluations.

The central functional is the line inversion

    lim_{y -> +0}  integral  test(x) (f(x+iy) - f(x-iy)) / (2 pi i (1+x^2)) dx,

which recovers the finite-line part of a representing measure (the mass at
infinity is invisible to it and is produced separately from f(iy)/y).  For
each height the x-integral is evaluated adaptively first and heights are then
Neville-extrapolated, so limits and integrals are taken in the functional's
own order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import AnalyticFunction, invert_variable
from .errors import NonSimpleBehaviorError
from .extrapolation import (ExtrapolatedLimit, LimitSchedule, best_limit,
                            limit_from_samples)
from .measures import TestFunction
from .quadrature import quad_real_line

__all__ = [
    "PolarGrid",
    "SimpleScanReport",
    "extract_functional",
    "density_at",
    "density_grid",
    "atomic_mass_at",
    "atomic_mass_batch",
    "atomic_mass_at_infinity",
    "vladimirov_norm",
    "simple_scan",
    "sup_abs_growth",
]

DEFAULT_SCHEDULE = LimitSchedule()
DIVERGENCE_FACTOR = 1e-4


def _plus_minus_difference(f: AnalyticFunction, x, y: float):
    x = np.asarray(x, dtype=float)
    return f(x + 1j * y) - f(x - 1j * y)


def extract_functional(f: AnalyticFunction, test: TestFunction,
                       sched: LimitSchedule = DEFAULT_SCHEDULE, *,
                       atol: float = 1e-10) -> ExtrapolatedLimit:
    """Extrapolated value of the line-inversion functional against a test function.

    A non-convergent tableau is reported through the error estimate, never
    silently discarded.
    """
    lo, hi = test.support
    ys = sched.heights
    vals = []
    for y in ys:
        def integrand(x, y=y):
            x = np.asarray(x, dtype=float)
            return test(x) * _plus_minus_difference(f, x, y) \
                / (2j * np.pi * (1.0 + x * x))
        v, _ = quad_real_line(integrand, lo, hi, atol=atol)
        vals.append(v)
    return limit_from_samples(ys, vals, order=sched.order)


def density_at(f: AnalyticFunction, x: float,
               sched: LimitSchedule = DEFAULT_SCHEDULE) -> ExtrapolatedLimit:
    """Pointwise boundary density (f(x+iy) - f(x-iy)) / (2 pi i (1+x^2)) as y -> 0.

    Valid where the boundary measure is absolutely continuous with continuous
    density; a diverging tableau signals a nearby atom or non-simple behavior.
    """
    ys = sched.heights
    zs = x + 1j * ys
    vals = (f(zs) - f(np.conj(zs))) / (2j * np.pi * (1.0 + x * x))
    value, err = best_limit(ys, vals, order=sched.order)
    seq = tuple((float(y), complex(v)) for y, v in zip(ys, vals))
    return ExtrapolatedLimit(complex(value), float(err), seq)


def density_grid(f: AnalyticFunction, xs,
                 sched: LimitSchedule = DEFAULT_SCHEDULE):
    """Vectorized density_at over a grid: returns (values, error_estimates)."""
    xs = np.asarray(xs, dtype=float)
    ys = sched.heights
    Z = xs[None, :] + 1j * ys[:, None]
    diff = f(Z) - f(np.conj(Z))
    samples = diff / (2j * np.pi * (1.0 + xs * xs)[None, :])
    return best_limit(ys, samples, order=sched.order)


def atomic_mass_at(f: AnalyticFunction, x: float,
                   sched: LimitSchedule = DEFAULT_SCHEDULE) -> complex:
    """Atomic mass at a real boundary point: lim y f(x+iy) / (i (1+x^2)).

    Polynomial extrapolation is backed by Aitken acceleration for the
    fractional-power rates a nearby density can impose on the limit.
    """
    ys = sched.heights
    vals = ys * f(x + 1j * ys) / (1j * (1.0 + x * x))
    value, err = best_limit(ys, vals, order=sched.order)
    if err > DIVERGENCE_FACTOR * (1.0 + abs(value)):
        raise NonSimpleBehaviorError(
            f"atomic mass limit at x={x} diverged (error estimate {err:.2e})")
    return complex(value)


def atomic_mass_batch(f: AnalyticFunction, xs,
                      sched: LimitSchedule = DEFAULT_SCHEDULE):
    """Vectorized atomic masses over locations: returns (masses, error_estimates)."""
    xs = np.asarray(xs, dtype=float)
    ys = sched.heights
    Z = xs[None, :] + 1j * ys[:, None]
    samples = ys[:, None] * f(Z) / (1j * (1.0 + xs * xs)[None, :])
    return best_limit(ys, samples, order=sched.order)


def atomic_mass_at_infinity(f: AnalyticFunction, *, y0: float = 4.0,
                            steps: int = 14, order: int = 8) -> complex:
    """Atomic mass at infinity: lim_{y -> inf} f(iy) / (i y) over doubling heights."""
    ys = y0 * 2.0 ** np.arange(steps)
    vals = f(1j * ys) / ys
    us = 1.0 / ys
    value, err = best_limit(us, vals, order=order)
    if err > DIVERGENCE_FACTOR * (1.0 + abs(value)):
        raise NonSimpleBehaviorError(
            f"atomic mass limit at infinity diverged (error estimate {err:.2e})")
    return complex(value) / 1j


@dataclass(frozen=True)
class PolarGrid:
    """Log-spaced radii, uniform interior angles, for upper half plane scans."""

    r_min: float = 1e-3
    r_max: float = 1e3
    n_radial: int = 61
    n_angular: int = 41


def vladimirov_norm(f: AnalyticFunction, grid: PolarGrid = PolarGrid()) -> float:
    """Grid supremum of (Im z / (1 + |z|^2)) |f(z)| over the upper half plane."""
    r = np.logspace(math.log10(grid.r_min), math.log10(grid.r_max), grid.n_radial)
    th = np.linspace(0.0, math.pi, grid.n_angular)[1:-1]
    z = r[:, None] * np.exp(1j * th)[None, :]
    q = z.imag / (1.0 + np.abs(z) ** 2) * np.abs(f(z))
    return float(np.max(q))


@dataclass(frozen=True)
class SimpleScanReport:
    """Boxed boundary-neighborhood scan of (Im z/(1+|z|^2))|f| plus a growth fit."""

    sup: float
    alpha: float
    bounded: bool
    window: tuple
    ys: tuple
    sup_per_y: tuple

    BOUNDED_ALPHA = 0.1


def _scan_part(f: AnalyticFunction, lo: float, hi: float, ys, nx: int):
    xs = np.linspace(lo, hi, nx)
    Z = xs[None, :] + 1j * ys[:, None]
    q_up = Z.imag / (1.0 + np.abs(Z) ** 2) * np.abs(f(Z))
    Zl = np.conj(Z)
    q_dn = -Zl.imag / (1.0 + np.abs(Zl) ** 2) * np.abs(f(Zl))
    return np.maximum(q_up.max(axis=1), q_dn.max(axis=1))


def simple_scan(f: AnalyticFunction, window, y_floor: float = 1e-5, *,
                y_top: float = 0.5, nx: int = 81, ny: int = 33) -> SimpleScanReport:
    """Diagnose simple behavior of f on a window of the extended real line.

    Windows reaching infinity are scanned in the inversion chart u = -1/x near
    0, where the scan quantity is exactly invariant.
    """
    lo, hi = window
    ys = np.logspace(math.log10(y_top), math.log10(y_floor), ny)
    cut = 1e3
    parts = []
    flo = max(lo, -cut)
    fhi = min(hi, cut)
    if flo < fhi:
        parts.append((flo, fhi, f))
    tilde = None
    if math.isinf(lo) or math.isinf(hi) or lo < -cut or hi > cut:
        tilde = invert_variable(f)
        if hi > cut:
            # x in (cut, hi] corresponds to u = -1/x in [-1/cut, -1/hi)
            parts.append((-1.0 / cut,
                          -1.0 / hi if math.isfinite(hi) else 0.0, tilde))
        if lo < -cut:
            # x in [lo, -cut) corresponds to u = -1/x in (-1/lo, 1/cut]
            parts.append((-1.0 / lo if math.isfinite(lo) else 0.0,
                          1.0 / cut, tilde))
    sup_per_y = np.zeros(ny)
    for plo, phi, fn in parts:
        if plo >= phi:
            continue
        sup_per_y = np.maximum(sup_per_y, _scan_part(fn, plo, phi, ys, nx))
    sup = float(np.max(sup_per_y))
    low = ys <= 10.0 * y_floor
    if np.count_nonzero(low) < 3:
        low = np.argsort(ys)[:max(3, ny // 4)]
    logs = np.log(np.maximum(sup_per_y[low], 1e-300))
    slope = np.polyfit(np.log(ys[low]), logs, 1)[0]
    alpha = float(-slope)
    bounded = alpha < SimpleScanReport.BOUNDED_ALPHA
    return SimpleScanReport(sup, alpha, bounded, (lo, hi),
                            tuple(ys.tolist()), tuple(sup_per_y.tolist()))


def sup_abs_growth(f: AnalyticFunction, a: float, b: float, *,
                   y_top: float = 0.25, y_floor: float = 1e-4,
                   nx: int = 61, ny: int = 17, side: str = "upper") -> float:
    """Fitted exponent beta of sup_x |f(x + iy)| ~ y^(-beta) on [a, b]."""
    ys = np.logspace(math.log10(y_top), math.log10(y_floor), ny)
    xs = np.linspace(a, b, nx)
    sgn = 1.0 if side == "upper" else -1.0
    Z = xs[None, :] + sgn * 1j * ys[:, None]
    sup = np.abs(f(Z)).max(axis=1)
    slope = np.polyfit(np.log(ys), np.log(np.maximum(sup, 1e-300)), 1)[0]
    return float(-slope)
