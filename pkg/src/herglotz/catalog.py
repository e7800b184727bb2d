"""Holomorphic function catalog: evaluatable objects with boundary metadata.

Every function familiar from the boundary-measure theory is available as an
``AnalyticFunction``: an off-boundary evaluator together with its boundary
support, its simple-behavior classification, and a serializable build recipe.
The generic member is the Cauchy-type transform of an arbitrary boundary
measure,

    phi(z) = c + integral of (1 + s z)/(s - z) lambda(ds),

whose kernel takes the value z at s = infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, SpecError
from .measures import (BoundaryMeasure, measure_from_json, measure_to_json,
                       INF)
from .quadrature import adaptive_quad, quad_real_line

__all__ = [
    "AnalyticFunction",
    "CatalogSpec",
    "principal_log",
    "principal_power",
    "catalog_build",
    "cauchy_kernel",
    "cauchy_eval",
    "invert_variable",
    "star_reflect",
    "boundary_atoms_in_window",
]


def _as_complex_array(z):
    arr = np.asarray(z, dtype=complex)
    return arr, (arr.ndim == 0)


@dataclass(frozen=True)
class AnalyticFunction:
    """Evaluator on the complement of the boundary (real line or unit circle).

    boundary_support entries are ("interval", lo, hi) or ("point", loc) with
    loc possibly infinite; pole_locator enumerates atom candidates inside a
    window for families with infinitely many poles.
    """

    fn: Callable = field(repr=False)
    picture: str = "half-plane"
    boundary_support: tuple = ()
    simple_on_boundary: str = "unknown"
    simple_condition: str = ""
    has_representing_measure: Optional[bool] = None
    descriptor: Optional[dict] = None
    pole_locator: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        if self.picture not in ("half-plane", "disc"):
            raise SpecError(f"unknown picture {self.picture!r}")

    def __call__(self, z):
        arr, scalar = _as_complex_array(z)
        if self.picture == "half-plane":
            if np.any(arr.imag == 0.0):
                raise DomainError("evaluator invoked on the real boundary")
        else:
            if np.any(np.abs(arr) == 1.0):
                raise DomainError("evaluator invoked on the unit circle")
        out = np.asarray(self.fn(arr), dtype=complex)
        return complex(out.ravel()[0]) if scalar else out


def principal_log(z):
    """Principal branch of the logarithm; domain error on (-inf, 0], 0 and infinity."""
    arr, scalar = _as_complex_array(z)
    if np.any(~np.isfinite(arr)):
        raise DomainError("logarithm undefined at infinity")
    on_cut = (arr.imag == 0.0) & (arr.real <= 0.0)
    if np.any(on_cut):
        raise DomainError("logarithm evaluated on the branch cut (-inf, 0]")
    out = np.log(arr)
    return complex(out) if scalar else out


def principal_power(z, p):
    """z**p = exp(p log z) on the cut plane; satisfies (z**p)* = z**conj(p)."""
    lg = principal_log(z)
    out = np.exp(np.asarray(p, dtype=complex) * lg)
    return complex(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# Overflow-safe trigonometric kernels (one-sided exponential forms)


def _tan_values(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    up = z.imag >= 0
    if np.any(up):
        w = np.exp(2j * z[up])
        out[up] = -1j * (w - 1.0) / (w + 1.0)
    if np.any(~up):
        v = np.exp(-2j * z[~up])
        out[~up] = -1j * (1.0 - v) / (1.0 + v)
    return out


def _cot_values(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    up = z.imag >= 0
    if np.any(up):
        w = np.exp(2j * z[up])
        out[up] = 1j * (w + 1.0) / (w - 1.0)
    if np.any(~up):
        v = np.exp(-2j * z[~up])
        out[~up] = 1j * (1.0 + v) / (1.0 - v)
    return out


def _inv_sin_values(zeta):
    zeta = np.asarray(zeta, dtype=complex)
    out = np.empty_like(zeta)
    up = zeta.imag >= 0
    if np.any(up):
        out[up] = 2j * np.exp(1j * zeta[up]) / (np.exp(2j * zeta[up]) - 1.0)
    if np.any(~up):
        out[~up] = 2j * np.exp(-1j * zeta[~up]) / (1.0 - np.exp(-2j * zeta[~up]))
    return out


# ---------------------------------------------------------------------------
# Catalog specs


_KNOWN_KINDS = (
    "tan", "cot", "csc2", "power", "power_log", "power_over_log",
    "tan_sigma_log", "cot_sigma_log", "csc2_sigma_log", "rational",
    "cauchy", "disc_herglotz",
)


@dataclass(frozen=True)
class CatalogSpec:
    """Structured build recipe for a catalog function."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _KNOWN_KINDS:
            raise SpecError(f"unknown catalog kind {self.kind!r}")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        p = self.params
        if "p" in p:
            v = complex(p["p"])
            out["p"] = [v.real, v.imag]
        if "sigma" in p:
            out["sigma"] = float(p["sigma"])
        if self.kind == "rational":
            out["a"] = [complex(p["a"]).real, complex(p["a"]).imag]
            out["b"] = [complex(p["b"]).real, complex(p["b"]).imag]
            out["poles"] = [float(s) for s in p["poles"]]
            out["coeffs"] = [[complex(c).real, complex(c).imag] for c in p["coeffs"]]
        if self.kind in ("cauchy", "disc_herglotz"):
            out["measure"] = measure_to_json(p["measure"])
            c = complex(p.get("constant", 0))
            out["constant"] = [c.real, c.imag]
        return out

    @staticmethod
    def from_json(data: dict) -> "CatalogSpec":
        kind = data.get("kind")
        params = {}
        if "p" in data:
            params["p"] = complex(data["p"][0], data["p"][1])
        if "sigma" in data:
            params["sigma"] = float(data["sigma"])
        if kind == "rational":
            params["a"] = complex(data["a"][0], data["a"][1])
            params["b"] = complex(data["b"][0], data["b"][1])
            params["poles"] = [float(s) for s in data["poles"]]
            params["coeffs"] = [complex(c[0], c[1]) for c in data["coeffs"]]
        if kind in ("cauchy", "disc_herglotz"):
            m = data["measure"]
            params["measure"] = measure_from_json(m) if isinstance(m, dict) else m
            c = data.get("constant", [0.0, 0.0])
            params["constant"] = complex(c[0], c[1])
        return CatalogSpec(kind, params)


# ---------------------------------------------------------------------------
# Cauchy transform


def cauchy_kernel(s, z):
    """(1 + s z)/(s - z) with the limiting value z at s = infinity."""
    s, z = np.broadcast_arrays(np.asarray(s, dtype=float),
                               np.asarray(z, dtype=complex))
    out = np.empty(s.shape, dtype=complex)
    fin = np.isfinite(s)
    out[fin] = (1.0 + s[fin] * z[fin]) / (s[fin] - z[fin])
    out[~fin] = z[~fin]
    return out


def _merge_intervals(intervals):
    if not intervals:
        return []
    intervals = sorted(intervals)
    merged = [list(intervals[0])]
    for u, v in intervals[1:]:
        if u <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], v)
        else:
            merged.append([u, v])
    return [(u, v) for u, v in merged if u < v]


def cauchy_eval(measure: BoundaryMeasure, constant, z, *, atol: float = 1e-10):
    """Evaluate c + integral of (1+sz)/(s-z) dlambda(s) off the extended real line."""
    arr, scalar = _as_complex_array(z)
    if np.any(arr.imag == 0.0):
        raise DomainError("Cauchy transform evaluated on the real boundary")
    flat = np.atleast_1d(arr).ravel()
    out = np.full(flat.shape, complex(constant), dtype=complex)
    for a in measure.atoms:
        if math.isinf(a.loc):
            out += a.mass * flat
        else:
            out += a.mass * (1.0 + a.loc * flat) / (a.loc - flat)
    for d in measure.densities:
        lo, hi = d.support

        def integrand(s, d=d):
            s = np.asarray(s, dtype=float)
            kern = (1.0 + s[:, None] * flat[None, :]) / (s[:, None] - flat[None, :])
            return d(s)[:, None] * kern

        # The kernel peaks with width |Im z| where an evaluation point
        # projects onto the support.  Such a peak can sit far below the
        # resolution of the compactified coordinate, so each peak window is
        # integrated directly in the s variable and only the peak-free
        # complement goes through the compactification.
        windows = []
        for zj in flat:
            xj, yj = zj.real, abs(zj.imag)
            # The window must cover the kernel peak (width |Im z|) and every
            # flank scale the compactified coordinate cannot represent, which
            # grows like eps * (1 + x^2).
            w = max(50.0 * yj, 1e-13 * (1.0 + xj * xj))
            if yj < 5.0 and xj + w > lo and xj - w < hi:
                windows.append((max(lo, xj - w), min(hi, xj + w)))
        windows = _merge_intervals(windows)
        val = np.zeros(flat.shape, dtype=complex)
        cursor = lo
        for u, v in windows:
            if cursor < u:
                part, _ = quad_real_line(integrand, cursor, u, atol=atol)
                val = val + part
            part, _ = adaptive_quad(integrand, u, v, atol=atol, min_panels=4)
            val = val + part
            cursor = v
        if cursor < hi:
            part, _ = quad_real_line(integrand, cursor, hi, atol=atol)
            val = val + part
        out += val
    out = out.reshape(np.atleast_1d(arr).shape)
    return complex(out.ravel()[0]) if scalar else out


def _disc_herglotz_eval(measure: BoundaryMeasure, constant, atol=1e-10):
    def fn(z):
        z = np.asarray(z, dtype=complex)
        flat = np.atleast_1d(z).ravel()
        out = np.full(flat.shape, complex(constant), dtype=complex)
        for a in measure.atoms:
            zeta = np.exp(1j * a.loc)
            out += a.mass * (zeta + flat) / (zeta - flat) / (2.0 * np.pi)
        for d in measure.densities:
            lo, hi = d.support

            def integrand(t, d=d):
                t = np.asarray(t, dtype=float)
                zeta = np.exp(1j * t)[:, None]
                return d(t)[:, None] * (zeta + flat[None, :]) / (zeta - flat[None, :])

            val, _ = adaptive_quad(integrand, lo, hi, atol=atol)
            out += val / (2.0 * np.pi)
        return out.reshape(np.atleast_1d(z).shape)
    return fn


# ---------------------------------------------------------------------------
# Builders


def _odd_multiples(step: float, lo: float, hi: float, parity: str):
    # Multiples n*step inside (lo, hi) with n odd / even / any.
    ns = np.arange(math.ceil(lo / step), math.floor(hi / step) + 1)
    if parity == "odd":
        ns = ns[ns % 2 != 0]
    elif parity == "even":
        ns = ns[ns % 2 == 0]
    return (ns * step).astype(float)


def _exp_lattice(sigma: float, lo: float, hi: float, parity: str):
    # Points exp(pi n / (2 sigma)) inside (lo, hi) for n of the given parity.
    if hi <= 0:
        return np.array([])
    lo = max(lo, 1e-300)
    step = math.pi / (2.0 * sigma)
    n_lo = math.ceil(math.log(lo) / step - 1e-12)
    n_hi = math.floor(math.log(hi) / step + 1e-12)
    ns = np.arange(n_lo, n_hi + 1)
    if parity == "odd":
        ns = ns[ns % 2 != 0]
    elif parity == "even":
        ns = ns[ns % 2 == 0]
    return np.exp(ns * step)


def catalog_build(spec: CatalogSpec) -> AnalyticFunction:
    """Construct the evaluator and boundary metadata for a catalog recipe."""
    kind, p = spec.kind, spec.params

    if kind == "tan":
        return AnalyticFunction(
            _tan_values, "half-plane",
            (("point", INF),),
            "yes", "simple poles only",
            True, {"kind": "tan"},
            lambda lo, hi: _odd_multiples(math.pi / 2.0, lo, hi, "odd"))

    if kind == "cot":
        return AnalyticFunction(
            _cot_values, "half-plane",
            (("point", INF),),
            "yes", "simple poles only",
            True, {"kind": "cot"},
            lambda lo, hi: _odd_multiples(math.pi, lo, hi, "any"))

    if kind == "csc2":
        return AnalyticFunction(
            lambda z: 2.0 * _inv_sin_values(2.0 * np.asarray(z, dtype=complex)),
            "half-plane", (("point", INF),),
            "yes", "simple poles only",
            True, {"kind": "csc2"},
            lambda lo, hi: _odd_multiples(math.pi / 2.0, lo, hi, "any"))

    if kind in ("power", "power_log", "power_over_log"):
        pw = complex(p["p"])
        if kind == "power":
            fn = lambda z: np.exp(pw * np.log(z))
            simple = -1.0 <= pw.real <= 1.0
            has_rep = (-1.0 < pw.real < 1.0) or pw in (-1, 0, 1)
            support = (("interval", -INF, 0.0),)
            locator = None
            cond = "-1 <= Re p <= 1"
        elif kind == "power_log":
            fn = lambda z: np.exp(pw * np.log(z)) * np.log(z)
            simple = -1.0 < pw.real < 1.0
            has_rep = simple
            support = (("interval", -INF, 0.0),)
            locator = None
            cond = "-1 < Re p < 1"
        else:
            fn = lambda z: np.exp(pw * np.log(z)) / np.log(z)
            simple = -1.0 <= pw.real <= 1.0
            has_rep = -1.0 < pw.real < 1.0
            support = (("interval", -INF, 0.0), ("point", 1.0))
            locator = (lambda lo, hi:
                       np.array([1.0]) if lo < 1.0 < hi else np.array([]))
            cond = "-1 <= Re p <= 1"
        return AnalyticFunction(
            fn, "half-plane", support,
            "yes" if simple else "no", cond, has_rep,
            {"kind": kind, "p": [pw.real, pw.imag]}, locator)

    if kind in ("tan_sigma_log", "cot_sigma_log", "csc2_sigma_log"):
        sigma = float(p["sigma"])
        if sigma <= 0:
            raise SpecError("sigma must be positive")
        if kind == "tan_sigma_log":
            fn = lambda z: _tan_values(sigma * np.log(np.asarray(z, dtype=complex)))
            parity = "odd"
        elif kind == "cot_sigma_log":
            fn = lambda z: _cot_values(sigma * np.log(np.asarray(z, dtype=complex)))
            parity = "even"
        else:
            fn = lambda z: 2.0 * _inv_sin_values(
                2.0 * sigma * np.log(np.asarray(z, dtype=complex)))
            parity = "any"
        return AnalyticFunction(
            fn, "half-plane",
            (("interval", -INF, 0.0), ("point", 0.0), ("point", INF)),
            "yes", "sigma > 0", True,
            {"kind": kind, "sigma": sigma},
            lambda lo, hi, s=sigma, q=parity: _exp_lattice(s, lo, hi, q))

    if kind == "rational":
        a, b = complex(p["a"]), complex(p["b"])
        poles = [float(s) for s in p["poles"]]
        coeffs = [complex(c) for c in p["coeffs"]]
        if len(poles) != len(coeffs):
            raise SpecError("rational spec requires one coefficient per pole")
        if len(set(poles)) != len(poles):
            raise SpecError("rational poles must be distinct")
        if any(c == 0 for c in coeffs):
            raise SpecError("rational coefficients must be nonzero")

        def fn(z):
            z = np.asarray(z, dtype=complex)
            out = a * z + b
            for s, c in zip(poles, coeffs):
                out = out + c / (s - z)
            return out

        support = tuple(("point", s) for s in poles)
        if a != 0:
            support = support + (("point", INF),)
        return AnalyticFunction(
            fn, "half-plane", support, "yes", "simple poles only", True,
            {"kind": "rational", "a": [a.real, a.imag], "b": [b.real, b.imag],
             "poles": poles, "coeffs": [[c.real, c.imag] for c in coeffs]},
            lambda lo, hi: np.array([s for s in poles if lo < s < hi]))

    if kind == "cauchy":
        m: BoundaryMeasure = p["measure"]
        c = complex(p.get("constant", 0))
        support = tuple(("interval", d.support[0], d.support[1]) for d in m.densities) \
            + tuple(("point", a.loc) for a in m.atoms)
        atom_locs = np.array([a.loc for a in m.atoms if math.isfinite(a.loc)])
        return AnalyticFunction(
            lambda z, m=m, c=c: cauchy_eval(m, c, z),
            "half-plane", support, "yes", "representing measure given", True,
            {"kind": "cauchy", "measure": measure_to_json(m),
             "constant": [c.real, c.imag]},
            lambda lo, hi: atom_locs[(atom_locs > lo) & (atom_locs < hi)])

    if kind == "disc_herglotz":
        m = p["measure"]
        if m.picture != "circle":
            raise SpecError("disc_herglotz requires a circle-picture measure")
        c = complex(p.get("constant", 0))
        return AnalyticFunction(
            _disc_herglotz_eval(m, c), "disc",
            tuple(("point", a.loc) for a in m.atoms)
            + tuple(("interval", d.support[0], d.support[1]) for d in m.densities),
            "yes", "representing measure given", True,
            {"kind": "disc_herglotz", "measure": measure_to_json(m),
             "constant": [c.real, c.imag]})

    raise SpecError(f"unknown catalog kind {kind!r}")


# ---------------------------------------------------------------------------
# Function-level operations


def invert_variable(f: AnalyticFunction) -> AnalyticFunction:
    """The inversion z -> f(-1/z); preserves the upper and lower half planes."""
    if f.picture != "half-plane":
        raise SpecError("inversion acts on half-plane functions")

    def fn(z):
        z = np.asarray(z, dtype=complex)
        return f.fn(-1.0 / z)

    support = []
    for entry in f.boundary_support:
        if entry[0] == "point":
            loc = entry[1]
            if loc == 0.0:
                support.append(("point", INF))
            elif math.isinf(loc):
                support.append(("point", 0.0))
            else:
                support.append(("point", -1.0 / loc))
        else:
            _, lo, hi = entry
            if lo < 0.0 <= hi or lo <= 0.0 < hi:
                if lo < 0.0:
                    support.append(("interval", -1.0 / lo if math.isfinite(lo) else 0.0, INF))
                if hi > 0.0:
                    support.append(("interval", -INF, -1.0 / hi if math.isfinite(hi) else 0.0))
            else:
                a = 0.0 if math.isinf(lo) else -1.0 / lo
                b = 0.0 if math.isinf(hi) else -1.0 / hi
                support.append(("interval", min(a, b), max(a, b)))
    locator = None
    if f.pole_locator is not None:
        base = f.pole_locator

        def locator(lo, hi):
            pts = []
            for x in np.atleast_1d(base(-INF, INF)):
                if x != 0 and lo < -1.0 / x < hi:
                    pts.append(-1.0 / x)
            return np.array(sorted(pts))

    return AnalyticFunction(fn, "half-plane", tuple(support),
                            f.simple_on_boundary, f.simple_condition,
                            f.has_representing_measure,
                            {"kind": "inversion", "base": f.descriptor}, locator)


def compose_mobius(f: AnalyticFunction, m) -> AnalyticFunction:
    """z -> f(A.z) for a real invertible matrix A; stays off the real line."""
    if f.picture != "half-plane":
        raise SpecError("mobius composition acts on half-plane functions")

    def fn(z):
        z = np.asarray(z, dtype=complex)
        return f.fn((m.a * z + m.b) / (m.c * z + m.d))

    return AnalyticFunction(fn, "half-plane", (), f.simple_on_boundary,
                            f.simple_condition, f.has_representing_measure,
                            {"kind": "mobius-composition", "base": f.descriptor,
                             "matrix": [m.a, m.b, m.c, m.d]})


def star_reflect(f: AnalyticFunction) -> AnalyticFunction:
    """Reflection w -> conj(f(conj w)) (half plane) or its circle analogue; involutive."""
    if f.picture == "half-plane":
        fn = lambda z: np.conj(f.fn(np.conj(np.asarray(z, dtype=complex))))
    else:
        fn = lambda z: -np.conj(f.fn(1.0 / np.conj(np.asarray(z, dtype=complex))))
    return AnalyticFunction(fn, f.picture, f.boundary_support,
                            f.simple_on_boundary, f.simple_condition,
                            f.has_representing_measure,
                            {"kind": "star", "base": f.descriptor},
                            f.pole_locator)


def boundary_atoms_in_window(f: AnalyticFunction, lo: float, hi: float) -> np.ndarray:
    """Catalog-known atom candidate locations inside (lo, hi); empty if unknown."""
    if f.pole_locator is None:
        return np.array([])
    return np.atleast_1d(np.asarray(f.pole_locator(lo, hi), dtype=float))
