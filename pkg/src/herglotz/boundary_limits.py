"""Distributional boundary limits through normalized second antiderivatives.

For continuous H on [a, b], the normalized twice-antiderivative h (h'' = H,
h(a) = h(b) = 0) is

    h'(x) = int_a^x H(t) dt - (1/(b-a)) int_a^b (b-t) H(t) dt,
    h(x)  = int_a^x h'(t) dt,

with sup-norm estimates ||h|| <= (b-a) ||h'|| and ||h'|| <= (3/2)(b-a) ||H||.
Pairing such an h with a function f that behaves simply above (a, b) has a
boundary limit expressible by finite data at height delta plus improper corner
integrals; the same limit is the pairing of h'' against an explicit profile
Phi(t) which vanishes at both endpoints and does not depend on delta.

Lower-side limits are produced from the upper-side machinery applied to the
star reflection and conjugating, which is the symmetry the two sides satisfy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev

from .catalog import AnalyticFunction, star_reflect
from .errors import NonSimpleBehaviorError, SpecError
from .extraction import sup_abs_growth
from .measures import TestFunction
from .quadrature import adaptive_quad, quad_power_weighted_zero

__all__ = [
    "C02Function",
    "normalized_antiderivative",
    "c02_from_callables",
    "conjugate_c02",
    "PhiProfile",
    "boundary_functional",
    "phi_profile",
    "pair_with_phi",
    "boundary_limit_order_m",
]

MAX_ORDER = 4
_GROWTH_MARGIN = 0.35


@dataclass(frozen=True)
class C02Function:
    """Normalized twice-antiderivative pair on [a, b]: h, h', and h'' = H."""

    a: float
    b: float
    h: Callable = field(repr=False)
    h1: Callable = field(repr=False)
    h2: Callable = field(repr=False)

    def __post_init__(self):
        if not self.a < self.b:
            raise SpecError("require a < b")


def c02_from_callables(h, h1, h2, a: float, b: float) -> C02Function:
    """Wrap analytically known h, h', h'' (h must vanish at a and b)."""
    for x in (a, b):
        if abs(complex(np.asarray(h(np.array([x])), dtype=complex)[0])) > 1e-12:
            raise SpecError("h must vanish at both endpoints")
    return C02Function(a, b, h, h1, h2)


def _cheb_interpolate(fn: Callable, a: float, b: float, tol: float = 1e-13,
                      max_deg: int = 1024) -> Chebyshev:
    deg = 16
    while True:
        re = Chebyshev.interpolate(lambda x: np.asarray(fn(x), dtype=complex).real,
                                   deg, domain=[a, b])
        im = Chebyshev.interpolate(lambda x: np.asarray(fn(x), dtype=complex).imag,
                                   deg, domain=[a, b])
        coef = re.coef + 1j * im.coef
        scale = np.max(np.abs(coef))
        tail = np.max(np.abs(coef[-4:])) if scale > 0 else 0.0
        if deg >= max_deg or scale == 0.0 or tail <= tol * scale:
            return Chebyshev(coef, domain=[a, b])
        deg *= 2


def normalized_antiderivative(H: Callable, a: float, b: float, *,
                              tol: float = 1e-13) -> C02Function:
    """Build the normalized h with h'' = H and h(a) = h(b) = 0."""
    series = _cheb_interpolate(H, a, b, tol=tol)
    G = series.integ()
    G0 = G - G(a)
    # (1/(b-a)) * int_a^b (b-t) H(t) dt equals the mean of int_a^x H over [a, b].
    G0I = G0.integ()
    c_lin = (G0I(b) - G0I(a)) / (b - a)
    h1_series = G0 - c_lin
    h_int = h1_series.integ()
    h_series = h_int - h_int(a)
    hb = h_series(b)

    def h(x):
        x = np.asarray(x, dtype=float)
        return h_series(x) - (x - a) / (b - a) * hb

    def h1(x):
        return h1_series(np.asarray(x, dtype=float)) - hb / (b - a)

    return C02Function(a, b, h, h1,
                       lambda x: np.asarray(H(np.asarray(x, dtype=float)), dtype=complex))


def conjugate_c02(c: C02Function) -> C02Function:
    return C02Function(c.a, c.b,
                       lambda x: np.conj(c.h(x)),
                       lambda x: np.conj(c.h1(x)),
                       lambda x: np.conj(c.h2(x)))


def _require_simple(f: AnalyticFunction, a: float, b: float, side: str,
                    max_beta: float, what: str):
    beta = sup_abs_growth(f, a, b, side=side)
    if beta > max_beta + _GROWTH_MARGIN:
        raise NonSimpleBehaviorError(
            f"{what}: |f| grows like y^-{beta:.2f} on [{a}, {b}] {side} side, "
            f"exceeding the admissible exponent {max_beta}")


def boundary_functional(f: AnalyticFunction, h02: C02Function, delta: float, *,
                        side: str = "upper", atol: float = 1e-11) -> complex:
    """Boundary limit of int h(x) f(x + iy) dx as y -> +0 (or y -> -0 for the lower side)."""
    if delta <= 0:
        raise SpecError("delta must be positive")
    if side == "lower":
        val = boundary_functional(star_reflect(f), conjugate_c02(h02), delta,
                                  side="upper", atol=atol)
        return np.conj(val)
    a, b = h02.a, h02.b
    _require_simple(f, a, b, "upper", 1.0, "boundary_functional")

    line = lambda x: f(np.asarray(x, dtype=float) + 1j * delta)
    t1, _ = adaptive_quad(lambda x: h02.h(x) * line(x), a, b, atol=atol)
    t2, _ = adaptive_quad(lambda x: h02.h1(x) * line(x), a, b, atol=atol)
    corner_b, _ = quad_power_weighted_zero(lambda y: f(b + 1j * y), delta, 1, atol=atol)
    corner_a, _ = quad_power_weighted_zero(lambda y: f(a + 1j * y), delta, 1, atol=atol)
    h1a = complex(np.asarray(h02.h1(np.array([a])))[0])
    h1b = complex(np.asarray(h02.h1(np.array([b])))[0])

    def inner(xs):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.empty(xs.shape, dtype=complex)
        for i, x in enumerate(xs):
            out[i], _ = quad_power_weighted_zero(lambda y: f(x + 1j * y), delta, 1,
                                                 atol=atol)
        return out

    t4, _ = adaptive_quad(lambda x: h02.h2(x) * inner(x), a, b, atol=atol * 10)
    return complex(t1 + 1j * delta * t2 + h1b * corner_b - h1a * corner_a - t4)


def _barycentric(ts: np.ndarray, vs: np.ndarray, t: np.ndarray) -> np.ndarray:
    n = len(ts)
    w = np.ones(n)
    w[1::2] = -1.0
    w[0] *= 0.5
    w[-1] *= 0.5
    out = np.empty(t.shape, dtype=complex)
    for i, ti in enumerate(t):
        diff = ti - ts
        hit = np.nonzero(diff == 0.0)[0]
        if hit.size:
            out[i] = vs[hit[0]]
        else:
            q = w / diff
            out[i] = np.sum(q * vs) / np.sum(q)
    return out


@dataclass(frozen=True)
class PhiProfile:
    """Sampled endpoint-vanishing profile representing the boundary limit on C02[a, b].

    The profile is analytic away from the boundary support of the underlying
    function, so it is sampled on Chebyshev-Lobatto nodes per analyticity
    segment and interpolated barycentrically segment by segment.
    """

    a: float
    b: float
    delta: float
    segments: tuple  # ((lo, hi, nodes, values), ...)

    @property
    def nodes(self) -> tuple:
        return tuple(t for seg in self.segments for t in seg[2])

    @property
    def values(self) -> tuple:
        return tuple(v for seg in self.segments for v in seg[3])

    def interp(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty(t.shape, dtype=complex)
        for i, ti in enumerate(t):
            seg = None
            for lo, hi, ts, vs in self.segments:
                if lo <= ti <= hi:
                    seg = (ts, vs)
                    break
            if seg is None:
                out[i] = 0j
                continue
            out[i] = _barycentric(np.asarray(seg[0]), np.asarray(seg[1]),
                                  np.array([ti]))[0]
        return out

    def rows(self):
        return [(float(t), complex(v).real, complex(v).imag)
                for t, v in zip(self.nodes, self.values)]


def _interior_kinks(f: AnalyticFunction, a: float, b: float):
    """Interior points of [a, b] where the profile may lose analyticity."""
    pts = set()
    for entry in f.boundary_support:
        if entry[0] == "point":
            p = entry[1]
            if math.isfinite(p) and a < p < b:
                pts.add(float(p))
        else:
            for p in entry[1:]:
                if math.isfinite(p) and a < p < b:
                    pts.add(float(p))
    if f.pole_locator is not None:
        for p in np.atleast_1d(f.pole_locator(a, b)):
            if a < p < b:
                pts.add(float(p))
    return sorted(pts)


def _lobatto(lo: float, hi: float, n: int) -> np.ndarray:
    k = np.arange(n)
    ts = 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(k * np.pi / (n - 1))
    ts[0], ts[-1] = lo, hi
    return ts


def phi_profile(f: AnalyticFunction, a: float, b: float, delta: float, *,
                nodes: int = 129, side: str = "upper",
                atol: float = 1e-11) -> PhiProfile:
    """Sample the profile Phi against which h'' pairs to give the boundary limit.

    Phi(t) = int_t^b (x + i delta - t) f(x + i delta) dx
             - (b-t)/(b-a) * int_a^b (x + i delta - a) f(x + i delta) dx
             + (t-a)/(b-a) * int_0^delta y f(b + iy) dy
             + (b-t)/(b-a) * int_0^delta y f(a + iy) dy
             - int_0^delta y f(t + iy) dy.

    The sample splits [a, b] at known boundary-support points of f, where Phi
    is continuous but can fail to be differentiable.
    """
    if delta <= 0 or not a < b:
        raise SpecError("require a < b and delta > 0")
    if nodes < 5:
        raise SpecError("need at least 5 profile nodes")
    if side == "lower":
        prof = phi_profile(star_reflect(f), a, b, delta, nodes=nodes,
                           side="upper", atol=atol)
        segs = tuple((lo, hi, ts, tuple(np.conj(np.asarray(vs)).tolist()))
                     for lo, hi, ts, vs in prof.segments)
        return PhiProfile(a, b, delta, segs)
    _require_simple(f, a, b, "upper", 1.0, "phi_profile")

    edges = [a] + _interior_kinks(f, a, b) + [b]
    n_seg = len(edges) - 1
    per_seg = max(9, int(math.ceil(nodes / n_seg)))

    line = lambda x: f(np.asarray(x, dtype=float) + 1j * delta)
    s1, _ = adaptive_quad(lambda x: (x + 1j * delta - a) * line(x), a, b, atol=atol)
    corner_a, _ = quad_power_weighted_zero(lambda y: f(a + 1j * y), delta, 1, atol=atol)
    corner_b, _ = quad_power_weighted_zero(lambda y: f(b + 1j * y), delta, 1, atol=atol)

    def phi_at(t: float) -> complex:
        if t < b:
            p, _ = adaptive_quad(lambda x: (x + 1j * delta - t) * line(x), t, b,
                                 atol=atol)
        else:
            p = 0j
        e_t, _ = quad_power_weighted_zero(lambda y: f(t + 1j * y), delta, 1, atol=atol)
        w_b = (t - a) / (b - a)
        w_a = (b - t) / (b - a)
        return complex(p - w_a * s1 + w_b * corner_b + w_a * corner_a - e_t)

    segments = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        ts = _lobatto(lo, hi, per_seg)
        vs = tuple(phi_at(float(t)) for t in ts)
        segments.append((float(lo), float(hi), tuple(ts.tolist()), vs))
    return PhiProfile(float(a), float(b), float(delta), tuple(segments))


def pair_with_phi(profile: PhiProfile, h02: C02Function, *,
                  atol: float = 1e-10) -> complex:
    """Quadrature of h'' against the profile interpolant, segment by segment."""
    if abs(profile.a - h02.a) > 1e-12 or abs(profile.b - h02.b) > 1e-12:
        raise SpecError("profile and test intervals do not match")
    total = 0j
    for lo, hi, ts, vs in profile.segments:
        ts_arr, vs_arr = np.asarray(ts), np.asarray(vs)
        val, _ = adaptive_quad(
            lambda t: h02.h2(t) * _barycentric(ts_arr, vs_arr,
                                               np.atleast_1d(np.asarray(t, dtype=float))),
            lo, hi, atol=atol)
        total += val
    return complex(total)


def _test_derivative(test: TestFunction, k: int, a: float, b: float,
                     cheb: Optional[Chebyshev]):
    if k == 0:
        return test.__call__, cheb
    if len(test.derivs) >= k:
        return test.derivative(k), cheb
    if cheb is None:
        cheb = _cheb_interpolate(test.__call__, a, b)
    return cheb.deriv(k), cheb


def boundary_limit_order_m(f: AnalyticFunction, test: TestFunction, a: float,
                           b: float, delta: float, m: int, *,
                           side: str = "upper", atol: float = 1e-11) -> complex:
    """Order-m distributional boundary limit of int test(x) f(x +- iy) dx.

    Requires y^m f(x + iy) bounded over the box; the test function must vanish
    at a and b together with its first m+1 derivatives' usage region (supply
    derivatives or let a Chebyshev proxy differentiate).
    """
    if not 0 <= m <= MAX_ORDER:
        raise SpecError(f"order m must lie in [0, {MAX_ORDER}]")
    if delta <= 0 or not a < b:
        raise SpecError("require a < b and delta > 0")
    sgn = 1.0 if side == "upper" else -1.0
    _require_simple(f, a, b, side, float(m) if m > 0 else 0.5,
                    "boundary_limit_order_m")

    total = 0j
    cheb = None
    line = lambda x: f(np.asarray(x, dtype=float) + sgn * 1j * delta)
    for k in range(m + 1):
        dk, cheb = _test_derivative(test, k, a, b, cheb)
        term, _ = adaptive_quad(lambda x: np.asarray(dk(x), dtype=complex) * line(x),
                                a, b, atol=atol)
        total += (sgn * 1j * delta) ** k / math.factorial(k) * term

    dtop, cheb = _test_derivative(test, m + 1, a, b, cheb)

    def inner(xs):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.empty(xs.shape, dtype=complex)
        for i, x in enumerate(xs):
            out[i], _ = quad_power_weighted_zero(
                lambda y: f(x + sgn * 1j * y), delta, m, atol=atol)
        return out

    rem, _ = adaptive_quad(lambda x: np.asarray(dtop(x), dtype=complex) * inner(x),
                           a, b, atol=atol * 10)
    total += (sgn * 1j) ** (m + 1) / math.factorial(m) * rem
    return complex(total)
