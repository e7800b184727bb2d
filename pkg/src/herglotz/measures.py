"""Complex Radon measures on the extended real line (or the circle) and their transport.

A measure is stored as an atomic part plus a list of absolutely continuous
parts (support interval and density evaluator).  Every closed-form example in
this domain is of that shape; overlapping atom/density carriers are rejected
unless explicitly permitted.

The Moebius pushforward implements, for an invertible real matrix A,

    lambda^A(dt) = (1/det A) * ((a t + b)^2 + (c t + d)^2) / (1 + t^2) * lambda(A.dt),

where lambda(A.dt) is the transfer of lambda under the change of variables
s = A.t.  Atoms move along the inverse sphere action with the displayed weight
(at t = infinity the finite limit a^2 + c^2 of the numerator is used);
densities are reparametrized as closures so no interpolation error stacks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import SpecError
from .quadrature import quad_real_line
from .sphere import INFINITY, MobiusMatrix, mobius_apply, mobius_apply_values

__all__ = [
    "Atom",
    "DensityPart",
    "TestFunction",
    "BoundaryMeasure",
    "integrate",
    "conjugate",
    "total_variation",
    "pushforward_mobius",
    "table_density",
    "density_from_descriptor",
    "measure_to_json",
    "measure_from_json",
]

INF = math.inf


def _normalize_loc(loc: float) -> float:
    # The extended real line has a single point at infinity.
    if math.isinf(loc):
        return INF
    return float(loc)


@dataclass(frozen=True)
class Atom:
    loc: float
    mass: complex

    def __post_init__(self):
        object.__setattr__(self, "loc", _normalize_loc(self.loc))
        object.__setattr__(self, "mass", complex(self.mass))


@dataclass(frozen=True)
class DensityPart:
    """Absolutely continuous piece: density evaluator on a support interval."""

    support: tuple
    fn: Callable = field(repr=False)
    descriptor: Optional[dict] = None

    def __post_init__(self):
        lo, hi = self.support
        if not lo < hi:
            raise SpecError(f"empty density support {self.support}")
        object.__setattr__(self, "support", (float(lo), float(hi)))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x >= lo) & (x <= hi)
        out = np.zeros(x.shape, dtype=complex)
        if np.any(inside):
            out[inside] = np.asarray(self.fn(x[inside]), dtype=complex)
        return out


@dataclass(frozen=True)
class TestFunction:
    """Continuous test function with declared support and smoothness class."""

    __test__ = False  # not a pytest collection target

    fn: Callable = field(repr=False)
    support: tuple = (-INF, INF)
    smoothness: str = "C0"
    derivs: tuple = field(default_factory=tuple, repr=False)
    value_at_inf: Optional[complex] = None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x >= lo) & (x <= hi)
        out = np.zeros(x.shape, dtype=complex)
        if np.any(inside):
            out[inside] = np.asarray(self.fn(x[inside]), dtype=complex)
        return out

    def derivative(self, k: int) -> Callable:
        if k == 0:
            return self.__call__
        if len(self.derivs) < k:
            raise SpecError(f"test function provides {len(self.derivs)} derivatives, need {k}")
        fn_k = self.derivs[k - 1]
        lo, hi = self.support

        def d(x):
            x = np.asarray(x, dtype=float)
            inside = (x >= lo) & (x <= hi)
            out = np.zeros(x.shape, dtype=complex)
            if np.any(inside):
                out[inside] = np.asarray(fn_k(x[inside]), dtype=complex)
            return out

        return d


@dataclass(frozen=True)
class BoundaryMeasure:
    """Atoms plus densities on the extended line (picture 'line') or circle angles (picture 'circle').

    Circle-picture locations are angles in (-pi, pi]; the boundary point -1 is
    stored at angle pi.
    """

    atoms: tuple = ()
    densities: tuple = ()
    picture: str = "line"
    mixed_ok: bool = False

    def __post_init__(self):
        atoms = tuple(a if isinstance(a, Atom) else Atom(*a) for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "densities", tuple(self.densities))
        if self.picture not in ("line", "circle"):
            raise SpecError(f"unknown picture {self.picture!r}")
        locs = [a.loc for a in atoms]
        if len(set(locs)) != len(locs):
            raise SpecError("atom locations must be pairwise distinct")
        if not self.mixed_ok:
            for a in atoms:
                if math.isinf(a.loc):
                    continue
                for d in self.densities:
                    lo, hi = d.support
                    if lo < a.loc < hi and abs(complex(d(np.array([a.loc]))[0])) > 0.0:
                        raise SpecError(
                            f"atom at {a.loc} sits inside a density support with nonzero "
                            "density; pass mixed_ok=True to permit")

    def total_mass(self) -> complex:
        """lambda of the whole boundary: atom masses plus density integrals."""
        total = sum((a.mass for a in self.atoms), 0j)
        for d in self.densities:
            val, _ = quad_real_line(d, *d.support, atol=1e-11)
            total += val
        return total


def integrate(m: BoundaryMeasure, f: TestFunction, *, atol: float = 1e-10) -> complex:
    """Pair the measure with a test function: sum over atoms plus density quadratures."""
    total = 0j
    for a in m.atoms:
        if math.isinf(a.loc):
            if f.value_at_inf is None:
                raise SpecError("measure has an atom at infinity but the test "
                                "function supplies no value there")
            total += a.mass * complex(f.value_at_inf)
        else:
            total += a.mass * complex(f(np.array([a.loc]))[0])
    flo, fhi = f.support
    for d in m.densities:
        lo, hi = d.support
        a_, b_ = max(lo, flo), min(hi, fhi)
        if a_ >= b_:
            continue
        val, _ = quad_real_line(lambda x: f(x) * d(x), a_, b_, atol=atol)
        total += val
    return total


def conjugate(m: BoundaryMeasure) -> BoundaryMeasure:
    """Complex-conjugate all masses and density values; locations unchanged."""
    atoms = tuple(Atom(a.loc, np.conj(a.mass)) for a in m.atoms)
    densities = []
    for d in m.densities:
        desc = None
        if d.descriptor is not None:
            kind = d.descriptor.get("kind")
            if kind == "table":
                desc = dict(d.descriptor)
                desc["vals"] = [[v[0], -v[1]] for v in d.descriptor["vals"]]
            elif kind in ("catalog-power", "catalog-power-log", "catalog-power-over-log"):
                desc = dict(d.descriptor)
                desc["p"] = [d.descriptor["p"][0], -d.descriptor["p"][1]]
        if desc is not None:
            densities.append(density_from_descriptor(desc))
        else:
            densities.append(DensityPart(d.support, _conj_wrap(d.fn), None))
    return BoundaryMeasure(atoms, tuple(densities), m.picture, m.mixed_ok)


def _conj_wrap(fn):
    return lambda x: np.conj(np.asarray(fn(x), dtype=complex))


def total_variation(m: BoundaryMeasure, *, atol: float = 1e-10,
                    finite_part_only: bool = False) -> float:
    """Sum of |mass| over atoms plus integrals of |density|.

    With finite_part_only=True the atom at infinity is excluded, matching the
    variation of the restriction to the finite line.
    """
    tv = 0.0
    for a in m.atoms:
        if finite_part_only and math.isinf(a.loc):
            continue
        tv += abs(a.mass)
    for d in m.densities:
        val, _ = quad_real_line(lambda x: np.abs(d(x)).astype(complex), *d.support, atol=atol)
        tv += val.real
    return tv


# ---------------------------------------------------------------------------
# Moebius pushforward


def _mobius_weight(m: MobiusMatrix, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return ((m.a * t + m.b) ** 2 + (m.c * t + m.d) ** 2) / (1.0 + t * t)


def _weight_at(m: MobiusMatrix, loc: float) -> float:
    if math.isinf(loc):
        return m.a * m.a + m.c * m.c
    return float(_mobius_weight(m, loc))


def _image_interval(binv: MobiusMatrix, lo: float, hi: float,
                    lo_is_pole: bool = False, hi_is_pole: bool = False):
    """Image of one pole-free support piece under the inverse action; monotone.

    Endpoints flagged as the pole of the action map to the point at infinity
    symbolically; rounding in the pole location would otherwise produce a huge
    finite image of arbitrary sign.
    """
    if math.isfinite(lo) and math.isfinite(hi):
        probes = [lo + (hi - lo) / 3.0, lo + 2.0 * (hi - lo) / 3.0]
    elif math.isfinite(lo):
        probes = [lo + 1.0, lo + 2.0]
    elif math.isfinite(hi):
        probes = [hi - 2.0, hi - 1.0]
    else:
        probes = [-1.0, 1.0]
    img = mobius_apply_values(binv, np.asarray(probes, dtype=complex)).real
    increasing = img[1] > img[0]
    e_lo = INFINITY if lo_is_pole else mobius_apply(binv, lo if math.isfinite(lo) else INFINITY)
    e_hi = INFINITY if hi_is_pole else mobius_apply(binv, hi if math.isfinite(hi) else INFINITY)
    left, right = (e_lo, e_hi) if increasing else (e_hi, e_lo)
    new_lo = -INF if left.infinite else left.value.real
    new_hi = INF if right.infinite else right.value.real
    return new_lo, new_hi


def pushforward_mobius(m: BoundaryMeasure, A: MobiusMatrix) -> BoundaryMeasure:
    """Transport a line-picture measure under the fractional-linear action of A."""
    if m.picture != "line":
        raise SpecError("pushforward is defined for line-picture measures")
    binv = A.inverse()
    det = A.det
    atoms = []
    for a in m.atoms:
        target = mobius_apply(binv, INFINITY if math.isinf(a.loc) else a.loc)
        loc = INF if target.infinite else target.value.real
        atoms.append(Atom(loc, a.mass * _weight_at(A, loc) / det))

    densities = []
    for d in m.densities:
        lo, hi = d.support
        pieces = [(lo, hi, False, False)]
        if A.c != 0.0:
            pole = A.a / A.c  # preimage of infinity under the inverse action
            if lo < pole < hi:
                pieces = [(lo, pole, False, True), (pole, hi, True, False)]
        for plo, phi, lp, hp in pieces:
            new_lo, new_hi = _image_interval(binv, plo, phi, lp, hp)
            densities.append(DensityPart(
                (new_lo, new_hi),
                _pushforward_density(A, d, det),
                None,
            ))
    return BoundaryMeasure(tuple(atoms), tuple(densities), "line", m.mixed_ok)


def _pushforward_density(A: MobiusMatrix, d: DensityPart, det: float):
    sign = 1.0 if det > 0 else -1.0

    def rho(t):
        t = np.asarray(t, dtype=float)
        den = (A.c * t + A.d) ** 2
        s = (A.a * t + A.b) / (A.c * t + A.d)
        w = ((A.a * t + A.b) ** 2 + (A.c * t + A.d) ** 2) / (1.0 + t * t)
        return sign * w / den * d(s)

    return rho


# ---------------------------------------------------------------------------
# Densities from descriptors (file format support)


def table_density(xs: Sequence[float], vals: Sequence[complex]) -> DensityPart:
    """Sampled density with monotone cubic interpolation.

    Interpolation runs in the 2*arctan coordinate so that tables on unbounded
    or very wide supports stay well conditioned.
    """
    xs = np.asarray(xs, dtype=float)
    vals = np.asarray(vals, dtype=complex)
    if len(xs) < 2 or np.any(np.diff(xs) <= 0):
        raise SpecError("table nodes must be strictly increasing, length >= 2")
    ts = 2.0 * np.arctan(xs)
    pre = PchipInterpolator(ts, vals.real, extrapolate=False)
    pim = PchipInterpolator(ts, vals.imag, extrapolate=False)
    lo, hi = float(xs[0]), float(xs[-1])

    def fn(x):
        t = 2.0 * np.arctan(np.asarray(x, dtype=float))
        t = np.clip(t, ts[0], ts[-1])
        return pre(t) + 1j * pim(t)

    desc = {"kind": "table", "support": [lo, hi],
            "xs": [float(v) for v in xs],
            "vals": [[float(v.real), float(v.imag)] for v in vals]}
    return DensityPart((lo, hi), fn, desc)


def _power_density(p: complex):
    def fn(x):
        x = np.asarray(x, dtype=float)
        return np.exp(p * np.log(-x)) * np.sin(np.pi * p) / (np.pi * (1.0 + x * x))
    return fn


def _power_log_density(p: complex):
    def fn(x):
        x = np.asarray(x, dtype=float)
        lg = np.log(-x)
        return ((np.sin(np.pi * p) / np.pi) * lg + np.cos(np.pi * p)) \
            * np.exp(p * lg) / (1.0 + x * x)
    return fn


def _power_over_log_density(p: complex):
    def fn(x):
        x = np.asarray(x, dtype=float)
        lg = np.log(-x)
        return ((np.sin(np.pi * p) / np.pi) * lg - np.cos(np.pi * p)) \
            * np.exp(p * lg) / ((1.0 + x * x) * (np.pi ** 2 + lg * lg))
    return fn


_CATALOG_DENSITIES = {
    "catalog-power": _power_density,
    "catalog-power-log": _power_log_density,
    "catalog-power-over-log": _power_over_log_density,
}


def density_from_descriptor(desc: dict) -> DensityPart:
    kind = desc.get("kind")
    if kind == "table":
        return table_density(desc["xs"], [complex(re, im) for re, im in desc["vals"]])
    if kind in _CATALOG_DENSITIES:
        p = complex(desc["p"][0], desc["p"][1])
        support = tuple(_json_loc(v) for v in desc.get("support", [-INF, 0.0]))
        if support[1] > 0.0:
            raise SpecError(f"{kind} densities live on the negative axis")
        return DensityPart(support, _CATALOG_DENSITIES[kind](p),
                           {"kind": kind, "support": list(support), "p": [p.real, p.imag]})
    raise SpecError(f"unknown density descriptor kind {kind!r}")


# ---------------------------------------------------------------------------
# JSON round trip


def _loc_json(loc: float):
    if math.isinf(loc):
        return "inf" if loc > 0 else "-inf"
    return float(loc)


def _json_loc(v) -> float:
    if isinstance(v, str):
        if v == "inf":
            return INF
        if v == "-inf":
            return -INF
        raise SpecError(f"bad location string {v!r}")
    return float(v)


def _tabulate(d: DensityPart, n: int = 257) -> DensityPart:
    lo, hi = d.support
    ta, tb = 2.0 * math.atan(lo) if math.isfinite(lo) else -math.pi, \
        2.0 * math.atan(hi) if math.isfinite(hi) else math.pi
    # Open Chebyshev nodes in the compactified coordinate avoid the endpoints.
    k = np.arange(n)
    t = 0.5 * (ta + tb) + 0.5 * (tb - ta) * np.cos((2 * k + 1) * np.pi / (2 * n))
    xs = np.sort(np.tan(0.5 * t))
    return table_density(xs, d(xs))


def measure_to_json(m: BoundaryMeasure) -> dict:
    densities = []
    for d in m.densities:
        desc = d.descriptor if d.descriptor is not None else _tabulate(d).descriptor
        densities.append(desc)
    return {
        "picture": m.picture,
        "atoms": [{"loc": _loc_json(a.loc),
                   "mass": [a.mass.real, a.mass.imag]} for a in m.atoms],
        "densities": densities,
    }


def measure_from_json(data: dict) -> BoundaryMeasure:
    atoms = tuple(Atom(_json_loc(a["loc"]), complex(a["mass"][0], a["mass"][1]))
                  for a in data.get("atoms", ()))
    densities = tuple(density_from_descriptor(d) for d in data.get("densities", ()))
    return BoundaryMeasure(atoms, densities, data.get("picture", "line"))
