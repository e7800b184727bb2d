import numpy as np
import pytest
from scipy.integrate import quad

from herglotz import (CatalogSpec, boundary_functional, boundary_limit_order_m,
                      c02_from_callables, catalog_build, normalized_antiderivative,
                      pair_with_phi, phi_profile, star_reflect)
from herglotz.boundary_limits import conjugate_c02
from herglotz.errors import NonSimpleBehaviorError, SpecError
from herglotz.testing import smooth_bump


def _phi_closed_form(x, a=-1.0, b=1.0):
    # profile of -1/z on [a, b] containing 0, upper side
    re = ((-x * np.log(abs(x)) if x != 0 else 0.0)
          + (b - x) / (b - a) * a * np.log(abs(a))
          + (x - a) / (b - a) * b * np.log(abs(b)))
    im = (-np.pi * min(0.0, x)
          + np.pi * min(0.0, a) * (b - x) / (b - a)
          + np.pi * min(0.0, b) * (x - a) / (b - a))
    return re + 1j * im


def test_normalized_antiderivative_constant():
    c = normalized_antiderivative(
        lambda x: 2.0 * np.ones(np.shape(x), dtype=float), 0.0, 1.0)
    xs = np.linspace(0.0, 1.0, 21)
    assert np.max(np.abs(c.h(xs) - (xs ** 2 - xs))) < 1e-13
    assert np.max(np.abs(c.h1(xs) - (2 * xs - 1))) < 1e-13
    assert abs(c.h(np.array([0.0]))[0]) < 1e-15
    assert abs(c.h(np.array([1.0]))[0]) < 1e-15


def test_normalized_antiderivative_sine():
    c = normalized_antiderivative(
        lambda x: -np.pi ** 2 * np.sin(np.pi * np.asarray(x, dtype=float)), 0.0, 1.0)
    xs = np.linspace(0.0, 1.0, 21)
    assert np.max(np.abs(c.h(xs) - np.sin(np.pi * xs))) < 1e-12


def test_norm_chain_on_random_polynomials():
    rng = np.random.default_rng(19)
    xs_unit = np.linspace(0.0, 1.0, 400)
    for _ in range(50):
        a = rng.uniform(-3, 0)
        b = a + rng.uniform(0.5, 3)
        coeffs = rng.uniform(-2, 2, size=rng.integers(1, 6))
        H = lambda x, c=coeffs: np.polyval(c, np.asarray(x, dtype=float))
        c02 = normalized_antiderivative(H, a, b)
        xs = a + (b - a) * xs_unit
        nh = np.max(np.abs(c02.h(xs)))
        nh1 = np.max(np.abs(c02.h1(xs)))
        nh2 = np.max(np.abs(c02.h2(xs)))
        assert nh <= (b - a) * nh1 * (1 + 1e-12)
        assert nh1 <= 1.5 * (b - a) * nh2 * (1 + 1e-12)


def test_boundary_functional_continuous_case(minus_inverse):
    h = normalized_antiderivative(
        lambda x: np.cos(np.asarray(x, dtype=float)), 1.0, 2.0)
    got = boundary_functional(minus_inverse, h, 0.4)
    re, _ = quad(lambda x: (h.h(np.array([x]))[0] * (-1.0 / x)).real, 1.0, 2.0)
    assert abs(got - re) < 1e-9


def test_boundary_functional_principal_value(minus_inverse):
    h = normalized_antiderivative(
        lambda x: 2.0 * np.ones(np.shape(x), dtype=float), -1.0, 1.0)
    got = boundary_functional(minus_inverse, h, 0.5)
    assert abs(got - (-1j * np.pi)) < 1e-10


def test_boundary_functional_delta_independent(minus_inverse):
    h = normalized_antiderivative(
        lambda x: 2.0 * np.ones(np.shape(x), dtype=float), -1.0, 1.0)
    v1 = boundary_functional(minus_inverse, h, 0.25)
    v2 = boundary_functional(minus_inverse, h, 0.5)
    assert abs(v1 - v2) <= 1e-8


def test_boundary_functional_rejects_wild_growth():
    f = catalog_build(CatalogSpec("power", {"p": -1.8}))
    h = normalized_antiderivative(
        lambda x: np.ones(np.shape(x), dtype=float), -1.0, 1.0)
    with pytest.raises(NonSimpleBehaviorError):
        boundary_functional(f, h, 0.3)


def test_phi_profile_closed_form(minus_inverse):
    prof = phi_profile(minus_inverse, -1.0, 1.0, 0.5, nodes=21)
    for t, v in zip(prof.nodes, prof.values):
        assert abs(v - _phi_closed_form(t)) <= 1e-10
    assert abs(prof.values[0]) <= 1e-10
    assert abs(prof.values[-1]) <= 1e-10


def test_phi_profile_delta_independent(minus_inverse):
    p1 = phi_profile(minus_inverse, -1.0, 1.0, 0.25, nodes=21)
    p2 = phi_profile(minus_inverse, -1.0, 1.0, 0.5, nodes=21)
    gap = max(abs(a - b) for a, b in zip(p1.values, p2.values))
    assert gap <= 1e-8
    h = normalized_antiderivative(
        lambda x: np.asarray(x, dtype=float) ** 2 + 1.0, -1.0, 1.0)
    assert abs(pair_with_phi(p1, h) - pair_with_phi(p2, h)) <= 1e-8


def test_phi_profile_endpoint_zero_for_catalog(tan_fn, sqrt_fn):
    prof_t = phi_profile(tan_fn, 0.2, 1.3, 0.4, nodes=15)
    assert abs(prof_t.values[0]) < 1e-9 and abs(prof_t.values[-1]) < 1e-9
    prof_s = phi_profile(sqrt_fn, -4.0, -1.0, 0.4, nodes=15)
    assert abs(prof_s.values[0]) < 1e-9 and abs(prof_s.values[-1]) < 1e-9


def test_pair_with_phi_cross_check(minus_inverse):
    h = normalized_antiderivative(
        lambda x: 2.0 * np.ones(np.shape(x), dtype=float), -1.0, 1.0)
    prof = phi_profile(minus_inverse, -1.0, 1.0, 0.5, nodes=33)
    direct = boundary_functional(minus_inverse, h, 0.5)
    paired = pair_with_phi(prof, h)
    assert abs(direct - paired) <= 1e-7


def test_pair_with_phi_linearity(minus_inverse):
    prof = phi_profile(minus_inverse, -1.0, 1.0, 0.5, nodes=33)
    h1 = normalized_antiderivative(
        lambda x: np.asarray(x, dtype=float) ** 2, -1.0, 1.0)
    h2 = normalized_antiderivative(
        lambda x: np.cos(np.asarray(x, dtype=float)), -1.0, 1.0)
    h12 = normalized_antiderivative(
        lambda x: np.asarray(x, dtype=float) ** 2
        + 2.0 * np.cos(np.asarray(x, dtype=float)), -1.0, 1.0)
    lhs = pair_with_phi(prof, h12)
    rhs = pair_with_phi(prof, h1) + 2.0 * pair_with_phi(prof, h2)
    assert abs(lhs - rhs) < 1e-9


def test_pair_with_phi_interval_mismatch(minus_inverse):
    prof = phi_profile(minus_inverse, -1.0, 1.0, 0.5, nodes=15)
    h = normalized_antiderivative(lambda x: np.ones(np.shape(x)), -2.0, 1.0)
    with pytest.raises(SpecError):
        pair_with_phi(prof, h)


def test_order_zero_continuous(minus_inverse):
    test = smooth_bump(1.0, 2.0)
    got = boundary_limit_order_m(minus_inverse, test, 1.0, 2.0, 0.4, 0)
    re, _ = quad(lambda x: (test(np.array([x]))[0] * (-1.0 / x)).real, 1.0, 2.0)
    assert abs(got - re) < 1e-8


def test_order_one_sokhotski(minus_inverse):
    # even test with value 1 at 0: principal value cancels, i pi remains
    test = smooth_bump(-1.0, 1.0)
    got = boundary_limit_order_m(minus_inverse, test, -1.0, 1.0, 0.5, 1)
    assert abs(got - 1j * np.pi) < 1e-9


def test_order_one_matches_c02_route(minus_inverse):
    test = smooth_bump(-1.0, 1.0)
    h = c02_from_callables(test.__call__, test.derivative(1), test.derivative(2),
                           -1.0, 1.0)
    via_c02 = boundary_functional(minus_inverse, h, 0.5)
    via_order = boundary_limit_order_m(minus_inverse, test, -1.0, 1.0, 0.5, 1)
    assert abs(via_c02 - via_order) <= 1e-7


def test_lower_side_star_symmetry(minus_inverse):
    # lower limit of star(f) conjugates the upper limit of f on real tests
    h = normalized_antiderivative(
        lambda x: 1.0 + np.asarray(x, dtype=float) ** 2, -1.0, 1.0)
    upper = boundary_functional(minus_inverse, h, 0.5, side="upper")
    lower = boundary_functional(star_reflect(minus_inverse), h, 0.5, side="lower")
    assert abs(lower - np.conj(upper)) < 1e-9


def test_direct_integral_agreement_for_holomorphic_crossing(tan_fn):
    # all three limit routes agree with the direct integral where f is
    # holomorphic across the window
    a, b, delta = 0.2, 1.3, 0.4
    test = smooth_bump(a, b)
    h = c02_from_callables(test.__call__, test.derivative(1), test.derivative(2), a, b)
    direct_re, _ = quad(lambda x: (test(np.array([x]))[0] * np.tan(x)).real, a, b,
                        limit=300)
    v1 = boundary_functional(tan_fn, h, delta)
    v2 = pair_with_phi(phi_profile(tan_fn, a, b, delta, nodes=33), h)
    v3 = boundary_limit_order_m(tan_fn, test, a, b, delta, 1)
    for v in (v1, v2, v3):
        assert abs(v - direct_re) <= 1e-8


def test_conjugate_c02_roundtrip():
    h = normalized_antiderivative(
        lambda x: (1.0 + 2j) * np.asarray(x, dtype=float), 0.0, 1.0)
    hc = conjugate_c02(h)
    xs = np.linspace(0, 1, 7)
    assert np.max(np.abs(hc.h(xs) - np.conj(h.h(xs)))) < 1e-14


def test_phi_profile_lower_side(minus_inverse):
    up = phi_profile(minus_inverse, -1.0, 1.0, 0.5, nodes=15, side="upper")
    low = phi_profile(minus_inverse, -1.0, 1.0, 0.5, nodes=15, side="lower")
    # -1/z is star-symmetric, so the lower profile is the conjugate
    gap = max(abs(a - np.conj(b)) for a, b in zip(low.values, up.values))
    assert gap < 1e-10


def test_order_m_lower_side(minus_inverse):
    test = smooth_bump(-1.0, 1.0)
    up = boundary_limit_order_m(minus_inverse, test, -1.0, 1.0, 0.5, 1, side="upper")
    low = boundary_limit_order_m(minus_inverse, test, -1.0, 1.0, 0.5, 1, side="lower")
    assert abs(low - np.conj(up)) < 1e-9
    assert abs(low + 1j * np.pi) < 1e-9
