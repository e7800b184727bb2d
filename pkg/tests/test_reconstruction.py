import math

import numpy as np
import pytest

from herglotz import (CatalogSpec, MobiusMatrix, ReconstructionSpec,
                      catalog_build, conjugate, integrate, pushforward_mobius,
                      reconstruct, resynthesis_residual, tan_sigma_log_masses)
from herglotz.catalog import compose_mobius
from herglotz.errors import NonSimpleBehaviorError, SpecError
from herglotz.testing import smooth_bump


def _atoms(result):
    return {a.loc: a.mass for a in result.measure.atoms}


def test_spec_validation():
    with pytest.raises(SpecError):
        ReconstructionSpec(window=(1.0, -1.0))
    with pytest.raises(SpecError):
        ReconstructionSpec(window=(-1.0, 1.0), sigma_points=(5.0,))


def test_rational_reconstruction():
    f = catalog_build(CatalogSpec("rational",
                                  {"a": 2, "b": 3, "poles": [5.0], "coeffs": [4 + 1j]}))
    res = reconstruct(f, ReconstructionSpec(window=(-2.0, 8.0), sigma_points=(5.0,),
                                            include_infinity=True))
    atoms = _atoms(res)
    assert abs(atoms[5.0] - (4 + 1j) / 26.0) <= 1e-9
    assert abs(atoms[math.inf] - 2.0) <= 1e-9
    assert abs(res.constant - (3.0 + 5.0 * (4 + 1j) / 26.0)) <= 1e-10
    assert resynthesis_residual(f, res, [2j, -3j, 1 + 1j]) <= 1e-9


def test_residue_mass_consistency():
    f = catalog_build(CatalogSpec("rational",
                                  {"a": 0, "b": 1, "poles": [2.0, -1.0],
                                   "coeffs": [3.0, 1 - 2j]}))
    res = reconstruct(f, ReconstructionSpec(window=(-4.0, 4.0),
                                            sigma_points=(2.0, -1.0)))
    # rho(sigma) = -(1+sigma^2) lambda[sigma] must equal -c_j
    rho = dict(res.residues)
    assert abs(rho[2.0] + 3.0) <= 1e-9
    assert abs(rho[-1.0] + (1 - 2j)) <= 1e-9


def test_minus_inverse_reconstruction(minus_inverse):
    res = reconstruct(minus_inverse, ReconstructionSpec(window=(-3.0, 3.0),
                                                        sigma_points=(0.0,)))
    atoms = _atoms(res)
    assert abs(atoms[0.0] - 1.0) <= 1e-10
    assert abs(res.constant) <= 1e-14
    assert resynthesis_residual(minus_inverse, res, [2j, -3j, 1 + 1j]) <= 1e-10
    assert not res.window_truncated


def test_power_over_log_pole():
    f = catalog_build(CatalogSpec("power_over_log", {"p": 0.0}))
    res = reconstruct(f, ReconstructionSpec(window=(-4.0, 3.0),
                                            sigma_points=(0.0, 1.0),
                                            include_infinity=True))
    atoms = _atoms(res)
    assert abs(atoms[1.0] + 0.5) <= 1e-8
    assert abs(atoms[0.0]) <= 1e-5
    assert abs(atoms[math.inf]) <= 1e-6


def test_sqrt_truncated_window(sqrt_fn):
    res = reconstruct(sqrt_fn, ReconstructionSpec(window=(-6.0, 1.0),
                                                  sigma_points=(0.0,),
                                                  include_infinity=True))
    assert res.window_truncated
    atoms = _atoms(res)
    assert abs(atoms[0.0]) <= 1e-8
    assert abs(atoms[math.inf]) <= 1e-8
    assert abs(res.constant - math.cos(math.pi / 4.0)) <= 1e-12
    # density table matches the closed form at interior nodes
    part = res.measure.densities[0]
    xs = np.array([x for x in part.descriptor["xs"] if -5.5 < x < -0.2])
    expect = np.sqrt(-xs) / (np.pi * (1.0 + xs * xs))
    assert np.max(np.abs(part(xs) - expect)) <= 1e-8


def test_sqrt_resynthesis_improves_with_window(sqrt_fn):
    residuals = []
    for w in (1e2, 1e4, 1e6):
        res = reconstruct(sqrt_fn, ReconstructionSpec(window=(-w, 1.0),
                                                      sigma_points=(0.0,),
                                                      include_infinity=True))
        residuals.append(resynthesis_residual(sqrt_fn, res, [1j, 2j, -1 + 2j]))
    assert residuals[0] > residuals[1] > residuals[2]


def test_tan_truncation_residual_matches_series_tail(tan_fn):
    # window [-8, 8] keeps the six poles with |n| <= 5; the resynthesis gap
    # at 2i is then exactly the truncated series tail, computed directly.
    sig = tuple(np.pi * n / 2.0 for n in (-5, -3, -1, 1, 3, 5))
    res = reconstruct(tan_fn, ReconstructionSpec(window=(-8.0, 8.0),
                                                 sigma_points=sig,
                                                 include_infinity=True))
    assert res.window_truncated
    atoms = _atoms(res)
    for n in (1, 3, 5):
        x = np.pi * n / 2.0
        assert abs(atoms[x] - 1.0 / (1.0 + x * x)) <= 1e-6 / (1.0 + x * x)
    residual = resynthesis_residual(tan_fn, res, [2j])
    tail = np.tan(2j)
    for n in range(-5, 6):
        if n % 2 != 0:
            s = np.pi * n / 2.0
            tail -= (1.0 + s * 2j) / (s - 2j) / (1.0 + s * s)
    assert residual == pytest.approx(abs(tail), rel=1e-4)


def test_simple_behavior_gate():
    f = catalog_build(CatalogSpec("power", {"p": -1.5}))
    with pytest.raises(NonSimpleBehaviorError):
        reconstruct(f, ReconstructionSpec(window=(-2.0, 2.0), sigma_points=(0.0,)))


def test_star_covariance_of_reconstruction():
    f = catalog_build(CatalogSpec("power", {"p": 0.5 + 0.2j}))
    from herglotz.catalog import star_reflect
    spec = ReconstructionSpec(window=(-5.0, -0.5), nodes_per_block=16)
    res = reconstruct(f, spec)
    res_star = reconstruct(star_reflect(f), spec)
    conj_measure = conjugate(res.measure)
    for c in (-4.0, -2.5, -1.2):
        test = smooth_bump(c - 0.4, c + 0.4)
        lhs = integrate(res_star.measure, test)
        rhs = integrate(conj_measure, test)
        assert abs(lhs - rhs) <= 1e-8
    assert abs(res_star.constant - np.conj(res.constant)) <= 1e-12


def test_mobius_covariance_small():
    f = catalog_build(CatalogSpec("power", {"p": 0.5}))
    base = reconstruct(f, ReconstructionSpec(window=(-40.0, -0.02),
                                             nodes_per_block=32))
    A = MobiusMatrix(1, 1, 0, 1)  # translation by 1
    rec_a = reconstruct(compose_mobius(f, A),
                        ReconstructionSpec(window=(-8.0, -2.0), nodes_per_block=32))
    pushed = pushforward_mobius(base.measure, A)
    rng = np.random.default_rng(3)
    for _ in range(5):
        c = rng.uniform(-7.0, -3.0)
        test = smooth_bump(c - 0.5, c + 0.5)
        assert abs(integrate(rec_a.measure, test)
                   - integrate(pushed, test)) <= 1e-4


def test_tan_sigma_log_masses_oracle():
    out = dict(tan_sigma_log_masses(1.0, [0, 1]))
    assert abs(out[1.0] + 0.5) < 1e-15
    loc = math.exp(math.pi / 2.0)
    assert abs(out[loc] - 1.0 / (loc + 1.0 / loc)) < 1e-15
    out2 = dict(tan_sigma_log_masses(2.0, [-2]))
    loc2 = math.exp(-math.pi / 2.0)
    assert abs(out2[loc2] + 0.5 / (loc2 + 1.0 / loc2)) < 1e-15
    with pytest.raises(SpecError):
        tan_sigma_log_masses(-1.0, [0])


def test_reconstruction_diagnostics(minus_inverse):
    res = reconstruct(minus_inverse, ReconstructionSpec(window=(-3.0, 3.0),
                                                        sigma_points=(0.0,)))
    d = res.diagnostics
    assert d["window"] == [-3.0, 3.0]
    assert d["density_nodes"] > 0
    assert "0.0" in d["exclusion_radii"]
