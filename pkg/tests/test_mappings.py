"""Pointwise evaluator layer: values, derivatives, Wirtinger chain rule."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from harmonicmaps import (
    AnalyticFunction,
    DomainError,
    GridSpec,
    HarmonicMap,
    SingularDerivativeError,
    composed_wirtinger,
    constant_function,
    dilatation,
    eval_map,
    from_series,
    gallery_get,
    identity_function,
    jacobian,
    linear_wirtinger,
)
from harmonicmaps.mappings import (
    composition_fd,
    derivative_consistency,
    wirtinger_fd,
)


def disk_points(n, r_max=0.85, seed=0):
    rng = np.random.default_rng(seed)
    return r_max * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


# ---------------------------------------------------------------------------
# eval_map / jacobian / dilatation


def test_eval_identity():
    f = gallery_get("identity")
    assert eval_map(f, 0.3 + 0.4j) == 0.3 + 0.4j


def test_eval_h1_center():
    f = gallery_get("h1")
    assert_allclose(eval_map(f, 0j), 5.0 + 2.0 * np.sqrt(6.0), rtol=0, atol=1e-12)


def test_eval_f_k_half():
    # h0(0.5) = 0.625 is real, so f = (1 + k) * 0.625 at k = 0.5.
    f = gallery_get("f_k", {"k": 0.5})
    assert_allclose(eval_map(f, 0.5 + 0j), 0.9375, rtol=0, atol=1e-15)


def test_eval_outside_domain():
    f = gallery_get("identity")
    with pytest.raises(DomainError):
        eval_map(f, 1.5 + 0j)


def test_jacobian_identity():
    f = gallery_get("identity")
    for z in disk_points(5):
        assert_allclose(jacobian(f, z), 1.0, rtol=0, atol=1e-15)


@pytest.mark.parametrize("z, expected", [(0j, 0.75), (0.5 + 0j, 1.6875)])
def test_jacobian_f_k(z, expected):
    # J = (1 - k^2) |1 + z|^2 for the sheared map.
    f = gallery_get("f_k", {"k": 0.5})
    assert_allclose(jacobian(f, z), expected, rtol=0, atol=1e-15)


def test_dilatation_identity_and_f_k():
    assert dilatation(gallery_get("identity"), 0.2 + 0.1j) == 0
    f = gallery_get("f_k", {"k": 0.5})
    for z in disk_points(10, seed=1):
        assert_allclose(dilatation(f, z), 0.5, rtol=0, atol=1e-14)


def test_dilatation_singular():
    f = HarmonicMap.from_analytic(from_series([0.0, 1.0], description="z^2"))
    with pytest.raises(SingularDerivativeError):
        dilatation(f, 0j)


# ---------------------------------------------------------------------------
# composed Wirtinger chain rule


def test_composed_identity_phi():
    f = gallery_get("f_k", {"k": 0.5})
    phi = linear_wirtinger(1.0, 0.0)
    z = 0.3 - 0.2j
    psi_z, psi_zb = composed_wirtinger(f, phi, z)
    assert_allclose(psi_z, f.h.deriv(z), rtol=0, atol=1e-15)
    assert_allclose(psi_zb, np.conj(f.g.deriv(z)), rtol=0, atol=1e-15)


def test_composed_f_k_cancelling_phi():
    # phi(w, wbar) = -w/k + wbar collapses the pair to ((k - 1/k) h0', 0).
    f = gallery_get("f_k", {"k": 0.5})
    phi = linear_wirtinger(-2.0, 1.0)
    psi_z, psi_zb = composed_wirtinger(f, phi, 0j)
    assert_allclose(psi_z, -1.5, rtol=0, atol=1e-14)
    assert_allclose(psi_zb, 0.0, rtol=0, atol=1e-14)


def test_composed_numerical_inverse():
    from harmonicmaps import inverse_wirtinger

    f = gallery_get("f_k", {"k": 0.5})
    phi = inverse_wirtinger(f)
    pts = disk_points(40, seed=3)
    psi_z, psi_zb = composed_wirtinger(f, phi, pts)
    assert np.max(np.abs(psi_z - 1.0)) < 1e-8
    assert np.max(np.abs(psi_zb)) < 1e-8


def test_jacobian_matches_partials_of_identity_composition():
    f = gallery_get("f_k", {"k": 0.3})
    phi = linear_wirtinger(1.0, 0.0)
    pts = disk_points(50, seed=4)
    psi_z, psi_zb = composed_wirtinger(f, phi, pts)
    assert_allclose(np.abs(psi_z) ** 2 - np.abs(psi_zb) ** 2,
                    jacobian(f, pts), rtol=1e-13, atol=1e-15)


GALLERY_SAMPLES = [
    ("identity", None),
    ("cayley", None),
    ("koebe", None),
    ("h0", None),
    ("f_k", {"k": 0.5}),
    ("h1", None),
    ("h_r", {"r": 0.9}),
    ("F_eps", {"r": 0.5, "eps": 0.01}),
    ("f_eps", {"r": 0.5, "eps": 0.01}),
]


@pytest.mark.parametrize("name, params", GALLERY_SAMPLES)
def test_fd_consistency_on_gallery(name, params):
    """Analytic derivatives match central differences at 100 interior points."""
    f = gallery_get(name, params)
    pts = disk_points(100, r_max=0.85 * f.domain_radius, seed=11)
    assert derivative_consistency(f.h, pts) <= 1e-4
    assert derivative_consistency(f.g, pts) <= 1e-4


@pytest.mark.parametrize("name, params", [("f_k", {"k": 0.5}), ("h1", None)])
def test_composed_wirtinger_matches_fd(name, params):
    f = gallery_get(name, params)
    phi = linear_wirtinger(1.3 - 0.2j, 0.4 + 0.1j)
    pts = disk_points(100, r_max=0.8 * f.domain_radius, seed=12)
    an_z, an_zb = composed_wirtinger(f, phi, pts)
    fd_z, fd_zb = composition_fd(f, phi, pts)
    scale = np.maximum(np.abs(an_z), 1.0)
    assert np.max(np.abs(an_z - fd_z) / scale) <= 1e-4
    assert np.max(np.abs(an_zb - fd_zb) / scale) <= 1e-4


def test_wirtinger_fd_on_linear():
    phi = linear_wirtinger(2.0 - 1.0j, 0.5j)
    pts = disk_points(20, seed=13)
    dw, dwb = wirtinger_fd(phi.eval, pts)
    assert np.max(np.abs(dw - (2.0 - 1.0j))) <= 1e-9
    assert np.max(np.abs(dwb - 0.5j)) <= 1e-9


# ---------------------------------------------------------------------------
# series evaluation


@given(st.lists(st.complex_numbers(max_magnitude=3.0, allow_nan=False,
                                   allow_infinity=False),
                min_size=1, max_size=6),
       st.complex_numbers(max_magnitude=0.8, allow_nan=False, allow_infinity=False))
@settings(max_examples=60, deadline=None)
def test_series_matches_polyval(coeffs, z):
    fn = from_series(coeffs)
    full = np.concatenate(([0.0], np.asarray(coeffs)))  # constant term is zero
    expected = np.polyval(full[::-1], z)
    assert abs(fn.eval(z) - expected) <= 1e-9 * max(1.0, abs(expected))


def test_series_derivative():
    fn = from_series([1.0, 0.5, -2.0j])
    z = 0.3 + 0.1j
    assert_allclose(fn.deriv(z), 1.0 + 1.0 * z - 6.0j * z ** 2, rtol=1e-14)


def test_series_empty_is_zero():
    fn = from_series([])
    assert fn.eval(0.5 + 0.5j) == 0
    assert fn.deriv(0.1j) == 0


def test_constant_function_shapes():
    fn = constant_function(2.0 - 1.0j)
    assert fn.eval(0.5) == 2.0 - 1.0j
    out = fn.eval(np.zeros(4, dtype=complex))
    assert out.shape == (4,) and np.all(out == 2.0 - 1.0j)
    assert np.all(fn.deriv(np.zeros(4, dtype=complex)) == 0)


# ---------------------------------------------------------------------------
# grid and type invariants


def test_grid_count_and_bounds():
    grid = GridSpec(n_radial=7, n_angular=12, r_max=0.6)
    pts = grid.points()
    assert pts.size == 7 * 12 + 1
    assert pts[0] == 0
    assert np.max(np.abs(pts)) <= 0.6 + 1e-15


def test_grid_r_max_override():
    grid = GridSpec(n_radial=5, n_angular=8, r_max=0.9)
    pts = grid.points(r_max=0.3)
    assert np.max(np.abs(pts)) <= 0.3 + 1e-15
    assert grid.points(r_max=0.0).tolist() == [0j]


@pytest.mark.parametrize("kwargs", [
    {"n_radial": 0}, {"n_angular": 0}, {"r_max": 0.0}, {"r_max": 1.0},
])
def test_grid_validation(kwargs):
    with pytest.raises(ValueError):
        GridSpec(**{"n_radial": 4, "n_angular": 8, "r_max": 0.5, **kwargs})


def test_domain_radius_validation():
    with pytest.raises(ValueError):
        AnalyticFunction(eval=lambda z: z, deriv=lambda z: 1.0, domain_radius=1.5)


def test_harmonic_map_domain_radius_is_min():
    h = AnalyticFunction(eval=lambda z: z, deriv=lambda z: 1.0, domain_radius=0.7)
    g = constant_function(0.0)
    assert HarmonicMap(h=h, g=g).domain_radius == 0.7


def test_normalized_flag_rejects_unnormalized():
    with pytest.raises(ValueError):
        HarmonicMap.from_analytic(from_series([2.0]), normalized=True)
