"""Hilbert transforms, the commutator by two routes, residual and linearization."""

import numpy as np
import numpy.testing as npt
import pytest

from diskwave import (
    GridFn,
    HolomorphicBoundaryFn,
    ParamSet,
    StagnationError,
    basis_direction,
    closed_form_Qw_at_crapper,
    commutator_Q_fft,
    commutator_Q_quadrature,
    crapper_w,
    exact_Q_closed_form,
    grid_alpha,
    hilbert,
    hilbert_finite_depth,
    linearized_F_apply,
    project_even,
    residual_F,
    synthesize_even,
)
from diskwave.spectral import _linearized_values, _residual_values


def even_fn(M, coeffs):
    return synthesize_even(np.asarray(coeffs, dtype=float), M)


def test_hilbert_basic_modes():
    M = 64
    a = grid_alpha(M)
    npt.assert_allclose(hilbert(GridFn(np.cos(a))).values, np.sin(a), atol=1e-14)
    npt.assert_allclose(hilbert(GridFn(np.ones(M))).values, 0.0, atol=1e-15)
    npt.assert_allclose(hilbert(GridFn(np.cos(3 * a) + 2)).values, np.sin(3 * a), atol=1e-14)


def test_hilbert_involution_band_limited():
    M = 128
    rng = np.random.default_rng(7)
    coeffs = rng.standard_normal(M // 2 - 1)  # modes 0..M/2-2, Nyquist-free
    f = even_fn(M, coeffs).values + rng.standard_normal()  # add an odd part too
    a = grid_alpha(M)
    for n in range(1, M // 2 - 1):
        f = f + rng.standard_normal() * 0.1 * np.sin(n * a)
    hh = hilbert(hilbert(GridFn(f)))
    npt.assert_allclose(hh.values, -(f - np.mean(f)), atol=1e-12)


def test_finite_depth_single_mode():
    M = 64
    a = grid_alpha(M)
    out = hilbert_finite_depth(GridFn(np.cos(a)), 5.0)
    npt.assert_allclose(out.values, np.sin(a) / np.tanh(5.0), atol=1e-13)
    npt.assert_allclose(1.0 / np.tanh(5.0), 1.0000908039820193, rtol=0, atol=1e-15)
    npt.assert_allclose(hilbert_finite_depth(GridFn(np.full(M, 3.0)), 2.0).values, 0.0,
                        atol=1e-15)


def test_finite_depth_rejects_bad_H():
    with pytest.raises(ValueError):
        hilbert_finite_depth(GridFn(np.zeros(16)), 0.0)


@pytest.mark.parametrize("H", [3.0, 5.0, 10.0])
def test_finite_depth_limit(H):
    # multi-mode band-limited even f, sup-norm normalization
    M = 128
    f = even_fn(M, [0.0, 2.0, 1.0, 0.5])
    diff = hilbert_finite_depth(f, H).values - hilbert(f).values
    bound = 2.0 * np.exp(-2.0 * H) * np.max(np.abs(f.values))
    assert np.max(np.abs(diff)) <= bound


def test_project_even_round_trip():
    M, N = 128, 20
    a = grid_alpha(M)
    coeffs = project_even(GridFn(np.cos(2 * a), even=True), 8)
    expected = np.zeros(9)
    expected[2] = 1.0
    npt.assert_allclose(coeffs, expected, atol=1e-15)

    rng = np.random.default_rng(3)
    c = rng.standard_normal(N + 1)
    f = synthesize_even(c, M)
    npt.assert_allclose(project_even(f, N), c, atol=1e-13)


def test_project_even_aliasing_warning():
    f = GridFn(np.zeros(16), even=True)
    with pytest.warns(UserWarning):
        project_even(f, 10)


def test_commutator_zero_and_constant():
    M = 64
    z = commutator_Q_fft(GridFn(np.zeros(M), even=True))
    npt.assert_allclose(z.values, 0.0, atol=1e-16)
    c = commutator_Q_quadrature(GridFn(np.full(M, 2.5), even=True))
    npt.assert_allclose(c.values, 0.0, atol=1e-14)


def test_commutator_requires_even_tag():
    with pytest.raises(ValueError):
        commutator_Q_fft(GridFn(np.zeros(16)))


def test_commutator_on_cosine_is_half():
    # y = cos(a): y*H(y') - H(y*y') = cos^2 - H(-cos*sin) = cos^2 - cos(2a)/2 = 1/2
    M = 128
    a = grid_alpha(M)
    y = GridFn(np.cos(a), even=True)
    for route in (commutator_Q_fft, commutator_Q_quadrature):
        npt.assert_allclose(route(y).values, 0.5, atol=1e-12)


def test_commutator_diagonal_limit():
    # integrand of the quadrature route tends to 4*y_a^2 on the diagonal
    M = 256
    a = grid_alpha(M)
    y = np.cos(a) + 0.3 * np.cos(2 * a)
    ya = -np.sin(a) - 0.6 * np.sin(2 * a)
    j = 17
    eps = 1e-5
    val = (y[j] - (np.cos(a[j] + eps) + 0.3 * np.cos(2 * (a[j] + eps)))) ** 2 / np.sin(
        eps / 2
    ) ** 2
    npt.assert_allclose(val, 4 * ya[j] ** 2, rtol=1e-4)


@pytest.mark.parametrize("A", [0.1, 0.3, 0.45])
def test_commutator_routes_against_closed_form(A):
    M = 256
    y = crapper_w(A).imag_trace(M)
    q_closed = exact_Q_closed_form(A, M).values
    q_fft = commutator_Q_fft(y).values
    q_quad = commutator_Q_quadrature(y).values
    npt.assert_allclose(q_fft, q_closed, atol=1e-10)
    npt.assert_allclose(q_quad, q_closed, atol=1e-9)
    npt.assert_allclose(q_fft, q_quad, atol=1e-9)


def test_commutator_shift_invariance_and_evenness():
    M = 128
    y = crapper_w(0.35).imag_trace(M)
    q1 = commutator_Q_fft(y)
    q2 = commutator_Q_fft(GridFn(y.values + 3.7, even=True))
    npt.assert_allclose(q1.values, q2.values, atol=1e-12)
    assert q1.check_even() < 1e-13


def test_residual_zero_at_exact_solution():
    for A in (0.1, 0.3, 0.45):
        w = crapper_w(A, 128)
        r = residual_F(w, ParamSet.from_family(A), 512)
        assert r.max_norm() < 1e-10


def test_residual_zero_across_full_amplitude_range():
    # the whole family up to A = 0.49 solves the zero-gravity problem
    for A in np.linspace(0.01, 0.49, 13):
        w = crapper_w(A)
        r = residual_F(w, ParamSet.from_family(A), 256)
        assert r.max_norm() < 1e-10, f"A={A}"


def test_residual_flat_water_for_any_gravity():
    w = HolomorphicBoundaryFn(np.zeros(9))
    for G in (0.0, 0.5, 10.0):
        params = ParamSet(A=0.0, G=G, Omega=1.0, Bernoulli=0.5)
        r = residual_F(w, params, 64)
        npt.assert_allclose(r.values, 0.0, atol=1e-15)


def test_residual_affine_in_bernoulli():
    A = 0.3
    w = crapper_w(A, 96)
    base = ParamSet.from_family(A)
    perturbed = ParamSet(A=A, G=0.0, Omega=base.Omega, Bernoulli=base.Bernoulli + 0.01)
    r = residual_F(w, perturbed, 512)
    npt.assert_allclose(r.values, -0.01, atol=1e-10)


def test_residual_sine_content_is_rounding():
    w = crapper_w(0.4, 64)
    r = residual_F(w, ParamSet.from_family(0.4, 0.015), 256)
    spec = np.fft.rfft(r.values)
    assert np.max(np.abs(spec.imag)) / len(r.values) < 1e-13


def test_residual_raises_on_stagnation():
    # w = i*(-1)*zeta gives 1 - i*zeta*w_zeta = 1 - zeta, zero at alpha = 0
    w = HolomorphicBoundaryFn([0.0, -1.0])
    with pytest.raises(StagnationError):
        residual_F(w, ParamSet(A=0.2, G=0.0, Omega=1.0, Bernoulli=0.5), 64)


def test_linearization_is_linear_and_zero_on_zero():
    A, M = 0.3, 256
    w = crapper_w(A, 48)
    params = ParamSet.from_family(A, 0.01)
    zero = HolomorphicBoundaryFn(np.zeros(49))
    npt.assert_allclose(linearized_F_apply(w, params, zero, M).values, 0.0, atol=1e-16)
    rng = np.random.default_rng(5)
    v1 = HolomorphicBoundaryFn(rng.standard_normal(49))
    v2 = HolomorphicBoundaryFn(rng.standard_normal(49))
    c1, c2 = 0.7, -1.3
    combo = HolomorphicBoundaryFn(c1 * v1.coeffs + c2 * v2.coeffs)
    lhs = linearized_F_apply(w, params, combo, M).values
    rhs = c1 * linearized_F_apply(w, params, v1, M).values + c2 * linearized_F_apply(
        w, params, v2, M
    ).values
    npt.assert_allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("G", [0.0, 0.02])
def test_linearization_matches_central_differences(G):
    # probes normalized in the graph norm, so the O(eps^2) difference-quotient
    # remainder stays uniform over the probe's mode content
    A, M = 0.3, 256
    w = crapper_w(A, 48)
    params = ParamSet.from_family(A, G)
    rng = np.random.default_rng(11)
    eps = 1e-5
    weights = 1.0 + np.arange(49)
    for _ in range(10):
        d = rng.standard_normal(49)
        d /= np.linalg.norm(weights * d)
        v = HolomorphicBoundaryFn(d)
        plus = _residual_values(HolomorphicBoundaryFn(w.coeffs + eps * d), params, M)
        minus = _residual_values(HolomorphicBoundaryFn(w.coeffs - eps * d), params, M)
        fd = (plus - minus) / (2 * eps)
        an = _linearized_values(w, params, v, M)
        rel = np.max(np.abs(fd - an)) / np.max(np.abs(an))
        assert rel < 1e-6


def test_linearization_difference_quotient_is_second_order():
    A, M = 0.3, 256
    w = crapper_w(A, 48)
    params = ParamSet.from_family(A, 0.02)
    rng = np.random.default_rng(2)
    d = rng.standard_normal(49)
    d /= np.linalg.norm((1.0 + np.arange(49)) * d)
    v = HolomorphicBoundaryFn(d)
    an = _linearized_values(w, params, v, M)

    def fd_err(eps):
        plus = _residual_values(HolomorphicBoundaryFn(w.coeffs + eps * d), params, M)
        minus = _residual_values(HolomorphicBoundaryFn(w.coeffs - eps * d), params, M)
        return np.max(np.abs((plus - minus) / (2 * eps) - an))

    ratio = fd_err(1e-4) / fd_err(1e-5)
    assert 50 < ratio < 200  # O(eps^2)


def test_Qw_closed_form_against_bilinear_route():
    A, M = 0.25, 256
    w = crapper_w(A, 64)
    y = w.imag_trace(M).values
    v = basis_direction(3, 64)  # i*zeta^3
    closed = closed_form_Qw_at_crapper(A, v, M).values
    from diskwave.spectral import _commutator_linearized

    eta = v.boundary_values(M).imag
    bilinear = _commutator_linearized(y, eta)
    npt.assert_allclose(closed, bilinear, atol=1e-10)


def test_Qw_closed_form_constant_direction():
    v = HolomorphicBoundaryFn([2.0])  # v = 2i, constant
    out = closed_form_Qw_at_crapper(0.4, v, 64)
    npt.assert_allclose(out.values, 0.0, atol=1e-15)


def test_Qw_closed_form_first_mode_simplifies():
    # v = i*zeta  ->  Im(-4A zeta (i zeta - i(-A))/(zeta+A)^2) = Im(-4iA zeta/(zeta+A))
    A, M = 0.4, 128
    zeta = np.exp(-1j * grid_alpha(M))
    out = closed_form_Qw_at_crapper(A, basis_direction(1, 8), M).values
    expected = np.imag(-4j * A * zeta / (zeta + A))
    npt.assert_allclose(out, expected, atol=1e-13)
