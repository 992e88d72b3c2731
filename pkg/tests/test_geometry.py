"""Profile reconstruction, intersection classification, touching bisection."""

import math

import numpy as np
import numpy.testing as npt
import pytest

from diskwave import (
    BracketError,
    HolomorphicBoundaryFn,
    a_max,
    chord_slope_matrix,
    continue_in_G,
    crapper_w,
    crest_trough_height,
    find_touching_A,
    is_overhanging,
    profile_z_exact,
    reconstruct_profile,
    self_intersections,
)

CRIT = a_max()


def test_reconstruct_flat():
    w = HolomorphicBoundaryFn(np.zeros(5))
    p = reconstruct_profile(w, 64)
    npt.assert_allclose(p.x, p.alpha, atol=1e-15)
    npt.assert_allclose(p.y, 0.0, atol=1e-15)
    assert p.stagnation_margin == 1.0


def test_reconstruct_matches_exact_profile():
    # two closed-form routes to the same curve
    A, M = 0.4, 512
    p1 = reconstruct_profile(crapper_w(A, 128), M)
    p2 = profile_z_exact(A, M)
    npt.assert_allclose(p1.x, p2.x, atol=1e-12)
    npt.assert_allclose(p1.y, p2.y, atol=1e-12)


def test_touching_wave_is_not_extreme():
    # the touching wave keeps a positive stagnation margin
    p = profile_z_exact(CRIT.a_max, 1024)
    assert p.stagnation_margin > 0.1


def test_reconstruct_raises_at_stagnation():
    from diskwave import StagnationError

    w = HolomorphicBoundaryFn([0.0, -1.0])  # 1 - i*zeta*w_zeta = 1 - zeta
    with pytest.raises(StagnationError):
        reconstruct_profile(w, 64)


def test_profile_symmetry_relations():
    p = profile_z_exact(0.42, 512)
    assert p.symmetry_defect() < 1e-12
    p2 = reconstruct_profile(crapper_w(0.42, 96), 512)
    assert p2.symmetry_defect() < 1e-12


def test_chord_slope_diagonal_is_z_alpha():
    p = profile_z_exact(0.3, 256)
    F = chord_slope_matrix(p)
    za = p.x_alpha() + 1j * p.y_alpha()
    npt.assert_allclose(F[:, 0], za, atol=1e-10)


def test_chord_slope_far_pairs_near_unity():
    # |f| ~ 1 for parameter separations comparable to the period
    p = profile_z_exact(0.2, 128)
    F = np.abs(chord_slope_matrix(p))
    assert abs(F[0, 64] - 1.0) < 0.6


def test_intersection_counts_across_regimes():
    cases = [
        (0.8 * CRIT.a_max, 0, "none"),
        (CRIT.a_max, 1, "tangential"),
        (1.06 * CRIT.a_max, 2, "transversal"),
    ]
    for A, count, classification in cases:
        rep = self_intersections(profile_z_exact(A, 1024))
        assert rep.count == count, f"A={A}: {rep}"
        assert rep.classification == classification


def test_tangential_touch_lies_on_trough_line():
    rep = self_intersections(profile_z_exact(CRIT.a_max, 1024))
    (alpha, alpha_prime, x, y) = rep.locations[0]
    assert abs(x) < 1e-6                      # trough vertical is x = 0
    npt.assert_allclose(alpha + alpha_prime, 2 * math.pi, atol=1e-10)
    npt.assert_allclose(alpha, CRIT.maximizer_alpha, atol=1e-4)


def test_transversal_pair_is_symmetric():
    rep = self_intersections(profile_z_exact(1.06 * CRIT.a_max, 1024))
    assert rep.count == 2
    for alpha, alpha_prime, x, y in rep.locations:
        assert abs(x) < 1e-10
        npt.assert_allclose(alpha + alpha_prime, 2 * math.pi, atol=1e-10)
    assert rep.min_gap == 0.0


def test_intersections_stable_under_refinement():
    for A in (0.8 * CRIT.a_max, 1.06 * CRIT.a_max):
        reps = [self_intersections(profile_z_exact(A, M)) for M in (1024, 2048)]
        assert reps[0].count == reps[1].count
        assert reps[0].classification == reps[1].classification
        for l1, l2 in zip(sorted(reps[0].locations), sorted(reps[1].locations)):
            assert abs(l1[0] - l2[0]) < 1e-6


def test_overhang_classification():
    assert not is_overhanging(profile_z_exact(0.40, 2048))
    assert is_overhanging(profile_z_exact(0.43, 2048))
    rep = is_overhanging(profile_z_exact(CRIT.overhang_threshold, 4096))
    assert abs(rep.min_x_alpha) < 1e-8  # threshold case grazes zero


def test_overhang_witness_location():
    rep = is_overhanging(profile_z_exact(0.45, 2048))
    assert rep.overhanging
    p = profile_z_exact(0.45, 2048)
    curve = p.interpolant()
    assert float(np.real(curve.dz(rep.alpha_star))) < 0


def test_crest_trough_height_values():
    w = HolomorphicBoundaryFn(np.zeros(3))
    assert crest_trough_height(reconstruct_profile(w, 64)) == 0.0
    p = profile_z_exact(0.4, 256)
    npt.assert_allclose(crest_trough_height(p), 3.8095238095238095, rtol=1e-13)
    heights = [crest_trough_height(profile_z_exact(A, 128)) for A in np.linspace(0, 0.49, 20)]
    assert np.all(np.diff(heights) > 0)


def test_classification_thresholds_by_bisection():
    # overhang onset: bisection on the sign of min x_alpha over exact profiles
    lo, hi = 0.40, 0.43
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if is_overhanging(profile_z_exact(mid, 2048)):
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-8:
            break
    assert abs(0.5 * (lo + hi) - CRIT.overhang_threshold) < 1e-6

    # touching onset: bisection on the intersection count
    lo, hi = 0.45, 0.46
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if self_intersections(profile_z_exact(mid, 1024)).count >= 1:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-8:
            break
    assert abs(0.5 * (lo + hi) - CRIT.a_max) < 1e-6


def test_find_touching_zero_gravity():
    result = find_touching_A(0.0, (0.45, 0.46), tol=1e-7)
    assert abs(result.A - CRIT.a_max) < 1e-6
    assert result.report.classification == "tangential"
    assert result.report.count == 1


def test_find_touching_degenerate_bracket():
    with pytest.raises(BracketError):
        find_touching_A(0.0, (0.20, 0.30))
    with pytest.raises(BracketError):
        find_touching_A(0.0, (0.47, 0.49))
    with pytest.raises(BracketError):
        find_touching_A(0.0, (0.46, 0.45))


def test_solver_output_profiles_classify_cleanly():
    # converged overhanging wave with gravity: no self-intersection, stable in M
    trace = continue_in_G(0.44, 0.02, 5, N=96, M=384)
    for M in (1024, 2048):
        p = reconstruct_profile(trace.final_w, M)
        rep = self_intersections(p)
        assert rep.count == 0
        assert is_overhanging(p)
