import numpy as np
import pytest

from conftest import make_pair
from spiral_toolbox.geometry import constructions as gc
from spiral_toolbox.geometry import discrete_geometry as dg
from spiral_toolbox.geometry import frenet_integrator as fi
from spiral_toolbox.spiral_toolbox_errors import (
    DegenerateError, DivisionError, DomainError, MissingIntrinsicsError,
)

LOG_KAPPA = (0.0, 1.0, 1.0, 1.0)  # 1 / (s + 1)
LOG_TAU = (0.0, 1.0, 2.0, 3.0)  # 1 / (2s + 3)


def _frame_vectors(curve, components):
    return (components[:, 0, None] * curve.tangent
            + components[:, 1, None] * curve.normal
            + components[:, 2, None] * curve.binormal)


def test_darboux_curve_of_circle_and_helix(helix_pair):
    circle = fi.integrate_frenet(make_pair((0.0, 1.0), (0.0, 0.0), 0.0, 5.0))
    trace = gc.darboux_curve(circle).position
    np.testing.assert_allclose(trace, np.tile([0.0, 0.0, 1.0], (len(circle), 1)), atol=1e-12)

    helix = fi.integrate_frenet(helix_pair)
    np.testing.assert_allclose(np.linalg.norm(gc.darboux_curve(helix).position, axis=1), np.sqrt(1.25), atol=1e-9)


def test_darboux_derivative_has_no_normal_part():
    curve = fi.integrate_frenet(make_pair((1.0, 1.0), (2.0, 0.0), 0.0, 2.0), step=1e-3)
    trace = gc.darboux_curve(curve).position
    derivative = np.gradient(trace, curve.s, axis=0)
    along_normal = np.einsum("ij,ij->i", derivative, curve.normal)[1:-1]
    assert np.max(np.abs(along_normal)) < 1e-6


def test_darboux_curve_from_estimated_intrinsics(helix_pair):
    helix = fi.integrate_frenet(helix_pair)
    samples = dg.estimate_curvature_torsion(helix, include_endpoints=True)
    estimated = gc.darboux_curve(helix, samples).position
    np.testing.assert_allclose(estimated, gc.darboux_curve(helix).position, atol=1e-5)


def test_derived_curves_need_frames_and_intrinsics(helix_pair):
    helix = fi.integrate_frenet(helix_pair)
    with pytest.raises(DomainError):
        gc.darboux_curve(helix.without_frames())
    with pytest.raises(DomainError):
        gc.tangent_indicatrix(helix.without_frames())

    anonymous = fi.SampledCurve(helix.s, helix.position, helix.tangent, helix.normal, helix.binormal)
    with pytest.raises(MissingIntrinsicsError):
        gc.darboux_curve(anonymous)


def test_reciprocal_curve(helix_pair):
    helix = fi.integrate_frenet(helix_pair)
    np.testing.assert_allclose(np.linalg.norm(gc.reciprocal_curve(helix).position, axis=1), np.sqrt(5.0), atol=1e-9)

    circle = fi.integrate_frenet(make_pair((0.0, 1.0), (0.0, 0.0), 0.0, 5.0))
    with pytest.raises(DivisionError):
        gc.reciprocal_curve(circle)


def test_indicatrices_lie_on_unit_sphere(euler_pair):
    curve = fi.integrate_frenet(euler_pair)
    for indicatrix in (gc.tangent_indicatrix(curve), gc.binormal_indicatrix(curve)):
        np.testing.assert_allclose(np.linalg.norm(indicatrix.position, axis=1), 1.0, atol=1e-10)
        assert not indicatrix.has_frames


def test_darboux_geodesic_check(euler_pair, helix_pair):
    report = gc.check_darboux_geodesic(euler_pair, tol=1e-9)
    assert report.passed and report.max_violation == 0.0
    assert gc.EULER_READING_NOTE in report.notes
    assert report.flags == []
    # kappa*tau' - tau*kappa' = 2(s + 1) - 2s
    np.testing.assert_allclose([y for _, y in report.normal_profile], 2.0, atol=1e-12)

    helix = gc.check_darboux_geodesic(helix_pair, tol=1e-9)
    assert helix.passed and helix.flags == [gc.HELIX_FLAG]
    assert len(helix.notes) == 2

    failing = gc.check_darboux_geodesic(make_pair(LOG_KAPPA, LOG_TAU, 0.0, 5.0), tol=1e-9)
    assert not failing.passed and failing.max_violation > 1e-2


def test_reciprocal_darboux_check():
    report = gc.reciprocal_darboux_check(make_pair(LOG_KAPPA, LOG_TAU, 0.0, 5.0), tol=1e-9)
    assert report.passed
    assert report.name == "reciprocal"

    failing = gc.reciprocal_darboux_check(make_pair((1.0, 1.0), (2.0, 1.0), 0.0, 5.0), tol=1e-9)
    assert not failing.passed

    with pytest.raises(DivisionError):  # tau = 2s vanishes at s = 0
        gc.reciprocal_darboux_check(make_pair((1.0, 1.0), (2.0, 0.0), 0.0, 5.0), tol=1e-9)
    with pytest.raises(DivisionError):
        gc.reciprocal_darboux_check(make_pair((1.0, 1.0), (0.0, 0.0), 0.0, 5.0), tol=1e-9)


def test_reciprocal_check_mirrors_darboux_check(rng):
    for _ in range(20):
        kappa = (rng.uniform(0.1, 2.0), rng.uniform(0.5, 2.0))
        tau = (rng.uniform(0.1, 2.0), rng.uniform(0.5, 2.0))
        pair = make_pair(kappa, tau, 0.0, 3.0)
        assert gc.check_darboux_geodesic(pair, tol=1e-9).passed

        mirrored = make_pair((0.0, 1.0) + kappa, (0.0, 1.0) + tau, 0.0, 3.0)
        assert gc.reciprocal_darboux_check(mirrored, tol=1e-9).passed
        assert not gc.check_darboux_geodesic(mirrored, tol=1e-9).passed


@pytest.mark.parametrize("kappa, tau, coeffs, passed", [
    ((0.0, 1.0), (0.0, 0.5), (1.0, 0.0, 2.0, 0.0), True),
    ((1.0, 1.0), (2.0, 0.0), (2.0, 0.0, 1.0, 1.0), True),
    ((1.0, 1.0), (2.0, 0.0), (1.0, 0.0, 0.0, 0.0), False),
    ((0.0, 1.0), (0.0, 1.0), (1.0, 0.0, 0.0, 1.0), False),
])
def test_involute_evolute(kappa, tau, coeffs, passed):
    pair = make_pair(kappa, tau, 0.0, 5.0)
    tangent = gc.check_involute_evolute(pair, *coeffs, tol=1e-9)
    binormal = gc.check_involute_evolute(pair, *coeffs, tol=1e-9, indicatrix=gc.BINORMAL)

    assert tangent.passed is passed and binormal.passed is passed
    assert tangent.max_violation == binormal.max_violation
    assert tangent.name == "involute"
    assert "binormal" in binormal.notes[0]

    with pytest.raises(DomainError):
        gc.check_involute_evolute(pair, *coeffs, tol=1e-9, indicatrix="normal")


def test_beta_derivative_matches_finite_differences():
    pair = make_pair((1.0, 1.0), (2.0, 0.0), 0.0, 2.0)
    curve = fi.integrate_frenet(pair, step=1e-3)
    coeffs = (0.3, 0.2, -0.1, 0.5, 0.4)

    beta = gc.offset_curve_beta(curve, *coeffs)
    numeric = np.gradient(beta.position, curve.s, axis=0)
    closed_form = _frame_vectors(curve, gc.beta_derivative(pair, *coeffs, curve.s))
    np.testing.assert_allclose(numeric[1:-1], closed_form[1:-1], atol=1e-4)


def test_offset_curve_with_zero_offset_is_the_curve(euler_pair):
    curve = fi.integrate_frenet(euler_pair)
    np.testing.assert_allclose(gc.offset_curve_beta(curve, 0, 0, 0, 0, 0).position, curve.position, atol=0)


def test_ruled_surface_grid(euler_pair):
    curve = fi.integrate_frenet(euler_pair, step=1e-2)
    a, b, c, d = 0.2, 1.0, -0.3, 0.5
    patch = gc.ruled_surface(curve, a, b, c, d, -1.0, 2.0, 7, n_s=11)

    assert patch.grid.shape == (11, 7, 3)
    assert patch.n_s == 11 and patch.n_v == 7
    assert patch.rows[0] == 0 and patch.rows[-1] == len(curve) - 1
    with pytest.raises(ValueError):
        patch.grid[0, 0, 0] = 0.0

    s = curve.s[patch.rows][:, None]
    director = (a * s + b) * curve.tangent[patch.rows] + (c * s + d) * curve.binormal[patch.rows]
    for j, v in enumerate(np.linspace(-1.0, 2.0, 7)):
        np.testing.assert_allclose(patch.grid[:, j], curve.position[patch.rows] + v * director, atol=1e-12)
    np.testing.assert_allclose(patch.director, director, atol=1e-12)


def test_single_ruling_strip_is_the_offset_curve(euler_pair):
    curve = fi.integrate_frenet(euler_pair, step=1e-2)
    patch = gc.ruled_surface(curve, 0.2, 1.0, -0.3, 0.5, 1.0, 1.0, 2)
    beta = gc.offset_curve_beta(curve, 0.2, 1.0, -0.3, 0.5, 0.0)
    np.testing.assert_allclose(patch.grid[:, 0], beta.position, atol=1e-12)
    np.testing.assert_allclose(patch.grid[:, 1], beta.position, atol=1e-12)

    with pytest.raises(DegenerateError):
        gc.gaussian_curvature(patch)


def test_ruling_directions(euler_pair):
    curve = fi.integrate_frenet(euler_pair, step=1e-2)
    tangent = gc.ruled_surface(curve, 0.0, 1.0, 0.0, 0.0, -0.5, 0.5, 3)
    np.testing.assert_allclose(tangent.director, curve.tangent, atol=1e-15)

    collapsed = gc.ruled_surface(curve, 0.0, 0.0, 0.0, 0.0, -0.5, 0.5, 3)
    with pytest.raises(DegenerateError):
        gc.gaussian_curvature(collapsed)


def test_ruled_surface_validation(euler_pair):
    curve = fi.integrate_frenet(euler_pair, step=1e-2)
    with pytest.raises(DomainError):
        gc.ruled_surface(curve, 1, 0, 0, 1, 0.0, 1.0, 1)
    with pytest.raises(DomainError):
        gc.ruled_surface(curve, 1, 0, 0, 1, 1.0, 0.0, 4)
    with pytest.raises(DomainError):
        gc.ruled_surface(curve.without_frames(), 1, 0, 0, 1, 0.0, 1.0, 4)


def test_developable_surface_symbolic_and_numeric():
    # kappa = 1, tau = s with X = s*T + B has X' = T
    pair = make_pair((0.0, 1.0), (1.0, 0.0), 0.5, 2.0)
    report = gc.check_developable(pair, 1.0, 0.0, 0.0, 1.0, tol=1e-9)
    assert report.passed and report.max_violation == 0.0

    numeric = gc.check_developable_numeric(pair, 1.0, 0.0, 0.0, 1.0)
    assert numeric.passed
    assert numeric.max_violation <= 1e-5
    assert numeric.name == "developable_numeric"
    assert numeric.tol >= gc.GAUSSIAN_TOLERANCE


def test_curved_ruled_surface():
    pair = make_pair((0.0, 1.0), (0.0, 1.0), 0.5, 2.0)
    report = gc.check_developable(pair, 1.0, 0.0, 0.0, 1.0, tol=1e-9)
    assert not report.passed
    assert report.max_violation == pytest.approx(1.0)

    numeric = gc.check_developable_numeric(pair, 1.0, 0.0, 0.0, 1.0)
    assert not numeric.passed and numeric.max_violation > 1e-2

    with pytest.raises(DomainError):
        gc.check_developable(pair, 0.0, 0.0, 0.0, 0.0, tol=1e-9)


def test_check_report_to_dict(euler_pair):
    data = gc.check_darboux_geodesic(euler_pair, tol=1e-9).to_dict()
    assert sorted(data) == ["flags", "max_violation", "name", "normal_profile", "notes", "passed", "profile", "tol"]
    assert len(data["profile"]) == gc.CHECK_SAMPLE_COUNT

    data = gc.check_developable(euler_pair, 1.0, 0.0, 0.0, 1.0, tol=1e-9).to_dict()
    assert "normal_profile" not in data
