import numpy as np
import pytest

from conftest import make_pair
from spiral_toolbox.geometry import classifiers
from spiral_toolbox.geometry import discrete_geometry as dg
from spiral_toolbox.geometry import frenet_integrator as fi
from spiral_toolbox.geometry.classifiers import Label
from spiral_toolbox.spiral_toolbox_errors import DomainError, InsufficientDataError, RankError


@pytest.mark.parametrize("kappa, tau, s_range, expected", [
    ((2.0, 1.0), (3.0, 4.0), (0.0, 5.0),
     {Label.EULER_SPIRAL, Label.GENERALIZED_EULER, Label.BERTRAND}),
    ((0.0, 1.0, 1.0, 1.0), (0.0, 1.0, 2.0, 3.0), (0.0, 5.0),
     {Label.LOGARITHMIC_SPIRAL, Label.GENERALIZED_EULER}),
    ((0.0, 3.0), (0.0, 3.0), (0.0, 5.0),
     {Label.GENERAL_HELIX, Label.GENERALIZED_EULER, Label.BERTRAND, Label.EULER_SPIRAL}),
])
def test_classify_profile_pairs(kappa, tau, s_range, expected):
    report = classifiers.classify(make_pair(kappa, tau, *s_range))
    assert report.labels == expected
    assert report.tol_used == classifiers.PROFILE_TOLERANCE


def test_planar_cornu():
    report = classifiers.classify(make_pair((1.0, 1.0), (0.0, 0.0), 0.0, 5.0))
    assert {Label.PLANAR_CORNU, Label.GENERALIZED_EULER, Label.EULER_SPIRAL} <= report.labels
    assert Label.GENERAL_HELIX not in report.labels
    # lambda*kappa = 1 has no solution, the Euler implication supplies the label
    assert Label.BERTRAND in report.labels
    assert any("Bertrand" in note for note in report.notes)


def test_rectifying():
    report = classifiers.classify(make_pair((0.0, 5.0), (2.0, 1.0), 0.0, 5.0))
    assert Label.RECTIFYING in report.labels
    assert report.ratio_orientation["Rectifying"] == classifiers.TAU_OVER_KAPPA
    fit = report.fits["Rectifying"]
    assert fit.coefficients.a == pytest.approx(0.4) and fit.coefficients.b == pytest.approx(0.2)


def test_fits_and_orientation_recorded():
    report = classifiers.classify(make_pair((2.0, 1.0), (3.0, 4.0), 0.0, 5.0))
    assert report.fits["EulerSpiral"].coefficients.a == pytest.approx(2.0)
    assert report.fits["EulerSpiral.tau"].coefficients.b == pytest.approx(4.0)
    assert report.ratio_orientation["GeneralizedEuler"] in (classifiers.KAPPA_OVER_TAU, classifiers.TAU_OVER_KAPPA)

    data = report.to_dict()
    assert data["labels"] == ["EulerSpiral", "GeneralizedEuler", "Bertrand"]
    assert data["tol"] == classifiers.PROFILE_TOLERANCE
    assert data["fits"]["Bertrand"]["family"] == "Linear"


def test_fit_bertrand():
    fit = classifiers.fit_bertrand(make_pair((1.0, 1.0), (2.0, 1.0), 0.0, 3.0))
    assert fit.coefficients.a == pytest.approx(2.0) and fit.coefficients.b == pytest.approx(-1.0)
    assert fit.rms_residual < 1e-12

    circle = classifiers.fit_bertrand(make_pair((0.0, 1.0), (0.0, 0.0), 0.0, 3.0))
    assert circle.coefficients.a == pytest.approx(1.0) and circle.coefficients.b == pytest.approx(0.0, abs=1e-12)
    assert circle.rms_residual < 1e-12

    with pytest.raises(RankError):
        classifiers.fit_bertrand(make_pair((1.0, 1.0), (2.0, 2.0), 0.0, 3.0))


def test_bertrand_withheld_without_relation():
    s = np.linspace(1.0, 2.0, 257)
    samples = dg.IntrinsicSamples(s, s ** 2, s)
    fit = classifiers.fit_bertrand(samples)
    assert fit.rms_residual > 1e-3

    report = classifiers.classify(samples)
    assert Label.BERTRAND not in report.labels
    assert report.tol_used == classifiers.SAMPLES_TOLERANCE


def test_linear_pairs_have_exact_bertrand_relation(rng):
    fitted = 0
    while fitted < 100:
        kappa = (rng.uniform(0.1, 2.0), rng.uniform(0.5, 2.0))
        tau = (rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        if abs(kappa[0] * tau[1] - kappa[1] * tau[0]) < 1e-2:
            continue
        fit = classifiers.fit_bertrand(make_pair(kappa, tau, 0.0, 3.0))
        assert fit.rms_residual <= 1e-10
        fitted += 1


def random_family_pair(rng, family):
    if family == "linear":
        return (rng.uniform(0.1, 2.0), rng.uniform(0.5, 2.0)), (rng.uniform(-2.0, 2.0), rng.uniform(0.5, 2.0))
    if family == "reciprocal":
        return ((0.0, 1.0, rng.uniform(0.1, 2.0), rng.uniform(0.5, 2.0)),
                (0.0, 1.0, rng.uniform(0.1, 2.0), rng.uniform(0.5, 2.0)))
    # constant pair, a circular helix
    return (0.0, rng.uniform(0.1, 2.0)), (0.0, rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0]))


@pytest.mark.parametrize("family", ["linear", "reciprocal", "constant"])
def test_implications_hold_for_random_profiles(rng, family):
    for _ in range(100):
        kappa, tau = random_family_pair(rng, family)
        report = classifiers.classify(make_pair(kappa, tau, 0.0, 2.0))
        if family == "constant":
            assert Label.GENERAL_HELIX in report.labels
        for premise, conclusion in classifiers.IMPLICATIONS:
            if premise in report.labels:
                assert conclusion in report.labels


def test_scale_coherence():
    pair = make_pair((0.0, 2.0), (2.0, 1.0), 0.5, 3.0)
    samples = dg.IntrinsicSamples.from_profile_pair(pair)
    scaled = dg.IntrinsicSamples(samples.s, 3.0 * samples.kappa, 3.0 * samples.tau)

    ratio_labels = {Label.GENERAL_HELIX, Label.GENERALIZED_EULER, Label.RECTIFYING}
    original = classifiers.classify(samples, tol=1e-9).labels & ratio_labels
    assert original == classifiers.classify(scaled, tol=1e-9).labels & ratio_labels
    assert Label.RECTIFYING in original


def test_profile_and_estimated_labels_agree():
    pair = make_pair((2.0, 1.0), (3.0, 4.0), 0.0, 2.0)
    samples = dg.estimate_curvature_torsion(fi.integrate_frenet(pair, step=1e-3))
    assert classifiers.classify(samples, tol=1e-3).labels == classifiers.classify(pair, tol=1e-3).labels


def test_classify_errors():
    s = np.linspace(0.0, 1.0, 5)
    with pytest.raises(InsufficientDataError):
        classifiers.classify(dg.IntrinsicSamples(s, np.ones(5), np.ones(5)))
    with pytest.raises(DomainError):
        classifiers.classify(make_pair((1.0, 1.0), (1.0, 0.0), 0.0, 1.0), tol=0.0)
    with pytest.raises(DomainError):
        classifiers.classify([(0.0, 1.0, 1.0)])
