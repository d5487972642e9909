from __future__ import annotations

import json
import math

import numpy as np
import pytest

from tensormoments import oracle
from tensormoments.words import Word


@pytest.fixture(scope="module")
def gaussian():
    return oracle.make_field(oracle.ScalarProfile())


def test_components_symmetric_and_conserved(gaussian):
    res = oracle.conservation_residual(gaussian)
    assert res["symmetric"]
    assert res["max |div| / max |T|"] <= 1e-12


def test_divergence_matches_finite_differences(gaussian):
    x = np.array([0.3, -0.7, 0.45])
    h = 1e-5
    fd = np.zeros(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        fd += (gaussian.components(x + e)[i] - gaussian.components(x - e)[i]) / (2 * h)
    assert np.max(np.abs(fd)) < 1e-8


def test_hessian_matches_finite_differences():
    field = oracle.make_field(oracle.ScalarProfile(width=1.3, center=(0.1, 0.2, -0.3)))
    x = np.array([0.5, -0.2, 0.9])
    h = 1e-4

    def phi(y):
        t = np.sum((y - np.array(field.profile.center)) ** 2) / field.profile.width**2
        return math.exp(-t / 2)

    fd = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            ei, ej = np.eye(3)[i] * h, np.eye(3)[j] * h
            fd[i, j] = (phi(x + ei + ej) - phi(x + ei - ej) - phi(x - ei + ej) + phi(x - ei - ej)) / (4 * h * h)
    assert np.allclose(field.hessian(x), fd, atol=1e-7)


def test_calibration(gaussian):
    assert oracle.calibration_error(oracle.default_grid(gaussian.profile)) < oracle.CALIBRATION_TOL


def test_default_gaussian_report(gaussian):
    rep = oracle.oracle_report(gaussian)
    assert rep["max relative (|w_L| <= 1)"] <= oracle.VANISH_TOL
    assert rep["second moments nonzero"]
    for pair in rep["(aa;bb) + 2(ab;ab)"]:
        assert pair["relative residual"] <= oracle.RELATION_TOL
        assert min(pair["relative sizes"]) > oracle.NONZERO_TOL
    assert rep["max identity residual (|w_L| = 2)"] <= oracle.RELATION_TOL
    assert rep["holds"]
    json.dumps(rep)


def test_second_moment_closed_form(gaussian):
    # integrating by parts: (aa;bb) = 2 int phi and (ab;ab) = -int phi, with int phi = (2 pi)^1.5
    grid = oracle.default_grid(gaussian.profile)
    aabb = oracle.numeric_moment(gaussian, Word.parse("aa"), Word.parse("bb"), grid)
    abab = oracle.numeric_moment(gaussian, Word.parse("ab"), Word.parse("ab"), grid)
    assert aabb == pytest.approx(2 * (2 * math.pi) ** 1.5, rel=1e-10)
    assert abab == pytest.approx(-(2 * math.pi) ** 1.5, rel=1e-10)


def test_bump_converges():
    field = oracle.make_field(oracle.ScalarProfile(kind="bump"))
    errs = [e["max relative"] for e in oracle.convergence(field, (24, 48, 96))]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-6


def test_bad_inputs(gaussian):
    with pytest.raises(ValueError):
        oracle.ScalarProfile(kind="box")
    with pytest.raises(ValueError):
        oracle.ScalarProfile(width=0)
    grid = oracle.default_grid(gaussian.profile, 8)
    with pytest.raises(ValueError):
        oracle.numeric_moment(gaussian, Word.parse("a"), Word.parse("abc"), grid)
    with pytest.raises(ValueError):
        oracle.numeric_moment(gaussian, Word.parse("d"), Word.parse("ab"), grid)
