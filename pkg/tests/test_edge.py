#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the edge layer: η-dependent symbols, the group action on E_S and the homogeneity
checks along rays.
"""

import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conelens.edge import (
    EdgeOperator,
    EtaSample,
    edge_conormal,
    edge_domain_sample,
    edge_structure,
    homogeneity_checks,
    kappa_matrix,
    principal_edge_conormal,
    random_rays,
    regression_slope,
)
from conelens.errors import SlopeRegressionFailure, SpecInvariantError
from conelens.mellin.asymptotics import AsymptoticElement, AsymptoticType
from conelens.utils.structure import Tolerances

from conftest import fixture_operator

POINTS = np.array([0.3 + 0.2j, -0.7 + 1.1j, 2.5 - 0.4j])
LAMBDAS = [1.0, 2.0, 4.0, 8.0, 16.0]


def test_eta_sample_bounds():
    with pytest.raises(ValueError):
        EtaSample((0.5, 0.0))
    unit = EtaSample((0.6, 0.8))
    assert unit.bracket == pytest.approx(1.0)
    assert unit.scaled(5.0).eta == pytest.approx((3.0, 4.0))
    assert EtaSample((3.0, 4.0)).power((2, 1)) == pytest.approx(36.0)


def test_operator_validation():
    with pytest.raises(SpecInvariantError):
        EdgeOperator.from_coefficients(2, 2, {(2, (1, 0)): [1]})
    with pytest.raises(SpecInvariantError):
        EdgeOperator.from_coefficients(2, 2, {(0, (1,)): [1]})
    with pytest.raises(SpecInvariantError):
        EdgeOperator.from_coefficients(2, 1, {(0, (2,)): [1]})


def test_cone_part_drops_tangential_terms():
    op = fixture_operator("fix-f")
    assert not op.is_cone_only
    cone = op.cone_part()
    assert_allclose(cone.taylor[:, 0], [0, 1, 1])
    assert_allclose(op.f0(POINTS), POINTS + POINTS**2)


def test_fix_e_symbols():
    op = fixture_operator("fix-e")
    eta = EtaSample((2.0, 0.0))
    f = edge_conormal(op, eta)
    f_bar = principal_edge_conormal(op, eta)
    assert_allclose(f[0](POINTS), 4 * (POINTS + POINTS**2))
    assert f[1].is_zero
    assert_allclose(f[2](POINTS), 5.0)
    assert_allclose(f_bar[0](POINTS), 4 * (POINTS + POINTS**2))
    assert_allclose(f_bar[2](POINTS), 4.0)


def test_fix_f_symbols():
    op = fixture_operator("fix-f")
    eta = EtaSample((2.0, 0.0))
    assert_allclose(edge_conormal(op, eta)[1](POINTS), 4.0)
    assert_allclose(principal_edge_conormal(op, eta)[1](POINTS), 4.0)


def test_fix_f_range_basis():
    sample = edge_domain_sample(fixture_operator("fix-f"), EtaSample((3.0, 4.0)))
    expected = AsymptoticElement(((0.0, 0, 1.0), (-1.0, 0, 0.6), (-1.0, 1, -0.6)))
    assert sample.range_bases[0][0].close_to(expected, atol=1e-10)
    assert sample.principal_bases[0][0].close_to(expected, atol=1e-10)
    assert_allclose(np.array(sample.x_tilde[(0, 1)]), np.array([[0.6], [-0.6]]) / 25.0, atol=1e-12)


def test_edge_structure_depth():
    structure = edge_structure(fixture_operator("fix-e"))
    assert structure.S.legend() == ["1", "log t", "t", "t log t"]
    assert len(structure.poles) == 2


def test_fix_e_projection_symbol():
    sample = edge_domain_sample(fixture_operator("fix-e"), EtaSample((0.0, 4.0)))
    assert_allclose(sample.pi, np.diag([1, 0, 1, 0]), atol=1e-12)
    block = np.array([[1.0, -np.log(4.0)], [0.0, 0.0]])
    assert_allclose(sample.p_E[:2, :2], block, atol=1e-10)
    assert_allclose(sample.p_E[2:, 2:], block, atol=1e-10)
    assert sample.idempotency_defect() <= 1e-10
    assert sample.range_defect() <= 1e-10


def test_sample_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        edge_domain_sample(fixture_operator("fix-e"), EtaSample((1.0, 0.0, 0.0)))


def test_kappa_on_log_term():
    S = AsymptoticType.from_exponents([-1.0], depth=1)
    kappa = kappa_matrix(np.e, S)
    assert_allclose(kappa @ np.array([0.0, 1.0]), np.exp(1.5) * np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        kappa_matrix(0.0, S)


@pytest.mark.parametrize("a, b", [(2.0, 3.0), (0.5, 7.0), (np.e, 1 / np.e)])
def test_kappa_group_law(a, b):
    S = AsymptoticType.from_exponents([0.0, -1.0, -0.5 + 0.3j], depth=2)
    assert_allclose(kappa_matrix(a, S) @ kappa_matrix(b, S), kappa_matrix(a * b, S).matrix, rtol=1e-12, atol=1e-12)
    kappa = kappa_matrix(a, S)
    assert_allclose(kappa.conjugate(np.eye(S.dim)), np.eye(S.dim), atol=1e-12)


def test_regression_slope():
    lambdas = np.array([1.0, 2.0, 4.0, 8.0])
    assert regression_slope(lambdas, 3.0 * lambdas**-2) == pytest.approx(-2.0)
    assert regression_slope(lambdas, np.zeros(4)) is None
    assert regression_slope(lambdas, [0.0, 0.0, 0.0, 1.0]) == -np.inf


def test_random_rays_are_unit_and_seeded():
    rays = random_rays(3, 5, seed=7)
    assert len(rays) == 5
    assert_allclose([np.linalg.norm(r) for r in rays], 1.0)
    assert_allclose(rays, random_rays(3, 5, seed=7))


@pytest.mark.parametrize("name", ["fix-e", "fix-f"])
def test_homogeneity_exact_classicality(name):
    rays = random_rays(2, 3, seed=1)
    with pytest.warns(UserWarning, match="vanishes identically"):
        report = homogeneity_checks(fixture_operator(name), rays, LAMBDAS, workers=1)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.slopes["edge.classicality"] == [None, None, None]
    assert len(report.samples) == len(rays) * len(LAMBDAS)


def test_fix_g_slopes():
    rays = random_rays(2, 2, seed=3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        report = homogeneity_checks(fixture_operator("fix-g"), rays, LAMBDAS, workers=2)
    assert report.passed, [c for c in report.checks if not c.passed]
    for slope in report.slopes["edge.classicality"]:
        assert slope == pytest.approx(-3.0, abs=1e-3)
    for slope in report.slopes["edge.projection_limit"]:
        assert slope <= -0.9


def test_fix_g_strict_failure():
    rays = random_rays(2, 1, seed=3)
    with pytest.raises(SlopeRegressionFailure):
        homogeneity_checks(fixture_operator("fix-g"), rays, LAMBDAS, Tolerances(slope_margin=-0.5), workers=1, strict=True)


def test_dilations_below_one_are_rejected():
    with pytest.raises(ValueError):
        homogeneity_checks(fixture_operator("fix-e"), random_rays(2, 1), [0.5, 1.0, 2.0])


def test_sweep_callback_sees_every_sample():
    seen = []
    homogeneity_checks(
        fixture_operator("fix-g"), random_rays(2, 2), LAMBDAS[:3], workers=2, on_sample=lambda key, _: seen.append(key)
    )
    assert sorted(seen) == sorted((i, lam) for i in range(2) for lam in LAMBDAS[:3])
