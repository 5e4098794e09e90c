#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the numerical oracles: Mellin quadrature, contour integrals, jet functions and
membership in the weighted spaces.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import gamma as gamma_fn
from scipy.special import psi

from conelens.cone import assemble_domain, principal_sites
from conelens.constants import MembershipCriterion
from conelens.errors import QuadratureDivergence
from conelens.mellin.algebra import ComplexPolynomial
from conelens.mellin.asymptotics import AsymptoticElement
from conelens.oracle import (
    CutoffPair,
    SampledFunction,
    apply_cone_jet,
    closed_form_G,
    contour_G,
    contour_radius,
    contour_zeta,
    exp_bridge,
    group_action,
    jet_function,
    mellin_jet,
    mellin_numeric,
    mellin_numeric_many,
    membership_check,
    principal_coefficients,
    weighted_norm,
    zeta_closed_form,
)

from conftest import fixture_operator


def beta_function() -> SampledFunction:
    return SampledFunction.from_callable(lambda t: t**3 * (1 - t) ** 3, support=(0.0, 1.0), leading_exponent=3)


def beta_mellin(z: complex) -> complex:
    """B(z + 3, 4)."""
    return gamma_fn(z + 3) * 6.0 / gamma_fn(z + 7)


def test_cutoff_profile():
    t = np.array([0.0, 0.25, 0.5, 0.75, 1.0, 3.0])
    values = exp_bridge(t)
    assert_allclose(values[[0, 1, 2]], 1.0)
    assert_allclose(values[[4, 5]], 0.0)
    assert 0 < values[3] < 1
    cut = CutoffPair()
    assert_allclose(cut.omega0(np.array([0.9, 2.0])), [1.0, 0.0])


@pytest.mark.parametrize("z, expected", [(1.0, 1 / 140), (0.0, 1 / 60)])
def test_beta_golden_values(z, expected):
    assert mellin_numeric(beta_function(), z) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("z", [0.25, -1.5 + 0.3j])
def test_beta_closed_form(z):
    assert abs(mellin_numeric(beta_function(), z) - beta_mellin(z)) <= 1e-9 * abs(beta_mellin(z))


def test_shift_identity():
    u = beta_function()
    tu = SampledFunction.from_callable(lambda t: t * u(t), support=(0.0, 1.0), leading_exponent=4)
    for z in (0.25, -1.5 + 0.3j):
        assert abs(mellin_numeric(tu, z) - mellin_numeric(u, z + 1)) <= 1e-9 * abs(beta_mellin(z + 1))


def test_mellin_many_agrees_with_single_points():
    u = beta_function()
    zs = np.array([0.0, 0.1j, -0.5 + 0.2j, 1.0])
    assert_allclose(mellin_numeric_many(u, zs), [mellin_numeric(u, z) for z in zs], rtol=1e-8)


def test_mellin_jet_derivative():
    z = 0.25
    jet = mellin_jet(beta_function(), z, 1)
    assert jet[0] == pytest.approx(beta_mellin(z), rel=1e-9)
    assert jet[1] == pytest.approx(beta_mellin(z) * (psi(z + 3) - psi(z + 7)), rel=1e-8)


def test_quadrature_divergence():
    with pytest.raises(QuadratureDivergence):
        mellin_numeric(beta_function(), -4.0)
    flat = SampledFunction.from_callable(lambda t: np.ones_like(t), support=(0.0, 1.0))
    with pytest.raises(QuadratureDivergence):
        mellin_numeric(flat, 0.0)


def test_sampled_mellin_needs_dense_grid():
    grid = np.geomspace(1e-6, 1.0, 100)
    with pytest.raises(ValueError):
        mellin_numeric(SampledFunction(grid, grid**2), 0.0)


def test_contour_radius():
    sites = principal_sites(ComplexPolynomial.from_roots([0.0, -1.0]))
    assert contour_radius(sites, 0.0, 0) == pytest.approx(0.1)
    assert contour_radius(sites, -1.0, 1) == pytest.approx(0.1)
    close = principal_sites(ComplexPolynomial.from_roots([0.0, -0.1]))
    assert contour_radius(close, 0.0, 0) == pytest.approx(0.045)
    assert contour_radius(close, 0.0, 1) == pytest.approx(0.045)
    assert contour_radius(principal_sites(ComplexPolynomial.from_roots([0.0])), 0.0, 0) == pytest.approx(0.1)


def _contour(name: str, index: int, ell: int):
    dd = assemble_domain(fixture_operator(name))
    pd = dd.sigma_data[index]
    f0 = dd.symbols[0]
    eps = contour_radius(principal_sites(f0), pd.sigma, ell)
    log_degree = dd.N[(index, ell)] + pd.n_sigma
    return dd, pd, contour_G(pd, ell, dd.g[ell], beta_function(), eps, f0, log_degree)


def test_contour_fix_a_level_zero():
    _, pd, fit = _contour("fix-a", 0, 0)
    expected = AsymptoticElement.monomial(pd.sigma, 0, 1 / 60)
    assert fit.element.close_to(expected, atol=1e-10), str(fit.element)
    assert fit.residual <= 1e-8


def test_contour_fix_c_level_one():
    dd, pd, fit = _contour("fix-c", 0, 1)
    expected = AsymptoticElement(((-1.0, 0, 1 / 60), (-1.0, 1, -1 / 60)))
    assert fit.element.close_to(expected, atol=1e-10), str(fit.element)

    zeta = zeta_closed_form(pd, beta_function())
    closed = closed_form_G(pd, dd.x[(0, 1)], 1, zeta)
    assert fit.element.close_to(closed, atol=1e-10)


def test_zeta_is_b_times_jet():
    dd = assemble_domain(fixture_operator("fix-b"))
    pd = dd.sigma_data[0]
    u = beta_function()
    principal = principal_coefficients(pd, dd.symbols[0], u, 0.1)
    delta = mellin_jet(u, pd.sigma, pd.n_sigma)
    assert_allclose(contour_zeta(principal), dd.B[0] @ delta, rtol=1e-8)
    assert_allclose(zeta_closed_form(pd, u), [delta[1], -delta[0]], rtol=1e-10)


def test_jet_function_matches_targets():
    u = jet_function([(0.0, 1), (-1.0, 2)], [1.0, 0.5])
    assert_allclose(mellin_jet(u, 0.0, 1), [1.0, 0.5], atol=1e-7)
    assert_allclose(mellin_jet(u, -1.0, 1), [0.0, 0.0], atol=1e-7)
    assert u.support[1] <= 0.5


def test_cancelling_integrand_is_not_divergence():
    # one full period of sin in s = log t over (1/4, 1), so û(0) = 0
    period = np.log(4.0)
    wave = SampledFunction.from_callable(
        lambda t: np.sin(2 * np.pi * (np.log(t) + period) / period), support=(0.25, 1.0)
    )
    assert abs(mellin_numeric(wave, 0.0)) < 1e-10

    u = jet_function([(0.0, 1), (-1.0, 2)], [1.0, 0.5])
    for i in range(2):
        assert abs(mellin_numeric(u, -1.0, log_power=i)) < 1e-7


def test_jet_function_validation():
    with pytest.raises(ValueError):
        jet_function([(0.0, 1)], [1.0])
    with pytest.raises(ValueError):
        jet_function([(0.0, 0), (0.0, 1)], [1.0])
    with pytest.raises(ValueError):
        jet_function([(0.0, 0)], [1.0], eps=2.0)


def test_apply_cone_jet_examples():
    fix_a = fixture_operator("fix-a")
    image = apply_cone_jet(fix_a, AsymptoticElement.monomial(0.0))
    assert image.element.close_to(AsymptoticElement.monomial(0.0), atol=1e-14)
    assert image.remainder_support == (0.5, 1.0)

    fix_b = fixture_operator("fix-b")
    v = AsymptoticElement(((0.0, 0, 2.0), (0.0, 1, -3.0)))
    assert apply_cone_jet(fix_b, v).element.close_to(v, atol=1e-14)
    assert apply_cone_jet(fix_b, AsymptoticElement.zero()).element.is_zero()


def test_apply_cone_jet_reports_singular_terms():
    fix_a = fixture_operator("fix-a")
    image = apply_cone_jet(fix_a, AsymptoticElement.monomial(0.0, 1))
    # f_0'(0) = 1 leaves t^{-2} behind
    assert [(p, j) for p, j, _ in image.singular_terms()] == [(2.0, 0)]
    assert image.cancellation_residual(1.0) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "v, gamma, passed",
    [
        (AsymptoticElement.monomial(0.0), 0.0, True),
        (AsymptoticElement.monomial(0.5), 0.0, False),
        (AsymptoticElement.monomial(-1.0, 1), 0.9, True),
        (AsymptoticElement.monomial(-1.0, 1), 1.6, False),
    ],
)
def test_exact_membership(v, gamma, passed):
    result = membership_check(v, 2, gamma)
    assert result.criterion == MembershipCriterion.EXACT
    assert bool(result) is passed
    assert len(result.offending) == (0 if passed else 1)


def test_exact_membership_ignores_small_terms():
    v = AsymptoticElement(((0.0, 0, 1.0), (1.0, 0, 1e-14)))
    assert membership_check(v, 0, 0.0, atol=1e-12).passed
    assert not membership_check(v, 0, 0.0).passed


def test_shell_membership():
    decaying = SampledFunction.from_callable(lambda t: t, support=(0.0, 2.0))
    result = membership_check(decaying, 1, 0.0)
    assert result.criterion == MembershipCriterion.SHELL
    assert result.passed
    assert result.slope == pytest.approx(-3.0, abs=0.1)

    borderline = SampledFunction.from_callable(lambda t: t**-0.5, support=(0.0, 2.0))
    assert not membership_check(borderline, 1, 0.0).passed

    with pytest.raises(ValueError):
        membership_check(decaying, -1, 0.0)


def test_weighted_norm_isometry():
    u = SampledFunction.from_callable(lambda t: t * (1 - t) ** 2, support=(0.0, 1.0))
    for lam in (0.4, 3.7):
        assert weighted_norm(group_action(u, lam), 2, 0.0) == pytest.approx(weighted_norm(u, 2, 0.0), rel=1e-12)
    with pytest.raises(ValueError):
        group_action(u, -1.0)
