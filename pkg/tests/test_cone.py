#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the cone pipeline: poles, the g-recursion, the bases of 𝔈_σ and the projection Q.
"""

import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly
from numpy.testing import assert_allclose

from conelens.cone import (
    ConeOperator,
    assemble_domain,
    b_matrix,
    build_projection,
    conormal_symbols,
    domain_basis,
    g_sequence,
    hat_basis,
    pole_set,
    recursion_residual,
    theta,
    x_vectors,
)
from conelens.errors import NotInHatBasis, SpecInvariantError, WeightLineCollision
from conelens.mellin.algebra import ComplexPolynomial
from conelens.mellin.asymptotics import AsymptoticElement
from conelens.oracle import apply_cone_jet, membership_check

from conftest import RANDOM_SEEDS, fixture_operator, random_cone_operator

POINTS = np.array([0.3 + 0.2j, -0.7 + 1.1j, 2.5 - 0.4j])


def element(*terms) -> AsymptoticElement:
    return AsymptoticElement(tuple(terms))


def test_operator_table_validation():
    with pytest.raises(SpecInvariantError):
        ConeOperator.from_coefficients(2, {3: [1]})
    with pytest.raises(SpecInvariantError):
        ConeOperator.from_coefficients(1, {0: [1, 2, 3]})
    with pytest.raises(SpecInvariantError):
        ConeOperator.from_coefficients(1, {0: [0, 1]})


def test_conormal_symbols():
    f = conormal_symbols(fixture_operator("fix-c"))
    assert len(f) == 3
    assert_allclose(f[0](POINTS), POINTS + POINTS**2)
    assert_allclose(f[1](POINTS), np.ones(3))
    assert_allclose(f[2](POINTS), np.ones(3))


def test_pole_data_simple_roots():
    dd = assemble_domain(fixture_operator("fix-a"))
    sigmas = [pd.sigma for pd in dd.sigma_data]
    assert_allclose(sigmas, [0.0, -1.0], atol=1e-12)
    assert [pd.n_sigma for pd in dd.sigma_data] == [0, 0]
    assert [pd.mu_sigma for pd in dd.sigma_data] == [1, 0]
    assert_allclose([pd.r[0] for pd in dd.sigma_data], [1.0, -1.0], atol=1e-10)


def test_pole_data_double_root():
    dd = assemble_domain(fixture_operator("fix-b"))
    (pd,) = dd.sigma_data
    assert pd.n_sigma == 1
    assert pd.mu_sigma == 1
    assert_allclose(pd.r, [0.0, 1.0], atol=1e-10)
    assert_allclose(dd.B[0], [[0, 1], [-1, 0]], atol=1e-10)
    assert_allclose(b_matrix(pd), dd.B[0])


def test_g_sequence_examples():
    f_a = conormal_symbols(fixture_operator("fix-a"))
    g_a = g_sequence(f_a, 2)
    assert_allclose(g_a[0](POINTS), np.ones(3))
    assert g_a[1].is_zero
    assert_allclose(g_a[2](POINTS), -1.0 / ((POINTS - 2) * (POINTS - 1)))

    g_c = g_sequence(conormal_symbols(fixture_operator("fix-c")), 1)
    assert_allclose(g_c[1](POINTS), -1.0 / ((POINTS - 1) * POINTS))


def test_recursion_residual_on_fixtures(cone_fixture):
    dd = assemble_domain(cone_fixture)
    for j in range(cone_fixture.mu):
        assert recursion_residual(dd.symbols, dd.g, j) <= 1e-12


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_recursion_residual_random(seed):
    op = random_cone_operator(seed)
    f = conormal_symbols(op)
    g = g_sequence(f, op.mu)
    for j in range(op.mu + 1):
        assert recursion_residual(f, g, j) <= 1e-9


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_dimension_counts_strip_roots(seed):
    op = random_cone_operator(seed)
    dd = assemble_domain(op)
    roots = npoly.polyroots(op.taylor[:, 0])
    expected = int(np.sum((roots.real > 0.5 - op.mu) & (roots.real < 0.5)))
    assert dd.dimension == expected
    assert len(dd.basis_elements()) == expected


def test_fix_c_x_vectors():
    dd = assemble_domain(fixture_operator("fix-c"))
    assert dd.N[(0, 1)] == 1
    assert dd.m_sigma[0] == 1
    assert_allclose(np.array(dd.x[(0, 1)]), [[1.0], [-1.0]], atol=1e-10)


def test_pole_set_keeps_the_strip():
    poles = pole_set(ComplexPolynomial.from_roots([0.0, -1.0, 1.0, -3.0]), 2)
    assert_allclose([pd.sigma for pd in poles], [0.0, -1.0], atol=1e-12)
    assert [pd.mu_sigma for pd in poles] == [1, 0]
    assert_allclose([pd.r[0] for pd in poles], [-1 / 3, 1 / 4], rtol=1e-10)


def test_fix_c_basis_from_parts():
    f = conormal_symbols(fixture_operator("fix-c"))
    g = g_sequence(f, 1)
    pd = pole_set(f[0], 2)[0]
    xs = {0: x_vectors(pd, g[0], 0), 1: x_vectors(pd, g[1], 1)}
    assert_allclose(np.array(xs[1]), [[1.0], [-1.0]], atol=1e-10)

    (b,) = domain_basis(pd, xs)
    assert b.close_to(element((0.0, 0, 1.0), (-1.0, 0, 1.0), (-1.0, 1, -1.0)), atol=1e-10)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("fix-a", [[(0.0, 0, 1.0)], [(-1.0, 0, 1.0)]]),
        ("fix-b", [[(0.0, 0, 1.0)], [(0.0, 1, 1.0)]]),
        ("fix-c", [[(0.0, 0, 1.0), (-1.0, 0, 1.0), (-1.0, 1, -1.0)], [(-1.0, 0, 1.0)]]),
    ],
)
def test_domain_bases(name, expected):
    dd = assemble_domain(fixture_operator(name))
    basis = dd.basis_elements()
    assert len(basis) == len(expected)
    for b, terms in zip(basis, expected):
        assert b.close_to(element(*terms), atol=1e-10), str(b)


def test_theta_and_inverse(cone_fixture):
    dd = assemble_domain(cone_fixture)
    for i, pd in enumerate(dd.sigma_data):
        for b, hb in zip(dd.bases[i], hat_basis(pd)):
            assert theta(pd, b).close_to(hb, atol=1e-12)
            assert dd.theta_inv(i, hb).close_to(b, atol=1e-12)


def test_theta_inv_rejects_foreign_terms():
    dd = assemble_domain(fixture_operator("fix-a"))
    with pytest.raises(NotInHatBasis):
        dd.theta_inv(0, AsymptoticElement.monomial(-1.0))
    assert dd.theta_inv(0, AsymptoticElement.monomial(-1.0, c=1e-15), atol=1e-12).is_zero()


def test_fix_c_projection():
    dd = assemble_domain(fixture_operator("fix-c"))
    assert dd.S.legend() == ["1", "log t", "t", "t log t"]
    expected = np.array([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 0]])
    assert_allclose(dd.projection, expected, atol=1e-10)


def test_fix_a_projection_with_log_depth():
    dd = assemble_domain(fixture_operator("fix-a"))
    assert_allclose(dd.projection, np.eye(2), atol=1e-12)
    assert_allclose(build_projection(dd, log_depth=1), np.diag([1, 0, 1, 0]), atol=1e-12)
    with pytest.raises(ValueError):
        dd.with_depth(-1)


@pytest.mark.parametrize("seed", RANDOM_SEEDS[:10])
def test_projection_properties(seed):
    dd = assemble_domain(random_cone_operator(seed))
    Q = dd.projection
    assert_allclose(Q @ Q, Q, atol=1e-8)
    for b in dd.basis_elements():
        v = dd.S.vector(b)
        assert_allclose(Q @ v, v, atol=1e-8)
    if dd.dimension:
        assert np.linalg.matrix_rank(Q, tol=1e-6) == dd.dimension


def test_weight_line_collision():
    op = ConeOperator.from_coefficients(2, {0: [1.5], 1: [1]})
    with pytest.raises(WeightLineCollision) as info:
        assemble_domain(op)
    assert info.value.line == pytest.approx(-1.5)


def test_fix_c_cancellation():
    op = fixture_operator("fix-c")
    dd = assemble_domain(op)
    for b in dd.basis_elements():
        assert apply_cone_jet(op, b).cancellation_residual(1.0) <= 1e-10


def test_image_lies_in_l2():
    op = fixture_operator("fix-c")
    for b in assemble_domain(op).basis_elements():
        assert membership_check(apply_cone_jet(op, b).element, 0, 0.0, atol=1e-10)

    # without its correction terms ω·1 is mapped onto t^{-1}
    result = membership_check(apply_cone_jet(op, element((0.0, 0, 1.0))).element, 0, 0.0, atol=1e-10)
    assert not result
    assert [(p.real, j) for p, j, _ in result.offending] == [(1.0, 0)]


def test_cancellation_detects_corrupted_correction():
    op = fixture_operator("fix-c")
    corrupted = element((0.0, 0, 1.0), (-1.0, 0, 1.0), (-1.0, 1, -1.0 + 1e-3))
    assert apply_cone_jet(op, corrupted).cancellation_residual(1.0) == pytest.approx(1e-3, rel=1e-6)

    # f_0(-1) = 0, so the coefficient of t itself is not detected
    shifted = element((0.0, 0, 1.0), (-1.0, 0, 1.0 + 1e-3), (-1.0, 1, -1.0))
    assert apply_cone_jet(op, shifted).cancellation_residual(1.0) <= 1e-12


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_cancellation_random(seed):
    op = random_cone_operator(seed)
    dd = assemble_domain(op)
    for b in dd.basis_elements():
        image = apply_cone_jet(op, b)
        scale = max(1.0, b.scale, image.element.scale)
        assert image.cancellation_residual(scale) <= 1e-9


def test_triple_root_domain():
    # f_0 = (z + 1)³
    dd = assemble_domain(ConeOperator.from_coefficients(3, {0: [1], 1: [3], 2: [3], 3: [1]}))
    (pd,) = dd.sigma_data
    assert abs(pd.sigma + 1.0) < 1e-10
    assert pd.n_sigma == 2
    assert_allclose(pd.r, [0.0, 0.0, 1.0], atol=1e-8)

    basis = dd.basis_elements()
    assert len(basis) == 3
    for j, b in enumerate(basis):
        assert b.close_to(element((-1.0, j, 1.0)), atol=1e-8), str(b)
