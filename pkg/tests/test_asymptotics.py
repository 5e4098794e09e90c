#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of asymptotic elements and the coordinates of E_S.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from conelens.errors import NotInAsymptoticType
from conelens.mellin.asymptotics import AsymptoticElement, AsymptoticType

coefficient = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def test_terms_are_merged_and_zeros_dropped():
    v = AsymptoticElement(((0.0, 0, 1.0), (0.0, 0, 2.0), (-1.0, 1, 0.0)))
    assert v.terms == ((0j, 0, 3 + 0j),)
    assert (v - v).is_zero()


def test_coefficient_and_shift():
    v = AsymptoticElement.monomial(0.0) + AsymptoticElement(((-1.0, 0, 1.0), (-1.0, 1, -1.0)))
    assert v.coefficient(-1.0, 1) == -1
    shifted = v.shifted(1)
    assert shifted.coefficient(-2.0, 1) == -1
    assert v.max_log == 1


def test_evaluate_with_cutoff():
    v = AsymptoticElement(((-1.0, 1, 2.0),))
    t = np.array([0.1, 0.25])
    assert_allclose(v.evaluate(t), 2.0 * t * np.log(t))
    assert_allclose(v.evaluate(t, cutoff=lambda s: np.zeros_like(s)), 0.0)


def test_type_coordinates_and_legend():
    S = AsymptoticType.from_exponents([-1.0, 0.0, 0.0 + 1e-13], depth=1)
    assert S.exponents == (0j, -1 + 0j)
    assert S.legend() == ["1", "log t", "t", "t log t"]
    assert S.index(-1.0, 1) == 3
    with pytest.raises(NotInAsymptoticType):
        S.index(-2.0, 0)
    with pytest.raises(NotInAsymptoticType):
        S.index(0.0, 2)


def test_vector_rejects_foreign_terms():
    S = AsymptoticType.from_exponents([0.0], depth=0)
    with pytest.raises(NotInAsymptoticType):
        S.vector(AsymptoticElement.monomial(-1.0))
    assert_allclose(S.vector(AsymptoticElement.monomial(-1.0, c=1e-14), atol=1e-12), [0.0])


@settings(max_examples=50, deadline=None)
@given(values=st.lists(coefficient, min_size=6, max_size=6))
def test_vector_element_inverse(values):
    S = AsymptoticType.from_exponents([0.0, -1.0, -0.5 + 0.25j], depth=1)
    vector = np.array(values, dtype=complex)
    assert_allclose(S.vector(S.element(vector)), vector)


@settings(max_examples=50, deadline=None)
@given(a=coefficient, b=coefficient, scalar=coefficient)
def test_element_arithmetic_is_linear(a, b, scalar):
    u = AsymptoticElement(((0.0, 0, a), (-1.0, 1, b)))
    v = AsymptoticElement(((0.0, 0, b),))
    S = AsymptoticType.from_exponents([0.0, -1.0], depth=1)
    assert_allclose(S.vector(scalar * (u + v)), scalar * (S.vector(u) + S.vector(v)), atol=1e-9)
