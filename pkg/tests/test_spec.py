#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the operator spec files.
"""

import pytest
from hypothesis import given, settings, strategies as st

from conelens.cone import ConeOperator
from conelens.edge import EdgeOperator
from conelens.errors import SpecInvariantError, SpecParseError
from conelens.models import CoefficientRecord, OperatorSpec, emit_spec, load_spec, parse_spec, parse_spec_text, to_cone_operator
from conelens.pipeline.stages import resolve_spec_path
from conelens.utils.structure import Tolerances

CONE_HEADER = 'kind = "cone"\nmu = 2\n'


def test_fix_a_parses_to_the_operator():
    expected = ConeOperator.from_coefficients(2, {0: [0, 0, 1], 1: [1], 2: [1]})
    assert parse_spec(resolve_spec_path("fix-a")) == expected
    assert parse_spec(resolve_spec_path("FIX-A")) == expected


def test_fix_e_is_an_edge_operator():
    spec = load_spec(resolve_spec_path("fix-e"))
    op = parse_spec(resolve_spec_path("fix-e"))
    assert spec.kind == "edge"
    assert isinstance(op, EdgeOperator)
    assert op.q == 2
    assert to_cone_operator(spec) == ConeOperator.from_coefficients(2, {0: [0, 0, 1], 1: [1], 2: [1]})


def test_unknown_fixture():
    with pytest.raises(SpecParseError):
        resolve_spec_path("fix-z")


def test_real_taylor_entries_are_accepted():
    spec = parse_spec_text(CONE_HEADER + "[[coefficients]]\nj = 2\ntaylor = [1.0, -0.5]\n")
    assert spec.coefficients[0].series == [1 + 0j, -0.5 + 0j]


def test_tolerance_overrides():
    spec = parse_spec_text(CONE_HEADER + "[[coefficients]]\nj = 2\ntaylor = [1.0]\n[tolerances]\nfit = 1e-4\n")
    tolerances = spec.tolerances.apply(Tolerances())
    assert tolerances.fit == 1e-4
    assert tolerances.zero == Tolerances().zero


@pytest.mark.parametrize(
    "text",
    [
        'kind = "edge"\nmu = 2\ndim_y = 1\n[[coefficients]]\nj = 2\nalpha = [1]\ntaylor = [1.0]\n',
        CONE_HEADER + "[[coefficients]]\nj = 3\ntaylor = [1.0]\n",
        CONE_HEADER + "[[coefficients]]\nj = 2\ntaylor = [1.0, 0.0, 0.0, 1.0]\n",
        CONE_HEADER + "[[coefficients]]\nj = 2\nalpha = [1]\ntaylor = [1.0]\n",
        CONE_HEADER + "[[coefficients]]\nj = 2\ntaylor = [1.0]\n[[coefficients]]\nj = 2\ntaylor = [2.0]\n",
        'kind = "edge"\nmu = 2\n[[coefficients]]\nj = 2\ntaylor = [1.0]\n',
        'kind = "edge"\nmu = 2\ndim_y = 2\n[[coefficients]]\nj = 0\nalpha = [1]\ntaylor = [1.0]\n',
    ],
)
def test_invariant_violations(text):
    with pytest.raises(SpecInvariantError):
        parse_spec_text(text)


def test_invalid_toml_reports_line():
    with pytest.raises(SpecParseError) as info:
        parse_spec_text('kind = "cone"\nmu = = 2\n')
    assert info.value.line is not None


@pytest.mark.parametrize(
    "text, field",
    [
        (CONE_HEADER + 'color = "red"\n', "color"),
        (CONE_HEADER + "[[coefficients]]\nj = 2\nbeta = 1\ntaylor = [1.0]\n", "coefficients.0.beta"),
        ('kind = "wedge"\nmu = 2\n', "kind"),
        ('kind = "cone"\nmu = 0\n', "mu"),
    ],
)
def test_schema_violation_reports_field(text, field):
    with pytest.raises(SpecParseError) as info:
        parse_spec_text(text)
    assert info.value.field == field


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def cone_specs(draw):
    mu = draw(st.integers(min_value=1, max_value=3))
    indices = draw(st.lists(st.integers(min_value=0, max_value=mu), min_size=1, max_size=mu + 1, unique=True))
    records = [
        CoefficientRecord(j=j, taylor=draw(st.lists(st.tuples(finite, finite), min_size=1, max_size=mu + 1)))
        for j in indices
    ]
    return OperatorSpec(kind="cone", mu=mu, coefficients=records)


@settings(max_examples=50, deadline=None)
@given(spec=cone_specs())
def test_emit_parse_round_trip(spec):
    assert parse_spec_text(emit_spec(spec)) == spec
