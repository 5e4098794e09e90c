#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Shared fixtures: the packaged operator specs and seeded random cone operators.
"""

import io

import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly
from rich.console import Console

from conelens.cone import ConeOperator
from conelens.models import load_spec, to_operator
from conelens.pipeline.stages import resolve_spec_path

# minimal distance of roots to each other's integer translates and to the weight lines
ROOT_SEPARATION = 0.1


def fixture_operator(name: str):
    return to_operator(load_spec(resolve_spec_path(name)))


def random_cone_operator(seed: int) -> ConeOperator:
    """
    μ in 1..4, f_0 monic of degree μ with simple roots in the strip neighbourhood, no two
    roots differing by an integer and none close to Re z = 1/2 - μ or Re z = 1/2.
    """
    rng = np.random.default_rng(seed)
    mu = int(rng.integers(1, 5))
    roots: list[complex] = []
    while len(roots) < mu:
        candidate = complex(rng.uniform(-mu, 1.0), rng.uniform(-0.5, 0.5))
        if min(abs(candidate.real - line) for line in (0.5 - mu, 0.5)) < ROOT_SEPARATION:
            continue
        resonant = False
        for other in roots:
            difference = candidate - other
            if abs(difference.imag) < ROOT_SEPARATION and abs(difference.real - round(difference.real)) < ROOT_SEPARATION:
                resonant = True
        if not resonant:
            roots.append(candidate)

    taylor = np.zeros((mu + 1, mu + 1), dtype=complex)
    taylor[:, 0] = npoly.polyfromroots(roots)
    taylor[:, 1:] = rng.normal(size=(mu + 1, mu)) + 1j * rng.normal(size=(mu + 1, mu))
    return ConeOperator(mu, taylor)


RANDOM_SEEDS = list(range(20))


@pytest.fixture
def quiet_console() -> Console:
    return Console(file=io.StringIO(), width=200)


@pytest.fixture(params=["fix-a", "fix-b", "fix-c"])
def cone_fixture(request) -> ConeOperator:
    return fixture_operator(request.param)
