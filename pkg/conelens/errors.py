#!/usr/bin/env python3
# -*- coding: utf-8 -*-

#
# Copyright (c) 2024 Lanzhou University
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""
Exceptions raised by conelens.

All of them derive from ConelensError, which is a ValueError, so callers that only
care about bad input can keep catching ValueError.
"""

from typing import Optional


class ConelensError(ValueError):
    """Base class of every error raised by the package."""


class DegenerateCluster(ConelensError):
    """Two root clusters are closer than 2·τ_cluster but cannot be merged consistently."""


class DivisionByZeroFunction(ConelensError, ZeroDivisionError):
    """Inverting the zero rational function."""


class ExpansionUnstable(ConelensError):
    """
    Pole order detected by root clustering disagrees with the order implied by the
    coefficient magnitudes of the shifted numerator and denominator.
    """

    def __init__(self, message: str, cluster_order: int, coefficient_order: int):
        super().__init__(message)
        self.cluster_order = cluster_order
        self.coefficient_order = coefficient_order


class WeightLineCollision(ConelensError):
    """A pole of f0^-1 sits on (or within τ_line of) one of the weight lines."""

    def __init__(self, message: str, sigma: complex, line: float):
        super().__init__(message)
        self.sigma = sigma
        self.line = line


class SingularB(ConelensError):
    """The matrix B_σ is numerically singular."""


class NotInHatBasis(ConelensError):
    """Element has terms outside the span of the leading basis at σ."""


class NotInAsymptoticType(ConelensError):
    """Element has terms outside the coordinates of the asymptotic type."""


class QuadratureDivergence(ConelensError):
    """Mellin integrand not integrable at t = 0 for the requested z."""


class FitResidualTooLarge(ConelensError):
    """Contour values do not fit the closed-form log-polynomial structure."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class IllConditionedJetSystem(ConelensError):
    """The jet dictionary system has condition number above the limit."""

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


class SlopeRegressionFailure(ConelensError):
    """Classicality regression slope above the admissible bound."""

    def __init__(self, message: str, slope: float, bound: float):
        super().__init__(message)
        self.slope = slope
        self.bound = bound


class SpecParseError(ConelensError):
    """Malformed operator spec file."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        super().__init__(message)
        self.line = line
        self.field = field


class SpecInvariantError(ConelensError):
    """Well-formed spec that violates an operator invariant (e.g. j + |α| > μ)."""


class CommandKindMismatch(ConelensError):
    """The command cannot run on the kind of the given spec."""
