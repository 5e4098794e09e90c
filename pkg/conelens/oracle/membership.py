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
Membership near t = 0 in the weighted spaces K^{s,γ}: t^{-γ}(t∂_t)^i(ωv) ∈ L², i <= s.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.integrate import simpson

from conelens.constants import MembershipCriterion
from conelens.mellin.asymptotics import AsymptoticElement, format_term
from conelens.utils.structure import Tolerances

from .cutoff import CutoffPair
from .mellin import SampledFunction, log_derivatives

MIN_SHELLS = 4
MIN_SHELL_POINTS = 5


@dataclass(frozen=True)
class MembershipResult:
    """
    Properties:
        passed: bool
        criterion: MembershipCriterion, exact for asymptotic elements, shell for samples
        diagnostic: str
        slope: fitted log2 decay rate of the shell integrals, None for the exact criterion
        offending: terms (p, j, c) violating Re p < 1/2 - γ
    """

    passed: bool
    criterion: MembershipCriterion
    diagnostic: str
    slope: Optional[float] = None
    offending: tuple = ()

    def __bool__(self) -> bool:
        return self.passed


def _exact(v: AsymptoticElement, gamma: float, atol: float) -> MembershipResult:
    bound = 0.5 - gamma
    offending = tuple(term for term in v.sorted_terms() if abs(term[2]) > atol and term[0].real >= bound)
    if not offending:
        return MembershipResult(True, MembershipCriterion.EXACT, f"all exponents satisfy Re p < {bound:g}")
    names = ", ".join(format_term(p, j) for p, j, _ in offending)
    return MembershipResult(
        False, MembershipCriterion.EXACT, f"terms not square integrable near 0 with Re p >= {bound:g}: {names}", offending=offending
    )


def shell_integrals(u: SampledFunction, s: int, gamma: float, cut: CutoffPair = CutoffPair()) -> list[float]:
    """Σ_{i<=s} ∫ |t^{-γ}(t∂_t)^i(ωu)|² dt over the dyadic shells [2^{-k-1}, 2^{-k}], k = 1, 2, ..."""
    values = u(u.grid) if u.is_closed_form else u.values
    derivatives = log_derivatives(u.grid, values * cut.omega(u.grid), s)
    weight = u.grid ** (1.0 - 2.0 * gamma)
    log_grid = np.log(u.grid)

    integrals = []
    k = 1
    while 2.0 ** (-k - 1) >= u.grid[0]:
        inside = (u.grid >= 2.0 ** (-k - 1)) & (u.grid <= 2.0 ** (-k))
        if np.count_nonzero(inside) < MIN_SHELL_POINTS:
            break
        total = sum(float(simpson(np.abs(d[inside]) ** 2 * weight[inside], x=log_grid[inside])) for d in derivatives)
        integrals.append(total)
        k += 1
    return integrals


def membership_check(
    v: Union[AsymptoticElement, SampledFunction],
    s: int,
    gamma: float,
    cut: CutoffPair = CutoffPair(),
    tolerances: Tolerances = Tolerances(),
    atol: float = 0.0,
) -> MembershipResult:
    """
    Check t^{-γ}(t∂_t)^i(ωv) ∈ L²(R_+), i = 0..s.

    An AsymptoticElement passes iff every term with |c| > atol has Re p < 1/2 - γ. A
    SampledFunction passes iff its dyadic shell integrals decay geometrically: the slope of
    log2 I_k against k must be below -slope_margin.
    """
    if s < 0:
        raise ValueError(f"s must be a non-negative integer, got {s}")
    if isinstance(v, AsymptoticElement):
        return _exact(v, gamma, atol)

    integrals = np.array(shell_integrals(v, s, gamma, cut))
    if len(integrals) < MIN_SHELLS:
        return MembershipResult(False, MembershipCriterion.SHELL, f"only {len(integrals)} dyadic shells on the sample grid")
    if np.all(integrals[-MIN_SHELLS:] == 0):
        return MembershipResult(True, MembershipCriterion.SHELL, "function vanishes near 0", slope=-np.inf)

    positive = integrals > 0
    shells = np.arange(1, len(integrals) + 1)[positive]
    slope = float(np.polyfit(shells, np.log2(integrals[positive]), 1)[0])
    passed = slope < -tolerances.slope_margin
    return MembershipResult(
        passed,
        MembershipCriterion.SHELL,
        f"shell integrals decay like 2^({slope:.3g} k) over {len(integrals)} shells",
        slope=slope,
    )
