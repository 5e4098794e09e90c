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
Test functions with prescribed Mellin jets, and the formal action of a cone operator on
log-polynomial asymptotics.
"""

from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from conelens.cone.operator import ConeOperator, conormal_symbols
from conelens.errors import IllConditionedJetSystem
from conelens.mellin.asymptotics import AsymptoticElement

from .cutoff import CutoffPair
from .mellin import SampledFunction, mellin_jet

MAX_CONDITION = 1e12

# bump center t_c = ε e^{-2.5}, bump support |log(t/t_c)| < 2
BUMP_OFFSET = 2.5
BUMP_HALF_WIDTH = 2.0


def _bump(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < BUMP_HALF_WIDTH
    out[inside] = np.exp(-1.0 / (1.0 - (s[inside] / BUMP_HALF_WIDTH) ** 2))
    return out


def _dictionary_element(center: float, m: int):
    def element(t):
        s = np.log(np.asarray(t, dtype=float) / center)
        return _bump(s) * s**m

    return element


def jet_function(
    targets: Sequence[tuple[complex, int]],
    values: Sequence[complex],
    eps: float = 0.5,
    cut: CutoffPair = CutoffPair(),
) -> SampledFunction:
    """
    A smooth u supported in (0, ε) with û^{(i)}(σ_0)/i! = values[i] for i <= n_0 and a zero of
    order n_k of û at σ_k for k >= 1.

    u is a combination of the dictionary β(s)s^m, s = log(t/t_c), chosen by solving the square
    linear system of all jet conditions.

    Args:
        targets: [(σ_0, n_0), (σ_1, n_1), ...], the σ_k pairwise distinct
        values: n_0 + 1 jet values at σ_0
        eps: right end of the support, at most 1

    Raises:
        IllConditionedJetSystem: condition number of the system above 1e12.
    """
    if not 0 < eps <= 1:
        raise ValueError(f"support bound must lie in (0, 1], got {eps}")
    if not targets:
        raise ValueError("at least one jet target is required")
    sigma0, n0 = targets[0]
    if len(values) != n0 + 1:
        raise ValueError(f"expected {n0 + 1} jet values at σ_0, got {len(values)}")
    sigmas = [complex(s) for s, _ in targets]
    if len({(round(s.real, 9), round(s.imag, 9)) for s in sigmas}) != len(sigmas):
        raise ValueError("jet targets must be pairwise distinct")

    conditions = [(complex(sigma0), n0 + 1)] + [(complex(s), n) for s, n in targets[1:] if n > 0]
    size = sum(count for _, count in conditions)
    center = eps * np.exp(-BUMP_OFFSET)
    support = (center * np.exp(-BUMP_HALF_WIDTH), center * np.exp(BUMP_HALF_WIDTH))

    dictionary = [
        SampledFunction.from_callable(_dictionary_element(center, m), support=support, label=f"bump·s^{m}")
        for m in range(size)
    ]
    system = np.zeros((size, size), dtype=complex)
    for col, phi in enumerate(dictionary):
        rows = [mellin_jet(phi, sigma, count - 1, cut) for sigma, count in conditions]
        system[:, col] = np.concatenate(rows)

    condition = float(np.linalg.cond(system))
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise IllConditionedJetSystem(f"jet system of size {size} has condition number {condition:.3g}", condition)

    rhs = np.zeros(size, dtype=complex)
    rhs[: n0 + 1] = values
    weights = np.linalg.solve(system, rhs)
    elements = [_dictionary_element(center, m) for m in range(size)]

    def closed_form(t):
        return sum(w * e(t) for w, e in zip(weights, elements))

    label = f"jet(σ={complex(sigma0):.3g}, n={n0})"
    return SampledFunction.from_callable(closed_form, support=support, label=label)


@dataclass(frozen=True)
class JetImage:
    """
    A(ωv) split into its asymptotic part near t = 0 and the part produced by derivatives of
    the cut-off, which is supported in remainder_support and never contributes asymptotics.
    """

    element: AsymptoticElement
    remainder_support: tuple[float, float] = (0.5, 1.0)

    def singular_terms(self, threshold: float = 0.5) -> list[tuple[complex, int, complex]]:
        """Terms with Re p >= threshold, which fail to be L² near 0."""
        return [term for term in self.element.sorted_terms() if term[0].real >= threshold]

    def cancellation_residual(self, scale: float, threshold: float = 0.5) -> float:
        largest = max((abs(c) for _, _, c in self.singular_terms(threshold)), default=0.0)
        return largest / scale if scale > 0 else largest


def apply_cone_jet(op: ConeOperator, v: AsymptoticElement, cut: CutoffPair = CutoffPair()) -> JetImage:
    """
    t^{-μ} Σ_{k<=μ} t^k f_k(-t∂_t) applied termwise to v.

    On a single term, f(-t∂_t)(t^{-p} log^j t) = Σ_m f^{(m)}(p)/m! (-1)^m j!/(j-m)! t^{-p} log^{j-m} t,
    and the factor t^{k-μ} moves the exponent from p to p + μ - k.
    """
    symbols = conormal_symbols(op)
    terms = []
    for k, f in enumerate(symbols):
        if f.is_zero:
            continue
        for p, j, c in v.terms:
            for m in range(min(j, f.degree) + 1):
                value = f.derivative(m)(p) / factorial(m)
                if value == 0:
                    continue
                coefficient = c * value * (-1) ** m * factorial(j) / factorial(j - m)
                terms.append((p + op.mu - k, j - m, coefficient))
    return JetImage(AsymptoticElement(tuple(terms)), (cut.flat_until, cut.support))
