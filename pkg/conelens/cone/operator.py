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
Cone operators t^{-μ} Σ_j a_j(t) (-t∂_t)^j on the half-axis and their conormal symbols.
"""

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from conelens.errors import SpecInvariantError
from conelens.mellin.algebra import ComplexPolynomial


@dataclass(frozen=True, eq=False)
class ConeOperator:
    """
    Properties:
        mu: int, order μ >= 1
        taylor: np.ndarray of shape (μ+1, μ+1), taylor[j, k] = a_j^{(k)}, the k-th Taylor
            coefficient of a_j at t = 0 (a_j^{(k)} = a_j^{(k)}(0)/k!).

    Usage:
        ```python
        # 1 - ∂_t² written as t^{-2}(t² + (-t∂_t) + (-t∂_t)²)
        op = ConeOperator.from_coefficients(2, {0: [0, 0, 1], 1: [1], 2: [1]})
        ```
    """

    mu: int
    taylor: np.ndarray

    def __post_init__(self):
        if self.mu < 1:
            raise SpecInvariantError(f"operator order must be positive, got {self.mu}")
        taylor = np.asarray(self.taylor, dtype=complex)
        if taylor.shape != (self.mu + 1, self.mu + 1):
            raise SpecInvariantError(f"Taylor table must have shape {(self.mu + 1,) * 2}, got {taylor.shape}")
        if not np.any(taylor[:, 0]):
            raise SpecInvariantError("principal conormal symbol f_0 is the zero polynomial")
        taylor.setflags(write=False)
        object.__setattr__(self, "taylor", taylor)

    @classmethod
    def from_coefficients(cls, mu: int, coefficients: Mapping[int, Sequence[complex]]) -> "ConeOperator":
        """
        Args:
            mu: operator order
            coefficients: j -> [a_j^{(0)}, a_j^{(1)}, ...], missing entries are zero

        Raises:
            SpecInvariantError: j outside 0..μ or more than μ+1 Taylor coefficients.
        """
        table = np.zeros((mu + 1, mu + 1), dtype=complex)
        for j, series in coefficients.items():
            if not 0 <= j <= mu:
                raise SpecInvariantError(f"coefficient index j={j} outside 0..{mu}")
            if len(series) > mu + 1:
                raise SpecInvariantError(f"a_{j} has {len(series)} Taylor coefficients, at most {mu + 1} allowed")
            table[j, : len(series)] = series
        return cls(mu, table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeOperator):
            return NotImplemented
        return self.mu == other.mu and np.array_equal(self.taylor, other.taylor)

    def __hash__(self) -> int:
        return hash((self.mu, self.taylor.tobytes()))


def conormal_symbols(op: ConeOperator) -> list[ComplexPolynomial]:
    """f_ℓ(z) = Σ_j a_j^{(ℓ)} z^j for ℓ = 0..μ."""
    return [ComplexPolynomial(tuple(op.taylor[:, ell])) for ell in range(op.mu + 1)]
