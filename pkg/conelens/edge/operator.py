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
Edge operators t^{-μ} Σ_{j+|α|<=μ} a_{jα}(t)(-t∂_t)^j (tD_y)^α with y-independent
coefficients, and their η-dependent conormal symbols.
"""

from dataclasses import dataclass
from math import prod
from typing import Mapping, Sequence

import numpy as np

from conelens.cone.operator import ConeOperator
from conelens.errors import SpecInvariantError
from conelens.mellin.algebra import ComplexPolynomial

UNIT_SLACK = 1e-12

Index = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class EtaSample:
    """
    A covariable η with |η| >= 1, where the smoothed norm [η] equals |η|.
    """

    eta: tuple[float, ...]

    def __post_init__(self):
        eta = tuple(float(e) for e in self.eta)
        # unit rays may come out a rounding error short of 1
        if np.linalg.norm(eta) < 1.0 - UNIT_SLACK:
            raise ValueError(f"η samples must satisfy |η| >= 1, got |η| = {np.linalg.norm(eta):.6g}")
        object.__setattr__(self, "eta", eta)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.eta))

    @property
    def bracket(self) -> float:
        return self.norm

    @property
    def q(self) -> int:
        return len(self.eta)

    def scaled(self, lam: float) -> "EtaSample":
        return EtaSample(tuple(lam * e for e in self.eta))

    def power(self, alpha: Sequence[int]) -> float:
        return float(prod(e**a for e, a in zip(self.eta, alpha)))


@dataclass(frozen=True, eq=False)
class EdgeOperator:
    """
    Properties:
        mu: int, order μ >= 1
        q: int, dimension of the edge variable y
        coefficients: (j, α) -> Taylor coefficients a_{jα}^{(0..μ)} at t = 0, as an array of
            length μ+1. Missing pairs are zero.

    Usage:
        ```python
        # 1 - Δ on the half-space, q = 2
        op = EdgeOperator.from_coefficients(2, 2, {
            (2, (0, 0)): [1], (1, (0, 0)): [1], (0, (2, 0)): [1], (0, (0, 2)): [1],
            (0, (0, 0)): [0, 0, 1],
        })
        ```
    """

    mu: int
    q: int
    coefficients: Mapping[Index, np.ndarray]

    def __post_init__(self):
        if self.mu < 1:
            raise SpecInvariantError(f"operator order must be positive, got {self.mu}")
        if self.q < 1:
            raise SpecInvariantError(f"edge dimension must be positive, got {self.q}")
        table = {}
        for (j, alpha), series in self.coefficients.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.q or any(a < 0 for a in alpha):
                raise SpecInvariantError(f"multi-index {alpha} is not a non-negative {self.q}-tuple")
            if j < 0 or j + sum(alpha) > self.mu:
                raise SpecInvariantError(f"j + |α| = {j + sum(alpha)} exceeds μ = {self.mu} for (j={j}, α={alpha})")
            series = np.asarray(series, dtype=complex)
            if len(series) > self.mu + 1:
                raise SpecInvariantError(f"a_({j},{alpha}) has {len(series)} Taylor coefficients, at most {self.mu + 1} allowed")
            padded = np.zeros(self.mu + 1, dtype=complex)
            padded[: len(series)] = series
            padded.setflags(write=False)
            table[(int(j), alpha)] = padded
        object.__setattr__(self, "coefficients", table)
        if self.f0.is_zero:
            raise SpecInvariantError("principal conormal symbol f_0 is the zero polynomial")

    @classmethod
    def from_coefficients(cls, mu: int, q: int, coefficients: Mapping[Index, Sequence[complex]]) -> "EdgeOperator":
        return cls(mu, q, dict(coefficients))

    @property
    def zero_index(self) -> tuple[int, ...]:
        return (0,) * self.q

    @property
    def f0(self) -> ComplexPolynomial:
        coeffs = np.zeros(self.mu + 1, dtype=complex)
        for (j, alpha), series in self.coefficients.items():
            if alpha == self.zero_index:
                coeffs[j] += series[0]
        return ComplexPolynomial(tuple(coeffs))

    def cone_part(self) -> ConeOperator:
        """The model cone operator of the α = 0 coefficients."""
        table = np.zeros((self.mu + 1, self.mu + 1), dtype=complex)
        for (j, alpha), series in self.coefficients.items():
            if alpha == self.zero_index:
                table[j] = series
        return ConeOperator(self.mu, table)

    @property
    def is_cone_only(self) -> bool:
        return all(alpha == self.zero_index for _, alpha in self.coefficients)


def _symbols(op: EdgeOperator, eta: EtaSample, weight: float, frozen: bool) -> list[ComplexPolynomial]:
    symbols = []
    for ell in range(op.mu + 1):
        coeffs = np.zeros(op.mu + 1, dtype=complex)
        for (j, alpha), series in op.coefficients.items():
            k = ell - sum(alpha)
            if k < 0 or (frozen and k != 0):
                continue
            coeffs[j] += series[k] * eta.power(alpha)
        symbols.append(ComplexPolynomial(tuple(weight ** (op.mu - ell) * coeffs)))
    return symbols


def edge_conormal(op: EdgeOperator, eta: EtaSample) -> list[ComplexPolynomial]:
    """f̃_ℓ(z, η) = [η]^{μ-ℓ} Σ_{k+|α|=ℓ} Σ_j a_{jα}^{(k)} η^α z^j, ℓ = 0..μ."""
    return _symbols(op, eta, eta.bracket, frozen=False)


def principal_edge_conormal(op: EdgeOperator, eta: EtaSample) -> list[ComplexPolynomial]:
    """f̄_ℓ(z, η) = |η|^{μ-ℓ} Σ_{|α|=ℓ} Σ_j a_{jα}^{(0)} η^α z^j, ℓ = 0..μ."""
    return _symbols(op, eta, eta.norm, frozen=True)
