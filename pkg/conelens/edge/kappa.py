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
The group action κ_λ u(t) = λ^{1/2} u(λt) on the coordinates of E_S.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from conelens.mellin.asymptotics import AsymptoticType


@dataclass(frozen=True, eq=False)
class KappaMatrix:
    """
    κ_λ on E_S: t^{-p} log^j t -> λ^{1/2-p} Σ_{i<=j} C(j, i)(log λ)^{j-i} t^{-p} log^i t.

    The cut-off is not transported: ω(λt) - ω(t) is smooth and compactly supported away
    from 0, so it belongs to the interior part and has no coordinates here.
    """

    lam: float
    S: AsymptoticType
    matrix: np.ndarray

    def inverse(self) -> "KappaMatrix":
        return kappa_matrix(1.0 / self.lam, self.S)

    def conjugate(self, block: np.ndarray) -> np.ndarray:
        """κ_λ · block · κ_λ^{-1}."""
        return self.matrix @ block @ self.inverse().matrix

    def __matmul__(self, other):
        if isinstance(other, KappaMatrix):
            return self.matrix @ other.matrix
        return self.matrix @ other


def kappa_matrix(lam: float, S: AsymptoticType) -> KappaMatrix:
    if lam <= 0:
        raise ValueError(f"λ must be positive, got {lam}")
    log_lam = np.log(lam)
    size = S.depth + 1
    matrix = np.zeros((S.dim, S.dim), dtype=complex)
    for block, p in enumerate(S.exponents):
        scale = np.exp((0.5 - p) * log_lam)
        offset = block * size
        for j in range(size):
            for i in range(j + 1):
                matrix[offset + i, offset + j] = scale * comb(j, i, exact=True) * log_lam ** (j - i)
    return KappaMatrix(float(lam), S, matrix)
