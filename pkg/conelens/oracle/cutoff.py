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
Smooth cut-off functions near t = 0.
"""

from dataclasses import dataclass

import numpy as np

from conelens.constants import CutoffName


def _flat(x: np.ndarray) -> np.ndarray:
    """exp(-1/x) for x > 0, 0 otherwise."""
    out = np.zeros_like(x)
    positive = x > 0
    out[positive] = np.exp(-1.0 / x[positive])
    return out


def exp_bridge(t) -> np.ndarray:
    """
    C^∞ function equal to 1 on [0, 1/2] and 0 on [1, ∞).

    On [1/2, 1] with s = 2(t - 1/2): h(1 - s) / (h(1 - s) + h(s)), h(x) = exp(-1/x).
    """
    t = np.asarray(t, dtype=float)
    s = 2.0 * (t - 0.5)
    left, right = _flat(1.0 - s), _flat(s)
    return left / (left + right)


@dataclass(frozen=True)
class CutoffPair:
    """
    The cut-offs ω (1 on [0, 1/2], 0 on [1, ∞)) and ω₀(t) = ω(t/2) (1 on [0, 1], 0 on [2, ∞)).
    ω₀ ≡ 1 on the support of ω.

    Properties:
        name: CutoffName
        support: float, right end of supp ω
    """

    name: CutoffName = CutoffName.EXP_BRIDGE

    @property
    def support(self) -> float:
        return 1.0

    @property
    def flat_until(self) -> float:
        return 0.5

    def omega(self, t) -> np.ndarray:
        if self.name != CutoffName.EXP_BRIDGE:
            raise ValueError(f"Unknown cut-off: {self.name}")
        return exp_bridge(t)

    def omega0(self, t) -> np.ndarray:
        return self.omega(np.asarray(t, dtype=float) / 2.0)

    def __call__(self, t) -> np.ndarray:
        return self.omega(t)
