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
Finite log-polynomial asymptotics ω(t) Σ c t^{-p} log^j t and the coordinate spaces E_S.

The cut-off ω is implicit: an AsymptoticElement only stores its terms, the cut-off is
applied when the element is evaluated.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from conelens.errors import NotInAsymptoticType

EXPONENT_TOL = 1e-9

Term = tuple[complex, int, complex]


def same_exponent(p: complex, q: complex, tol: float = EXPONENT_TOL) -> bool:
    return abs(p - q) <= tol * (1.0 + max(abs(p), abs(q)))


def exponent_order_key(p: complex) -> tuple[float, float]:
    """Grouped by imaginary part, decreasing real part inside a group."""
    return (round(p.imag, 9), -p.real)


def format_term(p: complex, j: int) -> str:
    power = -complex(p)
    if abs(power.imag) <= EXPONENT_TOL:
        value = power.real
        if abs(value) <= EXPONENT_TOL:
            head = "1"
        elif abs(value - 1.0) <= EXPONENT_TOL:
            head = "t"
        else:
            head = f"t^{value:g}"
    else:
        head = f"t^({power.real:g}{power.imag:+g}j)"

    if j == 0:
        return head
    log = "log t" if j == 1 else f"log^{j} t"
    return log if head == "1" else f"{head} {log}"


@dataclass(frozen=True)
class AsymptoticElement:
    """
    Finite sum of terms c·t^{-p}·log^j t, implicitly multiplied by the cut-off ω.

    Properties:
        terms: tuple of (p, j, c). No two terms share (p, j); exact zero coefficients are
            dropped on construction.

    Usage:
        ```python
        v = AsymptoticElement.monomial(0.0) + AsymptoticElement(((-1.0, 0, 1.0), (-1.0, 1, -1.0)))
        v.coefficient(-1.0, 1)   # -1
        ```
    """

    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        merged: list[list] = []
        for p, j, c in self.terms:
            p, j, c = complex(p), int(j), complex(c)
            if j < 0:
                raise ValueError(f"negative log power {j}")
            for entry in merged:
                if entry[1] == j and same_exponent(entry[0], p):
                    entry[2] += c
                    break
            else:
                merged.append([p, j, c])
        object.__setattr__(self, "terms", tuple((p, j, c) for p, j, c in merged if c != 0))

    @classmethod
    def zero(cls) -> "AsymptoticElement":
        return cls(())

    @classmethod
    def monomial(cls, p: complex, j: int = 0, c: complex = 1.0) -> "AsymptoticElement":
        return cls(((p, j, c),))

    def __add__(self, other: "AsymptoticElement") -> "AsymptoticElement":
        return AsymptoticElement(self.terms + other.terms)

    def __neg__(self) -> "AsymptoticElement":
        return AsymptoticElement(tuple((p, j, -c) for p, j, c in self.terms))

    def __sub__(self, other: "AsymptoticElement") -> "AsymptoticElement":
        return self + (-other)

    def __mul__(self, scalar: complex) -> "AsymptoticElement":
        return AsymptoticElement(tuple((p, j, scalar * c) for p, j, c in self.terms))

    __rmul__ = __mul__

    def shifted(self, ell: float) -> "AsymptoticElement":
        """Multiply by t^ell."""
        return AsymptoticElement(tuple((p - ell, j, c) for p, j, c in self.terms))

    def coefficient(self, p: complex, j: int) -> complex:
        for q, k, c in self.terms:
            if k == j and same_exponent(p, q):
                return c
        return 0j

    def exponents(self) -> list[complex]:
        found: list[complex] = []
        for p, _, _ in self.terms:
            if not any(same_exponent(p, q) for q in found):
                found.append(p)
        return sorted(found, key=exponent_order_key)

    @property
    def max_log(self) -> int:
        return max((j for _, j, _ in self.terms), default=-1)

    @property
    def scale(self) -> float:
        return max((abs(c) for _, _, c in self.terms), default=0.0)

    def is_zero(self, atol: float = 0.0) -> bool:
        return all(abs(c) <= atol for _, _, c in self.terms)

    def close_to(self, other: "AsymptoticElement", atol: float) -> bool:
        return (self - other).is_zero(atol)

    def sorted_terms(self) -> list[Term]:
        return sorted(self.terms, key=lambda t: (*exponent_order_key(t[0]), t[1]))

    def evaluate(self, t, cutoff: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        log_t = np.log(t)
        values = np.zeros(t.shape, dtype=complex)
        for p, j, c in self.terms:
            values += c * np.exp(-p * log_t) * log_t**j
        if cutoff is not None:
            values *= cutoff(t)
        return values

    def to_json(self) -> list:
        return [[[p.real, p.imag], j, [c.real, c.imag]] for p, j, c in self.sorted_terms()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"({c:.6g})·{format_term(p, j)}" for p, j, c in self.sorted_terms()]
        return "ω·[" + " + ".join(parts) + "]"


@dataclass(frozen=True)
class AsymptoticType:
    """
    Asymptotic type S = {(p, depth)} with the coordinates of E_S.

    Coordinates are ordered by exponent (imaginary part, then decreasing real part), then
    by ascending log power 0..depth.

    Methods:
        from_exponents(exponents, depth) -> AsymptoticType
        from_poles(poles, depth) -> AsymptoticType: exponents σ - ℓ, 0 <= ℓ <= μ_σ
        index(p, j) -> int
        vector(element) -> np.ndarray
        element(vector) -> AsymptoticElement
        legend() -> list[str]
    """

    exponents: tuple[complex, ...]
    depth: int

    @classmethod
    def from_exponents(cls, exponents: Iterable[complex], depth: int) -> "AsymptoticType":
        if depth < 0:
            raise ValueError(f"log depth must be non-negative, got {depth}")
        distinct: list[complex] = []
        for p in exponents:
            p = complex(p)
            if not any(same_exponent(p, q) for q in distinct):
                distinct.append(p)
        return cls(tuple(sorted(distinct, key=exponent_order_key)), depth)

    @classmethod
    def from_poles(cls, poles: Sequence, depth: int) -> "AsymptoticType":
        return cls.from_exponents((pd.sigma - ell for pd in poles for ell in range(pd.mu_sigma + 1)), depth)

    @property
    def coordinates(self) -> list[tuple[complex, int]]:
        return [(p, j) for p in self.exponents for j in range(self.depth + 1)]

    @property
    def dim(self) -> int:
        return len(self.exponents) * (self.depth + 1)

    def exponent_index(self, p: complex) -> Optional[int]:
        for i, q in enumerate(self.exponents):
            if same_exponent(p, q):
                return i
        return None

    def index(self, p: complex, j: int) -> int:
        i = self.exponent_index(p)
        if i is None or not 0 <= j <= self.depth:
            raise NotInAsymptoticType(f"term {format_term(p, j)} is not a coordinate of E_S")
        return i * (self.depth + 1) + j

    def vector(self, element: AsymptoticElement, atol: float = 0.0) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=complex)
        for p, j, c in element.terms:
            try:
                vec[self.index(p, j)] += c
            except NotInAsymptoticType:
                if abs(c) > atol:
                    raise
        return vec

    def element(self, vector: np.ndarray) -> AsymptoticElement:
        return AsymptoticElement(tuple((p, j, c) for (p, j), c in zip(self.coordinates, vector)))

    def legend(self) -> list[str]:
        return [format_term(p, j) for p, j in self.coordinates]
