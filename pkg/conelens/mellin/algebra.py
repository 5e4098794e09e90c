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
Arithmetic of complex polynomials and rational functions in one variable.

Everything is double precision. Rational functions are kept unreduced, common roots of
numerator and denominator are only cancelled inside laurent_at, where the true pole
order at a point has to be known.

Usage:
    ```python
    f0 = ComplexPolynomial((0, 1, 1))                   # z^2 + z
    inv = rf_arith(RationalFunction.of(f0), op=ArithOp.INVERT)
    laurent_at(inv, 0.0, kmax=1).coeffs                  # (1, -1, 1) for k = -1, 0, 1
    ```
"""

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as npoly

from conelens.constants import ArithOp
from conelens.errors import DegenerateCluster, DivisionByZeroFunction, ExpansionUnstable

# relative level under which a trailing arithmetic coefficient is cancellation noise
ARITH_NOISE = 1e-13

DEFAULT_CLUSTER = 1e-8
DEFAULT_ZERO = 1e-10

# accepted size of the Taylor coefficients p^(k)(c)/k!, k < m, at an m-fold cluster
MULTIPLICITY_TOL = 1e-7

Scalar = Union[int, float, complex]


@dataclass(frozen=True)
class ComplexPolynomial:
    """
    Polynomial c_0 + c_1 z + ... + c_n z^n with complex coefficients.

    Properties:
        coeffs: tuple[complex, ...], index is the power of z. Trailing zeros are stripped,
            the zero polynomial is the empty tuple.
        degree: int, -1 for the zero polynomial.
        norm: float, max |c_k|.

    Methods:
        shift(rho) -> ComplexPolynomial: p(z + rho)
        derivative(m) -> ComplexPolynomial
        taylor_at(center) -> np.ndarray: coefficients of p(center + w) in w
    """

    coeffs: tuple[complex, ...] = ()

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def constant(cls, value: Scalar) -> "ComplexPolynomial":
        return cls((value,))

    @classmethod
    def from_roots(cls, roots: Sequence[Scalar], lead: Scalar = 1.0) -> "ComplexPolynomial":
        if len(roots) == 0:
            return cls.constant(lead)
        return cls(tuple(lead * npoly.polyfromroots(np.asarray(roots, dtype=complex))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def norm(self) -> float:
        if self.is_zero:
            return 0.0
        return float(np.max(np.abs(self.array)))

    @property
    def array(self) -> np.ndarray:
        if self.is_zero:
            return np.zeros(1, dtype=complex)
        return np.asarray(self.coeffs, dtype=complex)

    def __call__(self, z):
        if self.is_zero:
            return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0j
        return npoly.polyval(z, self.array)

    def __neg__(self) -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "ComplexPolynomial":
        other = as_polynomial(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        return _cleaned(npoly.polyadd(self.array, other.array), max(self.norm, other.norm))

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexPolynomial":
        return self + (-as_polynomial(other))

    def __rsub__(self, other) -> "ComplexPolynomial":
        return as_polynomial(other) - self

    def __mul__(self, other) -> "ComplexPolynomial":
        other = as_polynomial(other)
        if self.is_zero or other.is_zero:
            return ComplexPolynomial()
        scale = self.norm * other.norm * (min(self.degree, other.degree) + 1)
        return _cleaned(npoly.polymul(self.array, other.array), scale)

    __rmul__ = __mul__

    def shift(self, rho: Scalar) -> "ComplexPolynomial":
        if rho == 0 or self.degree < 1:
            return self
        composed = Polynomial(self.array)(Polynomial([complex(rho), 1.0]))
        return ComplexPolynomial(tuple(composed.coef))

    def derivative(self, m: int = 1) -> "ComplexPolynomial":
        if self.degree < m:
            return ComplexPolynomial()
        return ComplexPolynomial(tuple(npoly.polyder(self.array, m)))

    def taylor_at(self, center: Scalar) -> np.ndarray:
        return self.shift(center).array

    def allclose(self, other: "ComplexPolynomial", rtol: float = 1e-12) -> bool:
        if self.degree != other.degree:
            return False
        if self.is_zero:
            return True
        scale = max(self.norm, other.norm)
        return bool(np.all(np.abs(self.array - other.array) <= rtol * scale))


def as_polynomial(value) -> ComplexPolynomial:
    if isinstance(value, ComplexPolynomial):
        return value
    return ComplexPolynomial.constant(value)


def _cleaned(coeffs: np.ndarray, scale: float) -> ComplexPolynomial:
    coeffs = list(coeffs)
    while coeffs and abs(coeffs[-1]) <= ARITH_NOISE * scale:
        coeffs.pop()
    return ComplexPolynomial(tuple(coeffs))


@dataclass(frozen=True)
class RationalFunction:
    """
    Ratio num / den of complex polynomials. The representation is not canonical, only
    evaluation and Laurent data are meaningful.
    """

    num: ComplexPolynomial
    den: ComplexPolynomial = ComplexPolynomial((1.0,))

    def __post_init__(self):
        if self.den.is_zero:
            raise DivisionByZeroFunction("denominator of a rational function is the zero polynomial")

    @classmethod
    def of(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        return cls(as_polynomial(value))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __call__(self, z):
        return self.num(z) / self.den(z)


@dataclass(frozen=True)
class PoleSite:
    """
    A clustered root (or pole) location.

    Properties:
        location: complex, arithmetic mean of the cluster members.
        order: int, number of members, i.e. the multiplicity.
    """

    location: complex
    order: int


@dataclass(frozen=True)
class LaurentExpansion:
    """
    Truncated Laurent series sum_{k=kmin}^{kmax} c_k (z - center)^k.

    Properties:
        center: complex
        kmin: int, negative of the pole order when there is a pole, 0 otherwise.
        coeffs: tuple[complex, ...], c_kmin ... c_kmax.
        kmax: int
        pole_order: int
    """

    center: complex
    kmin: int
    coeffs: tuple[complex, ...]

    @property
    def kmax(self) -> int:
        return self.kmin + len(self.coeffs) - 1

    @property
    def pole_order(self) -> int:
        return max(-self.kmin, 0)

    def coefficient(self, k: int) -> complex:
        """Coefficient of (z - center)^k; zero below kmin, IndexError above kmax."""
        if k < self.kmin:
            return 0j
        if k > self.kmax:
            raise IndexError(f"coefficient {k} beyond kmax={self.kmax}")
        return self.coeffs[k - self.kmin]

    def as_dict(self) -> dict[int, complex]:
        return {self.kmin + i: c for i, c in enumerate(self.coeffs)}

    def __call__(self, z):
        w = np.asarray(z, dtype=complex) - self.center
        return sum(c * w**k for k, c in self.as_dict().items())


def _single_linkage(points: np.ndarray, radius: float) -> list[list[int]]:
    parent = list(range(len(points)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(points)), 2):
        if abs(points[i] - points[j]) <= radius:
            parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(len(points)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _is_multiple_root(p: ComplexPolynomial, center: complex, multiplicity: int) -> bool:
    taylor = p.taylor_at(center)
    bound = MULTIPLICITY_TOL * p.norm * (1.0 + abs(center)) ** max(p.degree, 0)
    return bool(np.all(np.abs(taylor[:multiplicity]) <= bound))


def _spread_bound(size: int, radius_scale: float) -> float:
    return 10.0 * np.finfo(float).eps ** (1.0 / size) * radius_scale


def _merge_multiplicities(p: ComplexPolynomial, clusters: list[list[complex]], radius_scale: float):
    # an m-fold root comes back from the companion matrix spread by ~eps^(1/m), so the
    # neighbours of a cluster are searched within the spread of a degree-fold root
    reach = _spread_bound(max(p.degree, 1), radius_scale)
    while len(clusters) > 1:
        means = [complex(np.mean(c)) for c in clusters]
        best: Optional[list[int]] = None
        best_size = 0
        for i in range(len(clusters)):
            neighbours = sorted(
                (abs(means[j] - means[i]), j) for j in range(len(clusters)) if j != i
            )
            group, merged = [i], list(clusters[i])
            for gap, j in neighbours:
                if gap > reach:
                    break
                group.append(j)
                merged += clusters[j]
                center = complex(np.mean(merged))
                spread = max(abs(z - center) for z in merged)
                if (
                    len(merged) > best_size
                    and spread <= _spread_bound(len(merged), radius_scale)
                    and _is_multiple_root(p, center, len(merged))
                ):
                    best, best_size = list(group), len(merged)

        if best is None:
            return clusters
        merged = [z for k in best for z in clusters[k]]
        clusters = [c for k, c in enumerate(clusters) if k not in best] + [merged]
    return clusters


def _snap(value: complex, atol: float) -> complex:
    real = 0.0 if abs(value.real) <= atol else value.real
    imag = 0.0 if abs(value.imag) <= atol else value.imag
    return complex(real, imag)


def poly_roots(
    p: ComplexPolynomial,
    tau_cluster: Optional[float] = None,
    rel_cluster: float = DEFAULT_CLUSTER,
) -> list[PoleSite]:
    """
    Roots of p grouped into clusters with multiplicities.

    Companion-matrix roots are linked when closer than 2·τ_cluster; each link group must
    pass the multiple-root test. Neighbouring groups are then merged into the largest group
    whose spread stays within the eps^(1/m) spread of an m-fold root and whose mean passes
    the test.

    Args:
        p: polynomial of degree >= 1
        tau_cluster: absolute clustering tolerance, default rel_cluster·(1 + max|root|)
        rel_cluster: relative clustering tolerance used when tau_cluster is None

    Returns:
        list[PoleSite], sorted by decreasing real part, then decreasing imaginary part.

    Raises:
        DegenerateCluster: a link group is not a consistent multiple root.
    """
    if p.degree < 1:
        raise ValueError(f"poly_roots needs degree >= 1, got {p.degree}")

    raw = np.asarray(npoly.polyroots(p.array), dtype=complex)
    radius_scale = 1.0 + float(np.max(np.abs(raw)))
    tau = rel_cluster * radius_scale if tau_cluster is None else tau_cluster

    clusters = []
    for group in _single_linkage(raw, 2.0 * tau):
        members = [complex(raw[i]) for i in group]
        center = complex(np.mean(members))
        if len(members) > 1 and not _is_multiple_root(p, center, len(members)):
            raise DegenerateCluster(
                f"{len(members)} roots within {2.0 * tau:.3g} of {center:.6g} do not form a multiple root"
            )
        clusters.append(members)

    clusters = _merge_multiplicities(p, clusters, radius_scale)

    snap_tol = 64.0 * np.finfo(float).eps * radius_scale
    sites = [PoleSite(_snap(complex(np.mean(c)), snap_tol), len(c)) for c in clusters]
    return sorted(sites, key=lambda s: (-round(s.location.real, 9), -round(s.location.imag, 9)))


def root_multiplicity(p: ComplexPolynomial, z: complex, rel_cluster: float = DEFAULT_CLUSTER) -> int:
    """Multiplicity of z as a root of p, read off the clustered roots."""
    if p.degree < 1:
        return 0
    sites = poly_roots(p, rel_cluster=rel_cluster)
    tau = rel_cluster * (1.0 + max(abs(s.location) for s in sites))
    return sum(s.order for s in sites if abs(s.location - z) <= 2.0 * tau)


def rf_shift(f: RationalFunction, rho: float) -> RationalFunction:
    """(T^rho f)(z) = f(z + rho)."""
    return RationalFunction(f.num.shift(rho), f.den.shift(rho))


def rf_arith(a: RationalFunction, b: Optional[RationalFunction] = None, op: ArithOp = ArithOp.ADD) -> RationalFunction:
    """
    Field operations on unreduced numerator/denominator pairs.

    Args:
        a: first operand
        b: second operand, required for ADD and MUL
        op: ArithOp

    Returns:
        RationalFunction

    Raises:
        DivisionByZeroFunction: INVERT of the zero function.
    """
    a = RationalFunction.of(a)
    if op == ArithOp.NEG:
        return RationalFunction(-a.num, a.den)
    if op == ArithOp.INVERT:
        if a.is_zero:
            raise DivisionByZeroFunction("cannot invert the zero function")
        return RationalFunction(a.den, a.num)

    if b is None:
        raise ValueError(f"{op} needs two operands")
    b = RationalFunction.of(b)

    if op == ArithOp.MUL:
        return RationalFunction(a.num * b.num, a.den * b.den)
    if op == ArithOp.ADD:
        if a.den.allclose(b.den):
            return RationalFunction(a.num + b.num, a.den)
        return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den)

    raise ValueError(f"Unsupported operation: {op}")


def _leading_zero_count(coeffs: np.ndarray, atol: float) -> int:
    count = 0
    for c in coeffs:
        if abs(c) > atol:
            break
        count += 1
    return count


def _series_divide(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    quotient = np.zeros(max(length, 0), dtype=complex)
    for k in range(length):
        acc = a[k] if k < len(a) else 0j
        for i in range(1, min(k, len(b) - 1) + 1):
            acc -= b[i] * quotient[k - i]
        quotient[k] = acc / b[0]
    return quotient


def laurent_at(
    f: RationalFunction,
    sigma: complex,
    kmax: int,
    tau_zero: float = DEFAULT_ZERO,
    rel_cluster: float = DEFAULT_CLUSTER,
) -> LaurentExpansion:
    """
    Laurent expansion of f at sigma up to (z - sigma)^kmax.

    The pole order is decided twice: from the clustered roots of numerator and
    denominator, and from the vanishing low-order Taylor coefficients of both at sigma.
    The series always contains the full principal part, even when kmax < -1.

    Raises:
        ExpansionUnstable: the two pole orders disagree.
    """
    sigma = complex(sigma)
    if f.is_zero:
        return LaurentExpansion(sigma, 0, tuple(0j for _ in range(max(kmax + 1, 0))))

    cluster_order = root_multiplicity(f.den, sigma, rel_cluster) - root_multiplicity(f.num, sigma, rel_cluster)

    num = f.num.taylor_at(sigma)
    den = f.den.taylor_at(sigma)
    num_zeros = _leading_zero_count(num, tau_zero * np.max(np.abs(num)))
    den_zeros = _leading_zero_count(den, tau_zero * np.max(np.abs(den)))
    coefficient_order = den_zeros - num_zeros

    if cluster_order != coefficient_order:
        raise ExpansionUnstable(
            f"pole order at {sigma:.6g}: clustering gives {cluster_order}, coefficients give {coefficient_order}",
            cluster_order,
            coefficient_order,
        )

    order = coefficient_order
    kmin = -order if order > 0 else 0
    length = max(kmax - kmin + 1, -kmin, 1)
    offset = max(-order, 0)

    series = _series_divide(num[num_zeros:], den[den_zeros:], length - offset)
    coeffs = np.concatenate([np.zeros(min(offset, length), dtype=complex), series])
    return LaurentExpansion(sigma, kmin, tuple(complex(c) for c in coeffs[:length]))
