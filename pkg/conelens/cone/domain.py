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
Asymptotic part of the maximal domain of a cone operator.

The pipeline is conormal_symbols -> pole_set -> g_sequence -> per pole: x_vectors,
domain_basis, b_matrix -> build_projection. assemble_domain runs all of it.

The g recursion is evaluated in the form g_ℓ = P_ℓ / D_ℓ with the fixed denominator
D_ℓ = Π_{i=1..ℓ} f_0(z - i), so the denominators never grow beyond degree ℓ·deg f_0.
"""

import dataclasses
from dataclasses import dataclass
from math import factorial
from typing import Mapping, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from conelens.constants import ArithOp
from conelens.errors import NotInHatBasis, SingularB, WeightLineCollision
from conelens.mellin.algebra import (
    ComplexPolynomial,
    PoleSite,
    RationalFunction,
    laurent_at,
    poly_roots,
    rf_arith,
)
from conelens.mellin.asymptotics import (
    EXPONENT_TOL,
    AsymptoticElement,
    AsymptoticType,
    exponent_order_key,
    same_exponent,
)
from conelens.utils.structure import Tolerances

from .operator import ConeOperator, conormal_symbols


@dataclass(frozen=True)
class PoleDatum:
    """
    A pole σ of f_0^{-1} inside the strip 1/2 - μ < Re z < 1/2.

    Properties:
        sigma: complex
        n_sigma: int, pole order - 1
        mu_sigma: int, ⌊Re σ + μ - 1/2⌋, number of correction levels
        r: tuple[complex, ...], r_{σ,k} = coefficient of (z - σ)^{-(k+1)} in f_0^{-1}, k = 0..n_σ
    """

    sigma: complex
    n_sigma: int
    mu_sigma: int
    r: tuple[complex, ...]

    @property
    def order(self) -> int:
        return self.n_sigma + 1


def principal_sites(f0: ComplexPolynomial, tolerances: Tolerances = Tolerances()) -> list[PoleSite]:
    """All clustered roots of f_0, empty for a constant f_0."""
    if f0.degree < 1:
        return []
    return poly_roots(f0, rel_cluster=tolerances.cluster)


def check_weight_lines(sites: Sequence[PoleSite], mu: int, tolerances: Tolerances = Tolerances()):
    """
    Raises:
        WeightLineCollision: a site within τ_line of Re z = 1/2 - μ or Re z = 1/2.
    """
    for site in sites:
        for line in (0.5 - mu, 0.5):
            if abs(site.location.real - line) <= tolerances.line:
                raise WeightLineCollision(
                    f"pole {site.location:.6g} of f_0^-1 lies on the weight line Re z = {line:g}",
                    site.location,
                    line,
                )


def pole_set(f0: ComplexPolynomial, mu: int, tolerances: Tolerances = Tolerances()) -> list[PoleDatum]:
    """
    Poles of f_0^{-1} in the strip 1/2 - μ < Re z < 1/2 with their Laurent data.

    Raises:
        WeightLineCollision
    """
    if f0.is_zero:
        raise ValueError("f_0 must be a nonzero polynomial")

    sites = principal_sites(f0, tolerances)
    check_weight_lines(sites, mu, tolerances)

    inverse = rf_arith(RationalFunction.of(f0), op=ArithOp.INVERT)
    poles = []
    for site in sites:
        if not 0.5 - mu < site.location.real < 0.5:
            continue
        expansion = laurent_at(inverse, site.location, kmax=-1, tau_zero=tolerances.zero, rel_cluster=tolerances.cluster)
        n_sigma = expansion.pole_order - 1
        r = tuple(expansion.coefficient(-(k + 1)) for k in range(n_sigma + 1))
        mu_sigma = int(np.floor(site.location.real + mu - 0.5 + tolerances.line))
        poles.append(PoleDatum(site.location, n_sigma, mu_sigma, r))
    return poles


def g_sequence(f: Sequence[ComplexPolynomial], L: int) -> list[RationalFunction]:
    """
    g_0 = 1, g_ℓ = -(T^{-ℓ} f_0^{-1}) Σ_{j<ℓ} (T^{-j} f_{ℓ-j}) g_j for ℓ = 1..L.

    Args:
        f: conormal symbols f_0, f_1, ... (at least L+1 of them, missing ones are zero)
        L: last level

    Returns:
        list[RationalFunction], g_ℓ with denominator Π_{i=1..ℓ} f_0(z - i).
    """
    if L < 0:
        raise ValueError(f"L must be non-negative, got {L}")
    f0 = f[0]
    if f0.is_zero:
        raise ValueError("f_0 must be a nonzero polynomial")

    shifted_f0 = {i: f0.shift(-i) for i in range(1, L + 1)}
    numerators = [ComplexPolynomial.constant(1.0)]
    denominators = [ComplexPolynomial.constant(1.0)]

    for ell in range(1, L + 1):
        acc = ComplexPolynomial()
        for j in range(ell):
            forcing = f[ell - j] if ell - j < len(f) else ComplexPolynomial()
            if forcing.is_zero or numerators[j].is_zero:
                continue
            term = forcing.shift(-j) * numerators[j]
            for i in range(j + 1, ell):
                term = term * shifted_f0[i]
            acc = acc + term
        numerators.append(-acc)
        denominators.append(denominators[-1] * shifted_f0[ell])

    return [RationalFunction(p, d) for p, d in zip(numerators, denominators)]


def recursion_residual(f: Sequence[ComplexPolynomial], g: Sequence[RationalFunction], j: int) -> float:
    """
    Relative residual of Σ_{ℓ<=j} (T^{-ℓ} f_{j-ℓ}) g_ℓ = δ_{j0} f_0, computed on numerators
    over the common denominator Π_{i=1..j} f_0(z - i).
    """
    f0 = f[0]
    common = np.ones(1, dtype=complex)
    for i in range(1, j + 1):
        common = npoly.polymul(common, f0.shift(-i).array)

    total = np.zeros(1, dtype=complex)
    scale = 0.0
    division = 0.0
    for ell in range(j + 1):
        forcing = f[j - ell] if j - ell < len(f) else ComplexPolynomial()
        if forcing.is_zero or g[ell].is_zero:
            continue
        quotient, remainder = npoly.polydiv(common, g[ell].den.array)
        division = max(division, float(np.max(np.abs(remainder))) / float(np.max(np.abs(common))))
        term = npoly.polymul(npoly.polymul(forcing.shift(-ell).array, g[ell].num.array), quotient)
        scale = max(scale, float(np.max(np.abs(term))))
        total = npoly.polyadd(total, term)

    if j == 0:
        total = npoly.polysub(total, f0.array)
        scale = max(scale, f0.norm)

    if scale == 0.0:
        return 0.0
    return max(float(np.max(np.abs(total))) / scale, division)


def hat_basis(pd: PoleDatum) -> list[AsymptoticElement]:
    """ω t^{-σ} log^j t, j = 0..n_σ."""
    return [AsymptoticElement.monomial(pd.sigma, j) for j in range(pd.n_sigma + 1)]


def b_matrix(pd: PoleDatum, tolerances: Tolerances = Tolerances()) -> np.ndarray:
    """
    b_{jk} = (-1)^j r_{j+k} / j! for j + k <= n_σ, else 0.

    Raises:
        SingularB: |det B_σ| below τ_zero relative to max|r|^{n_σ+1}.
    """
    n = pd.n_sigma
    B = np.zeros((n + 1, n + 1), dtype=complex)
    for j in range(n + 1):
        for k in range(n + 1 - j):
            B[j, k] = (-1) ** j * pd.r[j + k] / factorial(j)

    scale = max(abs(r) for r in pd.r) ** (n + 1)
    if scale == 0.0 or abs(np.linalg.det(B)) < tolerances.zero * scale:
        raise SingularB(f"B matrix of σ={pd.sigma:.6g} is singular (r={pd.r})")
    return B


def structural_pole_bound(sites: Sequence[PoleSite], sigma: complex, ell: int, rel_cluster: float = 1e-8) -> int:
    """
    Upper bound of N_σ^{(ℓ)} from the denominator Π_{i=1..ℓ} f_0(z - i):
    Σ_{i=1..ℓ} multiplicity of σ - i as a root of f_0.
    """
    if not sites:
        return 0
    tau = rel_cluster * (1.0 + max(abs(s.location) for s in sites))
    bound = 0
    for i in range(1, ell + 1):
        bound += sum(s.order for s in sites if abs(s.location - (sigma - i)) <= 2.0 * tau)
    return bound


def x_vectors(
    pd: PoleDatum,
    g: RationalFunction,
    ell: int,
    depth: Optional[int] = None,
    tolerances: Tolerances = Tolerances(),
) -> list[np.ndarray]:
    """
    Coefficient vectors x^{(ℓ)}_{σ,j} ∈ C^{n_σ+1}, j = 0..N_σ^{(ℓ)} + n_σ.

    ⟨e_k, x^{(ℓ)}_{σ,j}⟩ = (-1)^j k! / ((-1)^k j!) · g^{(ℓ)}_{σ,k-j}, zero when k - j < -N_σ^{(ℓ)},
    where g^{(ℓ)}_{σ,m} are the Laurent coefficients of g_ℓ at σ. The pairing is bilinear.

    Args:
        pd: the pole
        g: g_ℓ
        ell: level ℓ; for ℓ = 0 the vectors are the unit vectors e_j
        depth: pad with zero vectors up to j = depth

    Returns:
        list[np.ndarray]
    """
    n = pd.n_sigma
    if ell == 0:
        top = n if depth is None else max(depth, n)
        return [np.eye(n + 1, dtype=complex)[j] if j <= n else np.zeros(n + 1, dtype=complex) for j in range(top + 1)]

    if g.is_zero:
        top = n if depth is None else max(depth, n)
        return [np.zeros(n + 1, dtype=complex) for _ in range(top + 1)]

    expansion = laurent_at(g, pd.sigma, kmax=n, tau_zero=tolerances.zero, rel_cluster=tolerances.cluster)
    top = expansion.pole_order + n
    if depth is not None:
        top = max(top, depth)

    vectors = []
    for j in range(top + 1):
        x = np.zeros(n + 1, dtype=complex)
        for k in range(n + 1):
            x[k] = (-1) ** (j - k) * factorial(k) / factorial(j) * expansion.coefficient(k - j)
        vectors.append(x)
    return vectors


def domain_basis(pd: PoleDatum, xs: Mapping[int, Sequence[np.ndarray]]) -> list[AsymptoticElement]:
    """
    Basis of 𝔈_σ: for a = e_k the element ω Σ_{ℓ<=μ_σ} Σ_j ⟨a, x^{(ℓ)}_{σ,j}⟩ t^{-σ+ℓ} log^j t.
    """
    basis = []
    for k in range(pd.n_sigma + 1):
        terms = [
            (pd.sigma - ell, j, x[k])
            for ell in range(pd.mu_sigma + 1)
            for j, x in enumerate(xs[ell])
        ]
        basis.append(AsymptoticElement(tuple(terms)))
    return basis


def theta(pd: PoleDatum, v: AsymptoticElement) -> AsymptoticElement:
    """Restriction to the leading level: the terms at exponent σ with log power <= n_σ."""
    return AsymptoticElement(
        tuple((p, j, c) for p, j, c in v.terms if same_exponent(p, pd.sigma) and j <= pd.n_sigma)
    )


def theta_inv(
    pd: PoleDatum,
    v: AsymptoticElement,
    basis: Sequence[AsymptoticElement],
    atol: float = 0.0,
) -> AsymptoticElement:
    """
    The element of 𝔈_σ whose leading level is v.

    Args:
        pd: the pole
        v: element of Ê_σ
        basis: the basis of 𝔈_σ from domain_basis
        atol: coefficients outside Ê_σ up to this size are ignored

    Raises:
        NotInHatBasis: v has terms outside Ê_σ.
    """
    coefficients = np.zeros(pd.n_sigma + 1, dtype=complex)
    for p, j, c in v.terms:
        if same_exponent(p, pd.sigma) and j <= pd.n_sigma:
            coefficients[j] += c
        elif abs(c) > atol:
            raise NotInHatBasis(f"term ({c:.3g})·t^(-({p:.6g})) log^{j} t is outside the leading space at σ={pd.sigma:.6g}")

    result = AsymptoticElement.zero()
    for k, c in enumerate(coefficients):
        if c != 0:
            result = result + c * basis[k]
    return result


def projection_matrix(
    S: AsymptoticType,
    poles: Sequence[PoleDatum],
    bases: Sequence[Sequence[AsymptoticElement]],
) -> np.ndarray:
    """
    Projection of E_S onto ⊕ 𝔈_σ.

    Poles are grouped by imaginary part and handled by decreasing real part inside a group.
    For a group the composed iteration u <- u - θ_σ^{-1}(P̂_σ u) is Π_i; the result is
    Q = Σ_i (I - Π_i).
    """
    dim = S.dim
    identity = np.eye(dim, dtype=complex)

    groups: list[list[int]] = []
    for i in sorted(range(len(poles)), key=lambda i: exponent_order_key(poles[i].sigma)):
        sigma = poles[i].sigma
        if groups and abs(poles[groups[-1][0]].sigma.imag - sigma.imag) <= EXPONENT_TOL * (1.0 + abs(sigma)):
            groups[-1].append(i)
        else:
            groups.append([i])

    Q = np.zeros((dim, dim), dtype=complex)
    for group in groups:
        iteration = identity.copy()
        for i in group:
            pd = poles[i]
            embed = np.column_stack([S.vector(b) for b in bases[i]])
            extract = np.zeros((pd.n_sigma + 1, dim), dtype=complex)
            for j in range(pd.n_sigma + 1):
                extract[j, S.index(pd.sigma, j)] = 1.0
            iteration = (identity - embed @ extract) @ iteration
        Q += identity - iteration
    return Q


@dataclass(frozen=True, eq=False)
class DomainDescription:
    """
    The asymptotic part of D_max(A) = K^{μ,μ} ⊕ ⊕_σ 𝔈_σ.

    Properties:
        operator: ConeOperator
        symbols: conormal symbols f_0..f_μ
        sigma_data: poles σ ∈ Σ
        g: g_0..g_{μ-1}
        N: (pole index, ℓ) -> N_σ^{(ℓ)}
        hat_bases, bases: per pole, bases of Ê_σ and 𝔈_σ
        x: (pole index, ℓ) -> x-vectors
        B: per pole, B_σ
        m_sigma: per pole, max_ℓ N_σ^{(ℓ)}
        S_sigma: per pole, {(σ - ℓ, m_σ + n_σ)}
        S: type of E_S used for the projection
        projection: Q on the coordinates of S
    """

    operator: ConeOperator
    symbols: tuple[ComplexPolynomial, ...]
    sigma_data: tuple[PoleDatum, ...]
    g: tuple[RationalFunction, ...]
    N: dict[tuple[int, int], int]
    hat_bases: tuple[tuple[AsymptoticElement, ...], ...]
    bases: tuple[tuple[AsymptoticElement, ...], ...]
    x: dict[tuple[int, int], tuple[np.ndarray, ...]]
    B: tuple[np.ndarray, ...]
    m_sigma: tuple[int, ...]
    S_sigma: tuple[AsymptoticType, ...]
    S: AsymptoticType
    projection: Optional[np.ndarray] = None

    @property
    def dimension(self) -> int:
        return sum(pd.n_sigma + 1 for pd in self.sigma_data)

    def basis_elements(self) -> list[AsymptoticElement]:
        return [b for basis in self.bases for b in basis]

    def theta_inv(self, index: int, v: AsymptoticElement, atol: float = 0.0) -> AsymptoticElement:
        return theta_inv(self.sigma_data[index], v, self.bases[index], atol)

    def with_depth(self, log_depth: int) -> AsymptoticType:
        if log_depth < self.S.depth:
            raise ValueError(f"log depth {log_depth} below the required {self.S.depth}")
        return AsymptoticType(self.S.exponents, log_depth)


def build_projection(dd: DomainDescription, log_depth: Optional[int] = None) -> np.ndarray:
    """
    Q on the coordinates of dd.S, or of dd.with_depth(log_depth) when a larger log depth
    is requested.
    """
    S = dd.S if log_depth is None else dd.with_depth(log_depth)
    return projection_matrix(S, dd.sigma_data, dd.bases)


def assemble_domain(
    op: ConeOperator,
    tolerances: Tolerances = Tolerances(),
    log_depth: Optional[int] = None,
) -> DomainDescription:
    """
    Full cone pipeline for one operator.

    Raises:
        WeightLineCollision
    """
    symbols = conormal_symbols(op)
    poles = pole_set(symbols[0], op.mu, tolerances)
    g = g_sequence(symbols, op.mu - 1)

    N, x = {}, {}
    hat_bases, bases, B, m_sigma, S_sigma = [], [], [], [], []
    for i, pd in enumerate(poles):
        xs = {ell: x_vectors(pd, g[ell], ell, tolerances=tolerances) for ell in range(pd.mu_sigma + 1)}
        for ell, vectors in xs.items():
            N[(i, ell)] = len(vectors) - pd.n_sigma - 1
            x[(i, ell)] = tuple(vectors)
        m = max(N[(i, ell)] for ell in xs)
        m_sigma.append(m)
        S_sigma.append(AsymptoticType.from_poles([pd], m + pd.n_sigma))
        hat_bases.append(tuple(hat_basis(pd)))
        bases.append(tuple(domain_basis(pd, xs)))
        B.append(b_matrix(pd, tolerances))

    depth = max((S.depth for S in S_sigma), default=0)
    if log_depth is not None:
        if log_depth < depth:
            raise ValueError(f"log depth {log_depth} below the required {depth}")
        depth = log_depth

    dd = DomainDescription(
        operator=op,
        symbols=tuple(symbols),
        sigma_data=tuple(poles),
        g=tuple(g),
        N=N,
        hat_bases=tuple(hat_bases),
        bases=tuple(bases),
        x=x,
        B=tuple(B),
        m_sigma=tuple(m_sigma),
        S_sigma=tuple(S_sigma),
        S=AsymptoticType.from_poles(poles, depth),
    )
    return dataclasses.replace(dd, projection=build_projection(dd))
