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
η-dependent domain data of an edge operator.

For a sample η the cone pipeline runs twice, on the full symbols f̃_ℓ(·, η) and on the
principal symbols f̄_ℓ(·, η). The poles of f̃_0^{-1} = [η]^{-μ} f_0^{-1} do not depend on η,
and neither does the asymptotic type S: its log depth is taken from the structural bound
of the denominators of g_ℓ, so that samples can be compared coordinatewise.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from conelens.cone.domain import (
    PoleDatum,
    domain_basis,
    g_sequence,
    pole_set,
    principal_sites,
    projection_matrix,
    structural_pole_bound,
    x_vectors,
)
from conelens.mellin.algebra import ComplexPolynomial, PoleSite, RationalFunction
from conelens.mellin.asymptotics import AsymptoticElement, AsymptoticType
from conelens.utils.structure import Tolerances

from .kappa import KappaMatrix, kappa_matrix
from .operator import EdgeOperator, EtaSample, edge_conormal, principal_edge_conormal

Vectors = dict[tuple[int, int], tuple[np.ndarray, ...]]


@dataclass(frozen=True)
class EdgeStructure:
    """
    The η-independent part of the edge data.

    Properties:
        poles: PoleDatum of f_0^{-1} in the strip
        sites: all roots of f_0
        S: asymptotic type shared by every sample
    """

    poles: tuple[PoleDatum, ...]
    sites: tuple[PoleSite, ...]
    S: AsymptoticType


def edge_structure(op: EdgeOperator, tolerances: Tolerances = Tolerances()) -> EdgeStructure:
    """
    Raises:
        WeightLineCollision
    """
    f0 = op.f0
    poles = pole_set(f0, op.mu, tolerances)
    sites = principal_sites(f0, tolerances)
    depth = 0
    for pd in poles:
        for ell in range(pd.mu_sigma + 1):
            bound = structural_pole_bound(sites, pd.sigma, ell, tolerances.cluster)
            depth = max(depth, bound + pd.n_sigma)
    return EdgeStructure(tuple(poles), tuple(sites), AsymptoticType.from_poles(poles, depth))


@dataclass(frozen=True, eq=False)
class EdgeDomainSample:
    """
    Properties:
        eta: EtaSample
        structure: EdgeStructure
        symbols, principal_symbols: f̃_ℓ(·, η) and f̄_ℓ(·, η)
        g, g_bar: g̃_ℓ and ḡ_ℓ
        x_tilde, x_bar: (pole index, ℓ) -> coefficient vectors [η]^{-μ} x[g̃] and |η|^{-μ} x[ḡ]
        range_bases, principal_bases: per pole, bases of the range 𝔤̃_σ(η) and of its principal part
        pi, pi_bar: projections of E_S built from the two families of bases
        kappa: κ_{[η]}
        p_E: κ_{[η]} π κ_{[η]}^{-1}, the E_S block of the projection symbol; the K^{μ,μ}
            slot is the identity and is not represented
    """

    eta: EtaSample
    structure: EdgeStructure
    symbols: tuple[ComplexPolynomial, ...]
    principal_symbols: tuple[ComplexPolynomial, ...]
    g: tuple[RationalFunction, ...]
    g_bar: tuple[RationalFunction, ...]
    x_tilde: Vectors
    x_bar: Vectors
    range_bases: tuple[tuple[AsymptoticElement, ...], ...]
    principal_bases: tuple[tuple[AsymptoticElement, ...], ...]
    pi: np.ndarray
    pi_bar: np.ndarray
    kappa: KappaMatrix
    p_E: np.ndarray

    @property
    def S(self) -> AsymptoticType:
        return self.structure.S

    @property
    def poles(self) -> tuple[PoleDatum, ...]:
        return self.structure.poles

    def stacked(self, which: str = "tilde") -> np.ndarray:
        """All coefficient vectors in a fixed order, for coordinatewise comparison between samples."""
        table = self.x_tilde if which == "tilde" else self.x_bar
        keys = sorted(table)
        if not keys:
            return np.zeros(0, dtype=complex)
        return np.concatenate([np.concatenate(table[key]) for key in keys])

    def range_matrix(self, principal: bool = False) -> np.ndarray:
        """Columns S.vector(b) for the (principal) range basis elements."""
        bases = self.principal_bases if principal else self.range_bases
        columns = [self.S.vector(b) for basis in bases for b in basis]
        if not columns:
            return np.zeros((self.S.dim, 0), dtype=complex)
        return np.column_stack(columns)

    def idempotency_defect(self) -> float:
        return float(np.linalg.norm(self.p_E @ self.p_E - self.p_E))

    def range_defect(self) -> float:
        """‖p_E v - v‖ over v = κ_{[η]} b for the range basis elements b."""
        embedded = self.kappa.matrix @ self.range_matrix()
        if embedded.size == 0:
            return 0.0
        return float(np.linalg.norm(self.p_E @ embedded - embedded) / max(1.0, np.linalg.norm(embedded)))


def _x_table(
    poles: tuple[PoleDatum, ...],
    g: list[RationalFunction],
    depth: int,
    weight: float,
    tolerances: Tolerances,
) -> tuple[Vectors, tuple[tuple[AsymptoticElement, ...], ...]]:
    scaled, bases = {}, []
    for i, pd in enumerate(poles):
        xs = {ell: x_vectors(pd, g[ell], ell, depth=depth, tolerances=tolerances) for ell in range(pd.mu_sigma + 1)}
        for ell, vectors in xs.items():
            scaled[(i, ell)] = tuple(weight * x for x in vectors)
        bases.append(tuple(domain_basis(pd, xs)))
    return scaled, tuple(bases)


def edge_domain_sample(
    op: EdgeOperator,
    eta: EtaSample,
    tolerances: Tolerances = Tolerances(),
    structure: Optional[EdgeStructure] = None,
) -> EdgeDomainSample:
    """
    Args:
        op: the edge operator
        eta: sample with |η| >= 1
        structure: η-independent data, recomputed when omitted

    Raises:
        WeightLineCollision
    """
    if eta.q != op.q:
        raise ValueError(f"η has {eta.q} components, the operator has q = {op.q}")
    if structure is None:
        structure = edge_structure(op, tolerances)

    symbols = edge_conormal(op, eta)
    principal_symbols = principal_edge_conormal(op, eta)
    g = g_sequence(symbols, op.mu - 1)
    g_bar = g_sequence(principal_symbols, op.mu - 1)

    depth = structure.S.depth
    x_tilde, range_bases = _x_table(structure.poles, g, depth, eta.bracket ** (-op.mu), tolerances)
    x_bar, principal_bases = _x_table(structure.poles, g_bar, depth, eta.norm ** (-op.mu), tolerances)

    pi = projection_matrix(structure.S, structure.poles, range_bases)
    pi_bar = projection_matrix(structure.S, structure.poles, principal_bases)
    kappa = kappa_matrix(eta.bracket, structure.S)

    return EdgeDomainSample(
        eta=eta,
        structure=structure,
        symbols=tuple(symbols),
        principal_symbols=tuple(principal_symbols),
        g=tuple(g),
        g_bar=tuple(g_bar),
        x_tilde=x_tilde,
        x_bar=x_bar,
        range_bases=range_bases,
        principal_bases=principal_bases,
        pi=pi,
        pi_bar=pi_bar,
        kappa=kappa,
        p_E=kappa.conjugate(pi),
    )
