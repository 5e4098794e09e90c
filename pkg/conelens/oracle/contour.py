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
Contour-integral realization of the maps G_σ^{(ℓ)} and of the coefficients ζ_σ(u).

All circle integrals use the trapezoidal rule on P equispaced nodes z_k = σ + ε e^{iθ_k},
where (1/2πi)∮ h(z) dz ≈ (1/P) Σ_k h(z_k)(z_k - σ). The integrands are analytic on an
annulus around the circle, so the rule converges geometrically in P.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from conelens.cone.domain import PoleDatum, b_matrix
from conelens.errors import FitResidualTooLarge
from conelens.mellin.algebra import ComplexPolynomial, PoleSite, RationalFunction
from conelens.mellin.asymptotics import AsymptoticElement
from conelens.utils.structure import Tolerances

from .cutoff import CutoffPair
from .mellin import SampledFunction, mellin_jet, mellin_numeric_many

MAX_RADIUS = 0.1
RADIUS_SHARE = 0.45


@dataclass(frozen=True, eq=False)
class PrincipalData:
    """
    Properties:
        coefficients: np.ndarray, Laurent coefficients c_{-1}, ..., c_{-(n_σ+1)} of f_0^{-1}û at σ
        scale: float, max |f_0^{-1}û| on the contour
    """

    coefficients: np.ndarray
    scale: float

    def vanishes(self, tolerances: Tolerances = Tolerances()) -> bool:
        return bool(np.all(np.abs(self.coefficients) <= tolerances.zero * self.scale))


@dataclass(frozen=True, eq=False)
class ContourFit:
    """
    Result of a contour evaluation fitted to ω t^{-σ+ℓ} Σ_j c_j log^j t.

    Properties:
        element: AsymptoticElement, the fitted terms
        residual: float, relative least-squares residual on the probe grid
        radius: float, contour radius ε
        principal: PrincipalData
    """

    element: AsymptoticElement
    residual: float
    radius: float
    principal: PrincipalData


def contour_radius(sites: Sequence[PoleSite], sigma: complex, ell: int = 0) -> float:
    """
    ε = min(0.45·gap, 0.1), gap being the distance from σ to the nearest other root of f_0
    or pole of g_ℓ (those sit at ρ + i, i = 1..ℓ, for roots ρ of f_0).
    """
    candidates = [s.location + i for s in sites for i in range(ell + 1)]
    gaps = [abs(c - sigma) for c in candidates if abs(c - sigma) > 1e-9 * (1.0 + abs(sigma))]
    if not gaps:
        return MAX_RADIUS
    return min(RADIUS_SHARE * min(gaps), MAX_RADIUS)


def _nodes(sigma: complex, eps: float, count: int) -> tuple[np.ndarray, np.ndarray]:
    angles = 2.0 * np.pi * np.arange(count) / count
    offsets = eps * np.exp(1j * angles)
    return sigma + offsets, offsets


def principal_coefficients(
    pd: PoleDatum,
    f0: ComplexPolynomial,
    u: SampledFunction,
    eps: float,
    nodes: int = 128,
    cut: CutoffPair = CutoffPair(),
) -> PrincipalData:
    """
    c_{-m} = (1/2πi)∮ (f_0^{-1}û)(z)(z - σ)^{m-1} dz for m = 1..n_σ+1, with û evaluated by
    quadrature at every node.
    """
    points, offsets = _nodes(pd.sigma, eps, nodes)
    values = mellin_numeric_many(u, points, cut) / f0(points)
    coefficients = np.array([np.mean(values * offsets**m) for m in range(1, pd.n_sigma + 2)], dtype=complex)
    return PrincipalData(coefficients, float(np.max(np.abs(values))))


def _principal_part(principal: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    return sum(c * offsets ** (-(m + 1)) for m, c in enumerate(principal))


def contour_values(
    pd: PoleDatum,
    ell: int,
    g: RationalFunction,
    principal: np.ndarray,
    eps: float,
    t: np.ndarray,
    nodes: int = 128,
) -> np.ndarray:
    """t^ℓ (1/2πi)∮ t^{-z} g_ℓ(z) Π_σ(f_0^{-1}û)(z) dz on the points t."""
    points, offsets = _nodes(pd.sigma, eps, nodes)
    weights = g(points) * _principal_part(principal, offsets) * offsets / nodes
    log_t = np.log(np.asarray(t, dtype=float))
    return np.exp(ell * log_t) * (np.exp(-np.outer(log_t, points)) @ weights)


def contour_G(
    pd: PoleDatum,
    ell: int,
    g: RationalFunction,
    u: SampledFunction,
    eps: float,
    f0: ComplexPolynomial,
    log_degree: int,
    nodes: int = 128,
    probe_points: int = 64,
    probe_range: Sequence[float] = (1e-6, 1e-1),
    tolerances: Tolerances = Tolerances(),
    cut: CutoffPair = CutoffPair(),
    principal: Optional[PrincipalData] = None,
) -> ContourFit:
    """
    Evaluate G_σ^{(ℓ)}u on a probe grid and fit it to ω t^{-σ+ℓ} Σ_{j<=log_degree} c_j log^j t.

    Args:
        pd: the pole
        ell: level ℓ
        g: g_ℓ
        u: test input
        eps: contour radius, see contour_radius
        f0: principal conormal symbol
        log_degree: highest log power of the fit, N_σ^{(ℓ)} + n_σ
        principal: reuse principal coefficients computed for the same u and ε

    Raises:
        FitResidualTooLarge: relative fit residual above tolerances.fit.
    """
    if principal is None:
        principal = principal_coefficients(pd, f0, u, eps, nodes, cut)
    if principal.vanishes(tolerances) or g.is_zero:
        return ContourFit(AsymptoticElement.zero(), 0.0, eps, principal)

    t = np.geomspace(probe_range[0], probe_range[1], probe_points)
    values = contour_values(pd, ell, g, principal.coefficients, eps, t, nodes)

    log_t = np.log(t)
    scaled = values * np.exp((pd.sigma - ell) * log_t)
    vander = npoly.polyvander(log_t, log_degree)
    coeffs, *_ = np.linalg.lstsq(vander.astype(complex), scaled, rcond=None)

    floor = 1e-12 * principal.scale * np.sqrt(probe_points)
    residual = float(np.linalg.norm(vander @ coeffs - scaled) / max(np.linalg.norm(scaled), floor, np.finfo(float).tiny))
    if residual > tolerances.fit:
        raise FitResidualTooLarge(
            f"contour values at σ={pd.sigma:.6g}, ℓ={ell} do not fit t^(-σ+ℓ)·poly(log t) (residual {residual:.3g})",
            residual,
        )

    element = AsymptoticElement(tuple((pd.sigma - ell, j, c) for j, c in enumerate(coeffs)))
    return ContourFit(element, residual, eps, principal)


def contour_zeta(principal: PrincipalData) -> np.ndarray:
    """ζ_j = (-1)^j / j! · c_{-(j+1)} from the principal coefficients of f_0^{-1}û."""
    coefficients = np.asarray(principal.coefficients, dtype=complex)
    factorials = np.cumprod([1.0] + list(range(1, len(coefficients))))
    signs = (-1.0) ** np.arange(len(coefficients))
    return signs * coefficients / factorials


def zeta_closed_form(
    pd: PoleDatum,
    u: SampledFunction,
    tolerances: Tolerances = Tolerances(),
    cut: CutoffPair = CutoffPair(),
) -> np.ndarray:
    """ζ_σ(u) = B_σ δ_σ(u), δ_i = û^{(i)}(σ)/i!."""
    return b_matrix(pd, tolerances) @ mellin_jet(u, pd.sigma, pd.n_sigma, cut)


def closed_form_G(pd: PoleDatum, xs: Sequence[np.ndarray], ell: int, zeta: np.ndarray) -> AsymptoticElement:
    """G_σ^{(ℓ)}u = ω Σ_j ⟨ζ_σ(u), x^{(ℓ)}_{σ,j}⟩ t^{-σ+ℓ} log^j t."""
    zeta = np.asarray(zeta, dtype=complex)
    return AsymptoticElement(tuple((pd.sigma - ell, j, complex(zeta @ x)) for j, x in enumerate(xs)))
