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
Numerical Mellin transforms û(z) = ∫_0^∞ t^z (ω₀u)(t) dt/t and the K^{s,γ}-type norms
used to check them.

Integrals are taken in s = log t, where t^z dt/t becomes e^{zs} ds.
"""

import warnings
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Optional

import numpy as np
from scipy.integrate import IntegrationWarning, quad, quad_vec, simpson

from conelens.errors import QuadratureDivergence

from .cutoff import CutoffPair

QUAD_EPSABS = 1e-11
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200
QUAD_ACCEPT_ABS = 1e-9

# e^{-37} is below double precision relative to O(1) integrands
TAIL_EXPONENT = 37.0
MIN_LOG = -700.0

MIN_SAMPLES = 512


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """
    A function on (0, T] given by samples on a log-spaced grid, optionally backed by a
    closed form that is used instead of the samples wherever possible.

    Properties:
        grid: np.ndarray, strictly increasing positive points
        values: np.ndarray, complex samples on grid
        closed_form: callable t -> values, or None
        support: (lo, hi), the function vanishes outside
        leading_exponent: a with u(t) = O(t^a) as t -> 0, None if unknown
        label: str
    """

    grid: np.ndarray
    values: np.ndarray
    closed_form: Optional[Callable[[np.ndarray], np.ndarray]] = None
    support: tuple[float, float] = (0.0, np.inf)
    leading_exponent: Optional[float] = None
    label: str = ""

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError(f"grid and values must be 1-d of equal length, got {grid.shape} and {values.shape}")
        if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be positive and strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        support: tuple[float, float] = (0.0, 2.0),
        leading_exponent: Optional[float] = None,
        points: int = 1024,
        label: str = "",
    ) -> "SampledFunction":
        lo, hi = support
        hi = min(hi, 2.0)
        start = lo if lo > 0 else hi * 1e-12
        grid = np.geomspace(start, hi, points)
        values = np.asarray(fn(grid), dtype=complex) * np.ones(points)
        return cls(grid, values, fn, (lo, support[1]), leading_exponent, label)

    @property
    def is_closed_form(self) -> bool:
        return self.closed_form is not None

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        lo, hi = self.support
        inside = (t > lo) & (t < hi) if lo > 0 else (t > 0) & (t < hi)
        out = np.zeros(t.shape, dtype=complex)
        if self.closed_form is not None:
            if np.any(inside):
                out[inside] = np.asarray(self.closed_form(t[inside]), dtype=complex) * np.ones(int(np.sum(inside)))
            return out
        log_grid = np.log(self.grid)
        within = inside & (t >= self.grid[0]) & (t <= self.grid[-1])
        log_t = np.log(t[within])
        out[within] = np.interp(log_t, log_grid, self.values.real) + 1j * np.interp(log_t, log_grid, self.values.imag)
        return out


def _quad_part(fn: Callable[[float], float], lo: float, hi: float, options: dict) -> float:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = quad(fn, lo, hi, **options)

    issues = []
    for w in caught:
        if issubclass(w.category, IntegrationWarning):
            issues.append(str(w.message).strip().splitlines()[0])
        else:
            warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)

    # roundoff on a nearly cancelling integrand keeps quad above epsabs with a small error estimate
    if issues and not error <= QUAD_ACCEPT_ABS:
        raise QuadratureDivergence(
            f"Mellin quadrature did not converge on [{lo:.3g}, {hi:.3g}], error estimate {error:.3g}: {issues[0]}"
        )
    return value


def _quad_complex(fn: Callable[[float], complex], lo: float, hi: float, points: list[float]) -> complex:
    options = dict(epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    if points:
        options["points"] = points
    real = _quad_part(lambda s: fn(s).real, lo, hi, options)
    imag = _quad_part(lambda s: fn(s).imag, lo, hi, options)
    return complex(real, imag)


def _log_bounds(u: SampledFunction, z: complex) -> tuple[float, float]:
    lo, hi = u.support
    upper = min(np.log(hi) if np.isfinite(hi) else np.inf, np.log(2.0))
    if lo > 0:
        return np.log(lo), upper
    if u.leading_exponent is not None:
        decay = u.leading_exponent + z.real
        if decay <= 0:
            raise QuadratureDivergence(
                f"t^z u(t) dt/t is not integrable at 0: Re z + {u.leading_exponent:g} = {decay:g} <= 0"
            )
        return max(-TAIL_EXPONENT / decay, MIN_LOG), upper
    return MIN_LOG, upper


def mellin_numeric(u: SampledFunction, z: complex, cut: CutoffPair = CutoffPair(), log_power: int = 0) -> complex:
    """
    ∫_0^∞ t^z (log t)^i ω₀(t) u(t) dt/t, the i-th z-derivative of û at z.

    Closed-form inputs are integrated adaptively with scipy quad (real and imaginary parts
    separately, a break point at t = 1 where ω₀ starts to fall). Sampled-only inputs use
    Simpson's rule on the log grid and need at least 512 samples.

    Raises:
        QuadratureDivergence: the integrand is not integrable at 0 for this z, or
            quad stops with an error estimate above 1e-9.
    """
    z = complex(z)
    if log_power < 0:
        raise ValueError(f"log power must be non-negative, got {log_power}")

    if u.closed_form is None:
        if len(u.grid) < MIN_SAMPLES:
            raise ValueError(f"sampled Mellin transform needs at least {MIN_SAMPLES} points, got {len(u.grid)}")
        s = np.log(u.grid)
        integrand = np.exp(z * s) * s**log_power * cut.omega0(u.grid) * u.values
        return complex(simpson(integrand, x=s))

    lo, hi = _log_bounds(u, z)
    if lo >= hi:
        return 0j

    def integrand(s: float) -> complex:
        t = np.exp(s)
        return complex(np.exp(z * s) * s**log_power * cut.omega0(t) * u(np.array([t]))[0])

    if u.leading_exponent is None and u.support[0] <= 0 and abs(integrand(lo)) > QUAD_EPSABS:
        raise QuadratureDivergence(f"Mellin integrand does not decay at t -> 0 for z = {z:.6g}")

    points = [p for p in (0.0,) if lo < p < hi]
    return _quad_complex(integrand, lo, hi, points)


def mellin_numeric_many(u: SampledFunction, zs: np.ndarray, cut: CutoffPair = CutoffPair()) -> np.ndarray:
    """
    û at many points z in one vector-valued adaptive quadrature (scipy quad_vec), used for
    the nodes of a contour.

    Raises:
        QuadratureDivergence
    """
    zs = np.asarray(zs, dtype=complex)
    if u.closed_form is None:
        return np.array([mellin_numeric(u, z, cut) for z in zs], dtype=complex)

    bounds = [_log_bounds(u, z) for z in zs]
    lo = min(b[0] for b in bounds)
    hi = bounds[0][1]
    if lo >= hi:
        return np.zeros(zs.shape, dtype=complex)

    def integrand(s: float) -> np.ndarray:
        t = np.exp(s)
        values = np.exp(zs * s) * cut.omega0(t) * u(np.array([t]))[0]
        return np.concatenate([values.real, values.imag])

    if u.leading_exponent is None and u.support[0] <= 0 and np.max(np.abs(integrand(lo))) > QUAD_EPSABS:
        raise QuadratureDivergence("Mellin integrand does not decay at t -> 0 on the contour")

    points = [p for p in (0.0,) if lo < p < hi] or None
    result, _, info = quad_vec(
        integrand, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, norm="max", points=points, full_output=True
    )
    if not info.success:
        raise QuadratureDivergence(f"vector Mellin quadrature did not converge: {info.message}")
    return result[: len(zs)] + 1j * result[len(zs) :]


def mellin_jet(u: SampledFunction, z: complex, order: int, cut: CutoffPair = CutoffPair()) -> np.ndarray:
    """δ_i = û^{(i)}(z) / i!, i = 0..order."""
    return np.array([mellin_numeric(u, z, cut, log_power=i) / factorial(i) for i in range(order + 1)], dtype=complex)


def group_action(u: SampledFunction, lam: float) -> SampledFunction:
    """(κ_λ u)(t) = λ^{1/2} u(λt)."""
    if lam <= 0:
        raise ValueError(f"λ must be positive, got {lam}")
    closed_form = None
    if u.closed_form is not None:
        inner = u.closed_form

        def closed_form(t):
            return np.sqrt(lam) * np.asarray(inner(lam * np.asarray(t, dtype=float)), dtype=complex)

    lo, hi = u.support
    return SampledFunction(
        u.grid / lam,
        np.sqrt(lam) * u.values,
        closed_form,
        (lo / lam, hi / lam),
        u.leading_exponent,
        f"κ_{lam:g}({u.label})" if u.label else "",
    )


def log_derivatives(grid: np.ndarray, values: np.ndarray, order: int) -> list[np.ndarray]:
    """[(t∂_t)^i v for i = 0..order], by finite differences in log t."""
    s = np.log(grid)
    derivatives = [np.asarray(values, dtype=complex)]
    for _ in range(order):
        derivatives.append(np.gradient(derivatives[-1], s, edge_order=2))
    return derivatives


def weighted_norm(u: SampledFunction, s: int, gamma: float, cut: Optional[CutoffPair] = None) -> float:
    """
    (Σ_{i<=s} ∫_0^∞ |t^{-γ} (t∂_t)^i v|² dt)^{1/2} with v = ωu when a cut-off is given.

    The integral runs over the sample grid of u.
    """
    if s < 0:
        raise ValueError(f"s must be a non-negative integer, got {s}")
    values = u(u.grid) if u.closed_form is not None else u.values
    if cut is not None:
        values = values * cut.omega(u.grid)
    log_grid = np.log(u.grid)
    total = 0.0
    for derivative in log_derivatives(u.grid, values, s):
        # dt = t ds
        total += float(simpson(np.abs(derivative) ** 2 * u.grid ** (1.0 - 2.0 * gamma), x=log_grid))
    return float(np.sqrt(total))
