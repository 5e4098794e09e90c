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
Sampling of edge domain data along rays η = λη₀ and the homogeneity and classicality
checks of the resulting symbols.
"""

import warnings
from concurrent.futures import Future, ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from conelens.errors import SlopeRegressionFailure
from conelens.utils.structure import CheckResult, Tolerances

from .kappa import kappa_matrix
from .operator import EdgeOperator, EtaSample
from .sample import EdgeDomainSample, EdgeStructure, edge_domain_sample, edge_structure

SampleKey = tuple[int, float]

# residual entries below this level relative to the compared symbols count as rounding
NOISE_LEVEL = 64 * np.finfo(float).eps


def random_rays(q: int, count: int, seed: int = 0) -> list[np.ndarray]:
    """count unit vectors in R^q drawn from a normal distribution and normalized."""
    rng = np.random.default_rng(seed)
    rays = []
    while len(rays) < count:
        direction = rng.normal(size=q)
        norm = np.linalg.norm(direction)
        if norm > 1e-12:
            rays.append(direction / norm)
    return rays


def sweep(
    op: EdgeOperator,
    rays: Sequence[np.ndarray],
    lambdas: Sequence[float],
    tolerances: Tolerances = Tolerances(),
    workers: int = 4,
    structure: Optional[EdgeStructure] = None,
    on_sample: Optional[Callable[[SampleKey, EdgeDomainSample], None]] = None,
) -> dict[SampleKey, EdgeDomainSample]:
    """
    Evaluate edge_domain_sample at η = λ·ray for every ray and λ.

    Samples are computed by a thread pool; results are merged and on_sample is called in the
    calling thread, in completion order.

    Args:
        rays: unit directions η₀
        lambdas: dilations, all >= 1
        workers: thread count, 1 evaluates sequentially
        on_sample: callback receiving ((ray index, λ), sample)

    Returns:
        dict[(ray index, λ), EdgeDomainSample]
    """
    if structure is None:
        structure = edge_structure(op, tolerances)

    keys = [(i, float(lam)) for i in range(len(rays)) for lam in lambdas]
    samples: dict[SampleKey, EdgeDomainSample] = {}

    def evaluate(key: SampleKey) -> EdgeDomainSample:
        i, lam = key
        return edge_domain_sample(op, EtaSample(tuple(lam * np.asarray(rays[i]))), tolerances, structure)

    if workers <= 1:
        for key in keys:
            samples[key] = evaluate(key)
            if on_sample is not None:
                on_sample(key, samples[key])
        return samples

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures: dict[Future, SampleKey] = {executor.submit(evaluate, key): key for key in keys}
        for future in as_completed(futures):
            key = futures[future]
            samples[key] = future.result()
            if on_sample is not None:
                on_sample(key, samples[key])
    return samples


def regression_slope(lambdas: Sequence[float], values: Sequence[float]) -> Optional[float]:
    """
    Slope of log|value| against log λ over the nonzero values, None when every value is
    exactly zero.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    values = np.abs(np.asarray(values))
    nonzero = values > 0
    if not np.any(nonzero):
        return None
    if np.count_nonzero(nonzero) < 2:
        return -np.inf
    return float(np.polyfit(np.log(lambdas[nonzero]), np.log(values[nonzero]), 1)[0])


@dataclass
class HomogeneityReport:
    """
    Properties:
        checks: list[CheckResult]
        slopes: check name -> per ray slope, None for an exactly vanishing residual
        samples: the evaluated EdgeDomainSamples
    """

    checks: list[CheckResult] = field(default_factory=list)
    slopes: dict[str, list[Optional[float]]] = field(default_factory=dict)
    samples: dict[SampleKey, EdgeDomainSample] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)


def _entry_slopes(lambdas: Sequence[float], residuals: np.ndarray) -> list[Optional[float]]:
    """residuals has shape (len(lambdas), entries); one slope per entry."""
    return [regression_slope(lambdas, residuals[:, k]) for k in range(residuals.shape[1])]


def _denoised(values: np.ndarray, scale: float) -> np.ndarray:
    """Zero out entries at rounding level relative to scale."""
    values = np.array(values, dtype=complex)
    values[np.abs(values) <= NOISE_LEVEL * scale] = 0.0
    return values


def _worst(slopes: Sequence[Optional[float]]) -> Optional[float]:
    measured = [s for s in slopes if s is not None]
    return max(measured) if measured else None


def homogeneity_checks(
    op: EdgeOperator,
    rays: Sequence[np.ndarray],
    lambdas: Sequence[float],
    tolerances: Tolerances = Tolerances(),
    workers: int = 4,
    strict: bool = False,
    on_sample: Optional[Callable[[SampleKey, EdgeDomainSample], None]] = None,
) -> HomogeneityReport:
    """
    Checks on the sampled symbols along every ray η = λη₀:

    - idempotency of p_E(η) and p_E(η) = id on the embedded range, at every sample
    - x̄(λη₀) = λ^{-μ} x̄(η₀)
    - x̃ - x̄ decays with log-log slope <= -(μ+1) + slope_margin (classicality)
    - K(λη₀) = λ^{-μ} κ_λ K(η₀) for K(η) = κ_{|η|} X̄(η), X̄ the principal range matrix
      scaled by |η|^{-μ}
    - π(λη₀) -> π̄(η₀) with slope <= -1 + slope_margin

    An exactly vanishing residual passes and is reported as exact.

    Raises:
        SlopeRegressionFailure: a slope bound fails and strict is set.
    """
    if min(lambdas) < 1:
        raise ValueError("dilations must be >= 1")
    structure = edge_structure(op, tolerances)
    samples = sweep(op, rays, lambdas, tolerances, workers, structure, on_sample)
    report = HomogeneityReport(samples=samples)
    lambdas = sorted(float(lam) for lam in lambdas)
    base = lambdas[0]

    idempotency = max(
        (s.idempotency_defect() / max(1.0, float(np.linalg.norm(s.p_E))) for s in samples.values()), default=0.0
    )
    report.checks.append(
        CheckResult("edge.idempotency", idempotency, tolerances.idempotency, idempotency <= tolerances.idempotency)
    )
    range_defect = max((s.range_defect() for s in samples.values()), default=0.0)
    report.checks.append(
        CheckResult("edge.range_identity", range_defect, tolerances.idempotency, range_defect <= tolerances.idempotency)
    )

    homogeneity, twisted = 0.0, 0.0
    classicality_bound = -(op.mu + 1) + tolerances.slope_margin
    limit_bound = -1 + tolerances.slope_margin
    report.slopes = {"edge.classicality": [], "edge.projection_limit": []}

    for i in range(len(rays)):
        first = samples[(i, base)]
        x_bar_0 = first.stacked("bar")
        k_0 = first.kappa.matrix @ first.range_matrix(principal=True) * first.eta.norm ** (-op.mu)

        residuals, distances = [], []
        for lam in lambdas:
            sample = samples[(i, lam)]
            ratio = lam / base
            homogeneity = max(homogeneity, _relative(sample.stacked("bar"), ratio ** (-op.mu) * x_bar_0))

            k_lam = sample.kappa.matrix @ sample.range_matrix(principal=True) * sample.eta.norm ** (-op.mu)
            expected = ratio ** (-op.mu) * (kappa_matrix(ratio, structure.S).matrix @ k_0)
            twisted = max(twisted, _relative(k_lam, expected))

            x_tilde, x_bar = sample.stacked("tilde"), sample.stacked("bar")
            scale = max(np.max(np.abs(x_tilde), initial=0.0), np.max(np.abs(x_bar), initial=0.0))
            residuals.append(_denoised(x_tilde - x_bar, scale))
            distance = float(np.linalg.norm(sample.pi - sample.pi_bar))
            distances.append(0.0 if distance <= NOISE_LEVEL * max(1.0, float(np.linalg.norm(sample.pi_bar))) else distance)

        classicality = _worst(_entry_slopes(lambdas, np.array(residuals).reshape(len(lambdas), -1)))
        report.slopes["edge.classicality"].append(classicality)
        limit = regression_slope(lambdas, distances)
        report.slopes["edge.projection_limit"].append(limit)

        for name, slope, bound in (
            ("edge.classicality", classicality, classicality_bound),
            ("edge.projection_limit", limit, limit_bound),
        ):
            passed = slope is None or slope <= bound
            detail = "exact" if slope is None else f"ray {i}"
            report.checks.append(CheckResult(f"{name}[{i}]", slope, bound, passed, detail))
            if not passed and strict:
                raise SlopeRegressionFailure(f"{name} slope {slope:.3g} on ray {i} exceeds {bound:.3g}", slope, bound)

    report.checks.append(
        CheckResult("edge.homogeneity", homogeneity, tolerances.homogeneity, homogeneity <= tolerances.homogeneity)
    )
    report.checks.append(CheckResult("edge.twisted", twisted, tolerances.homogeneity, twisted <= tolerances.homogeneity))

    if all(s is None for s in report.slopes["edge.classicality"]):
        warnings.warn("classicality residual x̃ - x̄ vanishes identically on every ray", stacklevel=2)
    return report
