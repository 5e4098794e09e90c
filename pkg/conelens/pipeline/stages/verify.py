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
Numerical verification of an assembled domain against the oracle: cancellation of the
singular terms, quadrature golden values, and agreement of the contour realization of
G_σ^{(ℓ)} and ζ_σ with their closed forms.
"""

from argparse import Namespace
from typing import Optional

import numpy as np
from rich.console import Console
from rich.progress import Progress

from conelens.cone import DomainDescription, principal_sites
from conelens.errors import FitResidualTooLarge
from conelens.mellin.asymptotics import AsymptoticElement
from conelens.oracle import (
    CutoffPair,
    SampledFunction,
    apply_cone_jet,
    closed_form_G,
    contour_G,
    contour_radius,
    contour_zeta,
    jet_function,
    membership_check,
    mellin_numeric,
    zeta_closed_form,
)
from conelens.utils.structure import Config, Report

from ..base import BaseStage
from .common import fmt, require_context

# u(t) = t³(1 - t)³ on (0, 1): û(1) = B(4, 4), û(0) = B(3, 4)
BETA_GOLDEN = ((1.0, 1.0 / 140.0), (0.0, 1.0 / 60.0))
SHIFT_POINTS = (0.25, -1.5 + 0.3j)


def beta_input(power: int = 3) -> SampledFunction:
    """t^power (1 - t)³ on (0, 1), vanishing to order power at 0."""
    return SampledFunction.from_callable(
        lambda t: t**power * (1.0 - t) ** 3, support=(0.0, 1.0), leading_exponent=power, label=f"t^{power}(1-t)^3"
    )


def sampled_element(v: AsymptoticElement, cut: CutoffPair) -> SampledFunction:
    """ω·v as a closed-form function on (0, support of ω)."""
    return SampledFunction.from_callable(lambda t: v.evaluate(t), support=(0.0, cut.support), label=str(v))


class VerifyStage(BaseStage):

    arg_table = {}

    def __init__(self, args: Namespace, config: Config, console: Optional[Console] = None):
        super().__init__(args, config, console)
        self.cut = CutoffPair()

    def run(self, context: Optional[Report] = None) -> Report:
        context = require_context(context, "verify")
        dd: Optional[DomainDescription] = context.artifacts.get("domain")
        if dd is None:
            raise ValueError("Context with an assembled domain is required for the verify stage")

        self.check_cancellation(context, dd)
        self.check_quadrature(context)

        rng = np.random.default_rng(context.seed)
        inputs = [beta_input(max(3, dd.operator.mu + 1))] + self.jet_inputs(dd, rng)
        context.sections["verify"] = {"inputs": [u.label for u in inputs], "contour": []}

        with Progress(console=self.console) as progress:
            task = progress.add_task("[cyan]Contour oracle...", total=len(inputs))
            worst_G = [0.0] * len(dd.sigma_data)
            worst_zeta = [0.0] * len(dd.sigma_data)
            failures: list[Optional[str]] = [None] * len(dd.sigma_data)
            for u in inputs:
                for i in range(len(dd.sigma_data)):
                    try:
                        g_error, zeta_error = self.compare_contour(context, dd, i, u)
                    except FitResidualTooLarge as e:
                        failures[i] = failures[i] or f"{u.label}: {e}"
                        continue
                    worst_G[i] = max(worst_G[i], g_error)
                    worst_zeta[i] = max(worst_zeta[i], zeta_error)
                progress.update(task, advance=1)

        tol = context.tolerances
        for i, pd in enumerate(dd.sigma_data):
            detail = f"σ={fmt(pd.sigma)}"
            if failures[i] is not None:
                context.check(f"verify.contour_G[{i}]", None, tol.fit, passed=False, detail=failures[i])
            else:
                context.check(f"verify.contour_G[{i}]", worst_G[i], tol.agreement, detail=detail)
            context.check(f"verify.zeta[{i}]", worst_zeta[i], tol.agreement, detail=detail)
            context.sections["verify"]["contour"].append(
                {"sigma": pd.sigma, "G_error": worst_G[i], "zeta_error": worst_zeta[i]}
            )
        return context

    def check_cancellation(self, context: Report, dd: DomainDescription):
        """A(ωv) keeps no term with Re p >= 1/2 and lies in L², and ωv itself lies in K^{μ,0} near 0."""
        tol = context.tolerances
        op = dd.operator
        for i, pd in enumerate(dd.sigma_data):
            detail = f"σ={fmt(pd.sigma)}"
            residual = 0.0
            membership = []
            image_membership = []
            for v in dd.bases[i]:
                image = apply_cone_jet(op, v, self.cut)
                residual = max(residual, image.cancellation_residual(v.scale))
                image_membership.append(
                    membership_check(image.element, 0, 0.0, atol=tol.cancellation * v.scale)
                )
                membership.append(membership_check(sampled_element(v, self.cut), op.mu, 0.0, self.cut, tol))
            context.check(f"verify.cancellation[{i}]", residual, tol.cancellation, detail=detail)
            for name, results in (("image_membership", image_membership), ("membership", membership)):
                failed = next((m for m in results if not m.passed), None)
                context.check(
                    f"verify.{name}[{i}]",
                    None,
                    None,
                    passed=failed is None,
                    detail=(failed or results[0]).diagnostic if results else detail,
                )

    def check_quadrature(self, context: Report):
        tol = context.tolerances
        u = beta_input()
        golden = max(abs(mellin_numeric(u, z, self.cut) - value) / value for z, value in BETA_GOLDEN)
        context.check("verify.mellin_beta", golden, tol.agreement)

        tu = beta_input(4)
        shift = 0.0
        for z in SHIFT_POINTS:
            expected = mellin_numeric(u, z + 1, self.cut)
            shift = max(shift, abs(mellin_numeric(tu, z, self.cut) - expected) / abs(expected))
        context.check("verify.mellin_shift", shift, tol.agreement)

    def jet_inputs(self, dd: DomainDescription, rng: np.random.Generator) -> list[SampledFunction]:
        """config.random_inputs functions with random jets, cycling over the poles."""
        if not dd.sigma_data:
            return []
        inputs = []
        for k in range(self.config.random_inputs):
            pd = dd.sigma_data[k % len(dd.sigma_data)]
            values = rng.normal(size=pd.n_sigma + 1) + 1j * rng.normal(size=pd.n_sigma + 1)
            inputs.append(jet_function([(pd.sigma, pd.n_sigma)], values, cut=self.cut))
        return inputs

    def compare_contour(self, context: Report, dd: DomainDescription, i: int, u: SampledFunction) -> tuple[float, float]:
        """
        Largest relative differences between contour and closed form of G_σ^{(ℓ)}u over ℓ,
        and of ζ_σ(u).

        Raises:
            FitResidualTooLarge
        """
        tol = context.tolerances
        pd = dd.sigma_data[i]
        f0 = dd.symbols[0]
        sites = principal_sites(f0, tol)
        zeta = zeta_closed_form(pd, u, tol, self.cut)

        principals = {}
        g_error, zeta_error = 0.0, 0.0
        for ell in range(pd.mu_sigma + 1):
            eps = contour_radius(sites, pd.sigma, ell)
            xs = dd.x[(i, ell)]
            fit = contour_G(
                pd,
                ell,
                dd.g[ell],
                u,
                eps,
                f0,
                len(xs) - 1,
                nodes=self.config.contour_nodes,
                probe_points=self.config.probe_points,
                probe_range=self.config.probe_range,
                tolerances=tol,
                cut=self.cut,
                principal=principals.get(eps),
            )
            principals[eps] = fit.principal
            closed = closed_form_G(pd, xs, ell, zeta)
            scale = max(closed.scale, fit.principal.scale, np.finfo(float).tiny)
            g_error = max(g_error, (fit.element - closed).scale / scale)

            if ell == 0:
                measured = contour_zeta(fit.principal)
                scale = max(float(np.max(np.abs(zeta))), fit.principal.scale, np.finfo(float).tiny)
                zeta_error = float(np.max(np.abs(measured - zeta))) / scale
        return g_error, zeta_error
