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
The η sweep of an edge operator: domain samples along random rays and the homogeneity,
classicality and projection checks of the resulting symbols.
"""

import dataclasses
from typing import Optional

import numpy as np
from rich.progress import Progress
from rich.table import Table

from conelens.edge import EdgeOperator, homogeneity_checks, random_rays
from conelens.utils.structure import Report

from ..base import BaseStage
from .common import fmt, require_context


class EdgeStage(BaseStage):

    arg_table = {
        "--eta-rays": {"type": int, "default": None, "help": "Number of random η directions"},
        "--lambda-max": {"type": float, "default": None, "help": "Largest dilation of the sweep, grid 1, 2, 4, ..."},
    }

    def run(self, context: Optional[Report] = None) -> Report:
        context = require_context(context, "edge")
        op: EdgeOperator = context.artifacts["operator"]
        tol = context.tolerances

        config = dataclasses.replace(
            self.config,
            eta_rays=self.option("eta_rays", self.config.eta_rays),
            lambda_max=self.option("lambda_max", self.config.lambda_max),
        )
        rays = random_rays(op.q, config.eta_rays, context.seed)
        lambdas = config.lambdas

        with Progress(console=self.console) as progress:
            task = progress.add_task("[cyan]Sampling edge symbols...", total=len(rays) * len(lambdas))
            result = homogeneity_checks(
                op,
                rays,
                lambdas,
                tol,
                workers=config.workers,
                on_sample=lambda key, sample: progress.update(task, advance=1),
            )

        f0 = op.f0
        scaling = 0.0
        for sample in result.samples.values():
            expected = f0 * sample.eta.bracket**op.mu
            scaling = max(scaling, (sample.symbols[0] - expected).norm / max(expected.norm, np.finfo(float).tiny))
        context.check("edge.principal_scaling", scaling, tol.homogeneity)
        context.checks.extend(result.checks)

        context.sections["edge"] = {
            "rays": rays,
            "lambdas": lambdas,
            "legend": result.samples[(0, lambdas[0])].S.legend() if result.samples else [],
            "slopes": result.slopes,
            "samples": [
                {"ray": i, "lambda": lam, "eta": list(sample.eta.eta), "pi": sample.pi, "p_E": sample.p_E}
                for (i, lam), sample in sorted(result.samples.items())
            ],
        }

        table = Table(title=f"Regression slopes over λ ∈ [1, {lambdas[-1]:g}]")
        table.add_column("ray")
        table.add_column("η₀")
        for name in result.slopes:
            table.add_column(name)
        for i, ray in enumerate(rays):
            slopes = ["exact" if s[i] is None else f"{s[i]:.3f}" for s in result.slopes.values()]
            table.add_row(str(i), ", ".join(fmt(c, 3) for c in ray), *slopes)
        self.console.print(table)
        return context
