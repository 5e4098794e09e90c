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
The Σ table: poles of f_0^{-1} in the strip 1/2 - μ < Re z < 1/2.
"""

from typing import Optional

from rich.table import Table

from conelens.cone import conormal_symbols, pole_set
from conelens.utils.structure import Report

from ..base import BaseStage
from .common import fmt, require_context


class PoleStage(BaseStage):

    arg_table = {}

    def run(self, context: Optional[Report] = None) -> Report:
        context = require_context(context, "pole")
        op = context.artifacts["cone"]
        symbols = conormal_symbols(op)
        poles = pole_set(symbols[0], op.mu, context.tolerances)

        context.artifacts["poles"] = poles
        context.sections["symbols"] = [list(f.coeffs) for f in symbols]
        context.sections["poles"] = [
            {"sigma": pd.sigma, "n_sigma": pd.n_sigma, "mu_sigma": pd.mu_sigma, "r": list(pd.r)} for pd in poles
        ]

        table = Table(title=f"Σ: poles of f_0^-1 in {0.5 - op.mu:g} < Re z < 0.5")
        for column in ("σ", "n_σ", "μ_σ", "r"):
            table.add_column(column)
        for pd in poles:
            table.add_row(fmt(pd.sigma), str(pd.n_sigma), str(pd.mu_sigma), ", ".join(fmt(r) for r in pd.r))
        self.console.print(table)
        return context
