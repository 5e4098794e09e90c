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
Assembly of the asymptotic part of the maximal domain and its structural checks.
"""

from typing import Optional

from rich.table import Table

from conelens.cone import DomainDescription, assemble_domain, hat_basis, recursion_residual, theta
from conelens.utils.structure import Report

from ..base import BaseStage
from .common import fmt, matrix_rows, require_context


def domain_section(dd: DomainDescription) -> dict:
    return {
        "dimension": dd.dimension,
        "g": [{"num": list(g.num.coeffs), "den": list(g.den.coeffs)} for g in dd.g],
        "poles": [
            {
                "sigma": pd.sigma,
                "m_sigma": dd.m_sigma[i],
                "B": dd.B[i],
                "hat_basis": [b.to_json() for b in dd.hat_bases[i]],
                "basis": [b.to_json() for b in dd.bases[i]],
                "x": {str(ell): list(dd.x[(i, ell)]) for ell in range(pd.mu_sigma + 1)},
                "N": [dd.N[(i, ell)] for ell in range(pd.mu_sigma + 1)],
            }
            for i, pd in enumerate(dd.sigma_data)
        ],
    }


class DomainStage(BaseStage):

    arg_table = {}

    def run(self, context: Optional[Report] = None) -> Report:
        context = require_context(context, "domain")
        tol = context.tolerances
        dd = assemble_domain(context.artifacts["cone"], tol)
        context.artifacts["domain"] = dd
        context.sections["domain"] = domain_section(dd)

        for j in range(dd.operator.mu):
            context.check(f"domain.recursion[{j}]", recursion_residual(dd.symbols, dd.g, j), tol.recursion)

        for i, pd in enumerate(dd.sigma_data):
            expected = pd.n_sigma + 1
            mismatch = max(abs(len(dd.hat_bases[i]) - expected), abs(len(dd.bases[i]) - expected))
            context.check(f"domain.dimension[{i}]", mismatch, 0, detail=f"σ={fmt(pd.sigma)}, n_σ+1={expected}")

            restriction = 0.0
            for b, hb in zip(dd.bases[i], hat_basis(pd)):
                restriction = max(restriction, (theta(pd, b) - hb).scale)
                restriction = max(restriction, (dd.theta_inv(i, hb) - b).scale)
            context.check(f"domain.theta[{i}]", restriction, tol.zero, detail=f"σ={fmt(pd.sigma)}")

        self._print(dd)
        return context

    def _print(self, dd: DomainDescription):
        table = Table(title=f"Asymptotic part of the domain, dim = {dd.dimension}")
        for column in ("σ", "Ê_σ", "𝔈_σ", "B_σ"):
            table.add_column(column)
        for i, pd in enumerate(dd.sigma_data):
            table.add_row(
                fmt(pd.sigma),
                "\n".join(str(b) for b in dd.hat_bases[i]),
                "\n".join(str(b) for b in dd.bases[i]),
                "\n".join(" ".join(row) for row in matrix_rows(dd.B[i])),
            )
        self.console.print(table)
