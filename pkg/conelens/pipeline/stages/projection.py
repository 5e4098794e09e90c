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
The projection Q of E_S onto the asymptotic part of the domain.
"""

from typing import Optional

import numpy as np
from rich.table import Table

from conelens.cone import DomainDescription
from conelens.utils.structure import Report

from ..base import BaseStage
from .common import matrix_rows, require_context


class ProjectionStage(BaseStage):

    arg_table = {}

    def run(self, context: Optional[Report] = None) -> Report:
        context = require_context(context, "projection")
        dd: Optional[DomainDescription] = context.artifacts.get("domain")
        if dd is None:
            raise ValueError("Context with an assembled domain is required for the projection stage")

        tol = context.tolerances
        Q = dd.projection
        legend = dd.S.legend()
        context.sections["projection"] = {"legend": legend, "matrix": Q}

        defect = float(np.max(np.abs(Q @ Q - Q), initial=0.0))
        context.check("projection.idempotency", defect, tol.idempotency)

        identity = 0.0
        for b in dd.basis_elements():
            v = dd.S.vector(b)
            identity = max(identity, float(np.max(np.abs(Q @ v - v), initial=0.0)) / max(1.0, float(np.max(np.abs(v)))))
        context.check("projection.identity", identity, tol.idempotency)

        rank = int(np.linalg.matrix_rank(Q, tol=np.sqrt(tol.idempotency))) if Q.size else 0
        context.check("projection.rank", abs(rank - dd.dimension), 0, detail=f"rank {rank}, dim 𝔈 {dd.dimension}")

        table = Table(title="Q on the coordinates of E_S")
        table.add_column("")
        for name in legend:
            table.add_column(name)
        for name, row in zip(legend, matrix_rows(Q)):
            table.add_row(name, *row)
        self.console.print(table)
        return context
