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
Output of a finished report: the table of executed checks on the console and, on request,
the machine readable report.
"""

import json
from pathlib import Path
from typing import Optional

from rich.table import Table

from conelens.constants import Settings
from conelens.utils.structure import Report, ReportEncoder

from ..base import BaseStage
from .common import require_context


class EchoStage(BaseStage):

    arg_table = {
        "--json-out": {"type": str, "default": "", "help": "Write the report as JSON to this path"},
    }

    def run(self, context: Optional[Report] = None) -> Report:
        context = require_context(context, "echo")

        if context.checks:
            table = Table(title=f"Checks of '{context.command}' (seed {context.seed})")
            for column in ("check", "value", "tolerance", "status", "detail"):
                table.add_column(column)
            for c in context.checks:
                value = "-" if c.value is None else f"{c.value:.3g}"
                tolerance = "-" if c.tolerance is None else f"{c.tolerance:.3g}"
                status = "[green]pass[/green]" if c.passed else "[bold red]FAIL[/bold red]"
                table.add_row(c.name, value, tolerance, status, c.detail)
            self.console.print(table)

        output = self.option("json_out", "")
        if output:
            path = Path(output)
            if path.is_dir():
                path = path / Settings.REPORT_FILE
            path.write_text(json.dumps(context.to_json(), cls=ReportEncoder, indent=2), encoding="utf-8")
            self.console.print(f"[bold green]Report written to:[/bold green] {path}")

        failure = context.first_failure
        if failure is not None:
            self.console.print(f"[bold red]First failing check:[/bold red] {failure.name} {failure.detail}")
        return context
