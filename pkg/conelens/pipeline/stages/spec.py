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
Loading of the operator spec: the first stage of every command.
"""

from pathlib import Path
from typing import Optional
from argparse import Namespace

from rich.console import Console

from conelens.constants import SpecKind
from conelens.errors import CommandKindMismatch, SpecParseError
from conelens.models import OperatorSpec, load_spec, to_cone_operator, to_operator
from conelens.utils.scaffold import fixture_file_name, get_resource_path, is_file_in_resources
from conelens.utils.structure import Config, Report

from ..base import BaseStage

EDGE_COMMANDS = ("edge",)


def resolve_spec_path(spec: str) -> Path:
    """
    A spec argument is either a path or the name of a packaged fixture (fix-a, FIX-C, ...).

    Raises:
        SpecParseError: neither a file nor a packaged fixture.
    """
    path = Path(spec)
    if path.is_file():
        return path

    file_name = fixture_file_name(spec)
    if is_file_in_resources(file_name):
        return Path(str(get_resource_path(file_name=file_name)))

    raise SpecParseError(f"spec file not found: {spec}")


class SpecStage(BaseStage):

    arg_table = {
        "--spec": {"type": str, "required": True, "help": "Operator spec file, or a packaged fixture name"},
        "--tol-cluster": {"type": float, "default": None, "help": "Relative root clustering tolerance"},
        "--seed": {"type": int, "default": None, "help": "Random seed of test inputs and η rays"},
    }

    def __init__(self, args: Namespace, config: Config, console: Optional[Console] = None):
        super().__init__(args, config, console)

    def run(self, context: Optional[Report] = None) -> Report:
        command = self.option("command", "")
        path = resolve_spec_path(self.option("spec"))
        spec: OperatorSpec = load_spec(path)

        if command in EDGE_COMMANDS and spec.kind != SpecKind.EDGE:
            raise CommandKindMismatch(f"command '{command}' needs an edge spec, {path.name} is a {spec.kind} spec")

        tolerances = self.config.tolerances
        if spec.tolerances is not None:
            tolerances = spec.tolerances.apply(tolerances)
        tolerances = tolerances.merged({"cluster": self.option("tol_cluster")})

        report = context if context is not None else Report(command=command)
        report.spec = spec.model_dump(exclude_none=True)
        report.seed = self.option("seed", self.config.seed)
        report.tolerances = tolerances
        report.artifacts["spec"] = spec
        report.artifacts["operator"] = to_operator(spec)
        if command not in EDGE_COMMANDS:
            report.artifacts["cone"] = to_cone_operator(spec)

        self.console.print(f"[bold green]Loaded {spec.kind} spec from:[/bold green] {path}")
        return report
