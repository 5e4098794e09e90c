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
The base classes of pipeline stages.
"""
import argparse
import warnings
from typing import Any, Dict, Tuple, Optional, Type

from abc import ABC, abstractmethod
from rich.console import Console

from conelens.utils.structure import Config, Report


class BaseStage(ABC):
    """
    Properties:
        - arg_table: A dictionary that contains the arguments for the stage. The key is the argument name.
        - args: The parsed arguments. When Entry is initialized, the args will be passed to the stage.
        - config: The configuration of the stage.
        - console: The rich console the stage prints to.

    Abstract Methods:
        - run: Run the stage and update the context (Report) of the command.
    """

    arg_table: Dict[str, Dict[str, Any]] = {}

    def __init__(self, args: argparse.Namespace, config: Config, console: Optional[Console] = None):
        self.args = args
        self.config = config
        self.console = console if console is not None else Console()

    def option(self, name: str, default: Any = None) -> Any:
        """Value of a command line option, default when the option is absent or unset."""
        value = getattr(self.args, name, None)
        return default if value is None else value

    @abstractmethod
    def run(self, context: Optional[Report] = None) -> Report:
        """
        Run the stage and update the context

        Args:
            - context: The report built by the previous stages

        Returns:
            - The updated report
        """
        raise NotImplementedError


class BaseStageEntry:
    """
    Properties:
        - stages: A tuple of the stages that will be run in this entry
        - entry_name: The sub command of this entry
        - entry_help: The help message of this entry
    """

    stages: Tuple[Type[BaseStage], ...]
    entry_name: str = ""
    entry_help: str = ""

    def __init__(self, args: argparse.Namespace, config: Config, console: Optional[Console] = None):
        """
        when user input the command conelens [entry_name] hit the enter key, the stages will be initialized.
        """
        self.args = args
        self.config = config
        if not getattr(self, "stages", None):
            raise NotImplementedError("No stages found")

        if self.entry_help == "":
            warnings.warn("No entry help provided")

        self._stages = [s(args, config, console) for s in self.stages]

    def run(self, context: Optional[Report] = None) -> Report:
        """
        Run every stage in order, each one receiving the report of the previous one.

        ! Attention: the first stage is expected to create the report, later stages raise
        ! ValueError when they are handed no context.
        """
        for stage in self._stages:
            context = stage.run(context)
        return context
