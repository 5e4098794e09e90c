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
This module provides the command line interface of the project.
"""

import argparse
from typing import Optional, Sequence

from rich.pretty import Pretty
from rich.console import Console

from .errors import ConelensError
from .utils import load_config
from .pipeline import STAGE_ENTRIES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Domains of cone and edge operators")
    parser.add_argument("-c", "--config", type=str, default="", help="Config file path, or packaged config name")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for entry_name, stage_entry in STAGE_ENTRIES.items():
        sub_parser = subparsers.add_parser(entry_name, help=stage_entry.entry_help)
        arg_groups = {}
        setted_args = set()
        for s in stage_entry.stages:
            for args_name, args_setting in s.arg_table.items():

                if args_name in setted_args:
                    continue

                args_setting = dict(args_setting)
                if "group" in args_setting:
                    group_name = args_setting.pop("group")
                    if group_name not in arg_groups:
                        arg_groups[group_name] = sub_parser.add_mutually_exclusive_group(required=True)

                    arg_groups[group_name].add_argument(args_name, **args_setting)
                else:
                    sub_parser.add_argument(args_name, **args_setting)

                setted_args.add(args_name)
    return parser


def cli(argv: Optional[Sequence[str]] = None, console: Optional[Console] = None) -> int:
    """
    Command line interface of the project.

    Returns:
        int: 0 if every executed check passed, 1 if a check failed, 2 on an error of the input
    """
    args = build_parser().parse_args(argv)
    console = console if console is not None else Console()

    try:
        if args.config:
            config = load_config(args.config)
            console.print(f"[bold green]Loaded config from:[/bold green] {args.config}")

        else:
            console.print("[bold yellow]Using default configuration[/bold yellow]")
            config = load_config()

        console.print(Pretty(config, expand_all=True))

        report = STAGE_ENTRIES[args.command](args, config, console).run(None)
    except ConelensError as e:
        console.print(f"[bold red]{type(e).__name__}:[/bold red] {e}")
        return 2

    return 0 if report.passed else 1
