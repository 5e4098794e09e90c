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

"""
The constants of the project.

The constants are used to store the configurations of the project,
and the enum types are used to define the types of the project.
"""

from enum import StrEnum


class Settings(StrEnum):
    """configurations of the project."""

    PACKAGE_NAME = "conelens"
    RESOURCE_NAME = "resources"
    CONFIG_NAME = "config"
    DEFAULT_CONFIG = "default.toml"
    REPORT_FILE = "report.json"


class ArithOp(StrEnum):
    """
    Enum type of the field operations on rational functions.

    - ADD, MUL: binary operations, both operands required.
    - NEG, INVERT: unary operations, the second operand is ignored.
    """

    ADD = "add"
    MUL = "mul"
    NEG = "neg"
    INVERT = "invert"


class SpecKind(StrEnum):
    """enum type of operator spec kind."""

    CONE = "cone"
    EDGE = "edge"


class CutoffName(StrEnum):
    """enum type of the smooth cut-off bridges."""

    EXP_BRIDGE = "exp-bridge"


class MembershipCriterion(StrEnum):
    """
    enum type of the criterion used by a membership check.

    ! The value is written into reports, keep it stable.
    """

    EXACT = "exact"
    SHELL = "shell"
