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

from conelens.pipeline.base import BaseStageEntry
from conelens.pipeline.stages import (
    SpecStage,
    PoleStage,
    DomainStage,
    ProjectionStage,
    VerifyStage,
    EdgeStage,
    EchoStage,
)


class AnalyzeEntry(BaseStageEntry):
    stages = (SpecStage, PoleStage, EchoStage)

    entry_name: str = "analyze"
    entry_help: str = "Find the poles σ of f_0^-1 in the weight strip with their orders and levels"


class DomainEntry(BaseStageEntry):
    stages = (SpecStage, PoleStage, DomainStage, EchoStage)

    entry_name: str = "domain"
    entry_help: str = "Assemble the asymptotic part of the maximal domain of a cone operator"


class ProjectEntry(BaseStageEntry):
    stages = (SpecStage, PoleStage, DomainStage, ProjectionStage, EchoStage)

    entry_name: str = "project"
    entry_help: str = "Build the projection of E_S onto the asymptotic part of the domain"


class VerifyEntry(BaseStageEntry):
    stages = (SpecStage, PoleStage, DomainStage, ProjectionStage, VerifyStage, EchoStage)

    entry_name: str = "verify"
    entry_help: str = "Check the assembled domain against the quadrature and contour oracle"


class EdgeEntry(BaseStageEntry):
    stages = (SpecStage, EdgeStage, EchoStage)

    entry_name: str = "edge"
    entry_help: str = (
        "Sample the domain symbols of an edge operator along random rays and check homogeneity, "
        "classicality and idempotency"
    )
