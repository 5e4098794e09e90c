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
The structure module defines the configuration of the numerical pipeline (tolerances and
sampling settings), its loader, and the report that is passed between pipeline stages.
"""

import json
import dataclasses
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import toml

from conelens.constants import Settings
from .scaffold import get_resource_path


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances shared by all modules.

    Properties:
        cluster: float, relative root clustering tolerance, τ_cluster = cluster·(1 + max|root|)
        zero: float, relative level under which a coefficient counts as zero (τ_zero)
        line: float, distance of a pole to a weight line that counts as a collision (τ_line)
        fit: float, admissible residual of the contour fit
        agreement: float, oracle against closed form
        cancellation: float, relative size of surviving terms with Re p >= 1/2
        idempotency: float, ‖Q² - Q‖
        homogeneity: float, relative error of the exact homogeneity checks
        jet: float, accuracy of jet-prescribed test functions
        recursion: float, relative residual of the g recursion identity
        slope_margin: float, slack on regression slope bounds

    Methods:
        merged(overrides: dict) -> Tolerances: copy with the non-None overrides applied
    """

    cluster: float = 1e-8
    zero: float = 1e-10
    line: float = 1e-6
    fit: float = 1e-6
    agreement: float = 1e-6
    cancellation: float = 1e-9
    idempotency: float = 1e-10
    homogeneity: float = 1e-9
    jet: float = 1e-7
    recursion: float = 1e-9
    slope_margin: float = 0.1

    def merged(self, overrides: Optional[dict[str, Optional[float]]]) -> "Tolerances":
        if not overrides:
            return self
        known = {f.name for f in dataclasses.fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"Unknown tolerance keys: {sorted(unknown)}")
        return dataclasses.replace(self, **{k: float(v) for k, v in overrides.items() if v is not None})


@dataclass
class Config:
    """
    The Config stores tolerances and the sampling settings of oracle and edge sweep.

    Properties:
        tolerances: Tolerances
        contour_nodes: int, quadrature nodes on each contour circle
        probe_points: int, t-samples used to fit contour values
        probe_range: list[float], [t_min, t_max] of the probe grid
        random_inputs: int, number of jet-generated inputs used by verify
        eta_rays: int, number of random ray directions of the edge sweep
        lambda_max: float, largest dilation λ of the edge sweep (grid 1, 2, 4, ...)
        seed: int, random seed recorded in reports
        workers: int, threads used by the edge sweep

    Methods:
        from_toml(path: str) -> Config: load Config from a toml file
    """

    tolerances: Tolerances = field(default_factory=Tolerances)
    contour_nodes: int = 128
    probe_points: int = 64
    probe_range: list[float] = field(default_factory=lambda: [1e-6, 1e-1])
    random_inputs: int = 10
    eta_rays: int = 8
    lambda_max: float = 1024.0
    seed: int = 0
    workers: int = 4

    @property
    def lambdas(self) -> list[float]:
        """Dilation grid 1, 2, 4, ... up to lambda_max."""
        count = int(np.floor(np.log2(self.lambda_max) + 1e-9)) + 1
        return [float(2**k) for k in range(max(count, 1))]

    @classmethod
    def from_toml(cls, path: str) -> "Config":
        data = toml.load(path)
        tolerances = Tolerances().merged(data.pop("tolerances", {}))
        return cls(tolerances=tolerances, **data)


def load_config(path: Optional[str] = None) -> Config:
    """
    Load Config from a toml file

    Args:
        path: path to toml file, or the name of a packaged config without suffix

    Returns:
        Config: Config object
    """

    if path is None:
        path = str(get_resource_path(file_name=Settings.DEFAULT_CONFIG, resource_name=Settings.CONFIG_NAME))
    elif not path.endswith(".toml"):
        path = str(get_resource_path(file_name=f"{path}.toml", resource_name=Settings.CONFIG_NAME))

    return Config.from_toml(path)


@dataclass
class CheckResult:
    """
    One executed check.

    Properties:
        name: str, stable identifier of the check
        value: measured residual, slope, or None for boolean checks
        tolerance: bound the value was checked against
        passed: bool
        detail: str, free text shown next to failures
    """

    name: str
    value: Optional[float]
    tolerance: Optional[float]
    passed: bool
    detail: str = ""


@dataclass
class Report:
    """
    Context passed through the stages of one command.

    Properties:
        command: str, the command name
        spec: dict, echo of the parsed spec
        seed: int
        tolerances: Tolerances
        sections: dict, JSON-ready output sections
        checks: list[CheckResult]
        artifacts: dict, in-memory objects shared between stages, never serialized

    Methods:
        check(name, value, tolerance, passed=None, detail="") -> CheckResult
        to_json() -> dict
    """

    command: str
    spec: dict = field(default_factory=dict)
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    sections: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    artifacts: dict[str, Any] = field(default_factory=dict)

    def check(
        self,
        name: str,
        value: Optional[float],
        tolerance: Optional[float],
        passed: Optional[bool] = None,
        detail: str = "",
    ) -> CheckResult:
        if passed is None:
            passed = value is not None and tolerance is not None and bool(value <= tolerance)
        result = CheckResult(name, None if value is None else float(value), tolerance, bool(passed), detail)
        self.checks.append(result)
        return result

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "spec": self.spec,
            "seed": self.seed,
            "tolerances": dataclasses.asdict(self.tolerances),
            "sections": self.sections,
            "checks": [dataclasses.asdict(c) for c in self.checks],
            "passed": self.passed,
        }


class ReportEncoder(json.JSONEncoder):
    """
    JSON encoder of reports: complex numbers as [re, im], arrays as nested lists, objects
    with a to_json method through that method.
    """

    def default(self, o):
        if isinstance(o, complex):
            return [o.real, o.imag]
        if isinstance(o, np.ndarray):
            if np.iscomplexobj(o):
                return np.stack([o.real, o.imag], axis=-1).tolist()
            return o.tolist()
        if isinstance(o, np.generic):
            return self.default(o.item()) if isinstance(o.item(), complex) else o.item()
        if hasattr(o, "to_json"):
            return o.to_json()
        if dataclasses.is_dataclass(o):
            return dataclasses.asdict(o)
        return super().default(o)
