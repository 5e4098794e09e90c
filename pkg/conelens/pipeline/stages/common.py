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
Helpers shared by the stages.
"""

from typing import Optional

import numpy as np

from conelens.utils.structure import Report


def require_context(context: Optional[Report], stage: str) -> Report:
    if context is None or "operator" not in context.artifacts:
        raise ValueError(f"Context with a loaded spec is required for the {stage} stage")
    return context


def fmt(value: complex, digits: int = 6) -> str:
    """Compact text of a complex number, the imaginary part omitted when it is zero."""
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:.{digits}g}"
    return f"{value.real:.{digits}g}{value.imag:+.{digits}g}i"


def matrix_rows(matrix: np.ndarray, digits: int = 4) -> list[list[str]]:
    return [[fmt(v, digits) for v in row] for row in np.asarray(matrix)]
