# -*- coding: utf-8 -*-

"""
Pydantic models of the operator spec file and its conversion to operator objects.

A spec is a TOML document:

    kind = "cone"
    mu = 2

    [[coefficients]]
    j = 0
    taylor = [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]

Complex numbers are [re, im] pairs; a bare real number is accepted as [re, 0].
"""

from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import toml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from conelens.cone.operator import ConeOperator
from conelens.edge.operator import EdgeOperator
from conelens.errors import SpecInvariantError, SpecParseError
from conelens.utils.structure import Tolerances


class CoefficientRecord(BaseModel):
    """
    Model for one coefficient a_{jα}(t), given by its Taylor coefficients at t = 0.
    """

    model_config = ConfigDict(extra="forbid")

    j: int = Field(ge=0)
    alpha: Optional[List[int]] = None
    taylor: List[Tuple[float, float]]

    @field_validator("taylor", mode="before")
    @classmethod
    def _real_entries(cls, value):
        if isinstance(value, list):
            return [[item, 0.0] if isinstance(item, (int, float)) else item for item in value]
        return value

    @property
    def series(self) -> list[complex]:
        return [complex(re, im) for re, im in self.taylor]

    @property
    def multi_index(self) -> tuple[int, ...]:
        return tuple(self.alpha or ())


class ToleranceOverrides(BaseModel):
    """
    Model for the optional [tolerances] table of a spec.
    """

    model_config = ConfigDict(extra="forbid")

    cluster: Optional[float] = None
    zero: Optional[float] = None
    line: Optional[float] = None
    fit: Optional[float] = None
    agreement: Optional[float] = None
    cancellation: Optional[float] = None
    idempotency: Optional[float] = None
    homogeneity: Optional[float] = None
    jet: Optional[float] = None
    recursion: Optional[float] = None
    slope_margin: Optional[float] = None

    def apply(self, tolerances: Tolerances) -> Tolerances:
        return tolerances.merged(self.model_dump())


class OperatorSpec(BaseModel):
    """
    Top-level model of a spec file.
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["cone", "edge"]
    mu: int = Field(ge=1)
    dim_y: Optional[int] = Field(default=None, ge=1)
    coefficients: List[CoefficientRecord] = Field(default_factory=list)
    tolerances: Optional[ToleranceOverrides] = None


def check_invariants(spec: OperatorSpec) -> OperatorSpec:
    """
    Raises:
        SpecInvariantError: j + |α| > μ, more than μ+1 Taylor coefficients, a multi-index of
            the wrong length, α in a cone spec, a missing dim_y, or a repeated (j, α).
    """
    if spec.kind == "cone" and spec.dim_y is not None:
        raise SpecInvariantError("dim_y is only allowed in edge specs")
    if spec.kind == "edge" and spec.dim_y is None:
        raise SpecInvariantError("edge specs require dim_y")

    seen = set()
    for index, record in enumerate(spec.coefficients):
        where = f"coefficients[{index}]"
        alpha = record.multi_index
        if spec.kind == "cone" and alpha:
            raise SpecInvariantError(f"{where}: alpha is only allowed in edge specs")
        if spec.kind == "edge":
            alpha = alpha or (0,) * spec.dim_y
            if len(alpha) != spec.dim_y or any(a < 0 for a in alpha):
                raise SpecInvariantError(f"{where}: alpha {list(alpha)} is not a non-negative {spec.dim_y}-tuple")
        if record.j + sum(alpha) > spec.mu:
            raise SpecInvariantError(f"{where}: j + |alpha| = {record.j + sum(alpha)} exceeds mu = {spec.mu}")
        if len(record.taylor) > spec.mu + 1:
            raise SpecInvariantError(f"{where}: {len(record.taylor)} Taylor coefficients, at most {spec.mu + 1} allowed")
        if (record.j, alpha) in seen:
            raise SpecInvariantError(f"{where}: coefficient (j={record.j}, alpha={list(alpha)}) given twice")
        seen.add((record.j, alpha))
    return spec


def parse_spec_text(text: str) -> OperatorSpec:
    """
    Parse and validate the text of a spec file.

    Raises:
        SpecParseError: invalid TOML (with line) or schema violation (with field path).
        SpecInvariantError
    """
    try:
        data = toml.loads(text)
    except toml.TomlDecodeError as e:
        raise SpecParseError(f"invalid spec file at line {e.lineno}: {e.msg}", line=e.lineno) from e

    try:
        spec = OperatorSpec.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        raise SpecParseError(f"invalid field '{field}': {error['msg']}", field=field) from e

    return check_invariants(spec)


def load_spec(path: Union[str, Path]) -> OperatorSpec:
    return parse_spec_text(Path(path).read_text(encoding="utf-8"))


def emit_spec(spec: OperatorSpec) -> str:
    """TOML text of a spec; parse_spec_text(emit_spec(spec)) == spec."""
    return toml.dumps(spec.model_dump(exclude_none=True))


def to_operator(spec: OperatorSpec) -> Union[ConeOperator, EdgeOperator]:
    if spec.kind == "cone":
        return ConeOperator.from_coefficients(spec.mu, {r.j: r.series for r in spec.coefficients})
    return EdgeOperator.from_coefficients(
        spec.mu,
        spec.dim_y,
        {(r.j, r.multi_index or (0,) * spec.dim_y): r.series for r in spec.coefficients},
    )


def to_cone_operator(spec: OperatorSpec) -> ConeOperator:
    """The cone operator of a cone spec, or the model cone operator (α = 0 part) of an edge spec."""
    operator = to_operator(spec)
    if isinstance(operator, EdgeOperator):
        return operator.cone_part()
    return operator


def parse_spec(path: Union[str, Path]) -> Union[ConeOperator, EdgeOperator]:
    """
    Raises:
        SpecParseError
        SpecInvariantError
    """
    return to_operator(load_spec(path))
