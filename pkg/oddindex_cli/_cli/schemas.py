# Copyright 2022 The Oddindex Authors
#
# This file is part of Oddindex.
#
# Licensed under the GNU Affero General Public License 3.0 (the "License").
# A copy of the License may be obtained with this software package or at
#
#      https://www.gnu.org/licenses/agpl-3.0.en.html
#
# Use of this file is prohibited except in compliance with the License. Any
# modifications or derivative works of this file must retain this copyright
# notice, and modified files must contain a notice indicating that they have
# been altered from the originals.
#
# Oddindex is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or
# FITNESS FOR A PARTICULAR PURPOSE. See the License for more details.

"""Input models for the command-line tool."""

from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, validator

from oddindex import FixedComponentSpec, FunctionSpec, ModelGeometry, build_circle, build_torus3
from oddindex._spectral import PERIODIC, SPIN_FLAGS

MODELS = ("circle", "torus3")


class InputShapeError(ValueError):
    """Input JSON that is well formed but not shaped like any accepted document."""


def parse_model(model, data: Any):
    """Validate data against a pydantic model with either major pydantic version."""

    validate = getattr(model, "model_validate", None) or model.parse_obj
    return validate(data)


class GeometryStanza(BaseModel):
    """
    A built-in model geometry.

    Attributes:
        model: "circle" or "torus3".
        cutoff: Momentum cutoff K; falls back to the command default.
        spin_structure: One flag for the circle, three for the torus.
        lift_sign: +1, -1, or "+i"/"-i" (rejected by the lift identities).
        reflection_axis: Reflected torus coordinate.
    """

    model: str
    cutoff: Optional[int] = None
    spin_structure: Union[str, List[str]] = PERIODIC
    lift_sign: Union[int, str] = 1
    reflection_axis: int = 2

    @validator("model")
    def _known_model(cls, value):
        if value not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        return value

    @validator("spin_structure")
    def _known_flags(cls, value):
        flags = [value] if isinstance(value, str) else value
        unknown = [flag for flag in flags if flag not in SPIN_FLAGS]
        if unknown:
            raise ValueError(f"unknown spin structure flags {unknown}")
        return value

    def build(self, cutoff: Optional[int] = None, default_cutoff: int = 8) -> ModelGeometry:
        cutoff = cutoff or self.cutoff or default_cutoff
        flags = self.spin_structure
        if self.model == "circle":
            flag = flags if isinstance(flags, str) else flags[0]
            return build_circle(flag, self.lift_sign, cutoff)
        flags = [flags] * 3 if isinstance(flags, str) else flags
        return build_torus3(self.reflection_axis, flags, self.lift_sign, cutoff)


class FunctionTerm(BaseModel):
    """One Fourier coefficient; a pair is read as (real, imaginary)."""

    frequency: List[int]
    coefficient: Union[float, List[float]]

    @validator("coefficient")
    def _pair(cls, value):
        if isinstance(value, list) and len(value) != 2:
            raise ValueError("complex coefficients are given as [re, im]")
        return value

    def value(self) -> complex:
        if isinstance(self.coefficient, list):
            return complex(self.coefficient[0], self.coefficient[1])
        return complex(self.coefficient)


class FunctionSchema(BaseModel):
    """A real trigonometric polynomial given by a constant and Fourier terms."""

    constant: float = 0.0
    terms: List[FunctionTerm] = []

    def to_spec(self, dim: int) -> FunctionSpec:
        coefficients: Dict = {(0,) * dim: self.constant}
        for term in self.terms:
            key = tuple(term.frequency)
            coefficients[key] = coefficients.get(key, 0) + term.value()
        return FunctionSpec(dim, coefficients)


class JLORun(BaseModel):
    """Run descriptor for the character check."""

    geometry: GeometryStanza
    functions: List[FunctionSchema]
    t_grid: Optional[List[float]] = None
    quad_nodes: Optional[int] = None
    tolerance: Optional[float] = None

    @validator("functions")
    def _at_least_one(cls, value):
        if not value:
            raise ValueError("at least f^0 is required")
        return value

    def function_specs(self, dim: int) -> List[FunctionSpec]:
        return [f.to_spec(dim) for f in self.functions]


class MehlerOptions(BaseModel):
    a_values: Optional[List[float]] = None
    t_values: Optional[List[float]] = None
    y_max: Optional[float] = None
    y_step: Optional[float] = None
    tolerance: Optional[float] = None


class LocalizeRun(BaseModel):
    geometry: GeometryStanza = GeometryStanza(model="circle")
    epsilon: Optional[float] = None
    t_grid: Optional[List[float]] = None
    grid_points: Optional[int] = None


class SpectralRun(BaseModel):
    geometry: GeometryStanza
    t_grid: Optional[List[float]] = None


def parse_components(data: Any) -> List[FixedComponentSpec]:
    """Components from a JSON list or from an object with a "components" list."""

    if isinstance(data, dict):
        data = data.get("components")
    if not isinstance(data, list):
        raise InputShapeError("expected a list of fixed components")
    return [parse_model(FixedComponentSpec, item) for item in data]


def parse_spectral(data: Any) -> SpectralRun:
    """A spectral run, or a bare geometry stanza."""

    if isinstance(data, dict) and "geometry" not in data:
        data = {"geometry": data}
    return parse_model(SpectralRun, data)


def grid_from_text(text: Optional[str]) -> Optional[Sequence[float]]:
    if text is None:
        return None
    return [float(part) for part in text.split(",") if part.strip()]
