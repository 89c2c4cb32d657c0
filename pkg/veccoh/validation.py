"""
Runtime validation utilities using Pydantic (optional dependency).

This module provides Pydantic models for module specifications and run
reports. Pydantic is an optional dependency - if not installed, validation
functions will raise ImportError.

To use validation, install pydantic:
    pip install pydantic

Or install with validation support:
    pip install veccoh[validation]
"""

from typing import Any, Dict, List, Literal, Optional

try:
    from pydantic import BaseModel, Field, field_validator, model_validator
    PYDANTIC_AVAILABLE = True
except ImportError:
    PYDANTIC_AVAILABLE = False
    BaseModel = None  # type: ignore
    Field = None  # type: ignore
    field_validator = None  # type: ignore
    model_validator = None  # type: ignore

from .types import ModuleSpec, RunReport


def _check_pydantic():
    """Check if Pydantic is available, raise ImportError if not."""
    if not PYDANTIC_AVAILABLE:
        raise ImportError(
            "Pydantic is required for validation. Install it with: "
            "pip install pydantic"
            " or pip install veccoh[validation]"
        )


if PYDANTIC_AVAILABLE:
    class ModuleSpecModel(BaseModel):
        """Pydantic model for ModuleSpec."""

        m: int = Field(..., ge=2, description="Dimension of the base space")
        species: Literal["multivector", "form", "function"] = Field(..., description="Field species")
        p: int = Field(..., ge=0, description="Source degree")
        q: int = Field(..., ge=0, description="Target degree")
        k: int = Field(..., ge=0, description="Order bound or symbol degree")
        level: Literal["operator", "symbol"] = "operator"

        @model_validator(mode="after")
        def validate_degrees(self) -> "ModuleSpecModel":
            """Degrees are bounded by m; functions force p = q = 0."""
            if self.p > self.m or self.q > self.m:
                raise ValueError("degrees must not exceed m")
            if self.species == "function" and (self.p, self.q) != (0, 0):
                raise ValueError("function species requires p = q = 0")
            return self

        class Config:
            extra = "forbid"

    class CheckResultModel(BaseModel):
        """Pydantic model for CheckResult."""

        name: str = Field(..., description="Check identifier")
        computed: Any = Field(..., description="Computed value")
        expected: Any = Field(None, description="Expected value, None when no theorem covers it")
        citation: Optional[str] = Field(None, description="Source of the expected value")
        match: Optional[bool] = Field(None, description="Exact equality of computed and expected")

        class Config:
            extra = "forbid"

    class RunReportModel(BaseModel):
        """Pydantic model for RunReport."""

        command: str = Field(..., description="CLI command name")
        params: Dict[str, Any] = Field(..., description="Parameters of the run")
        checks: List[CheckResultModel] = Field(..., description="Scored checks")
        seed: Optional[int] = Field(None, description="Random seed, if any")
        elapsed_ms: int = Field(..., ge=0, description="Wall time in milliseconds")

        @field_validator("command")
        @classmethod
        def validate_command(cls, v: str) -> str:
            """Validate command name."""
            if v not in ("structure", "cocycle", "cohomology", "theta", "report"):
                raise ValueError(f"unknown command {v!r}")
            return v

        class Config:
            extra = "forbid"


def validate_module_spec(spec: Dict[str, Any]) -> ModuleSpec:
    """
    Validate a module specification dict and build the ModuleSpec.

    Args:
        spec: Dictionary with m, species, p, q, k and optionally level

    Returns:
        ModuleSpec instance

    Raises:
        ImportError: If Pydantic is not installed
        ValidationError: If the specification is invalid
    """
    _check_pydantic()
    model = ModuleSpecModel(**spec)
    return ModuleSpec(**model.model_dump())


def validate_run_report(report: Dict[str, Any]) -> RunReport:
    """
    Validate and normalize a RunReport using Pydantic.

    Args:
        report: Dictionary with command, params, checks, seed and elapsed_ms

    Returns:
        Validated RunReport dict

    Raises:
        ImportError: If Pydantic is not installed
        ValidationError: If the report is malformed
    """
    _check_pydantic()
    model = RunReportModel(**report)
    return model.model_dump(exclude_none=False)  # type: ignore[return-value]
