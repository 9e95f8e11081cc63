"""
Pydantic schemas for compile reports.
"""
from pydantic import BaseModel, Field


class CompileResponse(BaseModel):
    """What the compiler wrote."""

    normalized: bool = Field(description="Whether the normalization pipeline ran")
    gates: int = Field(description="Gates of the compiled circuit")
    banks: int = Field(description="Banks of the emitted system")
    contracts: int = Field(description="Contracts of the emitted system")
    inputs: list[str] = Field(description="Input bank per circuit input")
    instance_path: str = Field(description="Where the instance was written")
    portmap_path: str = Field(description="Where the port map was written")
