"""
Pydantic schemas for fragment reports.
"""
from pydantic import BaseModel, Field


class ClosedForm(BaseModel):
    """Exact clearing rate of the first start node."""

    surd: str = Field(description="The rate as a + b*sqrt(d)")
    decimal: str = Field(description="30-digit decimal expansion")
    rational: bool = Field(description="Whether the rate is rational")


class FragmentResponse(BaseModel):
    """A fragment cycle and whatever was asked of it."""

    cycle: str = Field(description="Dotted fragment names as given")
    symbolic: str = Field(description="Cycle with coefficient variants, first fragment repeated")
    rewritten: str | None = Field(default=None, description="Canonical rewrite, dotted")
    rewritten_symbolic: str | None = Field(default=None, description="Canonical rewrite with variants")
    closed_form: ClosedForm | None = Field(default=None, description="Closed-form clearing rate")
    emitted_path: str | None = Field(default=None, description="Where the emitted instance was written")
    emitted_banks: int | None = Field(default=None, description="Banks of the emitted instance")
