"""
Pydantic schemas for structure and verification reports.
"""
from pydantic import BaseModel, Field


class CycleReport(BaseModel):
    """A cycle of the auxiliary graph and how it is switched."""

    nodes: list[str] = Field(description="Banks along the cycle, starting at the lowest index")
    arcs: str = Field(description="Arc-by-arc rendering with colours")
    weakly_switched: bool = Field(description="Some red arc enters a switched-on node")
    strongly_switched: bool = Field(description="Every red arc enters a switched-on node")
    simple: bool | None = Field(default=None, description="Whether the strongly switched cycle is simple")


class ComponentReport(BaseModel):
    index: int = Field(description="Position in the topological order")
    banks: list[str] = Field(description="Member banks")


class AnalyzeResponse(BaseModel):
    """Structure of one instance."""

    banks: int = Field(description="Number of banks")
    contracts: int = Field(description="Number of contracts")
    nondegenerate: bool = Field(description="Whether the non-degeneracy conditions hold")
    violations: list[str] = Field(default_factory=list, description="Non-degeneracy violations")
    dedicated: bool = Field(description="Whether the dedicated CDS debtor property holds")
    acyclic: bool = Field(description="Whether the auxiliary graph is acyclic")
    switches: dict[str, str] = Field(description="Switch class per bank")
    red_arcs: list[str] = Field(description="Red arcs as reference -> debtor")
    weakly_switched_cycle: CycleReport | None = Field(default=None, description="A weakly switched cycle, if any")
    strongly_switched_cycle: CycleReport | None = Field(default=None, description="A strongly switched cycle, if any")
    simple_search: str | None = Field(default=None, description="Outcome of the simple strongly switched search")
    components: list[ComponentReport] = Field(description="Strongly connected components with several banks")
    component_count: int = Field(description="Number of strongly connected components")


class VerifyResponse(BaseModel):
    """How far a candidate vector is from clearing."""

    residual: str = Field(description="Sup-norm distance between the vector and its image")
    clearing: bool = Field(description="Whether the vector is an exact clearing vector")
    eps: str | None = Field(default=None, description="Tolerance checked")
    weak_eps: bool | None = Field(default=None, description="Whether the residual is below eps")
