# schemas for jobs app
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.exceptions import QfsError
from apps.polyarith.models import IDENTIFIER, MAX_PRIME, MIN_PRIME, PrimeContext, is_prime
from apps.polyarith.parser import parse_poly


class OutputMode(str, Enum):
    TEXT = "text"
    JSON = "json"


# Job input
class AssertionsSchema(BaseModel):
    complete_intersection: bool = Field(False, description="The lifts form a regular sequence and R is p-torsion free")
    normal: bool = Field(False, description="R is normal")
    quasi_gorenstein: bool = Field(False, description="R is quasi-Gorenstein")
    sfr_punctured: bool = Field(False, description="The punctured spectrum of the special fiber is strongly F-regular")

    model_config = ConfigDict(extra="forbid")


class LimitsSchema(BaseModel):
    max_height: Optional[int] = Field(None, ge=1, le=64, description="Largest chain level examined for the height")
    sigma_budget: Optional[int] = Field(None, ge=1, description="Iterations allowed for the stable-ideal descent")
    gb_budget: Optional[int] = Field(None, ge=1, description="Reduction steps allowed per Groebner basis")
    gb_pair_budget: Optional[int] = Field(None, ge=1, description="Critical pairs allowed per Groebner basis")

    model_config = ConfigDict(extra="forbid")


class JobConfig(BaseModel):
    name: Optional[str] = Field(None, description="Free-form label echoed in the report")
    p: int = Field(..., description="The prime, 2 <= p <= 97")
    variables: List[str] = Field(..., min_length=1, description="Variable names in monomial-order sequence")
    lifts: List[str] = Field(..., min_length=1, description="Integer lifts f_1..f_r as expressions")
    weights: Optional[List[int]] = Field(None, description="Positive variable weights for graded inputs")
    assertions: AssertionsSchema = Field(default_factory=AssertionsSchema, description="User-asserted hypotheses")
    limits: LimitsSchema = Field(default_factory=LimitsSchema, description="Per-job overrides of the configured limits")
    output: OutputMode = Field(OutputMode.TEXT, description="Report format")

    model_config = ConfigDict(extra="forbid")

    @field_validator("p")
    @classmethod
    def validate_p(cls, v: int) -> int:
        if not is_prime(v):
            raise ValueError(f"p={v} is not prime")
        if not MIN_PRIME <= v <= MAX_PRIME:
            raise ValueError(f"p={v} outside {MIN_PRIME}..{MAX_PRIME}")
        return v

    @field_validator("variables")
    @classmethod
    def validate_variables(cls, v: List[str]) -> List[str]:
        for name in v:
            if not IDENTIFIER.match(name):
                raise ValueError(f"invalid variable name '{name}'")
        if len(set(v)) != len(v):
            raise ValueError("variable names must be distinct")
        return v

    @field_validator("weights")
    @classmethod
    def validate_weights(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None and any(w < 1 for w in v):
            raise ValueError("weights must be positive")
        return v

    @model_validator(mode="after")
    def validate_lifts(self) -> "JobConfig":
        if self.weights is not None and len(self.weights) != len(self.variables):
            raise ValueError(f"{len(self.weights)} weights for {len(self.variables)} variables")
        if len(self.lifts) > len(self.variables):
            raise ValueError("more lifts than variables")
        ctx = PrimeContext(self.p, tuple(self.variables))
        for i, text in enumerate(self.lifts):
            try:
                parse_poly(text, ctx, 2)
            except QfsError as exc:
                raise ValueError(f"lift {i + 1}: {exc.detail}")
        return self


# Report
class HeightSchema(BaseModel):
    kind: str = Field(..., description="finite, infinite or inconclusive")
    value: Optional[int] = Field(None, description="The height, or the last level checked when inconclusive")
    witness: Optional[str] = Field(None, description="Generator of I_n outside m^[p]")
    witness_mod_frobenius: Optional[str] = Field(None, description="The witness modulo m^[p]")
    certificate_index: Optional[int] = Field(None, description="n with I_n = I_(n+1) inside m^[p]")
    certificate_basis: Optional[List[str]] = Field(None, description="Reduced basis of the stable I_n")
    at_least: Optional[int] = Field(None, description="Lower bound for an inconclusive height")
    reason: Optional[str] = Field(None, description="Why the computation stopped early")


class StableIdealSchema(BaseModel):
    generators: List[str] = Field(..., description="Reduced Groebner basis of I'")
    note: str = Field("", description="How to read the stable ideal")


class PptSchema(BaseModel):
    kind: str = Field(..., description="exact, interval, upper_bound_only or unknown")
    justification: str = Field(..., description="Result the value rests on")
    value: Optional[str] = Field(None, description="Exact threshold as a fraction")
    lo: Optional[str] = Field(None, description="Interval lower endpoint")
    hi: Optional[str] = Field(None, description="Interval upper endpoint or upper bound")
    decimal: Optional[str] = Field(None, description="Display-only decimal of the value or bound")
    notes: List[str] = Field(default_factory=list)
    assumptions: List[str] = Field(default_factory=list)


class ConclusionSchema(BaseModel):
    statement: str
    basis: str
    depends_on: List[str] = Field(default_factory=list)
    conditional: bool = False


class GradedSchema(BaseModel):
    weights: List[int]
    degrees: List[int]
    a_invariant: int
    regime: str
    conclusions: List[ConclusionSchema] = Field(default_factory=list)


class ChainLevelSchema(BaseModel):
    index: int
    generators: List[str]
    basis: Optional[List[str]] = None


class ChainSchema(BaseModel):
    kind: str
    stabilized_at: Optional[int] = None
    inconclusive: bool = False
    reason: str = ""
    levels: List[ChainLevelSchema] = Field(default_factory=list)


class WittPropertySchema(BaseModel):
    name: str
    passed: int
    failed: int
    first_failure: str = ""


class WittSelftestSchema(BaseModel):
    p: int
    n: int
    trials: int
    seed: int
    ok: bool
    properties: List[WittPropertySchema]


class Report(BaseModel):
    tool_version: str = Field(..., description="Version of the engine that produced the report")
    command: str = Field(..., description="Command that produced the report")
    config: Optional[JobConfig] = Field(None, description="Echo of the job")
    assertions: List[str] = Field(default_factory=list, description="Asserted hypotheses")
    delta_term: Optional[str] = Field(None, description="Delta_1(f^(p-1)) mod p from the given lifts")
    f_pure: Optional[bool] = Field(None, description="Whether f^(p-1) lies outside m^[p]")
    height: Optional[HeightSchema] = None
    stable_ideal: Optional[StableIdealSchema] = None
    ffinfty: Optional[bool] = Field(None, description="Quasi-(F,F^infty)-split; null when undecided")
    ffinfty_witness: Optional[str] = None
    ppt: Optional[PptSchema] = None
    graded: Optional[GradedSchema] = None
    chains: List[ChainSchema] = Field(default_factory=list)
    witt_selftest: Optional[WittSelftestSchema] = None
    exit_code: int = 0
    timing: Dict[str, float] = Field(default_factory=dict, description="Seconds per stage; not deterministic")
