from __future__ import annotations

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

CAVEAT = (
    "An independently even clustered drawing exists, but the instance is outside the "
    "two-clustered and c-connected classes where this implies c-planarity; flat clustered "
    "cycles with three or more clusters admit even clustered drawings without being c-planar."
)


class Outcome(str, Enum):
    c_planar = "c_planar"
    not_c_planar = "not_c_planar"
    even_drawing_exists_inconclusive = "even_drawing_exists_inconclusive"


class Tier(str, Enum):
    two_clustered = "two_clustered"
    c_connected = "c_connected"
    embedded_small_faces = "embedded_small_faces"
    none = "none"


class Method(str, Enum):
    hanani_tutte = "hanani_tutte"
    saturator = "saturator"


class GTShape(str, Enum):
    path = "path"
    cycle = "cycle"
    tree = "tree"
    other = "other"


class EdgeBoundVerdict(str, Enum):
    passed = "pass"
    failed = "fail"


class Classification(BaseModel):
    flat: bool
    two_clustered: bool
    c_connected: bool
    cyclic_clustered: bool
    gt_shape: GTShape
    cluster_count: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_implications(self) -> Classification:
        if self.two_clustered and not self.flat:
            raise ValueError("two_clustered requires flat.")
        if self.cyclic_clustered and not (self.flat and self.cluster_count >= 3):
            raise ValueError("cyclic_clustered requires flat with at least three clusters.")
        return self


class ValidationReport(BaseModel):
    problems: List[str] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems


class Diagnostics(BaseModel):
    vertices: Optional[int] = Field(default=None, ge=0)
    edges: Optional[int] = Field(default=None, ge=0)
    independent_pairs: Optional[int] = Field(default=None, ge=0)
    equations: Optional[int] = Field(default=None, ge=0)
    active_equations: Optional[int] = Field(default=None, ge=0)
    variables: Optional[int] = Field(default=None, ge=0)
    rank: Optional[int] = Field(default=None, ge=0)
    edge_vertex_bound: Optional[int] = Field(
        default=None, ge=0, description="The coarse |E|*|V| equation bound, for comparison."
    )
    faces: Optional[int] = Field(default=None, ge=0)
    merges: Optional[int] = Field(default=None, ge=0)
    ground_size: Optional[int] = Field(default=None, ge=0)
    target_rank: Optional[int] = Field(default=None, ge=0)
    intersection_size: Optional[int] = Field(default=None, ge=0)
    elapsed_ms: Optional[int] = Field(default=None, ge=0)
    reason: Optional[str] = None


class Verdict(BaseModel):
    outcome: Outcome
    tier: Tier
    method: Method = Method.hanani_tutte
    witness: Optional[List[str]] = None
    diagnostics: Diagnostics = Field(default_factory=Diagnostics)
    caveat: Optional[str] = None

    @model_validator(mode="after")
    def _check_tier(self) -> Verdict:
        if self.outcome is Outcome.c_planar and self.tier is Tier.none:
            raise ValueError("A c_planar outcome needs a soundness tier.")
        if self.outcome is Outcome.even_drawing_exists_inconclusive and self.tier is not Tier.none:
            raise ValueError("Inconclusive outcomes only arise without a soundness tier.")
        return self


class AgreementReport(BaseModel):
    name: str
    total: int = Field(default=0, ge=0)
    agreed: int = Field(default=0, ge=0)
    refused: int = Field(default=0, ge=0)
    disagreements: List[str] = Field(default_factory=list)

    @property
    def all_agree(self) -> bool:
        return not self.disagreements
