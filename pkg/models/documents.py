from __future__ import annotations

from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, StrictInt, field_validator


class ClusterNodeDocument(BaseModel):
    name: str = Field(..., min_length=1)
    children: List[Union[StrictInt, ClusterNodeDocument]] = Field(default_factory=list)


ClusterNodeDocument.model_rebuild()


class EdgeDocument(BaseModel):
    id: int = Field(..., ge=0)
    ends: Tuple[int, int]


class EmbeddingDocument(BaseModel):
    rotations: Dict[int, List[int]] = Field(
        ..., description="Clockwise edge ids around each vertex; a loop id appears twice."
    )
    outer: Optional[Tuple[int, int]] = Field(
        default=None, description="[tail vertex, edge id] of a dart on the outer face."
    )


class InstanceDocument(BaseModel):
    name: Optional[str] = None
    vertices: List[int] = Field(default_factory=list)
    edges: List[EdgeDocument] = Field(default_factory=list)
    clusters: ClusterNodeDocument
    embedding: Optional[EmbeddingDocument] = None

    @field_validator("vertices")
    @classmethod
    def distinct_vertices(cls, vertices: List[int]) -> List[int]:
        repeated = sorted({vertex for vertex in vertices if vertices.count(vertex) > 1})
        if repeated:
            raise ValueError(f"duplicate vertex ids {repeated}")
        return vertices

