# ============================================================================
# LatticeChoose - JSON documents
# ============================================================================
"""
Graph, lists, coloring and oracle documents. Lists and colorings are aligned
to the vertex order of the graph document; edges are never stored.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, NonNegativeInt, field_validator, model_validator

from lattice.lc_lattice import Coord, LatticeGraph
from shared.coloring import ColorSet
from shared.errors import InputError
from waterfall.lc_waterfall import WeightedPath


def _no_duplicates(rows):
    for k, row in enumerate(rows):
        if len(set(row)) != len(row):
            raise ValueError(f"entry {k} repeats a color")
    return rows


class GraphDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: list[tuple[int, int]]

    @field_validator("vertices")
    @classmethod
    def unique_vertices(cls, vertices):
        if len(set(vertices)) != len(vertices):
            raise ValueError("vertices must be unique")
        return vertices

    @classmethod
    def from_graph(cls, graph: LatticeGraph) -> "GraphDocument":
        return cls(vertices=[tuple(v) for v in graph])

    def to_graph(self) -> LatticeGraph:
        return LatticeGraph(frozenset(self.vertices))

    def order(self) -> list:
        return [Coord(*v) for v in self.vertices]


class ListsDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lists: list[list[NonNegativeInt]]
    a: Optional[int] = None
    b: Optional[int] = None

    @field_validator("lists")
    @classmethod
    def distinct_colors(cls, rows):
        return _no_duplicates(rows)

    @model_validator(mode="after")
    def uniform_sizes(self):
        sizes = {len(row) for row in self.lists}
        if len(sizes) > 1:
            raise ValueError(f"list sizes are not uniform: {sorted(sizes)}")
        if self.a is not None and sizes and sizes != {self.a}:
            raise ValueError(f"lists have {sizes.pop()} colors but a = {self.a}")
        return self

    @property
    def size(self) -> Optional[int]:
        return len(self.lists[0]) if self.lists else None

    def aligned(self, graph_doc: GraphDocument) -> dict:
        """{vertex: ColorSet} in the graph document's vertex order"""
        if len(self.lists) != len(graph_doc.vertices):
            raise InputError(f"{len(self.lists)} lists for {len(graph_doc.vertices)} vertices")
        return {v: ColorSet(row) for v, row in zip(graph_doc.order(), self.lists)}


class ColoringDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coloring: list[list[NonNegativeInt]]
    a: Optional[int] = None
    b: Optional[int] = None
    trace: list[dict] = []

    @field_validator("coloring")
    @classmethod
    def distinct_colors(cls, rows):
        return _no_duplicates(rows)

    @classmethod
    def from_coloring(cls, graph_doc: GraphDocument, coloring: dict, a=None, b=None, trace=()) -> "ColoringDocument":
        return cls(coloring=[coloring[v].to_list() for v in graph_doc.order()], a=a, b=b, trace=list(trace))

    def aligned(self, graph_doc: GraphDocument) -> dict:
        if len(self.coloring) != len(graph_doc.vertices):
            raise InputError(f"{len(self.coloring)} color sets for {len(graph_doc.vertices)} vertices")
        return {v: ColorSet(row) for v, row in zip(graph_doc.order(), self.coloring)}


class OracleDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["path", "cycle"] = "path"
    lists: list[list[NonNegativeInt]]
    weights: list[NonNegativeInt]

    @field_validator("lists")
    @classmethod
    def distinct_colors(cls, rows):
        return _no_duplicates(rows)

    @model_validator(mode="after")
    def aligned_weights(self):
        if len(self.lists) != len(self.weights):
            raise ValueError(f"{len(self.lists)} lists but {len(self.weights)} weights")
        if self.kind == "cycle" and len(self.lists) < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return self

    def to_path(self) -> WeightedPath:
        return WeightedPath.of(self.lists, self.weights)
