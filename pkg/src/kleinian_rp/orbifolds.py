"""Labelled singular-set graphs of the quotient orbifolds and their decoding.

Each presentation schema has a JSON template (``templates/<schema>.json``)
listing edges between named vertices, optional closed circles, label slots
and the ambient space.  Instantiating a template with the exponents of a
presentation gives a :class:`SingularGraph`; every vertex and edge is then
decoded into its local structure.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Optional

from .indices import ExtIndex
from .presentations import PresentationInstance

SPACES = ("Sphere3", "S2xS1", "SeifertS(2)", "SeifertS(3)", "RP3MinusBall")


class UnmappedSchema(ValueError):
    pass


# ---------------------------------------------------------------------------
# decoding

@dataclass(frozen=True)
class VertexDecoding:
    kind: str                      # "singular_point" | "cusp" | "boundary" | "puncture"
    group: Optional[str] = None    # local group of a singular point, or the cusp triangle

    def __str__(self) -> str:
        return f"{self.kind}({self.group})" if self.group else self.kind


def _angle_sum(labels: tuple[int, int, int]) -> Fraction:
    return sum((Fraction(1, k) for k in labels), Fraction(0))


def decode_vertex(p: ExtIndex, q: ExtIndex, r: ExtIndex) -> VertexDecoding:
    labels = sorted((ExtIndex.parse(p), ExtIndex.parse(q), ExtIndex.parse(r)))
    if all(x.is_finite for x in labels):
        ks = tuple(x.k for x in labels)
        s = _angle_sum(ks)
        if s > 1:
            if ks[:2] == (2, 2):
                return VertexDecoding("singular_point", f"D{2 * ks[2]}")
            return VertexDecoding("singular_point", {(2, 3, 3): "A4", (2, 3, 4): "S4",
                                                     (2, 3, 5): "A5"}[ks])
        if s == 1:
            return VertexDecoding("cusp", "({},{},{})".format(*ks))
        return VertexDecoding("boundary")
    inf = labels[2]
    if inf.is_inf and labels[0] == ExtIndex.finite(2) and labels[1] == ExtIndex.finite(2):
        return VertexDecoding("puncture")
    return VertexDecoding("boundary")


def decode_edge(label: ExtIndex) -> str:
    label = ExtIndex.parse(label)
    if label.is_finite:
        return f"cone_points({label.k})"
    if label.is_inf:
        return "cusp_annulus"
    return "removed"


# ---------------------------------------------------------------------------
# graphs

@dataclass(frozen=True)
class GraphVertex:
    id: str
    fat: bool
    labels: tuple[ExtIndex, ExtIndex, ExtIndex]
    decoding: VertexDecoding


@dataclass(frozen=True)
class GraphEdge:
    ends: Optional[tuple[str, str]]        # None for a closed circle
    label: ExtIndex
    fat: bool
    decoding: str
    fiber: Optional[str] = None            # Seifert placement: "critical" | "regular"


@dataclass(frozen=True)
class SingularGraph:
    schema: str
    figure: str
    space: str
    vertices: tuple[GraphVertex, ...]
    edges: tuple[GraphEdge, ...]
    presentation: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {
            "schema": self.schema,
            "figure": self.figure,
            "space": self.space,
            "presentation": self.presentation,
            "nodes": [{"id": v.id, "fat": v.fat, "labels": [str(x) for x in v.labels],
                       "decoding": str(v.decoding)} for v in self.vertices],
            "edges": [{"ends": list(e.ends) if e.ends else None, "label": str(e.label),
                       "fat": e.fat, "decoding": e.decoding, "fiber": e.fiber}
                      for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def edge_list(self) -> str:
        """One line per edge: ``A B label [fat] [fiber=...]``; circles use ``circle``."""
        lines = [f"# {self.schema} figure {self.figure} in {self.space}"]
        for e in self.edges:
            head = " ".join(e.ends) if e.ends else "circle"
            extra = (" fat" if e.fat else "") + (f" fiber={e.fiber}" if e.fiber else "")
            lines.append(f"{head} {e.label}{extra}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def load_template(schema: str) -> dict[str, Any]:
    try:
        path = resources.files(__package__).joinpath("templates").joinpath(f"{schema}.json")
        text = path.read_text("utf-8")
    except FileNotFoundError:
        raise UnmappedSchema(f"no orbifold template for schema {schema!r}") from None
    return json.loads(text)


def _fat_edge(label: ExtIndex) -> bool:
    return not label.is_finite


def _vertex_fat(labels: tuple[ExtIndex, ...]) -> bool:
    if any(_fat_edge(x) for x in labels):
        return True
    return _angle_sum(tuple(x.k for x in labels)) <= 1


def build_graph(schema: str, exponents: tuple[ExtIndex, ...], presentation: str = "") -> SingularGraph:
    tpl = load_template(schema)
    slots = dict(zip(tpl["slots"], exponents, strict=True))

    def label_of(token: str) -> ExtIndex:
        return slots[token] if token in slots else ExtIndex.parse(token)

    edges: list[GraphEdge] = []
    incident: dict[str, list[ExtIndex]] = {}
    for e in tpl["edges"]:
        lab = label_of(e["label"])
        a, b = e["ends"]
        incident.setdefault(a, []).append(lab)
        incident.setdefault(b, []).append(lab)
        edges.append(GraphEdge((a, b), lab, _fat_edge(lab), decode_edge(lab), e.get("fiber")))
    for c in tpl.get("circles", []):
        lab = label_of(c["label"])
        edges.append(GraphEdge(None, lab, _fat_edge(lab), decode_edge(lab), c.get("fiber")))
    vertices = []
    for vid in sorted(incident):
        labs = incident[vid]
        if len(labs) != 3:
            raise ValueError(f"template {schema}: vertex {vid} has degree {len(labs)}")
        labs3 = (labs[0], labs[1], labs[2])
        vertices.append(GraphVertex(vid, _vertex_fat(labs3), labs3, decode_vertex(*labs3)))
    return SingularGraph(schema, tpl["figure"], tpl["space"], tuple(vertices), tuple(edges),
                         presentation)


def orbifold_of(pres: PresentationInstance) -> SingularGraph:
    return build_graph(pres.schema, pres.exponents, pres.name)


# ---------------------------------------------------------------------------
# structural rules

def rule_violations(graph: SingularGraph) -> list[str]:
    """Empty when the graph satisfies the four structural rules."""
    out: list[str] = []
    degree: dict[str, int] = {v.id: 0 for v in graph.vertices}
    fat = {v.id: v.fat for v in graph.vertices}
    for e in graph.edges:
        if e.ends is None:
            continue
        for end in e.ends:
            if end not in degree:
                out.append(f"edge end {end} is not a vertex")
                continue
            degree[end] += 1
        if e.fat and not all(fat.get(end, False) for end in e.ends):
            out.append(f"fat edge {e.ends} has a thin endpoint")
    for vid, d in degree.items():
        if d != 3:
            out.append(f"vertex {vid} has degree {d}")
    for e in graph.edges:
        if e.label.is_finite and e.label.k < 2:
            out.append(f"edge {e.ends} has label {e.label}")
    for v in graph.vertices:
        if not v.fat and not _angle_sum(tuple(x.k for x in v.labels)) > 1:
            out.append(f"thin vertex {v.id} has angle sum <= 1")
    if graph.space not in SPACES:
        out.append(f"unknown ambient space {graph.space}")
    return out
