from __future__ import annotations

import json

import pytest

from kleinian_rp.classifier import FAMILIES, enumerate_family
from kleinian_rp.indices import ExtIndex
from kleinian_rp.orbifolds import (
    UnmappedSchema,
    build_graph,
    decode_edge,
    decode_vertex,
    load_template,
    orbifold_of,
    rule_violations,
)
from kleinian_rp.presentations import SCHEMA_NAMES, build_presentation, presentation_of


def test_gt_example():
    g = orbifold_of(build_presentation("GT", (3, "inf_bar", 4)))
    labels = sorted(str(e.label) for e in g.edges)
    assert labels == ["3", "4", "inf_bar"]
    (removed,) = [e for e in g.edges if e.label.is_inf_bar]
    assert removed.decoding == "removed" and removed.fat
    assert rule_violations(g) == []


@pytest.mark.parametrize("labels,kind,group", [
    ((2, 2, 7), "singular_point", "D14"),
    ((2, 3, 3), "singular_point", "A4"),
    ((2, 3, 4), "singular_point", "S4"),
    ((2, 3, 5), "singular_point", "A5"),
    ((2, 3, 6), "cusp", "(2,3,6)"),
    ((3, 3, 3), "cusp", "(3,3,3)"),
    ((2, 3, 7), "boundary", None),
    ((2, 2, "inf"), "puncture", None),
    ((2, 3, "inf_bar"), "boundary", None),
])
def test_decode_vertex(labels, kind, group):
    d = decode_vertex(*(ExtIndex.parse(x) for x in labels))
    assert d.kind == kind and d.group == group


def test_decode_edge():
    assert decode_edge(ExtIndex.finite(5)) == "cone_points(5)"
    assert decode_edge(ExtIndex.parse("inf")) == "cusp_annulus"
    assert decode_edge(ExtIndex.parse("inf_bar")) == "removed"


def test_every_schema_has_a_template():
    for schema in SCHEMA_NAMES:
        assert load_template(schema)["slots"]
    with pytest.raises(UnmappedSchema):
        load_template("nope")


def test_exports_are_deterministic():
    g = build_graph("H", tuple(ExtIndex.finite(k) for k in (2, 2, 3, 5)))
    assert g.to_json() == g.to_json()
    assert json.loads(g.to_json())["schema"] == "H"
    assert g.edge_list().startswith("# H ")


@pytest.mark.parametrize("family", FAMILIES)
def test_grid_graphs_obey_rules(family):
    for _, fm in enumerate_family(family):
        for form in ("kleinian", "abstract"):
            assert rule_violations(orbifold_of(presentation_of(fm, form=form))) == []
