from __future__ import annotations

import pytest

from kleinian_rp.classifier import FAMILIES, FamilyMatch, enumerate_family
from kleinian_rp.config import DEFAULT_CONFIG
from kleinian_rp.indices import INF, INF_BAR, ExtIndex, UPoint
from kleinian_rp.presentations import (
    ParityMismatch,
    build_presentation,
    generator_words,
    presentation_of,
    presentation_schema,
)

TOTAL = {"D1", "D2", "D3", "P1", "P2", "P4", "P5", "P7", "P8", "P10", "P11", "P14", "P16"}


def match(family, n, **idx):
    ups = {"t_u": "u", "t_v": "v"}
    kw = {}
    indices = {}
    for k, val in idx.items():
        if k == "m":
            indices["m"] = ExtIndex.finite(val)
            continue
        pt = val if isinstance(val, UPoint) else UPoint.angle(val)
        kw[ups[k]] = pt
        indices[k] = ExtIndex.finite(pt.p) if pt.kind == "angle" else (INF if pt.kind == "zero" else INF_BAR)
    return FamilyMatch(family, n, indices, 0.0, **kw)


def test_d1_even_gives_gt():
    pres = presentation_of(match("D1", 3, t_u=8))
    assert pres.name == "GT[3,inf_bar;4]"
    assert [str(r) for r in pres.relators] == ["f^3", "(f g f^-1 g^-1)^4"]


def test_d1_odd_gives_tet():
    pres = presentation_of(match("D1", 3, t_u=5))
    assert pres.name == "Tet[3,inf_bar;5]"
    assert pres.schema == "Tet3"


def test_p1_branches():
    assert presentation_of(match("P1", 4, t_u=6, t_v=5)).name == "PH[4,3,5]"
    assert presentation_of(match("P1", 4, t_u=6, t_v=4)).name == "S2[4,3,2]"


def test_p19_and_p12_give_h():
    assert presentation_of(match("P12", 3)).name == "H[2;2,3;5]"
    assert presentation_of(match("P19", 5)).name == "H[2;2,3;5]"


def test_p11_convention():
    m = match("P11", 3, m=10)
    assert presentation_schema(m)[1][0] == ExtIndex.finite(5)
    cfg = DEFAULT_CONFIG.updated(p11_index_convention="full")
    assert presentation_schema(m, cfg)[1][0] == ExtIndex.finite(10)


def test_inf_bar_relators_dropped_and_abstract_form():
    pres = build_presentation("GT", (3, "inf_bar", "inf"))
    assert [str(r) for r in pres.relators] == ["f^3", "(f g f^-1 g^-1)^inf"]
    abstract = build_presentation("GT", (3, "inf_bar", "inf"), "abstract")
    assert [str(r) for r in abstract.relators] == ["f^3"]


def test_tet3_expands():
    pres = build_presentation("Tet3", (3, 4, 5))
    assert pres.expanded_exponents() == tuple(ExtIndex.finite(k) for k in (2, 2, 3, 2, 5, 4))


def test_word_tables():
    w = generator_words(match("D1", 3, t_u=8))
    assert w.complete and str(w.words["f"]) == "f"
    w = generator_words(match("P6", 7, t_v=3))
    assert not w.complete and "x" in w.words


def test_parity_mismatch():
    with pytest.raises(ParityMismatch):
        generator_words(match("P4", 4, t_u=4, t_v=3))


@pytest.mark.parametrize("family", FAMILIES)
def test_every_grid_point_has_a_presentation(family):
    for _, fm in enumerate_family(family):
        pres = presentation_of(fm)
        assert pres.relators
        words = generator_words(fm)
        if family in TOTAL:
            assert words.complete, fm.label()
