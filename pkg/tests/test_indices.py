from __future__ import annotations

import math

import pytest

from kleinian_rp.indices import INF, INF_BAR, ExtIndex, NegativeSquare, UPoint, match_cosh2, t_of


def test_parse_and_str():
    assert ExtIndex.parse("7") == ExtIndex.finite(7)
    assert ExtIndex.parse("inf") is INF or ExtIndex.parse("inf") == INF
    assert ExtIndex.parse("InfBar") == INF_BAR
    assert [str(x) for x in (ExtIndex.finite(4), INF, INF_BAR)] == ["4", "inf", "inf_bar"]


def test_finite_index_must_be_at_least_two():
    with pytest.raises(ValueError):
        ExtIndex.finite(1)


def test_order():
    assert ExtIndex.finite(1000) < INF < INF_BAR
    assert sorted([INF_BAR, ExtIndex.finite(3), INF, ExtIndex.finite(2)]) == [
        ExtIndex.finite(2), ExtIndex.finite(3), INF, INF_BAR]


def test_gcd_and_division():
    assert INF.gcd(6) == 6 and INF_BAR.gcd(4) == 4
    assert ExtIndex.finite(6).gcd(4) == 2
    assert ExtIndex.finite(8).div(2) == ExtIndex.finite(4)
    assert INF.div(2) == INF and INF_BAR.div(2) == INF_BAR
    with pytest.raises(ValueError):
        ExtIndex.finite(7).div(2)


def test_parity():
    assert INF.satisfies("even") and INF_BAR.satisfies("even")
    assert not INF.satisfies("odd")
    assert ExtIndex.finite(5).satisfies("odd")


def test_t_of_round_trip():
    assert t_of(UPoint.angle(5)) == ExtIndex.finite(5)
    assert t_of(UPoint.zero()) == INF
    assert t_of(UPoint.positive(0.3)) == INF_BAR
    assert UPoint.from_index(INF_BAR, 0.3) == UPoint.positive(0.3)
    with pytest.raises(ValueError):
        UPoint.from_index(INF_BAR)


@pytest.mark.parametrize("p", [2, 3, 7, 24, 999])
def test_match_finite(p):
    u, t = match_cosh2(math.cos(math.pi / p) ** 2)
    assert u == UPoint.angle(p) and t == ExtIndex.finite(p)


def test_match_parabolic_and_hyperbolic():
    assert match_cosh2(1.0)[1] == INF
    u, t = match_cosh2(math.cosh(0.7) ** 2)
    assert t == INF_BAR and abs(u.d - 0.7) < 1e-12


def test_match_rejects_parity_and_bounds():
    assert match_cosh2(math.cos(math.pi / 5) ** 2, parity="even") is None
    assert match_cosh2(math.cos(math.pi / 3) ** 2, min_t=ExtIndex.finite(4)) is None
    assert match_cosh2(0.3) is None          # no integer p
    with pytest.raises(NegativeSquare):
        match_cosh2(-0.5)
