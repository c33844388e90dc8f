from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest

from kleinian_rp.geometry import (
    EDGE_FACES,
    MissingDistance,
    TetSchema,
    UnknownIdentity,
    gram_of,
    hyperbolicity,
    proof_identities,
    signature,
    vertex_angles_kind,
    vertex_kind,
)


def mp_signature(g: np.ndarray) -> tuple[int, int, int]:
    """Independent oracle: mpmath eigenvalues at 30 digits."""
    with mpmath.workdps(30):
        ev = mpmath.eigsy(mpmath.matrix(g.tolist()))[0]
        vals = [float(x) for x in ev]
    return (sum(v > 1e-9 for v in vals), sum(v < -1e-9 for v in vals), sum(abs(v) <= 1e-9 for v in vals))


def test_entries_follow_edge_map():
    g = gram_of(TetSchema.parse((2, 2, 4), (2, 3, 5)))
    for name, want in (("p1", 0.0), ("p3", -math.cos(math.pi / 4)), ("q2", -0.5),
                       ("q3", -math.cos(math.pi / 5))):
        i, j = EDGE_FACES[name]
        assert abs(g[i, j] - want) < 1e-15 and g[i, j] == g[j, i]
    assert np.all(np.diag(g) == 1.0)


def test_inf_bar_needs_distance():
    with pytest.raises(MissingDistance):
        gram_of(TetSchema.parse((2, 2, 4), (2, 5, "inf_bar")))
    d = math.acosh(2 * math.cos(math.pi / 5) ** 2)
    g = gram_of(TetSchema.parse((2, 2, 4), (2, 5, "inf_bar"), {"q3": d}))
    assert abs(g[1, 2] + 2 * math.cos(math.pi / 5) ** 2) < 1e-12


def test_signature_examples():
    assert hyperbolicity(gram_of(TetSchema.parse((2, 3, 5), (2, 3, 2)))).is_hyperbolic
    assert hyperbolicity(np.eye(4)).kind == "non_realizable"
    g = gram_of(TetSchema.parse((2, 2, 2), (2, 2, 2)))
    assert hyperbolicity(g).signature == (4, 0, 0)
    # every angle pi/3 still gives a (3,1) form
    assert hyperbolicity(gram_of(TetSchema.parse((3, 3, 3), (3, 3, 3)))).is_hyperbolic


@pytest.mark.parametrize("p,q", [((2, 3, 5), (2, 3, 2)), ((2, 2, 3), (2, 5, 3)),
                                 ((3, 3, 3), (3, 3, 3)), ((2, 2, 2), (2, 2, 2)),
                                 ((2, 3, 7), (2, 3, 7)), ((2, 2, 4), (2, 3, 9))])
def test_signature_agrees_with_mpmath(p, q):
    g = gram_of(TetSchema.parse(p, q))
    assert signature(g) == mp_signature(g)


def test_vertex_kinds():
    assert vertex_angles_kind(2, 3, 5) == "finite"
    assert vertex_angles_kind(2, 4, 4) == "ideal"
    assert vertex_angles_kind(2, 3, 7) == "hyperideal"
    g = gram_of(TetSchema.parse((2, 3, 5), (2, 3, 2)))
    assert all(vertex_kind(g, v) == "finite" for v in range(4))


def test_identity_examples():
    assert proof_identities("cosh2T", 5, 4) < 1e-12
    assert proof_identities("eq1", 0.0) == 0.0
    assert proof_identities("eq2", 3) < 1e-15
    with pytest.raises(UnknownIdentity):
        proof_identities("nope", 1)
