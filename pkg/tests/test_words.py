from __future__ import annotations

import cmath
import math

from kleinian_rp.algebra import MoebiusElement, commutator
from kleinian_rp.words import EMPTY, F, G, Word
from kleinian_rp.words import commutator as wcomm


def test_free_reduction():
    assert F * F.inverse() == EMPTY
    assert Word.parse("fgGF") == EMPTY
    assert str(Word.parse("ffgFFF")) == "f^2 g f^-3"


def test_swap_inverse():
    assert Word.parse("fgF").swap_inverse() == Word.parse("FGf")


def test_evaluate_matches_matrix_product():
    lam = cmath.exp(1j * math.pi / 5)
    f = MoebiusElement(lam, 1, 0, 1 / lam)
    g = MoebiusElement(1.7, 0, 0.3 + 0.2j, 1 / 1.7)
    w = wcomm(F, G) ** 3 * F ** 2
    direct = commutator(f, g)
    direct = direct @ direct @ direct @ f @ f
    assert w.evaluate({1: f, 2: g}).distance(direct) < 1e-12
