"""Gram matrices of hyperbolic tetrahedra T[p1,p2,p3;q1,q2,q3] and a few trigonometric identities.

Faces are numbered 0..3.  Face 0 is the one carrying p1, p2, p3: the edge
between faces 0 and i has dihedral angle pi/p_i.  The opposite edges are
q1 = (2,3), q2 = (1,3), q3 = (1,2).  Vertex l is the vertex opposite face l.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, Config
from .indices import ExtIndex

EDGE_NAMES = ("p1", "p2", "p3", "q1", "q2", "q3")
EDGE_FACES = {"p1": (0, 1), "p2": (0, 2), "p3": (0, 3),
              "q1": (2, 3), "q2": (1, 3), "q3": (1, 2)}


class MissingDistance(ValueError):
    pass


class UnknownIdentity(KeyError):
    pass


@dataclass(frozen=True)
class TetSchema:
    p: tuple[ExtIndex, ExtIndex, ExtIndex]
    q: tuple[ExtIndex, ExtIndex, ExtIndex]
    distances: Mapping[str, float] = field(default_factory=dict)   # edge name -> d for inf_bar

    @classmethod
    def parse(cls, p: Sequence, q: Sequence, distances: Optional[Mapping[str, float]] = None
              ) -> "TetSchema":
        return cls(tuple(ExtIndex.parse(x) for x in p), tuple(ExtIndex.parse(x) for x in q),
                   dict(distances or {}))

    def labels(self) -> dict[str, ExtIndex]:
        return dict(zip(EDGE_NAMES, self.p + self.q))

    def __str__(self) -> str:
        return "T[{};{}]".format(",".join(map(str, self.p)), ",".join(map(str, self.q)))


def _entry(label: ExtIndex, d: Optional[float]) -> float:
    if label.is_finite:
        return -math.cos(math.pi / label.k)
    if label.is_inf:
        return -1.0
    if d is None:
        raise MissingDistance("inf_bar edge needs a distance")
    return -math.cosh(d)


def gram_of(schema: TetSchema) -> np.ndarray:
    g = np.eye(4)
    for name, label in schema.labels().items():
        i, j = EDGE_FACES[name]
        d = schema.distances.get(name)
        if label.is_inf_bar and d is None:
            raise MissingDistance(f"edge {name} is inf_bar but no distance was given")
        g[i, j] = g[j, i] = _entry(label, d)
    return g


@dataclass(frozen=True)
class Hyperbolicity:
    kind: str                       # "hyperbolic" | "degenerate" | "non_realizable"
    signature: tuple[int, int, int]  # (positive, negative, zero)

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == "hyperbolic"


def signature(matrix: np.ndarray, eps: float = DEFAULT_CONFIG.eps_eig) -> tuple[int, int, int]:
    ev = np.linalg.eigvalsh(np.asarray(matrix, dtype=float))
    return (int((ev > eps).sum()), int((ev < -eps).sum()), int((abs(ev) <= eps).sum()))


def hyperbolicity(gram: np.ndarray, config: Config = DEFAULT_CONFIG) -> Hyperbolicity:
    sig = signature(gram, config.eps_eig)
    if sig == (3, 1, 0):
        return Hyperbolicity("hyperbolic", sig)
    if sig[2]:
        return Hyperbolicity("degenerate", sig)
    return Hyperbolicity("non_realizable", sig)


def vertex_kind(gram: np.ndarray, vertex: int, config: Config = DEFAULT_CONFIG) -> str:
    """'finite', 'ideal' or 'hyperideal' for the vertex opposite face ``vertex``."""
    keep = [i for i in range(4) if i != vertex]
    minor = np.asarray(gram)[np.ix_(keep, keep)]
    pos, neg, zero = signature(minor, config.eps_eig)
    if pos == 3:
        return "finite"
    if neg == 0:
        return "ideal"
    return "hyperideal"


def vertex_angles_kind(p: int, q: int, r: int, config: Config = DEFAULT_CONFIG) -> str:
    """Kind of a vertex whose three edges have dihedral angles pi/p, pi/q, pi/r."""
    a, b, c = (-math.cos(math.pi / k) for k in (p, q, r))
    m = np.array([[1, a, b, 0], [a, 1, c, 0], [b, c, 1, 0], [0, 0, 0, 1.0]])
    return vertex_kind(m, 3, config)


# ---------------------------------------------------------------------------
# identities from the disjoint-axes computations

def _cosh2t(n: int, q: float) -> float:
    s = math.sin(math.pi / n)
    cos_abe = math.cos(2 * math.pi / n) / s
    if not -1.0 <= cos_abe <= 1.0 or 4 * s * s <= 1.0:
        raise ValueError(f"the triangle construction needs a real angle ABE (n={n})")
    sin_abe = math.sqrt(1 - cos_abe ** 2)
    cosh_ab = 2 * math.cos(math.pi / q) * s / math.sqrt(4 * s * s - 1)
    cosh_t = sin_abe * cosh_ab
    beta = -4 * s * s
    return abs(cosh_t ** 2 - (beta + 4) * math.cos(math.pi / q) ** 2)


def _cosh_ab(n: int, q: float) -> float:
    s = math.sin(math.pi / n)
    cos_abc = 1 / (2 * s)
    sin_abc = math.sqrt(1 - cos_abc ** 2)
    lhs = math.cos(math.pi / q) / sin_abc
    return abs(lhs - 2 * math.cos(math.pi / q) * s / math.sqrt(4 * s * s - 1))


def _sin2_abe(n: int) -> float:
    s, c = math.sin(math.pi / n), math.cos(math.pi / n)
    direct = (s * s - math.cos(2 * math.pi / n) ** 2) / (s * s)
    return abs(direct - c * c * (4 * s * s - 1) / (s * s))


IDENTITIES = {
    "eq1": lambda d: abs((-2 * math.cosh(2 * d) - 2) - (-4 * math.cosh(d) ** 2)),
    "eq2": lambda p: abs((-2 * math.cos(2 * math.pi / p) - 2) - (-4 * math.cos(math.pi / p) ** 2)),
    "cosh2T": _cosh2t,
    "coshAB": _cosh_ab,
    "sin2ABE": _sin2_abe,
}


def proof_identities(check_id: str, *params: float) -> float:
    """Absolute difference of the two sides of a named identity."""
    try:
        fn = IDENTITIES[check_id]
    except KeyError:
        raise UnknownIdentity(check_id) from None
    return fn(*params)
