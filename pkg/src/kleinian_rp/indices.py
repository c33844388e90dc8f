"""Extended indices {2,3,...} U {inf, inf_bar} and the parameter set U.

``inf`` marks parallel planes (parabolic elements), ``inf_bar`` marks
disjoint planes (hyperbolic elements, dropped relators).  Ordering is
``inf_bar > inf > k`` for every integer ``k`` and ``gcd(inf, k) = gcd(inf_bar, k) = k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Union

Parity = Literal["any", "even", "odd"]

_KIND_RANK = {"finite": 0, "inf": 1, "inf_bar": 2}


class NegativeSquare(ValueError):
    """A value meant to be cosh^2 of something is negative."""


@dataclass(frozen=True)
class ExtIndex:
    kind: str
    k: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown ExtIndex kind {self.kind!r}")
        if self.kind == "finite":
            if not isinstance(self.k, int) or self.k < 2:
                raise ValueError(f"finite index must be an integer >= 2, got {self.k!r}")
        elif self.k != 0:
            raise ValueError("infinite indices carry no integer")

    # -- constructors -------------------------------------------------
    @classmethod
    def finite(cls, k: int) -> "ExtIndex":
        return cls("finite", int(k))

    @classmethod
    def parse(cls, text: Union[str, int, "ExtIndex"]) -> "ExtIndex":
        if isinstance(text, ExtIndex):
            return text
        if isinstance(text, int):
            return cls.finite(text)
        s = text.strip().lower()
        if s in ("inf", "infinity", "oo"):
            return INF
        if s in ("inf_bar", "infbar", "oo_bar"):
            return INF_BAR
        return cls.finite(int(s))

    # -- predicates ---------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_inf(self) -> bool:
        return self.kind == "inf"

    @property
    def is_inf_bar(self) -> bool:
        return self.kind == "inf_bar"

    def _key(self) -> tuple[int, int]:
        return (_KIND_RANK[self.kind], self.k)

    def __lt__(self, other: "ExtIndex") -> bool:
        return self._key() < ExtIndex.parse(other)._key()

    def __le__(self, other: "ExtIndex") -> bool:
        return self._key() <= ExtIndex.parse(other)._key()

    def __gt__(self, other: "ExtIndex") -> bool:
        return self._key() > ExtIndex.parse(other)._key()

    def __ge__(self, other: "ExtIndex") -> bool:
        return self._key() >= ExtIndex.parse(other)._key()

    # -- arithmetic ---------------------------------------------------
    def gcd(self, k: int) -> int:
        if not self.is_finite:
            return k
        return math.gcd(self.k, k)

    def div(self, k: int) -> "ExtIndex":
        """Division by a positive integer; finite values must be divisible."""
        if k <= 0:
            raise ValueError("divisor must be a positive integer")
        if not self.is_finite:
            return self
        if self.k % k:
            raise ValueError(f"{self.k} is not divisible by {k}")
        return ExtIndex.finite(self.k // k)

    def reciprocal(self) -> float:
        return 1.0 / self.k if self.is_finite else 0.0

    def satisfies(self, parity: Parity) -> bool:
        if parity == "any":
            return True
        if parity == "even":
            return self.gcd(2) == 2
        if parity == "odd":
            return self.gcd(2) == 1
        raise ValueError(f"unknown parity {parity!r}")

    def __str__(self) -> str:
        return str(self.k) if self.is_finite else self.kind

    def __repr__(self) -> str:
        return f"ExtIndex({self})"


INF = ExtIndex("inf")
INF_BAR = ExtIndex("inf_bar")


@dataclass(frozen=True)
class UPoint:
    """A point of U: ``i*pi/p`` (kind 'angle'), ``0`` ('zero') or ``d > 0`` ('positive')."""

    kind: str
    p: int = 0
    d: float = 0.0

    def __post_init__(self) -> None:
        if self.kind == "angle":
            if not isinstance(self.p, int) or self.p < 2:
                raise ValueError(f"angle point needs integer p >= 2, got {self.p!r}")
        elif self.kind == "positive":
            if not self.d > 0:
                raise ValueError(f"positive point needs d > 0, got {self.d!r}")
        elif self.kind != "zero":
            raise ValueError(f"unknown UPoint kind {self.kind!r}")

    @classmethod
    def angle(cls, p: int) -> "UPoint":
        return cls("angle", p=int(p))

    @classmethod
    def zero(cls) -> "UPoint":
        return cls("zero")

    @classmethod
    def positive(cls, d: float) -> "UPoint":
        return cls("positive", d=float(d))

    @classmethod
    def from_index(cls, t: ExtIndex, d: Optional[float] = None) -> "UPoint":
        """Inverse of :func:`t_of`; ``inf_bar`` needs the real ``d``."""
        if t.is_finite:
            return cls.angle(t.k)
        if t.is_inf:
            return cls.zero()
        if d is None:
            raise ValueError("inf_bar index needs a distance d > 0")
        return cls.positive(d)

    @property
    def value(self) -> complex:
        if self.kind == "angle":
            return complex(0.0, math.pi / self.p)
        return complex(self.d, 0.0)

    def cosh(self) -> float:
        if self.kind == "angle":
            return math.cos(math.pi / self.p)
        if self.kind == "zero":
            return 1.0
        return math.cosh(self.d)

    def cosh2(self) -> float:
        return self.cosh() ** 2

    def __str__(self) -> str:
        if self.kind == "angle":
            return f"i*pi/{self.p}"
        if self.kind == "zero":
            return "0"
        return repr(self.d)


def t_of(u: UPoint) -> ExtIndex:
    if u.kind == "angle":
        return ExtIndex.finite(u.p)
    if u.kind == "zero":
        return INF
    return INF_BAR


def match_cosh2(
    w: float,
    parity: Parity = "any",
    min_t: ExtIndex = ExtIndex("finite", 2),
    tol: float = 1e-9,
    p_max: int = 1000,
) -> Optional[tuple[UPoint, ExtIndex]]:
    """Find ``u`` in U with ``cosh^2(u) = w``, subject to parity and ``t(u) >= min_t``.

    Returns ``None`` when no admissible ``u`` exists.  Finite indices are
    searched up to ``p_max``.
    """
    if not math.isfinite(w):
        return None
    if w < -tol:
        raise NegativeSquare(f"cosh^2 value {w!r} is negative")
    if abs(w - 1.0) < tol:
        u = UPoint.zero()
    elif w > 1.0:
        u = UPoint.positive(math.acosh(math.sqrt(w)))
    else:
        theta = math.acos(math.sqrt(max(w, 0.0)))
        p_hat = math.pi / theta
        p = round(p_hat)
        if p < 2 or p > p_max:
            return None
        if abs(p_hat - p) >= 1e-6 * p_hat:
            return None
        if abs(w - math.cos(math.pi / p) ** 2) >= tol:
            return None
        u = UPoint.angle(p)
    t = t_of(u)
    if not t.satisfies(parity) or t < min_t:
        return None
    return u, t
